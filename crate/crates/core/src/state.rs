//! One node of the search tree: the shrunken attack matrix.
//!
//! `off` holds the live rows (arguments that may still be chosen), `def` the
//! live columns (arguments neither chosen nor attacked by the extension yet),
//! `att` the arguments still counted when looking up attackers, and `ext` the
//! extension built so far. Transitions return fresh states; the input is
//! never touched, so the search needs no undo log.

use std::fmt::{self, Write as _};
use std::hash::{Hash, Hasher};

use crate::af::{ArgId, ArgumentationFramework, Extension};
use crate::error::SolveError;
use crate::nodeset::NodeSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Stable,
    Complete,
}

#[derive(Clone)]
pub struct MatrixState<'af> {
    af: &'af ArgumentationFramework,
    mode: Mode,
    off: NodeSet,
    def: NodeSet,
    att: NodeSet,
    ext: NodeSet,
}

impl<'af> MatrixState<'af> {
    /// The unreduced matrix: every row and column live, nothing chosen.
    pub fn initial(af: &'af ArgumentationFramework, mode: Mode) -> Self {
        let n = af.len();
        Self {
            af,
            mode,
            off: NodeSet::full(n),
            def: NodeSet::full(n),
            att: NodeSet::full(n),
            ext: NodeSet::empty(n),
        }
    }

    pub fn af(&self) -> &'af ArgumentationFramework {
        self.af
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn off(&self) -> &NodeSet {
        &self.off
    }

    pub fn def(&self) -> &NodeSet {
        &self.def
    }

    pub fn att(&self) -> &NodeSet {
        &self.att
    }

    pub fn ext(&self) -> &NodeSet {
        &self.ext
    }

    pub fn extension(&self) -> Extension {
        Extension::from(&self.ext)
    }

    /// Candidate pool for branching: `off ∩ def`, ascending.
    pub fn op_range(&self) -> impl Iterator<Item = ArgId> + '_ {
        self.off.intersection(&self.def)
    }

    /// Targets of `a` whose column is still live.
    pub fn rel_targets(&self, a: ArgId) -> impl Iterator<Item = ArgId> + '_ {
        self.af
            .targets_of(a)
            .iter()
            .copied()
            .filter(move |b| self.def.contains(*b))
    }

    /// Attackers of `a` that are still counted (`att`).
    pub fn rel_attackers(&self, a: ArgId) -> impl Iterator<Item = ArgId> + '_ {
        self.af
            .attackers_of(a)
            .iter()
            .copied()
            .filter(move |b| self.att.contains(*b))
    }

    pub fn rel_attacker_count(&self, a: ArgId) -> usize {
        self.rel_attackers(a).count()
    }

    pub fn is_unattacked(&self, a: ArgId) -> bool {
        self.rel_attackers(a).next().is_none()
    }

    /// Commits `i` to the extension: erases row `i` together with its live
    /// targets and its remaining attackers from `off`, and column `i`
    /// together with its live targets from `def`.
    pub fn node_chosen(&self, i: ArgId) -> Result<Self, SolveError> {
        if i >= self.af.len() || !self.off.contains(i) || !self.def.contains(i) {
            return Err(SolveError::PreconditionViolation(format!(
                "node_chosen: argument {i} is not in OFF ∩ DEF"
            )));
        }
        if self.af.is_self_attacker(i) {
            return Err(SolveError::PreconditionViolation(format!(
                "node_chosen: argument {i} attacks itself"
            )));
        }
        if self
            .af
            .attackers_of(i)
            .iter()
            .any(|&b| self.ext.contains(b))
        {
            return Err(SolveError::PreconditionViolation(format!(
                "node_chosen: argument {i} is attacked by the extension"
            )));
        }

        let n = self.af.len();
        let mut covered = NodeSet::empty(n);
        covered.insert(i);
        for b in self.rel_targets(i) {
            covered.insert(b);
        }
        let mut dropped_rows = covered.clone();
        for &b in self.af.attackers_of(i) {
            if self.off.contains(b) {
                dropped_rows.insert(b);
            }
        }

        let mut next = self.clone();
        next.ext.insert(i);
        next.off.subtract(&dropped_rows);
        next.def.subtract(&covered);
        match self.mode {
            Mode::Stable => next.att = next.off.clone(),
            // Only arguments the extension now defeats stop counting as
            // attackers; rows dropped for conflict still threaten `ext`.
            Mode::Complete => next.att.subtract(&covered),
        }
        Ok(next)
    }

    /// Excludes `i` from the extension by erasing its row. In complete mode
    /// `i` stays visible as an attacker.
    pub fn node_not_chosen(&self, i: ArgId) -> Result<Self, SolveError> {
        if i >= self.af.len() || !self.off.contains(i) {
            return Err(SolveError::PreconditionViolation(format!(
                "node_not_chosen: argument {i} is not in OFF"
            )));
        }
        let mut next = self.clone();
        next.off.remove(i);
        if self.mode == Mode::Stable {
            next.att.remove(i);
        }
        Ok(next)
    }

    /// Applies `node_chosen` for each id in turn.
    pub fn choose_all<I: IntoIterator<Item = ArgId>>(&self, ids: I) -> Result<Self, SolveError> {
        let mut state = self.clone();
        for i in ids {
            state = state.node_chosen(i)?;
        }
        Ok(state)
    }

    fn fmt_set(&self, out: &mut String, set: &NodeSet) {
        out.push('{');
        for (k, id) in set.iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            out.push_str(self.af.name(id));
        }
        out.push('}');
    }

    /// Canonical single-line dump, e.g. `off={b} def={b,c} att={b} ext={d}`.
    /// Members are listed in id order.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (label, set) in [
            ("off", &self.off),
            ("def", &self.def),
            ("att", &self.att),
            ("ext", &self.ext),
        ] {
            if !out.is_empty() {
                out.push(' ');
            }
            out.push_str(label);
            out.push('=');
            self.fmt_set(&mut out, set);
        }
        out
    }

    /// Renders the attack matrix with erased rows and columns struck out:
    /// a struck label or cell is wrapped in `~`, as in `~a~` and `~1~`.
    pub fn render_matrix(&self) -> String {
        let n = self.af.len();
        let label = |id: ArgId, live: bool| {
            let name = self.af.name(id);
            if live {
                name.to_string()
            } else {
                format!("~{name}~")
            }
        };
        let cols: Vec<String> = (0..n).map(|j| label(j, self.def.contains(j))).collect();
        let rows: Vec<String> = (0..n).map(|i| label(i, self.off.contains(i))).collect();
        let width = cols
            .iter()
            .chain(rows.iter())
            .map(String::len)
            .chain(["nodes".len(), 3])
            .max()
            .unwrap_or(3);

        let mut out = String::new();
        let _ = write!(out, "{:<width$}", "nodes");
        for c in &cols {
            let _ = write!(out, " {c:>width$}");
        }
        out.push('\n');
        for (i, r) in rows.iter().enumerate() {
            let _ = write!(out, "{r:<width$}");
            for j in 0..n {
                let bit = if self.af.has_attack(i, j) { "1" } else { "0" };
                let live = self.off.contains(i) && self.def.contains(j);
                let cell = if live {
                    bit.to_string()
                } else {
                    format!("~{bit}~")
                };
                let _ = write!(out, " {cell:>width$}");
            }
            out.push('\n');
        }
        out
    }
}

impl PartialEq for MatrixState<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.af, other.af)
            && self.mode == other.mode
            && self.off == other.off
            && self.def == other.def
            && self.att == other.att
            && self.ext == other.ext
    }
}

impl Eq for MatrixState<'_> {}

impl Hash for MatrixState<'_> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.mode.hash(state);
        self.off.hash(state);
        self.def.hash(state);
        self.att.hash(state);
        self.ext.hash(state);
    }
}

impl fmt::Debug for MatrixState<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatrixState({:?} {})", self.mode, self.dump())
    }
}
