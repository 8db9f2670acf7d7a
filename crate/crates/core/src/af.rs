//! Argumentation frameworks: parsing, adjacency and extension rendering.
//!
//! Arguments get dense ids in first-appearance order; all solver code works
//! on ids and names only show up at the I/O edges. Adjacency is kept as
//! sorted per-argument lists, so absent attacks are never materialised.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::error::AfError;
use crate::nodeset::NodeSet;

pub type ArgId = usize;

/// Instance document formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Format {
    /// `arg(a).` / `att(a,b).` facts.
    Apx,
    /// `p af <n>` header followed by 1-based `i j` attack lines.
    Iccma,
}

impl Format {
    /// Guesses the format of a document: a leading `p af` header means
    /// iccma, anything else is treated as apx.
    pub fn detect(text: &str) -> Format {
        let first = text
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty() && !l.starts_with('#'));
        match first {
            Some(line) if line.split_whitespace().take(2).eq(["p", "af"]) => Format::Iccma,
            _ => Format::Apx,
        }
    }
}

/// An immutable attack graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArgumentationFramework {
    names: Vec<String>,
    index: HashMap<String, ArgId>,
    attacks: BTreeSet<(ArgId, ArgId)>,
    attackers_of: Vec<Vec<ArgId>>,
    targets_of: Vec<Vec<ArgId>>,
    self_attackers: NodeSet,
    numeric_names: bool,
}

impl ArgumentationFramework {
    /// Builds a framework from names and id pairs. Duplicate pairs collapse.
    ///
    /// Panics if a pair references an id `>= names.len()` or names repeat;
    /// use [`parse_af`] for untrusted input.
    pub fn new<I>(names: Vec<String>, attacks: I) -> Self
    where
        I: IntoIterator<Item = (ArgId, ArgId)>,
    {
        let n = names.len();
        let index: HashMap<String, ArgId> = names
            .iter()
            .enumerate()
            .map(|(i, name)| (name.clone(), i))
            .collect();
        assert_eq!(index.len(), n, "argument names must be unique");

        let attacks: BTreeSet<(ArgId, ArgId)> = attacks.into_iter().collect();
        let mut attackers_of = vec![Vec::new(); n];
        let mut targets_of = vec![Vec::new(); n];
        let mut self_attackers = NodeSet::empty(n);
        // BTreeSet order keeps both lists sorted.
        for &(a, b) in &attacks {
            assert!(a < n && b < n, "attack ({a},{b}) out of range for n={n}");
            targets_of[a].push(b);
            attackers_of[b].push(a);
            if a == b {
                self_attackers.insert(a);
            }
        }
        for list in &mut attackers_of {
            list.sort_unstable();
        }

        Self {
            names,
            index,
            attacks,
            attackers_of,
            targets_of,
            self_attackers,
            numeric_names: false,
        }
    }

    /// Convenience constructor with names given as string slices and attacks
    /// given by name.
    pub fn from_names(names: &[&str], attacks: &[(&str, &str)]) -> Self {
        let owned: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let pos = |name: &str| {
            names
                .iter()
                .position(|n| *n == name)
                .unwrap_or_else(|| panic!("unknown argument {name}"))
        };
        let pairs: Vec<(ArgId, ArgId)> = attacks.iter().map(|(a, b)| (pos(a), pos(b))).collect();
        Self::new(owned, pairs)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, id: ArgId) -> &str {
        &self.names[id]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn id_of(&self, name: &str) -> Option<ArgId> {
        self.index.get(name).copied()
    }

    pub fn attacks(&self) -> impl Iterator<Item = (ArgId, ArgId)> + '_ {
        self.attacks.iter().copied()
    }

    pub fn attack_count(&self) -> usize {
        self.attacks.len()
    }

    pub fn has_attack(&self, attacker: ArgId, target: ArgId) -> bool {
        self.attacks.contains(&(attacker, target))
    }

    /// Static attackers of `a` over the whole framework.
    pub fn attackers(&self, a: ArgId) -> Result<&[ArgId], AfError> {
        self.check_id(a)?;
        Ok(&self.attackers_of[a])
    }

    /// Static targets of `a` over the whole framework.
    pub fn targets(&self, a: ArgId) -> Result<&[ArgId], AfError> {
        self.check_id(a)?;
        Ok(&self.targets_of[a])
    }

    // Unchecked variants for the hot path.
    pub(crate) fn attackers_of(&self, a: ArgId) -> &[ArgId] {
        &self.attackers_of[a]
    }

    pub(crate) fn targets_of(&self, a: ArgId) -> &[ArgId] {
        &self.targets_of[a]
    }

    pub fn is_self_attacker(&self, a: ArgId) -> bool {
        self.self_attackers.contains(a)
    }

    pub fn self_attackers(&self) -> &NodeSet {
        &self.self_attackers
    }

    fn check_id(&self, a: ArgId) -> Result<(), AfError> {
        if a < self.len() {
            Ok(())
        } else {
            Err(AfError::OutOfRange {
                id: a,
                n: self.len(),
            })
        }
    }

    /// Orders two arguments by name the way they are rendered: numerically
    /// for iccma instances, lexicographically otherwise.
    pub fn cmp_names(&self, a: ArgId, b: ArgId) -> Ordering {
        let (x, y) = (self.name(a), self.name(b));
        if self.numeric_names {
            if let (Ok(p), Ok(q)) = (x.parse::<u64>(), y.parse::<u64>()) {
                return p.cmp(&q);
            }
        }
        x.cmp(y)
    }

    /// Renders an extension as `[a,c]` with members sorted by name.
    pub fn render_extension(&self, ext: &Extension) -> String {
        let mut members = ext.members().to_vec();
        members.sort_by(|&a, &b| self.cmp_names(a, b));
        let mut out = String::from("[");
        for (k, id) in members.iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            out.push_str(self.name(*id));
        }
        out.push(']');
        out
    }

    /// Serializes to apx, one fact per line, arguments in id order.
    pub fn to_apx(&self) -> String {
        let mut out = String::new();
        for name in &self.names {
            let _ = writeln!(out, "arg({name}).");
        }
        for &(a, b) in &self.attacks {
            let _ = writeln!(out, "att({},{}).", self.names[a], self.names[b]);
        }
        out
    }
}

/// A canonical set of argument ids: strictly ascending, no duplicates.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Extension(Vec<ArgId>);

impl Extension {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn members(&self) -> &[ArgId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, id: ArgId) -> bool {
        self.0.binary_search(&id).is_ok()
    }

    pub fn is_subset(&self, other: &Extension) -> bool {
        self.0.iter().all(|id| other.contains(*id))
    }

    pub fn to_node_set(&self, capacity: usize) -> NodeSet {
        NodeSet::from_ids(capacity, self.0.iter().copied())
    }
}

impl FromIterator<ArgId> for Extension {
    fn from_iter<T: IntoIterator<Item = ArgId>>(iter: T) -> Self {
        let mut ids: Vec<ArgId> = iter.into_iter().collect();
        ids.sort_unstable();
        ids.dedup();
        Self(ids)
    }
}

impl From<&NodeSet> for Extension {
    fn from(set: &NodeSet) -> Self {
        // NodeSet iterates in ascending order already.
        Self(set.to_vec())
    }
}

/// Parses an instance document.
pub fn parse_af(text: &str, format: Format) -> Result<ArgumentationFramework, AfError> {
    match format {
        Format::Apx => parse_apx(text),
        Format::Iccma => parse_iccma(text),
    }
}

fn syntax(line: usize, message: impl Into<String>) -> AfError {
    AfError::Syntax {
        line,
        message: message.into(),
    }
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

enum Fact<'a> {
    Arg(&'a str),
    Att(&'a str, &'a str),
}

/// Splits one apx line into its facts. Several facts may share a line.
fn apx_facts(line: &str, lineno: usize) -> Result<Vec<Fact<'_>>, AfError> {
    let mut facts = Vec::new();
    let mut rest = line.trim();
    while !rest.is_empty() {
        let open = rest
            .find('(')
            .ok_or_else(|| syntax(lineno, format!("expected `(` in `{rest}`")))?;
        let close = rest[open..]
            .find(')')
            .map(|c| open + c)
            .ok_or_else(|| syntax(lineno, "unclosed `(`"))?;
        let pred = rest[..open].trim();
        let args: Vec<&str> = rest[open + 1..close].split(',').map(str::trim).collect();
        for arg in &args {
            if arg.is_empty() || !arg.chars().all(is_name_char) {
                return Err(syntax(lineno, format!("invalid argument name `{arg}`")));
            }
        }
        let after = rest[close + 1..].trim_start();
        rest = after
            .strip_prefix('.')
            .ok_or_else(|| syntax(lineno, "expected `.` after fact"))?
            .trim_start();
        match (pred, args.as_slice()) {
            ("arg", [a]) => facts.push(Fact::Arg(a)),
            ("att", [a, b]) => facts.push(Fact::Att(a, b)),
            ("arg", _) | ("att", _) => {
                return Err(syntax(lineno, format!("wrong arity for `{pred}`")));
            }
            _ => return Err(syntax(lineno, format!("unknown predicate `{pred}`"))),
        }
    }
    Ok(facts)
}

fn parse_apx(text: &str) -> Result<ArgumentationFramework, AfError> {
    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<String, ArgId> = HashMap::new();
    let mut pending: Vec<(usize, &str, &str)> = Vec::new();

    for (k, raw) in text.lines().enumerate() {
        let lineno = k + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with("//") || line.starts_with('%') {
            continue;
        }
        for fact in apx_facts(line, lineno)? {
            match fact {
                Fact::Arg(a) => {
                    if !index.contains_key(a) {
                        index.insert(a.to_string(), names.len());
                        names.push(a.to_string());
                    }
                }
                Fact::Att(a, b) => pending.push((lineno, a, b)),
            }
        }
    }

    // Attacks are resolved after all declarations, so fact order is free.
    let mut attacks = Vec::with_capacity(pending.len());
    for (lineno, a, b) in pending {
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| AfError::UnknownArgument {
                    line: lineno,
                    name: name.to_string(),
                })
        };
        attacks.push((lookup(a)?, lookup(b)?));
    }
    Ok(ArgumentationFramework::new(names, attacks))
}

fn parse_iccma(text: &str) -> Result<ArgumentationFramework, AfError> {
    let mut n: Option<usize> = None;
    let mut attacks = Vec::new();

    for (k, raw) in text.lines().enumerate() {
        let lineno = k + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match n {
            None => match tokens.as_slice() {
                ["p", "af", count] => {
                    let count = count
                        .parse::<usize>()
                        .map_err(|_| syntax(lineno, format!("invalid argument count `{count}`")))?;
                    n = Some(count);
                }
                _ => return Err(syntax(lineno, "expected header `p af <n>`")),
            },
            Some(count) => match tokens.as_slice() {
                [i, j] => {
                    let resolve = |tok: &str| -> Result<ArgId, AfError> {
                        let v = tok
                            .parse::<usize>()
                            .map_err(|_| syntax(lineno, format!("invalid index `{tok}`")))?;
                        if v == 0 || v > count {
                            return Err(AfError::UnknownArgument {
                                line: lineno,
                                name: tok.to_string(),
                            });
                        }
                        Ok(v - 1)
                    };
                    attacks.push((resolve(i)?, resolve(j)?));
                }
                _ => return Err(syntax(lineno, "expected attack line `<i> <j>`")),
            },
        }
    }

    let count = n.unwrap_or(0);
    let names = (1..=count).map(|i| i.to_string()).collect();
    let mut af = ArgumentationFramework::new(names, attacks);
    af.numeric_names = true;
    Ok(af)
}
