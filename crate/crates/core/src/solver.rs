//! Search driver: grounded seeding, branching, acceptance and task dispatch.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use crate::af::{ArgId, ArgumentationFramework, Extension};
use crate::error::SolveError;
use crate::nodeset::NodeSet;
use crate::state::{MatrixState, Mode};

/// Successors of one branching step: `[chosen]` from the unattacked-node
/// shortcut or a self-attacker's forced exclusion, `[chosen, not_chosen]`
/// otherwise.
#[derive(Debug, Clone)]
pub struct BranchOutcome<'af> {
    pub chosen: ArgId,
    pub successors: Vec<MatrixState<'af>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Task {
    /// Some extension.
    SE,
    /// Enumerate all extensions.
    EE,
    /// Credulous acceptance.
    DC,
    /// Skeptical acceptance.
    DS,
}

impl Task {
    pub fn needs_query(self) -> bool {
        matches!(self, Task::DC | Task::DS)
    }
}

/// A reasoning task under a semantics, e.g. `DC-ST` with a query argument.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaskSpec {
    pub task: Task,
    pub semantics: Mode,
    pub query: Option<String>,
}

impl TaskSpec {
    pub const ALL_PROBLEMS: [&'static str; 8] = [
        "SE-ST", "EE-ST", "DC-ST", "DS-ST", "SE-CO", "EE-CO", "DC-CO", "DS-CO",
    ];

    pub fn new(task: Task, semantics: Mode, query: Option<String>) -> Result<Self, SolveError> {
        let spec = Self {
            task,
            semantics,
            query,
        };
        match (task.needs_query(), spec.query.is_some()) {
            (true, false) => Err(SolveError::MissingQuery(spec.problem())),
            (false, true) => Err(SolveError::UnexpectedQuery(spec.problem())),
            _ => Ok(spec),
        }
    }

    /// Parses a problem string such as `EE-CO`.
    pub fn parse(problem: &str, query: Option<String>) -> Result<Self, SolveError> {
        let unknown = || SolveError::UnknownProblem(problem.to_string());
        let (task, sem) = problem.split_once('-').ok_or_else(unknown)?;
        let task = match task {
            "SE" => Task::SE,
            "EE" => Task::EE,
            "DC" => Task::DC,
            "DS" => Task::DS,
            _ => return Err(unknown()),
        };
        let semantics = match sem {
            "ST" => Mode::Stable,
            "CO" => Mode::Complete,
            _ => return Err(unknown()),
        };
        Self::new(task, semantics, query)
    }

    pub fn problem(&self) -> String {
        let sem = match self.semantics {
            Mode::Stable => "ST",
            Mode::Complete => "CO",
        };
        format!("{:?}-{sem}", self.task)
    }
}

impl FromStr for TaskSpec {
    type Err = SolveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s, None)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Stats {
    pub states_expanded: u64,
    pub states_abandoned: u64,
    pub duplicates_suppressed: u64,
    pub peak_frontier: usize,
    pub extensions_found: u64,
}

impl fmt::Display for Stats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "states_expanded={} states_abandoned={} duplicates_suppressed={} peak_frontier={} extensions_found={}",
            self.states_expanded,
            self.states_abandoned,
            self.duplicates_suppressed,
            self.peak_frontier,
            self.extensions_found
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Answer {
    /// SE: one extension, or none if the semantics admits none.
    Witness(Option<Extension>),
    /// EE: every extension once, in discovery order.
    Extensions(Vec<Extension>),
    /// DC / DS.
    Decision(bool),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub answer: Answer,
    pub stats: Stats,
}

/// Extensions in discovery order plus search counters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub extensions: Vec<Extension>,
    pub stats: Stats,
}

/// Least fixpoint of the defence function, computed by propagation: an
/// argument goes IN once all its attackers are OUT, and everything an IN
/// argument attacks goes OUT.
pub fn grounded_extension(af: &ArgumentationFramework) -> Extension {
    let n = af.len();
    let mut live_attackers: Vec<usize> = (0..n).map(|a| af.attackers_of(a).len()).collect();
    let mut inside = NodeSet::empty(n);
    let mut outside = NodeSet::empty(n);
    let mut queue: VecDeque<ArgId> = (0..n).filter(|&a| live_attackers[a] == 0).collect();

    while let Some(a) = queue.pop_front() {
        inside.insert(a);
        for &t in af.targets_of(a) {
            if outside.contains(t) {
                continue;
            }
            outside.insert(t);
            for &u in af.targets_of(t) {
                live_attackers[u] -= 1;
                if live_attackers[u] == 0 {
                    queue.push_back(u);
                }
            }
        }
    }
    Extension::from(&inside)
}

/// Chooses every grounded member that is still choosable, in ascending id
/// order, starting from `s0`.
pub fn seed_with_grounded<'af>(
    s0: &MatrixState<'af>,
    grounded: &Extension,
) -> Result<MatrixState<'af>, SolveError> {
    let mut state = s0.clone();
    for &g in grounded.members() {
        if state.ext().contains(g) {
            continue;
        }
        if !state.off().contains(g) || !state.def().contains(g) {
            return Err(SolveError::PreconditionViolation(format!(
                "grounded member {} is blocked",
                s0.af().name(g)
            )));
        }
        state = state.node_chosen(g)?;
    }
    Ok(state)
}

/// Branches on a given argument: `[chosen, not_chosen]`, or only
/// `[not_chosen]` for a self-attacker.
pub fn branch_on<'af>(s: &MatrixState<'af>, i: ArgId) -> Result<BranchOutcome<'af>, SolveError> {
    let not_chosen = s.node_not_chosen(i)?;
    let successors = if s.af().is_self_attacker(i) {
        vec![not_chosen]
    } else {
        vec![s.node_chosen(i)?, not_chosen]
    };
    Ok(BranchOutcome {
        chosen: i,
        successors,
    })
}

/// One branching step. An unattacked candidate is taken outright; otherwise
/// the candidate with the fewest counted attackers (lowest id on ties) is
/// branched on.
pub fn expand<'af>(s: &MatrixState<'af>) -> Result<BranchOutcome<'af>, SolveError> {
    let af = s.af();
    let mut best: Option<(usize, ArgId)> = None;
    for i in s.op_range() {
        let count = s.rel_attacker_count(i);
        if count == 0 && !af.is_self_attacker(i) {
            return Ok(BranchOutcome {
                chosen: i,
                successors: vec![s.node_chosen(i)?],
            });
        }
        // op_range is ascending, so strict `<` keeps the lowest id on ties.
        if best.is_none_or(|(c, _)| count < c) {
            best = Some((count, i));
        }
    }
    let (_, i) = best.ok_or_else(|| {
        SolveError::PreconditionViolation("expand: OFF ∩ DEF is empty".to_string())
    })?;
    branch_on(s, i)
}

pub fn is_stable_accept(s: &MatrixState<'_>) -> bool {
    s.off().is_empty() && s.def().is_empty()
}

pub fn is_abandoned(s: &MatrixState<'_>) -> bool {
    s.off().is_empty() && !s.def().is_empty()
}

/// True when some live column can no longer be covered: neither the column
/// itself nor any of its attackers is still a choosable row. Such a
/// stable-mode state can never reach `def = ∅`. With `off = ∅` and
/// `def ≠ ∅` this is exactly [`is_abandoned`].
pub fn has_uncoverable_column(s: &MatrixState<'_>) -> bool {
    let af = s.af();
    let choosable = |b: ArgId| s.off().contains(b) && !af.is_self_attacker(b);
    s.def()
        .iter()
        .any(|d| !choosable(d) && !af.attackers_of(d).iter().any(|&b| choosable(b)))
}

/// A complete-mode state is accepted when no live column is unattacked (the
/// extension defends nothing it has not taken) and every member of the
/// extension has no counted attacker left (it is defended).
///
/// The first check runs over all of `def`, not just `off ∩ def`: an argument
/// excluded earlier by `node_not_chosen` may have become defended since, and
/// then the extension is not complete.
pub fn is_complete_accept(s: &MatrixState<'_>) -> bool {
    let af = s.af();
    let defends_outsider = s
        .def()
        .iter()
        .any(|i| !af.is_self_attacker(i) && s.is_unattacked(i));
    if defends_outsider {
        return false;
    }
    s.ext()
        .iter()
        .all(|e| af.attackers_of(e).iter().all(|&b| !s.att().contains(b)))
}

/// Depth-first search over matrix states, chosen branch first.
///
/// `on_state` sees every state popped from the frontier (used for tracing).
/// `on_extension` receives each distinct accepted extension once and may stop
/// the search early.
pub fn search<F>(
    af: &ArgumentationFramework,
    mode: Mode,
    mut on_state: Option<&mut dyn FnMut(&MatrixState<'_>)>,
    mut on_extension: F,
) -> Stats
where
    F: FnMut(&Extension) -> ControlFlow<()>,
{
    let mut stats = Stats::default();
    let grounded = grounded_extension(af);
    let root = seed_with_grounded(&MatrixState::initial(af, mode), &grounded)
        .expect("grounded extension is always choosable");

    let mut seen: HashSet<Extension> = HashSet::new();
    let mut frontier = vec![root];
    stats.peak_frontier = 1;

    while let Some(state) = frontier.pop() {
        if let Some(hook) = on_state.as_deref_mut() {
            hook(&state);
        }

        let accepted = match mode {
            Mode::Stable => is_stable_accept(&state),
            Mode::Complete => is_complete_accept(&state),
        };
        if accepted {
            let ext = state.extension();
            if seen.contains(&ext) {
                stats.duplicates_suppressed += 1;
            } else {
                stats.extensions_found += 1;
                let flow = on_extension(&ext);
                seen.insert(ext);
                if flow.is_break() {
                    return stats;
                }
            }
        }

        let terminal = match mode {
            Mode::Stable => state.off().is_empty() || has_uncoverable_column(&state),
            Mode::Complete => state.op_range().next().is_none(),
        };
        if terminal {
            if !accepted {
                stats.states_abandoned += 1;
            }
            continue;
        }

        let outcome = expand(&state).expect("non-terminal state has candidates");
        stats.states_expanded += 1;
        frontier.extend(outcome.successors.into_iter().rev());
        stats.peak_frontier = stats.peak_frontier.max(frontier.len());
    }
    stats
}

/// Enumerates the extensions of `af` under `mode`, stopping after `limit`
/// distinct extensions if given.
pub fn enumerate(af: &ArgumentationFramework, mode: Mode, limit: Option<usize>) -> Enumeration {
    let mut extensions = Vec::new();
    if limit == Some(0) {
        return Enumeration {
            extensions,
            stats: Stats::default(),
        };
    }
    let stats = search(af, mode, None, |ext| {
        extensions.push(ext.clone());
        if limit.is_some_and(|k| extensions.len() >= k) {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    Enumeration { extensions, stats }
}

/// Resolves the query argument of a task, if any.
pub fn resolve_query(
    af: &ArgumentationFramework,
    task: &TaskSpec,
) -> Result<Option<ArgId>, SolveError> {
    match &task.query {
        None if task.task.needs_query() => Err(SolveError::MissingQuery(task.problem())),
        None => Ok(None),
        Some(name) => af
            .id_of(name)
            .map(Some)
            .ok_or_else(|| SolveError::UnknownQueryArgument(name.clone())),
    }
}

/// Answers an ICCMA-style task.
pub fn solve(af: &ArgumentationFramework, task: &TaskSpec) -> Result<SolveResult, SolveError> {
    solve_traced(af, task, None)
}

/// [`solve`] with a per-state observer.
pub fn solve_traced(
    af: &ArgumentationFramework,
    task: &TaskSpec,
    on_state: Option<&mut dyn FnMut(&MatrixState<'_>)>,
) -> Result<SolveResult, SolveError> {
    let query = resolve_query(af, task)?;
    let mode = task.semantics;
    let result = match task.task {
        Task::SE => {
            let mut witness = None;
            let stats = search(af, mode, on_state, |ext| {
                witness = Some(ext.clone());
                ControlFlow::Break(())
            });
            SolveResult {
                answer: Answer::Witness(witness),
                stats,
            }
        }
        Task::EE => {
            let mut all = Vec::new();
            let stats = search(af, mode, on_state, |ext| {
                all.push(ext.clone());
                ControlFlow::Continue(())
            });
            SolveResult {
                answer: Answer::Extensions(all),
                stats,
            }
        }
        Task::DC => {
            let q = query.expect("DC carries a query");
            let mut found = false;
            let stats = search(af, mode, on_state, |ext| {
                if ext.contains(q) {
                    found = true;
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            });
            SolveResult {
                answer: Answer::Decision(found),
                stats,
            }
        }
        Task::DS => {
            let q = query.expect("DS carries a query");
            // Vacuously accepted when there is no extension at all.
            let mut accepted = true;
            let stats = search(af, mode, on_state, |ext| {
                if ext.contains(q) {
                    ControlFlow::Continue(())
                } else {
                    accepted = false;
                    ControlFlow::Break(())
                }
            });
            SolveResult {
                answer: Answer::Decision(accepted),
                stats,
            }
        }
    };
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::af::{parse_af, Format};

    fn x() -> ArgumentationFramework {
        parse_af(
            "arg(a). arg(b). arg(c). arg(d). att(a,b). att(b,c). att(c,d). att(d,a).",
            Format::Apx,
        )
        .unwrap()
    }

    fn chain() -> ArgumentationFramework {
        ArgumentationFramework::from_names(&["a", "b", "c"], &[("a", "b"), ("b", "c")])
    }

    fn ext(ids: &[ArgId]) -> Extension {
        ids.iter().copied().collect()
    }

    fn sorted(mut v: Vec<Extension>) -> Vec<Extension> {
        v.sort();
        v
    }

    #[test]
    fn grounded_examples() {
        assert_eq!(grounded_extension(&x()), Extension::empty());
        assert_eq!(
            grounded_extension(&ArgumentationFramework::from_names(&[], &[])),
            Extension::empty()
        );
        assert_eq!(grounded_extension(&chain()), ext(&[0, 2]));
        let selfish = ArgumentationFramework::from_names(&["a", "b"], &[("a", "a"), ("a", "b")]);
        assert_eq!(grounded_extension(&selfish), Extension::empty());
    }

    #[test]
    fn expand_on_running_example() {
        let af = x();
        let s = MatrixState::initial(&af, Mode::Stable);
        for i in 0..4 {
            assert_eq!(s.rel_attacker_count(i), 1);
        }
        let out = expand(&s).unwrap();
        assert_eq!(out.chosen, 0);
        assert_eq!(out.successors.len(), 2);

        let forced = branch_on(&s, 3).unwrap();
        assert_eq!(
            forced.successors[0].dump(),
            "off={b} def={b,c} att={b} ext={d}"
        );
        assert_eq!(
            forced.successors[1].dump(),
            "off={a,b,c} def={a,b,c,d} att={a,b,c} ext={}"
        );
    }

    #[test]
    fn expand_takes_unattacked_shortcut() {
        let af = chain();
        let out = expand(&MatrixState::initial(&af, Mode::Stable)).unwrap();
        assert_eq!(out.chosen, 0);
        assert_eq!(out.successors.len(), 1);
        assert_eq!(out.successors[0].dump(), "off={c} def={c} att={c} ext={a}");
    }

    #[test]
    fn expand_self_attacker_only_excludes() {
        let af = ArgumentationFramework::from_names(&["a"], &[("a", "a")]);
        let out = expand(&MatrixState::initial(&af, Mode::Stable)).unwrap();
        assert_eq!(out.successors.len(), 1);
        assert!(out.successors[0].ext().is_empty());
        assert!(out.successors[0].off().is_empty());
    }

    #[test]
    fn expand_rejects_empty_range() {
        let af = ArgumentationFramework::from_names(&[], &[]);
        assert!(matches!(
            expand(&MatrixState::initial(&af, Mode::Stable)),
            Err(SolveError::PreconditionViolation(_))
        ));
    }

    #[test]
    fn stable_acceptance_and_abandonment() {
        let af = x();
        let s = MatrixState::initial(&af, Mode::Stable);
        assert!(!is_stable_accept(&s));
        assert!(!is_abandoned(&s));
        let table3 = s.node_chosen(3).unwrap();
        assert!(!is_stable_accept(&table3));
        assert!(!is_abandoned(&table3));
        let done = table3.node_chosen(1).unwrap();
        assert!(is_stable_accept(&done));
        assert!(!is_abandoned(&done));
        assert_eq!(done.extension(), ext(&[1, 3]));
        // off = ∅, def = {c}
        let stuck = table3.node_not_chosen(1).unwrap();
        assert_eq!(stuck.def().to_vec(), vec![1, 2]);
        assert!(is_abandoned(&stuck));
    }

    #[test]
    fn uncoverable_column() {
        let af = x();
        let s = MatrixState::initial(&af, Mode::Stable);
        assert!(!has_uncoverable_column(&s));
        // Excluding a and b leaves column b with no possible coverer.
        let s = s.node_not_chosen(0).unwrap().node_not_chosen(1).unwrap();
        assert!(has_uncoverable_column(&s));
        // off = ∅, def ≠ ∅ is a special case.
        let stuck = MatrixState::initial(&af, Mode::Stable)
            .node_chosen(3)
            .unwrap()
            .node_not_chosen(1)
            .unwrap();
        assert!(is_abandoned(&stuck) && has_uncoverable_column(&stuck));
    }

    #[test]
    fn complete_acceptance() {
        let af = x();
        let s = MatrixState::initial(&af, Mode::Complete);
        let all_out = s.choose_all([]).unwrap();
        let all_out = (0..4).fold(all_out, |st, i| st.node_not_chosen(i).unwrap());
        assert!(all_out.off().is_empty());
        assert!(is_complete_accept(&all_out));
        assert!(all_out.extension().is_empty());

        let only_d = s.node_chosen(3).unwrap();
        assert!(!is_complete_accept(&only_d));

        let empty = ArgumentationFramework::from_names(&[], &[]);
        assert!(is_complete_accept(&MatrixState::initial(
            &empty,
            Mode::Complete
        )));
    }

    #[test]
    fn complete_rejects_extension_defending_an_excluded_argument() {
        // x <-> y <-> v: {v} defends x, so it is admissible but not complete.
        let af = ArgumentationFramework::from_names(
            &["x", "y", "v"],
            &[("x", "y"), ("y", "x"), ("v", "y"), ("y", "v")],
        );
        let s = MatrixState::initial(&af, Mode::Complete)
            .node_not_chosen(0)
            .unwrap()
            .node_chosen(2)
            .unwrap();
        assert!(!is_complete_accept(&s));
        let got = sorted(enumerate(&af, Mode::Complete, None).extensions);
        assert_eq!(got, vec![ext(&[]), ext(&[0, 2]), ext(&[1])]);
    }

    #[test]
    fn enumerate_running_example() {
        let af = x();
        let st = sorted(enumerate(&af, Mode::Stable, None).extensions);
        assert_eq!(st, vec![ext(&[0, 2]), ext(&[1, 3])]);
        let co = sorted(enumerate(&af, Mode::Complete, None).extensions);
        assert_eq!(co, vec![ext(&[]), ext(&[0, 2]), ext(&[1, 3])]);
    }

    #[test]
    fn enumerate_odd_cycle() {
        let af = ArgumentationFramework::from_names(
            &["a", "b", "c"],
            &[("a", "b"), ("b", "c"), ("c", "a")],
        );
        assert!(enumerate(&af, Mode::Stable, None).extensions.is_empty());
        assert_eq!(
            enumerate(&af, Mode::Complete, None).extensions,
            vec![ext(&[])]
        );
    }

    #[test]
    fn enumerate_empty_framework() {
        let af = ArgumentationFramework::from_names(&[], &[]);
        assert_eq!(
            enumerate(&af, Mode::Stable, None).extensions,
            vec![ext(&[])]
        );
        assert_eq!(
            enumerate(&af, Mode::Complete, None).extensions,
            vec![ext(&[])]
        );
    }

    #[test]
    fn enumerate_respects_limit() {
        let af = x();
        let r = enumerate(&af, Mode::Complete, Some(1));
        assert_eq!(r.extensions.len(), 1);
        assert!(enumerate(&af, Mode::Complete, Some(0))
            .extensions
            .is_empty());
    }

    #[test]
    fn seeding() {
        let af = x();
        let s0 = MatrixState::initial(&af, Mode::Stable);
        assert_eq!(seed_with_grounded(&s0, &Extension::empty()).unwrap(), s0);

        let af = chain();
        let s0 = MatrixState::initial(&af, Mode::Stable);
        let seeded = seed_with_grounded(&s0, &ext(&[0, 2])).unwrap();
        assert_eq!(seeded.dump(), "off={} def={} att={} ext={a,c}");
        assert!(is_stable_accept(&seeded));

        let af = ArgumentationFramework::from_names(&[], &[]);
        let s0 = MatrixState::initial(&af, Mode::Complete);
        assert_eq!(seed_with_grounded(&s0, &Extension::empty()).unwrap(), s0);

        // A blocked member is reported, not silently skipped.
        let af = chain();
        let s0 = MatrixState::initial(&af, Mode::Stable);
        assert!(seed_with_grounded(&s0, &ext(&[0, 1])).is_err());
    }

    #[test]
    fn solve_tasks_on_running_example() {
        let af = x();
        let dc = TaskSpec::parse("DC-ST", Some("a".into())).unwrap();
        assert_eq!(solve(&af, &dc).unwrap().answer, Answer::Decision(true));
        let ds = TaskSpec::parse("DS-CO", Some("a".into())).unwrap();
        assert_eq!(solve(&af, &ds).unwrap().answer, Answer::Decision(false));
        let se = TaskSpec::parse("SE-ST", None).unwrap();
        match solve(&af, &se).unwrap().answer {
            Answer::Witness(Some(e)) => assert!(e == ext(&[0, 2]) || e == ext(&[1, 3])),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn skeptical_stable_is_vacuous_without_extensions() {
        let af = ArgumentationFramework::from_names(&["a"], &[("a", "a")]);
        let ds = TaskSpec::parse("DS-ST", Some("a".into())).unwrap();
        assert_eq!(solve(&af, &ds).unwrap().answer, Answer::Decision(true));
        let se = TaskSpec::parse("SE-ST", None).unwrap();
        assert_eq!(solve(&af, &se).unwrap().answer, Answer::Witness(None));
    }

    #[test]
    fn task_spec_parsing() {
        assert!(matches!(
            TaskSpec::parse("DC-ST", None),
            Err(SolveError::MissingQuery(_))
        ));
        assert!(matches!(
            TaskSpec::parse("EE-ST", Some("a".into())),
            Err(SolveError::UnexpectedQuery(_))
        ));
        assert!(matches!(
            TaskSpec::parse("EE-PR", None),
            Err(SolveError::UnknownProblem(_))
        ));
        for p in TaskSpec::ALL_PROBLEMS {
            let q = p.starts_with('D').then(|| "a".to_string());
            assert_eq!(TaskSpec::parse(p, q).unwrap().problem(), p);
        }
        let af = x();
        let dc = TaskSpec::parse("DC-CO", Some("zz".into())).unwrap();
        assert_eq!(
            solve(&af, &dc),
            Err(SolveError::UnknownQueryArgument("zz".into()))
        );
    }

    #[test]
    fn stats_are_counted() {
        let af = x();
        let r = enumerate(&af, Mode::Complete, None);
        assert!(r.stats.states_expanded > 0);
        assert!(r.stats.duplicates_suppressed > 0);
        assert_eq!(r.stats.extensions_found, 3);
        assert!(r.stats.peak_frontier >= 2);
    }
}
