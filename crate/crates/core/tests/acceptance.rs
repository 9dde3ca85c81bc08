//! Acceptance suite. Prints one `PASS`/`FAIL`/`SKIP` line per criterion.
//!
//! Criterion 3 cannot hold as stated: two printed table entries are not
//! edges of the host. It is checked faithfully and reported as `FAIL`; the
//! process exits nonzero on any other failure, or if criterion 3 fails for a
//! different reason or starts passing.
//!
//! Criterion 12 is long-running and only runs with `--ignored` or
//! `--include-ignored`; a timeout there counts as a skip.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use oddhadwiger::constructions::{
    cartesian_complete_model, cartesian_lift, direct_general_model, direct_k3_model,
    direct_k3_upper_bound, hamming_model, star_model, strong_model, BaseModel, ConnectorEntry,
    StrongKind, K3_CONNECTORS, K3_CONNECTORS_PRINTED,
};
use oddhadwiger::graph::{
    complete, cycle, hamming, path, product, star, Graph, ProductKind, ProductVertex,
};
use oddhadwiger::model::{
    verify_odd_expansion, verify_with, BranchTree, Clause, OddExpansionModel, Verdict,
    VerifyOptions,
};
use oddhadwiger::oracle::{
    has_odd_clique_minor, odd_hadwiger, ExactStatus, OracleError, SearchBudget,
};

const STRICT: VerifyOptions = VerifyOptions {
    require_connectors: true,
};

enum Status {
    Pass(String),
    Fail(String),
    /// A failure whose message must equal the recorded one exactly.
    KnownFail(String),
    Skip(String),
}

/// The only acceptable outcome of criterion 3.
const CRITERION_3_KNOWN: &str = "printed table: Z2-Z5 (2, 2)(4, 2) not an edge; \
     Z2-Z7 (2, 2)(1, 2) not an edge; corrected table clean";

type Check = Result<String, String>;

/// Criterion number, check and pinned time limit.
type Criterion = (usize, fn() -> Check, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn passes(
    host: &Graph,
    model: &OddExpansionModel,
    opts: VerifyOptions,
    what: &str,
) -> Result<(), String> {
    match verify_with(host, model, opts) {
        Verdict::Pass { .. } => Ok(()),
        v => Err(format!("{what}: {v}")),
    }
}

fn k(n: usize) -> Graph {
    complete(n).unwrap()
}

fn criterion_1() -> Check {
    for s in 2..=8 {
        for t in 2..=8 {
            let base = cartesian_complete_model(s, t).map_err(|e| e.to_string())?;
            let m = base.model();
            ensure(m.clique_order() == s + t - 2, || {
                format!("s={s} t={t}: order {}", m.clique_order())
            })?;
            let host = product(ProductKind::Cartesian, &k(s), &k(t));
            passes(&host, m, VerifyOptions::default(), &format!("s={s} t={t}"))?;
        }
    }
    Ok("49 instances, order s+t-2".into())
}

fn criterion_2() -> Check {
    for t in 6..=12 {
        let m = direct_k3_model(t).map_err(|e| e.to_string())?;
        ensure(m.clique_order() == t + 2, || {
            format!("t={t}: order {}", m.clique_order())
        })?;
        let host = product(ProductKind::Direct, &k(t), &k(3));
        passes(&host, &m, STRICT, &format!("t={t}"))?;
    }
    // The t = 6 connector between Z_6 and Z_8 is (u_5, v_2)(u_6, v_1).
    let m6 = direct_k3_model(6).map_err(|e| e.to_string())?;
    let want = (
        ProductVertex::new(4, 1).flat(3),
        ProductVertex::new(5, 0).flat(3),
    );
    let got = m6.connectors.as_ref().and_then(|c| c.get(&(5, 7)).copied());
    ensure(got == Some(want), || {
        format!("t=6 Z6-Z8 connector {got:?}, want {want:?}")
    })?;
    for t in 6..=100 {
        let ub = direct_k3_upper_bound(t);
        ensure(ub == t + 2, || format!("upper bound at t={t} is {ub}"))?;
    }
    Ok("t=6..12 strict, substitution edge used, upper bound t+2 to t=100".into())
}

/// Each table edge checked for membership in `K_7 × K_3` and for equal colors.
fn table_problems(
    table: &[ConnectorEntry],
    model: &OddExpansionModel,
    host: &Graph,
) -> Vec<String> {
    let id = |(i, j): (usize, usize)| ProductVertex::new(i - 1, j - 1).flat(3);
    let mut problems = Vec::new();
    for &(pair, a, b) in table {
        let (x, y) = (id(a), id(b));
        if !host.has_edge(x, y) {
            problems.push(format!("Z{}-Z{} {a:?}{b:?} not an edge", pair.0, pair.1));
            continue;
        }
        let (cx, cy) = (model.coloring.get(x), model.coloring.get(y));
        if cx.is_none() || cx != cy {
            problems.push(format!(
                "Z{}-Z{} {a:?}{b:?} not monochromatic",
                pair.0, pair.1
            ));
        }
    }
    problems
}

fn criterion_3() -> Check {
    let m = direct_k3_model(7).map_err(|e| e.to_string())?;
    let host = product(ProductKind::Direct, &k(7), &k(3));
    let transcribed = table_problems(&K3_CONNECTORS, &m, &host);
    let printed = table_problems(&K3_CONNECTORS_PRINTED, &m, &host);
    let note = if transcribed.is_empty() {
        "corrected table clean".to_string()
    } else {
        format!("corrected table: {}", transcribed.join("; "))
    };
    if printed.is_empty() {
        Ok(format!(
            "all 28 printed edges present and monochromatic; {note}"
        ))
    } else {
        Err(format!("printed table: {}; {note}", printed.join("; ")))
    }
}

fn criterion_4() -> Check {
    for t in 4..=8 {
        for s in [3, 6, 7, 9] {
            let m = direct_general_model(t, s).map_err(|e| e.to_string())?;
            ensure(m.clique_order() == t * (s / 3), || {
                format!("t={t} s={s}: order {}", m.clique_order())
            })?;
            let host = product(ProductKind::Direct, &k(t), &k(s));
            passes(&host, &m, STRICT, &format!("t={t} s={s}"))?;
        }
    }
    let m = direct_general_model(6, 6).map_err(|e| e.to_string())?;
    ensure(m.clique_order() == 12, || {
        format!("(6,6) order {}", m.clique_order())
    })?;
    Ok("20 instances, order t*floor(s/3); (6,6) gives 12".into())
}

fn k3_model(g: &Graph) -> Result<OddExpansionModel, String> {
    let res = odd_hadwiger(g, &SearchBudget::default()).map_err(|e| e.to_string())?;
    ensure(res.status == ExactStatus::Exact && res.value == 3, || {
        format!(
            "oracle on n={} gave {} {}",
            g.order(),
            res.status,
            res.value
        )
    })?;
    Ok(res.certificate)
}

fn criterion_5() -> Check {
    let (c5, c7) = (cycle(5).unwrap(), cycle(7).unwrap());
    let (m5, m7) = (k3_model(&c5)?, k3_model(&c7)?);
    for kind in [StrongKind::Strong, StrongKind::Lexicographic] {
        let m = strong_model(&c5, &m5, &c7, &m7, kind).map_err(|e| e.to_string())?;
        ensure(m.clique_order() == 9, || {
            format!("{kind:?}: order {}", m.clique_order())
        })?;
        let host = product(kind.product_kind(), &c5, &c7);
        passes(&host, &m, STRICT, &format!("{kind:?}"))?;
    }
    Ok("order 9 on C5 strong C7 and C5 lex C7".into())
}

fn criterion_6() -> Check {
    let (c5, c7) = (cycle(5).unwrap(), cycle(7).unwrap());
    let (m5, m7) = (k3_model(&c5)?, k3_model(&c7)?);
    let base = cartesian_complete_model(3, 3).map_err(|e| e.to_string())?;
    let m = cartesian_lift(&c5, &m5, &c7, &m7, &base).map_err(|e| e.to_string())?;
    ensure(m.clique_order() == 4, || {
        format!("order {}", m.clique_order())
    })?;
    let host = product(ProductKind::Cartesian, &c5, &c7);
    passes(&host, &m, STRICT, "lift")?;
    Ok("order 4 on C5 cartesian C7".into())
}

fn star_expected(r: usize, t: usize) -> usize {
    if r == t {
        r + 1
    } else {
        r.min(t) + 2
    }
}

fn criterion_7() -> Check {
    for r in 1..=5 {
        for t in 1..=5 {
            let m = star_model(r, t).map_err(|e| e.to_string())?;
            ensure(m.clique_order() == star_expected(r, t), || {
                format!("r={r} t={t}: order {}", m.clique_order())
            })?;
            let host = product(ProductKind::Strong, &star(r).unwrap(), &star(t).unwrap());
            passes(&host, &m, VerifyOptions::default(), &format!("r={r} t={t}"))?;
        }
    }
    Ok("25 instances match the case split".into())
}

fn criterion_8() -> Check {
    for (n, d) in [(3, 2), (3, 3), (4, 2), (2, 4)] {
        let m = hamming_model(n, d).map_err(|e| e.to_string())?;
        let want = d * (n - 2) + 2;
        ensure(m.clique_order() == want, || {
            format!("({n},{d}): order {}", m.clique_order())
        })?;
        passes(
            &hamming(n, d).unwrap(),
            &m,
            VerifyOptions::default(),
            &format!("({n},{d})"),
        )?;
    }
    Ok("orders 4, 5, 6, 2".into())
}

fn bipartite_instances() -> Vec<(&'static str, Graph)> {
    let k23 = Graph::new(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
    let k33 = Graph::new(6, (0..3).flat_map(|a| (3..6).map(move |b| (a, b)))).unwrap();
    let grid = product(ProductKind::Cartesian, &path(3).unwrap(), &path(4).unwrap());
    let tree = Graph::new(7, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)]).unwrap();
    vec![
        ("P2", path(2).unwrap()),
        ("P7", path(7).unwrap()),
        ("C4", cycle(4).unwrap()),
        ("C8", cycle(8).unwrap()),
        ("S4", star(4).unwrap()),
        ("K2,3", k23),
        ("K3,3", k33),
        ("Q3", hamming(2, 3).unwrap()),
        ("P3xP4", grid),
        ("binary tree", tree),
    ]
}

fn exact_value(g: &Graph) -> Result<usize, String> {
    let res = odd_hadwiger(g, &SearchBudget::default()).map_err(|e| e.to_string())?;
    ensure(res.status == ExactStatus::Exact, || {
        format!("status {}", res.status)
    })?;
    passes(
        g,
        &res.certificate,
        VerifyOptions::default(),
        "oracle certificate",
    )?;
    Ok(res.value)
}

fn criterion_9() -> Check {
    for n in 1..=6 {
        let v = exact_value(&k(n))?;
        ensure(v == n, || format!("K{n}: {v}"))?;
    }
    for (name, g) in bipartite_instances() {
        let v = exact_value(&g)?;
        ensure(v == 2, || format!("{name}: {v}"))?;
    }
    for k in 1..=4 {
        let n = 2 * k + 1;
        let v = exact_value(&cycle(n).unwrap())?;
        ensure(v == 3, || format!("C{n}: {v}"))?;
    }
    let c4 = has_odd_clique_minor(&cycle(4).unwrap(), 3, &SearchBudget::default())
        .map_err(|e| e.to_string())?;
    ensure(c4.is_none(), || "C4 search found a K3 model".into())?;
    Ok("K1..K6, ten bipartite graphs, C3..C9, C4 refuted".into())
}

/// Every construction host from criteria 1 to 8 with at most 16 vertices.
fn small_hosts() -> Vec<(String, Graph, usize)> {
    let mut hosts = Vec::new();
    for s in 2..=8 {
        for t in s..=8 {
            if s * t <= 16 {
                hosts.push((
                    format!("K{s} cartesian K{t}"),
                    BaseModel::host(s, t),
                    s + t - 2,
                ));
            }
        }
    }
    for r in 1..=5 {
        for t in r..=5 {
            if (r + 1) * (t + 1) <= 16 {
                let g = product(ProductKind::Strong, &star(r).unwrap(), &star(t).unwrap());
                hosts.push((format!("S{r} strong S{t}"), g, star_expected(r, t)));
            }
        }
    }
    hosts.push((
        "K4 direct K3".into(),
        product(ProductKind::Direct, &k(4), &k(3)),
        4,
    ));
    for (n, d) in [(3, 2), (4, 2), (2, 4)] {
        hosts.push((
            format!("H({n},{d})"),
            hamming(n, d).unwrap(),
            d * (n - 2) + 2,
        ));
    }
    hosts
}

fn criterion_10() -> Check {
    // A timeout is still a lower bound; only the certificate value matters.
    let budget = SearchBudget {
        time_limit: Duration::from_secs(4),
        ..SearchBudget::default()
    };
    let hosts = small_hosts();
    let mut timeouts = 0;
    for (name, g, order) in &hosts {
        let res = odd_hadwiger(g, &budget).map_err(|e| format!("{name}: {e}"))?;
        passes(g, &res.certificate, VerifyOptions::default(), name)?;
        ensure(res.value >= *order, || {
            format!(
                "{name}: oracle {} {} below constructed {order}",
                res.status, res.value
            )
        })?;
        timeouts += usize::from(res.status == ExactStatus::Timeout);
    }
    Ok(format!(
        "{} hosts, {timeouts} bounded by timeout",
        hosts.len()
    ))
}

fn golden_certificates() -> Vec<(Graph, OddExpansionModel)> {
    let c5 = cycle(5).unwrap();
    let m5 = oddhadwiger::constructions::odd_cycle_model(&[0, 1, 2, 3, 4]).unwrap();
    vec![
        (
            BaseModel::host(4, 5),
            cartesian_complete_model(4, 5).unwrap().model().clone(),
        ),
        (
            product(ProductKind::Direct, &k(7), &k(3)),
            direct_k3_model(7).unwrap(),
        ),
        (
            product(ProductKind::Direct, &k(5), &k(6)),
            direct_general_model(5, 6).unwrap(),
        ),
        (
            product(ProductKind::Strong, &star(3).unwrap(), &star(4).unwrap()),
            star_model(3, 4).unwrap(),
        ),
        (
            product(ProductKind::Strong, &c5, &c5),
            strong_model(&c5, &m5, &c5, &m5, StrongKind::Strong).unwrap(),
        ),
    ]
}

#[derive(Clone, Copy, Debug)]
enum Mutation {
    FlipColor,
    DropTreeEdge,
    SwapConnector,
}

impl Mutation {
    fn expected(self) -> Clause {
        match self {
            Mutation::FlipColor => Clause::Properness,
            Mutation::DropTreeEdge => Clause::TreeShape,
            Mutation::SwapConnector => Clause::ConnectorInvalid,
        }
    }
}

/// The `k`-th mutation of the given kind, or `None` if the model has fewer
/// candidate sites.
fn mutate(m: &OddExpansionModel, kind: Mutation, k: usize) -> Option<OddExpansionModel> {
    let mut out = m.clone();
    match kind {
        Mutation::FlipColor => {
            let v = m
                .trees
                .iter()
                .filter(|t| t.len() > 1)
                .flat_map(|t| t.vertices().iter().copied())
                .nth(k)?;
            let c = m.coloring.get(v)?;
            out.coloring.set(v, c.flip());
        }
        Mutation::DropTreeEdge => {
            let (ti, e) = m
                .trees
                .iter()
                .enumerate()
                .flat_map(|(i, t)| t.edges().iter().map(move |&e| (i, e)))
                .nth(k)?;
            let t = &m.trees[ti];
            out.trees[ti] = BranchTree::new(
                t.vertices().iter().copied(),
                t.edges().iter().copied().filter(|&x| x != e),
            );
        }
        Mutation::SwapConnector => {
            let conn = out.connectors.as_mut()?;
            let (&key, &(u, v)) = conn.iter().nth(k)?;
            conn.insert(key, (v, u));
        }
    }
    Some(out)
}

fn criterion_11() -> Check {
    let goldens = golden_certificates();
    for (g, m) in &goldens {
        passes(g, m, STRICT, "golden")?;
    }
    let kinds = [
        Mutation::FlipColor,
        Mutation::DropTreeEdge,
        Mutation::SwapConnector,
    ];
    let mut count = 0;
    'outer: for k in 0.. {
        let mut progressed = false;
        for (gi, (g, m)) in goldens.iter().enumerate() {
            for kind in kinds {
                let Some(mutant) = mutate(m, kind, 3 * k + gi) else {
                    continue;
                };
                progressed = true;
                match verify_with(g, &mutant, STRICT) {
                    Verdict::Fail(f) if f.clause == kind.expected() => {}
                    v => return Err(format!("golden {gi} {kind:?} #{k}: {v}")),
                }
                count += 1;
                if count == 50 {
                    break 'outer;
                }
            }
        }
        if !progressed {
            break;
        }
    }
    ensure(count == 50, || format!("only {count} mutations available"))?;
    Ok("50 mutations rejected with the expected clause".into())
}

fn criterion_12() -> Status {
    let host = product(ProductKind::Direct, &k(6), &k(3));
    match has_odd_clique_minor(&host, 9, &SearchBudget::extended()) {
        Ok(None) => Status::Pass("no odd K9 in K6 direct K3".into()),
        Ok(Some(m)) => Status::Fail(format!(
            "found an odd K9 model ({})",
            verify_odd_expansion(&host, &m)
        )),
        Err(OracleError::Timeout { nodes, .. }) => {
            Status::Skip(format!("timed out after {nodes} nodes"))
        }
        Err(e) => Status::Fail(e.to_string()),
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let long = args
        .iter()
        .any(|a| a == "--ignored" || a == "--include-ignored");
    if args.iter().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }

    let criteria: [Criterion; 11] = [
        (1, criterion_1, Duration::from_secs(1)),
        (2, criterion_2, Duration::from_secs(1)),
        (3, criterion_3, Duration::from_secs(1)),
        (4, criterion_4, Duration::from_secs(5)),
        (5, criterion_5, Duration::from_secs(5)),
        (6, criterion_6, Duration::from_secs(5)),
        (7, criterion_7, Duration::from_secs(1)),
        (8, criterion_8, Duration::from_secs(10)),
        (9, criterion_9, Duration::from_secs(60)),
        (10, criterion_10, Duration::from_secs(120)),
        (11, criterion_11, Duration::from_secs(5)),
    ];
    let mut failed = 0;
    for (id, check, limit) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let status = match result {
            Ok(msg) if id == 3 => Status::Fail(format!("{msg}; expected the known misprint")),
            Ok(msg) if elapsed <= limit => Status::Pass(msg),
            Ok(msg) => Status::Fail(format!("{msg}, but took {elapsed:.2?} > {limit:?}")),
            Err(msg) if id == 3 && msg == CRITERION_3_KNOWN => Status::KnownFail(msg),
            Err(msg) => Status::Fail(msg),
        };
        failed += report(id, status, elapsed);
    }
    if long {
        let start = Instant::now();
        let status = criterion_12();
        failed += report(12, status, start.elapsed());
    } else {
        report(
            12,
            Status::Skip("long-running; pass --ignored to run".into()),
            Duration::ZERO,
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} unexpected failure(s)");
        ExitCode::FAILURE
    }
}

fn report(id: usize, status: Status, elapsed: Duration) -> usize {
    let (tag, msg, failed) = match status {
        Status::Pass(m) => ("PASS", m, 0),
        Status::Fail(m) => ("FAIL", m, 1),
        Status::KnownFail(m) => ("FAIL", format!("{m} (known, unattainable as stated)"), 0),
        Status::Skip(m) => ("SKIP", m, 0),
    };
    println!("criterion {id:>2}: {tag} [{elapsed:.2?}] {msg}");
    failed
}
