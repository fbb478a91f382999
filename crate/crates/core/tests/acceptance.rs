//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits with a
//! non-zero status if any criterion fails.

use std::collections::BTreeSet;
use std::sync::OnceLock;
use std::time::Instant;

use circminor::bridge::{
    check_d_side, check_g_side, translate_d_to_g, translate_g_to_d, witnesses_d, witnesses_g, GSide,
};
use circminor::circuit::{bad_arcs, circuit_from_steps, circuit_from_vertices, classify, validate_family, BlockKind};
use circminor::digraph::{build_d, build_f, build_g, ArcKind, KindTag};
use circminor::fixtures::eq1;
use circminor::matrix::{contract_onto, make_circulant, recognize_circulant};
use circminor::oracle::{
    brute_minors, circuit_violations, circulant_by_search, cross_validate, enumerate_circuits,
    enumerate_disjoint_families, enumerate_families, enumerate_g_families, family_violations, random_circular,
    BruteMinor, CrossReport, Limits, OracleFamily,
};
use circminor::synthesis::{circuits_to_minor, minor_to_circuits, normalize_bullets, window_table};
use circminor::{Circuit, CircularMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const RANDOM_SEED: u64 = 20_240_607;
const RANDOM_COUNT: usize = 200;

#[derive(Default)]
struct Tally {
    checks: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, label: &str, found: T, expected: T) {
        let ok = found == expected;
        self.check(ok, || format!("{label}: found {found:?}, expected {expected:?}"));
    }

    fn merge(&mut self, other: Tally) {
        self.checks += other.checks;
        self.failures.extend(other.failures);
        self.notes.extend(other.notes);
    }
}

struct Instance {
    label: String,
    a: CircularMatrix,
    circulant: bool,
    report: CrossReport,
    minors: Vec<BruteMinor>,
    circuits: Vec<Circuit>,
    families: Vec<OracleFamily>,
}

fn instances() -> &'static [Instance] {
    static CELL: OnceLock<Vec<Instance>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut inputs: Vec<(String, CircularMatrix, bool)> = Vec::new();
        for n in 5..=12 {
            for k in 2..=n - 2 {
                inputs.push((format!("C_{n}^{k}"), make_circulant(n, k).unwrap(), true));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
        for t in 0..RANDOM_COUNT {
            let n = rng.gen_range(5..=12);
            inputs.push((format!("random #{t} (n = {n})"), random_circular(&mut rng, n), false));
        }
        let limits = Limits::default();
        inputs
            .into_par_iter()
            .map(|(label, a, circulant)| {
                let f = build_f(&a);
                Instance {
                    report: cross_validate(&a, &limits).unwrap(),
                    minors: brute_minors(&a, &limits).unwrap(),
                    circuits: enumerate_circuits(&f, &limits).unwrap(),
                    families: enumerate_families(&f, &limits).unwrap(),
                    label,
                    a,
                    circulant,
                }
            })
            .collect()
    })
}

fn pairs(arcs: &[circminor::Arc]) -> Vec<(usize, usize)> {
    arcs.iter().map(|a| (a.tail, a.head)).collect()
}

fn criterion_1() -> Tally {
    let mut t = Tally::default();
    let a = eq1();
    let f = build_f(&a);
    let rows: BTreeSet<(usize, usize)> = f.row_arcs().map(|x| (x.tail, x.head)).collect();
    t.eq("row arcs of F(A)", rows, [(12, 5), (1, 8), (4, 9), (6, 10), (9, 12), (11, 2)].into());

    use KindTag::{Fwd, Rev, Row};
    let seq = [2, 3, 4, 9, 12, 1, 8, 7, 6, 10, 11];
    let kinds = [Fwd, Fwd, Row, Row, Fwd, Row, Rev, Rev, Row, Fwd, Row];
    let steps: Vec<_> = (0..seq.len()).map(|i| (seq[i], seq[(i + 1) % seq.len()], kinds[i])).collect();
    let gamma = circuit_from_steps(&f, &steps).unwrap();
    t.eq("Γ (s, p)", (gamma.row_arc_count(), gamma.winding()), (5, 2));
    let class = classify(f.ground(), std::slice::from_ref(&gamma)).unwrap();
    t.eq("Γ circles", class.circles.clone(), vec![1, 3, 4, 11]);
    t.eq("Γ crosses", class.crosses.clone(), vec![7, 8]);
    t.eq("Γ essential bullets", class.essential.clone(), vec![2, 6, 9, 10, 12]);
    let blocks: Vec<_> = class.blocks.iter().map(|b| (b.bullet, b.end, b.kind)).collect();
    use BlockKind::{Bullet, Circle, Cross};
    t.eq(
        "Γ blocks",
        blocks,
        vec![(2, 4, Circle), (6, 8, Cross), (9, 9, Bullet), (10, 11, Circle), (12, 1, Circle)],
    );
    t.eq("B⁺_1, B⁺_2", (class.blocks[0].plus, class.blocks[1].plus), (2, 8));
    let bad: Vec<_> = bad_arcs(&f, std::slice::from_ref(&gamma)).unwrap().iter().map(|b| (b.arc.tail, b.arc.head)).collect();
    t.eq("Γ bad arcs", bad, vec![(12, 5)]);

    let single = circuit_from_vertices(&f, &[2, 3, 4, 9, 12, 5, 6, 10, 11, 2]).unwrap();
    let w = circuits_to_minor(&a, &validate_family(&f, vec![single]).unwrap()).unwrap();
    t.eq("single circuit minor", (w.bullets, w.s, w.p), (vec![2, 5, 9, 10, 12], 5, 2));
    let pair = vec![
        circuit_from_vertices(&f, &[1, 8, 7, 6, 10, 11, 2, 1]).unwrap(),
        circuit_from_vertices(&f, &[4, 9, 12, 5, 4]).unwrap(),
    ];
    let w = circuits_to_minor(&a, &validate_family(&f, pair).unwrap()).unwrap();
    t.eq("two-circuit family minor", (w.bullets, w.s, w.p), (vec![1, 4, 6, 9, 10, 12], 6, 2));

    let raw = [2, 5, 8, 10, 12];
    let norm = normalize_bullets(&a, &raw, 2).unwrap();
    t.eq("B'", norm.normalized.clone(), vec![2, 5, 9, 10, 12]);
    t.eq("b'_3", norm.image[2], 9);
    t.eq("b'_1", norm.image[0], 2);
    let table = window_table(&a, &raw, 2).unwrap();
    let l = a.rows()[table[2].chosen - 1].lo;
    t.eq("ℓ_{r(1+p)} − 1", l - 1, 4);

    let (fam, trace) = minor_to_circuits(&a, &[2, 5, 9, 10, 12], 2).unwrap();
    let mut tset = pairs(&trace.row_arcs);
    tset.sort();
    t.eq("T", tset, vec![(4, 9), (6, 10), (9, 12), (11, 2), (12, 5)]);
    t.eq("P as vertices", trace.forward_vertices.clone(), vec![2, 5, 10]);
    let fpaths: Vec<_> = trace.forward_paths.iter().map(|p| (p.j, pairs(&p.arcs))).collect();
    t.eq("F_1, F_2, F_4", fpaths, vec![(1, vec![(2, 3), (3, 4)]), (2, vec![(5, 6)]), (4, vec![(10, 11)])]);
    t.check(trace.reverse_set.is_empty(), || "Q is not empty".into());
    t.eq("circuits built", fam.circuits.len(), 1);
    t
}

fn criterion_2() -> Tally {
    let mut t = Tally::default();
    let a = eq1();
    let limits = Limits::default();
    let minors = brute_minors(&a, &limits).unwrap();
    let families = enumerate_disjoint_families(&build_f(&a), &limits).unwrap();
    for raw in [vec![2, 5, 7, 10, 12], vec![2, 5, 8, 10, 12]] {
        let found = minors.iter().find(|m| m.bullets == raw).map(|m| (m.s, m.p));
        t.eq(&format!("{raw:?} brute force"), found, Some((5, 2)));
        t.check(families.iter().all(|f| f.bullets != raw), || format!("{raw:?} is a family bullet set"));
        match minor_to_circuits(&a, &raw, 2) {
            Ok((fam, _)) => t.eq(&format!("{raw:?} via normalization"), fam.bullets().to_vec(), vec![2, 5, 9, 10, 12]),
            Err(e) => t.check(false, || format!("{raw:?}: {e}")),
        }
    }
    t
}

fn criterion_3() -> Tally {
    let mut t = Tally::default();
    for inst in instances() {
        t.check(inst.report.is_clean(), || format!("{}: {:?}", inst.label, inst.report.discrepancies));
    }
    let sum = |f: fn(&Instance) -> usize| instances().iter().map(f).sum::<usize>();
    t.notes.push(format!(
        "{} matrices, {} circulant subsets, {} distinct bullet sets, {} circuits, {} families, {} iterated normalizations",
        instances().len(),
        sum(|i| i.report.subsets),
        sum(|i| i.report.minor_sets.len()),
        sum(|i| i.report.circuits),
        sum(|i| i.report.families),
        sum(|i| i.report.iterated.len()),
    ));
    t
}

fn criterion_4() -> Tally {
    instances()
        .par_iter()
        .map(|inst| {
            let mut t = Tally::default();
            let f = build_f(&inst.a);
            for c in &inst.circuits {
                let v = circuit_violations(&f, c);
                t.check(v.is_empty(), || format!("{}: circuit {:?}: {v:?}", inst.label, c.vertices()));
            }
            for fam in &inst.families {
                let v = family_violations(&f, fam);
                t.check(v.is_empty(), || format!("{}: family {:?}: {v:?}", inst.label, fam.bullets));
            }
            t
        })
        .reduce(Tally::default, |mut x, y| {
            x.merge(y);
            x
        })
}

fn criterion_5() -> Tally {
    let mut t = Tally::default();
    for inst in instances().iter().filter(|i| i.circulant) {
        for m in &inst.minors {
            t.check(m.normalized.as_ref() == Ok(&m.bullets), || {
                format!("{}: {:?} normalizes to {:?}", inst.label, m.bullets, m.normalized)
            });
            match minor_to_circuits(&inst.a, &m.bullets, m.p) {
                Ok((fam, _)) => t.check(fam.arcs().all(|x| x.kind != ArcKind::Forward), || {
                    format!("{}: family for {:?} uses forward arcs", inst.label, m.bullets)
                }),
                Err(e) => t.check(false, || format!("{}: {:?}: {e}", inst.label, m.bullets)),
            }
        }
    }
    t
}

fn criterion_6() -> Tally {
    let mut t = Tally::default();
    for n in 5..=20usize {
        for k in 2..=n - 2 {
            let (ni, ki) = (n as i128, k as i128);
            for a in 1..=n {
                for w in witnesses_d(n, k, a) {
                    let (ai, si, pi) = (a as i128, w.s as i128, w.p as i128);
                    t.eq("pn = sk − w", pi * ni, si * ki - w.w as i128);
                    let g = translate_d_to_g(n, k, a, w.s, w.p).unwrap();
                    let (d, n2, n3) = (g.d as i128, g.n2 as i128, g.n3 as i128);
                    t.eq("(k − ap)n = dn2·k + dn3(k + 1)", (ki - ai * pi) * ni, d * n2 * ki + d * n3 * (ki + 1));
                    if check_g_side(n, k, g).is_ok() {
                        let back = translate_g_to_d(n, k, g).unwrap();
                        t.eq(&format!("D→G→D n={n} k={k}"), (back.a, back.s, back.p), (a, w.s, w.p));
                    }
                }
            }
            for d in 1..=n {
                for g in witnesses_g(n, k, d) {
                    let (di, n1, n2, n3) = (d as i128, g.n1 as i128, g.n2 as i128, g.n3 as i128);
                    t.eq("n1 n = n2 k + n3(k + 1)", n1 * ni, n2 * ki + n3 * (ki + 1));
                    t.eq("(k − dn1)n = (n − d(n2 + n3))k − dn3", (ki - di * n1) * ni, (ni - di * (n2 + n3)) * ki - di * n3);
                    let back = translate_g_to_d(n, k, g).unwrap();
                    if check_d_side(n, k, back.a, back.s, back.p).is_ok() {
                        let again = translate_d_to_g(n, k, back.a, back.s, back.p).unwrap();
                        t.eq(&format!("G→D→G n={n} k={k}"), again, g);
                    }
                }
            }
        }
    }

    let grid: Vec<(usize, usize)> = (5..=12usize).flat_map(|n| (2..=n - 2).map(move |k| (n, k))).collect();
    let mut joint = grid
        .par_iter()
        .map(|&(n, k)| {
            let mut t = Tally::default();
            let limits = Limits::default();
            let dfams = enumerate_disjoint_families(&build_d(n, k).unwrap(), &limits).unwrap();
            let gfams = enumerate_g_families(&build_g(n, k).unwrap(), &limits).unwrap();
            let all: Vec<usize> = (1..=n).collect();
            let (mut matched_g, mut matched_d) = (0, 0);
            let complement = |v: &[usize]| -> Vec<usize> { all.iter().copied().filter(|x| !v.contains(x)).collect() };
            for gf in gfams.iter().filter(|gf| check_g_side(n, k, gf.params).is_ok()) {
                let want = translate_g_to_d(n, k, gf.params).unwrap();
                let bullets = complement(&gf.vertices);
                let hit = dfams.iter().any(|df| {
                    df.bullets == bullets && (df.a, df.s / df.a, df.p / df.a) == (want.a, want.s, want.p)
                });
                t.check(hit, || format!("n={n} k={k}: G-family {:?} on {:?} has no D-family", gf.params, gf.vertices));
                matched_g += 1;
            }
            for df in &dfams {
                let (s, p) = (df.s / df.a, df.p / df.a);
                if check_d_side(n, k, df.a, s, p).is_err() {
                    continue;
                }
                let want: GSide = translate_d_to_g(n, k, df.a, s, p).unwrap();
                let vertices = complement(&df.bullets);
                let hit = gfams.iter().any(|gf| gf.vertices == vertices && gf.params == want);
                t.check(hit, || format!("n={n} k={k}: D-family on {:?} has no G-family {want:?}", df.bullets));
                matched_d += 1;
            }
            t.notes.push(format!("{matched_g} {matched_d}"));
            t
        })
        .reduce(Tally::default, |mut x, y| {
            x.merge(y);
            x
        });
    let (mut g_total, mut d_total) = (0usize, 0usize);
    for note in joint.notes.drain(..).collect::<Vec<_>>() {
        let mut it = note.split(' ').map(|x| x.parse::<usize>().unwrap());
        g_total += it.next().unwrap();
        d_total += it.next().unwrap();
    }
    t.notes.push(format!("joint enumeration, n <= 12: {g_total} G-families and {d_total} D-families matched"));
    t.merge(joint);
    t
}

fn criterion_7() -> Tally {
    instances()
        .par_iter()
        .map(|inst| {
            let mut t = Tally::default();
            let n = inst.a.n();
            for mask in 1u32..(1u32 << n) {
                if mask.count_ones() > 8 {
                    continue;
                }
                let cols: Vec<usize> = (0..n).filter(|&j| mask >> j & 1 == 1).map(|j| j + 1).collect();
                let Ok(minor) = contract_onto(&inst.a, &cols) else { continue };
                let (fast, slow) = (recognize_circulant(&minor), circulant_by_search(&minor));
                t.check(fast == slow, || format!("{}: {cols:?}: recognizer {fast:?}, search {slow:?}", inst.label));
            }
            t
        })
        .reduce(Tally::default, |mut x, y| {
            x.merge(y);
            x
        })
}

fn main() {
    let criteria: [(&str, fn() -> Tally); 7] = [
        ("golden examples", criterion_1),
        ("counterexample handling", criterion_2),
        ("main equivalence sweep", criterion_3),
        ("circuit and family structure", criterion_4),
        ("circulant specialization", criterion_5),
        ("translation arithmetic", criterion_6),
        ("recognizer vs isomorphism search", criterion_7),
    ];
    let mut failed = 0;
    for (idx, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let tally = run();
        let secs = start.elapsed().as_secs_f64();
        let status = if tally.failures.is_empty() { "PASS" } else { "FAIL" };
        println!(
            "criterion {} [{status}] {name}: {} checks, {} failures ({secs:.2}s)",
            idx + 1,
            tally.checks,
            tally.failures.len()
        );
        for note in &tally.notes {
            println!("    {note}");
        }
        for f in tally.failures.iter().take(10) {
            println!("    {f}");
        }
        if !tally.failures.is_empty() {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
