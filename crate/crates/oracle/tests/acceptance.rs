//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::HashSet;
use std::time::Instant;

use gstable_core::algebra::{is_indecomposable, AutChain};
use gstable_core::budget::Budgets;
use gstable_core::cohomology::{descend, inflate, les_check, ActionModule, Cochain, RelComplex};
use gstable_core::engine::{enumerate_extensions, stable_by_conjugation, BranchNode, EngineOptions};
use gstable_core::field::Field;
use gstable_core::group::{named, CosetSystem, GroupTable, Subgroup};
use gstable_core::matrix::FqMatrix;
use gstable_core::morphs::{MorphContext, WeakMorph};
use gstable_core::rep::Representation;
use gstable_oracle::{
    automorphisms, brute_cohomology, brute_extensions, class_keys, conjugacy_dedup, differential, endomorphisms,
    is_coboundary, is_local, OracleBudget,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Instance {
    name: &'static str,
    g: GroupTable,
    theta: Representation,
    /// Class count pinned by hand computation, when there is one.
    pinned: Option<usize>,
}

fn rep(g: &GroupTable, p: u64, gens: &[(usize, &[&[i64]])]) -> Representation {
    let f = Field::prime(p).unwrap();
    let ids: Vec<usize> = gens.iter().map(|(x, _)| *x).collect();
    let l = g.generate(&ids).unwrap();
    let n = gens[0].1.len();
    let pairs: Vec<(usize, FqMatrix)> = gens.iter().map(|(x, m)| (*x, FqMatrix::from_ints(&f, m))).collect();
    Representation::from_generators(g, &l, &f, n, &pairs).unwrap()
}

const JORDAN: &[&[i64]] = &[&[1, 1], &[0, 1]];
const ORDER3_GF2: &[&[i64]] = &[&[0, 1], &[1, 1]];

fn suite() -> Vec<Instance> {
    let c4 = named::cyclic(4);
    let k4 = named::abelian(&[2, 2]);
    let c6 = named::cyclic(6);
    let s3 = named::symmetric(3);
    let d4 = named::dihedral(4);
    let q8 = named::quaternion();
    let c2c4 = named::abelian(&[2, 4]);
    let cyc = named::permutation_index(&[1, 2, 0]);
    let mk = |name, g: &GroupTable, p, gens: &[(usize, &[&[i64]])], pinned| Instance {
        name,
        g: g.clone(),
        theta: rep(g, p, gens),
        pinned,
    };
    vec![
        mk("C4/C2 GF3 [2]", &c4, 3, &[(2, &[&[2]])], Some(0)),
        mk("C2xC2/<a> GF3 [2]", &k4, 3, &[(2, &[&[2]])], Some(2)),
        mk("S3/A3 GF7 diag(2,4)", &s3, 7, &[(cyc, &[&[2, 0], &[0, 4]])], Some(1)),
        mk("S3/A3 GF7 trivial", &s3, 7, &[(cyc, &[&[1]])], Some(2)),
        mk("C4/C2 GF2 Jordan", &c4, 2, &[(2, JORDAN)], Some(0)),
        mk("S3/A3 GF2 irreducible", &s3, 2, &[(cyc, ORDER3_GF2)], None),
        mk("C6/C3 GF7 [2]", &c6, 7, &[(2, &[&[2]])], None),
        mk("C6/C2 GF3 [2]", &c6, 3, &[(3, &[&[2]])], None),
        mk("D4/C4 GF7 [6]", &d4, 7, &[(1, &[&[6]])], None),
        mk("D4/Z GF3 [2]", &d4, 3, &[(2, &[&[2]])], None),
        mk("Q8/Z GF3 -I", &q8, 3, &[(2, &[&[2, 0], &[0, 2]])], None),
        mk("Q8/<i> GF3 [2]", &q8, 3, &[(1, &[&[2]])], None),
        mk("C2xC4/<a> GF2 Jordan", &c2c4, 2, &[(4, JORDAN)], None),
        mk("C2xC4/<b^2> GF3 [2]", &c2c4, 3, &[(2, &[&[2]])], None),
        mk("C2xC2/<a> GF2 Jordan", &k4, 2, &[(2, JORDAN)], None),
        mk("D4/C4 GF2 Jordan", &d4, 2, &[(1, JORDAN)], None),
        mk("C6/C3 GF2 irreducible", &c6, 2, &[(2, ORDER3_GF2)], None),
    ]
}

struct Outcome {
    violations: Vec<String>,
    summary: String,
}

fn report(n: usize, title: &str, start: Instant, out: Outcome) -> bool {
    let ok = out.violations.is_empty();
    println!(
        "criterion {n} {title}: {} ({}, {:.1}s)",
        if ok { "PASS" } else { "FAIL" },
        out.summary,
        start.elapsed().as_secs_f64()
    );
    for v in out.violations.iter().take(20) {
        println!("    {v}");
    }
    ok
}

fn engine_options() -> EngineOptions {
    EngineOptions::default()
}

/// Engine classes against oracle classes: same count, and each engine
/// extension lands in a distinct oracle class.
fn compare_with_oracle(inst: &Instance, budget: &OracleBudget) -> Result<(usize, usize), String> {
    let r = enumerate_extensions(&inst.g, &inst.theta, &engine_options());
    if let Some(e) = &r.error {
        return Err(format!("{}: engine error {e}", inst.name));
    }
    let ext = brute_extensions(&inst.g, &inst.theta, budget).map_err(|e| format!("{}: {e}", inst.name))?;
    let h = automorphisms(&inst.theta, budget).map_err(|e| format!("{}: {e}", inst.name))?;
    let classes = conjugacy_dedup(&ext, &h);
    let class_of = |t: &Vec<FqMatrix>| -> Option<usize> {
        let i = ext.iter().position(|e| e == t)?;
        classes.iter().position(|c| c.contains(&i))
    };
    for leaf in &r.leaves {
        if class_of(leaf).is_none() {
            return Err(format!("{}: engine leaf is not an extension", inst.name));
        }
    }
    let hit: Vec<Option<usize>> = r.extensions.iter().map(class_of).collect();
    let distinct: HashSet<usize> = hit.iter().flatten().copied().collect();
    if distinct.len() != r.extensions.len() || distinct.len() != classes.len() {
        return Err(format!("{}: engine {} classes, oracle {} classes", inst.name, r.extensions.len(), classes.len()));
    }
    // the candidate set is closed under conjugation
    let ext_set: HashSet<&Vec<FqMatrix>> = ext.iter().collect();
    for t in &ext {
        for a in &h {
            let ai = a.inverse().unwrap();
            let c: Vec<FqMatrix> = t.iter().map(|x| a.mul(x).mul(&ai)).collect();
            if !ext_set.contains(&c) {
                return Err(format!("{}: oracle output not closed under conjugation", inst.name));
            }
        }
    }
    Ok((r.extensions.len(), ext.len()))
}

fn criterion_1(suite: &[Instance]) -> Outcome {
    let budget = OracleBudget::default();
    let mut violations = Vec::new();
    let mut counted = 0;
    for inst in suite {
        assert!(inst.theta.subgroup().is_normal_in(&inst.g));
        match compare_with_oracle(inst, &budget) {
            Ok(_) => counted += 1,
            Err(e) => violations.push(e),
        }
    }
    Outcome { violations, summary: format!("{counted}/{} instances agree", suite.len()) }
}

fn criterion_2(suite: &[Instance]) -> Outcome {
    let budget = OracleBudget::default();
    let mut violations = Vec::new();
    let pinned: Vec<&Instance> = suite.iter().filter(|i| i.pinned.is_some()).collect();
    for inst in &pinned {
        let want = inst.pinned.unwrap();
        let r = enumerate_extensions(&inst.g, &inst.theta, &engine_options());
        let ext = brute_extensions(&inst.g, &inst.theta, &budget).unwrap();
        let oracle = conjugacy_dedup(&ext, &automorphisms(&inst.theta, &budget).unwrap()).len();
        if r.class_count() != want || oracle != want {
            violations.push(format!("{}: pinned {want}, engine {}, oracle {oracle}", inst.name, r.class_count()));
        }
    }
    Outcome { violations, summary: format!("{} pinned counts", pinned.len()) }
}

fn small_groups() -> Vec<(String, GroupTable)> {
    let mut out: Vec<(String, GroupTable)> = (1..=8).map(|n| (format!("C{n}"), named::cyclic(n))).collect();
    out.push(("C2xC2".into(), named::abelian(&[2, 2])));
    out.push(("C2xC4".into(), named::abelian(&[2, 4])));
    out.push(("C2xC2xC2".into(), named::abelian(&[2, 2, 2])));
    out.push(("S3".into(), named::symmetric(3)));
    out.push(("D4".into(), named::dihedral(4)));
    out.push(("Q8".into(), named::quaternion()));
    out
}

/// Trivial modules plus sign, swap and order-3 actions through the
/// quotients of order 2 and 3.
fn modules(g: &GroupTable) -> Vec<(String, ActionModule)> {
    let mut out: Vec<(String, ActionModule)> = [vec![2], vec![3], vec![4], vec![2, 2]]
        .into_iter()
        .map(|f| (format!("{f:?} trivial"), ActionModule::trivial(g, &f)))
        .collect();
    for n in g.subgroups().into_iter().filter(|s| s.is_normal_in(g)) {
        let index = g.order() / n.len();
        if index == 2 {
            let sign = |x: usize| !n.contains(x);
            for d in [3, 4] {
                let m = ActionModule::from_fn(g, &[d], |x| vec![vec![if sign(x) { d - 1 } else { 1 }]]).unwrap();
                out.push((format!("[{d}] sign mod {:?}", n.elements()), m));
            }
            let m = ActionModule::from_fn(g, &[2, 2], |x| if sign(x) { vec![vec![0, 1], vec![1, 0]] } else { vec![vec![1, 0], vec![0, 1]] })
                .unwrap();
            out.push((format!("[2, 2] swap mod {:?}", n.elements()), m));
        }
        if index == 3 {
            let x0 = g.elements().find(|&x| !n.contains(x)).unwrap();
            let x0sq = g.mul(x0, x0);
            let power = |x: usize| {
                if n.contains(x) {
                    0
                } else if n.elements().iter().any(|&y| g.mul(x0, y) == x) {
                    1
                } else {
                    debug_assert!(n.elements().iter().any(|&y| g.mul(x0sq, y) == x));
                    2
                }
            };
            let mats = [vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 1]], vec![vec![1, 1], vec![1, 0]]];
            let m = ActionModule::from_fn(g, &[2, 2], |x| mats[power(x)].clone()).unwrap();
            out.push((format!("[2, 2] order 3 mod {:?}", n.elements()), m));
        }
    }
    out
}

fn criterion_3() -> Outcome {
    let budget = OracleBudget { max_cochains: 1 << 12, ..OracleBudget::default() };
    let budgets = Budgets::default();
    let mut violations = Vec::new();
    let mut cases = 0;
    let mut nontrivial = 0;
    let mut exhaustive = 0;
    for (gname, g) in small_groups() {
        let mods = modules(&g);
        for l in g.subgroups() {
            for (mname, m) in &mods {
                if !m.is_trivial() {
                    nontrivial += 1;
                }
                let cx = RelComplex::new(&g, &l, m);
                for n in 1..=2 {
                    cases += 1;
                    let tag = format!("H{n}({gname}, {:?}; {mname})", l.elements());
                    let core = match cx.cohomology(n, &budgets) {
                        Ok(c) => c,
                        Err(e) => {
                            violations.push(format!("{tag}: {e}"));
                            continue;
                        }
                    };
                    let brute = match brute_cohomology(n, &g, &l, m, &budget) {
                        Ok(b) => b,
                        Err(e) => {
                            violations.push(format!("{tag}: oracle {e}"));
                            continue;
                        }
                    };
                    if brute.exhaustive {
                        exhaustive += 1;
                    }
                    if core.order() != brute.order {
                        violations.push(format!("{tag}: solver {} oracle {}", core.order(), brute.order));
                    }
                    let reps = match core.classes(1 << 12) {
                        Ok(all) => all,
                        Err(_) => core.representatives().to_vec(),
                    };
                    if reps.iter().any(|r| !differential(&g, m, r).is_zero() || !r.vanishes_on(&l)) {
                        violations.push(format!("{tag}: representative is not a relative cocycle"));
                    }
                    let keys = class_keys(&g, &l, m, &reps);
                    let distinct: HashSet<&Vec<i64>> = keys.iter().collect();
                    if distinct.len() != keys.len() {
                        violations.push(format!("{tag}: representatives are cohomologous"));
                    }
                }
            }
        }
    }
    Outcome { violations, summary: format!("{cases} cohomology groups compared ({exhaustive} exhaustively), {nontrivial} nontrivial actions") }
}

/// Brute force: some `h ∈ H_j` with `[θ(L), h] ⊆ H_{j+1}` and
/// `h·a(x)·h⁻¹ ≡ b(x)` modulo `H_{j+1}` for all `x`.
fn conjugate_mod(ctx: &MorphContext, h: &[FqMatrix], j: usize, a: &WeakMorph, b: &WeakMorph) -> bool {
    let series = ctx.series();
    let theta = ctx.theta();
    let lgens = ctx.subgroup().generators(ctx.group());
    h.iter().filter(|u| series.contains(j, u)).any(|u| {
        let ui = u.inverse().unwrap();
        lgens.iter().all(|&l| {
            let t = theta.image(l);
            series.contains(j + 1, &t.mul(u).mul(&t.inverse().unwrap()).mul(&ui))
        }) && ctx.group().elements().all(|x| {
            let bx = b.value(x).inverse().unwrap();
            series.contains(j + 1, &u.mul(a.value(x)).mul(&ui).mul(&bx))
        })
    })
}

fn random_invariant(rng: &mut ChaCha8Rng, l: &Subgroup, m: &ActionModule) -> Vec<i64> {
    let inv: Vec<Vec<i64>> = m.elements().into_iter().filter(|a| l.elements().iter().all(|&x| m.act(x, a) == *a)).collect();
    inv.choose(rng).unwrap().clone()
}

fn criterion_4(suite: &[Instance]) -> Outcome {
    let budget = OracleBudget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut violations = Vec::new();
    let mut samples = 0;
    let mut morphs = 0;
    let mut lifts = 0;
    let mut actions = 0;
    let usable: Vec<&Instance> = suite.iter().filter(|i| stable_by_conjugation(&i.g, &i.theta, &engine_options()).is_ok()).collect();
    let hs: Vec<Vec<FqMatrix>> = usable.iter().map(|i| automorphisms(&i.theta, &budget).unwrap()).collect();
    while samples < 120 {
        let k = rng.gen_range(0..usable.len());
        let inst = usable[k];
        let h = &hs[k];
        let setup = stable_by_conjugation(&inst.g, &inst.theta, &engine_options()).unwrap();
        let ctx = &setup.context;
        let g = ctx.group();
        let l = ctx.subgroup();
        samples += 1;
        // random level-0 morph: scale the witness by H on each coset
        let cosets = CosetSystem::new(g, l);
        let scal: Vec<&FqMatrix> = (0..cosets.index()).map(|c| if c == 0 { &h[0] } else { h.choose(&mut rng).unwrap() }).collect();
        let id = FqMatrix::identity(inst.theta.field(), inst.theta.dim());
        let table: Vec<FqMatrix> = g
            .elements()
            .map(|x| {
                let c = cosets.coset_index(x);
                if c == 0 { id.clone() } else { scal[c].clone() }.mul(setup.witness.value(x))
            })
            .collect();
        let mut f = ctx.normalize(&WeakMorph::new(0, table));
        let tag = |j: usize| format!("{} sample {samples} level {j}", inst.name);
        while f.level() < ctx.depth() {
            let j = f.level();
            morphs += 1;
            let module = match ctx.induced_action(&f, j) {
                Ok(m) => m,
                Err(e) => {
                    violations.push(format!("{}: {e}", tag(j)));
                    break;
                }
            };
            let cx = ctx.complex(&module);
            let obs = ctx.obstruction(&f, &cx).unwrap();
            if !differential(g, &module, &obs.cocycle).is_zero() {
                violations.push(format!("{}: obstruction is not a cocycle", tag(j)));
            }
            let bounds = is_coboundary(g, l, &module, &obs.cocycle, &budget).unwrap();
            if bounds != obs.certificate.is_some() {
                violations.push(format!("{}: solver says {}, oracle says {bounds}", tag(j), obs.certificate.is_some()));
            }
            let Some(alpha) = obs.certificate else { break };
            let lifted = match ctx.lift(&f, &alpha) {
                Ok(x) => ctx.normalize(&x),
                Err(e) => {
                    violations.push(format!("{}: lift failed: {e}", tag(j)));
                    break;
                }
            };
            lifts += 1;
            let h1 = cx.cohomology(1, ctx.budgets()).unwrap();
            let classes = h1.classes(1 << 16).unwrap();
            for (i, gamma) in classes.iter().enumerate() {
                // move within the class by a random coboundary
                let mut a = Cochain::zero(g.order(), 0, module.rank());
                a.set(&[], &random_invariant(&mut rng, l, &module));
                let shifted = gamma.add(&differential(g, &module, &a), &module);
                let moved = ctx.z1_act(&shifted, &lifted, &cx).unwrap();
                actions += 1;
                let conj = conjugate_mod(ctx, h, j, &lifted, &moved);
                let trivial = is_coboundary(g, l, &module, &shifted, &budget).unwrap();
                if conj != (i == 0) || trivial != (i == 0) {
                    violations.push(format!("{}: class {i}: conjugate {conj}, coboundary {trivial}", tag(j)));
                }
            }
            let pick = classes.choose(&mut rng).unwrap();
            f = ctx.normalize(&ctx.z1_act(pick, &lifted, &cx).unwrap());
        }
    }
    Outcome {
        violations,
        summary: format!("{samples} random morphs, {morphs} levels, {lifts} lifts, {actions} Z1 actions"),
    }
}

fn nodes(root: &BranchNode) -> Vec<&BranchNode> {
    root.walk().into_iter().filter(|n| n.action.is_some()).collect()
}

fn criterion_5(suite: &[Instance]) -> Outcome {
    let budget = OracleBudget::default();
    let budgets = Budgets::default();
    let mut violations = Vec::new();
    let mut checked = 0;
    for inst in suite {
        let g = &inst.g;
        let l = inst.theta.subgroup();
        let r = enumerate_extensions(g, &inst.theta, &engine_options());
        let Some(root) = &r.root else { continue };
        for node in nodes(root) {
            let m = node.action.as_ref().unwrap();
            if !m.is_trivial_on(l) {
                continue;
            }
            checked += 1;
            let tag = format!("{} level {} path {:?}", inst.name, node.level, node.path);
            let (q, proj, qm) = m.descend(g, l).unwrap();
            let trivial = q.trivial_subgroup();
            let rel = RelComplex::new(g, l, m);
            let h1 = rel.cohomology(1, &budgets).unwrap().order();
            let h1q = brute_cohomology(1, &q, &trivial, &qm, &budget).unwrap().order;
            if h1 != h1q {
                violations.push(format!("{tag}: |H1(G,L)| = {h1}, |H1(G/L)| = {h1q}"));
            }
            let h2q = RelComplex::absolute(&q, &qm).cohomology(2, &budgets).unwrap();
            for c in h2q.classes(1 << 12).unwrap().iter().skip(1) {
                if is_coboundary(g, l, m, &inflate(c, &proj), &budget).unwrap() {
                    violations.push(format!("{tag}: inflation kills a nonzero class"));
                }
            }
            let obs = node.obstruction.as_ref().unwrap();
            let cocycle = &obs.cocycle;
            let constant = g.elements().all(|x| {
                g.elements().all(|y| {
                    l.elements().iter().all(|&a| {
                        l.elements().iter().all(|&b| cocycle.value(&[g.mul(x, a), g.mul(y, b)]) == cocycle.value(&[x, y]))
                    })
                })
            });
            if !constant {
                violations.push(format!("{tag}: obstruction not constant on cosets"));
                continue;
            }
            match descend(cocycle, g, l) {
                None => violations.push(format!("{tag}: obstruction does not descend")),
                Some(d) => {
                    if inflate(&d, &proj) != *cocycle {
                        violations.push(format!("{tag}: descended class does not inflate back"));
                    }
                    let zero = is_coboundary(&q, &trivial, &qm, &d, &budget).unwrap();
                    if zero != obs.is_zero() {
                        violations.push(format!("{tag}: obstruction zero {} but quotient class zero {zero}", obs.is_zero()));
                    }
                }
            }
        }
    }
    Outcome { violations, summary: format!("{checked} layer modules") }
}

fn criterion_6(suite: &[Instance]) -> Outcome {
    let budget = OracleBudget::default();
    let budgets = Budgets::default();
    let mut violations = Vec::new();
    let mut indecomposable = 0;
    let mut decomposable = 0;
    for inst in suite {
        let theta = &inst.theta;
        let tag = inst.name;
        let ind = is_indecomposable(&inst.g, theta, &budgets).unwrap();
        let e = endomorphisms(theta, &budget).unwrap();
        if ind != is_local(&e) {
            violations.push(format!("{tag}: indecomposable {ind} but local {}", !ind));
        }
        if tag.contains("diag(2,4)") && ind {
            violations.push(format!("{tag}: reported indecomposable"));
        }
        if !ind {
            decomposable += 1;
            continue;
        }
        indecomposable += 1;
        let chain = AutChain::of(&inst.g, theta, &budgets).unwrap();
        let q = theta.field().order() as u128;
        let p = theta.field().p() as i64;
        let r = chain.residue_degree();
        let rad = chain.radical();
        let top = q.pow(r as u32) - 1;
        let aut = automorphisms(theta, &budget).unwrap().len() as u128;
        if aut != top * q.pow(rad.dim_j() as u32) || chain.order(0) != aut {
            violations.push(format!("{tag}: |Aut| = {aut}, chain says {} with r = {r}, dim J = {}", chain.order(0), rad.dim_j()));
        }
        let want_top: Vec<i64> = if top > 1 { vec![top as i64] } else { vec![] };
        if chain.factors(0) != want_top {
            violations.push(format!("{tag}: top layer {:?}", chain.factors(0)));
        }
        for m in 1..chain.depth() {
            let f = chain.factors(m);
            let dim = rad.powers[m - 1].dim() - rad.powers[m].dim();
            let size: u128 = f.iter().map(|&d| d as u128).product();
            if f.iter().any(|&d| d != p) || size != q.pow(dim as u32) {
                violations.push(format!("{tag}: layer {m} has factors {f:?}, expected dimension {dim}"));
            }
        }
    }
    Outcome { violations, summary: format!("{indecomposable} indecomposable, {decomposable} decomposable") }
}

fn criterion_7(suite: &[Instance]) -> Outcome {
    let budgets = Budgets::default();
    let mut violations = Vec::new();
    let mut checked = 0;
    for inst in suite {
        let g = &inst.g;
        let l = inst.theta.subgroup();
        let r = enumerate_extensions(g, &inst.theta, &engine_options());
        let mut mods: Vec<(String, ActionModule)> = vec![
            ("[2] trivial".into(), ActionModule::trivial(g, &[2])),
            ("[3] trivial".into(), ActionModule::trivial(g, &[3])),
        ];
        if let Some(root) = &r.root {
            for n in nodes(root) {
                mods.push((format!("layer {} path {:?}", n.level, n.path), n.action.clone().unwrap()));
            }
        }
        for (name, m) in mods {
            checked += 1;
            match les_check(g, l, &m, &budgets) {
                Ok(rep) if rep.passes() => {}
                Ok(rep) => violations.push(format!("{} {name}: {rep:?}", inst.name)),
                Err(e) => violations.push(format!("{} {name}: {e}", inst.name)),
            }
        }
    }
    Outcome { violations, summary: format!("{checked} modules") }
}

fn main() {
    let suite = suite();
    let mut ok = true;
    let t = Instant::now();
    ok &= report(1, "oracle equivalence", t, criterion_1(&suite));
    let t = Instant::now();
    ok &= report(2, "pinned counts", t, criterion_2(&suite));
    let t = Instant::now();
    ok &= report(3, "cohomology cross-check", t, criterion_3());
    let t = Instant::now();
    ok &= report(4, "exact sequence on random morphs", t, criterion_4(&suite));
    let t = Instant::now();
    ok &= report(5, "comparison with the quotient", t, criterion_5(&suite));
    let t = Instant::now();
    ok &= report(6, "automorphism group structure", t, criterion_6(&suite));
    let t = Instant::now();
    ok &= report(7, "long exact sequence", t, criterion_7(&suite));
    if !ok {
        std::process::exit(1);
    }
}
