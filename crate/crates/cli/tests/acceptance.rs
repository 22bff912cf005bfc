//! One PASS/FAIL line per acceptance criterion. Every quantity is recomputed
//! here from raw tables rather than read back from the core checkers.

use std::collections::BTreeSet;
use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use xalg::bundle::{parse_bundle, serialize_bundle};
use xalg::catalog::catalog;
use xalg::registry::checkers;
use xalg::resolve::Resolver;
use xalg_core::catxmod::{catxmod_morphism_check, CatXMod, CatXModMorphism};
use xalg_core::group::{FiniteGroup, GroupAction, GroupRef};
use xalg_core::groupoid::{bs_counit, discrete_ggpd, pair_ggpd, phi_bs, psi_bs, GroupGroupoid};
use xalg_core::laws::Witnessed;
use xalg_core::oracle::{
    brute_automorphisms, brute_homs, enumerate_actions, enumerate_ggpd_structures, enumerate_h_maps, enumerate_xmods,
};
use xalg_core::xmod::{xmod_check, XModCandidate};
use xalg_core::xsq::{natural_iso_t, natural_iso_u, psi_sq, u_naturality, xsq_check, xsq_morphism_check, XSqCandidate};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);
/// A groupoid side of `psi_sq(S)`: arrows, top and base groups, and the map down.
type Side<'a> = (&'a GroupGroupoid, &'a GroupRef, &'a GroupRef, &'a dyn Fn(usize) -> usize);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let c = catalog();
    let bundle = c.reference_bundle();
    let r = Resolver::new(&bundle);
    let reg = checkers();
    let mut checked = 0;
    for (kind, name) in c.entries() {
        let rep = reg.get(kind).expect("registered").check(&r, &name).map_err(|e| format!("{name}: {e:?}"))?;
        ensure(rep.passed(), || format!("{kind} {name} failed: {rep}"))?;
        checked += 1;
    }
    for (name, s) in &c.normal_subs {
        s.normal_check().map_err(|e| format!("normal sub of {name}: {e}"))?;
    }
    let counts = [c.groups.len(), c.xmods.len(), c.catxmods.len(), c.xsqs.len()];
    ensure(counts[0] >= 5 && counts[1] >= 5 && counts[2] >= 4 && counts[3] >= 4, || {
        format!("catalog too small: {counts:?}")
    })?;
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("took {secs:.1}s"))?;
    Ok(format!(
        "{checked} entries ({} groups, {} xmods, {} ggpds, {} catxmods, {} squares) in {secs:.2}s",
        counts[0],
        counts[1],
        c.ggpds.len(),
        counts[2],
        counts[3]
    ))
}

/// Every value other than the current one, at every cell of `table`.
fn cell_mutations(table: &[Vec<usize>], range: usize) -> Vec<(usize, usize, usize)> {
    let mut out = vec![];
    for (i, row) in table.iter().enumerate() {
        for (j, &cur) in row.iter().enumerate() {
            out.extend((0..range).filter(|&v| v != cur).map(|v| (i, j, v)));
        }
    }
    out
}

fn criterion_2() -> Outcome {
    let c = catalog();
    let mut small = vec![];
    let mut total = 0;
    let mut note = |name: &str, n: usize| {
        total += n;
        if n < 20 {
            small.push(format!("{name}={n}"));
        }
    };
    for (name, x) in &c.xmods {
        let base = x.to_candidate();
        let muts = cell_mutations(&base.action, x.a().order());
        for &(b, a, v) in &muts {
            let mut m: XModCandidate = base.clone();
            m.action[b][a] = v;
            match xmod_check(&m) {
                Ok(_) => return Err(format!("{name}: action[{b}][{a}] := {v} undetected")),
                Err(e) => ensure(m.reproduces(&e) && !e.witness().is_empty(), || {
                    format!(
                        "{name}: action[{b}][{a}] := {v}: witness {:?} for {} does not reproduce",
                        e.witness(),
                        e.tag()
                    )
                })?,
            }
        }
        note(name, muts.len());
    }
    for (name, s) in &c.xsqs {
        let base = s.to_candidate();
        let tables: [(&str, &Vec<Vec<usize>>, usize); 4] = [
            ("act_l", &base.act_l, s.l().order()),
            ("act_m", &base.act_m, s.m().order()),
            ("act_n", &base.act_n, s.n().order()),
            ("h", &base.h, s.l().order()),
        ];
        let mut n = 0;
        for (field, table, range) in tables {
            for (i, j, v) in cell_mutations(table, range) {
                let mut m: XSqCandidate = base.clone();
                let t = match field {
                    "act_l" => &mut m.act_l,
                    "act_m" => &mut m.act_m,
                    "act_n" => &mut m.act_n,
                    _ => &mut m.h,
                };
                t[i][j] = v;
                match xsq_check(&m) {
                    Ok(_) => return Err(format!("{name}: {field}[{i}][{j}] := {v} undetected")),
                    Err(e) => ensure(m.reproduces(&e), || {
                        format!(
                            "{name}: {field}[{i}][{j}] := {v}: witness {:?} for {} does not reproduce",
                            e.witness(),
                            e.tag()
                        )
                    })?,
                }
                n += 1;
            }
        }
        note(name, n);
    }
    let threshold = if small.is_empty() {
        "every structure has at least 20".to_owned()
    } else {
        format!("exhaustive below 20 where fewer exist: {}", small.join(", "))
    };
    Ok(format!("{total} single-entry mutations detected and reproduced; {threshold}"))
}

fn criterion_3() -> Outcome {
    let c = catalog();
    for (name, x) in &c.xmods {
        let g = psi_bs(x).map_err(|e| format!("psi_bs({name}): {e}"))?;
        let nb = x.b().order();
        let ker: Vec<usize> = g.g1().elements().filter(|&z| g.source(z) == 0).collect();
        let canonical: Vec<usize> = x.a().elements().map(|a| a * nb).collect();
        ensure(ker == canonical, || format!("{name}: ker s is not {{(a, 0)}}"))?;
        let y = phi_bs(&g);
        ensure(y.a().rows() == x.a().rows() && y.b().rows() == x.b().rows(), || format!("{name}: carriers differ"))?;
        ensure(y.alpha().map() == x.alpha().map(), || format!("{name}: boundaries differ"))?;
        ensure(y.action().rows() == x.action().rows(), || format!("{name}: actions differ"))?;
        let counit = bs_counit(&g).map_err(|e| format!("counit of psi_bs({name}): {e}"))?;
        ensure(counit.is_isomorphism(), || format!("counit of psi_bs({name}) is not bijective"))?;
        for z in g.g1().elements() {
            let y0 = g.source(z);
            let k = g.g1().div(z, g.identity(y0));
            let pos = ker.iter().position(|&q| q == k).expect("in ker s");
            ensure(counit.f1().apply(z) == pos * nb + y0, || {
                format!("{name}: counit differs from g ↦ (g·1_s(g)⁻¹, s(g)) at {z}")
            })?;
        }
    }
    Ok(format!("{} crossed modules: exact equality and counit isomorphisms", c.xmods.len()))
}

fn criterion_4() -> Outcome {
    let c = catalog();
    for (name, cx) in &c.catxmods {
        let u = natural_iso_u(cx).map_err(|e| format!("U_{name}: {e}"))?;
        catxmod_morphism_check(u.f1(), u.f0(), cx, u.target()).map_err(|e| format!("U_{name}: {e}"))?;
        let comps = [u.f1().f_a(), u.f1().f_b(), u.f0().f_a(), u.f0().f_b()];
        ensure(comps.iter().all(|f| f.is_bijective()), || format!("U_{name} is not bijective"))?;
    }
    for (name, s) in &c.xsqs {
        let t = natural_iso_t(s).map_err(|e| format!("T_{name}: {e}"))?;
        let maps = [t.f_l(), t.f_m(), t.f_n(), t.f_p()];
        xsq_morphism_check(
            maps[0].map().to_vec(),
            maps[1].map().to_vec(),
            maps[2].map().to_vec(),
            maps[3].map().to_vec(),
            t.source(),
            s,
        )
        .map_err(|e| format!("T_{name}: {e}"))?;
        ensure(maps.iter().all(|f| f.is_bijective()), || format!("T_{name} is not bijective"))?;
    }
    for (name, x) in &c.xmods {
        let f = CatXModMorphism::diagonal(x).map_err(|e| format!("diagonal({name}): {e}"))?;
        ensure(u_naturality(&f) == Ok(true), || format!("U is not natural at diagonal({name})"))?;
    }
    Ok(format!(
        "U on {} catxmods, T on {} squares, U natural at {} diagonal functors",
        c.catxmods.len(),
        c.xsqs.len(),
        c.xmods.len()
    ))
}

/// Interchange, kernel commutation and the two composition formulas, from
/// the raw structure maps.
fn internal_category_laws(label: &str, g: &GroupGroupoid) -> Result<usize, String> {
    let g1 = g.g1();
    let inv_eps = |b: usize| g1.inv(g.identity(g.source(b)));
    let left = |b: usize, a: usize| g1.op(g1.op(b, inv_eps(b)), a);
    let right = |b: usize, a: usize| g1.op(g1.op(a, inv_eps(b)), b);
    let ks: Vec<usize> = g1.elements().filter(|&x| g.source(x) == 0).collect();
    let kt: Vec<usize> = g1.elements().filter(|&x| g.target(x) == 0).collect();
    for &k in &ks {
        for &l in &kt {
            ensure(g1.op(k, l) == g1.op(l, k), || format!("{label}: ker s ∋ {k} and ker t ∋ {l} do not commute"))?;
        }
    }
    let pairs: Vec<(usize, usize)> = g1
        .elements()
        .flat_map(|b| g1.elements().map(move |a| (b, a)))
        .filter(|&(b, a)| g.source(b) == g.target(a))
        .collect();
    for &(b, a) in &pairs {
        ensure(left(b, a) == right(b, a), || format!("{label}: composition forms differ at ({b}, {a})"))?;
        ensure(g.compose(b, a) == Ok(left(b, a)), || format!("{label}: compose({b}, {a}) differs"))?;
    }
    for &(b, a) in &pairs {
        for &(b2, a2) in &pairs {
            let (bb, aa) = (g1.op(b, b2), g1.op(a, a2));
            ensure(g.source(bb) == g.target(aa), || format!("{label}: products of composable pairs not composable"))?;
            ensure(left(bb, aa) == g1.op(left(b, a), left(b2, a2)), || {
                format!("{label}: interchange fails at [{b}, {a}, {b2}, {a2}]")
            })?;
        }
    }
    Ok(pairs.len() * pairs.len())
}

fn criterion_5() -> Outcome {
    let c = catalog();
    let mut cats: Vec<(String, GroupGroupoid)> = c.ggpds.iter().map(|(n, g)| (n.clone(), g.clone())).collect();
    for (n, cx) in &c.catxmods {
        cats.push((format!("{n}.A"), cx.side_a().clone()));
        cats.push((format!("{n}.B"), cx.side_b().clone()));
    }
    for (n, s) in &c.xsqs {
        let cx = psi_sq(s).map_err(|e| format!("psi_sq({n}): {e}"))?;
        cats.push((format!("psi_sq({n}).A"), cx.side_a().clone()));
        cats.push((format!("psi_sq({n}).B"), cx.side_b().clone()));
    }
    for (n, g) in &c.groups {
        cats.push((format!("discrete({n})"), discrete_ggpd(g)));
        if g.order() * g.order() <= 64 {
            cats.push((format!("pair({n})"), pair_ggpd(g).map_err(|e| format!("pair({n}): {e}"))?));
        }
    }
    let mut quads = 0;
    let mut count = 0;
    for (label, g) in cats.iter().filter(|(_, g)| g.g1().order() <= 64) {
        quads += internal_category_laws(label, g)?;
        count += 1;
    }
    Ok(format!("{count} internal categories, {quads} composable quadruples"))
}

fn criterion_6() -> Outcome {
    let c = catalog();
    let mut pairs = 0;
    for (name, x) in &c.xmods {
        let g = psi_bs(x).map_err(|e| e.to_string())?;
        let (a_grp, nb) = (x.a(), x.b().order());
        for z in g.g1().elements() {
            for z2 in g.g1().elements() {
                let ((a, b), (a2, b2)) = ((z / nb, z % nb), (z2 / nb, z2 % nb));
                let composable = b2 == x.b().op(x.boundary(a), b);
                ensure(g.is_composable(z2, z) == composable, || format!("{name}: composability of ({z2}, {z})"))?;
                if composable {
                    let expected = a_grp.op(a2, a) * nb + b;
                    ensure(g.compose(z2, z) == Ok(expected), || format!("{name}: ({a2},{b2})∘({a},{b})"))?;
                    pairs += 1;
                }
            }
        }
    }
    for (name, s) in &c.xsqs {
        let cx = psi_sq(s).map_err(|e| e.to_string())?;
        let f = s.frame();
        let sides: [Side<'_>; 2] =
            [(cx.side_a(), s.l(), s.n(), &|l| f.lambda_p.apply(l)), (cx.side_b(), s.m(), s.p(), &|m| f.mu.apply(m))];
        for (g, top, base, down) in sides {
            let nn = base.order();
            for z in g.g1().elements() {
                for z2 in g.g1().elements() {
                    let ((l, n), (l2, n2)) = ((z / nn, z % nn), (z2 / nn, z2 % nn));
                    let composable = n2 == base.op(down(l), n);
                    ensure(g.is_composable(z2, z) == composable, || format!("{name}: composability of ({z2}, {z})"))?;
                    if composable {
                        ensure(g.compose(z2, z) == Ok(top.op(l2, l) * nn + n), || {
                            format!("{name}: ({l2},{n2})∘({l},{n})")
                        })?;
                        pairs += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{pairs} composable pairs match the closed formulas"))
}

/// All automorphism-valued row assignments, as raw action tables.
fn all_rows(b: &FiniteGroup, auts: &[Vec<usize>]) -> Vec<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<Vec<usize>>> = vec![vec![]];
    for _ in b.elements() {
        out = out.into_iter().flat_map(|t| auts.iter().map(move |r| [t.clone(), vec![r.clone()]].concat())).collect();
    }
    out
}

fn recount_actions(b: &GroupRef, a: &GroupRef) -> usize {
    all_rows(b, &brute_automorphisms(a))
        .into_iter()
        .filter(|rows| GroupAction::new(b.clone(), a.clone(), rows.clone()).is_ok())
        .count()
}

fn recount_xmods(a: &GroupRef, b: &GroupRef) -> usize {
    let auts = brute_automorphisms(a);
    let mut n = 0;
    for alpha in brute_homs(a, b) {
        for rows in all_rows(b, &auts) {
            let cand = XModCandidate { a: a.clone(), b: b.clone(), boundary: alpha.clone(), action: rows };
            n += usize::from(xmod_check(&cand).is_ok());
        }
    }
    n
}

fn criterion_7() -> Outcome {
    let z = |n| Arc::new(FiniteGroup::cyclic(n));
    let s3 = Arc::new(FiniteGroup::sym3());
    let one = Arc::new(FiniteGroup::trivial());
    let expected = [
        ("xmods(Z2,Z2)", enumerate_xmods(&z(2), &z(2)).map(|e| e.report.valid), recount_xmods(&z(2), &z(2)), 2),
        ("xmods(Z3,Z2)", enumerate_xmods(&z(3), &z(2)).map(|e| e.report.valid), recount_xmods(&z(3), &z(2)), 2),
        ("actions(Z2,Z3)", enumerate_actions(&z(2), &z(3)).map(|e| e.report.valid), recount_actions(&z(2), &z(3)), 2),
        ("xmods(S3,1)", enumerate_xmods(&s3, &one).map(|e| e.report.valid), recount_xmods(&s3, &one), 0),
    ];
    let mut parts = vec![];
    for (label, got, recount, want) in expected {
        let got = got.map_err(|e| format!("{label}: {e}"))?;
        ensure(got == want && recount == want, || {
            format!("{label}: enumerated {got}, recounted {recount}, expected {want}")
        })?;
        parts.push(format!("{label}={got}"));
    }
    let c = catalog();
    let mut members = 0;
    for (name, x) in &c.xmods {
        let e = enumerate_xmods(x.a(), x.b()).map_err(|e| format!("{name}: {e}"))?;
        ensure(e.items.contains(x), || format!("{name} missing from its enumeration"))?;
        let acts = enumerate_actions(x.b(), x.a()).map_err(|e| format!("{name}: {e}"))?;
        ensure(acts.items.contains(x.action()), || format!("action of {name} missing"))?;
        members += 2;
    }
    let mut ggpds: Vec<(String, GroupGroupoid)> = c.ggpds.iter().map(|(n, g)| (n.clone(), g.clone())).collect();
    for (n, g) in &c.groups {
        ggpds.push((format!("discrete({n})"), discrete_ggpd(g)));
        if let Ok(p) = pair_ggpd(g) {
            ggpds.push((format!("pair({n})"), p));
        }
    }
    for (name, g) in ggpds.iter().filter(|(_, g)| g.g1().order() <= 8) {
        let e = enumerate_ggpd_structures(g.g1(), g.g0()).map_err(|e| format!("{name}: {e}"))?;
        ensure(e.items.contains(g), || format!("{name} missing from its enumeration"))?;
        members += 1;
    }
    for (name, s) in &c.xsqs {
        if s.m().order() * s.n().order() > 64 {
            continue;
        }
        let e = enumerate_h_maps(s.frame()).map_err(|e| format!("{name}: {e}"))?;
        ensure(e.items.contains(s), || format!("{name} missing from its h-map enumeration"))?;
        members += 1;
    }
    Ok(format!("{}; {members} constructor outputs found in their enumerations", parts.join(", ")))
}

fn criterion_8() -> Outcome {
    let c = catalog();
    let mut n = 0;
    let inverse = |g: &GroupGroupoid, x: usize| {
        let g1 = g.g1();
        g1.op(g1.op(g.identity(g.source(x)), g1.inv(x)), g.identity(g.target(x)))
    };
    for (name, cx) in &c.catxmods {
        let x: &CatXMod = cx;
        for b1 in x.c1().b().elements() {
            for a1 in x.c1().a().elements() {
                let lhs = x.c1().act(inverse(x.side_b(), b1), inverse(x.side_a(), a1));
                let rhs = inverse(x.side_a(), x.c1().act(b1, a1));
                ensure(lhs == rhs && rhs == x.inverse_a(x.c1().act(b1, a1)), || {
                    format!("{name}: fails at ({b1}, {a1})")
                })?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} arrow pairs over {} catxmods", c.catxmods.len()))
}

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_xalg")).args(args).output().expect("run xalg");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn criterion_9() -> Outcome {
    let c = catalog();
    let entries = c.entries();
    for (kind, name) in &entries {
        let (code, out) = run(&["check", kind, name, "-f", "catalog"]);
        ensure(code == 0, || format!("check {kind} {name} exited {code}: {out}"))?;
    }
    let mut texts = vec![serialize_bundle(&c.reference_bundle())];
    texts.extend(entries.iter().map(|(_, n)| serialize_bundle(&c.emit(n).expect("entry"))));
    for t in &texts {
        let again = serialize_bundle(&parse_bundle(t).map_err(|e| e.to_string())?);
        ensure(&again == t, || "serialize∘parse changed a catalog bundle".to_owned())?;
    }
    let distinct: BTreeSet<&String> = texts.iter().collect();
    let fixture = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/mutated.bundle");
    let (code, out) = run(&["check", "xmod", "broken", "-f", fixture]);
    ensure(code == 1 && out.contains("axiom: CM2") && out.contains("witness: ["), || {
        format!("fixture exited {code}: {out}")
    })?;
    let witness = out.lines().find(|l| l.starts_with("witness:")).unwrap_or_default().to_owned();
    Ok(format!(
        "{} checks exit 0; {} bundles round-trip byte-identically; fixture exits 1 with CM2 {witness}",
        entries.len(),
        distinct.len()
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("axiom suites", criterion_1),
        ("mutation sensitivity", criterion_2),
        ("crossed module and groupoid round trips", criterion_3),
        ("natural isomorphisms U and T", criterion_4),
        ("interchange and kernel laws", criterion_5),
        ("derived composition formulas", criterion_6),
        ("oracle counts", criterion_7),
        ("inverse law b⁻¹·a⁻¹ = (b·a)⁻¹", criterion_8),
        ("command line", criterion_9),
    ];
    let mut failed = 0;
    for (i, (label, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS {}. {label}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}. {label}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
