//! Acceptance run: one line per criterion, non-zero exit if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use bialg_core::bd::{build_rbd, AdmissibleTriple};
use bialg_core::cocycle::{
    cohomologous_diag, construct_cocycle, is_antidiag_cocycle, is_diag_cocycle, is_twisted_cocycle, lambda_classify,
    normalize_antidiag, realize_hermitian, search_twisted, sqrt2_antidiag, DiagCocycle, LambdaClass,
};
use bialg_core::field::{is_norm_from_quadratic, sqrt_in};
use bialg_core::lie::{ad_tensor, casimir, coboundary_is_real, cyb, rdj, su_basis, verify_manin_and_r};
use bialg_core::matrix::{build_j, build_s, cayley};
use bialg_core::quaternion::{hilbert_symbol, relevant_places, Place};
use bialg_core::{rat, Budget, MatK, Rational, TowerElem, TowerSpec, Verdict};
use num::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5eed_2024;

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { ok: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { ok: false, detail: detail.into() }
}

fn within(limit: Duration, start: Instant, out: Outcome) -> Outcome {
    let took = start.elapsed();
    if out.ok && took > limit {
        return fail(format!("{} (took {took:?}, limit {limit:?})", out.detail));
    }
    out
}

fn c1_cyb_vanishing() -> Outcome {
    let start = Instant::now();
    let q = TowerSpec::rationals();
    for n in 2..=4 {
        if !cyb(&rdj(&q, n)).is_zero() {
            return fail(format!("cyb(rdj({n})) ≠ 0"));
        }
        let params = vec![Rational::zero(); (n - 1) * (n - 2) / 2];
        let bd = match build_rbd(&AdmissibleTriple::trivial(n), &params) {
            Ok(b) => b,
            Err(e) => return fail(format!("trivial triple n={n}: {e}")),
        };
        if !cyb(&bd.r()).is_zero() {
            return fail(format!("cyb(r_BD) ≠ 0 for the trivial triple, n={n}"));
        }
    }
    let t = AdmissibleTriple::from_pairs(3, &[(1, 2)]);
    match build_rbd(&t, &[]) {
        Ok(bd) if cyb(&bd.r()).is_zero() => {}
        Ok(_) => return fail("cyb(r_BD) ≠ 0 for τ: 1 ↦ 2"),
        Err(e) => return fail(format!("τ: 1 ↦ 2: {e}")),
    }
    within(Duration::from_secs(10), start, pass("exact zero for n = 2, 3, 4 and τ: 1 ↦ 2"))
}

fn c2_symmetry() -> Outcome {
    let q = TowerSpec::rationals();
    for n in 2..=4 {
        let r = rdj(&q, n);
        if r.add(&r.swap()) != casimir(&q, n) {
            return fail(format!("rdj + swap(rdj) ≠ Ω for n={n}"));
        }
    }
    pass("rdj + swap(rdj) = Ω for n = 2, 3, 4")
}

fn c3_manin() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for (n, d) in [(2, -1), (3, -1), (2, 5), (3, 5)] {
        let rep = match verify_manin_and_r(n, &rat(d)) {
            Ok(r) => r,
            Err(e) => return fail(format!("(n={n}, d={d}): {e}")),
        };
        if !rep.passed() {
            ok = false;
            notes.push(format!(
                "(n={n}, d={d}) isotropic={}/{} duality={} Σe⊗e'=√d·rdj: {} [Σe⊗e' = (√d/n)·swap(rdj): {}]",
                rep.isotropic_plus, rep.isotropic_minus, rep.duality, rep.r_matches, rep.matches_scaled_swap
            ));
        }
    }
    if ok {
        pass("isotropy, duality and Σ e⊗e' = √d·rdj for all four cases")
    } else {
        fail(notes.join("; "))
    }
}

/// `[[a, −μ·conj b], [b, μ·conj a]]`, a cocycle whenever it is invertible.
fn family_member(a: &TowerElem, b: &TowerElem, mu: &TowerElem) -> MatK {
    let k = a.spec();
    MatK::from_rows(k, vec![vec![a.clone(), -&(mu * &b.conj())], vec![b.clone(), mu * &a.conj()]]).unwrap()
}

fn c4_criterion_equivalence() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let d = rat(5);
    let k = TowerSpec::quadratic(&d).unwrap();
    let sqrt_d = sqrt_in(&k, &d).unwrap();
    let (plus, _) = su_basis(2, &sqrt_d);
    let base = rdj(&k, 2).scale(&sqrt_d);
    let (mut yes, mut no) = (0, 0);
    for trial in 0..20 {
        let x = if trial % 2 == 0 {
            loop {
                let a = common::random_quadratic(&mut rng, &k, 3);
                let b = common::random_quadratic(&mut rng, &k, 3);
                let mu = common::random_quadratic(&mut rng, &k, 3);
                let x = family_member(&a, &b, &mu);
                if !x.det().is_zero() {
                    break x;
                }
            }
        } else {
            common::random_invertible(&mut rng, &k, 2, 3)
        };
        let accepted = is_diag_cocycle(&x).is_ok();
        let r = ad_tensor(&x, &base).unwrap();
        let real = coboundary_is_real(&r, &plus);
        if accepted != real {
            return fail(format!("disagreement on X = {x}: cocycle={accepted}, reality={real}"));
        }
        if accepted {
            yes += 1;
        } else {
            no += 1;
        }
    }
    if yes == 0 || no == 0 {
        return fail(format!("only one direction exercised ({yes} accepted, {no} rejected)"));
    }
    within(Duration::from_secs(30), start, pass(format!("20 matrices agree ({yes} accepted, {no} rejected)")))
}

fn c5_construction() -> Outcome {
    let start = Instant::now();
    let cases: [(i64, &[i64]); 4] = [(-1, &[2, 5, 13, 10]), (-1, &[2, 2]), (5, &[2, 2]), (5, &[-1, -1])];
    for (d, ds) in cases {
        let ds: Vec<Rational> = ds.iter().map(|&x| rat(x)).collect();
        let c = match construct_cocycle(&ds, &rat(d), &Budget::default()) {
            Ok(c) => c,
            Err(e) => return fail(format!("d={d}, D={ds:?}: {e}")),
        };
        if common::gram(&c.x) != MatK::diag_rational(c.x.spec(), &ds) {
            return fail(format!("oracle rejects X for d={d}"));
        }
    }
    within(Duration::from_secs(10), start, pass("four constructions confirmed by star(X)·X = D"))
}

fn diag_of(d: i64, ds: &[i64]) -> DiagCocycle {
    construct_cocycle(&ds.iter().map(|&x| rat(x)).collect::<Vec<_>>(), &rat(d), &Budget::default()).unwrap()
}

fn c6_separation() -> Outcome {
    if hilbert_symbol(&rat(2), &rat(5), &Place::prime(5)) != -1 {
        return fail("(2,5)_5 ≠ −1");
    }
    let a = diag_of(5, &[2, 2]);
    let b = diag_of(5, &[1, 4]);
    let v = cohomologous_diag(&a, &b).unwrap();
    if v != Verdict::False {
        return fail(format!("diag(2,2) vs diag(1,4) over Q(√5): {v}"));
    }
    let c = diag_of(-1, &[2, 5, 13, 10]);
    let id = is_diag_cocycle(&MatK::identity(c.x.spec(), 4)).unwrap();
    let v = cohomologous_diag(&c, &id).unwrap();
    if v != Verdict::True {
        return fail(format!("diag(2,5,13,10) vs I over Q(i): {v}"));
    }
    pass("not cohomologous over Q(√5); cohomologous to I over Q(i)")
}

fn c7_determinant() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    let pools = [(-1i64, diag_of(-1, &[2, 5])), (5, diag_of(5, &[2, 2])), (5, diag_of(5, &[-1, -1]))];
    let mut made = 0;
    while made < 50 {
        let (d, base) = &pools[made % pools.len()];
        let k = base.x.spec().clone();
        let b = common::random_matrix(&mut rng, &k, 2, 2);
        let Ok(t) = cayley(&b.try_sub(&b.star()).unwrap()) else { continue };
        let dg: Vec<TowerElem> = (0..2)
            .map(|_| loop {
                let x = common::random_quadratic(&mut rng, &k, 3);
                if !x.is_zero() {
                    break x;
                }
            })
            .collect();
        let x = common::product(&common::product(&t, &base.x), &MatK::diag(&k, &dg));
        let acc = match is_diag_cocycle(&x) {
            Ok(a) => a,
            Err(e) => return fail(format!("T·X·Dg rejected: {e}")),
        };
        let det = acc.dx.det();
        // det(D) = N(det X) exhibits the norm directly
        if det != x.det().norm() {
            return fail("det(D) ≠ N(det X)");
        }
        let q = det.as_rational().unwrap();
        if is_norm_from_quadratic(&q, &rat(*d)).unwrap() != Verdict::True {
            return fail(format!("det(D) = {q} judged a non-norm"));
        }
        made += 1;
    }
    let k = TowerSpec::quadratic(&rat(5)).unwrap();
    let mut rejected = 0;
    while rejected < 20 {
        let x = common::random_invertible(&mut rng, &k, 3, 3);
        if common::gram(&x).is_diagonal() {
            continue;
        }
        if is_diag_cocycle(&x).is_ok() {
            return fail(format!("accepted a non-cocycle {x}"));
        }
        rejected += 1;
    }
    pass("50 gauge products have det(D) ∈ N(K*); 20 non-cocycles rejected")
}

fn c8_hilbert() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 8);
    let odd = [3i64, 5, 7, 11, 13, 17, 19, 23];
    for _ in 0..100 {
        let a = common::random_rational(&mut rng, 60, 12);
        let b = common::random_rational(&mut rng, 60, 12);
        for &p in &odd {
            let lib = hilbert_symbol(&a, &b, &Place::prime(p)) == 1;
            if lib != common::locally_solvable_brute(&a, &b, p, 3) {
                return fail(format!("({a}, {b}) at p = {p}"));
            }
        }
        if (hilbert_symbol(&a, &b, &Place::prime(2)) == 1) != common::locally_solvable_brute(&a, &b, 2, 6) {
            return fail(format!("({a}, {b}) at p = 2"));
        }
        if (hilbert_symbol(&a, &b, &Place::Infinity) == 1) != common::real_solvable(&a, &b) {
            return fail(format!("({a}, {b}) at ∞"));
        }
        let prod: i32 = relevant_places(&[a.clone(), b.clone()])
            .iter()
            .map(|v| hilbert_symbol(&a, &b, v) as i32)
            .product();
        if prod != 1 {
            return fail(format!("product formula fails for ({a}, {b})"));
        }
    }
    within(Duration::from_secs(60), start, pass("100 pairs agree with residue search; product formula holds"))
}

fn c9_antidiag() -> Outcome {
    for n in 2..=4 {
        let x = sqrt2_antidiag(n, &rat(5)).unwrap();
        if common::gram(&x) != build_s(x.spec(), n) {
            return fail(format!("star(X)·X ≠ S for n = {n}"));
        }
    }
    let triv = |n: usize| build_rbd(&AdmissibleTriple::trivial(n), &vec![Rational::zero(); (n - 1) * (n - 2) / 2]).unwrap();
    let k = TowerSpec::quadratic(&rat(5)).unwrap();
    let e = |a: i64, b: i64| TowerElem::from_pair(&k, 0, rat(a), rat(b));
    let mut pool = vec![sqrt2_antidiag(2, &rat(5)).unwrap(), sqrt2_antidiag(4, &rat(5)).unwrap()];
    for ds in [vec![e(3, 1)], vec![e(1, 1), e(2, -1)], vec![e(0, 1), e(7, 0)]] {
        let n = 2 * ds.len();
        let mut h = MatK::zero(&k, n);
        // H = S·diag(d_1, …, d_m, conj d_m, …, conj d_1)
        for (i, di) in ds.iter().enumerate() {
            h.set(i, n - 1 - i, di.conj());
            h.set(n - 1 - i, i, di.clone());
        }
        match realize_hermitian(&h, &Budget::default()) {
            Ok(x) => pool.push(x),
            Err(err) => return fail(format!("could not realize pool member: {err}")),
        }
    }
    for x in &pool {
        let n = x.n();
        let acc = match is_antidiag_cocycle(x, &triv(n)) {
            Ok(a) => a,
            Err(e) => return fail(format!("pool member rejected: {e}")),
        };
        let norm = match normalize_antidiag(&acc) {
            Ok(v) => v,
            Err(e) => return fail(format!("normalization failed: {e}")),
        };
        if common::gram(&norm.x) != build_s(norm.x.spec(), n) {
            return fail(format!("normalized representative is not S for n = {n}"));
        }
    }
    pass(format!("star(X)·X = S for n = 2, 3, 4; {} even-n cocycles normalize to S", pool.len()))
}

fn c10_twisted() -> Outcome {
    let k = TowerSpec::quadratic(&rat(-1)).unwrap();
    for n in 1..=3usize {
        let j = build_j(&k, n, &rat(2)).unwrap();
        let ext = j.spec().clone();
        let r2 = sqrt_in(&ext, &rat(2)).unwrap();
        for i in 1..=n {
            for c in 1..=n {
                let anti = c == n + 1 - i;
                let want = if 2 * i <= n + 1 {
                    if c == i || anti { TowerElem::one(&ext) } else { TowerElem::zero(&ext) }
                } else if anti {
                    r2.clone()
                } else if c == i {
                    -&r2
                } else {
                    TowerElem::zero(&ext)
                };
                if j.get(i - 1, c - 1) != &want {
                    return fail(format!("J({n}) entry ({i}, {c}) is {}", j.get(i - 1, c - 1)));
                }
            }
        }
    }
    // JᵀJ = [[3, −1], [−1, 3]] for n = 2, d' = 2, so S·JᵀJ is not diagonal
    let j = build_j(&k, 2, &rat(2)).unwrap();
    let jtj = common::product(&j.transpose(), &j);
    let ext = j.spec().clone();
    let expect = MatK::from_rational_rows(&ext, &[vec![rat(3), rat(-1)], vec![rat(-1), rat(3)]]).unwrap();
    if jtj != expect {
        return fail(format!("JᵀJ = {jtj}"));
    }
    if is_twisted_cocycle(&MatK::identity(&k, 2), &rat(2)).is_ok() {
        return fail("identity accepted as a twisted cocycle");
    }
    let mut found = 0;
    for (d, dp) in [(-1i64, 2i64), (5, 2), (-1, -2)] {
        let hits = search_twisted(&rat(d), &rat(dp), 1).unwrap();
        for q in &hits {
            let jj = build_j(q.spec(), 2, &rat(dp)).unwrap();
            let qe = q.embed(jj.spec()).unwrap();
            let inner = common::product(&common::gram(&qe), &jj);
            let m = common::product(&build_s(jj.spec(), 2), &common::product(&jj.transpose(), &inner));
            if !m.is_diagonal() || m.diagonal().iter().any(TowerElem::is_zero) {
                return fail(format!("search returned an unverified Q = {q}"));
            }
        }
        found += hits.len();
    }
    pass(format!("J pattern for n = 1, 2, 3; identity rejected; {found} search hits re-verified"))
}

fn c11_lambda() -> Outcome {
    for d in [-1i64, 5, 2] {
        let spec = TowerSpec::quadratic(&rat(d)).unwrap();
        let spec = spec.extend(&rat(2)).unwrap_or(spec);
        let sd = sqrt_in(&spec, &rat(d)).unwrap();
        let s2 = sqrt_in(&spec, &rat(2)).unwrap();
        let grid = [
            (TowerElem::from_int(&spec, 3), "basic"),
            (sd.scale(&rat(2)), "quadratic"),
            (s2.clone(), if d == 2 { "quadratic" } else { "twisted" }),
        ];
        for (lambda, want) in grid {
            let got = match lambda_classify(&lambda, &rat(d)) {
                Ok(c) => c,
                Err(e) => return fail(format!("λ = {lambda}, d = {d}: {e}")),
            };
            if got.name() != want {
                return fail(format!("λ = {lambda}, d = {d}: {} (expected {want})", got.name()));
            }
            if let LambdaClass::Twisted { dprime } = &got {
                let sq = |q: &Rational| bialg_core::is_square_rational(q);
                if sq(dprime) || sq(&(dprime * rat(d))) {
                    return fail(format!("twisted with d' = {dprime}, d = {d}"));
                }
            }
        }
    }
    pass("nine-case grid classified")
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("CYB vanishing", c1_cyb_vanishing),
        ("symmetry identity", c2_symmetry),
        ("Manin reconstruction", c3_manin),
        ("cocycle criterion equivalence", c4_criterion_equivalence),
        ("construction soundness", c5_construction),
        ("cohomology separation", c6_separation),
        ("determinant obstruction", c7_determinant),
        ("Hilbert symbol correctness", c8_hilbert),
        ("anti-diagonal constructions", c9_antidiag),
        ("twisted predicate sanity", c10_twisted),
        ("λ-trichotomy", c11_lambda),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let out = f();
        let tag = if out.ok { "PASS" } else { "FAIL" };
        println!("criterion {:>2} [{tag}] {name}: {}", i + 1, out.detail);
        failed += usize::from(!out.ok);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
