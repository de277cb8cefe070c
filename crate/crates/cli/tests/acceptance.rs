//! The ten acceptance criteria, one PASS/FAIL line each.
//!
//! Long tiers run only with `PT_OPT_IN_LONG=1`; without it their lines
//! report SKIP and do not count as failures.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::Instant;

use parke_taylor::reference as refdata;
use parke_taylor_core::linalg::{integer_kernel_basis, rank, SparseVec};
use parke_taylor_core::moduli::{build_l, lc_ideal, verify_linear_iso, verify_lower_order_ideal, KapranovIndex};
use parke_taylor_core::perm::{enumerate_sigma, Permutation};
use parke_taylor_core::plucker::{certify, lift_relation, open_pt_parts, closed_pt_ideal, ChoicePolicy};
use parke_taylor_core::poly::{
    minimal_generators_by_degree, pfaffian_check, projective_degree_and_dim, saturate_by_product, Ideal, Polynomial,
};
use parke_taylor_core::pt::{apply_matrix, build_matrix, telescoping_defect, vanishes_on_pt, vanishes_on_torus, SigmaRing};
use parke_taylor_core::toric::{
    adjacency_balanced_raw, binomial_from_vector, check_conjecture, expected_kernel_rank, kernel_binomials,
    lift_binomial, toric_ideal, Binomial,
};
use parke_taylor_core::{BigInt, Budget, Error, Result};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

enum Status {
    Pass,
    Fail,
    Skip,
}

struct Line {
    status: Status,
    detail: Vec<String>,
}

impl Line {
    fn new() -> Self {
        Line { status: Status::Pass, detail: Vec::new() }
    }

    /// Records one sub-check; any false turns the line red.
    fn check(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        if !ok {
            self.status = Status::Fail;
            self.detail.push(format!("FAILED {what}"));
        } else {
            self.detail.push(what);
        }
    }

    fn result(&mut self, r: Result<()>) {
        if let Err(e) = r {
            self.check(false, format!("error: {e}"));
        }
    }

    fn skip(&mut self, what: &str) {
        if matches!(self.status, Status::Pass) && self.detail.is_empty() {
            self.status = Status::Skip;
        }
        self.detail.push(format!("skipped {what} (set PT_OPT_IN_LONG=1)"));
    }
}

fn opt_in() -> bool {
    std::env::var("PT_OPT_IN_LONG").is_ok_and(|v| v == "1")
}

fn binom2(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

fn c1(l: &mut Line) -> Result<()> {
    let t = Instant::now();
    let m = build_matrix(5)?;
    let secs = t.elapsed().as_secs_f64();
    let shown: Vec<Vec<BigInt>> = refdata::A5.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    l.check(m.to_dense() == shown, "build_matrix(5) equals the reference 10x6 matrix");
    l.check(secs < 0.1, format!("runtime {secs:.4}s < 0.1s"));
    Ok(())
}

fn c2(l: &mut Line) -> Result<()> {
    let k = integer_kernel_basis(&build_matrix(5)?);
    let u = SparseVec::from_i64(&refdata::A5_KERNEL);
    let mut neg = u.clone();
    neg.negate();
    l.check(k.vectors.len() == 1 && (k.vectors[0] == u || k.vectors[0] == neg), "ker A_5 = Z(1,-1,-1,1,1,-1)");
    for n in 4..=8 {
        let r = rank(&build_matrix(n)?);
        l.check(r == binom2(n - 1) - 1, format!("rank A_{n} = {r}"));
    }
    let top = if opt_in() { 9 } else { 8 };
    for n in 5..=top {
        let k = integer_kernel_basis(&build_matrix(n)?);
        let want = expected_kernel_rank(n);
        l.check(k.rank() == want, format!("kernel rank n={n}: {} (want {want})", k.rank()));
    }
    if top == 8 {
        l.skip("kernel rank n=9");
    }
    Ok(())
}

fn c3(l: &mut Line) -> Result<()> {
    let b = Budget::unlimited();
    let r5 = SigmaRing::new(5)?;
    let mut t5 = toric_ideal(5, &b)?;
    let mut cubic = Ideal::new(6, vec![r5.parse(refdata::CUBIC_5)?])?;
    l.check(t5.same_ideal(&mut cubic, &b)?, "toric_ideal(5) = <cubic>");
    let r6 = SigmaRing::new(6)?;
    let mut t6 = toric_ideal(6, &b)?;
    let m = minimal_generators_by_degree(&t6, None, &b)?;
    let want: BTreeMap<u32, usize> = [(2, 24), (3, 164), (4, 6)].into_iter().collect();
    l.check(m == want, format!("toric_ideal(6) minimal generators {m:?}"));
    let q = r6.parse(refdata::QUARTIC_6)?;
    l.check(t6.contains(&q, &b)?, "quartic in I(T_6)");
    let mut sub = Ideal::new(24, refdata::z_polys(&r6, &refdata::KERNEL_BASIS_6)?)?;
    l.check(!sub.contains(&q, &b)?, "quartic not in the 15-binomial subideal");
    Ok(())
}

fn c4(l: &mut Line) -> Result<()> {
    let mut cases = vec![(6, false, 14), (7, true, 106), (8, true, 700)];
    if opt_in() {
        cases.push((9, true, 5013));
    }
    for (n, verdict, span) in cases {
        let r = check_conjecture(n)?;
        let mut what = format!(
            "n={n}: verdict {} span {} of kernel rank {} index {} (want {verdict}/{span})",
            r.verdict, r.span_rank, r.kernel_rank, r.saturation_index
        );
        if let Some(w) = &r.witness {
            what.push_str(&format!("; kernel element outside the span: {}", w.tableau()));
        }
        l.check(r.verdict == verdict && r.span_rank == span, what);
    }
    if !opt_in() {
        l.skip("n=9");
    }
    Ok(())
}

fn c5(l: &mut Line) -> Result<()> {
    for n in [5, 6] {
        let ring = SigmaRing::new(n)?;
        let p = open_pt_parts(n, &ChoicePolicy::default())?;
        let mut ok = !p.lifts.is_empty();
        for lift in &p.lifts {
            let (s, num, den) = certify(&lift.f, &lift.source, &ring)?;
            ok &= s.abs() == 1 && s == lift.sign && num == lift.cofactor_num && den == lift.cofactor_den;
        }
        l.check(ok, format!("n={n}: {} lifts certified", p.lifts.len()));
    }
    let ring = SigmaRing::new(6)?;
    let got: BTreeMap<[u8; 4], Polynomial> =
        open_pt_parts(6, &ChoicePolicy::default())?.lifts.into_iter().map(|x| (x.source.idx, x.f)).collect();
    let want: BTreeMap<[u8; 4], Polynomial> =
        refdata::LIFTS_6.iter().map(|(i, s)| Ok((*i, ring.parse(s)?))).collect::<Result<_>>()?;
    l.check(got == want, "n=6 lifts equal the nine reference pairs term for term");
    Ok(())
}

fn c6(l: &mut Line) -> Result<()> {
    let b = Budget::unlimited();
    let t = Instant::now();
    let ring = SigmaRing::new(5)?;
    let open = Ideal::new(6, refdata::z_polys(&ring, &refdata::OPEN_5)?)?;
    let mut sat = saturate_by_product(&open, &(0..6).collect::<Vec<_>>(), &b)?;
    let mut shown = Ideal::new(6, refdata::z_polys(&ring, &refdata::CLOSED_5)?)?;
    let distinct: BTreeSet<&str> = refdata::CLOSED_5.iter().copied().collect();
    l.check(
        sat.same_ideal(&mut shown, &b)?,
        format!("saturation equals the reference quadric ideal ({} distinct reference quadrics)", distinct.len()),
    );
    let mut ours = closed_pt_ideal(5, &b)?;
    l.check(ours.same_ideal(&mut sat, &b)?, "closed_pt_ideal(5) equals the saturation of <f1,f2,f3>");
    let mg = minimal_generators_by_degree(&sat, None, &b)?;
    l.check(mg == [(2u32, 5usize)].into_iter().collect(), format!("minimal generators {mg:?}"));
    let d = projective_degree_and_dim(&mut sat, &b)?;
    l.check(d.projective_dim == 2 && d.degree == BigInt::from(5), format!("dim {} degree {}", d.projective_dim, d.degree));
    l.check(pfaffian_check(&refdata::z_matrix(&ring, &refdata::M_PT)?, &mut sat, &b)?, "Pfaffians of M_PT");
    let mut lc = lc_ideal(5, &b)?;
    l.check(pfaffian_check(&refdata::t_matrix(&refdata::M_LC)?, &mut lc, &b)?, "Pfaffians of M_LC");
    let secs = t.elapsed().as_secs_f64();
    l.check(secs < 10.0, format!("runtime {secs:.2}s < 10s"));
    Ok(())
}

fn c7(l: &mut Line) -> Result<()> {
    let b = Budget::unlimited();
    let mut i = closed_pt_ideal(6, &b)?;
    let mg = minimal_generators_by_degree(&i, None, &b)?;
    l.check(mg == [(2u32, 175usize)].into_iter().collect(), format!("minimal generators {mg:?}"));
    let d = projective_degree_and_dim(&mut i, &b)?;
    l.check(d.degree == BigInt::from(61), format!("degree {}", d.degree));
    Ok(())
}

fn c8(l: &mut Line) -> Result<()> {
    let l5 = build_l(5)?;
    let mut ok = l5.len() == 6;
    for (idx, perms) in refdata::L5 {
        let want: BTreeSet<Permutation> = perms.iter().map(|s| s.parse()).collect::<Result<_>>()?;
        ok &= l5[&KapranovIndex::new(idx.to_vec())?].perms == want;
    }
    l.check(ok, "build_L(5) reproduces the six support sets");
    let l6 = build_l(6)?;
    let want: BTreeSet<Permutation> = refdata::L6_T212.iter().map(|s| s.parse()).collect::<Result<_>>()?;
    l.check(l6[&KapranovIndex::new(vec![2, 1, 2])?].perms == want, "build_L(6) at 212 reproduces the eight terms");
    let mut ns = vec![5, 6];
    if opt_in() {
        ns.push(7);
    }
    for &n in &ns {
        let r = verify_linear_iso(n)?;
        l.check(r.holds(), format!("linear isomorphism n={n}: {}/{} pairs", r.pairs_passed(), r.pairs_checked()));
    }
    if !opt_in() {
        l.skip("linear isomorphism n=7");
    }
    for n in 5..=7 {
        let mut ok = true;
        for s in build_l(n)?.values() {
            let r = verify_lower_order_ideal(&s.perms, Some(&s.inversions))?;
            ok &= r.downward_closed && r.inversion_characterized;
        }
        l.check(ok, format!("n={n}: every support set is a lower order ideal"));
    }
    Ok(())
}

fn c9(l: &mut Line) -> Result<()> {
    let mut rng = StdRng::seed_from_u64(9);
    for n in 5..=8 {
        let sig = enumerate_sigma(n - 1)?;
        let mut cases = 0;
        let mut ok = true;
        for _ in 0..20 {
            let s = sig.choose(&mut rng).expect("nonempty");
            for i in 3..n {
                ok &= telescoping_defect(s, i, n)?.is_zero();
                cases += 1;
            }
        }
        l.check(ok, format!("n={n}: {cases} cases exactly zero"));
    }
    Ok(())
}

/// The three oracles on one pair of monomials.
fn oracles(ring: &SigmaRing, n: usize, plus: &[Permutation], minus: &[Permutation]) -> Result<[bool; 3]> {
    let a = adjacency_balanced_raw(plus, minus)?;
    let f = &Polynomial::monomial(ring.monomial(plus)?, BigInt::from(1).into()) - &Polynomial::monomial(ring.monomial(minus)?, BigInt::from(1).into());
    let t = vanishes_on_torus(&f, ring)?;
    let mut e: Vec<(usize, BigInt)> = Vec::new();
    for p in plus {
        e.push((ring.index(p)?, 1.into()));
    }
    for p in minus {
        e.push((ring.index(p)?, (-1).into()));
    }
    let u = SparseVec::from_entries(e);
    let k = apply_matrix(n, &u)?.iter().all(|x| *x == BigInt::from(0));
    Ok([a, t, k])
}

fn multisets(k: usize, d: usize) -> Vec<Vec<usize>> {
    if d == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for m in multisets(k, d - 1) {
        let lo = m.last().copied().unwrap_or(0);
        for v in lo..k {
            let mut x = m.clone();
            x.push(v);
            out.push(x);
        }
    }
    out
}

fn c10(l: &mut Line) -> Result<()> {
    let mut rng = StdRng::seed_from_u64(10);
    // exhaustive n = 5 over pairs of distinct monomials of equal degree
    let ring = SigmaRing::new(5)?;
    let sig = ring.sigmas().to_vec();
    let monos: Vec<Vec<Permutation>> =
        (1..=3).flat_map(|d| multisets(6, d)).map(|m| m.into_iter().map(|v| sig[v].clone()).collect()).collect();
    let (mut pairs, mut agree, mut balanced) = (0, true, 0);
    for a in 0..monos.len() {
        for b in a + 1..monos.len() {
            if monos[a].len() != monos[b].len() {
                continue;
            }
            let o = oracles(&ring, 5, &monos[a], &monos[b])?;
            agree &= o[0] == o[1] && o[1] == o[2];
            balanced += usize::from(o[0]);
            pairs += 1;
        }
    }
    l.check(agree && balanced == 1, format!("n=5: {pairs} binomials of degree <= 3, {balanced} balanced, oracles agree"));

    // sampled n = 6, 7: half kernel combinations, half random pairs
    for n in [6, 7] {
        let ring = SigmaRing::new(n)?;
        let kernel = integer_kernel_basis(&build_matrix(n)?);
        let sig = ring.sigmas().to_vec();
        let (mut agree, mut balanced) = (true, 0);
        for s in 0..10_000 {
            let (plus, minus) = if s % 2 == 0 {
                let mut u = SparseVec::new();
                for _ in 0..rng.gen_range(1..=2) {
                    let v = kernel.vectors.choose(&mut rng).expect("nonempty kernel");
                    u.add_scaled(&BigInt::from(if rng.gen_bool(0.5) { 1 } else { -1 }), v);
                }
                if u.is_zero() {
                    continue;
                }
                let b = binomial_from_vector(&u, n)?;
                (b.plus().to_vec(), b.minus().to_vec())
            } else {
                let d = rng.gen_range(1..=3);
                let pick = |r: &mut StdRng| (0..d).map(|_| sig.choose(r).expect("nonempty").clone()).collect::<Vec<_>>();
                (pick(&mut rng), pick(&mut rng))
            };
            let o = oracles(&ring, n, &plus, &minus)?;
            agree &= o[0] == o[1] && o[1] == o[2];
            balanced += usize::from(o[0]);
        }
        l.check(agree, format!("n={n}: 10^4 samples, {balanced} balanced, oracles agree"));
    }

    // lift fuzzing
    let (mut done, mut tried, mut ok) = (0, 0, true);
    let sources: Vec<(usize, Vec<Binomial>, Vec<Polynomial>)> = [5usize, 6]
        .iter()
        .map(|&n| {
            let p = open_pt_parts(n, &ChoicePolicy::default())?;
            Ok((n, kernel_binomials(n)?, p.polynomials()?))
        })
        .collect::<Result<_>>()?;
    while done < 1000 {
        tried += 1;
        let (n, bins, rels) = sources.choose(&mut rng).expect("sources");
        let n = *n;
        let k = rng.gen_range(1..=2);
        let mut delta: Vec<u8> = (n as u8 + 1..=(n + k) as u8).collect();
        delta.shuffle(&mut rng);
        let i = rng.gen_range(2..=n);
        let r = if rng.gen_bool(0.5) {
            let b = bins.choose(&mut rng).expect("binomials");
            lift_binomial(b, i, &delta).and_then(|x| {
                let ring = SigmaRing::new(n + k)?;
                vanishes_on_torus(&x.to_polynomial(&ring)?, &ring)
            })
        } else {
            let ring = SigmaRing::new(n)?;
            let f = rels.choose(&mut rng).expect("relations");
            lift_relation(f, &ring, i, &delta).and_then(|g| vanishes_on_pt(&g, &SigmaRing::new(n + k)?))
        };
        match r {
            Ok(v) => {
                ok &= v;
                done += 1;
            }
            Err(Error::PreconditionFailed(_)) => {}
            Err(e) => return Err(e),
        }
    }
    l.check(ok, format!("{done} lifts pass their vanishing oracle ({tried} draws, the rest violate the position hypothesis)"));
    Ok(())
}

fn main() -> ExitCode {
    type Criterion = fn(&mut Line) -> Result<()>;
    let all: [(&str, Criterion); 10] = [
        ("matrix ground truth", c1),
        ("kernel ground truth", c2),
        ("toric ideals", c3),
        ("quadratic families generate the kernel lattice", c4),
        ("Pluecker lifts", c5),
        ("full ideal n=5", c6),
        ("full ideal n=6", c7),
        ("moduli map", c8),
        ("telescoping identity", c9),
        ("oracle agreement and lift fuzzing", c10),
    ];
    let mut failed = 0;
    for (k, (name, f)) in all.iter().enumerate() {
        let t = Instant::now();
        let mut line = Line::new();
        let r = f(&mut line);
        line.result(r);
        let tag = match line.status {
            Status::Pass => "PASS",
            Status::Fail => {
                failed += 1;
                "FAIL"
            }
            Status::Skip => "SKIP",
        };
        println!("criterion {:2}: {tag} {name} ({:.2}s)", k + 1, t.elapsed().as_secs_f64());
        for d in &line.detail {
            println!("    {d}");
        }
    }
    println!("{} of 10 criteria failed", failed);
    if failed > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
