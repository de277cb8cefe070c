//! Verification suites behind `ptvar verify`.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use parke_taylor_core::linalg::{integer_kernel_basis, rank, span_report, ExactMatrix, SparseVec};
use parke_taylor_core::moduli::{
    asymmetric_table, build_l, degree_formula, lc_ideal, verify_linear_iso, verify_support, KapranovIndex,
};
use parke_taylor_core::perm::{enumerate_sigma, factorial, Permutation};
use parke_taylor_core::plucker::{
    audit_lifts, closed_pt_ideal, lift_plucker, lifts_equivalent_mod_torus, open_pt_parts, ChoicePolicy, PluckerRelation,
};
use parke_taylor_core::poly::{minimal_generators_by_degree, pfaffian_check, pfaffians_4x4, MonomialOrder, projective_degree_and_dim, Ideal};
use parke_taylor_core::pt::{build_matrix, telescoping_defect, vanishes_on_pt, vanishes_on_torus, SigmaRing};
use parke_taylor_core::toric::{adjacency_balanced, check_conjecture, expected_kernel_rank, kernel_binomials, toric_ideal};
use parke_taylor_core::{BigInt, Budget, Error, Result};

use crate::reference as refdata;
use crate::report::{Check, Observed, RunReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Toric,
    Lifts,
    Moduli,
    Conjecture,
    Full,
}

#[derive(Clone, Debug)]
#[derive(Default)]
pub struct SuiteOptions {
    pub budget: Budget,
    pub opt_in_long: bool,
}


fn req<'a>(name: &'a str, anchor: &'a str) -> Check<'a> {
    Check { name, anchor, required: true }
}

fn info<'a>(name: &'a str, anchor: &'a str) -> Check<'a> {
    Check { name, anchor, required: false }
}

fn degree_map(m: &BTreeMap<u32, usize>) -> String {
    let parts: Vec<String> = m.iter().map(|(d, c)| format!("{d}:{c}")).collect();
    format!("{{{}}}", parts.join(", "))
}

fn binom2(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

/// Valid `n` per suite; long tiers need `opt_in_long`.
pub fn check_arguments(suite: Suite, n: usize, opts: &SuiteOptions) -> Result<()> {
    let range = match suite {
        Suite::Toric => 4..=9,
        Suite::Lifts | Suite::Moduli => 5..=7,
        Suite::Conjecture => 6..=9,
        Suite::Full => 5..=7,
    };
    if !range.contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "suite {suite:?} supports n in {}..={}, got {n}",
            range.start(),
            range.end()
        )));
    }
    let long = match suite {
        Suite::Conjecture => n >= 9,
        Suite::Toric => n >= 9,
        _ => false,
    };
    if long && !opts.opt_in_long {
        return Err(Error::InvalidArgument(format!("suite {suite:?} at n = {n} is a long-running tier; pass --opt-in-long")));
    }
    Ok(())
}

pub fn run(suite: Suite, n: usize, opts: &SuiteOptions) -> Result<RunReport> {
    check_arguments(suite, n, opts)?;
    let mut rep = RunReport::new("verify");
    rep.param("suite", format!("{suite:?}").to_lowercase()).param("n", n).param("opt_in_long", opts.opt_in_long);
    let t = Instant::now();
    match suite {
        Suite::Toric => toric(n, opts, &mut rep),
        Suite::Lifts => lifts(n, opts, &mut rep),
        Suite::Moduli => moduli(n, opts, &mut rep),
        Suite::Conjecture => conjecture(n, &mut rep),
        Suite::Full => {
            toric(n, opts, &mut rep);
            lifts(n, opts, &mut rep);
            moduli(n, opts, &mut rep);
            if n >= 6 {
                conjecture(n, &mut rep);
            }
        }
    }
    rep.timings.insert("total".into(), t.elapsed().as_secs_f64());
    Ok(rep)
}

pub fn toric(n: usize, opts: &SuiteOptions, rep: &mut RunReport) {
    let b = &opts.budget;
    rep.push(req("matrix rank", "toric.matrix-rank").run(|| {
        let r = rank(&build_matrix(n)?);
        Ok(Observed::value(r == binom2(n - 1) - 1, r))
    }));
    if n == 5 {
        rep.push(req("A_5 matches the reference matrix", "toric.a5-display").run(|| {
            let shown = ExactMatrix::from_dense(&refdata::A5.iter().map(|r| r.to_vec()).collect::<Vec<_>>())?;
            Ok(Observed::flag(build_matrix(5)? == shown))
        }));
        rep.push(req("kernel of A_5 is spanned by the cubic vector", "toric.a5-kernel").run(|| {
            let k = integer_kernel_basis(&build_matrix(5)?);
            let u = SparseVec::from_i64(&refdata::A5_KERNEL);
            let mut neg = u.clone();
            neg.negate();
            Ok(Observed::flag(k.vectors.len() == 1 && (k.vectors[0] == u || k.vectors[0] == neg)))
        }));
    }
    if n < 5 {
        return;
    }
    rep.push(req("kernel rank", "toric.kernel-rank").run(|| {
        let k = integer_kernel_basis(&build_matrix(n)?);
        Ok(Observed::value(k.rank() == expected_kernel_rank(n), k.rank()))
    }));
    if n <= 7 {
        rep.push(req("kernel binomials are balanced and vanish on the torus", "toric.kernel-binomials").run(|| {
            let ring = SigmaRing::new(n)?;
            let mut ok = true;
            for bnm in kernel_binomials(n)? {
                ok &= adjacency_balanced(&bnm)? && vanishes_on_torus(&bnm.to_polynomial(&ring)?, &ring)?;
            }
            Ok(Observed::flag(ok))
        }));
    }
    match n {
        5 => rep.push(req("toric ideal is principal, generated by the cubic", "toric.n5-principal").run(|| {
            let ring = SigmaRing::new(5)?;
            let i = toric_ideal(5, b)?;
            let cubic = ring.parse(refdata::CUBIC_5)?;
            let mut j = Ideal::new(6, vec![cubic])?;
            let mut i2 = i.clone();
            Ok(Observed::flag(i2.same_ideal(&mut j, b)?))
        })),
        6 => {
            rep.push(req("toric ideal minimal generators", "toric.n6-mingens").run(|| {
                let i = toric_ideal(6, b)?;
                let m = minimal_generators_by_degree(&i, None, b)?;
                let want: BTreeMap<u32, usize> = [(2, 24), (3, 164), (4, 6)].into_iter().collect();
                Ok(Observed::value(m == want, degree_map(&m)))
            }));
            rep.push(req("quartic lies in the toric ideal but not in the reference basis ideal", "toric.n6-quartic").run(|| {
                let ring = SigmaRing::new(6)?;
                let q = ring.parse(refdata::QUARTIC_6)?;
                let mut full = toric_ideal(6, b)?;
                let mut basis = Ideal::new(24, refdata::z_polys(&ring, &refdata::KERNEL_BASIS_6)?)?;
                let (a, c) = (full.contains(&q, b)?, basis.contains(&q, b)?);
                Ok(Observed::value(a && !c, format!("in toric ideal: {a}, in basis ideal: {c}")))
            }));
            rep.push(req("reference basis spans the kernel lattice", "toric.n6-reference-basis").run(|| {
                let ring = SigmaRing::new(6)?;
                let k = integer_kernel_basis(&build_matrix(6)?);
                let vecs: Vec<SparseVec> = refdata::KERNEL_BASIS_6
                    .iter()
                    .map(|s| parke_taylor_core::toric::Binomial::from_polynomial(&ring.parse(s)?, &ring).map(|x| x.to_vector()))
                    .collect::<Result<_>>()?;
                let r = span_report(24, &vecs, Some(&k))?;
                Ok(Observed::value(r.equals_reference == Some(true), format!("rank {}, index {}", r.rank, r.saturation_index)))
            }));
        }
        _ if opts.opt_in_long => rep.push(req("toric ideal minimal generators", "toric.large-mingens").run(|| {
            let i = toric_ideal(n, b)?;
            let m = minimal_generators_by_degree(&i, None, b)?;
            Ok(Observed::value(true, degree_map(&m)))
        })),
        _ => rep.push(info("toric ideal minimal generators", "toric.large-mingens").skipped("long-running tier; pass --opt-in-long")),
    }
}

pub fn lifts(n: usize, opts: &SuiteOptions, rep: &mut RunReport) {
    let b = &opts.budget;
    rep.push(req("every lift is certified", "lifts.certified").run(|| {
        let p = open_pt_parts(n, &ChoicePolicy::default())?;
        let want = count_relations(n);
        Ok(Observed::value(p.lifts.len() == want, p.lifts.len()))
    }));
    rep.push(req("open generators vanish on the Parke-Taylor variety", "lifts.open-vanish").run(|| {
        let ring = SigmaRing::new(n)?;
        let p = open_pt_parts(n, &ChoicePolicy::default())?;
        let mut ok = true;
        for f in p.polynomials()? {
            ok &= vanishes_on_pt(&f, &ring)?;
        }
        Ok(Observed::flag(ok))
    }));
    if n == 5 {
        rep.push(req("open generators match the reference list", "lifts.n5-open").run(|| {
            let ring = SigmaRing::new(5)?;
            let p = open_pt_parts(5, &ChoicePolicy::default())?;
            let got: BTreeSet<_> = p.polynomials()?.into_iter().map(|f| f.primitive(MonomialOrder::DegRevLex)).collect();
            let want: BTreeSet<_> = refdata::z_polys(&ring, &refdata::OPEN_5)?.into_iter().map(|f| f.primitive(MonomialOrder::DegRevLex)).collect();
            Ok(Observed::flag(got == want))
        }));
        closed5(opts, rep);
    }
    if n == 6 {
        rep.push(req("lifts reproduce the nine reference lifts", "lifts.n6-reference").run(|| {
            let ring = SigmaRing::new(6)?;
            let mut ok = true;
            for (idx, s) in refdata::LIFTS_6 {
                let rel = PluckerRelation::new(6, idx)?;
                let (a, be) = ChoicePolicy::default().choose(&rel);
                ok &= lift_plucker(&rel, &a, &be)?.f == ring.parse(s)?;
            }
            Ok(Observed::flag(ok))
        }));
        rep.push(req("alternative lifts agree modulo the toric ideal", "lifts.choice-independence").run(|| {
            let entries = audit_lifts(6, 6)?;
            let mut ok = entries.iter().all(|e| e.certified);
            for e in &entries {
                let base = {
                    let (a, be) = ChoicePolicy::default().choose(&e.source);
                    lift_plucker(&e.source, &a, &be)?
                };
                let other = lift_plucker(&e.source, &e.alpha, &e.beta)?;
                ok &= lifts_equivalent_mod_torus(&base, &other)?;
            }
            Ok(Observed::value(ok, format!("{} choices audited", entries.len())))
        }));
        rep.push(req("closed ideal: minimal generators and degree", "lifts.n6-closed").run(|| {
            let mut i = closed_pt_ideal(6, b)?;
            let m = minimal_generators_by_degree(&i, None, b)?;
            let d = projective_degree_and_dim(&mut i, b)?;
            let want: BTreeMap<u32, usize> = [(2, 175)].into_iter().collect();
            Ok(Observed::value(m == want && d.degree == BigInt::from(61), format!("{} degree {}", degree_map(&m), d.degree)))
        }));
    }
}

fn count_relations(n: usize) -> usize {
    // C(n,4) minus the C(n−2,2) quadruples containing both 1 and 2
    let c4 = n * (n - 1) * (n - 2) * (n - 3) / 24;
    c4 - binom2(n - 2)
}

fn closed5(opts: &SuiteOptions, rep: &mut RunReport) {
    let b = &opts.budget;
    rep.push(req("closed ideal equals the reference quadrics", "lifts.n5-closed").run(|| {
        let ring = SigmaRing::new(5)?;
        let mut i = closed_pt_ideal(5, b)?;
        let mut shown = Ideal::new(6, refdata::z_polys(&ring, &refdata::CLOSED_5)?)?;
        let m = minimal_generators_by_degree(&i, None, b)?;
        Ok(Observed::value(i.same_ideal(&mut shown, b)?, degree_map(&m)))
    }));
    rep.push(info("reference quadrics lie in the closed ideal; the missing generator", "lifts.n5-closed-gap").run(|| {
        let ring = SigmaRing::new(5)?;
        let mut i = closed_pt_ideal(5, b)?;
        let shown = refdata::z_polys(&ring, &refdata::CLOSED_5)?;
        let mut inside = true;
        for f in &shown {
            inside &= i.contains(f, b)?;
        }
        let mut span = Ideal::new(6, shown)?;
        let mut missing = Vec::new();
        for f in pfaffians_4x4(&refdata::z_matrix(&ring, &refdata::M_PT)?)? {
            if !span.contains(&f, b)? {
                missing.push(crate::formats::polynomial_line(&f, &ring));
                span = Ideal::new(6, span.generators().iter().cloned().chain([f]).collect())?;
            }
        }
        let distinct: BTreeSet<_> = refdata::CLOSED_5.iter().collect();
        Ok(Observed::value(inside, format!("{} distinct reference quadrics", distinct.len())).with_detail(format!("completed by {}", missing.join("; "))))
    }));
    rep.push(req("closed ideal dimension and degree", "lifts.n5-dim-degree").run(|| {
        let mut i = closed_pt_ideal(5, b)?;
        let d = projective_degree_and_dim(&mut i, b)?;
        Ok(Observed::value(d.projective_dim == 2 && d.degree == BigInt::from(5), format!("dim {} degree {}", d.projective_dim, d.degree)))
    }));
    rep.push(req("Pfaffians of the z-matrix generate the closed ideal", "lifts.n5-pfaffian").run(|| {
        let ring = SigmaRing::new(5)?;
        let mut i = closed_pt_ideal(5, b)?;
        Ok(Observed::flag(pfaffian_check(&refdata::z_matrix(&ring, &refdata::M_PT)?, &mut i, b)?))
    }));
}

/// Deterministic spread of at most `k` elements.
fn spread<T: Clone>(v: &[T], k: usize) -> Vec<T> {
    if v.len() <= k {
        return v.to_vec();
    }
    (0..k).map(|j| v[j * v.len() / k].clone()).collect()
}

pub fn moduli(n: usize, opts: &SuiteOptions, rep: &mut RunReport) {
    let b = &opts.budget;
    rep.push(req("supports of the linear map", "moduli.supports").run(|| {
        let l = build_l(n)?;
        let ones = KapranovIndex::new(vec![1; n - 3])?;
        let ok = l.len() == factorial(n - 2) && l[&ones].perms.len() == factorial(n - 2);
        Ok(Observed::value(ok, format!("{} coordinates", l.len())))
    }));
    if n == 5 {
        rep.push(req("supports match the reference n = 5 map", "moduli.n5-supports").run(|| {
            let l = build_l(5)?;
            let mut ok = true;
            for (idx, perms) in refdata::L5 {
                let want: BTreeSet<Permutation> = perms.iter().map(|s| s.parse()).collect::<Result<_>>()?;
                ok &= l[&KapranovIndex::new(idx.to_vec())?].perms == want;
            }
            Ok(Observed::flag(ok))
        }));
    }
    if n == 6 {
        rep.push(req("support of t212 matches the eight reference terms", "moduli.n6-t212").run(|| {
            let l = build_l(6)?;
            let want: BTreeSet<Permutation> = refdata::L6_T212.iter().map(|s| s.parse()).collect::<Result<_>>()?;
            Ok(Observed::flag(l[&KapranovIndex::new(vec![2, 1, 2])?].perms == want))
        }));
    }
    rep.push(req("every support is a lower order ideal with inversion description", "moduli.lower-ideals").run(|| {
        let mut ok = true;
        for s in build_l(n)?.values() {
            let r = verify_support(s)?;
            ok &= r.downward_closed && r.inversion_characterized;
        }
        Ok(Observed::flag(ok))
    }));
    if n <= 6 || opts.opt_in_long {
        rep.push(req("linear isomorphism holds for all pairs", "moduli.linear-iso").run(|| {
            let r = verify_linear_iso(n)?;
            Ok(Observed::value(r.holds(), format!("{}/{} pairs", r.pairs_passed(), r.pairs_checked())))
        }));
    } else {
        rep.push(info("linear isomorphism holds for all pairs", "moduli.linear-iso").skipped("long-running tier; pass --opt-in-long"));
    }
    rep.push(req("telescoping identity", "moduli.telescoping").run(|| {
        let sig = enumerate_sigma(n - 1)?;
        let mut count = 0;
        for s in spread(&sig, 20) {
            for i in 3..n {
                if !telescoping_defect(&s, i, n)?.is_zero() {
                    return Ok(Observed::value(false, format!("fails at {s}, i = {i}")));
                }
                count += 1;
            }
        }
        Ok(Observed::value(true, format!("{count} cases")))
    }));
    if let Ok(t) = asymmetric_table(n) {
        rep.push(req("degree formula", "moduli.degree-formula").run(|| {
            let d = degree_formula(n, &t)?;
            let want = BigInt::from(if n == 5 { 5 } else { 61 });
            Ok(Observed::value(d == want, d))
        }));
    }
    if n == 5 {
        rep.push(req("log canonical ideal equals the reference quadrics", "moduli.n5-lc").run(|| {
            let mut lc = lc_ideal(5, b)?;
            let mut shown = Ideal::new(6, refdata::LC_5.iter().map(|s| refdata::t_poly(s)).collect::<Result<_>>()?)?;
            Ok(Observed::flag(lc.same_ideal(&mut shown, b)?))
        }));
        rep.push(req("Pfaffians of the t-matrix generate the log canonical ideal", "moduli.n5-lc-pfaffian").run(|| {
            let mut lc = lc_ideal(5, b)?;
            Ok(Observed::flag(pfaffian_check(&refdata::t_matrix(&refdata::M_LC)?, &mut lc, b)?))
        }));
        rep.push(req("the linear map sends the log canonical ideal onto the closed ideal", "moduli.n5-image").run(|| {
            let ring = SigmaRing::new(5)?;
            let images: Vec<_> = build_l(5)?.values().map(|s| s.polynomial(&ring)).collect::<Result<_>>()?;
            let lc = lc_ideal(5, b)?;
            let mapped = lc.generators().iter().map(|f| f.substitute(&images)).collect::<Result<Vec<_>>>()?;
            let mut image = Ideal::new(6, mapped)?;
            let mut pt = closed_pt_ideal(5, b)?;
            let d = projective_degree_and_dim(&mut pt, b)?;
            Ok(Observed::flag(image.same_ideal(&mut pt, b)? && d.degree == BigInt::from(5)))
        }));
    }
}

pub fn conjecture(n: usize, rep: &mut RunReport) {
    let mut report = None;
    let v = req("quadratic families span the kernel lattice", "conjecture.verdict").run(|| {
        let r = check_conjecture(n)?;
        let (want_verdict, want_span) = match n {
            6 => (false, 14),
            _ => (true, expected_kernel_rank(n)),
        };
        let ok = r.verdict == want_verdict && r.span_rank == want_span;
        let value = format!("verdict {} span {} of {} index {}", r.verdict, r.span_rank, r.kernel_rank, r.saturation_index);
        let detail = match &r.witness {
            Some(w) => format!(
                "family size {}; {} kernel basis vectors outside the span; witness {}",
                r.family_size,
                r.kernel_vectors_outside_span,
                w.tableau()
            ),
            None => format!("family size {}; selected basis of {} binomials", r.family_size, r.selected_basis.len()),
        };
        report = Some(r);
        Ok(Observed::value(ok, value).with_detail(detail))
    });
    rep.push(v);
    if let Some(r) = report {
        rep.push(info("rank of the family span", "conjecture.rank").run(|| {
            Ok(Observed::value(r.span_rank == r.kernel_rank, format!("{} of {}", r.span_rank, r.kernel_rank)))
        }));
    }
}
