//! Text formats: sparse matrices, canonical polynomials, lift lines and
//! Macaulay2 scripts. Every writer is deterministic.

use std::fmt::Write;

use parke_taylor_core::BigInt;
use parke_taylor_core::linalg::{ExactMatrix, SparseVec};
use parke_taylor_core::perm::pairs;
use parke_taylor_core::plucker::{LiftedRelation, OpenPtGenerators};
use parke_taylor_core::poly::{MonomialOrder, Polynomial};
use parke_taylor_core::pt::SigmaRing;
use parke_taylor_core::{Error, Result};

/// Header line, then `rows cols nnz`, then one `row col value` line per
/// nonzero (1-based, row-major).
pub fn matrix_text(m: &ExactMatrix, n: usize) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# A_{n}: rows are pairs i<j, columns are permutations 12..., both lexicographic");
    let _ = writeln!(s, "{} {} {}", m.rows(), m.cols(), m.nnz());
    for (r, c, v) in m.entries() {
        let _ = writeln!(s, "{} {} {}", r + 1, c + 1, v);
    }
    s
}

pub fn parse_matrix_text(s: &str) -> Result<ExactMatrix> {
    let bad = |l: &str| Error::InvalidArgument(format!("malformed matrix line {l:?}"));
    let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let head = lines.next().ok_or_else(|| bad(""))?;
    let dims: Vec<usize> = head.split_whitespace().map(|x| x.parse().map_err(|_| bad(head))).collect::<Result<_>>()?;
    let [rows, cols, nnz] = dims[..] else { return Err(bad(head)) };
    let mut data: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); rows];
    let mut count = 0;
    for l in lines {
        let f: Vec<&str> = l.split_whitespace().collect();
        let [r, c, v] = f[..] else { return Err(bad(l)) };
        let (r, c): (usize, usize) = (r.parse().map_err(|_| bad(l))?, c.parse().map_err(|_| bad(l))?);
        if r == 0 || c == 0 || r > rows || c > cols {
            return Err(bad(l));
        }
        data[r - 1].push((c - 1, v.parse().map_err(|_| bad(l))?));
        count += 1;
    }
    if count != nnz {
        return Err(Error::InvalidArgument(format!("header promises {nnz} entries, found {count}")));
    }
    Ok(ExactMatrix::from_rows(cols, data.into_iter().map(SparseVec::from_entries).collect()))
}

pub fn polynomial_line(f: &Polynomial, ring: &SigmaRing) -> String {
    f.to_canonical_string(&|k| ring.name(k), MonomialOrder::DegRevLex)
}

/// One certified lift per line.
pub fn lifts_text(lifts: &[LiftedRelation], ring: &SigmaRing) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# F  |  source  |  cofactor  |  sign");
    for l in lifts {
        let _ = writeln!(s, "{}", l.line(ring));
    }
    s
}

/// Open generators, binomials first, one canonical polynomial per line.
pub fn ideal_text(g: &OpenPtGenerators) -> Result<String> {
    let ring = SigmaRing::new(g.n)?;
    let mut s = String::new();
    let _ = writeln!(s, "# open generators for n = {}: {} binomials, {} lifts", g.n, g.binomials.len(), g.lifts.len());
    for f in g.polynomials()? {
        let _ = writeln!(s, "{}", polynomial_line(&f, &ring));
    }
    Ok(s)
}

/// Macaulay2 variable name for `z_σ`.
fn m2_var(ring: &SigmaRing, k: usize) -> String {
    format!("z_{}", ring.sigma(k))
}

fn m2_poly(f: &Polynomial, ring: &SigmaRing) -> String {
    f.to_canonical_string(&|k| m2_var(ring, k), MonomialOrder::DegRevLex)
}

fn m2_ring(ring: &SigmaRing) -> String {
    let vars: Vec<String> = (0..ring.nvars()).map(|k| m2_var(ring, k)).collect();
    format!("R = QQ[{}];\n", vars.join(", "))
}

/// Script rebuilding the open generators and saturating by the product of
/// all variables.
pub fn ideal_script(g: &OpenPtGenerators) -> Result<String> {
    let ring = SigmaRing::new(g.n)?;
    let mut s = String::new();
    let _ = writeln!(s, "-- open Parke-Taylor generators for n = {}: kernel binomials, then Pluecker lifts", g.n);
    s.push_str(&m2_ring(&ring));
    let polys = g.polynomials()?;
    let body: Vec<String> = polys.iter().map(|f| format!("  {}", m2_poly(f, &ring))).collect();
    let _ = writeln!(s, "Iopen = ideal(\n{}\n);", body.join(",\n"));
    let _ = writeln!(s, "I = saturate(Iopen, product gens R);");
    let _ = writeln!(s, "print(tally degrees mingens I);");
    let _ = writeln!(s, "print(dim I, degree I);");
    Ok(s)
}

pub fn lifts_script(lifts: &[LiftedRelation], ring: &SigmaRing) -> String {
    let mut s = String::new();
    s.push_str(&m2_ring(ring));
    let body: Vec<String> = lifts.iter().map(|l| format!("  {}", m2_poly(&l.f, ring))).collect();
    let _ = writeln!(s, "F = {{\n{}\n}};", body.join(",\n"));
    s
}

pub fn matrix_script(m: &ExactMatrix, n: usize) -> String {
    let mut s = String::new();
    let labels: Vec<String> = pairs(n).iter().map(|p| format!("{}{}", p.lo, p.hi)).collect();
    let _ = writeln!(s, "-- rows: {}", labels.join(" "));
    let rows: Vec<String> = m
        .to_dense()
        .iter()
        .map(|r| format!("  {{{}}}", r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")))
        .collect();
    let _ = writeln!(s, "A = matrix {{\n{}\n}};", rows.join(",\n"));
    let _ = writeln!(s, "print(rank A);");
    s
}
