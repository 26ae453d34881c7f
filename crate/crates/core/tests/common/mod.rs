#![allow(dead_code, clippy::needless_range_loop)]

use frobknot::complex::{build_complex, HomologyTable};
use frobknot::diagram::{kauffman_bracket, LinkDiagram};
use frobknot::frobenius::{a5, A5Params};
use frobknot::poly::LaurentPoly;

/// `(i, q, free rank, torsion)` per group, zero groups dropped.
pub type Signature = Vec<(i64, Option<i64>, usize, Vec<u64>)>;

pub fn signature(t: &HomologyTable) -> Signature {
    t.groups
        .iter()
        .filter(|g| g.free_rank > 0 || !g.torsion.is_empty())
        .map(|g| (g.i, g.q, g.free_rank, g.torsion.clone()))
        .collect()
}

pub fn integer_homology(d: &LinkDiagram, h: i64, t: i64, normalize: bool) -> HomologyTable {
    build_complex(d, &a5(A5Params { h, t }), normalize)
        .unwrap()
        .homology()
        .unwrap()
}

/// Graded Euler characteristic of the normalized complex for `x² = 0`.
pub fn graded_euler(d: &LinkDiagram) -> LaurentPoly {
    build_complex(d, &a5(A5Params { h: 0, t: 0 }), true)
        .unwrap()
        .graded_euler_characteristic()
        .unwrap()
}

/// `(−A³)^{−w} δ ⟨D⟩` with `δ = −A² − A⁻²`, then `A⁻² ↦ −q`.
pub fn substituted_jones(d: &LinkDiagram) -> LaurentPoly {
    let w = d.writhe().unwrap();
    let sign = if w.rem_euclid(2) == 1 { -1 } else { 1 };
    let mut delta = LaurentPoly::monomial('A', -1, 2);
    delta.add_term(-1, -2);
    let v = &(&LaurentPoly::monomial('A', sign, -3 * w) * &delta) * &kauffman_bracket(d);
    v.substitute(-2, -1, 'q', 1).expect("exponents are even")
}

/// The monomial `c q^k` with `a = c q^k · b`, if one exists.
pub fn monomial_ratio(a: &LaurentPoly, b: &LaurentPoly) -> Option<(i64, i64)> {
    let (ea, ca) = a.terms().last()?;
    let (eb, cb) = b.terms().last()?;
    if ca % cb != 0 {
        return None;
    }
    let (c, k) = (ca / cb, ea - eb);
    (&LaurentPoly::monomial(a.var(), c, k) * b == *a).then_some((c, k))
}

/// Rank of an integer matrix by fraction-free elimination, written
/// independently of the library's linear algebra.
pub fn oracle_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let (a, b) = (m[rank][c], m[r][c]);
                for k in 0..cols {
                    m[r][k] = a * m[r][k] - b * m[rank][k];
                }
            }
        }
        rank += 1;
    }
    rank
}
