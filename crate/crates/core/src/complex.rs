//! The chain complex of a link diagram with coefficients in a (nearly)
//! Frobenius algebra, and its homology.

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::diagram::{build_cube, LinkDiagram, ResolutionCube, Saddle, State};
use crate::error::{Error, Result};
use crate::frobenius::{a5, A5Params, FrobeniusData, Generator};
use crate::linalg::{homology_summands, ExactMatrix};
use crate::poly::LaurentPoly;
use crate::ring::{Ring, RingSpec};

/// Per cube degree `k = |s|`: the states of that weight, in lexicographic
/// order, with the offset and size of each state's block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeLayout {
    pub states: Vec<(usize, usize, usize)>,
    pub rank: usize,
}

#[derive(Clone, Debug)]
pub struct ChainComplex<R: Ring> {
    ring: R,
    /// Homological degree of cube degree 0 (`−n₋` when normalized).
    shift: i64,
    normalized: bool,
    layouts: Vec<DegreeLayout>,
    /// `d[k]: C^k → C^{k+1}` in cube degrees.
    differentials: Vec<ExactMatrix<R>>,
    /// Quantum degree of every basis vector, per cube degree.
    quantum: Option<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub i: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<i64>,
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

/// Homology per degree. Ungraded tables list every degree; graded tables
/// list only nonzero groups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyTable {
    pub normalized: bool,
    pub ring: RingSpec,
    pub groups: Vec<HomologyGroup>,
}

impl HomologyTable {
    pub fn total_rank(&self) -> usize {
        self.groups.iter().map(|g| g.free_rank).sum()
    }

    pub fn has_torsion(&self) -> bool {
        self.groups.iter().any(|g| !g.torsion.is_empty())
    }

    /// Free rank in homological degree `i`, summed over quantum degrees.
    pub fn rank_at(&self, i: i64) -> usize {
        self.groups.iter().filter(|g| g.i == i).map(|g| g.free_rank).sum()
    }

    /// `(i, q, free rank)` for nonzero free parts.
    pub fn graded_ranks(&self) -> Vec<(i64, Option<i64>, usize)> {
        self.groups
            .iter()
            .filter(|g| g.free_rank > 0)
            .map(|g| (g.i, g.q, g.free_rank))
            .collect()
    }

    /// Human-readable listing, one group per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for g in &self.groups {
            let q = g.q.map(|q| format!(" q={q}")).unwrap_or_default();
            let mut parts = Vec::new();
            if g.free_rank > 0 || g.torsion.is_empty() {
                parts.push(match g.free_rank {
                    0 => "0".to_string(),
                    1 => self.ring.to_string(),
                    n => format!("{}^{n}", self.ring),
                });
            }
            parts.extend(g.torsion.iter().map(|t| format!("Z/{t}")));
            out.push_str(&format!("H^{}{q}: {}\n", g.i, parts.join(" + ")));
        }
        out
    }
}

fn is_a5_00<R: Ring>(f: &FrobeniusData<R>) -> bool {
    let k = a5(A5Params { h: 0, t: 0 }).change_ring(f.ring().clone());
    f.rank() == 2 && f.mult_matrix() == k.mult_matrix() && f.comult_matrix() == k.comult_matrix()
}

fn tensor_size(r: usize, circles: usize) -> usize {
    r.pow(circles as u32)
}

/// Matrix of one cube edge, without its sign.
fn edge_block<R: Ring>(
    f: &FrobeniusData<R>,
    cube: &ResolutionCube,
    e: &crate::diagram::CubeEdge,
) -> Result<ExactMatrix<R>> {
    let n_in = cube.circles(e.from).len();
    let n_out = cube.circles(e.to).len();
    // the generator convention keeps untouched factors in order
    if !e.untouched.windows(2).all(|w| w[0].1 < w[1].1) {
        return Err(Error::Diagram("untouched circles changed order along an edge".into()));
    }
    let g = match e.saddle {
        Saddle::Merge { i, j, k } => Generator::Merge { i, j, k },
        Saddle::Split { k, i, j } => Generator::Split { k, i, j },
    };
    f.generator_map(n_in, n_out, &g)
}

/// Builds `C(D; F)`. Blocks are the saddle maps times `(−1)^{sign_exponent}`.
///
/// With `normalize`, homological degrees shift by `−n₋`. Quantum degrees are
/// attached when `F` is `ℤ[x]/(x²)` with its standard comultiplication:
/// `deg 1 = 1`, `deg x = −1`, plus `|s|` (and `n₊ − 2n₋` when normalized).
pub fn build_complex<R: Ring>(d: &LinkDiagram, f: &FrobeniusData<R>, normalize: bool) -> Result<ChainComplex<R>> {
    let (n_plus, n_minus) = if normalize {
        (d.n_plus()? as i64, d.n_minus()? as i64)
    } else {
        (0, 0)
    };
    let cube = build_cube(d)?;
    build_from_cube(&cube, f, normalize, n_plus, n_minus)
}

/// [`build_complex`] on a prepared cube, with explicit crossing counts used
/// only when `normalize` is set.
pub fn build_from_cube<R: Ring>(
    cube: &ResolutionCube,
    f: &FrobeniusData<R>,
    normalize: bool,
    n_plus: i64,
    n_minus: i64,
) -> Result<ChainComplex<R>> {
    let n = cube.crossing_count();
    let r = f.rank();
    let ring = f.ring().clone();

    let mut layouts = vec![
        DegreeLayout {
            states: Vec::new(),
            rank: 0
        };
        n + 1
    ];
    let mut position = vec![(0usize, 0usize); cube.state_count()];
    for s in 0..cube.state_count() {
        let k = s.count_ones() as usize;
        let size = tensor_size(r, cube.circles(s).len());
        let lay = &mut layouts[k];
        position[s] = (k, lay.rank);
        lay.states.push((s, lay.rank, size));
        lay.rank += size;
    }

    let blocks = cube
        .edges()
        .par_iter()
        .map(|e| {
            let block = edge_block(f, cube, e)?;
            let s1 = State::from_index(n, e.from);
            let s2 = State::from_index(n, e.to);
            let exp = crate::diagram::sign_exponent(&s1, &s2)?;
            Ok(if exp % 2 == 1 {
                block.scale(&ring.neg(&ring.one()))
            } else {
                block
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut differentials: Vec<ExactMatrix<R>> = (0..n)
        .map(|k| ExactMatrix::zeros(ring.clone(), layouts[k + 1].rank, layouts[k].rank))
        .collect();
    for (e, block) in cube.edges().iter().zip(&blocks) {
        let (k, col) = position[e.from];
        let (_, row) = position[e.to];
        differentials[k].add_block(row, col, block);
    }

    let quantum = is_a5_00(f).then(|| {
        let shift = if normalize { n_plus - 2 * n_minus } else { 0 };
        layouts
            .iter()
            .enumerate()
            .map(|(k, lay)| {
                let mut q = Vec::with_capacity(lay.rank);
                for &(s, _, size) in &lay.states {
                    let c = cube.circles(s).len();
                    for idx in 0..size {
                        // each factor: basis 0 is 1 (degree +1), basis 1 is x (−1)
                        let xs = (0..c).filter(|p| idx >> (c - 1 - p) & 1 == 1).count() as i64;
                        q.push(c as i64 - 2 * xs + k as i64 + shift);
                    }
                }
                q
            })
            .collect()
    });

    Ok(ChainComplex {
        ring,
        shift: if normalize { -n_minus } else { 0 },
        normalized: normalize,
        layouts,
        differentials,
        quantum,
    })
}

impl<R: Ring> ChainComplex<R> {
    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn is_graded(&self) -> bool {
        self.quantum.is_some()
    }

    /// Homological degree of cube degree 0.
    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// Module ranks per cube degree `0..=n`.
    pub fn ranks(&self) -> Vec<usize> {
        self.layouts.iter().map(|l| l.rank).collect()
    }

    pub fn layout(&self, k: usize) -> &DegreeLayout {
        &self.layouts[k]
    }

    pub fn differentials(&self) -> &[ExactMatrix<R>] {
        &self.differentials
    }

    pub fn quantum_degrees(&self, k: usize) -> Option<&[i64]> {
        self.quantum.as_ref().map(|q| q[k].as_slice())
    }

    /// Replaces `d^k` (cube degree), keeping the shape.
    pub fn with_differential(&self, k: usize, m: ExactMatrix<R>) -> Result<Self> {
        let old = self
            .differentials
            .get(k)
            .ok_or_else(|| Error::Dimension(format!("no differential in cube degree {k}")))?;
        if (old.rows(), old.cols()) != (m.rows(), m.cols()) {
            return Err(Error::Dimension("replacement differential has the wrong shape".into()));
        }
        let mut c = self.clone();
        c.differentials[k] = m;
        Ok(c)
    }

    pub fn verify_d_squared(&self) -> bool {
        self.differentials
            .windows(2)
            .all(|w| w[1].mul(&w[0]).map(|p| p.is_zero()).unwrap_or(false))
    }

    /// `Σ (−1)^i rank C^i`.
    pub fn euler_characteristic(&self) -> i64 {
        self.layouts
            .iter()
            .enumerate()
            .map(|(k, l)| {
                if (k as i64 + self.shift).rem_euclid(2) == 0 {
                    l.rank as i64
                } else {
                    -(l.rank as i64)
                }
            })
            .sum()
    }

    /// `Σ (−1)^i q^j rank C^{i,j}`.
    pub fn graded_euler_characteristic(&self) -> Result<LaurentPoly> {
        let quantum = self.quantum.as_ref().ok_or_else(|| {
            Error::Unsupported("quantum grading is defined only for x^2 = 0 (the --a5 0,0 algebra)".into())
        })?;
        let mut p = LaurentPoly::zero('q');
        for (k, qs) in quantum.iter().enumerate() {
            let sign = if (k as i64 + self.shift).rem_euclid(2) == 0 {
                1
            } else {
                -1
            };
            for &q in qs {
                p.add_term(sign, q);
            }
        }
        Ok(p)
    }

    fn zero_map(&self, rows: usize, cols: usize) -> ExactMatrix<R> {
        ExactMatrix::zeros(self.ring.clone(), rows, cols)
    }

    fn incoming(&self, k: usize) -> ExactMatrix<R> {
        if k == 0 {
            self.zero_map(self.layouts[0].rank, 0)
        } else {
            self.differentials[k - 1].clone()
        }
    }

    fn outgoing(&self, k: usize) -> ExactMatrix<R> {
        self.differentials
            .get(k)
            .cloned()
            .unwrap_or_else(|| self.zero_map(0, self.layouts[k].rank))
    }

    pub fn homology(&self) -> Result<HomologyTable> {
        if !self.verify_d_squared() {
            return Err(Error::NotAComplex);
        }
        let n = self.layouts.len();
        let jobs: Vec<(usize, Option<i64>)> = match &self.quantum {
            None => (0..n).map(|k| (k, None)).collect(),
            Some(q) => {
                let mut all: Vec<i64> = q.iter().flatten().copied().collect();
                all.sort_unstable();
                all.dedup();
                (0..n).flat_map(|k| all.iter().map(move |&j| (k, Some(j)))).collect()
            }
        };
        let groups = jobs
            .par_iter()
            .map(|&(k, q)| self.group(k, q))
            .collect::<Result<Vec<_>>>()?;
        let groups = groups
            .into_iter()
            .filter(|g| g.q.is_none() || g.free_rank > 0 || !g.torsion.is_empty())
            .collect();
        Ok(HomologyTable {
            normalized: self.normalized,
            ring: self.ring.spec(),
            groups,
        })
    }

    fn group(&self, k: usize, q: Option<i64>) -> Result<HomologyGroup> {
        let (mut d_in, mut d_out) = (self.incoming(k), self.outgoing(k));
        if let (Some(q), Some(quantum)) = (q, &self.quantum) {
            let pick = |deg: usize| -> Vec<usize> {
                quantum
                    .get(deg)
                    .map_or(Vec::new(), |v| (0..v.len()).filter(|&i| v[i] == q).collect())
            };
            let here = pick(k);
            let before = if k == 0 { Vec::new() } else { pick(k - 1) };
            let after = if k + 1 < self.layouts.len() {
                pick(k + 1)
            } else {
                Vec::new()
            };
            d_in = d_in.select(&here, &before);
            d_out = d_out.select(&after, &here);
        }
        let (free_rank, torsion) = homology_summands(&d_in, &d_out)?;
        let torsion = torsion
            .iter()
            .map(|t| {
                t.to_u64()
                    .ok_or_else(|| Error::Unsupported(format!("torsion coefficient {t} too large")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(HomologyGroup {
            i: k as i64 + self.shift,
            q,
            free_rank,
            torsion,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{figure10_d1, figure10_d2, hopf, trefoil, unknot_0, unknot_1kink, Hand};
    use crate::ring::{Integers, PrimeField, Rationals};

    fn a(h: i64, t: i64) -> FrobeniusData<Integers> {
        a5(A5Params { h, t })
    }

    #[test]
    fn complex_shapes() {
        let c = build_complex(&figure10_d1(), &a(0, 0), false).unwrap();
        assert_eq!(c.ranks(), vec![2, 8, 2]);
        let u = build_complex(&figure10_d2(), &a(1, 1), false).unwrap();
        assert_eq!(u.ranks(), vec![4]);
        assert!(u.differentials().is_empty());
        assert!(u.verify_d_squared());
    }

    #[test]
    fn flipped_sign_breaks_d_squared() {
        let c = build_complex(&hopf(true), &a(0, 0), false).unwrap();
        assert!(c.verify_d_squared());
        // negate the block of the edge 10 → 11 in d^1
        let lay = c.layout(1);
        let &(_, off, size) = lay.states.iter().find(|s| s.0 == 0b10).unwrap();
        let mut d1 = c.differentials()[1].clone();
        for row in 0..d1.rows() {
            for col in off..off + size {
                let v = Integers.neg(d1.get(row, col));
                d1.set(row, col, v);
            }
        }
        assert!(!c.with_differential(1, d1).unwrap().verify_d_squared());
    }

    #[test]
    fn homology_examples() {
        let u = build_complex(&unknot_0(), &a(1, 0), false).unwrap().homology().unwrap();
        assert_eq!(u.groups.len(), 1);
        assert_eq!((u.groups[0].i, u.groups[0].free_rank), (0, 2));

        let d1 = build_complex(&figure10_d1(), &a(1, 0), false)
            .unwrap()
            .homology()
            .unwrap();
        let ranks: Vec<usize> = d1.groups.iter().map(|g| g.free_rank).collect();
        assert_eq!(ranks, vec![0, 4, 0]);
        assert!(!d1.has_torsion());

        let h = build_complex(&hopf(true), &a(1, 1), false).unwrap().homology().unwrap();
        let ranks: Vec<usize> = h.groups.iter().map(|g| g.free_rank).collect();
        assert_eq!(ranks, vec![2, 0, 2]);
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(
            build_complex(&figure10_d1(), &a(0, 0), false)
                .unwrap()
                .euler_characteristic(),
            -4
        );
        assert_eq!(
            build_complex(&unknot_0(), &a(0, 0), false)
                .unwrap()
                .euler_characteristic(),
            2
        );
        assert_eq!(
            build_complex(&hopf(true), &a(0, 0), false)
                .unwrap()
                .euler_characteristic(),
            4
        );
    }

    #[test]
    fn graded_euler_examples() {
        let u = build_complex(&unknot_0(), &a(0, 0), true).unwrap();
        assert_eq!(u.graded_euler_characteristic().unwrap().to_string(), "q + q^-1");
        let h = build_complex(&hopf(true), &a(0, 0), true).unwrap();
        assert_eq!(
            h.graded_euler_characteristic().unwrap().to_string(),
            "q^6 + q^4 + q^2 + 1"
        );
        let k = build_complex(&unknot_1kink(true), &a(0, 0), true).unwrap();
        assert_eq!(k.graded_euler_characteristic().unwrap().to_string(), "q + q^-1");
        assert!(build_complex(&hopf(true), &a(1, 0), true)
            .unwrap()
            .graded_euler_characteristic()
            .is_err());
    }

    #[test]
    fn graded_homology_of_hopf() {
        let h = build_complex(&hopf(true), &a(0, 0), true).unwrap().homology().unwrap();
        let got = h.graded_ranks();
        assert_eq!(
            got,
            vec![(0, Some(0), 1), (0, Some(2), 1), (2, Some(4), 1), (2, Some(6), 1)]
        );
    }

    #[test]
    fn normalization_needs_orientation() {
        let d = crate::diagram::parse_pd("X 4 1 3 2 / X 3 1 4 2").unwrap();
        assert!(matches!(build_complex(&d, &a(0, 0), true), Err(Error::Unoriented(_))));
        assert!(build_complex(&d, &a(0, 0), false).is_ok());
    }

    #[test]
    fn lee_hopf_matches_hand_matrices() {
        let f = a(0, 1).change_ring(Rationals);
        let c = build_complex(&hopf(true), &f, false).unwrap();
        // m: 1⊗1 ↦ 1, 1⊗x, x⊗1 ↦ x, x⊗x ↦ 1; Δ(1) = 1⊗x + x⊗1, Δ(x) = x⊗x + 1⊗1
        let m = [[1, 0, 0, 1], [0, 1, 1, 0]];
        let d0 = ExactMatrix::from_i64_rows(Rationals, &[m[0].to_vec(), m[1].to_vec(), m[0].to_vec(), m[1].to_vec()])
            .unwrap();
        let delta = [[0, 1], [1, 0], [1, 0], [0, 1]];
        let d1_rows: Vec<Vec<i64>> = delta.iter().map(|r| vec![r[0], r[1], -r[0], -r[1]]).collect();
        let d1 = ExactMatrix::from_i64_rows(Rationals, &d1_rows).unwrap();
        assert_eq!(c.differentials()[0], d0);
        assert_eq!(c.differentials()[1], d1);
        assert_eq!(c.homology().unwrap().total_rank(), 4);
    }

    #[test]
    fn integer_homology_can_have_torsion() {
        let t = trefoil(Hand::Left);
        let z = build_complex(&t, &a(0, 0), true).unwrap().homology().unwrap();
        assert!(z.has_torsion());
        assert_eq!(z.total_rank(), 4);
        let f2 = build_complex(&t, &a(0, 0).change_ring(PrimeField::new(2).unwrap()), true).unwrap();
        assert_eq!(f2.homology().unwrap().total_rank(), 6);
        let q = build_complex(&t, &a(0, 0).change_ring(Rationals), true).unwrap();
        assert_eq!(q.homology().unwrap().total_rank(), 4);
    }
}
