//! Rank-r (nearly) Frobenius algebras given by structure constants.
//!
//! Multiplication constants are stored as `c[i][j][k]` with
//! `m(e_i, e_j) = Σ_k c[i][j][k] e_k`; comultiplication constants as
//! `d[k][i][j]` with `Δ(e_k) = Σ_{i,j} d[k][i][j] e_i ⊗ e_j`.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{solve_linear, ExactMatrix};
use crate::rank2::JsonScalar;
use crate::ring::{Integers, Ring, RingSpec};
use crate::snf::smith_diagonal;

#[derive(Clone, Debug, PartialEq)]
pub struct FrobeniusData<R: Ring> {
    ring: R,
    rank: usize,
    mult: Vec<R::Elem>,
    comult: Vec<R::Elem>,
    unit: Option<Vec<R::Elem>>,
    counit: Option<Vec<R::Elem>>,
}

/// Result of [`FrobeniusData::check_axioms`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub associative: bool,
    pub commutative: bool,
    pub coassociative: bool,
    pub cocommutative: bool,
    pub frobenius_relation: bool,
    /// A unit is supplied and satisfies the unit axiom.
    pub unit_ok: bool,
    /// A counit is supplied and satisfies the counit axiom.
    pub counit_ok: bool,
    pub mult_surjective: bool,
    /// Rank r over the fraction field.
    pub comult_injective: bool,
    /// Over ℤ: all invariant factors are 1 (a split injection). Over a field
    /// this coincides with `comult_injective`.
    pub comult_split_injective: bool,
}

impl AxiomReport {
    /// The five relations shared with [`RelationReport`].
    pub fn relations(&self) -> RelationReport {
        RelationReport {
            associative: self.associative,
            commutative: self.commutative,
            coassociative: self.coassociative,
            cocommutative: self.cocommutative,
            frobenius: self.frobenius_relation,
        }
    }

    pub fn all_true(&self) -> bool {
        self.relations().all_true()
            && self.unit_ok
            && self.counit_ok
            && self.mult_surjective
            && self.comult_injective
            && self.comult_split_injective
    }
}

/// Result of [`FrobeniusData::verify_n2cob_relations`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub associative: bool,
    pub commutative: bool,
    pub coassociative: bool,
    pub cocommutative: bool,
    pub frobenius: bool,
}

impl RelationReport {
    pub fn all_true(&self) -> bool {
        self.associative && self.commutative && self.coassociative && self.cocommutative && self.frobenius
    }
}

/// A cobordism generator acting on tensor positions (0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    /// Multiply factors `i` and `j` (in that order); the product lands at
    /// output position `k`, other factors keep their relative order.
    Merge { i: usize, j: usize, k: usize },
    /// Comultiply factor `k`; the two outputs land at positions `i` and `j`.
    Split { k: usize, i: usize, j: usize },
    /// `output[sigma[p]] = input[p]`.
    Perm(Vec<usize>),
}

/// Parameters `(h, t)` of `ℤ[x]/(x² − hx − t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct A5Params {
    pub h: i64,
    pub t: i64,
}

/// An integer point of the parameter ring of the A₄ family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct A4Point {
    pub a: i64,
    pub c: i64,
    pub e: i64,
    pub f: i64,
    pub h: i64,
    pub t: i64,
}

impl A4Point {
    /// Checks `ae − cf = 0` and `af + chf − cet = 1`.
    pub fn new(a: i64, c: i64, e: i64, f: i64, h: i64, t: i64) -> Result<Self> {
        let [a_, c_, e_, f_, h_, t_] = [a, c, e, f, h, t].map(BigInt::from);
        let first = &a_ * &e_ - &c_ * &f_;
        let second = &a_ * &f_ + &c_ * &h_ * &f_ - &c_ * &e_ * &t_;
        if first != BigInt::from(0) || !second.is_one() {
            return Err(Error::NotA4Point(format!(
                "(a,c,e,f,h,t) = ({a},{c},{e},{f},{h},{t}) gives ae-cf = {first}, af+chf-cet = {second}"
            )));
        }
        Ok(A4Point { a, c, e, f, h, t })
    }
}

fn idx3(r: usize, a: usize, b: usize, c: usize) -> usize {
    (a * r + b) * r + c
}

fn kron(i: usize, j: usize) -> i64 {
    i64::from(i == j)
}

impl<R: Ring> FrobeniusData<R> {
    /// Builds data from flat constant arrays (`mult[(i*r + j)*r + k]`,
    /// `comult[(k*r + i)*r + j]`). Only shapes are checked; the axioms,
    /// including validity of a supplied unit or counit, are reported by
    /// [`check_axioms`](Self::check_axioms).
    pub fn new(
        ring: R,
        rank: usize,
        mult: Vec<R::Elem>,
        comult: Vec<R::Elem>,
        unit: Option<Vec<R::Elem>>,
        counit: Option<Vec<R::Elem>>,
    ) -> Result<Self> {
        let cube = rank * rank * rank;
        if rank == 0 {
            return Err(Error::Algebra("rank must be positive".into()));
        }
        if mult.len() != cube || comult.len() != cube {
            return Err(Error::Dimension(format!(
                "rank {rank} needs {cube} constants per tensor"
            )));
        }
        for v in unit.iter().chain(counit.iter()) {
            if v.len() != rank {
                return Err(Error::Dimension(format!("unit/counit must have length {rank}")));
            }
        }
        Ok(FrobeniusData {
            ring,
            rank,
            mult,
            comult,
            unit,
            counit,
        })
    }

    pub fn from_i64(
        ring: R,
        rank: usize,
        mult: &[i64],
        comult: &[i64],
        unit: Option<&[i64]>,
        counit: Option<&[i64]>,
    ) -> Result<Self> {
        let conv = |v: &[i64]| v.iter().map(|&x| ring.from_i64(x)).collect::<Vec<_>>();
        Self::new(
            ring.clone(),
            rank,
            conv(mult),
            conv(comult),
            unit.map(conv),
            counit.map(conv),
        )
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `c[i][j][k]`.
    pub fn mult(&self, i: usize, j: usize, k: usize) -> &R::Elem {
        &self.mult[idx3(self.rank, i, j, k)]
    }

    /// `d[k][i][j]`.
    pub fn comult(&self, k: usize, i: usize, j: usize) -> &R::Elem {
        &self.comult[idx3(self.rank, k, i, j)]
    }

    pub fn unit(&self) -> Option<&[R::Elem]> {
        self.unit.as_deref()
    }

    pub fn counit(&self) -> Option<&[R::Elem]> {
        self.counit.as_deref()
    }

    pub fn with_comult(&self, comult: Vec<R::Elem>) -> Result<Self> {
        Self::new(
            self.ring.clone(),
            self.rank,
            self.mult.clone(),
            comult,
            self.unit.clone(),
            self.counit.clone(),
        )
    }

    pub fn without_unit_data(&self) -> Self {
        FrobeniusData {
            unit: None,
            counit: None,
            ..self.clone()
        }
    }

    /// The r × r² matrix of `m`.
    pub fn mult_matrix(&self) -> ExactMatrix<R> {
        let r = self.rank;
        let mut m = ExactMatrix::zeros(self.ring.clone(), r, r * r);
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    m.set(k, i * r + j, self.mult(i, j, k).clone());
                }
            }
        }
        m
    }

    /// The r² × r matrix of `Δ`.
    pub fn comult_matrix(&self) -> ExactMatrix<R> {
        let r = self.rank;
        let mut m = ExactMatrix::zeros(self.ring.clone(), r * r, r);
        for k in 0..r {
            for i in 0..r {
                for j in 0..r {
                    m.set(i * r + j, k, self.comult(k, i, j).clone());
                }
            }
        }
        m
    }

    /// Product of two coefficient vectors.
    pub fn multiply(&self, u: &[R::Elem], v: &[R::Elem]) -> Vec<R::Elem> {
        let (r, ring) = (self.rank, &self.ring);
        let mut out = vec![ring.zero(); r];
        for i in 0..r {
            if ring.is_zero(&u[i]) {
                continue;
            }
            for j in 0..r {
                if ring.is_zero(&v[j]) {
                    continue;
                }
                let c = ring.mul(&u[i], &v[j]);
                for (k, o) in out.iter_mut().enumerate() {
                    *o = ring.add(o, &ring.mul(&c, self.mult(i, j, k)));
                }
            }
        }
        out
    }

    fn sum<F: Fn(usize) -> R::Elem>(&self, f: F) -> R::Elem {
        (0..self.rank).fold(self.ring.zero(), |acc, l| self.ring.add(&acc, &f(l)))
    }

    fn all4<F: Fn(usize, usize, usize, usize) -> bool>(&self, f: F) -> bool {
        let r = self.rank;
        (0..r.pow(4)).all(|n| f(n / (r * r * r), (n / (r * r)) % r, (n / r) % r, n % r))
    }

    fn is_associative(&self) -> bool {
        let ring = &self.ring;
        self.all4(|i, j, k, s| {
            let lhs = self.sum(|l| ring.mul(self.mult(i, j, l), self.mult(l, k, s)));
            let rhs = self.sum(|l| ring.mul(self.mult(j, k, l), self.mult(i, l, s)));
            lhs == rhs
        })
    }

    fn is_coassociative(&self) -> bool {
        let ring = &self.ring;
        self.all4(|k, a, b, c| {
            let lhs = self.sum(|l| ring.mul(self.comult(k, l, c), self.comult(l, a, b)));
            let rhs = self.sum(|l| ring.mul(self.comult(k, a, l), self.comult(l, b, c)));
            lhs == rhs
        })
    }

    fn frobenius_relation(&self) -> bool {
        let ring = &self.ring;
        self.all4(|i, j, a, b| {
            let middle = self.sum(|k| ring.mul(self.mult(i, j, k), self.comult(k, a, b)));
            let left = self.sum(|l| ring.mul(self.comult(j, l, b), self.mult(i, l, a)));
            let right = self.sum(|l| ring.mul(self.comult(i, a, l), self.mult(l, j, b)));
            middle == left && middle == right
        })
    }

    fn unit_valid(&self, u: &[R::Elem]) -> bool {
        let (r, ring) = (self.rank, &self.ring);
        (0..r).all(|j| {
            (0..r).all(|k| {
                let delta = ring.from_i64(kron(j, k));
                self.sum(|i| ring.mul(&u[i], self.mult(i, j, k))) == delta
                    && self.sum(|i| ring.mul(&u[i], self.mult(j, i, k))) == delta
            })
        })
    }

    fn counit_valid(&self, eps: &[R::Elem]) -> bool {
        let (r, ring) = (self.rank, &self.ring);
        (0..r).all(|k| {
            (0..r).all(|j| {
                let delta = ring.from_i64(kron(j, k));
                self.sum(|i| ring.mul(&eps[i], self.comult(k, i, j))) == delta
                    && self.sum(|i| ring.mul(&eps[i], self.comult(k, j, i))) == delta
            })
        })
    }

    pub fn check_axioms(&self) -> AxiomReport {
        let r = self.rank;
        let commutative = self.all4(|i, j, k, _| self.mult(i, j, k) == self.mult(j, i, k));
        let cocommutative = self.all4(|k, i, j, _| self.comult(k, i, j) == self.comult(k, j, i));
        let (mult_surjective, comult_injective, comult_split_injective) = if self.ring.is_field() {
            let inj = self.comult_matrix().rank() == r;
            (self.mult_matrix().rank() == r, inj, inj)
        } else {
            let all_ones = |m: ExactMatrix<R>| {
                let d = smith_diagonal(&m.to_integer_matrix().expect("integer ring"));
                d.len() == r && d.iter().all(|x| x.is_one())
            };
            (
                all_ones(self.mult_matrix()),
                self.comult_matrix().rank() == r,
                all_ones(self.comult_matrix()),
            )
        };
        AxiomReport {
            associative: self.is_associative(),
            commutative,
            coassociative: self.is_coassociative(),
            cocommutative,
            frobenius_relation: self.frobenius_relation(),
            unit_ok: self.unit.as_ref().is_some_and(|u| self.unit_valid(u)),
            counit_ok: self.counit.as_ref().is_some_and(|e| self.counit_valid(e)),
            mult_surjective,
            comult_injective,
            comult_split_injective,
        }
    }

    /// Solves for a two-sided unit of the multiplication.
    pub fn find_unit(&self) -> Option<Vec<R::Elem>> {
        let (r, ring) = (self.rank, &self.ring);
        let mut m = ExactMatrix::zeros(ring.clone(), 2 * r * r, r);
        let mut rhs = Vec::with_capacity(2 * r * r);
        let mut row = 0;
        for j in 0..r {
            for k in 0..r {
                for i in 0..r {
                    m.set(row, i, self.mult(i, j, k).clone());
                    m.set(row + 1, i, self.mult(j, i, k).clone());
                }
                rhs.push(ring.from_i64(kron(j, k)));
                rhs.push(ring.from_i64(kron(j, k)));
                row += 2;
            }
        }
        solve_linear(&m, &rhs).expect("dimensions agree")
    }

    /// Solves for a counit of the comultiplication (a unit of the dual).
    pub fn find_counit(&self) -> Option<Vec<R::Elem>> {
        self.dualize().find_unit()
    }

    /// Matrix of `v ↦ y·v`.
    fn left_multiplication(&self, y: &[R::Elem]) -> ExactMatrix<R> {
        let r = self.rank;
        let mut m = ExactMatrix::zeros(self.ring.clone(), r, r);
        for j in 0..r {
            let mut e = vec![self.ring.zero(); r];
            e[j] = self.ring.one();
            for (k, v) in self.multiply(y, &e).into_iter().enumerate() {
                m.set(k, j, v);
            }
        }
        m
    }

    /// `z` with `y·z = 1`, if it exists in the ring.
    pub fn invert_element(&self, y: &[R::Elem]) -> Result<Option<Vec<R::Elem>>> {
        let unit = self.unit.as_ref().ok_or(Error::NoUnit)?;
        if y.len() != self.rank {
            return Err(Error::Dimension(format!("element must have length {}", self.rank)));
        }
        solve_linear(&self.left_multiplication(y), unit)
    }

    /// Twisting by an invertible `y`: `ε'(v) = ε(y·v)`, `Δ'(v) = Δ(y⁻¹·v)`.
    /// Multiplication and unit are unchanged.
    pub fn twist(&self, y: &[R::Elem]) -> Result<Self> {
        let z = self.invert_element(y)?.ok_or(Error::NotInvertible)?;
        let (r, ring) = (self.rank, &self.ring);
        let ly = self.left_multiplication(y);
        let lz = self.left_multiplication(&z);
        let counit = self.counit.as_ref().map(|eps| {
            (0..r)
                .map(|j| self.sum(|k| ring.mul(&eps[k], ly.get(k, j))))
                .collect::<Vec<_>>()
        });
        let mut comult = vec![ring.zero(); r * r * r];
        for k in 0..r {
            for i in 0..r {
                for j in 0..r {
                    comult[idx3(r, k, i, j)] = self.sum(|l| ring.mul(lz.get(l, k), self.comult(l, i, j)));
                }
            }
        }
        Self::new(ring.clone(), r, self.mult.clone(), comult, self.unit.clone(), counit)
    }

    /// Swaps the roles of multiplication and comultiplication, and of unit
    /// and counit.
    pub fn dualize(&self) -> Self {
        let r = self.rank;
        let mut mult = self.comult.clone();
        let mut comult = self.mult.clone();
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    mult[idx3(r, i, j, k)] = self.comult(k, i, j).clone();
                    comult[idx3(r, k, i, j)] = self.mult(i, j, k).clone();
                }
            }
        }
        FrobeniusData {
            ring: self.ring.clone(),
            rank: r,
            mult,
            comult,
            unit: self.counit.clone(),
            counit: self.unit.clone(),
        }
    }

    /// Matrix of a generator `A^⊗n_in → A^⊗n_out`; tensor basis is
    /// lexicographic with factor 0 varying slowest.
    pub fn generator_map(&self, n_in: usize, n_out: usize, g: &Generator) -> Result<ExactMatrix<R>> {
        let (r, ring) = (self.rank, &self.ring);
        let bad = |msg: &str| Err(Error::Dimension(format!("{msg} for {g:?} with {n_in} -> {n_out}")));
        let distinct = |a: usize, b: usize, n: usize| a != b && a < n && b < n;
        match g {
            Generator::Merge { i, j, k } => {
                if n_in < 2 || n_out + 1 != n_in || !distinct(*i, *j, n_in) || *k >= n_out {
                    return bad("invalid merge");
                }
            }
            Generator::Split { k, i, j } => {
                if n_out != n_in + 1 || *k >= n_in || !distinct(*i, *j, n_out) {
                    return bad("invalid split");
                }
            }
            Generator::Perm(sigma) => {
                let mut seen = vec![false; n_in];
                if n_in != n_out
                    || sigma.len() != n_in
                    || sigma
                        .iter()
                        .any(|&s| s >= n_in || std::mem::replace(&mut seen[s], true))
                {
                    return bad("invalid permutation");
                }
            }
        }
        let size = |n: usize| r.pow(n as u32);
        let mut out = ExactMatrix::zeros(ring.clone(), size(n_out), size(n_in));
        let decode = |mut idx: usize, n: usize| {
            let mut t = vec![0; n];
            for p in (0..n).rev() {
                t[p] = idx % r;
                idx /= r;
            }
            t
        };
        let encode = |t: &[usize]| t.iter().fold(0, |acc, &a| acc * r + a);
        for col in 0..size(n_in) {
            let input = decode(col, n_in);
            match g {
                Generator::Merge { i, j, k } => {
                    let rest: Vec<usize> = (0..n_in).filter(|p| p != i && p != j).map(|p| input[p]).collect();
                    for s in 0..r {
                        let c = self.mult(input[*i], input[*j], s);
                        if ring.is_zero(c) {
                            continue;
                        }
                        let mut t = rest.clone();
                        t.insert(*k, s);
                        out.set(encode(&t), col, c.clone());
                    }
                }
                Generator::Split { k, i, j } => {
                    let mut rest = (0..n_in).filter(|p| p != k).map(|p| input[p]);
                    let slots: Vec<usize> = (0..n_out).filter(|p| p != i && p != j).collect();
                    let mut t = vec![0; n_out];
                    for p in slots {
                        t[p] = rest.next().expect("slot count matches");
                    }
                    for a in 0..r {
                        for b in 0..r {
                            let c = self.comult(input[*k], a, b);
                            if ring.is_zero(c) {
                                continue;
                            }
                            t[*i] = a;
                            t[*j] = b;
                            out.set(encode(&t), col, c.clone());
                        }
                    }
                }
                Generator::Perm(sigma) => {
                    let mut t = vec![0; n_in];
                    for (p, &s) in sigma.iter().enumerate() {
                        t[s] = input[p];
                    }
                    out.set(encode(&t), col, ring.one());
                }
            }
        }
        Ok(out)
    }

    /// Evaluates both sides of each generator relation as composed matrices.
    pub fn verify_n2cob_relations(&self) -> RelationReport {
        use Generator::*;
        let g = |n_in, n_out, gen: Generator| self.generator_map(n_in, n_out, &gen).expect("valid generator");
        let compose = |second: ExactMatrix<R>, first: ExactMatrix<R>| second.mul(&first).expect("shapes chain");
        let m = || g(2, 1, Merge { i: 0, j: 1, k: 0 });
        let d = || g(1, 2, Split { k: 0, i: 0, j: 1 });
        let swap = || g(2, 2, Perm(vec![1, 0]));

        let associative =
            compose(m(), g(3, 2, Merge { i: 0, j: 1, k: 0 })) == compose(m(), g(3, 2, Merge { i: 1, j: 2, k: 1 }));
        let commutative = compose(m(), swap()) == m();
        let coassociative =
            compose(g(2, 3, Split { k: 0, i: 0, j: 1 }), d()) == compose(g(2, 3, Split { k: 1, i: 1, j: 2 }), d());
        let cocommutative = compose(swap(), d()) == d();
        let middle = compose(d(), m());
        let left = compose(g(3, 2, Merge { i: 0, j: 1, k: 0 }), g(2, 3, Split { k: 1, i: 1, j: 2 }));
        let right = compose(g(3, 2, Merge { i: 1, j: 2, k: 1 }), g(2, 3, Split { k: 0, i: 0, j: 1 }));
        RelationReport {
            associative,
            commutative,
            coassociative,
            cocommutative,
            frobenius: middle == left && middle == right,
        }
    }

    pub fn to_json(&self) -> FrobeniusJson {
        let r = self.rank;
        let s = |e: &R::Elem| JsonScalar::from_elem(&self.ring, e);
        let tensor = |f: &dyn Fn(usize, usize, usize) -> JsonScalar| {
            (0..r)
                .map(|a| (0..r).map(|b| (0..r).map(|c| f(a, b, c)).collect()).collect())
                .collect()
        };
        FrobeniusJson {
            ring: self.ring.spec(),
            rank: r,
            mult: tensor(&|i, j, k| s(self.mult(i, j, k))),
            comult: tensor(&|k, i, j| s(self.comult(k, i, j))),
            unit: self.unit.as_ref().map(|u| u.iter().map(s).collect()),
            counit: self.counit.as_ref().map(|u| u.iter().map(s).collect()),
        }
    }

    /// Reads data whose declared ring must equal `ring`.
    pub fn from_json(ring: R, json: &FrobeniusJson) -> Result<Self> {
        json.ring.validate()?;
        if json.ring != ring.spec() {
            return Err(Error::RingMismatch(format!(
                "algebra is over {} but {} was requested",
                json.ring,
                ring.spec()
            )));
        }
        Self::from_json_values(ring, json)
    }

    /// Reads data, reinterpreting its scalars in `ring`.
    pub fn from_json_values(ring: R, json: &FrobeniusJson) -> Result<Self> {
        let r = json.rank;
        let flat = |t: &Vec<Vec<Vec<JsonScalar>>>, what: &str| -> Result<Vec<R::Elem>> {
            if t.len() != r || t.iter().any(|a| a.len() != r || a.iter().any(|b| b.len() != r)) {
                return Err(Error::Dimension(format!("{what} must be a {r}x{r}x{r} array")));
            }
            t.iter().flatten().flatten().map(|x| x.to_elem(&ring)).collect()
        };
        let vec = |v: &Option<Vec<JsonScalar>>| -> Result<Option<Vec<R::Elem>>> {
            v.as_ref()
                .map(|v| v.iter().map(|x| x.to_elem(&ring)).collect())
                .transpose()
        };
        Self::new(
            ring.clone(),
            r,
            flat(&json.mult, "mult")?,
            flat(&json.comult, "comult")?,
            vec(&json.unit)?,
            vec(&json.counit)?,
        )
    }
}

impl FrobeniusData<Integers> {
    /// Reduces integer data into another ring.
    pub fn change_ring<S: Ring>(&self, ring: S) -> FrobeniusData<S> {
        let conv = |v: &Vec<BigInt>| v.iter().map(|x| ring.from_bigint(x)).collect::<Vec<_>>();
        FrobeniusData {
            ring: ring.clone(),
            rank: self.rank,
            mult: conv(&self.mult),
            comult: conv(&self.comult),
            unit: self.unit.as_ref().map(conv),
            counit: self.counit.as_ref().map(conv),
        }
    }
}

/// Multiplication of `ℤ[x]/(x² − hx − t)` in the basis `(1, x)`.
fn a5_mult(h: i64, t: i64) -> [i64; 8] {
    // 1·1, 1·x, x·1, x·x
    [1, 0, 0, 1, 0, 1, t, h]
}

/// `ℤ[x]/(x² − hx − t)` with `Δ(1) = 1⊗x + x⊗1 − h 1⊗1`,
/// `Δ(x) = x⊗x + t 1⊗1`, `ε(1) = 0`, `ε(x) = 1`.
pub fn a5(p: A5Params) -> FrobeniusData<Integers> {
    let A5Params { h, t } = p;
    let comult = [-h, 1, 1, 0, t, 0, 0, 1];
    FrobeniusData::from_i64(Integers, 2, &a5_mult(h, t), &comult, Some(&[1, 0]), Some(&[0, 1])).expect("rank-2 shapes")
}

/// The A₄ algebra evaluated at an integer point of its parameter ring.
pub fn a4_evaluate(pt: A4Point) -> Result<FrobeniusData<Integers>> {
    let A4Point { a, c, e, f, h, t } = A4Point::new(pt.a, pt.c, pt.e, pt.f, pt.h, pt.t)?;
    let z = Integers;
    let n = BigInt::from;
    let comult = vec![
        // Δ(1) = (et − hf) 1⊗1 + f(1⊗x + x⊗1) + e x⊗x
        n(e) * n(t) - n(h) * n(f),
        n(f),
        n(f),
        n(e),
        // Δ(x) = ft 1⊗1 + et(1⊗x + x⊗1) + (f + eh) x⊗x
        n(f) * n(t),
        n(e) * n(t),
        n(e) * n(t),
        n(f) + n(e) * n(h),
    ];
    let mult = a5_mult(h, t).iter().map(|&x| n(x)).collect();
    FrobeniusData::new(z, 2, mult, comult, Some(vec![n(1), n(0)]), Some(vec![n(-c), n(a)]))
}

/// JSON form of [`FrobeniusData`]: `mult[i][j][k]`, `comult[k][i][j]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrobeniusJson {
    pub ring: RingSpec,
    pub rank: usize,
    pub mult: Vec<Vec<Vec<JsonScalar>>>,
    pub comult: Vec<Vec<Vec<JsonScalar>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<JsonScalar>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counit: Option<Vec<JsonScalar>>,
}
