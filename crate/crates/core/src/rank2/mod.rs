//! Rank-2 algebras given by structure constants in a basis `(e1, e2)`.

mod families;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{solve_linear, ExactMatrix};
use crate::ring::{PrimeField, Ring, RingSpec};
use crate::snf::smith_diagonal;

pub use families::{evaluate_pa, evaluate_pr, Classifier, FamilyLabel, ParamName, RepresentativeFamily};

/// A coefficient pair `x e1 + y e2`.
pub type Pair<R> = [<R as Ring>::Elem; 2];

/// Product table of a rank-2 algebra.
///
/// Products are stored in the order `e1e1, e1e2, e2e1, e2e2`. For a
/// commutative table `e2e1` always equals `e1e2`.
#[derive(Clone, Debug, PartialEq)]
pub struct MultTable<R: Ring> {
    ring: R,
    commutative: bool,
    products: [Pair<R>; 4],
}

impl<R: Ring> MultTable<R> {
    pub fn commutative(ring: R, e1e1: Pair<R>, e1e2: Pair<R>, e2e2: Pair<R>) -> Self {
        let e2e1 = e1e2.clone();
        MultTable {
            ring,
            commutative: true,
            products: [e1e1, e1e2, e2e1, e2e2],
        }
    }

    pub fn general(ring: R, e1e1: Pair<R>, e1e2: Pair<R>, e2e1: Pair<R>, e2e2: Pair<R>) -> Self {
        MultTable {
            ring,
            commutative: false,
            products: [e1e1, e1e2, e2e1, e2e2],
        }
    }

    /// Commutative table from small integers `[[α1, β1], [α2, β2], [α4, β4]]`.
    pub fn commutative_i64(ring: R, c: [[i64; 2]; 3]) -> Self {
        let p = |v: [i64; 2]| [ring.from_i64(v[0]), ring.from_i64(v[1])];
        let (a, b, d) = (p(c[0]), p(c[1]), p(c[2]));
        Self::commutative(ring, a, b, d)
    }

    /// General table from small integers, rows `e1e1, e1e2, e2e1, e2e2`.
    pub fn general_i64(ring: R, c: [[i64; 2]; 4]) -> Self {
        let p = |v: [i64; 2]| [ring.from_i64(v[0]), ring.from_i64(v[1])];
        let (a, b, d, e) = (p(c[0]), p(c[1]), p(c[2]), p(c[3]));
        Self::general(ring, a, b, d, e)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    /// Whether the table was declared commutative (not whether it happens to be).
    pub fn is_declared_commutative(&self) -> bool {
        self.commutative
    }

    pub fn is_commutative(&self) -> bool {
        self.products[1] == self.products[2]
    }

    /// `e_i · e_j` for `i, j ∈ {0, 1}`.
    pub fn product(&self, i: usize, j: usize) -> &Pair<R> {
        &self.products[2 * i + j]
    }

    pub fn products(&self) -> &[Pair<R>; 4] {
        &self.products
    }

    pub fn basis(&self, i: usize) -> Pair<R> {
        let r = &self.ring;
        if i == 0 {
            [r.one(), r.zero()]
        } else {
            [r.zero(), r.one()]
        }
    }

    pub fn multiply(&self, u: &Pair<R>, v: &Pair<R>) -> Pair<R> {
        let r = &self.ring;
        let mut out = [r.zero(), r.zero()];
        for i in 0..2 {
            if r.is_zero(&u[i]) {
                continue;
            }
            for j in 0..2 {
                if r.is_zero(&v[j]) {
                    continue;
                }
                let c = r.mul(&u[i], &v[j]);
                let p = self.product(i, j);
                for k in 0..2 {
                    out[k] = r.add(&out[k], &r.mul(&c, &p[k]));
                }
            }
        }
        out
    }

    fn assoc_at(&self, i: usize, j: usize, k: usize) -> bool {
        let (ei, ej, ek) = (self.basis(i), self.basis(j), self.basis(k));
        self.multiply(&self.multiply(&ei, &ej), &ek) == self.multiply(&ei, &self.multiply(&ej, &ek))
    }

    /// Associativity. A commutative table needs only
    /// `(e1e1)e2 = e1(e1e2)` and `(e2e2)e1 = e2(e2e1)`; otherwise all eight
    /// basis triples are checked.
    pub fn is_associative(&self) -> bool {
        if self.commutative {
            self.assoc_at(0, 0, 1) && self.assoc_at(1, 1, 0)
        } else {
            self.is_associative_full()
        }
    }

    /// Checks `(e_i e_j) e_k = e_i (e_j e_k)` for every basis triple.
    pub fn is_associative_full(&self) -> bool {
        (0..8).all(|t| self.assoc_at(t >> 2, (t >> 1) & 1, t & 1))
    }

    /// Two-sided unit, solved as a linear system in the ring.
    pub fn find_unit(&self) -> Option<Pair<R>> {
        let r = &self.ring;
        // unknown u = x e1 + y e2; equations u·e_j = e_j and e_j·u = e_j
        let mut entries = Vec::with_capacity(16);
        let mut rhs = Vec::with_capacity(8);
        for j in 0..2 {
            for k in 0..2 {
                entries.push(self.product(0, j)[k].clone());
                entries.push(self.product(1, j)[k].clone());
                rhs.push(if j == k { r.one() } else { r.zero() });
            }
            for k in 0..2 {
                entries.push(self.product(j, 0)[k].clone());
                entries.push(self.product(j, 1)[k].clone());
                rhs.push(if j == k { r.one() } else { r.zero() });
            }
        }
        let m = ExactMatrix::new(r.clone(), 8, 2, entries).expect("8x2 system");
        let x = solve_linear(&m, &rhs).expect("dimensions agree")?;
        Some([x[0].clone(), x[1].clone()])
    }

    /// The 2×4 matrix whose columns are the basis products.
    pub fn product_matrix(&self) -> ExactMatrix<R> {
        let mut entries = Vec::with_capacity(8);
        for k in 0..2 {
            for p in &self.products {
                entries.push(p[k].clone());
            }
        }
        ExactMatrix::new(self.ring.clone(), 2, 4, entries).expect("2x4")
    }

    /// Over a field: the product matrix has rank 2. Over ℤ: its invariant
    /// factors are `[1, 1]`.
    pub fn is_multiplication_surjective(&self) -> bool {
        let m = self.product_matrix();
        if self.ring.is_field() {
            m.rank() == 2
        } else {
            let z = m.to_integer_matrix().expect("non-field rings are the integers");
            smith_diagonal(&z).iter().all(|d| d.is_one())
        }
    }

    /// All nonzero idempotents in the search box, in lexicographic order.
    ///
    /// Over ℤ only a bounded box is searched: finding none is not a proof that
    /// none exist.
    pub fn idempotents(&self, search: IdempotentSearch) -> Result<Vec<Pair<R>>> {
        let range: Vec<i64> = match search {
            IdempotentSearch::ExhaustiveFp => match self.ring.spec() {
                RingSpec::PrimeField { p } => (0..p as i64).collect(),
                _ => {
                    return Err(Error::Unsupported(
                        "exhaustive idempotent search needs a prime field".into(),
                    ))
                }
            },
            IdempotentSearch::BoundedZ(b) => (-b..=b).collect(),
        };
        let r = &self.ring;
        let mut out = Vec::new();
        for &x in &range {
            for &y in &range {
                let v = [r.from_i64(x), r.from_i64(y)];
                if r.is_zero(&v[0]) && r.is_zero(&v[1]) {
                    continue;
                }
                if self.multiply(&v, &v) == v {
                    out.push(v);
                }
            }
        }
        Ok(out)
    }

    /// The table rewritten in the basis given by the columns of `g`
    /// (`f1 = g00 e1 + g10 e2`, `f2 = g01 e1 + g11 e2`). `None` when `g` is
    /// not invertible over the ring.
    pub fn transport(&self, g: &[[R::Elem; 2]; 2]) -> Option<Self> {
        let r = &self.ring;
        let det = r.sub(&r.mul(&g[0][0], &g[1][1]), &r.mul(&g[0][1], &g[1][0]));
        let di = r.inv(&det)?;
        let inv = [
            [r.mul(&g[1][1], &di), r.neg(&r.mul(&g[0][1], &di))],
            [r.neg(&r.mul(&g[1][0], &di)), r.mul(&g[0][0], &di)],
        ];
        let f = [[g[0][0].clone(), g[1][0].clone()], [g[0][1].clone(), g[1][1].clone()]];
        let mut products: [Pair<R>; 4] = std::array::from_fn(|_| [r.zero(), r.zero()]);
        for i in 0..2 {
            for j in 0..2 {
                let v = self.multiply(&f[i], &f[j]);
                products[2 * i + j] = [
                    r.add(&r.mul(&inv[0][0], &v[0]), &r.mul(&inv[0][1], &v[1])),
                    r.add(&r.mul(&inv[1][0], &v[0]), &r.mul(&inv[1][1], &v[1])),
                ];
            }
        }
        Some(MultTable {
            ring: r.clone(),
            commutative: self.commutative,
            products,
        })
    }

    pub fn same_products(&self, other: &Self) -> bool {
        self.products == other.products
    }

    /// Reinterprets a commutative-looking general table as commutative.
    pub fn as_commutative(&self) -> Option<Self> {
        self.is_commutative().then(|| MultTable {
            commutative: true,
            ..self.clone()
        })
    }

    pub fn to_json(&self) -> MultTableJson {
        let r = &self.ring;
        let pair = |p: &Pair<R>| [JsonScalar::from_elem(r, &p[0]), JsonScalar::from_elem(r, &p[1])];
        MultTableJson {
            ring: r.spec(),
            commutative: self.commutative,
            products: ProductsJson {
                e1e1: pair(&self.products[0]),
                e1e2: pair(&self.products[1]),
                e2e1: (!self.commutative).then(|| pair(&self.products[2])),
                e2e2: pair(&self.products[3]),
            },
        }
    }

    /// Reads a table; its ring must match `ring`.
    pub fn from_json(ring: R, json: &MultTableJson) -> Result<Self> {
        json.ring.validate()?;
        if json.ring != ring.spec() {
            return Err(Error::RingMismatch(format!(
                "table is over {} but {} was requested",
                json.ring,
                ring.spec()
            )));
        }
        Self::from_json_values(ring, json)
    }

    /// Reads a table, reinterpreting its scalars in `ring` (e.g. reducing
    /// integer constants modulo p).
    pub fn from_json_values(ring: R, json: &MultTableJson) -> Result<Self> {
        let pair = |p: &[JsonScalar; 2]| -> Result<Pair<R>> { Ok([p[0].to_elem(&ring)?, p[1].to_elem(&ring)?]) };
        let ps = &json.products;
        let (a, b, d) = (pair(&ps.e1e1)?, pair(&ps.e1e2)?, pair(&ps.e2e2)?);
        if json.commutative {
            if ps.e2e1.is_some() {
                return Err(Error::Algebra("commutative table must not list e2e1".into()));
            }
            Ok(Self::commutative(ring.clone(), a, b, d))
        } else {
            let c = ps
                .e2e1
                .as_ref()
                .ok_or_else(|| Error::Algebra("noncommutative table needs e2e1".into()))?;
            let c = pair(c)?;
            Ok(Self::general(ring.clone(), a, b, c, d))
        }
    }
}

/// Search space for [`MultTable::idempotents`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdempotentSearch {
    ExhaustiveFp,
    BoundedZ(i64),
}

/// Scalars in JSON: decimal strings for ℤ, `"n/d"` for ℚ, residues for 𝔽_p.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonScalar {
    Int(i64),
    Text(String),
}

impl JsonScalar {
    pub fn from_elem<R: Ring>(ring: &R, e: &R::Elem) -> Self {
        match ring.spec() {
            RingSpec::PrimeField { .. } => JsonScalar::Int(ring.format(e).parse().expect("residue fits in i64")),
            _ => JsonScalar::Text(ring.format(e)),
        }
    }

    pub fn to_elem<R: Ring>(&self, ring: &R) -> Result<R::Elem> {
        match self {
            JsonScalar::Int(v) => Ok(ring.from_bigint(&BigInt::from(*v))),
            JsonScalar::Text(s) => ring.parse(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProductsJson {
    pub e1e1: [JsonScalar; 2],
    pub e1e2: [JsonScalar; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e2e1: Option<[JsonScalar; 2]>,
    pub e2e2: [JsonScalar; 2],
}

/// JSON form of a [`MultTable`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultTableJson {
    pub ring: RingSpec,
    pub commutative: bool,
    pub products: ProductsJson,
}

pub type BaseChange = [[u64; 2]; 2];

/// All invertible 2×2 matrices over 𝔽_p: the identity first, then the rest
/// in lexicographic order of `(g00, g01, g10, g11)`.
pub fn general_linear_group(f: &PrimeField) -> Vec<BaseChange> {
    let p = f.modulus();
    let id = [[1, 0], [0, 1]];
    let mut out = vec![id];
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    let g = [[a, b], [c, d]];
                    if !(a * d + p * p - b * c).is_multiple_of(p) && g != id {
                        out.push(g);
                    }
                }
            }
        }
    }
    out
}

/// Brute-force search for a base change carrying `a` onto `b`.
pub fn isomorphic(a: &MultTable<PrimeField>, b: &MultTable<PrimeField>) -> Result<Option<BaseChange>> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch("tables over different fields".into()));
    }
    Ok(general_linear_group(a.ring())
        .into_iter()
        .find(|g| a.transport(g).is_some_and(|t| t.same_products(b))))
}

/// Every table over 𝔽_p, indexed in base p by the six (commutative) or eight
/// structure constants `α1, β1, α2, β2, [α3, β3,] α4, β4`, most significant first.
pub fn enumerate_tables(f: &PrimeField, commutative: bool) -> impl Iterator<Item = MultTable<PrimeField>> + '_ {
    let p = f.modulus();
    let n = if commutative { 6 } else { 8 };
    (0..p.pow(n)).map(move |idx| table_from_index(f, commutative, idx))
}

pub fn table_from_index(f: &PrimeField, commutative: bool, idx: u64) -> MultTable<PrimeField> {
    let p = f.modulus();
    let n = if commutative { 6 } else { 8 };
    let mut digits = [0u64; 8];
    let mut rest = idx;
    for i in (0..n).rev() {
        digits[i] = rest % p;
        rest /= p;
    }
    if commutative {
        MultTable::commutative(
            *f,
            [digits[0], digits[1]],
            [digits[2], digits[3]],
            [digits[4], digits[5]],
        )
    } else {
        MultTable::general(
            *f,
            [digits[0], digits[1]],
            [digits[2], digits[3]],
            [digits[4], digits[5]],
            [digits[6], digits[7]],
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Integers, Rationals};
    use proptest::prelude::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn multiply_examples() {
        let q = Rationals;
        let m6 = MultTable::commutative_i64(q, [[1, 0], [0, 1], [0, 1]]);
        assert_eq!(m6.multiply(&m6.basis(0), &m6.basis(1)), m6.basis(1));
        let m17 = MultTable::commutative_i64(q, [[0, 0], [0, 0], [0, 0]]);
        assert_eq!(m17.multiply(&m17.basis(0), &m17.basis(0)), [q.zero(), q.zero()]);
        let v = [q.from_i64(3), q.from_i64(-2)];
        assert_eq!(m6.multiply(&[q.zero(), q.zero()], &v), [q.zero(), q.zero()]);
    }

    #[test]
    fn associativity_examples() {
        let q = Rationals;
        let m10 = |a4| MultTable::commutative_i64(q, [[1, 0], [1, 0], [a4, 0]]);
        assert!(m10(1).is_associative());
        assert!(!m10(2).is_associative());
        assert!(MultTable::commutative_i64(q, [[0, 0], [0, 0], [0, 0]]).is_associative());
        // m9 with β2 = 1
        assert!(MultTable::commutative_i64(q, [[1, 0], [0, 1], [0, 0]]).is_associative());
    }

    #[test]
    fn unit_examples() {
        let q = Rationals;
        let m6 = MultTable::commutative_i64(q, [[1, 0], [0, 0], [0, 1]]);
        assert_eq!(m6.find_unit(), Some([q.one(), q.one()]));
        let m9 = MultTable::commutative_i64(q, [[1, 0], [0, 1], [0, 0]]);
        assert_eq!(m9.find_unit(), Some([q.one(), q.zero()]));
        let m12 = MultTable::commutative_i64(q, [[1, 0], [0, 0], [0, 0]]);
        assert_eq!(m12.find_unit(), None);
    }

    #[test]
    fn unit_over_integers_must_be_integral() {
        // e1e1 = 2e1, e1e2 = 2e2, e2e2 = 0: the ℚ-unit e1/2 is not integral
        let z = MultTable::commutative_i64(Integers, [[2, 0], [0, 2], [0, 0]]);
        assert_eq!(z.find_unit(), None);
        let q = MultTable::commutative_i64(Rationals, [[2, 0], [0, 2], [0, 0]]);
        assert!(q.find_unit().is_some());
    }

    #[test]
    fn idempotent_examples() {
        let f5 = f(5);
        let m12 = MultTable::commutative_i64(f5, [[1, 0], [0, 0], [0, 0]]);
        assert_eq!(m12.idempotents(IdempotentSearch::ExhaustiveFp).unwrap(), vec![[1, 0]]);
        let m14 = MultTable::commutative_i64(f5, [[0, 1], [0, 0], [0, 0]]);
        assert!(m14.idempotents(IdempotentSearch::ExhaustiveFp).unwrap().is_empty());
        let m6 = MultTable::commutative_i64(f(3), [[1, 0], [0, 0], [0, 1]]);
        assert_eq!(
            m6.idempotents(IdempotentSearch::ExhaustiveFp).unwrap(),
            vec![[0, 1], [1, 0], [1, 1]]
        );
        let zt = MultTable::commutative_i64(Integers, [[1, 0], [0, 0], [0, 1]]);
        assert_eq!(zt.idempotents(IdempotentSearch::BoundedZ(2)).unwrap().len(), 3);
        assert!(zt.idempotents(IdempotentSearch::ExhaustiveFp).is_err());
    }

    #[test]
    fn surjectivity_examples() {
        let z = Integers;
        assert!(!MultTable::commutative_i64(z, [[0, 0], [0, 0], [0, 0]]).is_multiplication_surjective());
        for h in -3..=3 {
            for t in -3..=3 {
                let a5 = MultTable::commutative_i64(z, [[1, 0], [0, 1], [t, h]]);
                assert!(a5.is_multiplication_surjective());
            }
        }
        let doubled = MultTable::commutative_i64(z, [[2, 0], [0, 2], [0, 0]]);
        assert!(!doubled.is_multiplication_surjective());
        assert!(MultTable::commutative_i64(Rationals, [[2, 0], [0, 2], [0, 0]]).is_multiplication_surjective());
    }

    #[test]
    fn isomorphism_examples() {
        let f2 = f(2);
        let m17 = MultTable::commutative_i64(f2, [[0, 0], [0, 0], [0, 0]]);
        assert_eq!(isomorphic(&m17, &m17).unwrap(), Some([[1, 0], [0, 1]]));
        let f3 = f(3);
        let a = MultTable::commutative_i64(f3, [[1, 0], [0, 0], [0, 1]]);
        let b = MultTable::commutative_i64(f3, [[1, 0], [0, 1], [0, 1]]);
        let g = isomorphic(&a, &b).unwrap().unwrap();
        assert!(a.transport(&g).unwrap().same_products(&b));
        let m12 = MultTable::commutative_i64(f2, [[1, 0], [0, 0], [0, 0]]);
        assert_eq!(isomorphic(&m12, &m17).unwrap(), None);
        assert!(isomorphic(&m12, &MultTable::commutative_i64(f3, [[1, 0], [0, 0], [0, 0]])).is_err());
    }

    #[test]
    fn group_orders() {
        assert_eq!(general_linear_group(&f(2)).len(), 6);
        assert_eq!(general_linear_group(&f(3)).len(), 48);
        assert_eq!(general_linear_group(&f(5)).len(), 480);
    }

    #[test]
    fn unit_implies_associative_exhaustively() {
        for p in [2, 3] {
            for t in enumerate_tables(&f(p), true) {
                if t.find_unit().is_some() {
                    assert!(t.is_associative());
                }
            }
        }
    }

    #[test]
    fn two_equality_check_matches_full_check() {
        for p in [2, 3] {
            for t in enumerate_tables(&f(p), true) {
                assert_eq!(t.is_associative(), t.is_associative_full(), "{t:?}");
            }
        }
    }

    #[test]
    fn returned_units_are_two_sided() {
        for p in [2, 3] {
            for t in enumerate_tables(&f(p), false) {
                if let Some(u) = t.find_unit() {
                    for i in 0..2 {
                        let e = t.basis(i);
                        assert_eq!(t.multiply(&u, &e), e);
                        assert_eq!(t.multiply(&e, &u), e);
                    }
                }
            }
        }
    }

    #[test]
    fn json_shape() {
        let t = MultTable::commutative_i64(Integers, [[1, 0], [0, 1], [-3, 2]]);
        let js = serde_json::to_string(&t.to_json()).unwrap();
        assert_eq!(
            js,
            r#"{"ring":{"kind":"Integers"},"commutative":true,"products":{"e1e1":["1","0"],"e1e2":["0","1"],"e2e2":["-3","2"]}}"#
        );
        let back: MultTableJson = serde_json::from_str(&js).unwrap();
        assert_eq!(MultTable::from_json(Integers, &back).unwrap(), t);
        let q = r#"{"ring":{"kind":"Rationals"},"commutative":false,"products":{"e1e1":["1/2","0"],"e1e2":["0","1"],"e2e1":["0","0"],"e2e2":["0","1"]}}"#;
        let q: MultTableJson = serde_json::from_str(q).unwrap();
        let t = MultTable::from_json(Rationals, &q).unwrap();
        assert_eq!(Rationals.format(&t.product(0, 0)[0]), "1/2");
        assert!(MultTable::from_json(Integers, &q).is_err());
        let fp = r#"{"ring":{"kind":"PrimeField","p":3},"commutative":true,"products":{"e1e1":[1,0],"e1e2":[0,1],"e2e2":[2,2]}}"#;
        let fp: MultTableJson = serde_json::from_str(fp).unwrap();
        assert_eq!(MultTable::from_json(f(3), &fp).unwrap().product(1, 1), &[2, 2]);
    }

    fn arb_table(p: u64) -> impl Strategy<Value = MultTable<PrimeField>> {
        (0..p.pow(6)).prop_map(move |i| table_from_index(&PrimeField::new(p).unwrap(), true, i))
    }

    fn arb_gl2(p: u64) -> impl Strategy<Value = BaseChange> {
        let group = general_linear_group(&PrimeField::new(p).unwrap());
        prop::sample::select(group)
    }

    proptest! {
        #[test]
        fn isomorphism_is_an_equivalence(
            t in arb_table(3), g in arb_gl2(3), h in arb_gl2(3),
        ) {
            let u = t.transport(&g).unwrap();
            let v = u.transport(&h).unwrap();
            // reflexive, symmetric, transitive
            prop_assert!(isomorphic(&t, &t).unwrap().is_some());
            prop_assert!(isomorphic(&u, &t).unwrap().is_some());
            prop_assert!(isomorphic(&t, &v).unwrap().is_some());
        }

        #[test]
        fn transport_preserves_structure(t in arb_table(3), g in arb_gl2(3)) {
            let u = t.transport(&g).unwrap();
            prop_assert_eq!(t.is_associative(), u.is_associative());
            prop_assert_eq!(t.find_unit().is_some(), u.find_unit().is_some());
            prop_assert_eq!(
                t.idempotents(IdempotentSearch::ExhaustiveFp).unwrap().len(),
                u.idempotents(IdempotentSearch::ExhaustiveFp).unwrap().len()
            );
            prop_assert_eq!(t.is_multiplication_surjective(), u.is_multiplication_surjective());
        }
    }
}
