//! Named representative families of rank-2 algebras and classification over 𝔽_p.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use super::{general_linear_group, BaseChange, MultTable};
use crate::error::{Error, Result};
use crate::ring::{PrimeField, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FamilyLabel {
    M6,
    M7,
    M8,
    M9,
    M10,
    M11,
    M12,
    M13,
    M14,
    M15,
    M16,
    M17,
    M8_1R,
    M8_2R,
    M11R,
    M14_1R,
    M14_2R,
    M15_1R,
    M2_1,
    M2_2,
    M2_3,
    M2_4,
    M2_5,
    M2_6,
    M2_7,
    M2R,
    NcLeft,
    NcRight,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ParamName {
    Alpha2,
    Beta2,
    Alpha4,
    Beta4,
    Lambda2,
}

impl fmt::Display for ParamName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParamName::Alpha2 => "alpha2",
            ParamName::Beta2 => "beta2",
            ParamName::Alpha4 => "alpha4",
            ParamName::Beta4 => "beta4",
            ParamName::Lambda2 => "lambda2",
        })
    }
}

impl FamilyLabel {
    /// Families for odd characteristic, in classification order.
    pub const ODD: [FamilyLabel; 18] = [
        FamilyLabel::M6,
        FamilyLabel::M7,
        FamilyLabel::M8,
        FamilyLabel::M9,
        FamilyLabel::M10,
        FamilyLabel::M11,
        FamilyLabel::M12,
        FamilyLabel::M13,
        FamilyLabel::M14,
        FamilyLabel::M15,
        FamilyLabel::M16,
        FamilyLabel::M17,
        FamilyLabel::M8_1R,
        FamilyLabel::M8_2R,
        FamilyLabel::M11R,
        FamilyLabel::M14_1R,
        FamilyLabel::M14_2R,
        FamilyLabel::M15_1R,
    ];

    /// Families for characteristic 2, in classification order.
    pub const CHAR2: [FamilyLabel; 8] = [
        FamilyLabel::M2_1,
        FamilyLabel::M2_2,
        FamilyLabel::M2_3,
        FamilyLabel::M2_4,
        FamilyLabel::M2_5,
        FamilyLabel::M2_6,
        FamilyLabel::M2_7,
        FamilyLabel::M2R,
    ];

    pub fn name(self) -> &'static str {
        use FamilyLabel::*;
        match self {
            M6 => "m6",
            M7 => "m7",
            M8 => "m8",
            M9 => "m9",
            M10 => "m10",
            M11 => "m11",
            M12 => "m12",
            M13 => "m13",
            M14 => "m14",
            M15 => "m15",
            M16 => "m16",
            M17 => "m17",
            M8_1R => "m8_1R",
            M8_2R => "m8_2R",
            M11R => "m11R",
            M14_1R => "m14_1R",
            M14_2R => "m14_2R",
            M15_1R => "m15_1R",
            M2_1 => "m2_1",
            M2_2 => "m2_2",
            M2_3 => "m2_3",
            M2_4 => "m2_4",
            M2_5 => "m2_5",
            M2_6 => "m2_6",
            M2_7 => "m2_7",
            M2R => "m2R",
            NcLeft => "nc_left",
            NcRight => "nc_right",
        }
    }

    pub fn params(self) -> &'static [ParamName] {
        use FamilyLabel::*;
        use ParamName::*;
        match self {
            M6 => &[Alpha2, Beta2],
            M9 => &[Beta2],
            M10 | M2_4 | M2_5 => &[Alpha4],
            M8_1R | M11R => &[Lambda2],
            M8_2R => &[Beta2, Lambda2],
            M14_1R | M14_2R => &[Alpha2],
            M15_1R => &[Alpha2, Beta2, Alpha4, Beta4],
            M2R => &[Alpha2, Beta2],
            _ => &[],
        }
    }

    pub fn is_commutative(self) -> bool {
        !matches!(self, FamilyLabel::NcLeft | FamilyLabel::NcRight)
    }
}

impl fmt::Display for FamilyLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A family label together with concrete parameter values in 𝔽_p.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RepresentativeFamily {
    pub label: FamilyLabel,
    pub params: Vec<(ParamName, u64)>,
}

impl fmt::Display for RepresentativeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label)?;
        if !self.params.is_empty() {
            let inner: Vec<String> = self.params.iter().map(|(n, v)| format!("{n}={v}")).collect();
            write!(f, "({})", inner.join(", "))?;
        }
        Ok(())
    }
}

/// `P_A(y) = −1 + y(4α2+β4) + y²(2α4β2 − 4α2² − 4α2β4) + y³(α4² − 4α2α4β2 + 4α2²β4)`.
pub fn evaluate_pa<R: Ring>(r: &R, a2: &R::Elem, b2: &R::Elem, a4: &R::Elem, b4: &R::Elem, y: &R::Elem) -> R::Elem {
    let n = |k: i64| r.from_i64(k);
    let m = |xs: &[&R::Elem]| xs.iter().fold(r.one(), |acc, x| r.mul(&acc, x));
    let c1 = r.add(&m(&[&n(4), a2]), b4);
    let c2 = r.sub(&r.sub(&m(&[&n(2), a4, b2]), &m(&[&n(4), a2, a2])), &m(&[&n(4), a2, b4]));
    let c3 = r.add(
        &r.sub(&m(&[a4, a4]), &m(&[&n(4), a2, a4, b2])),
        &m(&[&n(4), a2, a2, b4]),
    );
    cubic(r, &[r.neg(&r.one()), c1, c2, c3], y)
}

/// `P_R(y) = −1 + y(5α2+β2²) + y²(−8α2² − 2α2β2²) + y³(4α2³ + α2²β2²)`, i.e.
/// `P_A` at `α4 = α2β2, β4 = α2 + β2²`.
pub fn evaluate_pr<R: Ring>(r: &R, a2: &R::Elem, b2: &R::Elem, y: &R::Elem) -> R::Elem {
    let n = |k: i64| r.from_i64(k);
    let m = |xs: &[&R::Elem]| xs.iter().fold(r.one(), |acc, x| r.mul(&acc, x));
    let c1 = r.add(&m(&[&n(5), a2]), &m(&[b2, b2]));
    let c2 = r.neg(&r.add(&m(&[&n(8), a2, a2]), &m(&[&n(2), a2, b2, b2])));
    let c3 = r.add(&m(&[&n(4), a2, a2, a2]), &m(&[a2, a2, b2, b2]));
    cubic(r, &[r.neg(&r.one()), c1, c2, c3], y)
}

fn cubic<R: Ring>(r: &R, c: &[R::Elem; 4], y: &R::Elem) -> R::Elem {
    c.iter().rev().fold(r.zero(), |acc, ci| r.add(&r.mul(&acc, y), ci))
}

impl RepresentativeFamily {
    pub fn new(label: FamilyLabel, values: &[u64]) -> Result<Self> {
        let names = label.params();
        if names.len() != values.len() {
            return Err(Error::Algebra(format!(
                "{label} takes {} parameter(s), got {}",
                names.len(),
                values.len()
            )));
        }
        Ok(RepresentativeFamily {
            label,
            params: names.iter().copied().zip(values.iter().copied()).collect(),
        })
    }

    pub fn param(&self, name: ParamName) -> Option<u64> {
        self.params.iter().find(|(n, _)| *n == name).map(|(_, v)| *v)
    }

    fn p(&self, name: ParamName) -> u64 {
        self.param(name).expect("arity checked at construction")
    }

    /// Every parameter point of `label` over `f`, in lexicographic order.
    pub fn grid(label: FamilyLabel, f: &PrimeField) -> Vec<Self> {
        let k = label.params().len() as u32;
        let p = f.modulus();
        (0..p.pow(k))
            .map(|idx| {
                let mut vals = vec![0; k as usize];
                let mut rest = idx;
                for v in vals.iter_mut().rev() {
                    *v = rest % p;
                    rest /= p;
                }
                RepresentativeFamily::new(label, &vals).expect("arity matches")
            })
            .collect()
    }

    /// Whether the family's side conditions hold at these parameters,
    /// checked by exhaustive search over `f`.
    pub fn side_conditions_hold(&self, f: &PrimeField) -> bool {
        use FamilyLabel::*;
        use ParamName::*;
        let p = f.modulus();
        let not_nonzero_square = |v: u64| !f.is_nonzero_square(v % p);
        match self.label {
            M9 => f.inv(&2).is_some_and(|h| self.p(Beta2) % p != h),
            M8_1R | M11R => not_nonzero_square(self.p(Lambda2)),
            M8_2R => {
                let b2 = self.p(Beta2) % p;
                not_nonzero_square(self.p(Lambda2)) && not_nonzero_square(f.sub(&1, &f.mul(&2, &b2)))
            }
            M14_1R | M14_2R => !f.is_square(f.add(&f.mul(&2, &(self.p(Alpha2) % p)), &1)),
            M15_1R => {
                let [a2, b2, a4, b4] = [Alpha2, Beta2, Alpha4, Beta4].map(|n| self.p(n) % p);
                f.elements().all(|y| evaluate_pa(f, &a2, &b2, &a4, &b4, &y) != 0)
            }
            M2_5 => {
                let a4 = self.p(Alpha4) % p;
                f.elements()
                    .filter(|&x| x > 1)
                    .all(|x| f.add(&f.add(&f.mul(&x, &x), &x), &a4) != 0)
            }
            M2R => {
                let (a2, b2) = (self.p(Alpha2) % p, self.p(Beta2) % p);
                f.elements().all(|y| {
                    let c3 = f.mul(&f.mul(&a2, &a2), &f.mul(&b2, &b2));
                    let c1 = f.add(&a2, &f.mul(&b2, &b2));
                    let v = f.add(&f.add(&f.mul(&c3, &f.mul(&y, &f.mul(&y, &y))), &f.mul(&c1, &y)), &1);
                    v != 0
                })
            }
            _ => true,
        }
    }

    /// The table of this family over `f`, without checking side conditions.
    pub fn instantiate_unchecked(&self, f: &PrimeField) -> Result<MultTable<PrimeField>> {
        use FamilyLabel::*;
        use ParamName::*;
        let p = f.modulus();
        let odd = || -> Result<u64> {
            f.inv(&2)
                .ok_or_else(|| Error::Algebra(format!("{} needs characteristic ≠ 2", self.label)))
        };
        if self.label.name().starts_with("m2") && p != 2 {
            return Err(Error::Algebra(format!("{} needs characteristic 2", self.label)));
        }
        let v = |n: ParamName| self.p(n) % p;
        let neg = |x: u64| f.neg(&(x % p));
        let c = |a: [u64; 2], b: [u64; 2], d: [u64; 2]| MultTable::commutative(*f, a, b, d);
        Ok(match self.label {
            M6 => c([1, 0], [v(Alpha2), v(Beta2)], [0, 1]),
            M7 => c([1, 0], [1, odd()?], [0, 0]),
            M8 => c([1, 0], [0, odd()?], [1, 0]),
            M9 => c([1, 0], [0, v(Beta2)], [0, 0]),
            M10 => c([1, 0], [1, 0], [v(Alpha4), 0]),
            M11 => c([1, 0], [0, 0], [1, 0]),
            M12 => c([1, 0], [0, 0], [0, 0]),
            M13 => c([0, 1], [0, 1], [0, 0]),
            M14 => c([0, 1], [0, 0], [0, 0]),
            M15 => {
                odd()?;
                c([0, 1], [neg(2), 3 % p], [neg(8), 8 % p])
            }
            M16 => c([0, 0], [1, 0], [0, 0]),
            M17 => c([0, 0], [0, 0], [0, 0]),
            M8_1R => c([1, 0], [0, odd()?], [v(Lambda2), 0]),
            M8_2R => c([1, 0], [0, v(Beta2)], [v(Lambda2), 0]),
            M11R => c([1, 0], [0, 0], [v(Lambda2), 0]),
            M14_1R => c([1, 0], [v(Alpha2), 1], [0, 0]),
            M14_2R => c([1, 0], [v(Alpha2), 0], [0, 0]),
            M15_1R => c([0, 1], [v(Alpha2), v(Beta2)], [v(Alpha4), v(Beta4)]),
            M2_1 => c([1, 0], [0, 1], [0, 1]),
            M2_2 => c([1, 0], [0, 0], [0, 0]),
            M2_3 => c([1, 0], [0, 0], [0, 1]),
            M2_4 => c([1, 0], [0, 1], [v(Alpha4), 0]),
            M2_5 => c([1, 0], [0, 1], [v(Alpha4), 1]),
            M2_6 => c([0, 1], [0, 0], [0, 0]),
            M2_7 => c([0, 0], [0, 0], [0, 0]),
            M2R => {
                let (a2, b2) = (v(Alpha2), v(Beta2));
                c([0, 1], [a2, b2], [f.mul(&a2, &b2), f.add(&a2, &f.mul(&b2, &b2))])
            }
            NcLeft => MultTable::general(*f, [0, 0], [0, 0], [1, 0], [0, 1]),
            NcRight => MultTable::general(*f, [0, 0], [1, 0], [0, 0], [0, 1]),
        })
    }

    /// The table of this family over `f`; errors when a side condition fails.
    pub fn instantiate(&self, f: &PrimeField) -> Result<MultTable<PrimeField>> {
        if !self.side_conditions_hold(f) {
            return Err(Error::Algebra(format!(
                "side condition of {self} fails over F{}",
                f.modulus()
            )));
        }
        self.instantiate_unchecked(f)
    }
}

/// Classifies commutative associative tables over a fixed 𝔽_p by matching
/// against instantiated representatives.
///
/// Each table is reduced to the least member of its base-change orbit, so a
/// lookup costs one pass over GL₂(𝔽_p); the witnessing base change is then
/// recovered by direct search.
pub struct Classifier {
    field: PrimeField,
    group: Vec<BaseChange>,
    targets: Vec<(RepresentativeFamily, MultTable<PrimeField>)>,
    by_orbit: HashMap<[u64; 8], usize>,
}

impl Classifier {
    pub fn new(field: PrimeField) -> Self {
        let labels: &[FamilyLabel] = if field.modulus() == 2 {
            &FamilyLabel::CHAR2
        } else {
            &FamilyLabel::ODD
        };
        let group = general_linear_group(&field);
        let mut targets = Vec::new();
        for &label in labels {
            for fam in RepresentativeFamily::grid(label, &field) {
                if let Ok(t) = fam.instantiate(&field) {
                    if t.is_associative() {
                        targets.push((fam, t));
                    }
                }
            }
        }
        let mut by_orbit = HashMap::new();
        for (i, (_, t)) in targets.iter().enumerate() {
            by_orbit.entry(orbit_key(&group, t)).or_insert(i);
        }
        Classifier {
            field,
            group,
            targets,
            by_orbit,
        }
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    /// Associative representatives in classification order.
    pub fn targets(&self) -> &[(RepresentativeFamily, MultTable<PrimeField>)] {
        &self.targets
    }

    /// The first representative isomorphic to `t`, with a base change `g`
    /// such that `t.transport(g)` equals the representative.
    pub fn classify(&self, t: &MultTable<PrimeField>) -> Result<(RepresentativeFamily, BaseChange)> {
        if t.ring() != &self.field {
            return Err(Error::RingMismatch(format!(
                "classifier is over F{}",
                self.field.modulus()
            )));
        }
        if !t.is_commutative() || !t.is_associative_full() {
            return Err(Error::Algebra(
                "classification needs a commutative associative table".into(),
            ));
        }
        let t = t.as_commutative().expect("checked commutative");
        let idx = *self
            .by_orbit
            .get(&orbit_key(&self.group, &t))
            .ok_or_else(|| Error::ClassificationGap(format!("{:?} matches no representative", t.products())))?;
        let (fam, target) = &self.targets[idx];
        let g = self
            .group
            .iter()
            .find(|g| t.transport(g).is_some_and(|u| u.same_products(target)))
            .expect("orbit keys agree");
        Ok((fam.clone(), *g))
    }
}

fn flatten(t: &MultTable<PrimeField>) -> [u64; 8] {
    let p = t.products();
    [p[0][0], p[0][1], p[1][0], p[1][1], p[2][0], p[2][1], p[3][0], p[3][1]]
}

fn orbit_key(group: &[BaseChange], t: &MultTable<PrimeField>) -> [u64; 8] {
    group
        .iter()
        .filter_map(|g| t.transport(g))
        .map(|u| flatten(&u))
        .min()
        .expect("group contains the identity")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rank2::{enumerate_tables, isomorphic};
    use crate::ring::Rationals;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn arity_is_enforced() {
        assert!(RepresentativeFamily::new(FamilyLabel::M6, &[1]).is_err());
        assert!(RepresentativeFamily::new(FamilyLabel::M10, &[1]).is_ok());
        assert_eq!(
            RepresentativeFamily::new(FamilyLabel::M8_2R, &[1, 2])
                .unwrap()
                .to_string(),
            "m8_2R(beta2=1, lambda2=2)"
        );
    }

    #[test]
    fn nonresidue_parameters_are_checked() {
        let f5 = f(5);
        // squares in F5: 1, 4
        let ok = RepresentativeFamily::new(FamilyLabel::M11R, &[2]).unwrap();
        assert!(ok.instantiate(&f5).is_ok());
        let zero = RepresentativeFamily::new(FamilyLabel::M11R, &[0]).unwrap();
        assert!(zero.instantiate(&f5).is_ok());
        let bad = RepresentativeFamily::new(FamilyLabel::M11R, &[4]).unwrap();
        assert!(bad.instantiate(&f5).is_err());
        // 2α2 + 1 must not be a square (0 counts as a square here)
        let m14 = |a| RepresentativeFamily::new(FamilyLabel::M14_2R, &[a]).unwrap();
        assert!(m14(2).instantiate(&f5).is_err()); // 5 ≡ 0
        assert!(m14(3).instantiate(&f5).is_ok()); // 7 ≡ 2
        let m9 = RepresentativeFamily::new(FamilyLabel::M9, &[3]).unwrap(); // ½ = 3 in F5
        assert!(m9.instantiate(&f5).is_err());
    }

    #[test]
    fn pr_examples() {
        let f5 = f(5);
        for a2 in 1..5 {
            for b2 in 0..5 {
                let y = f5.inv(&a2).unwrap();
                assert_eq!(evaluate_pr(&f5, &a2, &b2, &y), 0);
            }
        }
        for y in 0..5 {
            assert_eq!(evaluate_pr(&f5, &0, &0, &y), 4);
        }
        let q = Rationals;
        let one = q.one();
        assert_eq!(evaluate_pr(&q, &one, &one, &one), q.zero());
    }

    #[test]
    fn pr_is_pa_on_the_associative_locus() {
        let f5 = f(5);
        for a2 in 0..5u64 {
            for b2 in 0..5u64 {
                let a4 = f5.mul(&a2, &b2);
                let b4 = f5.add(&a2, &f5.mul(&b2, &b2));
                for y in 0..5 {
                    assert_eq!(evaluate_pa(&f5, &a2, &b2, &a4, &b4, &y), evaluate_pr(&f5, &a2, &b2, &y));
                }
            }
        }
    }

    #[test]
    fn classify_examples() {
        let c2 = Classifier::new(f(2));
        let zero = MultTable::commutative(f(2), [0, 0], [0, 0], [0, 0]);
        assert_eq!(c2.classify(&zero).unwrap().0.label, FamilyLabel::M2_7);
        let m21 = MultTable::commutative(f(2), [1, 0], [0, 1], [0, 1]);
        assert_eq!(c2.classify(&m21).unwrap().0.label, FamilyLabel::M2_1);

        let f5 = f(5);
        let c5 = Classifier::new(f5);
        let m9 = RepresentativeFamily::new(FamilyLabel::M9, &[0])
            .unwrap()
            .instantiate(&f5)
            .unwrap();
        let (fam, g) = c5.classify(&m9).unwrap();
        assert_eq!(fam.label, FamilyLabel::M9);
        let target = fam.instantiate(&f5).unwrap();
        assert!(m9.transport(&g).unwrap().same_products(&target));
        assert!(isomorphic(
            &m9,
            &RepresentativeFamily::new(FamilyLabel::M12, &[])
                .unwrap()
                .instantiate(&f5)
                .unwrap()
        )
        .unwrap()
        .is_some());

        let m10 = MultTable::commutative(f5, [1, 0], [1, 0], [2, 0]);
        assert!(c5.classify(&m10).is_err());
    }

    #[test]
    fn odd_targets_are_associative_instances_only() {
        let c3 = Classifier::new(f(3));
        assert!(c3.targets().iter().all(|(_, t)| t.is_associative()));
        assert!(!c3.targets().iter().any(|(fam, _)| fam.label == FamilyLabel::M7));
    }

    #[test]
    fn classification_over_f3_is_complete() {
        let f3 = f(3);
        let c3 = Classifier::new(f3);
        for t in enumerate_tables(&f3, true).filter(|t| t.is_associative()) {
            let (fam, g) = c3.classify(&t).unwrap();
            assert!(t.transport(&g).unwrap().same_products(&fam.instantiate(&f3).unwrap()));
        }
    }

    #[test]
    fn classification_over_f5_misses_the_quadratic_extension() {
        // −1 is a square mod 5, so the side conditions rule out every
        // representative of the field with 25 elements
        let f5 = f(5);
        let c5 = Classifier::new(f5);
        let gaps: Vec<_> = enumerate_tables(&f5, true)
            .filter(|t| t.is_associative() && c5.classify(t).is_err())
            .collect();
        assert_eq!(gaps.len(), 240);
        for t in &gaps {
            assert!(matches!(c5.classify(t), Err(Error::ClassificationGap(_))));
            assert!(t.find_unit().is_some());
            // a field: no nonzero element squares to zero
            let nilpotent = (1..25u64).any(|i| {
                let v = [i / 5, i % 5];
                t.multiply(&v, &v) == [0, 0]
            });
            assert!(!nilpotent);
        }
    }
}
