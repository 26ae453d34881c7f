//! Exhaustive checks of the rank-2 structure results over small prime fields
//! and a bounded slice of ℤ.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::frobenius::{a5, A5Params, FrobeniusData};
use crate::rank2::{isomorphic, table_from_index, Classifier, FamilyLabel, MultTable, ParamName, RepresentativeFamily};
use crate::ring::{Integers, PrimeField, Ring};

/// Where the unitality check enumerates commutative tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchSpace {
    Field(PrimeField),
    /// All integer tables with entries in `[−bound, bound]`.
    BoundedZ(i64),
}

impl SearchSpace {
    pub fn field(p: u64) -> Result<Self> {
        Ok(SearchSpace::Field(PrimeField::new(p)?))
    }

    pub fn bounded_z(bound: i64) -> Result<Self> {
        if bound < 1 {
            return Err(Error::Unsupported(format!(
                "integer bound must be at least 1, got {bound}"
            )));
        }
        Ok(SearchSpace::BoundedZ(bound))
    }
}

impl fmt::Display for SearchSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchSpace::Field(k) => write!(f, "F_{}", k.modulus()),
            SearchSpace::BoundedZ(b) => write!(f, "Z with |entries| <= {b}"),
        }
    }
}

/// A failed check, with enough data to rebuild the offending input.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub check: String,
    pub detail: String,
    pub data: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Stage {
    pub label: String,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub name: String,
    pub space: String,
    pub unit: String,
    pub candidates: u64,
    pub stages: Vec<Stage>,
    pub counterexamples: Vec<Counterexample>,
    /// Facts recorded along the way, and disagreements that stem from a
    /// misprinted input rather than from the statement being checked.
    pub notes: Vec<String>,
}

impl Report {
    fn new(name: &str, space: String, unit: &str, candidates: u64) -> Self {
        Report {
            name: name.into(),
            space,
            unit: unit.into(),
            candidates,
            stages: Vec::new(),
            counterexamples: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn stage(&mut self, label: &str, count: usize) {
        self.stages.push(Stage {
            label: label.into(),
            count: count as u64,
        });
    }

    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    /// `"64 tables, 0 counterexamples"`.
    pub fn summary(&self) -> String {
        format!(
            "{} {}, {} counterexamples",
            self.candidates,
            self.unit,
            self.counterexamples.len()
        )
    }

    /// Combines reports of the same check over several spaces.
    pub fn merge(name: &str, parts: Vec<Report>) -> Report {
        let mut out = Report::new(
            name,
            parts.iter().map(|r| r.space.clone()).collect::<Vec<_>>().join(", "),
            parts.first().map_or("tables", |r| r.unit.as_str()),
            parts.iter().map(|r| r.candidates).sum(),
        );
        for r in parts {
            out.stages.extend(r.stages.into_iter().map(|s| Stage {
                label: format!("{}: {}", r.space, s.label),
                ..s
            }));
            out.counterexamples.extend(r.counterexamples);
            out.notes
                .extend(r.notes.into_iter().map(|n| format!("{}: {n}", r.space)));
        }
        out
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} over {}", self.name, self.space)?;
        for s in &self.stages {
            writeln!(f, "  {}: {}", s.label, s.count)?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        for c in &self.counterexamples {
            writeln!(f, "  counterexample [{}]: {} {}", c.check, c.detail, c.data)?;
        }
        write!(f, "{}", self.summary())
    }
}

fn require_prime(p: u64, allowed: &[u64], what: &str) -> Result<PrimeField> {
    if !allowed.contains(&p) {
        return Err(Error::Unsupported(format!(
            "{what} runs only for p in {allowed:?} (enumeration cost), got {p}"
        )));
    }
    PrimeField::new(p)
}

fn table_json<R: Ring>(t: &MultTable<R>) -> Value {
    serde_json::to_value(t.to_json()).expect("table serializes")
}

fn integer_table_from_index(bound: i64, idx: u64) -> MultTable<Integers> {
    let base = (2 * bound + 1) as u64;
    let mut d = [0i64; 6];
    let mut rest = idx;
    for v in d.iter_mut().rev() {
        *v = (rest % base) as i64 - bound;
        rest /= base;
    }
    MultTable::commutative_i64(Integers, [[d[0], d[1]], [d[2], d[3]], [d[4], d[5]]])
}

/// Checks that every associative commutative table with surjective
/// multiplication has a unit.
pub fn verify_unital_if_surjective(space: SearchSpace) -> Result<Report> {
    fn run<R: Ring>(space: SearchSpace, n: u64, table: impl Fn(u64) -> MultTable<R> + Sync) -> Report {
        let hits: Vec<(u64, bool)> = (0..n)
            .into_par_iter()
            .filter_map(|i| {
                let t = table(i);
                (t.is_associative() && t.is_multiplication_surjective()).then(|| (i, t.find_unit().is_some()))
            })
            .collect();
        let mut r = Report::new("thm1.2", space.to_string(), "tables", n);
        r.stage("associative and surjective", hits.len());
        r.stage("unital", hits.iter().filter(|h| h.1).count());
        r.counterexamples = hits
            .iter()
            .filter(|h| !h.1)
            .map(|&(i, _)| Counterexample {
                check: "unit".into(),
                detail: "associative with surjective multiplication but no unit".into(),
                data: table_json(&table(i)),
            })
            .collect();
        r
    }
    Ok(match space {
        SearchSpace::Field(f) => {
            require_prime(f.modulus(), &[2, 3, 5, 7], "the unitality check")?;
            run(space, f.modulus().pow(6), |i| table_from_index(&f, true, i))
        }
        SearchSpace::BoundedZ(b) => {
            if !(1..=3).contains(&b) {
                return Err(Error::Unsupported(format!("integer bound must be 1..=3, got {b}")));
            }
            run(space, (2 * b as u64 + 1).pow(6), |i| integer_table_from_index(b, i))
        }
    })
}

fn mult_tensor(t: &MultTable<PrimeField>) -> Vec<u64> {
    (0..2)
        .flat_map(|i| (0..2).flat_map(move |j| t.product(i, j).to_vec()))
        .collect()
}

fn comult_from_index(p: u64, idx: u64) -> Vec<u64> {
    let mut d = vec![0u64; 8];
    let mut rest = idx;
    for v in d.iter_mut().rev() {
        *v = rest % p;
        rest /= p;
    }
    d
}

fn frobenius(f: PrimeField, mult: Vec<u64>, comult: Vec<u64>) -> FrobeniusData<PrimeField> {
    FrobeniusData::new(f, 2, mult, comult, None, None).expect("rank-2 shapes")
}

/// Checks that a commutative associative surjective multiplication and a
/// cocommutative coassociative injective comultiplication satisfying the
/// Frobenius relation always come with a unit and a counit.
pub fn verify_frobenius_from_surjectivity(p: u64) -> Result<Report> {
    let f = require_prime(p, &[2, 3], "the Frobenius pair check")?;
    let zero = vec![0u64; 8];
    let mults: Vec<Vec<u64>> = (0..p.pow(6))
        .into_par_iter()
        .map(|i| table_from_index(&f, true, i))
        .filter(|t| t.is_associative() && t.is_multiplication_surjective())
        .map(|t| mult_tensor(&t))
        .collect();
    let comults: Vec<Vec<u64>> = (0..p.pow(8))
        .into_par_iter()
        .map(|i| comult_from_index(p, i))
        .filter(|d| {
            let a = frobenius(f, zero.clone(), d.clone()).check_axioms();
            a.coassociative && a.cocommutative && a.comult_injective
        })
        .collect();
    let pairs: Vec<(usize, usize)> = (0..mults.len())
        .flat_map(|i| (0..comults.len()).map(move |j| (i, j)))
        .collect();
    let survivors: Vec<FrobeniusData<PrimeField>> = pairs
        .par_iter()
        .map(|&(i, j)| frobenius(f, mults[i].clone(), comults[j].clone()))
        .filter(|fd| fd.check_axioms().frobenius_relation)
        .collect();

    let mut r = Report::new("thm1.1", format!("F_{p}"), "pairs", p.pow(6) * p.pow(8));
    r.stage("multiplications: commutative, associative, surjective", mults.len());
    r.stage(
        "comultiplications: cocommutative, coassociative, injective",
        comults.len(),
    );
    r.stage("pairs satisfying the Frobenius relation", survivors.len());
    for fd in &survivors {
        let (unit, counit) = (fd.find_unit(), fd.find_counit());
        if unit.is_none() || counit.is_none() {
            r.counterexamples.push(Counterexample {
                check: "unit and counit".into(),
                detail: format!("unit found: {}, counit found: {}", unit.is_some(), counit.is_some()),
                data: serde_json::to_value(fd.to_json()).expect("algebra serializes"),
            });
        }
    }
    r.stage("with unit and counit", survivors.len() - r.counterexamples.len());

    let k = a5(A5Params { h: 0, t: 0 }).change_ring(f);
    let k_mult = (0..8).map(|n| *k.mult(n / 4, n / 2 % 2, n % 2)).collect::<Vec<_>>();
    let k_comult = (0..8).map(|n| *k.comult(n / 4, n / 2 % 2, n % 2)).collect::<Vec<_>>();
    let present = survivors.iter().any(|fd| {
        (0..8).all(|n| {
            *fd.mult(n / 4, n / 2 % 2, n % 2) == k_mult[n] && *fd.comult(n / 4, n / 2 % 2, n % 2) == k_comult[n]
        })
    });
    if present {
        r.notes
            .push("x^2 = 0 with its standard comultiplication is among the surviving pairs".into());
    } else {
        r.counterexamples.push(Counterexample {
            check: "sanity".into(),
            detail: "x^2 = 0 with its standard comultiplication is missing from the survivors".into(),
            data: serde_json::to_value(k.to_json()).expect("algebra serializes"),
        });
    }
    Ok(r)
}

/// Associativity and unitality of a family member as the classification
/// states them, or `None` when no claim is made.
fn stated_behaviour(fam: &RepresentativeFamily, f: &PrimeField) -> Option<(bool, bool)> {
    use FamilyLabel::*;
    use ParamName::*;
    let v = |n: ParamName| fam.param(n).unwrap_or(0) % f.modulus();
    Some(match fam.label {
        M6 => {
            let ok = matches!((v(Alpha2), v(Beta2)), (0, 0) | (0, 1) | (1, 0));
            (ok, ok)
        }
        M7 | M8 | M11 | M15 | M16 | M8_1R | M14_1R | M14_2R => (false, false),
        M9 => (v(Beta2) <= 1, v(Beta2) == 1),
        M10 => (v(Alpha4) == 1, false),
        M12 | M13 | M14 | M17 => (true, false),
        M8_2R => (v(Beta2) == 1, v(Beta2) == 1),
        M11R => (v(Lambda2) == 0, false),
        M15_1R => {
            let (a2, b2) = (v(Alpha2), v(Beta2));
            let ok = v(Alpha4) == f.mul(&a2, &b2) && v(Beta4) == f.add(&a2, &f.mul(&b2, &b2));
            (ok, false)
        }
        _ => return None,
    })
}

/// Families whose printed table contradicts the printed claim: `m13` as
/// printed has `(e1 e1) e2 = 0` but `e1 (e1 e2) = e2`.
const MISPRINTED: [FamilyLabel; 1] = [FamilyLabel::M13];

/// Sweeps every odd-characteristic family over its parameter grid and
/// compares associativity and unitality with the stated conditions.
pub fn verify_family_conditions(p: u64) -> Result<Report> {
    let f = require_prime(p, &[3, 5], "the family sweep")?;
    let points: Vec<RepresentativeFamily> = FamilyLabel::ODD
        .iter()
        .flat_map(|&l| RepresentativeFamily::grid(l, &f))
        .collect();
    let checked: Vec<(RepresentativeFamily, bool, bool, bool, bool)> = points
        .par_iter()
        .filter(|fam| fam.side_conditions_hold(&f))
        .map(|fam| {
            let t = fam.instantiate_unchecked(&f).expect("odd characteristic");
            let (sa, su) = stated_behaviour(fam, &f).expect("odd families all carry a claim");
            (fam.clone(), t.is_associative(), t.find_unit().is_some(), sa, su)
        })
        .collect();
    let mut r = Report::new("prop3.4", format!("F_{p}"), "parameter points", points.len() as u64);
    r.stage("satisfying side conditions", checked.len());
    r.stage("associative", checked.iter().filter(|c| c.1).count());
    r.stage("unital", checked.iter().filter(|c| c.2).count());
    let mut misprinted = Vec::new();
    for (fam, assoc, unital, sa, su) in &checked {
        if (assoc, unital) == (sa, su) {
            continue;
        }
        if MISPRINTED.contains(&fam.label) {
            misprinted.push(fam.to_string());
            continue;
        }
        r.counterexamples.push(Counterexample {
            check: "associativity/unitality".into(),
            detail: format!("{fam}: associative {assoc} (stated {sa}), unital {unital} (stated {su})"),
            data: table_json(&fam.instantiate_unchecked(&f).expect("odd characteristic")),
        });
    }
    if !misprinted.is_empty() {
        r.notes.push(format!(
            "misprinted table, stated associative but is not: {}",
            misprinted.join(", ")
        ));
    }
    Ok(r)
}

/// Whether a characteristic-2 family is stated to be unital.
fn stated_unital_char2(label: FamilyLabel) -> bool {
    matches!(
        label,
        FamilyLabel::M2_1 | FamilyLabel::M2_3 | FamilyLabel::M2_4 | FamilyLabel::M2_5
    )
}

/// Classifies every associative commutative table over 𝔽₂ and checks the
/// unitality pattern of the classes.
pub fn verify_char2_classification() -> Result<Report> {
    let f = PrimeField::new(2)?;
    let classifier = Classifier::new(f);
    let mut r = Report::new("char2", "F_2".into(), "tables", 64);
    let tables: Vec<(u64, MultTable<PrimeField>)> = (0..64)
        .map(|i| (i, table_from_index(&f, true, i)))
        .filter(|(_, t)| t.is_associative())
        .collect();
    r.stage("associative", tables.len());
    let mut classes: Vec<String> = Vec::new();
    for (_, t) in &tables {
        match classifier.classify(t) {
            Ok((fam, _)) => {
                let unital = t.find_unit().is_some();
                if unital != stated_unital_char2(fam.label) {
                    r.counterexamples.push(Counterexample {
                        check: "unitality".into(),
                        detail: format!("classified as {fam} but unital = {unital}"),
                        data: table_json(t),
                    });
                }
                classes.push(fam.to_string());
            }
            Err(Error::ClassificationGap(msg)) => r.counterexamples.push(Counterexample {
                check: "classification".into(),
                detail: msg,
                data: table_json(t),
            }),
            Err(e) => return Err(e),
        }
    }
    r.stage("classified", classes.len());
    for (fam, t) in classifier.targets() {
        let unital = t.find_unit().is_some();
        if unital != stated_unital_char2(fam.label) {
            r.counterexamples.push(Counterexample {
                check: "unitality".into(),
                detail: format!("representative {fam} has unital = {unital}"),
                data: table_json(t),
            });
        }
    }
    classes.sort();
    classes.dedup();
    r.notes.push(format!("classes reached: {}", classes.join(", ")));
    Ok(r)
}

/// The two noncommutative targets, left and right.
pub fn noncommutative_targets(f: &PrimeField) -> Result<[MultTable<PrimeField>; 2]> {
    Ok([
        RepresentativeFamily::new(FamilyLabel::NcLeft, &[])?.instantiate(f)?,
        RepresentativeFamily::new(FamilyLabel::NcRight, &[])?.instantiate(f)?,
    ])
}

/// Checks that every associative surjective noncommutative table is
/// isomorphic to one of the two targets.
pub fn verify_noncommutative(p: u64) -> Result<Report> {
    let f = require_prime(p, &[2, 3], "the noncommutative check")?;
    let targets = noncommutative_targets(&f)?;
    let hits: Vec<(MultTable<PrimeField>, Option<usize>)> = (0..p.pow(8))
        .into_par_iter()
        .map(|i| table_from_index(&f, false, i))
        .filter(|t| !t.is_commutative() && t.is_associative_full() && t.is_multiplication_surjective())
        .map(|t| {
            let class = targets
                .iter()
                .position(|target| isomorphic(&t, target).expect("same field").is_some());
            (t, class)
        })
        .collect();
    let mut r = Report::new("noncomm", format!("F_{p}"), "tables", p.pow(8));
    r.stage("noncommutative, associative, surjective", hits.len());
    r.stage(
        "isomorphic to the left target",
        hits.iter().filter(|h| h.1 == Some(0)).count(),
    );
    r.stage(
        "isomorphic to the right target",
        hits.iter().filter(|h| h.1 == Some(1)).count(),
    );
    r.counterexamples = hits
        .iter()
        .filter(|h| h.1.is_none())
        .map(|(t, _)| Counterexample {
            check: "isomorphism".into(),
            detail: "matches neither target".into(),
            data: table_json(t),
        })
        .collect();
    let distinct = isomorphic(&targets[0], &targets[1])?.is_none();
    r.notes.push(format!(
        "the two targets are {}isomorphic",
        if distinct { "non-" } else { "" }
    ));
    Ok(r)
}

/// All comultiplications (flat `Δ(e_k) = Σ d[(k*2+i)*2+j] e_i ⊗ e_j`) that are
/// coassociative, cocommutative and satisfy the Frobenius relation with `m`.
pub fn search_nearly_frobenius(m: &MultTable<PrimeField>) -> Result<Vec<Vec<u64>>> {
    let f = *m.ring();
    let p = require_prime(f.modulus(), &[2, 3], "the comultiplication search")?.modulus();
    if !m.is_commutative() || !m.is_associative() {
        return Err(Error::Algebra(
            "multiplication must be commutative and associative".into(),
        ));
    }
    let mult = mult_tensor(m);
    Ok((0..p.pow(8))
        .into_par_iter()
        .map(|i| comult_from_index(p, i))
        .filter(|d| {
            let a = frobenius(f, mult.clone(), d.clone()).check_axioms();
            a.coassociative && a.cocommutative && a.frobenius_relation
        })
        .collect())
}

/// `serde_json` form of a report.
pub fn report_json(r: &Report) -> Value {
    json!(r)
}
