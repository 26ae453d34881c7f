//! Link diagrams as planar-diagram (PD) codes.
//!
//! Each crossing is a quadruple `(a, b, c, d)` of arc labels listed
//! counterclockwise starting from the incoming under-strand, so `a` ends at
//! the crossing and `c` starts there. The 0-smoothing joins `a–b` and `c–d`;
//! the 1-smoothing joins `a–d` and `b–c`.
//!
//! File format, one item per line (`/` also separates items, `#` starts a
//! comment):
//!
//! ```text
//! X a b c d        crossing
//! LOOP a           crossingless component made of arc a
//! ORIENT a b c ... arcs of one component in the order they are traversed
//! SIGNS + - ...    crossing signs, one per crossing, in file order
//! ```
//!
//! Orientations are inferred from the under-strands where possible; `ORIENT`
//! and `SIGNS` resolve components that only ever pass over.

mod bracket;
mod builders;
mod cube;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};

pub use bracket::kauffman_bracket;
pub use builders::{
    builder, builder_names, figure10_d1, figure10_d2, hopf, rii_pair, trefoil, unknot_0, unknot_1kink, Hand, RiiSite,
};
pub use cube::{build_cube, resolve, sign_exponent, CubeEdge, ResolutionCube, Saddle, State};

/// A crossing position: `(crossing index, slot 0..4)`.
pub type Occurrence = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDiagram {
    crossings: Vec<[usize; 4]>,
    loops: Vec<usize>,
    arc_count: usize,
    /// Per crossing: whether the over-strand enters at slot `b`. Fully
    /// known exactly when the diagram is oriented.
    over_enters_at_b: Vec<Option<bool>>,
}

impl LinkDiagram {
    /// Validates labels and infers as much orientation as the data allows.
    ///
    /// `orient` lists arc sequences of components; `signs` (±1 per crossing)
    /// fixes orientations outright.
    pub fn new(
        crossings: Vec<[usize; 4]>,
        loops: Vec<usize>,
        orient: &[Vec<usize>],
        signs: Option<&[i8]>,
    ) -> Result<Self> {
        if crossings.is_empty() && loops.is_empty() {
            return Err(Error::Diagram("diagram has no crossings and no loops".into()));
        }
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for &l in crossings.iter().flatten().chain(loops.iter()) {
            if l == 0 {
                return Err(Error::Diagram("arc labels start at 1".into()));
            }
            *counts.entry(l).or_default() += 1;
        }
        let arc_count = *counts.keys().next_back().expect("nonempty");
        if counts.len() != arc_count {
            let missing = (1..=arc_count).find(|l| !counts.contains_key(l)).expect("gap exists");
            return Err(Error::Diagram(format!(
                "arc label {missing} is missing (labels must be 1..{arc_count})"
            )));
        }
        for &l in &loops {
            if counts[&l] != 1 {
                return Err(Error::Diagram(format!("loop arc {l} must not appear elsewhere")));
            }
        }
        for (&l, &c) in &counts {
            if !loops.contains(&l) && c != 2 {
                return Err(Error::Diagram(format!(
                    "arc {l} appears {c} time(s); every arc needs exactly 2 ends"
                )));
            }
        }
        let mut d = LinkDiagram {
            over_enters_at_b: vec![None; crossings.len()],
            crossings,
            loops,
            arc_count,
        };
        if let Some(signs) = signs {
            if signs.len() != d.crossings.len() {
                return Err(Error::Diagram(format!(
                    "SIGNS lists {} signs for {} crossings",
                    signs.len(),
                    d.crossings.len()
                )));
            }
            for (c, &s) in signs.iter().enumerate() {
                d.over_enters_at_b[c] = Some(s < 0);
            }
        }
        d.propagate()?;
        for seq in orient {
            d.apply_orient(seq)?;
        }
        Ok(d)
    }

    pub fn crossings(&self) -> &[[usize; 4]] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn loops(&self) -> &[usize] {
        &self.loops
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    /// The two crossing slots where an arc ends (empty for loop arcs).
    pub fn occurrences(&self, arc: usize) -> Vec<Occurrence> {
        let mut out = Vec::with_capacity(2);
        for (c, q) in self.crossings.iter().enumerate() {
            for (p, &l) in q.iter().enumerate() {
                if l == arc {
                    out.push((c, p));
                }
            }
        }
        out
    }

    fn other_end(&self, o: Occurrence) -> Occurrence {
        let arc = self.crossings[o.0][o.1];
        self.occurrences(arc)
            .into_iter()
            .find(|&x| x != o)
            .expect("arcs have two ends")
    }

    /// Whether the arc at this slot points into the crossing.
    fn enters(&self, (c, p): Occurrence) -> Option<bool> {
        match p {
            0 => Some(true),
            2 => Some(false),
            1 => self.over_enters_at_b[c],
            _ => self.over_enters_at_b[c].map(|b| !b),
        }
    }

    fn set_enters(&mut self, (c, p): Occurrence, value: bool) -> Result<bool> {
        if let Some(cur) = self.enters((c, p)) {
            if cur != value {
                return Err(Error::Unoriented(format!(
                    "inconsistent orientation at crossing {}",
                    c + 1
                )));
            }
            return Ok(false);
        }
        self.over_enters_at_b[c] = Some(if p == 1 { value } else { !value });
        Ok(true)
    }

    /// Every arc leaves one crossing and enters the next.
    fn propagate(&mut self) -> Result<()> {
        loop {
            let mut changed = false;
            for arc in 1..=self.arc_count {
                let occ = self.occurrences(arc);
                if occ.len() != 2 {
                    continue;
                }
                match (self.enters(occ[0]), self.enters(occ[1])) {
                    (Some(x), Some(y)) if x == y => {
                        return Err(Error::Unoriented(format!("arc {arc} cannot be oriented consistently")));
                    }
                    (Some(x), None) => changed |= self.set_enters(occ[1], !x)?,
                    (None, Some(y)) => changed |= self.set_enters(occ[0], !y)?,
                    _ => {}
                }
            }
            if !changed {
                return Ok(());
            }
        }
    }

    fn apply_orient(&mut self, seq: &[usize]) -> Result<()> {
        for &l in seq {
            if l == 0 || l > self.arc_count {
                return Err(Error::Diagram(format!("ORIENT names unknown arc {l}")));
            }
        }
        for w in 0..seq.len() {
            let (x, y) = (seq[w], seq[(w + 1) % seq.len()]);
            let candidates: Vec<Occurrence> = self
                .occurrences(x)
                .into_iter()
                .filter(|&(c, p)| self.crossings[c][(p + 2) % 4] == y && self.enters((c, p)) != Some(false))
                .collect();
            if let [only] = candidates[..] {
                self.set_enters(only, true)?;
                self.propagate()?;
            }
        }
        Ok(())
    }

    pub fn is_oriented(&self) -> bool {
        self.over_enters_at_b.iter().all(Option::is_some)
    }

    /// Crossing signs (+1 / −1), when the diagram is oriented. The over-strand
    /// running from `d` to `b` makes a positive crossing.
    pub fn signs(&self) -> Result<Vec<i8>> {
        self.over_enters_at_b
            .iter()
            .enumerate()
            .map(|(c, s)| {
                s.map(|b| if b { -1 } else { 1 }).ok_or_else(|| {
                    Error::Unoriented(format!(
                        "orientation at crossing {} is undetermined; add an ORIENT or SIGNS line",
                        c + 1
                    ))
                })
            })
            .collect()
    }

    pub fn n_plus(&self) -> Result<usize> {
        Ok(self.signs()?.iter().filter(|&&s| s > 0).count())
    }

    pub fn n_minus(&self) -> Result<usize> {
        Ok(self.signs()?.iter().filter(|&&s| s < 0).count())
    }

    pub fn writhe(&self) -> Result<i64> {
        Ok(self.signs()?.iter().map(|&s| i64::from(s)).sum())
    }

    /// Number of link components (arcs joined through crossings along strands).
    pub fn component_count(&self) -> usize {
        let mut uf = petgraph::unionfind::UnionFind::<usize>::new(self.arc_count + 1);
        for q in &self.crossings {
            uf.union(q[0], q[2]);
            uf.union(q[1], q[3]);
        }
        let mut roots: Vec<usize> = (1..=self.arc_count).map(|l| uf.find(l)).collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }

    /// The same diagram with crossings reordered: crossing `perm[i]` of the
    /// result is crossing `i` of `self`.
    pub fn permute_crossings(&self, perm: &[usize]) -> Result<Self> {
        let n = self.crossings.len();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::Diagram("not a permutation of the crossings".into()));
        }
        let mut crossings = vec![[0; 4]; n];
        let mut over = vec![None; n];
        for (i, &p) in perm.iter().enumerate() {
            crossings[p] = self.crossings[i];
            over[p] = self.over_enters_at_b[i];
        }
        Ok(LinkDiagram {
            crossings,
            over_enters_at_b: over,
            ..self.clone()
        })
    }

    /// Adds a crossingless circle with a fresh label.
    pub fn with_extra_circle(&self) -> Self {
        let mut d = self.clone();
        d.arc_count += 1;
        d.loops.push(d.arc_count);
        d
    }

    /// Serializes to the PD file format; includes a `SIGNS` line when oriented.
    pub fn to_pd_string(&self) -> String {
        let mut s = String::new();
        for q in &self.crossings {
            writeln!(s, "X {} {} {} {}", q[0], q[1], q[2], q[3]).expect("string write");
        }
        for l in &self.loops {
            writeln!(s, "LOOP {l}").expect("string write");
        }
        if !self.crossings.is_empty() {
            if let Ok(signs) = self.signs() {
                let v: Vec<&str> = signs.iter().map(|&x| if x > 0 { "+" } else { "-" }).collect();
                writeln!(s, "SIGNS {}", v.join(" ")).expect("string write");
            }
        }
        s
    }

    /// Faces of the planar graph as cyclic lists of corners `(crossing, slot)`;
    /// a corner `(c, p)` sits between slots `p` and `p + 1`.
    pub(crate) fn faces(&self) -> Vec<Vec<Occurrence>> {
        let n = self.crossings.len();
        let mut seen = vec![[false; 4]; n];
        let mut faces = Vec::new();
        for c in 0..n {
            for p in 0..4 {
                if seen[c][p] {
                    continue;
                }
                let mut face = Vec::new();
                let mut cur = (c, p);
                while !seen[cur.0][cur.1] {
                    seen[cur.0][cur.1] = true;
                    face.push(cur);
                    let (c2, q) = self.other_end((cur.0, (cur.1 + 1) % 4));
                    cur = (c2, q);
                }
                faces.push(face);
            }
        }
        faces
    }
}

/// Parses the PD file format described in the module docs.
pub fn parse_pd(text: &str) -> Result<LinkDiagram> {
    let mut crossings = Vec::new();
    let mut loops = Vec::new();
    let mut orient = Vec::new();
    let mut signs: Option<Vec<i8>> = None;
    let items = text.lines().flat_map(|l| {
        let l = l.split('#').next().unwrap_or("");
        l.split('/').map(str::trim).collect::<Vec<_>>()
    });
    for item in items.filter(|s| !s.is_empty()) {
        let mut words = item.split_whitespace();
        let head = words.next().expect("nonempty item");
        let rest: Vec<&str> = words.collect();
        let labels = || -> Result<Vec<usize>> {
            rest.iter()
                .map(|w| {
                    w.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad arc label {w:?} in {item:?}")))
                })
                .collect()
        };
        match head {
            "X" => {
                let v = labels()?;
                let q: [usize; 4] = v
                    .try_into()
                    .map_err(|_| Error::Parse(format!("crossing needs 4 labels: {item:?}")))?;
                crossings.push(q);
            }
            "LOOP" => {
                let v = labels()?;
                if v.len() != 1 {
                    return Err(Error::Parse(format!("LOOP takes one label: {item:?}")));
                }
                loops.push(v[0]);
            }
            "ORIENT" => orient.push(labels()?),
            "SIGNS" => {
                let v = rest
                    .iter()
                    .map(|w| match *w {
                        "+" | "+1" => Ok(1),
                        "-" | "-1" => Ok(-1),
                        _ => Err(Error::Parse(format!("bad sign {w:?}"))),
                    })
                    .collect::<Result<Vec<i8>>>()?;
                if signs.replace(v).is_some() {
                    return Err(Error::Parse("only one SIGNS line is allowed".into()));
                }
            }
            _ => return Err(Error::Parse(format!("unrecognized line {item:?}"))),
        }
    }
    LinkDiagram::new(crossings, loops, &orient, signs.as_deref())
}
