//! Named test diagrams and the second Reidemeister move.

use super::{parse_pd, LinkDiagram, Occurrence};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Hand {
    Left,
    Right,
}

fn pd(text: &str) -> LinkDiagram {
    parse_pd(text).expect("built-in diagram is valid")
}

/// A single crossingless circle.
pub fn unknot_0() -> LinkDiagram {
    pd("LOOP 1")
}

/// A one-crossing unknot whose crossing has the given sign.
pub fn unknot_1kink(positive: bool) -> LinkDiagram {
    pd(if positive { "X 1 1 2 2" } else { "X 1 2 2 1" })
}

/// The two-crossing Hopf link with both crossings of the given sign.
pub fn hopf(positive: bool) -> LinkDiagram {
    pd(if positive {
        "X 1 3 2 4 / X 3 1 4 2"
    } else {
        "X 4 1 3 2 / X 2 3 1 4"
    })
}

/// The three-crossing trefoil; the left-handed one has negative crossings.
pub fn trefoil(hand: Hand) -> LinkDiagram {
    pd(match hand {
        Hand::Left => "X 1 4 2 5 / X 3 6 4 1 / X 5 2 6 3",
        Hand::Right => "X 4 2 5 1 / X 6 4 1 3 / X 2 6 3 5",
    })
}

/// Two circles, one pushed across the other by a second Reidemeister move.
pub fn figure10_d1() -> LinkDiagram {
    pd("X 4 1 3 2 / X 3 1 4 2\nSIGNS - +")
}

/// Two disjoint crossingless circles.
pub fn figure10_d2() -> LinkDiagram {
    pd("LOOP 1\nLOOP 2")
}

const NAMES: [&str; 11] = [
    "unknot_0",
    "unknot_1kink",
    "unknot_1kink_neg",
    "hopf",
    "hopf_neg",
    "trefoil",
    "trefoil_right",
    "figure10_d1",
    "figure10_d2",
    "unlink_2",
    "rii_unlink",
];

pub fn builder_names() -> &'static [&'static str] {
    &NAMES
}

/// Looks up a named diagram (`hopf` is the positive Hopf link, `trefoil` the
/// left-handed one).
pub fn builder(name: &str) -> Result<LinkDiagram> {
    Ok(match name {
        "unknot_0" => unknot_0(),
        "unknot_1kink" => unknot_1kink(true),
        "unknot_1kink_neg" => unknot_1kink(false),
        "hopf" => hopf(true),
        "hopf_neg" => hopf(false),
        "trefoil" => trefoil(Hand::Left),
        "trefoil_right" => trefoil(Hand::Right),
        "figure10_d1" | "rii_unlink" => figure10_d1(),
        "figure10_d2" | "unlink_2" => figure10_d2(),
        _ => {
            return Err(Error::Diagram(format!(
                "unknown builder {name:?}; known: {}",
                NAMES.join(", ")
            )))
        }
    })
}

/// Where to perform a second Reidemeister move: arc `over` is pushed across
/// arc `under`, which must border a common face.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RiiSite {
    pub over: usize,
    pub under: usize,
}

/// Returns `(base, moved)`, where `moved` has two extra crossings: arc
/// `site.over` is pushed across `site.under` through a face they share.
///
/// Orientation data carries over: existing crossings keep their signs and
/// the new ones are inferred.
pub fn rii_pair(base: &LinkDiagram, site: RiiSite) -> Result<(LinkDiagram, LinkDiagram)> {
    let RiiSite { over: x, under: y } = site;
    let bad = |msg: String| Err(Error::Diagram(format!("invalid RII site ({x}, {y}): {msg}")));
    if x == y {
        return bad("arcs must differ".into());
    }
    for arc in [x, y] {
        if base.occurrences(arc).len() != 2 {
            return bad(format!("arc {arc} does not run between crossings"));
        }
    }
    // A face traversal runs along each boundary arc with the face on its
    // right, from the slot after a corner to the far end of the arc.
    let mut found = None;
    'faces: for face in base.faces() {
        let mut x_run = None;
        let mut y_run = None;
        for &(c, p) in &face {
            let start: Occurrence = (c, (p + 1) % 4);
            let arc = base.crossings()[c][start.1];
            // the far end, where x (resp. y) gets its new label
            let end = base.other_end(start);
            if arc == x && x_run.is_none() {
                x_run = Some(end);
            }
            if arc == y && y_run.is_none() {
                y_run = Some(end);
            }
        }
        if let (Some(xr), Some(yr)) = (x_run, y_run) {
            found = Some((xr, yr));
            break 'faces;
        }
    }
    let Some((x1, y1)) = found else {
        return bad("arcs share no face".into());
    };

    let n = base.arc_count();
    let (x2, x3, y2, y3) = (n + 1, n + 2, n + 3, n + 4);
    let mut crossings = base.crossings().to_vec();
    // x keeps its label from x0 up to the first new crossing; y likewise from y0
    crossings[x1.0][x1.1] = x3;
    crossings[y1.0][y1.1] = y3;
    crossings.push([y2, x, y3, x2]);
    crossings.push([y, x3, y2, x2]);

    let mut signs: Vec<Option<i8>> = match base.signs() {
        Ok(s) => s.into_iter().map(Some).collect(),
        Err(_) => vec![None; base.crossing_count()],
    };
    signs.extend([None, None]);
    let mut moved = LinkDiagram::new(crossings, base.loops().to_vec(), &[], None)?;
    for (c, s) in signs.iter().enumerate() {
        if let Some(s) = s {
            moved.set_enters((c, 1), *s < 0)?;
        }
    }
    moved.propagate()?;
    Ok((base.clone(), moved))
}
