//! Kauffman bracket by direct state summation.

use super::{resolve, LinkDiagram, State};
use crate::poly::LaurentPoly;

/// `Σ_s A^{#0 − #1} δ^{#circles − 1}` with `δ = −A² − A⁻²`.
///
/// Enumerates states itself rather than going through the cube, so it can
/// serve as an independent check on the chain complex.
pub fn kauffman_bracket(d: &LinkDiagram) -> LaurentPoly {
    let n = d.crossing_count();
    let mut delta = LaurentPoly::monomial('A', -1, 2);
    delta.add_term(-1, -2);
    let mut total = LaurentPoly::zero('A');
    for idx in 0..1usize << n {
        let s = State::from_index(n, idx);
        let ones = s.weight() as i64;
        let circles = resolve(d, &s).expect("state length matches").len();
        let term = LaurentPoly::monomial('A', 1, n as i64 - 2 * ones);
        total = &total + &(&term * &delta.pow(circles as u32 - 1));
    }
    total
}
