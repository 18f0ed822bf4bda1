//! Character-twisted classes of the two kinds of strata the builders produce:
//! tori carrying a monomial, and punctured projective lines carrying a
//! rational function.

use num_traits::Zero;

use super::StrataError;
use crate::kgroup::{int, Character};
use crate::EPoly;

/// Twisted class of a torus stratum (possibly times affine factors) on which
/// the unit part of `f` is a monomial with the given exponents: the class
/// itself when every exponent is divisible by the order of `alpha`, zero
/// otherwise.
pub fn twisted_class_torus(class: &EPoly, exponents: &[i64], alpha: Character) -> EPoly {
    let d = alpha.order() as i64;
    if exponents.iter().all(|e| e.rem_euclid(d) == 0) {
        class.clone()
    } else {
        EPoly::zero()
    }
}

/// Class of the `alpha`-eigenpart of the cyclic cover `w^d = u` of a
/// projective line minus `k` punctures, where `u` has order `e_j` at the
/// `j`-th puncture.
///
/// Writing `<r>` for the fractional part, the eigenpart is `L + 1 - k` when
/// all `e_j gamma` are integers, and otherwise `-(a u + b v + c)` with
///
/// ```text
/// a = -1 + sum_j <-e_j gamma>,   b = -1 + sum_j <e_j gamma>,
/// c = #{ j : e_j gamma integral }.
/// ```
///
/// The first two are the Hodge numbers `h^{1,0}`, `h^{0,1}` of the rank one
/// local system with local monodromies `exp(2 pi i e_j gamma)`; the `c`
/// punctures with trivial monodromy each remove a point of weight zero.
pub fn cover_eigenclass_p1(exponents: &[i64], alpha: Character) -> Result<EPoly, StrataError> {
    let d = alpha.order();
    let sum: i64 = exponents.iter().sum();
    if sum.rem_euclid(d as i64) != 0 {
        return Err(StrataError::DegreeMismatch { sum, order: d });
    }
    let k = exponents.len() as i64;
    let residues: Vec<u64> = exponents.iter().map(|&e| alpha.scaled_residue(e)).collect();
    if residues.iter().all(|&r| r == 0) {
        return Ok(EPoly::lefschetz() + int(1 - k));
    }
    let pos: u64 = residues.iter().sum();
    let neg: u64 = residues.iter().filter(|&&r| r != 0).map(|&r| d - r).sum();
    let c = residues.iter().filter(|&&r| r == 0).count() as i64;
    let a = neg as i64 / d as i64 - 1;
    let b = pos as i64 / d as i64 - 1;
    Ok(-(int(a) * EPoly::u() + int(b) * EPoly::v() + int(c)))
}
