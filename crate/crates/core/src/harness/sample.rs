//! Random simplex points, lines and collinear pairs for the sampled checks.

use rand::seq::index;
use rand::Rng;

use crate::gf::{Fe, FieldSpec};
use crate::monomial::MonomialMap;
use crate::projgeom::{FVec, PLine, PPoint};
use crate::simplex;

pub(crate) fn point<R: Rng + ?Sized>(f: &FieldSpec, rng: &mut R) -> PPoint {
    let n = f.order() + 1;
    let zero = rng.random_range(0..n);
    let v = (0..n)
        .map(|i| {
            if i == zero {
                Fe::ZERO
            } else {
                Fe(rng.random_range(1..f.q()) as u8)
            }
        })
        .collect();
    PPoint::new(f, FVec(v)).expect("non-zero")
}

/// A uniformly random simplex line: the image of the standard line under a
/// random monomial map (all simplex codes of dimension 2 are monomially
/// equivalent).
pub(crate) fn line<R: Rng + ?Sized>(f: &FieldSpec, rng: &mut R) -> PLine {
    MonomialMap::random(f, f.order() + 1, rng).apply_line(f, &simplex::standard_line(f))
}

/// `k` distinct points of `l`, in increasing position order.
pub(crate) fn points_on<R: Rng + ?Sized>(
    f: &FieldSpec,
    l: &PLine,
    k: usize,
    rng: &mut R,
) -> Vec<PPoint> {
    let pts = l.points(f);
    let mut pos = index::sample(rng, pts.len(), k).into_vec();
    pos.sort_unstable();
    pos.into_iter().map(|i| pts[i].clone()).collect()
}

pub(crate) fn collinear_pair<R: Rng + ?Sized>(f: &FieldSpec, rng: &mut R) -> (PPoint, PPoint) {
    let l = line(f, rng);
    let mut p = points_on(f, &l, 2, rng);
    let b = p.pop().unwrap();
    (p.pop().unwrap(), b)
}
