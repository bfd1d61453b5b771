//! Monomial linear automorphisms `x ↦ (a₁x_{σ(1)}, …, aₙx_{σ(n)})`.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{Fe, FieldSpec};
use crate::graph::{classify_lines, Clique};
use crate::projgeom::{FVec, PLine, PPoint};
use crate::simplex;

/// Output coordinate `i` reads input coordinate `sigma[i]` and scales it by
/// `scalars[i]`. `sigma` is stored 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialMap {
    sigma: Vec<usize>,
    scalars: Vec<Fe>,
}

/// Report form: one-line permutation notation (1-based) and scalar indices.
#[derive(Clone, Debug, Serialize)]
pub struct MapRecord {
    pub scalars: Vec<u8>,
    pub sigma: Vec<usize>,
}

impl MonomialMap {
    pub fn identity(n: usize) -> Self {
        MonomialMap {
            sigma: (0..n).collect(),
            scalars: vec![Fe::ONE; n],
        }
    }

    pub fn new(sigma: Vec<usize>, scalars: Vec<Fe>) -> Result<Self> {
        let n = sigma.len();
        if scalars.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: scalars.len(),
            });
        }
        let mut seen = vec![false; n];
        for &s in &sigma {
            if s >= n || std::mem::replace(&mut seen[s], true) {
                return Err(Error::Verification(format!(
                    "{sigma:?} is not a permutation"
                )));
            }
        }
        if scalars.iter().any(|a| a.is_zero()) {
            return Err(Error::Verification(
                "monomial scalars must be non-zero".into(),
            ));
        }
        Ok(MonomialMap { sigma, scalars })
    }

    /// Builds a map from 1-based permutation notation and scalar indices.
    pub fn from_one_line(f: &FieldSpec, sigma: &[usize], scalars: &[u32]) -> Result<Self> {
        let sigma = sigma
            .iter()
            .map(|&s| {
                s.checked_sub(1)
                    .ok_or_else(|| Error::Verification("sigma is 1-based".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let scalars = scalars
            .iter()
            .map(|&a| f.elem(a))
            .collect::<Result<Vec<_>>>()?;
        MonomialMap::new(sigma, scalars)
    }

    pub fn random<R: Rng + ?Sized>(f: &FieldSpec, n: usize, rng: &mut R) -> Self {
        let mut sigma: Vec<usize> = (0..n).collect();
        sigma.shuffle(rng);
        let scalars = (0..n)
            .map(|_| Fe(rng.random_range(1..f.q()) as u8))
            .collect();
        MonomialMap { sigma, scalars }
    }

    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn scalars(&self) -> &[Fe] {
        &self.scalars
    }

    pub fn record(&self) -> MapRecord {
        MapRecord {
            sigma: self.sigma.iter().map(|s| s + 1).collect(),
            scalars: self.scalars.iter().map(|a| a.0).collect(),
        }
    }

    pub fn apply(&self, f: &FieldSpec, x: &FVec) -> FVec {
        FVec(
            self.sigma
                .iter()
                .zip(&self.scalars)
                .map(|(&s, &a)| f.mul(a, x.0[s]))
                .collect(),
        )
    }

    pub fn apply_point(&self, f: &FieldSpec, p: &PPoint) -> PPoint {
        PPoint::new(f, self.apply(f, p.rep())).expect("invertible")
    }

    pub fn apply_line(&self, f: &FieldSpec, l: &PLine) -> PLine {
        let [a, b] = l.rows();
        PLine::from_rows(f, &self.apply(f, a), &self.apply(f, b)).expect("invertible")
    }

    pub fn apply_clique(&self, f: &FieldSpec, c: &Clique) -> Result<Clique> {
        classify_lines(f, c.lines().iter().map(|l| self.apply_line(f, l)).collect())
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, f: &FieldSpec, other: &MonomialMap) -> MonomialMap {
        // (self∘other)(x)_i = a_i · b_{σ(i)} · x_{τ(σ(i))}
        let sigma = self.sigma.iter().map(|&s| other.sigma[s]).collect();
        let scalars = self
            .sigma
            .iter()
            .zip(&self.scalars)
            .map(|(&s, &a)| f.mul(a, other.scalars[s]))
            .collect();
        MonomialMap { sigma, scalars }
    }

    pub fn inverse(&self, f: &FieldSpec) -> MonomialMap {
        let n = self.len();
        let mut sigma = vec![0; n];
        let mut scalars = vec![Fe::ONE; n];
        for (i, &s) in self.sigma.iter().enumerate() {
            sigma[s] = i;
            scalars[s] = f.inv_scalar(self.scalars[i]);
        }
        MonomialMap { sigma, scalars }
    }

    /// The map `l′` with `I∘l = l′∘I`: same permutation, inverted scalars.
    pub fn conjugate_by_inversion(&self, f: &FieldSpec) -> MonomialMap {
        MonomialMap {
            sigma: self.sigma.clone(),
            scalars: self.scalars.iter().map(|&a| f.inv_scalar(a)).collect(),
        }
    }
}

/// Rescales representatives of three distinct points on one line to `x`, `y`
/// with `P1 = ⟨x⟩`, `P2 = ⟨y⟩`, `P3 = ⟨x + y⟩`.
fn frame_basis(f: &FieldSpec, l: &PLine, pts: [&PPoint; 3]) -> Result<(FVec, FVec)> {
    let [p1, p2, p3] = pts;
    if p1 == p2 || p1 == p3 || p2 == p3 {
        return Err(Error::CoincidentPoints);
    }
    if pts.iter().any(|p| !l.contains(f, p)) {
        return Err(Error::PointNotOnLine);
    }
    let (u, v, w) = (p1.rep(), p2.rep(), p3.rep());
    let n = u.len();
    let (i, j, det) = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| (i, j, f.sub(f.mul(u.0[i], v.0[j]), f.mul(u.0[j], v.0[i]))))
        .find(|t| !t.2.is_zero())
        .expect("distinct points have independent representatives");
    let lambda = f.div(f.sub(f.mul(w.0[i], v.0[j]), f.mul(w.0[j], v.0[i])), det);
    let mu = f.div(f.sub(f.mul(u.0[i], w.0[j]), f.mul(u.0[j], w.0[i])), det);
    let x = u.scale(f, lambda);
    let y = v.scale(f, mu);
    debug_assert_eq!(x.add(f, &y), *w);
    Ok((x, y))
}

/// A monomial map sending `Pi ↦ P′i` (and so `L ↦ L′`), obtained by matching the
/// columns of the two frame-normalized generator matrices.
pub fn frame_map(
    f: &FieldSpec,
    l: &PLine,
    pts: [&PPoint; 3],
    l2: &PLine,
    pts2: [&PPoint; 3],
) -> Result<MonomialMap> {
    if !simplex::is_simplex_line(f, l) || !simplex::is_simplex_line(f, l2) {
        return Err(Error::NotSimplexLine);
    }
    let (x, y) = frame_basis(f, l, pts)?;
    let (x2, y2) = frame_basis(f, l2, pts2)?;
    let n = x.len();
    // source column with each projective class
    let mut by_class = vec![usize::MAX; f.order() + 1];
    for j in 0..n {
        by_class[column_class(f, x.0[j], y.0[j])] = j;
    }
    let mut sigma = Vec::with_capacity(n);
    let mut scalars = Vec::with_capacity(n);
    for i in 0..n {
        let j = by_class[column_class(f, x2.0[i], y2.0[i])];
        let a = if !x.0[j].is_zero() {
            f.div(x2.0[i], x.0[j])
        } else {
            f.div(y2.0[i], y.0[j])
        };
        sigma.push(j);
        scalars.push(a);
    }
    MonomialMap::new(sigma, scalars)
}

fn column_class(f: &FieldSpec, a: Fe, b: Fe) -> usize {
    if a.is_zero() {
        f.order()
    } else {
        f.div(b, a).idx()
    }
}

/// A map sending simplex point `p` to simplex point `p2`; it carries the star
/// of `p` onto the star of `p2`.
pub fn map_between_stars(f: &FieldSpec, p: &PPoint, p2: &PPoint) -> Result<MonomialMap> {
    if !simplex::is_simplex_point(f, p) || !simplex::is_simplex_point(f, p2) {
        return Err(Error::NotSimplexPoint);
    }
    let (x, x2) = (p.rep(), p2.rep());
    let n = x.len();
    let z = x.0.iter().position(|a| a.is_zero()).unwrap();
    let z2 = x2.0.iter().position(|a| a.is_zero()).unwrap();
    let mut src = (0..n).filter(|&j| j != z);
    let mut sigma = vec![0; n];
    let mut scalars = vec![Fe::ONE; n];
    for i in 0..n {
        if i == z2 {
            sigma[i] = z;
        } else {
            let j = src.next().unwrap();
            sigma[i] = j;
            scalars[i] = f.div(x2.0[i], x.0[j]);
        }
    }
    MonomialMap::new(sigma, scalars)
}

/// For each line of a 4-line top, the points where the other lines meet it.
fn line_frames(f: &FieldSpec, c: &Clique) -> Vec<(PLine, [PPoint; 3])> {
    c.lines()
        .iter()
        .map(|l| {
            let meets: Vec<PPoint> = c
                .lines()
                .iter()
                .filter(|m| *m != l)
                .map(|m| l.meet(f, m).expect("clique lines meet"))
                .collect();
            (
                l.clone(),
                [meets[0].clone(), meets[1].clone(), meets[2].clone()],
            )
        })
        .collect()
}

const PERMS3: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// A map carrying top `t1` onto top `t2` (q = 5), found by trying frame maps
/// between their lines and intersection triples.
pub fn map_between_tops(f: &FieldSpec, t1: &Clique, t2: &Clique) -> Result<MonomialMap> {
    if f.q() != 5 {
        return Err(Error::WrongOrder {
            expected: 5,
            actual: f.q(),
        });
    }
    for t in [t1, t2] {
        if t.len() != 4 || !t.has_triangle() {
            return Err(Error::Verification("expected a 4-line top".into()));
        }
    }
    let frames1 = line_frames(f, t1);
    let frames2 = line_frames(f, t2);
    for (l, tr) in &frames1 {
        for (l2, tr2) in &frames2 {
            for p in PERMS3 {
                for p2 in PERMS3 {
                    let m = frame_map(
                        f,
                        l,
                        [&tr[p[0]], &tr[p[1]], &tr[p[2]]],
                        l2,
                        [&tr2[p2[0]], &tr2[p2[1]], &tr2[p2[2]]],
                    )?;
                    let mut image: Vec<PLine> =
                        t1.lines().iter().map(|x| m.apply_line(f, x)).collect();
                    image.sort();
                    if image == t2.lines() {
                        return Ok(m);
                    }
                }
            }
        }
    }
    Err(Error::Verification(
        "no monomial map carries the first top onto the second".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{top_from_triple, GammaGraph};
    use rand::SeedableRng;

    fn gf(q: u32) -> FieldSpec {
        FieldSpec::new(q).unwrap()
    }

    fn pt(f: &FieldSpec, c: &[u32]) -> PPoint {
        PPoint::from_indices(f, c).unwrap()
    }

    fn rotation_map(f: &FieldSpec) -> MonomialMap {
        // (t1, 2t2, 2t6, 2t3, 2t4, 2t5)
        MonomialMap::from_one_line(f, &[1, 2, 6, 3, 4, 5], &[1, 2, 2, 2, 2, 2]).unwrap()
    }

    #[test]
    fn rotation_map_convention() {
        let f = gf(5);
        let l = rotation_map(&f);
        let t = FVec::from_indices(&f, &[1, 2, 3, 4, 0, 1]).unwrap();
        // t1, 2t2, 2t6, 2t3, 2t4, 2t5
        assert_eq!(l.apply(&f, &t).indices(), vec![1, 4, 2, 1, 3, 0]);

        let p1 = pt(&f, &[0, 1, 1, 1, 1, 1]);
        let p2 = pt(&f, &[1, 0, 1, 2, 4, 3]);
        assert_eq!(l.apply_point(&f, &p1), p1);
        assert_eq!(l.apply_point(&f, &p2), p2);

        let ps: Vec<PPoint> = [
            [1, 4, 0, 1, 3, 2],
            [1, 3, 4, 0, 2, 1],
            [1, 1, 2, 3, 0, 4],
            [1, 2, 3, 4, 1, 0],
        ]
        .iter()
        .map(|c| pt(&f, c))
        .collect();
        let qs: Vec<PPoint> = [
            [1, 4, 0, 3, 2, 1],
            [1, 3, 2, 0, 1, 4],
            [1, 1, 3, 4, 0, 2],
            [1, 2, 4, 1, 3, 0],
        ]
        .iter()
        .map(|c| pt(&f, c))
        .collect();
        for cyc in [&ps, &qs] {
            for i in 0..4 {
                assert_eq!(l.apply_point(&f, &cyc[i]), cyc[(i + 1) % 4]);
            }
        }
        // fourth power is the identity on these points
        let l4 = l.compose(&f, &l).compose(&f, &l).compose(&f, &l);
        for p in ps.iter().chain(&qs) {
            assert_eq!(l4.apply_point(&f, p), *p);
        }
    }

    #[test]
    fn rotation_map_conjugate() {
        let f = gf(5);
        let l = rotation_map(&f);
        let lc = l.conjugate_by_inversion(&f);
        assert_eq!(
            lc,
            MonomialMap::from_one_line(&f, &[1, 2, 6, 3, 4, 5], &[1, 3, 3, 3, 3, 3]).unwrap()
        );
        assert_eq!(lc.conjugate_by_inversion(&f), l);
        for p in simplex::simplex_points(&f).unwrap() {
            assert_eq!(
                l.apply_point(&f, &p).inverted(&f),
                lc.apply_point(&f, &p.inverted(&f))
            );
        }
        let ones = MonomialMap::new(vec![2, 0, 1, 3, 4, 5], vec![Fe::ONE; 6]).unwrap();
        assert_eq!(ones.conjugate_by_inversion(&f), ones);
    }

    #[test]
    fn group_laws() {
        let f = gf(7);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
        let id = MonomialMap::identity(8);
        assert_eq!(id.inverse(&f), id);
        for _ in 0..200 {
            let [a, b, c] = [0; 3].map(|_| MonomialMap::random(&f, 8, &mut rng));
            let x = FVec((0..8).map(|_| Fe(rng.random_range(0..7))).collect());
            assert_eq!(
                a.compose(&f, &b).apply(&f, &x),
                a.apply(&f, &b.apply(&f, &x))
            );
            assert_eq!(
                a.compose(&f, &b).compose(&f, &c),
                a.compose(&f, &b.compose(&f, &c))
            );
            assert_eq!(a.compose(&f, &a.inverse(&f)), id);
            assert_eq!(a.inverse(&f).compose(&f, &a), id);
            assert_eq!(a.apply(&f, &x).weight(), x.weight());
            assert_eq!(id.apply(&f, &x), x);
        }
    }

    #[test]
    fn rejects_invalid_maps() {
        assert!(MonomialMap::new(vec![0, 0], vec![Fe::ONE; 2]).is_err());
        assert!(MonomialMap::new(vec![1, 0], vec![Fe::ONE, Fe::ZERO]).is_err());
        assert!(MonomialMap::new(vec![1, 0], vec![Fe::ONE]).is_err());
    }

    #[test]
    fn weight_preserved_exhaustively_q3() {
        let f = gf(3);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let maps: Vec<MonomialMap> = (0..20)
            .map(|_| MonomialMap::random(&f, 4, &mut rng))
            .collect();
        for k in 0..81u32 {
            let x = FVec((0..4).map(|i| Fe((k / 3u32.pow(i) % 3) as u8)).collect());
            for m in &maps {
                assert_eq!(m.apply(&f, &x).weight(), x.weight());
            }
        }
    }

    #[test]
    fn frame_maps() {
        let f = gf(5);
        let l = simplex::standard_line(&f);
        let p = l.points(&f);
        let id = frame_map(&f, &l, [&p[0], &p[1], &p[2]], &l, [&p[0], &p[1], &p[2]]).unwrap();
        for x in &p {
            assert_eq!(id.apply_point(&f, x), *x);
        }
        let m = frame_map(&f, &l, [&p[0], &p[1], &p[2]], &l, [&p[0], &p[1], &p[3]]).unwrap();
        assert_eq!(m.apply_point(&f, &p[0]), p[0]);
        assert_eq!(m.apply_point(&f, &p[1]), p[1]);
        assert_eq!(m.apply_point(&f, &p[2]), p[3]);
        assert_eq!(m.apply_line(&f, &l), l);

        let off = pt(&f, &[1, 0, 1, 1, 4, 4]);
        assert_eq!(
            frame_map(&f, &l, [&p[0], &p[1], &off], &l, [&p[0], &p[1], &p[2]]).unwrap_err(),
            Error::PointNotOnLine
        );
    }

    #[test]
    fn frame_maps_randomized() {
        for q in [5u32, 7] {
            let f = gf(q);
            let n = q as usize + 1;
            let base = simplex::standard_line(&f);
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
            for _ in 0..1000 {
                let l = MonomialMap::random(&f, n, &mut rng).apply_line(&f, &base);
                let l2 = MonomialMap::random(&f, n, &mut rng).apply_line(&f, &base);
                let (a, b) = (l.points(&f), l2.points(&f));
                let mut ia: Vec<usize> = (0..=q as usize).collect();
                let mut ib = ia.clone();
                ia.shuffle(&mut rng);
                ib.shuffle(&mut rng);
                let src = [&a[ia[0]], &a[ia[1]], &a[ia[2]]];
                let dst = [&b[ib[0]], &b[ib[1]], &b[ib[2]]];
                let m = frame_map(&f, &l, src, &l2, dst).unwrap();
                for k in 0..3 {
                    assert_eq!(m.apply_point(&f, src[k]), *dst[k]);
                }
                assert_eq!(m.apply_line(&f, &l), l2);
            }
        }
    }

    #[test]
    fn stars_map_onto_stars() {
        let g = GammaGraph::for_q(5).unwrap();
        let f = g.field();
        let idx = g.index();
        let p = pt(f, &[0, 1, 1, 1, 1, 1]);
        let p2 = pt(f, &[1, 0, 1, 2, 4, 3]);
        assert_eq!(map_between_stars(f, &p, &p).unwrap().apply_point(f, &p), p);
        let m = map_between_stars(f, &p, &p2).unwrap();
        assert_eq!(m.apply_point(f, &p), p2);
        let star = idx.star(idx.point_id(&p).unwrap());
        let mut image: Vec<u32> = star
            .iter()
            .map(|&l| idx.line_id(&m.apply_line(f, idx.line(l).unwrap())).unwrap())
            .collect();
        image.sort();
        assert_eq!(image, idx.star(idx.point_id(&p2).unwrap()));

        let f4 = gf(4);
        let pts = simplex::simplex_points(&f4).unwrap();
        for a in pts.iter().step_by(11) {
            for b in pts.iter().step_by(13) {
                assert_eq!(
                    map_between_stars(&f4, a, b).unwrap().apply_point(&f4, a),
                    *b
                );
            }
        }
    }

    #[test]
    fn tops_map_onto_tops() {
        let f = gf(5);
        let l = simplex::standard_line(&f);
        let p = l.points(&f);
        let t1 = top_from_triple(&f, &l, [&p[0], &p[1], &p[2]]).unwrap();
        let t2 = top_from_triple(&f, &l, [&p[1], &p[3], &p[5]]).unwrap();
        let same = map_between_tops(&f, &t1, &t1).unwrap();
        assert_eq!(same.apply_clique(&f, &t1).unwrap().lines(), t1.lines());
        let m = map_between_tops(&f, &t1, &t2).unwrap();
        assert_eq!(m.apply_clique(&f, &t1).unwrap().lines(), t2.lines());
    }
}
