//! Vectors over GF(q), canonical projective points, lines and planes.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{Fe, FieldSpec};

/// A coordinate vector over GF(q).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct FVec(pub Vec<Fe>);

impl FVec {
    pub fn zero(n: usize) -> Self {
        FVec(vec![Fe::ZERO; n])
    }

    /// Builds a vector from element indices, rejecting out-of-range entries.
    pub fn from_indices(f: &FieldSpec, idx: &[u32]) -> Result<Self> {
        idx.iter()
            .map(|&i| f.elem(i))
            .collect::<Result<Vec<_>>>()
            .map(FVec)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[Fe] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|a| a.is_zero())
    }

    pub fn weight(&self) -> usize {
        self.0.iter().filter(|a| !a.is_zero()).count()
    }

    pub fn scale(&self, f: &FieldSpec, a: Fe) -> FVec {
        FVec(self.0.iter().map(|&x| f.mul(a, x)).collect())
    }

    pub fn add(&self, f: &FieldSpec, other: &FVec) -> FVec {
        debug_assert_eq!(self.len(), other.len());
        FVec(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&x, &y)| f.add(x, y))
                .collect(),
        )
    }

    /// `a·self + other`.
    pub fn axpy(&self, f: &FieldSpec, a: Fe, other: &FVec) -> FVec {
        FVec(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&x, &y)| f.add(f.mul(a, x), y))
                .collect(),
        )
    }

    /// Coordinatewise inversion `I(x)`.
    pub fn invert(&self, f: &FieldSpec) -> FVec {
        FVec(self.0.iter().map(|&x| f.inv_scalar(x)).collect())
    }

    pub fn indices(&self) -> Vec<u8> {
        self.0.iter().map(|a| a.0).collect()
    }
}

impl fmt::Display for FVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

pub fn dot(f: &FieldSpec, x: &FVec, y: &FVec) -> Result<Fe> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            expected: x.len(),
            actual: y.len(),
        });
    }
    Ok(x.0
        .iter()
        .zip(&y.0)
        .fold(Fe::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
}

/// Reduced row-echelon form; returns the non-zero rows and their pivot columns.
pub fn rref(f: &FieldSpec, rows: &[FVec]) -> Result<(Vec<FVec>, Vec<usize>)> {
    let Some(first) = rows.first() else {
        return Ok((Vec::new(), Vec::new()));
    };
    let n = first.len();
    if let Some(bad) = rows.iter().find(|r| r.len() != n) {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: bad.len(),
        });
    }
    let mut m: Vec<Vec<Fe>> = rows.iter().map(|r| r.0.clone()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        if r == m.len() {
            break;
        }
        let Some(pr) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = f.inv_scalar(m[r][col]);
        for x in m[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let factor = f.neg(row[col]);
                for (x, &p) in row.iter_mut().zip(&pivot) {
                    *x = f.add(*x, f.mul(factor, p));
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    m.truncate(r);
    Ok((m.into_iter().map(FVec).collect(), pivots))
}

pub fn rank(f: &FieldSpec, rows: &[FVec]) -> Result<usize> {
    Ok(rref(f, rows)?.1.len())
}

/// Determinant of a square matrix given by rows.
pub fn determinant(f: &FieldSpec, rows: &[FVec]) -> Result<Fe> {
    let n = rows.len();
    if let Some(bad) = rows.iter().find(|r| r.len() != n) {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: bad.len(),
        });
    }
    let mut m: Vec<Vec<Fe>> = rows.iter().map(|r| r.0.clone()).collect();
    let mut det = Fe::ONE;
    for col in 0..n {
        let Some(pr) = (col..n).find(|&i| !m[i][col].is_zero()) else {
            return Ok(Fe::ZERO);
        };
        if pr != col {
            m.swap(pr, col);
            det = f.neg(det);
        }
        det = f.mul(det, m[col][col]);
        let inv = f.inv_scalar(m[col][col]);
        let pivot = m[col].clone();
        for row in m[col + 1..].iter_mut() {
            if !row[col].is_zero() {
                let factor = f.neg(f.mul(row[col], inv));
                for (x, &p) in row[col..].iter_mut().zip(&pivot[col..]) {
                    *x = f.add(*x, f.mul(factor, p));
                }
            }
        }
    }
    Ok(det)
}

/// Basis of `{y : r·y = 0 for every row r}`.
pub fn nullspace(f: &FieldSpec, rows: &[FVec]) -> Result<Vec<FVec>> {
    let n = rows.first().map_or(0, FVec::len);
    let (red, pivots) = rref(f, rows)?;
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Fe::ZERO; n];
        v[free] = Fe::ONE;
        for (row, &pc) in red.iter().zip(&pivots) {
            v[pc] = f.neg(row.0[free]);
        }
        basis.push(FVec(v));
    }
    Ok(basis)
}

/// A projective point, stored as its representative with first non-zero coordinate 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct PPoint(FVec);

impl PPoint {
    pub fn new(f: &FieldSpec, v: FVec) -> Result<Self> {
        let lead =
            v.0.iter()
                .copied()
                .find(|a| !a.is_zero())
                .ok_or(Error::ZeroVector)?;
        if lead == Fe::ONE {
            Ok(PPoint(v))
        } else {
            Ok(PPoint(v.scale(f, f.inv_scalar(lead))))
        }
    }

    pub fn from_indices(f: &FieldSpec, idx: &[u32]) -> Result<Self> {
        PPoint::new(f, FVec::from_indices(f, idx)?)
    }

    pub fn rep(&self) -> &FVec {
        &self.0
    }

    pub fn coords(&self) -> &[Fe] {
        &self.0 .0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn zero_count(&self) -> usize {
        self.coords().iter().filter(|a| a.is_zero()).count()
    }

    /// The point `⟨I(x)⟩` for `P = ⟨x⟩`.
    pub fn inverted(&self, f: &FieldSpec) -> PPoint {
        PPoint::new(f, self.0.invert(f)).expect("inversion keeps non-zero vectors non-zero")
    }
}

impl fmt::Display for PPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨")?;
        for (i, a) in self.coords().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "⟩")
    }
}

pub fn point_make(f: &FieldSpec, v: FVec) -> Result<PPoint> {
    PPoint::new(f, v)
}

/// A line of the projective space, stored as the RREF of a 2×n generator matrix.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PLine {
    rows: [FVec; 2],
    #[serde(skip)]
    pivots: [usize; 2],
}

impl PLine {
    pub fn from_rows(f: &FieldSpec, a: &FVec, b: &FVec) -> Result<Self> {
        let (red, piv) = rref(f, &[a.clone(), b.clone()])?;
        if red.len() != 2 {
            return Err(Error::RankMismatch {
                expected: 2,
                actual: red.len(),
            });
        }
        let mut it = red.into_iter();
        Ok(PLine {
            rows: [it.next().unwrap(), it.next().unwrap()],
            pivots: [piv[0], piv[1]],
        })
    }

    pub fn through(f: &FieldSpec, p: &PPoint, q: &PPoint) -> Result<Self> {
        if p == q {
            return Err(Error::CoincidentPoints);
        }
        PLine::from_rows(f, p.rep(), q.rep())
    }

    pub fn rows(&self) -> &[FVec; 2] {
        &self.rows
    }

    pub fn dim(&self) -> usize {
        self.rows[0].len()
    }

    /// The q+1 points: `⟨r₀⟩`, then `⟨a·r₀ + r₁⟩` for `a` in index order.
    pub fn points(&self, f: &FieldSpec) -> Vec<PPoint> {
        let mut out = Vec::with_capacity(f.order() + 1);
        out.push(PPoint(self.rows[0].clone()));
        for a in f.elements() {
            let v = self.rows[0].axpy(f, a, &self.rows[1]);
            out.push(PPoint::new(f, v).expect("independent rows"));
        }
        out
    }

    pub fn contains(&self, f: &FieldSpec, p: &PPoint) -> bool {
        let x = p.coords();
        let a = x[self.pivots[0]];
        let b = x[self.pivots[1]];
        self.rows[0]
            .0
            .iter()
            .zip(&self.rows[1].0)
            .zip(x)
            .all(|((&r0, &r1), &xi)| f.add(f.mul(a, r0), f.mul(b, r1)) == xi)
    }

    /// The common point of two distinct lines, if they meet.
    pub fn meet(&self, f: &FieldSpec, other: &PLine) -> Option<PPoint> {
        if self == other {
            return None;
        }
        self.points(f).into_iter().find(|p| other.contains(f, p))
    }

    /// Image of the point set under the inversion map; not a line in general.
    pub fn inverted_points(&self, f: &FieldSpec) -> Vec<PPoint> {
        let mut pts: Vec<PPoint> = self.points(f).iter().map(|p| p.inverted(f)).collect();
        pts.sort();
        pts
    }
}

pub fn line_through(f: &FieldSpec, p: &PPoint, q: &PPoint) -> Result<PLine> {
    PLine::through(f, p, q)
}

pub fn points_on_line(f: &FieldSpec, l: &PLine) -> Vec<PPoint> {
    l.points(f)
}

/// A projective plane, stored as the RREF of a 3×n matrix.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Plane {
    rows: [FVec; 3],
}

impl Plane {
    /// The plane spanned by the given vectors; they must have rank exactly 3.
    pub fn span(f: &FieldSpec, vectors: &[FVec]) -> Result<Self> {
        let (red, _) = rref(f, vectors)?;
        if red.len() != 3 {
            return Err(Error::RankMismatch {
                expected: 3,
                actual: red.len(),
            });
        }
        let mut it = red.into_iter();
        Ok(Plane {
            rows: [it.next().unwrap(), it.next().unwrap(), it.next().unwrap()],
        })
    }

    pub fn span_points(f: &FieldSpec, pts: &[&PPoint]) -> Result<Self> {
        let v: Vec<FVec> = pts.iter().map(|p| p.rep().clone()).collect();
        Plane::span(f, &v)
    }

    pub fn rows(&self) -> &[FVec; 3] {
        &self.rows
    }

    fn combine(&self, f: &FieldSpec, c: [Fe; 3]) -> FVec {
        let n = self.rows[0].len();
        let mut v = FVec::zero(n);
        for (k, row) in self.rows.iter().enumerate() {
            if !c[k].is_zero() {
                v = row.axpy(f, c[k], &v);
            }
        }
        v
    }

    /// Canonical coefficient triples of PG(2, q): first non-zero entry 1.
    fn projective_triples(f: &FieldSpec) -> Vec<[Fe; 3]> {
        let mut out = Vec::new();
        for a in f.elements() {
            for b in f.elements() {
                out.push([Fe::ONE, a, b]);
            }
        }
        for b in f.elements() {
            out.push([Fe::ZERO, Fe::ONE, b]);
        }
        out.push([Fe::ZERO, Fe::ZERO, Fe::ONE]);
        out
    }

    /// All q²+q+1 points of the plane.
    pub fn points(&self, f: &FieldSpec) -> Vec<PPoint> {
        Plane::projective_triples(f)
            .into_iter()
            .map(|c| PPoint::new(f, self.combine(f, c)).expect("independent rows"))
            .collect()
    }

    /// All q²+q+1 lines of the plane, sorted.
    pub fn lines(&self, f: &FieldSpec) -> Vec<PLine> {
        let mut out: Vec<PLine> = Plane::projective_triples(f)
            .into_iter()
            .map(|u| {
                // kernel of the functional u on coefficient space F³
                let ker = nullspace(f, &[FVec(u.to_vec())]).expect("single row");
                let a = self.combine(f, [ker[0].0[0], ker[0].0[1], ker[0].0[2]]);
                let b = self.combine(f, [ker[1].0[0], ker[1].0[1], ker[1].0[2]]);
                PLine::from_rows(f, &a, &b).expect("independent kernel vectors")
            })
            .collect();
        out.sort();
        out
    }

    pub fn contains_point(&self, f: &FieldSpec, p: &PPoint) -> bool {
        let mut rows = self.rows.to_vec();
        rows.push(p.rep().clone());
        rank(f, &rows).map(|r| r == 3).unwrap_or(false)
    }

    pub fn contains_line(&self, f: &FieldSpec, l: &PLine) -> bool {
        let mut rows = self.rows.to_vec();
        rows.extend(l.rows().iter().cloned());
        rank(f, &rows).map(|r| r == 3).unwrap_or(false)
    }
}

/// `I(x)·y` where `P = ⟨x⟩`, `Q = ⟨y⟩`: whether `Q` lies on the hyperplane `H(P)`.
pub fn in_hyperplane(f: &FieldSpec, p: &PPoint, q: &PPoint) -> bool {
    dot(f, &p.rep().invert(f), q.rep())
        .map(|d| d.is_zero())
        .unwrap_or(false)
}

/// Projective dimension of the span of the points (rank − 1); −1 for no points.
pub fn subspace_span(f: &FieldSpec, points: &[PPoint]) -> Result<isize> {
    let rows: Vec<FVec> = points.iter().map(|p| p.rep().clone()).collect();
    Ok(rank(f, &rows)? as isize - 1)
}
