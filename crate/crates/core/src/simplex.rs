//! Simplex points and lines of PG(q, q), the collinearity relation and the
//! inversion transformation `I`.
//!
//! A simplex point is spanned by a vector with exactly one zero coordinate; a
//! simplex line is one whose 2×(q+1) generator matrix has non-zero, pairwise
//! non-proportional columns. Those columns then run through every point of
//! PG(1, q) exactly once, which is what [`columns_form_frame`] checks.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::{Fe, FieldSpec};
use crate::projgeom::{FVec, PLine, PPoint};

pub type PointId = u32;
pub type LineId = u32;

/// Largest q for which every simplex point may be streamed in a single scan.
pub const MAX_SCAN_Q: u32 = 9;
/// Largest q for which the point set is materialized.
pub const MAX_POINTS_Q: u32 = 7;
/// Largest q for which the line set (and so Γ) is materialized.
pub const MAX_LINES_Q: u32 = 5;
/// Largest q for which the full star of a point is enumerated.
pub const MAX_STAR_Q: u32 = 7;

/// Projective class of the column `(a, b)` in `0..=q`, or `None` for a zero column.
#[inline]
fn column_class(f: &FieldSpec, a: Fe, b: Fe) -> Option<usize> {
    if !a.is_zero() {
        Some(f.mul(b, f.inv_scalar(a)).idx())
    } else if !b.is_zero() {
        Some(f.order())
    } else {
        None
    }
}

/// Whether the matrix with rows `x`, `y` has non-zero, pairwise
/// non-proportional columns.
pub fn columns_form_frame(f: &FieldSpec, x: &[Fe], y: &[Fe]) -> bool {
    let mut seen: u64 = 0;
    for (&a, &b) in x.iter().zip(y) {
        let Some(c) = column_class(f, a, b) else {
            return false;
        };
        if seen & (1 << c) != 0 {
            return false;
        }
        seen |= 1 << c;
    }
    true
}

pub fn is_simplex_point(f: &FieldSpec, p: &PPoint) -> bool {
    p.dim() == f.order() + 1 && p.zero_count() == 1
}

pub fn is_simplex_line(f: &FieldSpec, l: &PLine) -> bool {
    let [r0, r1] = l.rows();
    r0.len() == f.order() + 1 && columns_form_frame(f, r0.coords(), r1.coords())
}

/// Collinearity in the simplex geometry: some simplex line contains both points.
pub fn collinear(f: &FieldSpec, p: &PPoint, q: &PPoint) -> Result<bool> {
    if !is_simplex_point(f, p) || !is_simplex_point(f, q) {
        return Err(Error::NotSimplexPoint);
    }
    if p == q {
        return Err(Error::CoincidentPoints);
    }
    Ok(columns_form_frame(f, p.coords(), q.coords()))
}

pub fn inv_point(f: &FieldSpec, p: &PPoint) -> PPoint {
    p.inverted(f)
}

/// `I` applied to every point of the line, sorted; generally not a line.
pub fn inv_line_pointset(f: &FieldSpec, l: &PLine) -> Vec<PPoint> {
    l.inverted_points(f)
}

/// `I(⟨I(P), I(Q)⟩) ∖ {P, Q}`, sorted.
pub fn inversion_candidate_set(f: &FieldSpec, p: &PPoint, q: &PPoint) -> Result<Vec<PPoint>> {
    if !collinear(f, p, q)? {
        return Err(Error::NotCollinear);
    }
    let l = PLine::through(f, &p.inverted(f), &q.inverted(f))?;
    Ok(l.inverted_points(f)
        .into_iter()
        .filter(|t| t != p && t != q)
        .collect())
}

fn require_collinear(f: &FieldSpec, p: &PPoint, q: &PPoint) -> Result<PLine> {
    if !collinear(f, p, q)? {
        return Err(Error::NotCollinear);
    }
    PLine::through(f, p, q)
}

fn is_common_collinear(f: &FieldSpec, p: &PPoint, q: &PPoint, line: &PLine, t: &PPoint) -> bool {
    columns_form_frame(f, p.coords(), t.coords())
        && columns_form_frame(f, q.coords(), t.coords())
        && !line.contains(f, t)
}

/// All simplex points collinear to both `p` and `q` and off their line, by a
/// full scan of the simplex points (q ≤ 9).
pub fn all_common_collinear(f: &FieldSpec, p: &PPoint, q: &PPoint) -> Result<Vec<PPoint>> {
    if f.q() > MAX_SCAN_Q {
        return Err(Error::Infeasible {
            what: "a full simplex point scan",
            q: f.q(),
        });
    }
    let line = require_collinear(f, p, q)?;
    let mut out: Vec<PPoint> = scan_simplex_points(f, |t| is_common_collinear(f, p, q, &line, t));
    out.sort();
    Ok(out)
}

/// Same as [`all_common_collinear`] but restricted to a caller-supplied pool.
pub fn all_common_collinear_in(
    f: &FieldSpec,
    p: &PPoint,
    q: &PPoint,
    pool: &[PPoint],
) -> Result<Vec<PPoint>> {
    let line = require_collinear(f, p, q)?;
    let mut out: Vec<PPoint> = pool
        .iter()
        .filter(|t| is_simplex_point(f, t) && is_common_collinear(f, p, q, &line, t))
        .cloned()
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Every point of the candidate set is non-collinear to every point of
/// `⟨P, Q⟩ ∖ {P, Q}`. Holds for all pairs when q = 5.
pub fn off_line_noncollinearity_check(f: &FieldSpec, p: &PPoint, q: &PPoint) -> Result<bool> {
    let candidates = inversion_candidate_set(f, p, q)?;
    let line = PLine::through(f, p, q)?;
    let others: Vec<PPoint> = line
        .points(f)
        .into_iter()
        .filter(|t| t != p && t != q)
        .collect();
    Ok(candidates.iter().all(|n| {
        others
            .iter()
            .all(|t| !columns_form_frame(f, n.coords(), t.coords()))
    }))
}

/// Calls `visit` for every simplex point whose zero sits at coordinate `zero_at`
/// and whose coordinate `pinned` (the first coordinate other than `zero_at`)
/// takes value 1 and next free coordinate takes `first`.
fn for_each_with_zero<F: FnMut(PPoint)>(
    f: &FieldSpec,
    zero_at: usize,
    first: Option<Fe>,
    mut visit: F,
) {
    let n = f.order() + 1;
    let lead = if zero_at == 0 { 1 } else { 0 };
    let mut free: Vec<usize> = (0..n).filter(|&i| i != zero_at && i != lead).collect();
    let mut v = vec![Fe::ONE; n];
    v[zero_at] = Fe::ZERO;
    if let Some(a) = first {
        v[free[0]] = a;
        free.remove(0);
    }
    let base = f.order() - 1;
    let total = base.pow(free.len() as u32);
    // odometer over non-zero values 1..q
    for _ in 0..total {
        visit(PPoint::new(f, FVec(v.clone())).expect("non-zero"));
        for &i in &free {
            if (v[i].0 as usize) < f.order() - 1 {
                v[i].0 += 1;
                break;
            }
            v[i] = Fe::ONE;
        }
    }
}

/// Simplex points with the zero at a fixed coordinate, unsorted.
pub fn simplex_points_with_zero_at(f: &FieldSpec, zero_at: usize) -> Vec<PPoint> {
    let mut out = Vec::new();
    for_each_with_zero(f, zero_at, None, |p| out.push(p));
    out
}

/// Filters every simplex point in parallel. Output order follows the work
/// partition, which is fixed, not the thread schedule.
fn scan_simplex_points<P>(f: &FieldSpec, keep: P) -> Vec<PPoint>
where
    P: Fn(&PPoint) -> bool + Sync,
{
    let n = f.order() + 1;
    let parts: Vec<(usize, Fe)> = (0..n)
        .flat_map(|z| f.nonzero().map(move |a| (z, a)))
        .collect();
    parts
        .par_iter()
        .map(|&(z, a)| {
            let mut local = Vec::new();
            for_each_with_zero(f, z, Some(a), |p| {
                if keep(&p) {
                    local.push(p)
                }
            });
            local
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// (q+1)(q−1)^(q−1).
pub fn simplex_point_count(q: u64) -> u64 {
    (q + 1) * (q - 1).pow(q as u32 - 1)
}

/// All simplex points in lexicographic order (q ≤ 7).
pub fn simplex_points(f: &FieldSpec) -> Result<Vec<PPoint>> {
    if f.q() > MAX_POINTS_Q {
        return Err(Error::Infeasible {
            what: "materializing the simplex point set",
            q: f.q(),
        });
    }
    let mut pts = scan_simplex_points(f, |_| true);
    pts.par_sort();
    Ok(pts)
}

/// All simplex lines through a simplex point, sorted (q ≤ 7).
///
/// Every simplex line has exactly one point with a zero at any given
/// coordinate, so scanning the points with a zero at one fixed coordinate
/// other than `p`'s finds each line through `p` exactly once.
pub fn star_lines(f: &FieldSpec, p: &PPoint) -> Result<Vec<PLine>> {
    if !is_simplex_point(f, p) {
        return Err(Error::NotSimplexPoint);
    }
    if f.q() > MAX_STAR_Q {
        return Err(Error::Infeasible {
            what: "enumerating a full star",
            q: f.q(),
        });
    }
    let zero_at = p.coords().iter().position(|a| a.is_zero()).unwrap();
    let transversal = if zero_at == 0 { 1 } else { 0 };
    let mut out = Vec::new();
    for_each_with_zero(f, transversal, None, |t| {
        if columns_form_frame(f, p.coords(), t.coords()) {
            out.push(PLine::through(f, p, &t).expect("distinct"));
        }
    });
    out.sort();
    Ok(out)
}

/// `x = (0,1,…,1)`, `y = (1,0,1,α,…,α^(q−2))` for the primitive element α.
pub fn standard_pair(f: &FieldSpec) -> (FVec, FVec) {
    let n = f.order() + 1;
    let mut x = vec![Fe::ONE; n];
    x[0] = Fe::ZERO;
    let mut y = vec![Fe::ONE, Fe::ZERO];
    y.extend((0..f.order() - 1).map(|k| f.exp(k)));
    (FVec(x), FVec(y))
}

pub fn standard_line(f: &FieldSpec) -> PLine {
    let (x, y) = standard_pair(f);
    PLine::from_rows(f, &x, &y).expect("independent")
}

/// Every simplex point and simplex line with dense ids (q ≤ 5).
#[derive(Debug, Clone)]
pub struct SimplexIndex {
    field: FieldSpec,
    points: Vec<PPoint>,
    point_ids: HashMap<PPoint, PointId>,
    lines: Vec<PLine>,
    line_ids: HashMap<PLine, LineId>,
    line_points: Vec<Vec<PointId>>,
    point_lines: Vec<Vec<LineId>>,
}

pub fn enumerate(f: &FieldSpec) -> Result<SimplexIndex> {
    SimplexIndex::new(f.clone())
}

impl SimplexIndex {
    pub fn new(field: FieldSpec) -> Result<Self> {
        if field.q() > MAX_LINES_Q {
            return Err(Error::Infeasible {
                what: "materializing all simplex lines",
                q: field.q(),
            });
        }
        let f = &field;
        let points = simplex_points(f)?;
        let point_ids: HashMap<PPoint, PointId> = points
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as PointId))
            .collect();

        // Each line meets the points with a zero at coordinate 0 exactly once,
        // and likewise at coordinate 1.
        let zero0 = simplex_points_with_zero_at(f, 0);
        let zero1 = simplex_points_with_zero_at(f, 1);
        let mut lines: Vec<PLine> = zero0
            .par_iter()
            .flat_map_iter(|p| {
                zero1
                    .iter()
                    .filter(|t| columns_form_frame(f, p.coords(), t.coords()))
                    .map(|t| PLine::through(f, p, t).expect("distinct"))
                    .collect::<Vec<_>>()
            })
            .collect();
        lines.par_sort();
        let line_ids: HashMap<PLine, LineId> = lines
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i as LineId))
            .collect();

        let line_points: Vec<Vec<PointId>> = lines
            .iter()
            .map(|l| l.points(f).iter().map(|p| point_ids[p]).collect())
            .collect();
        let mut point_lines = vec![Vec::new(); points.len()];
        for (lid, pts) in line_points.iter().enumerate() {
            for &p in pts {
                point_lines[p as usize].push(lid as LineId);
            }
        }
        Ok(SimplexIndex {
            field,
            points,
            point_ids,
            lines,
            line_ids,
            line_points,
            point_lines,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn points(&self) -> &[PPoint] {
        &self.points
    }

    pub fn lines(&self) -> &[PLine] {
        &self.lines
    }

    pub fn point(&self, id: PointId) -> &PPoint {
        &self.points[id as usize]
    }

    pub fn line(&self, id: LineId) -> Result<&PLine> {
        self.lines.get(id as usize).ok_or(Error::UnknownLine(id))
    }

    pub fn point_id(&self, p: &PPoint) -> Option<PointId> {
        self.point_ids.get(p).copied()
    }

    pub fn line_id(&self, l: &PLine) -> Option<LineId> {
        self.line_ids.get(l).copied()
    }

    /// Point ids of a line, in the order of [`PLine::points`].
    pub fn line_points(&self, id: LineId) -> &[PointId] {
        &self.line_points[id as usize]
    }

    /// Sorted ids of the simplex lines through a point.
    pub fn star(&self, id: PointId) -> &[LineId] {
        &self.point_lines[id as usize]
    }

    /// Line through two collinear simplex points.
    pub fn line_of(&self, p: PointId, q: PointId) -> Option<LineId> {
        let (a, b) = (self.star(p), self.star(q));
        a.iter().find(|l| b.binary_search(l).is_ok()).copied()
    }

    /// Collinearity relation as one bitset per point.
    pub fn collinearity_table(&self) -> Vec<FixedBitSet> {
        let n = self.points.len();
        (0..n)
            .into_par_iter()
            .map(|i| {
                let mut row = FixedBitSet::with_capacity(n);
                let p = &self.points[i];
                for (j, t) in self.points.iter().enumerate() {
                    if i != j && columns_form_frame(&self.field, p.coords(), t.coords()) {
                        row.insert(j);
                    }
                }
                row
            })
            .collect()
    }
}
