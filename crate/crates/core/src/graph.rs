//! The graph Γ on simplex lines (adjacent = meeting in a point) and its cliques.
//!
//! Γ itself is only materialized for q ≤ 5. Plane- and point-local operations
//! ([`simplex_lines_in_plane`], [`top_from_triple`], [`is_maximal_structural`])
//! work for any q in range.

use std::collections::hash_map::Entry;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::projgeom::{nullspace, rank, FVec, PLine, PPoint, Plane};
use crate::simplex::{self, LineId, PointId, SimplexIndex};

/// Largest q for which DOT export is offered.
pub const MAX_DOT_Q: u32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CliqueKind {
    Star,
    Top,
    StarAndTop,
}

/// A clique of Γ with its shape. Lines are kept sorted, which coincides with
/// id order when the clique comes from a [`GammaGraph`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clique {
    lines: Vec<PLine>,
    line_ids: Option<Vec<LineId>>,
    is_star_shaped: bool,
    is_top_shaped: bool,
    witness_point: Option<PPoint>,
    witness_plane: Option<Plane>,
}

impl Clique {
    pub fn lines(&self) -> &[PLine] {
        &self.lines
    }

    pub fn line_ids(&self) -> Option<&[LineId]> {
        self.line_ids.as_deref()
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn is_star_shaped(&self) -> bool {
        self.is_star_shaped
    }

    pub fn is_top_shaped(&self) -> bool {
        self.is_top_shaped
    }

    pub fn witness_point(&self) -> Option<&PPoint> {
        self.witness_point.as_ref()
    }

    pub fn witness_plane(&self) -> Option<&Plane> {
        self.witness_plane.as_ref()
    }

    pub fn kind(&self) -> CliqueKind {
        match (self.is_star_shaped, self.is_top_shaped) {
            (true, true) => CliqueKind::StarAndTop,
            (true, false) => CliqueKind::Star,
            (false, true) => CliqueKind::Top,
            (false, false) => unreachable!("cliques of a Grassmann graph are star- or top-shaped"),
        }
    }

    /// Top-shaped but without a common point; then three of the lines form a triangle.
    pub fn has_triangle(&self) -> bool {
        self.is_top_shaped && !self.is_star_shaped && self.lines.len() >= 3
    }

    /// Points where pairs of lines meet, deduplicated and sorted.
    pub fn intersection_points(&self, f: &FieldSpec) -> Vec<PPoint> {
        let mut pts = BTreeSet::new();
        for (i, a) in self.lines.iter().enumerate() {
            for b in &self.lines[i + 1..] {
                if let Some(p) = a.meet(f, b) {
                    pts.insert(p);
                }
            }
        }
        pts.into_iter().collect()
    }
}

fn lines_adjacent(f: &FieldSpec, a: &PLine, b: &PLine) -> bool {
    if a == b {
        return false;
    }
    let rows = [
        a.rows()[0].clone(),
        a.rows()[1].clone(),
        b.rows()[0].clone(),
        b.rows()[1].clone(),
    ];
    rank(f, &rows).map(|r| r == 3).unwrap_or(false)
}

/// Computes flags and witnesses; assumes the lines are sorted, distinct and pairwise adjacent.
fn shape(f: &FieldSpec, lines: Vec<PLine>, line_ids: Option<Vec<LineId>>) -> Clique {
    let witness_point = match lines.as_slice() {
        [] => None,
        [only] => Some(only.points(f).swap_remove(0)),
        [a, b, rest @ ..] => a
            .meet(f, b)
            .filter(|p| rest.iter().all(|l| l.contains(f, p))),
    };
    let rows: Vec<FVec> = lines
        .iter()
        .flat_map(|l| l.rows().iter().cloned())
        .collect();
    let r = rank(f, &rows).unwrap_or(0);
    let witness_plane = (r == 3).then(|| Plane::span(f, &rows).expect("rank 3"));
    Clique {
        is_star_shaped: witness_point.is_some(),
        is_top_shaped: !lines.is_empty() && r <= 3,
        witness_point,
        witness_plane,
        lines,
        line_ids,
    }
}

/// Classifies an arbitrary set of lines, checking that it is a clique.
pub fn classify_lines(f: &FieldSpec, mut lines: Vec<PLine>) -> Result<Clique> {
    lines.sort();
    lines.dedup();
    for (i, a) in lines.iter().enumerate() {
        for b in &lines[i + 1..] {
            if !lines_adjacent(f, a, b) {
                return Err(Error::NotAClique);
            }
        }
    }
    Ok(shape(f, lines, None))
}

/// Every simplex line inside the plane, sorted.
pub fn simplex_lines_in_plane(f: &FieldSpec, plane: &Plane) -> Vec<PLine> {
    plane
        .lines(f)
        .into_iter()
        .filter(|l| simplex::is_simplex_line(f, l))
        .collect()
}

/// The top through the plane spanned by `I(P1), I(P2), I(P3)` for three distinct
/// points on a simplex line (q ≥ 5).
pub fn top_from_triple(f: &FieldSpec, l: &PLine, pts: [&PPoint; 3]) -> Result<Clique> {
    if f.q() < 5 {
        return Err(Error::Infeasible {
            what: "building a top from the inversion (needs q >= 5)",
            q: f.q(),
        });
    }
    if !simplex::is_simplex_line(f, l) {
        return Err(Error::NotSimplexLine);
    }
    let [a, b, c] = pts;
    if a == b || a == c || b == c {
        return Err(Error::CoincidentPoints);
    }
    if pts.iter().any(|p| !l.contains(f, p)) {
        return Err(Error::PointNotOnLine);
    }
    let images: Vec<PPoint> = pts.iter().map(|p| p.inverted(f)).collect();
    for (i, x) in images.iter().enumerate() {
        for y in &images[i + 1..] {
            if !simplex::collinear(f, x, y)? {
                return Err(Error::Verification(format!(
                    "I-images {x} and {y} are not collinear"
                )));
            }
        }
    }
    let rows: Vec<FVec> = images.iter().map(|p| p.rep().clone()).collect();
    let r = rank(f, &rows)?;
    if r != 3 {
        return Err(Error::DegenerateSpan(r - 1));
    }
    let plane = Plane::span(f, &rows)?;
    let lines = simplex_lines_in_plane(f, &plane);
    Ok(shape(f, lines, None))
}

/// Maximality in Γ decided from geometry alone.
///
/// A common neighbor of a clique with a triangle lies in its plane, so such a
/// clique is maximal iff it holds every simplex line of that plane. A common
/// neighbor of a concurrent clique either passes through the common point or
/// lies in the plane of the clique; those candidates are checked directly,
/// which needs the full star (q ≤ 7).
pub fn is_maximal_structural(f: &FieldSpec, c: &Clique) -> Result<bool> {
    if c.is_empty() {
        return Ok(false);
    }
    if c.has_triangle() {
        let plane = c
            .witness_plane
            .as_ref()
            .expect("top-shaped with three lines");
        return Ok(simplex_lines_in_plane(f, plane) == c.lines);
    }
    if f.q() > simplex::MAX_STAR_Q {
        return Err(Error::Infeasible {
            what: "star-based maximality check",
            q: f.q(),
        });
    }
    let mut candidates: BTreeSet<PLine> = BTreeSet::new();
    if c.len() == 1 {
        for p in c.lines[0].points(f) {
            candidates.extend(simplex::star_lines(f, &p)?);
        }
    } else {
        let p = c.witness_point.as_ref().expect("concurrent clique");
        candidates.extend(simplex::star_lines(f, p)?);
        if let Some(plane) = &c.witness_plane {
            candidates.extend(simplex_lines_in_plane(f, plane));
        }
    }
    Ok(!candidates
        .iter()
        .filter(|m| c.lines.binary_search(m).is_err())
        .any(|m| c.lines.iter().all(|l| lines_adjacent(f, l, m))))
}

/// A top containing a fixed line, tagged by the three points where the other
/// lines meet it.
#[derive(Clone, Debug)]
pub struct TopOnLine {
    pub triple: [PointId; 3],
    pub top: Clique,
}

/// The graph Γ for q ≤ 5.
#[derive(Debug, Clone)]
pub struct GammaGraph {
    index: SimplexIndex,
    neighbors: Vec<Vec<LineId>>,
    adjacency: Vec<FixedBitSet>,
}

impl GammaGraph {
    pub fn build(index: SimplexIndex) -> Result<Self> {
        let n = index.lines().len();
        let neighbors: Vec<Vec<LineId>> = (0..n as LineId)
            .into_par_iter()
            .map(|l| {
                let mut nb: Vec<LineId> = index
                    .line_points(l)
                    .iter()
                    .flat_map(|&p| index.star(p).iter().copied())
                    .filter(|&m| m != l)
                    .collect();
                nb.sort_unstable();
                nb.dedup();
                nb
            })
            .collect();
        let adjacency = neighbors
            .iter()
            .map(|nb| {
                let mut b = FixedBitSet::with_capacity(n);
                nb.iter().for_each(|&m| b.insert(m as usize));
                b
            })
            .collect();
        Ok(GammaGraph {
            index,
            neighbors,
            adjacency,
        })
    }

    pub fn for_q(q: u32) -> Result<Self> {
        GammaGraph::build(SimplexIndex::new(FieldSpec::new(q)?)?)
    }

    pub fn index(&self) -> &SimplexIndex {
        &self.index
    }

    pub fn field(&self) -> &FieldSpec {
        self.index.field()
    }

    pub fn len(&self) -> usize {
        self.neighbors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.neighbors.is_empty()
    }

    pub fn neighbors(&self, l: LineId) -> &[LineId] {
        &self.neighbors[l as usize]
    }

    pub fn adjacent(&self, a: LineId, b: LineId) -> bool {
        self.adjacency[a as usize].contains(b as usize)
    }

    /// Degree of each vertex if the graph is regular.
    pub fn uniform_degree(&self) -> Option<usize> {
        let d = self.neighbors.first()?.len();
        self.neighbors.iter().all(|nb| nb.len() == d).then_some(d)
    }

    pub fn is_connected(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::from([0 as LineId]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in self.neighbors(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.len()
    }

    pub fn ids_of(&self, lines: &[PLine]) -> Result<Vec<LineId>> {
        let mut ids = lines
            .iter()
            .map(|l| self.index.line_id(l).ok_or(Error::NotSimplexLine))
            .collect::<Result<Vec<_>>>()?;
        ids.sort_unstable();
        Ok(ids)
    }

    /// Classifies a set of line ids, checking adjacency in Γ.
    pub fn classify(&self, ids: &[LineId]) -> Result<Clique> {
        let mut ids = ids.to_vec();
        ids.sort_unstable();
        ids.dedup();
        for (i, &a) in ids.iter().enumerate() {
            if a as usize >= self.len() {
                return Err(Error::UnknownLine(a));
            }
            if ids[i + 1..].iter().any(|&b| !self.adjacent(a, b)) {
                return Err(Error::NotAClique);
            }
        }
        let lines = ids
            .iter()
            .map(|&l| self.index.lines()[l as usize].clone())
            .collect();
        Ok(shape(self.field(), lines, Some(ids)))
    }

    fn attach_ids(&self, mut c: Clique) -> Result<Clique> {
        c.line_ids = Some(self.ids_of(&c.lines)?);
        Ok(c)
    }

    /// Maximality by the definition: no vertex outside is adjacent to all of `ids`.
    pub fn is_maximal_clique(&self, ids: &[LineId]) -> bool {
        let Some(&first) = ids.first() else {
            return self.is_empty();
        };
        self.neighbors(first)
            .iter()
            .filter(|m| !ids.contains(m))
            .all(|&m| ids.iter().any(|&l| !self.adjacent(l, m)))
    }

    /// Every maximal clique exactly once, classified and sorted by (size, ids).
    ///
    /// Pivoting Bron–Kerbosch, split at the top level by vertex: the branch of
    /// `v` only extends with later neighbors and excludes earlier ones.
    pub fn maximal_cliques(&self) -> Result<Vec<Clique>> {
        let mut raw: Vec<Vec<LineId>> = (0..self.len() as LineId)
            .into_par_iter()
            .flat_map_iter(|v| self.cliques_rooted_at(v))
            .collect();
        raw.par_sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        raw.par_iter().map(|ids| self.classify(ids)).collect()
    }

    fn cliques_rooted_at(&self, v: LineId) -> Vec<Vec<LineId>> {
        let nbrs = self.neighbors(v);
        let k = nbrs.len();
        if k == 0 {
            return vec![vec![v]];
        }
        let local_adj: Vec<FixedBitSet> = nbrs
            .iter()
            .map(|&a| {
                let mut b = FixedBitSet::with_capacity(k);
                for (j, &c) in nbrs.iter().enumerate() {
                    if self.adjacent(a, c) {
                        b.insert(j);
                    }
                }
                b
            })
            .collect();
        let mut p = FixedBitSet::with_capacity(k);
        let mut x = FixedBitSet::with_capacity(k);
        for (j, &c) in nbrs.iter().enumerate() {
            if c > v {
                p.insert(j);
            } else {
                x.insert(j);
            }
        }
        let mut found = Vec::new();
        bron_kerbosch_pivot(&local_adj, &mut Vec::new(), p, x, &mut found);
        found
            .into_iter()
            .map(|local| {
                let mut ids: Vec<LineId> = local.into_iter().map(|j| nbrs[j]).collect();
                ids.push(v);
                ids.sort_unstable();
                ids
            })
            .collect()
    }

    /// Stars of all simplex points plus the tops built by [`top_from_triple`]
    /// from every point triple of every line, keeping the maximal ones (q = 5).
    pub fn structural_census(&self) -> Result<Vec<Clique>> {
        let f = self.field();
        if f.q() != 5 {
            return Err(Error::WrongOrder {
                expected: 5,
                actual: f.q(),
            });
        }
        let stars: Vec<Vec<LineId>> = (0..self.index.points().len() as PointId)
            .map(|p| self.index.star(p).to_vec())
            .collect();
        let tops: BTreeSet<Vec<LineId>> = (0..self.len() as LineId)
            .into_par_iter()
            .map(|l| -> Result<Vec<Vec<LineId>>> {
                let line = &self.index.lines()[l as usize];
                let pts = line.points(f);
                let mut out = Vec::new();
                for [i, j, k] in triples(pts.len()) {
                    let top = top_from_triple(f, line, [&pts[i], &pts[j], &pts[k]])?;
                    out.push(self.ids_of(top.lines())?);
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        let mut all: Vec<Clique> = stars
            .into_iter()
            .chain(tops)
            .collect::<Vec<_>>()
            .par_iter()
            .map(|ids| -> Result<Option<Clique>> {
                let c = self.classify(ids)?;
                Ok(is_maximal_structural(f, &c)?.then_some(c))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        all.sort_by(|a, b| {
            a.len()
                .cmp(&b.len())
                .then_with(|| a.line_ids.cmp(&b.line_ids))
        });
        Ok(all)
    }

    /// The tops containing line `l`, one per triple of its points (q = 5).
    ///
    /// For a triple `P1, P2, P3` on `l` the top lies in the plane
    /// `H(P1) ∩ H(P2) ∩ H(P3)`.
    pub fn tops_containing(&self, l: LineId) -> Result<Vec<TopOnLine>> {
        let f = self.field();
        if f.q() != 5 {
            return Err(Error::WrongOrder {
                expected: 5,
                actual: f.q(),
            });
        }
        let point_ids = self.index.line_points(l);
        let mut out = Vec::with_capacity(20);
        for [i, j, k] in triples(point_ids.len()) {
            let triple = [point_ids[i], point_ids[j], point_ids[k]];
            let normals: Vec<FVec> = triple
                .iter()
                .map(|&p| self.index.point(p).rep().invert(f))
                .collect();
            let plane = Plane::span(f, &nullspace(f, &normals)?)?;
            let top = self.attach_ids(shape(f, simplex_lines_in_plane(f, &plane), None))?;
            out.push(TopOnLine { triple, top });
        }
        Ok(out)
    }

    /// Graphviz rendering of Γ (q ≤ 4); vertices are labelled by line id.
    pub fn to_dot(&self) -> Result<String> {
        let q = self.field().q();
        if q > MAX_DOT_Q {
            return Err(Error::Infeasible {
                what: "DOT export",
                q,
            });
        }
        let mut s = String::new();
        writeln!(s, "graph gamma_q{q} {{").unwrap();
        for v in 0..self.len() {
            writeln!(s, "  {v} [label=\"{v}\"];").unwrap();
        }
        for (v, nb) in self.neighbors.iter().enumerate() {
            for &w in nb.iter().filter(|&&w| w as usize > v) {
                writeln!(s, "  {v} -- {w};").unwrap();
            }
        }
        s.push_str("}\n");
        Ok(s)
    }

    /// Planes spanned by pairs of adjacent lines, mapped to their simplex lines.
    pub fn planes_of_adjacent_pairs(&self) -> Result<HashMap<Plane, Vec<LineId>>> {
        let f = self.field();
        let mut out = HashMap::new();
        for (a, nb) in self.neighbors.iter().enumerate() {
            for &b in nb.iter().filter(|&&b| b as usize > a) {
                let la = &self.index.lines()[a];
                let lb = &self.index.lines()[b as usize];
                let rows = [
                    la.rows()[0].clone(),
                    la.rows()[1].clone(),
                    lb.rows()[0].clone(),
                    lb.rows()[1].clone(),
                ];
                let plane = Plane::span(f, &rows)?;
                if let Entry::Vacant(e) = out.entry(plane) {
                    let ids = self.ids_of(&simplex_lines_in_plane(f, e.key()))?;
                    e.insert(ids);
                }
            }
        }
        Ok(out)
    }
}

/// Index triples `i < j < k` below `n` in lexicographic order.
pub fn triples(n: usize) -> impl Iterator<Item = [usize; 3]> {
    (0..n).flat_map(move |i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| [i, j, k])))
}

fn bron_kerbosch_pivot(
    adj: &[FixedBitSet],
    r: &mut Vec<usize>,
    mut p: FixedBitSet,
    mut x: FixedBitSet,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_clear() {
        if x.is_clear() {
            out.push(r.clone());
        }
        return;
    }
    let pivot = p
        .ones()
        .chain(x.ones())
        .max_by_key(|&u| (adj[u].intersection_count(&p), std::cmp::Reverse(u)))
        .expect("P is non-empty");
    let branch: Vec<usize> = p.difference(&adj[pivot]).collect();
    for v in branch {
        let mut np = p.clone();
        np.intersect_with(&adj[v]);
        let mut nx = x.clone();
        nx.intersect_with(&adj[v]);
        r.push(v);
        bron_kerbosch_pivot(adj, r, np, nx, out);
        r.pop();
        p.remove(v);
        x.insert(v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn gf(q: u32) -> FieldSpec {
        FieldSpec::new(q).unwrap()
    }

    fn pt(f: &FieldSpec, c: &[u32]) -> PPoint {
        PPoint::from_indices(f, c).unwrap()
    }

    /// Oracle: two lines are adjacent iff their stacked bases have rank 3.
    fn rank_adjacent(f: &FieldSpec, a: &PLine, b: &PLine) -> bool {
        let rows = [
            a.rows()[0].clone(),
            a.rows()[1].clone(),
            b.rows()[0].clone(),
            b.rows()[1].clone(),
        ];
        rank(f, &rows).unwrap() == 3
    }

    #[test]
    fn small_graphs_match_rank_oracle() {
        for (q, n, deg) in [(3u32, 8usize, 4usize), (4, 162, 25)] {
            let g = GammaGraph::for_q(q).unwrap();
            assert_eq!(g.len(), n);
            assert_eq!(g.uniform_degree(), Some(deg));
            assert!(g.is_connected());
            let lines = g.index().lines();
            for a in 0..n {
                for b in 0..n {
                    let want = a != b && rank_adjacent(g.field(), &lines[a], &lines[b]);
                    assert_eq!(g.adjacent(a as LineId, b as LineId), want);
                }
            }
        }
    }

    #[test]
    fn q5_degree_sampled_oracle() {
        let g = GammaGraph::for_q(5).unwrap();
        assert_eq!(g.len(), 6144);
        assert_eq!(g.uniform_degree(), Some(138));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
        let lines = g.index().lines();
        for _ in 0..100 {
            let a = rng.random_range(0..g.len());
            let deg = (0..g.len())
                .filter(|&b| b != a && rank_adjacent(g.field(), &lines[a], &lines[b]))
                .count();
            assert_eq!(deg, 138);
        }
    }

    #[test]
    fn q3_cliques_are_stars_and_tops() {
        let g = GammaGraph::for_q(3).unwrap();
        let cliques = g.maximal_cliques().unwrap();
        assert!(!cliques.is_empty());
        for c in &cliques {
            assert_eq!(c.kind(), CliqueKind::StarAndTop);
            assert!(g.is_maximal_clique(c.line_ids().unwrap()));
            assert!(is_maximal_structural(g.field(), c).unwrap());
        }
    }

    #[test]
    fn q4_cliques_are_stars() {
        let g = GammaGraph::for_q(4).unwrap();
        let cliques = g.maximal_cliques().unwrap();
        assert_eq!(cliques.len(), 135);
        for c in &cliques {
            assert_eq!(c.len(), 6);
            assert_eq!(c.kind(), CliqueKind::Star);
            assert!(is_maximal_structural(g.field(), c).unwrap());
        }
    }

    #[test]
    fn q4_plane_cliques_below_a_star() {
        let g = GammaGraph::for_q(4).unwrap();
        let f = g.field();
        let planes = g.planes_of_adjacent_pairs().unwrap();
        let mut found = false;
        for ids in planes.values().filter(|ids| ids.len() >= 3) {
            let c = g.classify(ids).unwrap();
            assert!(!is_maximal_structural(f, &c).unwrap());
            assert!(!g.is_maximal_clique(ids));
            assert!(c.is_star_shaped());
            found = true;
        }
        assert!(found);
    }

    #[test]
    fn classify_rejects_non_cliques() {
        let g = GammaGraph::for_q(4).unwrap();
        let l = 0 as LineId;
        let far = (0..g.len() as LineId)
            .find(|&m| m != l && !g.adjacent(l, m))
            .unwrap();
        assert_eq!(g.classify(&[l, far]).unwrap_err(), Error::NotAClique);
        let lines = vec![
            g.index().lines()[0].clone(),
            g.index().lines()[far as usize].clone(),
        ];
        assert_eq!(
            classify_lines(g.field(), lines).unwrap_err(),
            Error::NotAClique
        );
    }

    #[test]
    fn q5_star_and_top_classification() {
        let g = GammaGraph::for_q(5).unwrap();
        let f = g.field();
        let p1 = pt(f, &[0, 1, 1, 1, 1, 1]);
        let pid = g.index().point_id(&p1).unwrap();
        let star = g.classify(g.index().star(pid)).unwrap();
        assert_eq!(star.len(), 24);
        assert_eq!(star.kind(), CliqueKind::Star);
        assert_eq!(star.witness_point(), Some(&p1));
        assert!(is_maximal_structural(f, &star).unwrap());

        let p2 = pt(f, &[1, 0, 1, 2, 4, 3]);
        let l = PLine::through(f, &p1, &p2).unwrap();
        let pts = l.points(f);
        let top = top_from_triple(f, &l, [&pts[0], &pts[1], &pts[2]]).unwrap();
        assert_eq!(top.len(), 4);
        assert_eq!(top.kind(), CliqueKind::Top);
        assert!(top.witness_plane().is_some());
        assert!(is_maximal_structural(f, &top).unwrap());
        let ids = g.ids_of(top.lines()).unwrap();
        assert!(g.is_maximal_clique(&ids));
        assert_eq!(top.intersection_points(f).len(), 6);
    }

    #[test]
    fn top_from_triple_guards() {
        let f4 = gf(4);
        let l4 = crate::simplex::standard_line(&f4);
        let p = l4.points(&f4);
        assert!(matches!(
            top_from_triple(&f4, &l4, [&p[0], &p[1], &p[2]]),
            Err(Error::Infeasible { .. })
        ));
        let f = gf(5);
        let l = crate::simplex::standard_line(&f);
        let p = l.points(&f);
        assert_eq!(
            top_from_triple(&f, &l, [&p[0], &p[0], &p[2]]).unwrap_err(),
            Error::CoincidentPoints
        );
        let off = pt(&f, &[1, 0, 1, 1, 4, 4]);
        assert_eq!(
            top_from_triple(&f, &l, [&p[0], &p[1], &off]).unwrap_err(),
            Error::PointNotOnLine
        );
    }

    #[test]
    fn coordinate_plane_has_no_simplex_lines() {
        let f = gf(5);
        let rows: Vec<FVec> = (0..3)
            .map(|i| {
                let mut v = FVec::zero(6);
                v.0[i] = crate::Fe::ONE;
                v
            })
            .collect();
        assert!(simplex_lines_in_plane(&f, &Plane::span(&f, &rows).unwrap()).is_empty());
    }

    #[test]
    fn tops_on_a_line() {
        let g = GammaGraph::for_q(5).unwrap();
        let f = g.field();
        for l in [0 as LineId, 1000, 6143] {
            let tops = g.tops_containing(l).unwrap();
            assert_eq!(tops.len(), 20);
            let distinct: BTreeSet<_> = tops
                .iter()
                .map(|t| t.top.line_ids().unwrap().to_vec())
                .collect();
            assert_eq!(distinct.len(), 20);
            let line = &g.index().lines()[l as usize];
            for t in &tops {
                assert_eq!(t.top.len(), 4);
                assert!(t.top.line_ids().unwrap().contains(&l));
                let mut meets: Vec<PointId> = t
                    .top
                    .lines()
                    .iter()
                    .filter(|m| *m != line)
                    .map(|m| g.index().point_id(&m.meet(f, line).unwrap()).unwrap())
                    .collect();
                meets.sort_unstable();
                let mut triple = t.triple.to_vec();
                triple.sort_unstable();
                assert_eq!(meets, triple);
            }
        }
    }

    #[test]
    fn dot_export() {
        let g = GammaGraph::for_q(3).unwrap();
        let dot = g.to_dot().unwrap();
        assert!(dot.starts_with("graph gamma_q3 {"));
        assert_eq!(dot.matches("[label=").count(), 8);
        assert_eq!(dot.matches(" -- ").count(), 8 * 4 / 2);
        assert!(matches!(
            GammaGraph::for_q(5).unwrap().to_dot(),
            Err(Error::Infeasible { .. })
        ));
    }

    #[test]
    fn triples_enumeration() {
        assert_eq!(triples(6).count(), 20);
        assert_eq!(
            triples(4).collect::<Vec<_>>(),
            vec![[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]
        );
    }

    #[test]
    fn bron_kerbosch_on_small_graph() {
        // 0-1-2 triangle plus 2-3 edge
        let edges = [(0, 1), (1, 2), (0, 2), (2, 3)];
        let mut adj = vec![FixedBitSet::with_capacity(4); 4];
        for (a, b) in edges {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        let mut p = FixedBitSet::with_capacity(4);
        p.insert_range(..);
        let mut out = Vec::new();
        bron_kerbosch_pivot(
            &adj,
            &mut Vec::new(),
            p,
            FixedBitSet::with_capacity(4),
            &mut out,
        );
        let mut out: Vec<Vec<usize>> = out
            .into_iter()
            .map(|mut c| {
                c.sort();
                c
            })
            .collect();
        out.sort();
        assert_eq!(out, vec![vec![0, 1, 2], vec![2, 3]]);
    }
}
