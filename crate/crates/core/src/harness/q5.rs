use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use rayon::prelude::*;
use serde_json::json;

use super::{binomial, clique_key, expect, factorial, holds, RunOptions, Runner, SuiteReport};
use crate::error::Result;
use crate::graph::{is_maximal_structural, GammaGraph};
use crate::monomial::map_between_tops;
use crate::projgeom::{rank, FVec, PLine, PPoint};
use crate::simplex::{self, LineId, PointId};

const TRANSITIVITY_PAIRS: usize = 100;

/// The two collinear points used as the worked pair, and the four points
/// collinear to both of them off their line.
const REFERENCE_P: [u32; 6] = [0, 1, 1, 1, 1, 1];
const REFERENCE_Q: [u32; 6] = [1, 0, 1, 2, 4, 3];
const REFERENCE_COMMON: [[u32; 6]; 4] = [
    [1, 4, 0, 3, 2, 1],
    [1, 3, 2, 0, 1, 4],
    [1, 1, 3, 4, 0, 2],
    [1, 2, 4, 1, 3, 0],
];

fn coords(p: &PPoint) -> Vec<u8> {
    p.rep().indices()
}

/// Every (line, pair of its points), i.e. every collinear pair once.
fn collinear_pairs(g: &GammaGraph) -> Vec<(LineId, PointId, PointId)> {
    let idx = g.index();
    (0..g.len() as LineId)
        .flat_map(|l| {
            let pts = idx.line_points(l);
            (0..pts.len()).flat_map(move |i| (i + 1..pts.len()).map(move |j| (l, pts[i], pts[j])))
        })
        .collect()
}

/// The exhaustive checks of the q = 5 geometry: the clique census by two
/// independent routes, common collinear points, tops on each line and the
/// monomial transitivity of tops.
pub fn suite_q5(opts: &RunOptions) -> Result<SuiteReport> {
    let g = GammaGraph::for_q(5)?;
    let f = g.field();
    let idx = g.index();
    let q = 5u64;
    let n_points = simplex::simplex_point_count(q);
    let star_size = factorial(q - 1);
    let n_lines = n_points * star_size / (q + 1);
    let tops_per_line = binomial(q + 1, 3);
    let n_tops = n_lines * tops_per_line / 4;
    let mut r = Runner::new("q5", 5, opts);

    r.check("q5.counts", "simplex points, simplex lines, star sizes and degree of the graph", |_| {
        let mut sizes: Vec<usize> = (0..n_points as PointId).map(|p| idx.star(p).len()).collect();
        sizes.sort_unstable();
        sizes.dedup();
        Ok(expect(
            json!({"points": n_points, "lines": n_lines, "star_sizes": [star_size], "degree": (q + 1) * (star_size - 1)}),
            json!({"points": idx.points().len(), "lines": g.len(), "star_sizes": sizes, "degree": g.uniform_degree()}),
        ))
    });

    r.check(
        "q5.connected",
        "the graph of simplex lines is connected",
        |_| Ok(expect(true, g.is_connected())),
    );

    let cliques = g.maximal_cliques()?;
    let clique_ids: Vec<Vec<LineId>> = cliques
        .iter()
        .map(|c| c.line_ids().expect("from the graph").to_vec())
        .collect();

    r.check(
        "q5.census",
        "maximal cliques by size and shape, from pivoting Bron-Kerbosch",
        |_| {
            let mut hist: BTreeMap<String, usize> = BTreeMap::new();
            for c in &cliques {
                *hist.entry(clique_key(c)).or_default() += 1;
            }
            Ok(expect(
                json!({format!("{star_size}/star"): n_points, "4/top": n_tops}),
                hist,
            ))
        },
    );

    r.check(
        "q5.census_structural",
        "stars of all points plus tops built from all point triples give the same census",
        |_| {
            let structural: Vec<Vec<LineId>> = g
                .structural_census()?
                .iter()
                .map(|c| c.line_ids().expect("from the graph").to_vec())
                .collect();
            let identical = structural == clique_ids;
            Ok(holds(
                identical,
                json!({"identical": true}),
                json!({"identical": identical, "cliques": structural.len()}),
            ))
        },
    );

    r.check(
        "q5.census_maximality",
        "every census clique is maximal by its neighborhood and by the geometric test",
        |_| {
            let failures: usize = cliques
                .par_iter()
                .map(|c| -> Result<usize> {
                    let ids = c.line_ids().expect("from the graph");
                    Ok((!g.is_maximal_clique(ids) || !is_maximal_structural(f, c)?) as usize)
                })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .sum();
            Ok(expect(
                json!({"cliques": cliques.len(), "failures": 0}),
                json!({"cliques": cliques.len(), "failures": failures}),
            ))
        },
    );

    let pairs = collinear_pairs(&g);

    r.check(
        "q5.common_collinear",
        "for every collinear pair the points collinear to both, off their line, are exactly the candidate set of 4",
        |_| {
            let table = idx.collinearity_table();
            let outcomes: Vec<(usize, bool)> = pairs
                .par_iter()
                .map(|&(l, a, b)| -> Result<(usize, bool)> {
                    let mut common = table[a as usize].clone();
                    common.intersect_with(&table[b as usize]);
                    for &t in idx.line_points(l) {
                        common.set(t as usize, false);
                    }
                    let brute: Vec<PointId> = common.ones().map(|i| i as PointId).collect();
                    let mut cand: Vec<PointId> =
                        simplex::inversion_candidate_set(f, idx.point(a), idx.point(b))?
                            .iter()
                            .map(|p| idx.point_id(p).expect("simplex"))
                            .collect();
                    cand.sort_unstable();
                    Ok((brute.len(), brute == cand))
                })
                .collect::<Result<_>>()?;
            let mut sizes: Vec<usize> = outcomes.iter().map(|o| o.0).collect();
            sizes.sort_unstable();
            sizes.dedup();
            let mismatches = outcomes.iter().filter(|o| !o.1).count();
            Ok(expect(
                json!({"pairs": n_lines * binomial(q + 1, 2), "sizes": [4], "mismatches": 0}),
                json!({"pairs": pairs.len(), "sizes": sizes, "mismatches": mismatches}),
            ))
        },
    );

    r.check(
        "q5.common_collinear_reference",
        "full point scan for the pair <0,1,1,1,1,1>, <1,0,1,2,4,3>",
        |_| {
            let p = PPoint::from_indices(f, &REFERENCE_P)?;
            let t = PPoint::from_indices(f, &REFERENCE_Q)?;
            let scan: Vec<Vec<u8>> = simplex::all_common_collinear(f, &p, &t)?
                .iter()
                .map(coords)
                .collect();
            let cand: Vec<Vec<u8>> = simplex::inversion_candidate_set(f, &p, &t)?
                .iter()
                .map(coords)
                .collect();
            let mut expected: Vec<Vec<u8>> = REFERENCE_COMMON
                .iter()
                .map(|c| c.iter().map(|&x| x as u8).collect())
                .collect();
            expected.sort();
            Ok(expect(
                json!({"scan": expected, "candidates": expected}),
                json!({"scan": scan, "candidates": cand}),
            ))
        },
    );

    r.check(
        "q5.off_line",
        "candidate points are collinear to no point of the pair's line other than the pair",
        |_| {
            let failures: usize = pairs
                .par_iter()
                .map(|&(_, a, b)| {
                    simplex::off_line_noncollinearity_check(f, idx.point(a), idx.point(b))
                        .map(|ok| !ok as usize)
                })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .sum();
            Ok(expect(
                json!({"pairs": pairs.len(), "failures": 0}),
                json!({"pairs": pairs.len(), "failures": failures}),
            ))
        },
    );

    r.check(
        "q5.four_point_span",
        "I-images of any 4 points on a simplex line have rank 4",
        |_| {
            let ranks: BTreeMap<usize, usize> = idx
                .lines()
                .par_iter()
                .map(|l| -> Result<Vec<usize>> {
                    let imgs: Vec<FVec> = l.points(f).iter().map(|p| p.rep().invert(f)).collect();
                    subsets(imgs.len(), 4)
                        .map(|s| rank(f, &s.iter().map(|&i| imgs[i].clone()).collect::<Vec<_>>()))
                        .collect()
                })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .flatten()
                .fold(BTreeMap::new(), |mut m, r| {
                    *m.entry(r).or_default() += 1;
                    m
                });
            Ok(expect(json!({"4": n_lines * binomial(q + 1, 4)}), ranks))
        },
    );

    let top_set: BTreeSet<&[LineId]> = clique_ids
        .iter()
        .filter(|ids| ids.len() == 4)
        .map(|v| v.as_slice())
        .collect();

    r.check(
        "q5.tops_per_line",
        "each line lies in 20 distinct tops, one for each triple of its points, where the other lines meet it",
        |_| {
            let per_line: Vec<(usize, bool, bool)> = (0..g.len() as LineId)
                .into_par_iter()
                .map(|l| -> Result<(usize, bool, bool)> {
                    let line = &idx.lines()[l as usize];
                    let tops = g.tops_containing(l)?;
                    let distinct: BTreeSet<&[LineId]> =
                        tops.iter().map(|t| t.top.line_ids().expect("from the graph")).collect();
                    let mut bijective = distinct.len() == tops.len();
                    let mut known = true;
                    for t in &tops {
                        let ids = t.top.line_ids().expect("from the graph");
                        known &= top_set.contains(ids);
                        let mut meets: Vec<PointId> = t
                            .top
                            .lines()
                            .iter()
                            .filter(|m| *m != line)
                            .filter_map(|m| m.meet(f, line))
                            .filter_map(|p| idx.point_id(&p))
                            .collect();
                        meets.sort_unstable();
                        let mut triple = t.triple.to_vec();
                        triple.sort_unstable();
                        bijective &= t.top.len() == 4 && meets == triple;
                    }
                    Ok((tops.len(), bijective, known))
                })
                .collect::<Result<_>>()?;
            let mut counts: Vec<usize> = per_line.iter().map(|x| x.0).collect();
            counts.sort_unstable();
            counts.dedup();
            Ok(expect(
                json!({"lines": n_lines, "tops_per_line": [tops_per_line], "matches_triples": true, "in_census": true}),
                json!({
                    "lines": per_line.len(),
                    "tops_per_line": counts,
                    "matches_triples": per_line.iter().all(|x| x.1),
                    "in_census": per_line.iter().all(|x| x.2),
                }),
            ))
        },
    );

    let tops: Vec<_> = cliques.iter().filter(|c| c.len() == 4).collect();

    r.check(
        "q5.top_transitivity",
        "a monomial map carries one top onto another, for 100 random pairs",
        |rng| {
            let pairs: Vec<(usize, usize)> =
                (0..TRANSITIVITY_PAIRS).map(|_| (rng.random_range(0..tops.len()), rng.random_range(0..tops.len()))).collect();
            let verified = pairs
                .par_iter()
                .map(|&(a, b)| -> Result<bool> {
                    let m = map_between_tops(f, tops[a], tops[b])?;
                    let mut image: Vec<PLine> = tops[a].lines().iter().map(|l| m.apply_line(f, l)).collect();
                    image.sort();
                    Ok(image == tops[b].lines())
                })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .filter(|&ok| ok)
                .count();
            let first = map_between_tops(f, tops[pairs[0].0], tops[pairs[0].1])?;
            Ok(holds(
                verified == TRANSITIVITY_PAIRS,
                json!({"verified": TRANSITIVITY_PAIRS}),
                json!({"verified": verified, "first_pair": [pairs[0].0, pairs[0].1], "first_map": first.record()}),
            ))
        },
    );

    r.check(
        "q5.top_configuration",
        "the 4 lines of every top meet pairwise in 6 distinct points, no three lines concurrent",
        |_| {
            let good = tops
                .par_iter()
                .filter(|t| {
                    let pts = t.intersection_points(f);
                    pts.len() == 6
                        && pts
                            .iter()
                            .all(|p| t.lines().iter().filter(|l| l.contains(f, p)).count() == 2)
                })
                .count();
            Ok(expect(
                json!({"tops": n_tops, "configured": n_tops}),
                json!({"tops": tops.len(), "configured": good}),
            ))
        },
    );

    Ok(r.finish(None))
}

/// `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn subsets(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = (k <= n).then(|| (0..k).collect());
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let c = cur.as_mut().unwrap();
        match (0..k).rev().find(|&i| c[i] != i + n - k) {
            Some(i) => {
                c[i] += 1;
                for j in i + 1..k {
                    c[j] = c[j - 1] + 1;
                }
            }
            None => cur = None,
        }
        Some(out)
    })
}
