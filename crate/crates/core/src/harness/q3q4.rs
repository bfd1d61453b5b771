use std::collections::BTreeMap;

use serde_json::json;

use super::{clique_key, expect, factorial, holds, RunOptions, Runner, SuiteReport};
use crate::error::{Error, Result};
use crate::graph::{triples, GammaGraph};
use crate::projgeom::{in_hyperplane, subspace_span};
use crate::simplex::{self, PointId};

/// Censuses and inversion facts for q = 3 and q = 4, where Γ is small enough
/// to check everything exhaustively.
pub fn suite_q3q4(q: u32, opts: &RunOptions) -> Result<SuiteReport> {
    if q != 3 && q != 4 {
        return Err(Error::Usage(format!(
            "suite q3q4 needs q = 3 or 4, got {q}"
        )));
    }
    let g = GammaGraph::for_q(q)?;
    let f = g.field();
    let idx = g.index();
    let qq = q as u64;
    let star_size = factorial(qq - 1);
    let n_points = simplex::simplex_point_count(qq);
    let mut r = Runner::new("q3q4", q, opts);

    r.check(
        "q3q4.counts",
        "numbers of simplex points and simplex lines",
        |_| {
            Ok(expect(
                json!({"points": n_points, "lines": n_points * star_size / (qq + 1)}),
                json!({"points": idx.points().len(), "lines": idx.lines().len()}),
            ))
        },
    );

    r.check(
        "q3q4.connected",
        "the graph of simplex lines is connected",
        |_| Ok(expect(true, g.is_connected())),
    );

    r.check("q3q4.census", "maximal cliques by size and shape", |_| {
        let mut hist: BTreeMap<String, usize> = BTreeMap::new();
        for c in g.maximal_cliques()? {
            *hist.entry(clique_key(&c)).or_default() += 1;
        }
        let kind = if q == 3 { "star_and_top" } else { "star" };
        Ok(expect(
            json!({ format!("{star_size}/{kind}"): n_points }),
            hist,
        ))
    });

    r.check("q3q4.star_sizes", "every star has (q-1)! lines", |_| {
        let mut sizes: Vec<usize> = (0..idx.points().len() as PointId)
            .map(|p| idx.star(p).len())
            .collect();
        sizes.sort_unstable();
        sizes.dedup();
        Ok(expect([star_size], sizes))
    });

    if q == 4 {
        r.check(
            "q3q4.collinear_iff_hyperplane",
            "a simplex point Q != P is collinear to P iff Q lies on H(P)",
            |_| {
                let table = idx.collinearity_table();
                let pts = idx.points();
                let zero =
                    |p: &crate::projgeom::PPoint| p.coords().iter().position(|a| a.is_zero());
                let mut mismatches = 0usize;
                let mut sharing_zero = 0usize;
                let mut collinear = 0usize;
                let mut example = None;
                for (i, p) in pts.iter().enumerate() {
                    for (j, t) in pts.iter().enumerate().filter(|&(j, _)| j != i) {
                        let c = table[i].contains(j);
                        collinear += c as usize;
                        if c != in_hyperplane(f, p, t) {
                            mismatches += 1;
                            sharing_zero += (zero(p) == zero(t)) as usize;
                            example.get_or_insert_with(|| [p.rep().indices(), t.rep().indices()]);
                        }
                    }
                }
                Ok(holds(
                    mismatches == 0,
                    json!({"mismatches": 0}),
                    json!({
                        "ordered_pairs": pts.len() * (pts.len() - 1),
                        "collinear_pairs": collinear,
                        "mismatches": mismatches,
                        "mismatches_sharing_zero_coordinate": sharing_zero,
                        "first_mismatch": example,
                    }),
                ))
            },
        );
    }

    r.check(
        "q3q4.plane_span_fails",
        "I-images of three points on a simplex line are collinear (rank 2), so they span no plane",
        |_| {
            let mut ranks = Vec::new();
            for l in idx.lines() {
                let pts = l.points(f);
                for [i, j, k] in triples(pts.len()) {
                    let imgs = [&pts[i], &pts[j], &pts[k]].map(|p| p.inverted(f));
                    ranks.push(subspace_span(f, &imgs)? + 1);
                }
            }
            let triples_checked = ranks.len();
            ranks.sort_unstable();
            ranks.dedup();
            Ok(expect(
                json!({"ranks": [2], "triples": triples_checked}),
                json!({"ranks": ranks, "triples": triples_checked}),
            ))
        },
    );

    if q == 4 {
        r.check(
            "q3q4.nonmaximal_planes",
            "some planes meet the simplex lines in a non-maximal clique, always a proper part of a star",
            |_| {
                let mut planes = 0usize;
                let mut nonmaximal = 0usize;
                let mut inside_star = true;
                for ids in g.planes_of_adjacent_pairs()?.into_values() {
                    planes += 1;
                    if g.is_maximal_clique(&ids) {
                        continue;
                    }
                    nonmaximal += 1;
                    let c = g.classify(&ids)?;
                    let star = c
                        .witness_point()
                        .and_then(|p| idx.point_id(p))
                        .map(|p| idx.star(p))
                        .unwrap_or(&[]);
                    inside_star &= ids.len() < star.len() && ids.iter().all(|l| star.contains(l));
                }
                Ok(holds(
                    nonmaximal > 0 && inside_star,
                    json!({"nonmaximal": "at least 1", "proper_part_of_star": true}),
                    json!({"planes": planes, "nonmaximal": nonmaximal, "proper_part_of_star": inside_star}),
                ))
            },
        );
    }

    Ok(r.finish(None))
}
