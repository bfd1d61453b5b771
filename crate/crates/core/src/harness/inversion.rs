//! Properties of the inversion `I` and of monomial maps, exhaustive for q ≤ 5
//! and sampled from the check's seeded stream above that.

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use super::{expect, holds, observed, sample, RunOptions, Runner, SuiteReport};
use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::graph::triples;
use crate::monomial::{frame_map, MonomialMap};
use crate::projgeom::{in_hyperplane, subspace_span, PLine, PPoint};
use crate::simplex::{self, SimplexIndex, MAX_LINES_Q};

const RELATION_SAMPLES: usize = 10_000;
const FRAME_SAMPLES: usize = 1_000;
const PAIR_SAMPLES: usize = 1_000;
const CONJUGATION_MAPS: usize = 100;
const MAX_Q: u32 = 11;

/// Counts of (checked, failed) items.
fn tally(items: impl Iterator<Item = bool>) -> (usize, usize) {
    items.fold((0, 0), |(n, bad), ok| (n + 1, bad + !ok as usize))
}

fn tally_json((checked, failures): (usize, usize)) -> serde_json::Value {
    json!({"checked": checked, "failures": failures})
}

fn no_failures(checked: usize) -> serde_json::Value {
    json!({"checked": checked, "failures": 0})
}

/// Random collinear pairs drawn up front so the parallel part does not touch
/// the generator.
fn pairs(f: &FieldSpec, rng: &mut ChaCha8Rng, n: usize) -> Vec<(PPoint, PPoint)> {
    (0..n).map(|_| sample::collinear_pair(f, rng)).collect()
}

fn plane_span_rank(f: &FieldSpec, l: &PLine, pts: [&PPoint; 3]) -> Result<usize> {
    debug_assert!(pts.iter().all(|p| l.contains(f, p)));
    Ok((subspace_span(f, &pts.map(|p| p.inverted(f)))? + 1) as usize)
}

/// Runs the inversion and monomial property checks at field order `q` (3 ≤ q ≤ 11).
pub fn suite_inversion_props(q: u32, opts: &RunOptions) -> Result<SuiteReport> {
    if !(3..=MAX_Q).contains(&q) {
        return Err(Error::Usage(format!(
            "suite inversion supports 3 <= q <= {MAX_Q}, got {q}"
        )));
    }
    let f = FieldSpec::new(q)?;
    let f = &f;
    let index = if q <= MAX_LINES_Q {
        Some(SimplexIndex::new(f.clone())?)
    } else {
        None
    };
    let table = index.as_ref().map(|i| i.collinearity_table());
    let scope = if index.is_some() {
        "exhaustive"
    } else {
        "sampled"
    };
    let mut r = Runner::new("inversion", q, opts);

    r.check(
        "inversion.involution",
        &format!("I(I(P)) = P and I(P) is simplex ({scope})"),
        |rng| {
            let pts: Vec<PPoint> = match &index {
                Some(idx) => idx.points().to_vec(),
                None => (0..RELATION_SAMPLES)
                    .map(|_| sample::point(f, rng))
                    .collect(),
            };
            let t = tally(
                pts.par_iter()
                    .map(|p| {
                        let i = p.inverted(f);
                        simplex::is_simplex_point(f, &i) && i.inverted(f) == *p
                    })
                    .collect::<Vec<_>>()
                    .into_iter(),
            );
            Ok(expect(no_failures(t.0), tally_json(t)))
        },
    );

    r.check(
        "inversion.hyperplane",
        &format!("every simplex P lies on H(P), and so does every point collinear to P ({scope})"),
        |rng| {
            let t = match (&index, &table) {
                (Some(idx), Some(table)) => tally(
                    idx.points()
                        .par_iter()
                        .enumerate()
                        .map(|(i, p)| {
                            in_hyperplane(f, p, p)
                                && table[i]
                                    .ones()
                                    .all(|j| in_hyperplane(f, p, idx.point(j as u32)))
                        })
                        .collect::<Vec<_>>()
                        .into_iter(),
                ),
                _ => tally(
                    pairs(f, rng, RELATION_SAMPLES)
                        .par_iter()
                        .map(|(p, t)| {
                            in_hyperplane(f, p, p)
                                && in_hyperplane(f, p, t)
                                && in_hyperplane(f, t, p)
                        })
                        .collect::<Vec<_>>()
                        .into_iter(),
                ),
            };
            Ok(expect(no_failures(t.0), tally_json(t)))
        },
    );

    if let (4, Some(idx), Some(table)) = (q, &index, &table) {
        r.check(
            "inversion.hyperplane_iff_collinear",
            "for q = 4 a simplex Q with its zero at another coordinate than P's is collinear to P exactly when Q lies on H(P)",
            |_| {
                let pts = idx.points();
                let zero = |p: &PPoint| p.coords().iter().position(|a| a.is_zero());
                let t = tally((0..pts.len()).flat_map(|i| {
                    (0..pts.len())
                        .filter(move |&j| zero(&pts[j]) != zero(&pts[i]))
                        .map(move |j| table[i].contains(j) == in_hyperplane(f, &pts[i], &pts[j]))
                }));
                Ok(expect(no_failures(t.0), tally_json(t)))
            },
        );
    }

    if let (5, Some(idx), Some(table)) = (q, &index, &table) {
        r.check(
            "inversion.hyperplane_noncollinear",
            "for q = 5 every H(P) contains a simplex point other than P not collinear to P",
            |_| {
                let pts = idx.points();
                let t = tally(
                    pts.par_iter()
                        .enumerate()
                        .map(|(i, p)| {
                            pts.iter().enumerate().any(|(j, t)| {
                                j != i && !table[i].contains(j) && in_hyperplane(f, p, t)
                            })
                        })
                        .collect::<Vec<_>>()
                        .into_iter(),
                );
                Ok(expect(no_failures(t.0), tally_json(t)))
            },
        );
    }

    r.check(
        "inversion.collinearity",
        &format!("P, Q are collinear iff I(P), I(Q) are collinear ({scope})"),
        |rng| {
            let (t, collinear) = match (&index, &table) {
                (Some(idx), Some(table)) => {
                    let inv: Vec<usize> = idx
                        .points()
                        .iter()
                        .map(|p| idx.point_id(&p.inverted(f)).expect("simplex") as usize)
                        .collect();
                    let n = inv.len();
                    let rows: Vec<(usize, usize)> = (0..n)
                        .into_par_iter()
                        .map(|i| {
                            let bad = (0..n)
                                .filter(|&j| {
                                    j != i && table[i].contains(j) != table[inv[i]].contains(inv[j])
                                })
                                .count();
                            (bad, table[i].count_ones(..))
                        })
                        .collect();
                    let bad: usize = rows.iter().map(|r| r.0).sum();
                    let collinear: usize = rows.iter().map(|r| r.1).sum();
                    ((n * (n - 1), bad), collinear)
                }
                _ => {
                    // half collinear pairs, half independent random points
                    let mut ps = pairs(f, rng, RELATION_SAMPLES / 2);
                    ps.extend(
                        (0..RELATION_SAMPLES / 2)
                            .map(|_| (sample::point(f, rng), sample::point(f, rng))),
                    );
                    let rows: Vec<(bool, bool)> = ps
                        .par_iter()
                        .filter(|(p, t)| p != t)
                        .map(|(p, t)| -> Result<(bool, bool)> {
                            let c = simplex::collinear(f, p, t)?;
                            Ok((
                                c == simplex::collinear(f, &p.inverted(f), &t.inverted(f))?,
                                c,
                            ))
                        })
                        .collect::<Result<_>>()?;
                    (
                        tally(rows.iter().map(|r| r.0)),
                        rows.iter().filter(|r| r.1).count(),
                    )
                }
            };
            let mut actual = tally_json(t);
            actual["collinear"] = json!(collinear);
            Ok(holds(t.1 == 0, json!({"failures": 0}), actual))
        },
    );

    let expected_rank = if q >= 5 { 3 } else { 2 };
    let plane_desc = if q >= 5 {
        format!("I-images of 3 distinct points on a simplex line span a plane ({scope})")
    } else {
        "I-images of 3 points on a simplex line stay collinear for q <= 4, so no plane is spanned"
            .to_string()
    };
    r.check("inversion.plane_span", &plane_desc, |rng| {
        let ranks: Vec<usize> = match &index {
            Some(idx) => idx
                .lines()
                .par_iter()
                .map(|l| -> Result<Vec<usize>> {
                    let pts = l.points(f);
                    triples(pts.len())
                        .map(|[i, j, k]| plane_span_rank(f, l, [&pts[i], &pts[j], &pts[k]]))
                        .collect()
                })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .flatten()
                .collect(),
            None => {
                let draws: Vec<(PLine, Vec<PPoint>)> = (0..RELATION_SAMPLES)
                    .map(|_| {
                        let l = sample::line(f, rng);
                        let p = sample::points_on(f, &l, 3, rng);
                        (l, p)
                    })
                    .collect();
                draws
                    .par_iter()
                    .map(|(l, p)| plane_span_rank(f, l, [&p[0], &p[1], &p[2]]))
                    .collect::<Result<_>>()?
            }
        };
        let mut distinct = ranks.clone();
        distinct.sort_unstable();
        distinct.dedup();
        Ok(expect(
            json!({"triples": ranks.len(), "ranks": [expected_rank]}),
            json!({"triples": ranks.len(), "ranks": distinct}),
        ))
    });

    r.check(
        "inversion.frame_maps",
        "a monomial map sends any three points of a simplex line to any three points of another, in order",
        |rng| {
            let draws: Vec<_> = (0..FRAME_SAMPLES)
                .map(|_| {
                    let l = sample::line(f, rng);
                    let l2 = sample::line(f, rng);
                    let mut a = sample::points_on(f, &l, 3, rng);
                    let mut b = sample::points_on(f, &l2, 3, rng);
                    rand::seq::SliceRandom::shuffle(a.as_mut_slice(), rng);
                    rand::seq::SliceRandom::shuffle(b.as_mut_slice(), rng);
                    (l, a, l2, b)
                })
                .collect();
            let ok: Vec<bool> = draws
                .par_iter()
                .map(|(l, a, l2, b)| -> Result<bool> {
                    let m = frame_map(f, l, [&a[0], &a[1], &a[2]], l2, [&b[0], &b[1], &b[2]])?;
                    Ok((0..3).all(|k| m.apply_point(f, &a[k]) == b[k]) && m.apply_line(f, l) == *l2)
                })
                .collect::<Result<_>>()?;
            let t = tally(ok.into_iter());
            Ok(expect(no_failures(t.0), tally_json(t)))
        },
    );

    r.check(
        "inversion.conjugation",
        &format!("I(l(P)) = l'(I(P)) where l' keeps the permutation of l and inverts its scalars ({scope})"),
        |rng| {
            let n = f.order() + 1;
            let work: Vec<(MonomialMap, Vec<PPoint>)> = match &index {
                Some(idx) => (0..CONJUGATION_MAPS)
                    .map(|_| (MonomialMap::random(f, n, rng), idx.points().to_vec()))
                    .collect(),
                None => (0..RELATION_SAMPLES / 10)
                    .map(|_| (MonomialMap::random(f, n, rng), (0..10).map(|_| sample::point(f, rng)).collect()))
                    .collect(),
            };
            let ok: Vec<bool> = work
                .par_iter()
                .flat_map_iter(|(m, pts)| {
                    let mc = m.conjugate_by_inversion(f);
                    pts.iter().map(move |p| m.apply_point(f, p).inverted(f) == mc.apply_point(f, &p.inverted(f)))
                })
                .collect();
            let t = tally(ok.into_iter());
            Ok(expect(no_failures(t.0), tally_json(t)))
        },
    );

    if q >= 5 {
        let pair_list: Vec<(PPoint, PPoint)> = match &index {
            Some(idx) => idx
                .lines()
                .iter()
                .flat_map(|l| {
                    let pts = l.points(f);
                    (0..pts.len())
                        .flat_map(|i| (i + 1..pts.len()).map(move |j| (i, j)))
                        .map(|(i, j)| (pts[i].clone(), pts[j].clone()))
                        .collect::<Vec<_>>()
                })
                .collect(),
            None => pairs(
                f,
                &mut super::check_rng(opts.seed, "inversion.pairs"),
                PAIR_SAMPLES,
            ),
        };

        r.check(
            "inversion.candidate_set",
            &format!("candidate points are simplex, collinear to both points of the pair and off their line ({scope})"),
            |_| {
                let ok: Vec<bool> = pair_list
                    .par_iter()
                    .map(|(p, t)| -> Result<bool> {
                        let line = PLine::through(f, p, t)?;
                        let cand = simplex::inversion_candidate_set(f, p, t)?;
                        let mut good = cand.len() == (q - 1) as usize;
                        for c in &cand {
                            good &= simplex::is_simplex_point(f, c)
                                && simplex::collinear(f, c, p)?
                                && simplex::collinear(f, c, t)?
                                && !line.contains(f, c);
                        }
                        Ok(good)
                    })
                    .collect::<Result<_>>()?;
                let t = tally(ok.into_iter());
                Ok(expect(no_failures(t.0), tally_json(t)))
            },
        );

        r.check(
            "inversion.off_line",
            &format!(
                "candidate points are collinear to no other point of the pair's line ({scope})"
            ),
            |_| {
                let ok: Vec<bool> = pair_list
                    .par_iter()
                    .map(|(p, t)| simplex::off_line_noncollinearity_check(f, p, t))
                    .collect::<Result<_>>()?;
                let t = tally(ok.into_iter());
                if q == 5 {
                    Ok(expect(no_failures(t.0), tally_json(t)))
                } else {
                    Ok(observed(
                        json!({"pairs": t.0, "holds": t.0 - t.1, "fails": t.1}),
                    ))
                }
            },
        );
    }

    Ok(r.finish(None))
}
