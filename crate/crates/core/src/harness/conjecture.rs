//! Sweeps of the rank conjecture: for q ≥ 5 the I-images of any q − 1
//! distinct points on a simplex line are linearly independent.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::q5::subsets;
use super::{binomial, expect, observed, sample, RunOptions, Runner, SuiteReport};
use crate::error::{Error, Result};
use crate::gf::{Fe, FieldSpec};
use crate::projgeom::{determinant, rank, FVec, PLine};
use crate::simplex::{self, LineId, SimplexIndex};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConjectureMode {
    /// Every line and every subset (q = 5).
    Exhaustive,
    /// Every subset of the standard line.
    Representative,
    /// Random lines with one random subset each.
    Sampled,
}

impl std::str::FromStr for ConjectureMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(ConjectureMode::Exhaustive),
            "representative" => Ok(ConjectureMode::Representative),
            "sampled" => Ok(ConjectureMode::Sampled),
            _ => Err(Error::Usage(format!("unknown conjecture mode {s:?}"))),
        }
    }
}

/// How a result names its line: an id in the full line index, `"standard"`,
/// or the two rows of its reduced basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum LineRef {
    Id(LineId),
    Named(String),
    Rows(Vec<Vec<u8>>),
}

/// Rank of the I-images of one subset. `subset` holds point ids for
/// [`LineRef::Id`] and positions in [`PLine::points`] order otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureResult {
    pub q: u32,
    pub line: LineRef,
    pub subset: Vec<u32>,
    pub rank: usize,
    pub holds: bool,
}

fn images(f: &FieldSpec, l: &PLine) -> Vec<FVec> {
    l.points(f).iter().map(|p| p.rep().invert(f)).collect()
}

fn subset_rank(f: &FieldSpec, imgs: &[FVec], subset: &[usize]) -> Result<usize> {
    rank(
        f,
        &subset.iter().map(|&i| imgs[i].clone()).collect::<Vec<_>>(),
    )
}

/// Runs the sweep. `samples` only matters in sampled mode.
pub fn suite_conjecture(
    q: u32,
    mode: ConjectureMode,
    samples: usize,
    opts: &RunOptions,
) -> Result<SuiteReport> {
    let f = FieldSpec::new(q)?;
    let f = &f;
    if q < 5 {
        return Err(Error::Usage(format!(
            "the conjecture concerns q >= 5, got {q}"
        )));
    }
    if mode == ConjectureMode::Exhaustive && q != 5 {
        return Err(Error::Usage(format!(
            "exhaustive mode needs q = 5, got {q}"
        )));
    }
    let k = (q - 1) as usize;
    let n = q as usize + 1;
    let mut r = Runner::new("conjecture", q, opts);

    let results: Vec<ConjectureResult> = match mode {
        ConjectureMode::Exhaustive => {
            let idx = SimplexIndex::new(f.clone())?;
            (0..idx.lines().len() as LineId)
                .into_par_iter()
                .map(|l| -> Result<Vec<ConjectureResult>> {
                    let imgs = images(f, &idx.lines()[l as usize]);
                    let ids = idx.line_points(l);
                    subsets(n, k)
                        .map(|s| {
                            let rank = subset_rank(f, &imgs, &s)?;
                            let mut subset: Vec<u32> = s.iter().map(|&i| ids[i]).collect();
                            subset.sort_unstable();
                            Ok(ConjectureResult {
                                q,
                                line: LineRef::Id(l),
                                subset,
                                rank,
                                holds: rank == k,
                            })
                        })
                        .collect()
                })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .flatten()
                .collect()
        }
        ConjectureMode::Representative => {
            let imgs = images(f, &simplex::standard_line(f));
            subsets(n, k)
                .map(|s| {
                    let rank = subset_rank(f, &imgs, &s)?;
                    let subset = s.iter().map(|&i| i as u32).collect();
                    Ok(ConjectureResult {
                        q,
                        line: LineRef::Named("standard".into()),
                        subset,
                        rank,
                        holds: rank == k,
                    })
                })
                .collect::<Result<_>>()?
        }
        ConjectureMode::Sampled => {
            let mut rng = super::check_rng(opts.seed, "conjecture.sampled");
            let draws: Vec<(PLine, Vec<usize>)> = (0..samples)
                .map(|_| {
                    let l = sample::line(f, &mut rng);
                    let mut s = rand::seq::index::sample(&mut rng, n, k).into_vec();
                    s.sort_unstable();
                    (l, s)
                })
                .collect();
            draws
                .par_iter()
                .map(|(l, s)| {
                    let rank = subset_rank(f, &images(f, l), s)?;
                    Ok(ConjectureResult {
                        q,
                        line: LineRef::Rows(l.rows().iter().map(|r| r.indices()).collect()),
                        subset: s.iter().map(|&i| i as u32).collect(),
                        rank,
                        holds: rank == k,
                    })
                })
                .collect::<Result<_>>()?
        }
    };

    r.check(
        "conjecture.summary",
        &format!("I-images of q-1 = {k} distinct points on a simplex line have rank {k}"),
        |_| {
            let mut ranks: BTreeMap<usize, usize> = BTreeMap::new();
            for res in &results {
                *ranks.entry(res.rank).or_default() += 1;
            }
            let holding = results.iter().filter(|r| r.holds).count();
            let actual = json!({"subsets": results.len(), "holding": holding, "ranks": ranks});
            if q == 5 {
                Ok(expect(json!({"subsets": results.len(), "holding": results.len(), "ranks": {k.to_string(): results.len()}}), actual))
            } else {
                Ok(observed(actual))
            }
        },
    );

    if mode == ConjectureMode::Representative {
        r.check(
            "conjecture.determinants",
            "determinants of the first q-1 coordinates of I(x), I(y), I(x+y) and I(ax+y) for distinct a outside {0, 1}",
            |_| {
                let (x, y) = simplex::standard_pair(f);
                let others: Vec<Fe> = f.nonzero().filter(|&a| a != Fe::ONE).collect();
                let head = |v: FVec| FVec(v.invert(f).0[..k].to_vec());
                let base = [head(x.clone()), head(y.clone()), head(x.add(f, &y))];
                let mut nonzero = 0usize;
                let mut zero_at = Vec::new();
                let picks: Vec<Vec<usize>> = subsets(others.len(), k - 3).collect();
                for s in &picks {
                    let mut rows = base.to_vec();
                    rows.extend(s.iter().map(|&i| head(x.axpy(f, others[i], &y))));
                    if determinant(f, &rows)?.is_zero() {
                        zero_at.push(s.iter().map(|&i| others[i].0).collect::<Vec<_>>());
                    } else {
                        nonzero += 1;
                    }
                }
                let total = binomial(q as u64 - 2, q as u64 - 4) as usize;
                let actual = json!({"determinants": picks.len(), "nonzero": nonzero, "zero_at": zero_at});
                if q == 5 || q == 7 {
                    Ok(expect(json!({"determinants": total, "nonzero": total, "zero_at": []}), actual))
                } else {
                    Ok(observed(actual))
                }
            },
        );
    }

    Ok(r.finish(Some(results)))
}
