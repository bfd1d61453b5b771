//! Two explicit configurations beyond q = 5. At q = 7 two distinct 4-line tops
//! share a line and the same three meeting points on it. At q = 11 there are
//! tops with only 3 lines. In both the candidate set misses a point that is
//! collinear to the pair.

use serde_json::{json, Value};

use super::{expect, holds, observed, RunOptions, Runner, SuiteReport};
use crate::error::Result;
use crate::gf::FieldSpec;
use crate::graph::{classify_lines, is_maximal_structural, simplex_lines_in_plane, Clique};
use crate::projgeom::{PLine, PPoint, Plane};
use crate::simplex;

const Q7_X: [u32; 8] = [0, 1, 1, 1, 1, 1, 1, 1];
const Q7_Y: [u32; 8] = [1, 0, 1, 3, 2, 6, 4, 5];
const Q7_Z: [u32; 8] = [1, 2, 3, 4, 1, 5, 6, 0];
const Q7_Z2: [u32; 8] = [1, 2, 6, 1, 4, 3, 5, 0];
const Q7_R: [u32; 8] = [1, 5, 6, 1, 0, 4, 2, 3];

const Q11_P: [u32; 12] = [0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1];
const Q11_Q: [u32; 12] = [1, 0, 1, 2, 4, 8, 5, 10, 9, 7, 3, 6];
const Q11_T: [u32; 12] = [1, 10, 0, 9, 6, 2, 7, 5, 3, 8, 4, 1];
const Q11_T2: [u32; 12] = [1, 10, 0, 3, 2, 9, 6, 7, 5, 8, 4, 1];

fn coords(p: &PPoint) -> Vec<u8> {
    p.rep().indices()
}

struct Config {
    f: FieldSpec,
    p: PPoint,
    q: PPoint,
    t: PPoint,
    t2: PPoint,
    line: PLine,
}

impl Config {
    fn new<const N: usize>(
        order: u32,
        p: &[u32; N],
        q: &[u32; N],
        t: &[u32; N],
        t2: &[u32; N],
    ) -> Result<Self> {
        let f = FieldSpec::new(order)?;
        let p = PPoint::from_indices(&f, p)?;
        let q = PPoint::from_indices(&f, q)?;
        let t = PPoint::from_indices(&f, t)?;
        let t2 = PPoint::from_indices(&f, t2)?;
        let line = PLine::through(&f, &p, &q)?;
        Ok(Config {
            f,
            p,
            q,
            t,
            t2,
            line,
        })
    }

    fn check_common(&self, r: &mut Runner, prefix: &str) {
        let f = &self.f;
        r.check(
            &format!("{prefix}.pair_collinear"),
            "P and Q are collinear simplex points",
            |_| Ok(expect(true, simplex::collinear(f, &self.p, &self.q)?)),
        );
        r.check(
            &format!("{prefix}.common_collinear"),
            "T and T' are simplex points collinear to both P and Q and off the line PQ",
            |_| {
                let status = |t: &PPoint| -> Result<bool> {
                    Ok(simplex::collinear(f, t, &self.p)?
                        && simplex::collinear(f, t, &self.q)?
                        && !self.line.contains(f, t))
                };
                Ok(expect(
                    json!({"T": true, "T'": true}),
                    json!({"T": status(&self.t)?, "T'": status(&self.t2)?}),
                ))
            },
        );
        r.check(
            &format!("{prefix}.candidate_set"),
            "the candidate set I(<I(P), I(Q)>) minus {P, Q} contains T but not T'",
            |_| {
                let cand = simplex::inversion_candidate_set(f, &self.p, &self.q)?;
                Ok(expect(
                    json!({"size": f.q() - 1, "contains_T": true, "contains_T'": false}),
                    json!({"size": cand.len(), "contains_T": cand.contains(&self.t), "contains_T'": cand.contains(&self.t2)}),
                ))
            },
        );
    }

    /// The clique of all simplex lines in the plane `<P, Q, t>`.
    fn top(&self, t: &PPoint) -> Result<Clique> {
        let plane = Plane::span_points(&self.f, &[&self.p, &self.q, t])?;
        classify_lines(&self.f, simplex_lines_in_plane(&self.f, &plane))
    }

    /// Size, shape, maximality and whether the triangle on `P, Q, t` is inside.
    fn describe(&self, top: &Clique, t: &PPoint) -> Result<Value> {
        let f = &self.f;
        let triangle = [(&self.p, &self.q), (&self.p, t), (&self.q, t)]
            .iter()
            .all(|(a, b)| PLine::through(f, a, b).is_ok_and(|l| top.lines().contains(&l)));
        Ok(json!({
            "lines": top.len(),
            "kind": top.kind(),
            "maximal": is_maximal_structural(f, top)?,
            "contains_triangle": triangle,
        }))
    }
}

/// The q = 7 configuration of the pair `<x>`, `<y>` with points `T`, `T'`.
pub fn suite_example_q7(opts: &RunOptions) -> Result<SuiteReport> {
    let c = Config::new(7, &Q7_X, &Q7_Y, &Q7_Z, &Q7_Z2)?;
    let f = &c.f;
    let mut r = Runner::new("example_q7", 7, opts);
    c.check_common(&mut r, "q7");

    let r_point = PPoint::from_indices(f, &Q7_R)?;
    r.check("q7.fourth_point", "R = <5x + y> lies on PQ", |_| {
        let v = c.p.rep().axpy(f, f.from_int(5), c.q.rep());
        let computed = PPoint::new(f, v)?;
        Ok(expect(
            json!({"R": Q7_R, "on_line": true}),
            json!({"R": coords(&computed), "on_line": c.line.contains(f, &computed)}),
        ))
    });

    let tops = [c.top(&c.t)?, c.top(&c.t2)?];
    r.check(
        "q7.tops",
        "the planes <P,Q,T> and <P,Q,T'> give maximal 4-line tops whose fourth line meets PQ at R",
        |_| {
            let mut actual = serde_json::Map::new();
            let mut expected = serde_json::Map::new();
            for (name, top, t) in [("T", &tops[0], &c.t), ("T'", &tops[1], &c.t2)] {
                let mut d = c.describe(top, t)?;
                let sides = [
                    PLine::through(f, &c.p, t)?,
                    PLine::through(f, &c.q, t)?,
                    c.line.clone(),
                ];
                let fourth: Vec<&PLine> =
                    top.lines().iter().filter(|l| !sides.contains(l)).collect();
                let meet = match fourth.as_slice() {
                    [l] => l.meet(f, &c.line).map(|p| coords(&p)),
                    _ => None,
                };
                d["fourth_line_meets_pq"] = json!(meet);
                actual.insert(name.into(), d);
                expected.insert(
                    name.into(),
                    json!({"lines": 4, "kind": "top", "maximal": true, "contains_triangle": true,
                           "fourth_line_meets_pq": coords(&r_point)}),
                );
            }
            Ok(expect(expected, actual))
        },
    );

    r.check(
        "q7.tops_distinct",
        "the two tops differ and share the line PQ",
        |_| {
            Ok(expect(
                json!({"distinct": true, "share_pq": true}),
                json!({
                    "distinct": tops[0] != tops[1],
                    "share_pq": tops.iter().all(|t| t.lines().contains(&c.line)),
                }),
            ))
        },
    );

    let scan = simplex::all_common_collinear(f, &c.p, &c.q)?;
    let cand = simplex::inversion_candidate_set(f, &c.p, &c.q)?;
    r.check(
        "q7.full_scan",
        "a scan of all simplex points finds T' common-collinear, outside the candidate set",
        |_| {
            let superset = cand.iter().all(|t| scan.contains(t));
            let ok = scan.contains(&c.t2) && !cand.contains(&c.t2) && superset;
            Ok(holds(
                ok,
                json!({"contains_T'": true, "candidates_contain_T'": false, "superset_of_candidates": true}),
                json!({
                    "contains_T'": scan.contains(&c.t2),
                    "candidates_contain_T'": cand.contains(&c.t2),
                    "superset_of_candidates": superset,
                }),
            ))
        },
    );

    r.check(
        "q7.common_collinear_count",
        "number of simplex points collinear to both P and Q and off PQ",
        |_| {
            Ok(observed(json!({
                "scanned": simplex::simplex_point_count(7),
                "common_collinear": scan.len(),
                "candidates": cand.len(),
            })))
        },
    );

    r.check(
        "q7.off_line",
        "whether the candidates avoid collinearity with the other points of PQ",
        |_| {
            Ok(observed(simplex::off_line_noncollinearity_check(
                f, &c.p, &c.q,
            )?))
        },
    );

    Ok(r.finish(None))
}

/// The q = 11 configuration with two 3-line tops.
pub fn suite_example_q11(opts: &RunOptions) -> Result<SuiteReport> {
    let c = Config::new(11, &Q11_P, &Q11_Q, &Q11_T, &Q11_T2)?;
    let f = &c.f;
    let mut r = Runner::new("example_q11", 11, opts);
    c.check_common(&mut r, "q11");

    let tops = [c.top(&c.t)?, c.top(&c.t2)?];
    r.check(
        "q11.tops",
        "the planes <P,Q,T> and <P,Q,T'> hold exactly 3 simplex lines forming maximal cliques",
        |_| {
            let expected =
                json!({"lines": 3, "kind": "top", "maximal": true, "contains_triangle": true});
            Ok(expect(
                json!({"T": expected, "T'": expected}),
                json!({"T": c.describe(&tops[0], &c.t)?, "T'": c.describe(&tops[1], &c.t2)?}),
            ))
        },
    );

    r.check("q11.tops_distinct", "the two tops differ", |_| {
        Ok(expect(true, tops[0] != tops[1]))
    });

    r.check(
        "q11.pool_common_collinear",
        "common-collinear points found among both planes and the candidate set",
        |_| {
            let mut pool: Vec<PPoint> = simplex::inversion_candidate_set(f, &c.p, &c.q)?;
            for t in [&c.t, &c.t2] {
                pool.extend(Plane::span_points(f, &[&c.p, &c.q, t])?.points(f));
            }
            let found = simplex::all_common_collinear_in(f, &c.p, &c.q, &pool)?;
            Ok(observed(
                json!({"pool": pool.len(), "common_collinear": found.len()}),
            ))
        },
    );

    Ok(r.finish(None))
}
