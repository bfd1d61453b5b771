//! Shared fixtures for the criterion benches.

use simplexgraph::graph::GammaGraph;
use simplexgraph::simplex::SimplexIndex;
use simplexgraph::FieldSpec;

pub fn graph(q: u32) -> GammaGraph {
    let f = FieldSpec::new(q).expect("prime power");
    GammaGraph::build(SimplexIndex::new(f).expect("q <= 5")).expect("q <= 5")
}
