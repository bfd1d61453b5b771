use std::collections::BTreeMap;

use super::Check;

/// Each claim verified by the suites, with the check ids that establish it.
pub const CLAIMS: &[(&str, &[&str])] = &[
    (
        "candidate_set_is_common_collinear",
        &[
            "inversion.candidate_set",
            "q7.candidate_set",
            "q11.candidate_set",
        ],
    ),
    (
        "candidates_avoid_rest_of_line_q5",
        &["q5.off_line", "inversion.off_line"],
    ),
    (
        "collinear_iff_in_hyperplane_q4",
        &[
            "q3q4.collinear_iff_hyperplane",
            "inversion.hyperplane_iff_collinear",
        ],
    ),
    (
        "common_collinear_count_q5",
        &["q5.common_collinear", "q5.common_collinear_reference"],
    ),
    (
        "common_collinear_exceeds_candidates_q7",
        &["q7.full_scan", "q7.common_collinear_count"],
    ),
    ("frame_maps_exist", &["inversion.frame_maps"]),
    (
        "hyperplane_contains_collinear_points",
        &["inversion.hyperplane"],
    ),
    (
        "hyperplane_has_noncollinear_points_q5",
        &["inversion.hyperplane_noncollinear"],
    ),
    (
        "inversion_conjugates_monomial_maps",
        &["inversion.conjugation"],
    ),
    (
        "inversion_preserves_collinearity",
        &["inversion.collinearity"],
    ),
    ("inverted_quadruples_span_solid_q5", &["q5.four_point_span"]),
    (
        "inverted_subsets_full_rank_conjecture",
        &["conjecture.summary", "conjecture.determinants"],
    ),
    (
        "inverted_triples_degenerate_small_q",
        &["q3q4.plane_span_fails"],
    ),
    ("inverted_triples_span_plane", &["inversion.plane_span"]),
    ("maximal_cliques_q3_star_and_top", &["q3q4.census"]),
    ("maximal_cliques_q4_all_stars", &["q3q4.census"]),
    ("non_maximal_plane_cliques_q4", &["q3q4.nonmaximal_planes"]),
    ("simplex_counts", &["q3q4.counts", "q5.counts"]),
    ("star_size_factorial", &["q3q4.star_sizes", "q5.counts"]),
    (
        "three_line_tops_q11",
        &[
            "q11.tops",
            "q11.tops_distinct",
            "q11.pair_collinear",
            "q11.common_collinear",
        ],
    ),
    ("tops_exist", &["q5.census", "q7.tops", "q11.tops"]),
    (
        "tops_have_four_lines_q5",
        &["q5.census", "q5.census_structural", "q5.top_configuration"],
    ),
    ("tops_on_line_match_triples_q5", &["q5.tops_per_line"]),
    ("tops_transitive_q5", &["q5.top_transitivity"]),
    ("twenty_tops_per_line_q5", &["q5.tops_per_line"]),
    (
        "two_tops_share_triple_q7",
        &[
            "q7.tops",
            "q7.tops_distinct",
            "q7.fourth_point",
            "q7.pair_collinear",
            "q7.common_collinear",
        ],
    ),
];

pub(crate) fn for_checks(checks: &[Check]) -> BTreeMap<String, Vec<String>> {
    CLAIMS
        .iter()
        .filter_map(|(claim, ids)| {
            let present: Vec<String> = ids
                .iter()
                .filter(|id| checks.iter().any(|c| c.id == **id))
                .map(|id| id.to_string())
                .collect();
            (!present.is_empty()).then(|| (claim.to_string(), present))
        })
        .collect()
}
