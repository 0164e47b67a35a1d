//! Graphs used throughout the tests, examples and acceptance suite.

use super::GraphOfGroups;

macro_rules! fixture {
    ($name:ident, $file:literal, $doc:literal) => {
        #[doc = $doc]
        pub fn $name() -> GraphOfGroups {
            GraphOfGroups::from_json_str(include_str!(concat!("../../data/", $file))).expect($file)
        }
    };
}

fixture!(figure8, "figure8.json", "One vertex with two loops: the 4-regular figure-8 graph.");
fixture!(theta, "theta.json", "Two vertices joined by three edges.");
fixture!(petersen, "petersen.json", "The Petersen graph, 3-regular on 10 vertices.");
fixture!(k4, "k4.json", "The complete graph on four vertices.");
fixture!(dumbbell, "dumbbell.json", "Two loops joined by a bridge; subgraph `loopA` is one loop.");
fixture!(
    biregular23,
    "biregular23.json",
    "A (3,4)-biregular graph on 8 + 6 vertices (tree degrees p+1, q+1 with p=2, q=3) with disjoint cycles `cycle4` and `cycle6`."
);
fixture!(order2, "order2.json", "Graph of groups with two order-2 vertices; tree-degree 3 everywhere.");
fixture!(loop_order2, "loop_order2.json", "One order-2 vertex carrying a loop with trivial edge group.");
fixture!(nagao_prefix_q2, "nagao_prefix_q2.json", "First vertices of the modular ray for q = 2.");

/// Every fixture with its file stem.
pub fn all() -> Vec<(&'static str, GraphOfGroups)> {
    vec![
        ("figure8", figure8()),
        ("theta", theta()),
        ("petersen", petersen()),
        ("k4", k4()),
        ("dumbbell", dumbbell()),
        ("biregular23", biregular23()),
        ("order2", order2()),
        ("loop_order2", loop_order2()),
        ("nagao_prefix_q2", nagao_prefix_q2()),
    ]
}
