//! The formulas instantiated at each exported scalar type agree.

use hodge_core::degrees::{lambda1_degree, lambda1e_degree};
use hodge_core::monodromy::connected_four_pointed;
use hodge_core::tautring::{evaluate_degree_4pt, graph_formula_lambda1};
use hodge_core::{Rational, Rational128, Rational64, Scalar};

fn parts<S: Scalar>(x: S) -> (String, String) {
    let (n, d) = x.to_parts();
    (n.to_string(), d.to_string())
}

#[test]
fn fixed_width_rationals_match_big_rationals() {
    for x in connected_four_pointed(16) {
        let big = parts(lambda1_degree::<Rational>(&x).unwrap());
        assert_eq!(parts(lambda1_degree::<Rational64>(&x).unwrap()), big, "{x}");
        assert_eq!(parts(lambda1_degree::<Rational128>(&x).unwrap()), big, "{x}");
        assert_eq!(parts(evaluate_degree_4pt(&graph_formula_lambda1::<Rational64>(&x).unwrap()).unwrap()), big, "{x}");
        for e in 0..x.d() {
            assert_eq!(
                parts(lambda1e_degree::<Rational64>(&x, e).unwrap()),
                parts(lambda1e_degree::<Rational>(&x, e).unwrap())
            );
        }
    }
}
