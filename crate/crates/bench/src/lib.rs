//! Benchmark inputs shared by the criterion targets.

use apolar::{default_names, parse_poly, random_direct_sum, Poly, Ring};

pub fn form(text: &str, n: usize) -> Poly {
    parse_poly(text, Ring::S, &default_names(Ring::S, n)).expect("benchmark input parses")
}

/// Named forms of increasing size.
pub fn gallery() -> Vec<(&'static str, Poly)> {
    vec![
        ("fermat_cubic", form("x^3 + y^3 + z^3", 3)),
        ("plane_sextic_limit", form("x*y^5 + y^3*z^3", 3)),
        ("dense_quartic_n4", form("x1^4 + x2^4 + x3^4 + x4^4 + x1*x2*x3*x4 + x1^2*x3^2 - x2^3*x4", 4)),
        ("direct_sum_2_2_d5", random_direct_sum(&[2, 2], 5, 1).expect("valid shape").0),
        ("direct_sum_1_1_1_1_d4", random_direct_sum(&[1, 1, 1, 1], 4, 2).expect("valid shape").0),
    ]
}
