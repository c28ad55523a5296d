//! Frozen expected values shared by the golden-table and acceptance tests.
#![allow(dead_code)]

/// Rank-1 central functions χ_n(x) for n = 0..5.
pub const RANK1: [&str; 6] = [
    "1",
    "x",
    "x^2 - 1",
    "x^3 - 2*x",
    "x^4 - 3*x^2 + 1",
    "x^5 - 4*x^3 + 3*x",
];

/// All 33 rank-3 central functions of fundamental order ≤ 3, keyed by
/// index tuple (a, b, c, d, i, j).
pub const GOLDEN_33: [(u32, u32, u32, u32, u32, u32, &str); 33] = [
    // order 0
    (0, 0, 0, 0, 1, 1, "1"),
    // order 1
    (1, 0, 0, 1, 1, 1, "t1"),
    (0, 1, 0, 1, 1, 1, "t2"),
    (0, 0, 1, 1, 1, 1, "t3"),
    // order 2
    (2, 0, 0, 2, 1, 1, "t1^2 - 1"),
    (1, 1, 0, 2, 1, 1, "1/2*t1*t2 + 1/2*t12"),
    (1, 0, 1, 2, 1, 1, "1/2*t1*t3 + 1/2*t13"),
    (0, 2, 0, 2, 1, 1, "t2^2 - 1"),
    (0, 1, 1, 2, 1, 1, "1/2*t2*t3 + 1/2*t23"),
    (0, 0, 2, 2, 1, 1, "t3^2 - 1"),
    (1, 1, 0, 0, 1, 1, "t1*t2 - t12"),
    (1, 0, 1, 0, 1, 1, "t1*t3 - t13"),
    (0, 1, 1, 0, 1, 1, "t2*t3 - t23"),
    // order 3
    (3, 0, 0, 3, 1, 1, "t1^3 - 2*t1"),
    (2, 1, 0, 3, 1, 1, "1/3*t2*t1^2 + 2/3*t12*t1 - 2/3*t2"),
    (2, 1, 0, 1, 1, 1, "t2*t1^2 - t12*t1 - 1/2*t2"),
    (2, 0, 1, 3, 1, 1, "1/3*t3*t1^2 + 2/3*t13*t1 - 2/3*t3"),
    (2, 0, 1, 1, 1, 1, "t3*t1^2 - t13*t1 - 1/2*t3"),
    (1, 2, 0, 3, 1, 1, "1/3*t1*t2^2 + 2/3*t12*t2 - 2/3*t1"),
    (1, 2, 0, 1, 1, 1, "t1*t2^2 - t12*t2 - 1/2*t1"),
    (1, 0, 2, 3, 1, 1, "1/3*t1*t3^2 + 2/3*t13*t3 - 2/3*t1"),
    (1, 0, 2, 1, 1, 1, "t1*t3^2 - t13*t3 - 1/2*t1"),
    (0, 3, 0, 3, 1, 1, "t2^3 - 2*t2"),
    (0, 2, 1, 3, 1, 1, "1/3*t3*t2^2 + 2/3*t23*t2 - 2/3*t3"),
    (0, 2, 1, 1, 1, 1, "t3*t2^2 - t23*t2 - 1/2*t3"),
    (0, 1, 2, 3, 1, 1, "1/3*t2*t3^2 + 2/3*t23*t3 - 2/3*t2"),
    (0, 1, 2, 1, 1, 1, "t2*t3^2 - t23*t3 - 1/2*t2"),
    (0, 0, 3, 3, 1, 1, "t3^3 - 2*t3"),
    (1, 1, 1, 3, 1, 1, "1/3*t3*t12 + 1/3*t2*t13 + 1/3*t1*t23"),
    (
        1,
        1,
        1,
        1,
        1,
        1,
        "3/4*t1*t2*t3 + 1/4*t12*t3 - 1/2*t2*t13 - 1/2*t1*t23",
    ),
    (
        1,
        1,
        1,
        1,
        1,
        2,
        "-1/2*t1*t2*t3 + 1/2*t12*t3 + t1*t23 - t123",
    ),
    (
        1,
        1,
        1,
        1,
        2,
        1,
        "1/2*t1*t2*t3 - 1/2*t12*t3 - t2*t13 + t123",
    ),
    (1, 1, 1, 1, 2, 2, "t1*t2*t3 - t3*t12"),
];

/// Barbell functions χ̃^b_{a,c}(x, y, z), keyed (a, c, b).
pub const BARBELL: [(u32, u32, u32, &str); 7] = [
    (1, 1, 2, "z - 1/2*x*y"),
    (2, 1, 2, "x*z - 1/2*x^2*y"),
    (1, 2, 2, "y*z - 1/2*x*y^2"),
    (3, 1, 2, "x^2*z - 1/2*x^3*y + 1/3*x*y - 2/3*z"),
    (2, 2, 2, "x*y*z - 1/2*x^2*y^2"),
    (1, 3, 2, "y^2*z - 1/2*x*y^3 + 1/3*x*y - 2/3*z"),
    (
        2,
        2,
        4,
        "z^2 - x*y*z + 1/6*x^2*y^2 + 1/3*x^2 + 1/3*y^2 - 4/3",
    ),
];

/// The 37-term order-7 function with index tuple (3, 2, 2, 3, 2, 1).
pub const BIG_3223_21: &str = "\
    1/30*t2^2*t1^3 + 4/15*t2^2*t3^2*t1^3 - 1/5*t3^2*t1^3 \
    - 1/5*t2*t3*t23*t1^3 + 2/15*t1^3 - 2/15*t2*t3^2*t12*t1^2 \
    - 7/10*t2^2*t3*t13*t1^2 + 7/15*t3*t13*t1^2 + 1/5*t3*t12*t23*t1^2 \
    + 3/10*t2*t13*t23*t1^2 + 2/3*t2*t3*t123*t1^2 - 1/3*t23*t123*t1^2 \
    - 1/6*t2^2*t1 + 2/15*t2^2*t3^2*t1 + 1/15*t3^2*t1 - 2/15*t3^2*t12^2*t1 \
    - 1/30*t12^2*t1 + 2/5*t2^2*t13^2*t1 - 4/15*t13^2*t1 + 7/30*t23^2*t1 \
    - 1/3*t2*t3*t12*t13*t1 - 1/2*t2*t3*t23*t1 + 1/30*t12*t13*t23*t1 \
    + 1/3*t3*t12*t123*t1 - 1/2*t2*t13*t123*t1 - 1/15*t1 \
    + 4/15*t2*t12*t13^2 + 4/15*t2*t3^2*t12 - 1/10*t2*t12 \
    + 1/30*t3*t12^2*t13 + 2/15*t2^2*t3*t13 - 1/10*t3*t13 \
    - 7/30*t3*t12*t23 + 2/15*t2*t13*t23 - 1/3*t2*t3*t123 \
    - 1/6*t12*t13*t123 + 1/6*t23*t123";
