//! Reference data for the catalog: published Saito matrices, symplectic
//! forms, stratum equations and Betti tables. Matrices are row-major text in
//! the parameters `a, b, c, …`.

pub struct Golden {
    pub label: &'static str,
    pub chi: Option<&'static [&'static [&'static str]]>,
    pub omega: Option<&'static [&'static [&'static str]]>,
    /// Per stratum `k = δ, δ-1, …, 1` (Pfaffians of size 2, 4, …).
    pub strata: &'static [StratumGolden],
}

#[derive(Clone, Copy)]
pub struct StratumGolden {
    pub k: usize,
    pub betti: Option<&'static [usize]>,
    pub codim: Option<usize>,
    pub pd: Option<usize>,
    pub cohen_macaulay: Option<bool>,
    pub poisson_closed: Option<bool>,
    pub degree: Option<u64>,
    /// Budget class: heavy rows may end in "budget exceeded" without failing.
    pub soft: bool,
}

const fn row(k: usize) -> StratumGolden {
    StratumGolden { k, betti: None, codim: None, pd: None, cohen_macaulay: None, poisson_closed: None, degree: None, soft: false }
}

pub const A2: Golden = Golden {
    label: "A2",
    chi: Some(&[&["4*a", "6*b"], &["6*b", "-4/3*a^2"]]),
    omega: Some(&[&["0", "1"], &["-1", "0"]]),
    strata: &[StratumGolden { poisson_closed: Some(true), codim: Some(1), ..row(1) }],
};

pub const A2_DISCRIMINANT: &str = "4*a^3 + 27*b^2";

pub const A4: Golden = Golden {
    label: "A4",
    chi: Some(&[
        &["10*a", "15*b", "20*c", "25*d"],
        &["15*b", "-6*a^2 + 20*c", "-4*a*b + 25*d", "-2*a*c"],
        &["20*c", "-4*a*b + 25*d", "-6*b^2 + 10*a*c", "-3*b*c + 15*a*d"],
        &["25*d", "-2*a*c", "-3*b*c + 15*a*d", "-4*c^2 + 10*b*d"],
    ]),
    omega: Some(&[&["0", "a", "0", "1"], &["-a", "0", "3", "0"], &["0", "-3", "0", "0"], &["-1", "0", "0", "0"]]),
    strata: &[
        StratumGolden { betti: Some(&[3, 2]), codim: Some(2), cohen_macaulay: Some(true), poisson_closed: Some(true), ..row(2) },
        StratumGolden { betti: Some(&[1]), codim: Some(1), cohen_macaulay: Some(true), poisson_closed: Some(true), ..row(1) },
    ],
};

/// Printed generators of the ideal of `D(2)` for `A4`.
pub const A4_D2_GENERATORS: [&str; 3] = [
    "a^4 + 27/4*a*b^2 - 9*a^2*c + 20*c^2 - 25/2*a*d",
    "a^3*b + 27/4*b^3 - 9*a*b*c - 10*a^2*d + 50*c*d",
    "a^3*c + 27/4*b^2*c - 4*a*c^2 - 20*a*b*d + 125/4*d^2",
];

/// The first generator with its last term replaced to make it weighted
/// homogeneous (weight 16).
pub const A4_D2_FIRST_HOMOGENEOUS: &str = "a^4 + 27/4*a*b^2 - 9*a^2*c + 20*c^2 - 25/2*b*d";

/// Constructed points of the `A4` base: `(u, number of nodes)`.
pub const A4_POINTS: [([i64; 4], usize); 3] = [([-3, 2, 0, 0], 2), ([-3, 3, -2, 1], 1), ([1, 1, 1, 1], 0)];

pub const A6: Golden = Golden {
    label: "A6",
    chi: Some(&[
        &["2*a", "3*b", "4*c", "5*d", "6*e", "7*f"],
        &["3*b", "-10/7*a^2 + 4*c", "-8/7*a*b + 5*d", "-6/7*a*c + 6*e", "-4/7*a*d + 7*f", "-2/7*a*e"],
        &["4*c", "-8/7*a*b + 5*d", "-12/7*b^2 + 2*a*c + 6*e", "-9/7*b*c + 3*a*d + 7*f", "-6/7*b*d + 4*a*e", "-3/7*b*e + 5*a*f"],
        &["5*d", "-6/7*a*c + 6*e", "-9/7*b*c + 3*a*d + 7*f", "-12/7*c^2 + 2*b*d + 4*a*e", "-8/7*c*d + 3*b*e + 5*a*f", "-4/7*c*e + 4*b*f"],
        &["6*e", "-4/7*a*d + 7*f", "-6/7*b*d + 4*a*e", "-8/7*c*d + 3*b*e + 5*a*f", "-10/7*d^2 + 2*c*e + 4*b*f", "-5/7*d*e + 3*c*f"],
        &["7*f", "-2/7*a*e", "-3/7*b*e + 5*a*f", "-4/7*c*e + 4*b*f", "-5/7*d*e + 3*c*f", "-6/7*e^2 + 2*d*f"],
    ]),
    omega: Some(&[
        &["0", "-3*a^2 - c", "-6*b", "9*a", "0", "-3"],
        &["3*a^2 + c", "0", "-5*a", "0", "-5", "0"],
        &["6*b", "5*a", "0", "-15", "0", "0"],
        &["-9*a", "0", "15", "0", "0", "0"],
        &["0", "5", "0", "0", "0", "0"],
        &["3", "0", "0", "0", "0", "0"],
    ]),
    strata: &[
        StratumGolden { betti: Some(&[6, 8, 3]), codim: Some(3), cohen_macaulay: Some(true), poisson_closed: Some(true), ..row(3) },
        StratumGolden { betti: Some(&[5, 4]), codim: Some(2), cohen_macaulay: Some(true), poisson_closed: Some(true), ..row(2) },
        StratumGolden { betti: Some(&[1]), codim: Some(1), cohen_macaulay: Some(true), poisson_closed: Some(true), ..row(1) },
    ],
};

pub const A8: Golden = Golden {
    label: "A8",
    chi: None,
    omega: None,
    strata: &[
        StratumGolden { betti: Some(&[10, 20, 15, 4]), codim: Some(4), cohen_macaulay: Some(true), soft: true, ..row(4) },
        StratumGolden { betti: Some(&[15, 24, 10]), codim: Some(3), cohen_macaulay: Some(true), soft: true, ..row(3) },
        StratumGolden { betti: Some(&[7, 6]), codim: Some(2), cohen_macaulay: Some(true), soft: true, ..row(2) },
        StratumGolden { betti: Some(&[1]), codim: Some(1), cohen_macaulay: Some(true), soft: true, ..row(1) },
    ],
};

pub const E6: Golden = Golden {
    label: "E6",
    chi: Some(&[
        &["2*a", "5*b", "6*c", "8*d", "9*e", "12*f"],
        &[
            "5*b",
            "-a^4/6 - 4*a*c + 8*d",
            "a^2*b/2 + 9*e",
            "-a^3*b/12 - (3*b*c + a*e)/2",
            "(a*b^2 - a^3*c)/6 + (a^2*d - 9*c^2)/3 + 12*f",
            "a*b*d/6 - a^3*e/12 - 3*c*e/2",
        ],
        &[
            "6*c",
            "a^2*b/2 + 9*e",
            "-(5*b^2 + 2*a^2*c + 10*a*d)/3",
            "7*a*b^2/12 - 4*a^2*d/3 + 12*f",
            "7*a*b*c/6 - (13*b*d + 4*a^2*e)/3",
            "-8*d^2/3 + 7*a*b*e/12 - 2*a^2*f",
        ],
        &[
            "8*d",
            "-a^3*b/12 - (3*b*c + a*e)/2",
            "7*a*b^2/12 - 4*a^2*d/3 + 12*f",
            "-a^2*b^2/24 + 4*c*d - 7*b*e/2 + 6*a*f",
            "(5*b^3 - a^2*b*c)/12 - 7*a*b*d/6 - 3*c*e/2",
            "(10*b^2*d - a^2*b*e)/24 - 4*a*d^2/3 - 9*e^2/4 + 6*c*f",
        ],
        &[
            "9*e",
            "(a*b^2 - a^3*c)/6 + (a^2*d - 9*c^2)/3 + 12*f",
            "7*a*b*c/6 - 13*b*d/3 - 4*a^2*e/3",
            "(5*b^3 - a^2*b*c)/12 - 7*a*b*d/6 - 3*c*e/2",
            "4*b^2*c/3 - a^2*c^2/6 + (8*a*c*d - 8*d^2 - 5*a*b*e - 6*a^2*f)/3",
            "b*c*d/2 + (5*b^2*e - a^2*c*e)/12 + 5*a*d*e/6 - 3*a*b*f",
        ],
        &[
            "12*f",
            "a*b*d/6 - a^3*e/12 - 3*c*e/2",
            "-8*d^2/3 + 7*a*b*e/12 - 2*a^2*f",
            "(10*b^2*d - a^2*b*e)/24 - 4*a*d^2/3 - 9*e^2/4 + 6*c*f",
            "b*c*d/2 + (5*b^2*e - a^2*c*e)/12 + 5*a*d*e/6 - 3*a*b*f",
            "-4*c*d^2/3 + 11*b*d*e/6 - a^2*e^2/24 - b^2*f - 2*a*d*f",
        ],
    ]),
    omega: Some(&[
        &["0", "-a*b/15", "c/5", "2*a^2/15", "0", "1/5"],
        &["a*b/15", "0", "0", "0", "1/2", "0"],
        &["-c/5", "0", "0", "1", "0", "0"],
        &["-2*a^2/15", "0", "-1", "0", "0", "0"],
        &["0", "-1/2", "0", "0", "0", "0"],
        &["-1/5", "0", "0", "0", "0", "0"],
    ]),
    strata: &[
        StratumGolden {
            codim: Some(3),
            pd: Some(3),
            cohen_macaulay: Some(true),
            poisson_closed: Some(true),
            degree: Some(5),
            ..row(3)
        },
        StratumGolden { codim: Some(2), pd: Some(3), cohen_macaulay: Some(false), poisson_closed: Some(true), soft: true, ..row(2) },
    ],
};

pub const E8: Golden = Golden {
    label: "E8",
    chi: None,
    omega: None,
    strata: &[StratumGolden { degree: Some(7), soft: true, ..row(4) }],
};

pub fn lookup(label: &str) -> Option<&'static Golden> {
    [&A2, &A4, &A6, &A8, &E6, &E8].into_iter().find(|g| g.label.eq_ignore_ascii_case(label))
}
