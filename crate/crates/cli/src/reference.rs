//! Published values the `reproduce` command checks against, with the
//! tolerance each column is held to.

pub const G_TOL: f64 = 2e-3;
pub const BETA_TOL: f64 = 5e-4;
pub const NUCLEAR_G_TOL: f64 = 0.02;

pub struct CountRow {
    pub g: f64,
    pub a: f64,
    pub b: f64,
    pub v0: f64,
    pub n: usize,
}

pub const COUNTS: [CountRow; 9] = [
    CountRow {
        g: 3.0,
        a: 1.5,
        b: 0.9,
        v0: 48.6845,
        n: 3,
    },
    CountRow {
        g: 3.0,
        a: 1.5,
        b: 0.7590,
        v0: 60.0,
        n: 3,
    },
    CountRow {
        g: 3.0,
        a: 1.0518,
        b: 0.9,
        v0: 60.0,
        n: 3,
    },
    CountRow {
        g: 6.4,
        a: 5.0,
        b: 0.8,
        v0: 56.2945,
        n: 6,
    },
    CountRow {
        g: 6.4,
        a: 5.0,
        b: 0.6651,
        v0: 60.0,
        n: 6,
    },
    CountRow {
        g: 6.4,
        a: 4.5090,
        b: 0.7,
        v0: 70.0,
        n: 6,
    },
    CountRow {
        g: 8.7,
        a: 6.8,
        b: 0.7,
        v0: 64.4349,
        n: 9,
    },
    CountRow {
        g: 8.7,
        a: 6.0,
        b: 0.8646,
        v0: 75.0,
        n: 9,
    },
    CountRow {
        g: 8.7,
        a: 6.0027,
        b: 0.7,
        v0: 80.0,
        n: 9,
    },
];

/// `beta_n` and `G` for `n = 1..=8`, one array per `alpha = 1..=4`.
pub const CRITICAL: [(f64, [(f64, f64); 8]); 4] = [
    (
        1.0,
        [
            (0.8774, 1.4238),
            (1.4975, 2.4302),
            (2.1402, 3.4731),
            (2.7494, 4.4617),
            (3.3789, 5.4833),
            (3.9892, 6.4735),
            (4.6142, 7.4878),
            (5.2255, 8.4798),
        ],
    ),
    (
        2.0,
        [
            (0.6226, 1.3679),
            (1.1000, 2.4166),
            (1.5723, 3.4541),
            (2.0281, 4.4555),
            (2.4907, 5.4716),
            (2.9449, 6.4694),
            (3.4046, 7.4794),
            (3.8586, 8.4767),
        ],
    ),
    (
        3.0,
        [
            (0.4683, 1.3150),
            (0.8534, 2.3963),
            (1.2234, 3.4353),
            (1.5835, 4.4465),
            (1.9446, 5.4604),
            (2.3018, 6.4635),
            (2.6607, 7.4713),
            (3.0172, 8.4722),
        ],
    ),
    (
        4.0,
        [
            (0.3697, 1.2700),
            (0.6905, 2.3717),
            (0.9947, 3.4166),
            (1.2913, 4.4354),
            (1.5866, 5.4496),
            (1.8796, 6.4563),
            (2.1729, 7.4636),
            (2.4650, 8.4669),
        ],
    ),
];

pub struct NucleusRow {
    pub element: &'static str,
    pub mass: u32,
    pub g: f64,
    pub n: usize,
}

pub const NUCLEI: [NucleusRow; 3] = [
    NucleusRow {
        element: "O",
        mass: 16,
        g: 4.13,
        n: 2,
    },
    NucleusRow {
        element: "Sn",
        mass: 132,
        g: 7.42,
        n: 3,
    },
    NucleusRow {
        element: "Pb",
        mass: 208,
        g: 8.49,
        n: 4,
    },
];
