//! Hard-coded lattice data: the Hermitian form `A` and the four generators
//! `u, v, j, b`. Every entry is a canonical tuple `(c0, c1, c2, c3)` meaning
//! `c0 + c1·ζ + c2·ζ² + c3·ζ³`; `√3` is written as `2ζ − ζ³`.

use super::{CycMatrix, CyclotomicElement};

type Tuple = (i64, i64, i64, i64);

const ZERO: Tuple = (0, 0, 0, 0);
const ONE: Tuple = (1, 0, 0, 0);

const FORM_A: [[Tuple; 3]; 3] = [
    [
        (-1, -2, 0, 1), // -1 - √3
        ONE,            // 1
        ZERO,
    ],
    [
        ONE,           // 1
        (1, -2, 0, 1), // 1 - √3
        ZERO,
    ],
    [ZERO, ZERO, ONE],
];

const GEN_U: [[Tuple; 3]; 3] = [
    [ONE, ZERO, ZERO],
    [
        (1, 1, -1, -1), // -ζ³ - ζ² + ζ + 1
        (0, 0, 0, 1),   // ζ³
        ZERO,
    ],
    [ZERO, ZERO, ONE],
];

const GEN_V: [[Tuple; 3]; 3] = [
    [
        (1, 0, 0, 1),   // ζ³ + 1
        (1, -1, -1, 1), // ζ³ - ζ² - ζ + 1
        ZERO,
    ],
    [
        (0, 1, 1, 0),   // ζ² + ζ
        (-1, 0, 0, -1), // -ζ³ - 1
        ZERO,
    ],
    [ZERO, ZERO, ONE],
];

const GEN_J: [[Tuple; 3]; 3] = [
    [(0, 1, 0, 0), ZERO, ZERO], // ζ
    [ZERO, (0, 1, 0, 0), ZERO], // ζ
    [ZERO, ZERO, ONE],
];

const GEN_B: [[Tuple; 3]; 3] = [
    [
        (0, 0, 1, 1),  // ζ³ + ζ²
        (0, 0, -1, 0), // -ζ²
        (-1, 0, 1, 0), // ζ² - 1
    ],
    [
        (0, 1, 2, 1),  // ζ³ + 2ζ² + ζ
        (0, -1, 0, 0), // -ζ
        (0, 0, 1, 1),  // ζ³ + ζ²
    ],
    [
        (1, 1, -1, -1), // -ζ³ - ζ² + ζ + 1
        (0, 0, 0, 1),   // ζ³
        (1, 1, 0, -1),  // -ζ³ + ζ + 1
    ],
];

fn build(t: &[[Tuple; 3]; 3]) -> CycMatrix {
    CycMatrix::new(std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let (a, b, c, d) = t[i][j];
            CyclotomicElement::new(a, b, c, d)
        })
    }))
}

/// The Hermitian form `A`, with entries in `Z[√3]`.
pub fn form_a() -> CycMatrix {
    build(&FORM_A)
}

/// The generators `u, v, j, b`, in that order.
pub fn generators() -> Vec<(&'static str, CycMatrix)> {
    vec![
        ("u", build(&GEN_U)),
        ("v", build(&GEN_V)),
        ("j", build(&GEN_J)),
        ("b", build(&GEN_B)),
    ]
}

pub fn generator(name: &str) -> Option<CycMatrix> {
    generators().into_iter().find(|(n, _)| *n == name).map(|(_, m)| m)
}

/// Canonical text table of the form and generators, one entry per line:
/// `<matrix> <row> <col> <c0> <c1> <c2> <c3>`.
pub fn dump_table() -> String {
    let mut out = String::from("# matrix row col c0 c1 c2 c3  (entry = c0 + c1 z + c2 z^2 + c3 z^3)\n");
    let all = std::iter::once(("A", form_a())).chain(generators());
    for (name, m) in all {
        for (i, row) in m.rows().iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                let [c0, c1, c2, c3] = e.coeffs();
                out.push_str(&format!("{name} {i} {j} {c0} {c1} {c2} {c3}\n"));
            }
        }
    }
    out
}
