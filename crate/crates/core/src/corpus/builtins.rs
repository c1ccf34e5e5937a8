//! Named arrangements with invariants known in advance.
//!
//! Expectations are `(key, value)` pairs in the vocabulary of
//! [`observations`](crate::corpus::observations). A key of the form
//! `quantity[*]` applies to every plane.

use std::collections::BTreeMap;

use crate::corpus::AnyArrangement;
use crate::error::{Error, Result};
use crate::kernel::field::FieldDescriptor;

#[derive(Clone, Copy, Debug)]
pub struct Builtin {
    pub name: &'static str,
    pub description: &'static str,
    /// Characteristic of the ground field, 0 for the rationals.
    pub characteristic: u64,
    pub forms: &'static [[i64; 3]],
    pub expectations: &'static [(&'static str, &'static str)],
}

impl Builtin {
    pub fn field(&self) -> FieldDescriptor {
        if self.characteristic == 0 {
            FieldDescriptor::RATIONALS
        } else {
            FieldDescriptor::prime(self.characteristic).expect("built-in characteristic is prime")
        }
    }

    pub fn arrangement(&self) -> Result<AnyArrangement> {
        AnyArrangement::from_i64(self.field(), self.forms)
    }

    pub fn expectations(&self) -> BTreeMap<String, String> {
        self.expectations
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect()
    }
}

const BUILTINS: &[Builtin] = &[
    Builtin {
        name: "generic4",
        description: "four generic planes xyz(x+y+z)",
        characteristic: 0,
        forms: &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]],
        expectations: &[
            ("chi", "t^3 - 4t^2 + 6t - 3"),
            ("chi0", "t^2 - 3t + 3"),
            ("free", "no"),
            ("generators", "{1,2,2,2}"),
            ("relations", "{3}"),
            ("restricted_size[*]", "3"),
            ("lp[*]", "1"),
            ("rho[*]", "0"),
            ("pi[*]", "1"),
            ("exp[*]", "(1,2)"),
        ],
    },
    Builtin {
        name: "boolean",
        description: "the coordinate planes xyz",
        characteristic: 0,
        forms: &[[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        expectations: &[
            ("chi", "t^3 - 3t^2 + 3t - 1"),
            ("chi0", "t^2 - 2t + 1"),
            ("free", "yes"),
            ("exponents", "(1,1,1)"),
            ("rho[*]", "0"),
            ("pi[*]", "0"),
        ],
    },
    Builtin {
        name: "braidA3",
        description: "the braid arrangement xyz(x-y)(x-z)(y-z)",
        characteristic: 0,
        forms: &[
            [1, 0, 0],
            [0, 1, 0],
            [0, 0, 1],
            [1, -1, 0],
            [1, 0, -1],
            [0, 1, -1],
        ],
        expectations: &[
            ("chi", "t^3 - 6t^2 + 11t - 6"),
            ("chi0", "t^2 - 5t + 6"),
            ("free", "yes"),
            ("exponents", "(1,2,3)"),
            ("generators", "{1,2,3}"),
            ("relations", "{}"),
            ("pi[*]", "0"),
        ],
    },
    Builtin {
        name: "ex433",
        description: "seven planes xyz(x-z)(y-z)(x-y+z)(x-y-z), not free",
        characteristic: 0,
        forms: &[
            [1, 0, 0],
            [0, 1, 0],
            [0, 0, 1],
            [1, 0, -1],
            [0, 1, -1],
            [1, -1, 1],
            [1, -1, -1],
        ],
        expectations: &[
            ("chi", "t^3 - 7t^2 + 16t - 10"),
            ("chi0", "t^2 - 6t + 10"),
            ("free", "no"),
            ("generators", "{1,3,4,4}"),
            ("relations", "{5}"),
            ("restricted_size[z]", "3"),
            ("multiplicity[z]", "(2,2,2)"),
            ("exp[z]", "(3,3)"),
            ("lp[z]", "2"),
            ("rho[z]", "2"),
            ("rho_profile[z]", "0,0,1,1"),
            ("pi[z]", "1"),
        ],
    },
    Builtin {
        name: "ex45",
        description: "eight planes xz(y-z)(x+y)(x-y)(x+2y)(x-2y)(x-3y), nearly free",
        characteristic: 0,
        forms: &[
            [1, 0, 0],
            [0, 0, 1],
            [0, 1, -1],
            [1, 1, 0],
            [1, -1, 0],
            [1, 2, 0],
            [1, -2, 0],
            [1, -3, 0],
        ],
        expectations: &[
            ("planes", "8"),
            ("chi", "t^3 - 8t^2 + 18t - 11"),
            ("chi0", "t^2 - 7t + 11"),
            ("free", "no"),
            ("generators", "{1,2,6,6}"),
            ("relations", "{7}"),
            ("level", "6"),
        ],
    },
    Builtin {
        name: "ss7",
        description: "xyz(x+y)(x-y)(x+z)(x-z), free with a large Euler cokernel",
        characteristic: 0,
        forms: &[
            [1, 0, 0],
            [0, 1, 0],
            [0, 0, 1],
            [1, 1, 0],
            [1, -1, 0],
            [1, 0, 1],
            [1, 0, -1],
        ],
        expectations: &[
            ("chi0", "t^2 - 6t + 9"),
            ("free", "yes"),
            ("exponents", "(1,3,3)"),
            ("restricted_size[x]", "2"),
            ("rho[x]", "4"),
            ("rho_profile[x]", "0,1,2,1"),
        ],
    },
    Builtin {
        name: "pentagon_f11",
        description: "eleven planes over GF(11) with five planes through every line of A^H",
        characteristic: 11,
        // The regular pentagon with its y axis scaled by 1/sin(72°) has
        // vertices (1, 0), (1/(2φ), 1), (-φ/2, 1/φ), (-φ/2, -1/φ), (1/(2φ), -1)
        // with φ = (1 + √5)/2, all in Q(√5). Over GF(11), 4² = 16 ≡ 5 so √5 ≡ 4,
        // φ ≡ 5/2 ≡ 8, 1/φ ≡ φ - 1 ≡ 7, 1/(2φ) ≡ 9 and -φ/2 ≡ 7. The vertices
        // become (1, 0), (9, 1), (7, 7), (7, 4), (9, 10). The ten lines through
        // pairs of vertices, homogenized, together with the line at infinity
        // z = 0, give the forms below; for example (1, 0) and (9, 1) span
        // x + 3y - z.
        forms: &[
            [0, 0, 1],
            [1, 0, 2],
            [1, 0, 4],
            [1, 3, 5],
            [1, 3, -1],
            [1, 4, -2],
            [1, 4, -1],
            [1, -4, -2],
            [1, -4, -1],
            [1, -3, 5],
            [1, -3, -1],
        ],
        expectations: &[
            ("chi0", "t^2 - 10t + 25"),
            ("free", "yes"),
            ("exponents", "(1,5,5)"),
            ("restricted_size[*]", "5"),
            ("rho[*]", "1"),
            ("rho_profile[*]", "0,0,0,0,1"),
            ("pi[*]", "0"),
        ],
    },
];

pub fn builtins() -> &'static [Builtin] {
    BUILTINS
}

pub fn builtin(name: &str) -> Result<&'static Builtin> {
    BUILTINS
        .iter()
        .find(|b| b.name == name)
        .ok_or_else(|| Error::UnknownBuiltin(name.to_string()))
}
