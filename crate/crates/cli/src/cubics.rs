//! The plane cubic catalog: normal forms with their generator counts in
//! degrees 1, 2, 3 and the expected decomposition class.

use apolar::{apolar_profile, decompose, parse_poly, DecompositionCertificate, Ring};

use crate::{CheckRow, CliResult, Settings};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Class {
    /// A direct sum.
    DirectSum,
    /// A limit of direct sums that is not one.
    Limit,
    NotLimit,
    /// Not concise; a power of a linear form.
    Power,
}

impl Class {
    fn of(c: &DecompositionCertificate) -> Option<Class> {
        match c.innermost() {
            DecompositionCertificate::DirectSum(_) => Some(Class::DirectSum),
            DecompositionCertificate::LimitNormalForm(_) => Some(Class::Limit),
            DecompositionCertificate::NotLimitOfDirectSums { .. } => Some(Class::NotLimit),
            DecompositionCertificate::PowerOfLinearForm { .. } => Some(Class::Power),
            _ => None,
        }
    }
}

pub struct Row {
    pub name: &'static str,
    pub form: &'static str,
    pub betas: [usize; 3],
    pub class: Class,
}

/// The nodal and smooth members of the Weierstrass family use `a = 1` and
/// `x^2 z` in place of `a x z^2 + z^3` at the singular value.
pub const TABLE: [Row; 11] = [
    Row { name: "triple line", form: "x^3", betas: [2, 0, 0], class: Class::Power },
    Row { name: "three concurrent lines", form: "x^3 - y^3", betas: [1, 1, 1], class: Class::DirectSum },
    Row { name: "double line + line", form: "x^2*y", betas: [1, 1, 1], class: Class::Limit },
    Row { name: "irreducible (Fermat)", form: "x^3 + y^3 + z^3", betas: [0, 3, 2], class: Class::DirectSum },
    Row { name: "irreducible", form: "y^2*z - x^3 - x*z^2", betas: [0, 3, 0], class: Class::NotLimit },
    Row { name: "cusp", form: "y^2*z - x^3", betas: [0, 3, 2], class: Class::DirectSum },
    Row { name: "triangle", form: "x*y*z", betas: [0, 3, 0], class: Class::NotLimit },
    Row { name: "conic + transversal line", form: "x*(x^2 + y*z)", betas: [0, 3, 0], class: Class::NotLimit },
    Row { name: "irreducible, smooth", form: "y^2*z - x^3 - x*z^2 - z^3", betas: [0, 3, 0], class: Class::NotLimit },
    Row { name: "irreducible, singular", form: "y^2*z - x^3 - x^2*z", betas: [0, 3, 0], class: Class::NotLimit },
    Row { name: "conic + tangent line", form: "y*(x^2 + y*z)", betas: [0, 3, 2], class: Class::Limit },
];

/// Two check rows per table entry: generator counts and class.
pub fn run(s: &Settings) -> CliResult<Vec<CheckRow>> {
    let vars: Vec<String> = ["x", "y", "z"].iter().map(|v| v.to_string()).collect();
    let mut out = Vec::new();
    for row in &TABLE {
        let f = parse_poly(row.form, Ring::S, &vars)?;
        let p = apolar_profile(&f)?;
        let got = [p.beta(1), p.beta(2), p.beta(3)];
        out.push(CheckRow {
            name: format!("{}: beta_1,1..3", row.name),
            form: Some(row.form.into()),
            expected: format!("{:?}", row.betas),
            got: format!("{got:?}"),
            pass: got == row.betas,
        });
        let cert = decompose(&f, &s.options())?;
        let class = Class::of(&cert);
        out.push(CheckRow {
            name: format!("{}: class", row.name),
            form: Some(row.form.into()),
            expected: format!("{:?}", row.class),
            got: class.map_or_else(|| cert.innermost().kind().to_string(), |c| format!("{c:?}")),
            pass: class == Some(row.class),
        });
    }
    Ok(out)
}
