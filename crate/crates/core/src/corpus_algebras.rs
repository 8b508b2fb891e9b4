//! The small algebras used throughout the worked examples.

use crate::algebra::Algebra;

/// `e₂·e₁ = −e₁`, `e₂·e₂ = e₂`.
pub fn a2() -> Algebra {
    Algebra::from_int_entries(2, &[(2, 1, 1, -1), (2, 2, 2, 1)])
}

/// `e₃·e₂ = e₂`, `e₃·e₃ = −e₃`.
pub fn a3a() -> Algebra {
    Algebra::from_int_entries(3, &[(3, 2, 2, 1), (3, 3, 3, -1)])
}

/// `e₁·e₁ = e₁`, `e₁·e₂ = e₃`; sub-adjacent Lie algebra is Heisenberg.
pub fn a3h() -> Algebra {
    Algebra::from_int_entries(3, &[(1, 1, 1, 1), (1, 2, 3, 1)])
}

/// `e₂·e₃ = e₁`, `e₃·e₂ = −e₁`.
pub fn a3n() -> Algebra {
    Algebra::from_int_entries(3, &[(2, 3, 1, 1), (3, 2, 1, -1)])
}

pub fn by_name(name: &str) -> Option<Algebra> {
    match name {
        "A2" => Some(a2()),
        "A3a" => Some(a3a()),
        "A3h" => Some(a3h()),
        "A3n" => Some(a3n()),
        _ => None,
    }
}
