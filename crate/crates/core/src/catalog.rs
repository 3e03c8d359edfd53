//! Named loop identities.
//!
//! RCC has no entry: it is decided on right translations in
//! [`crate::structure::is_rcc`].

use alloc::vec::Vec;

use crate::term::{parse_identity, Identity};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedIdentity {
    pub name: &'static str,
    pub identity: Identity,
}

const CATALOG: &[(&str, &str)] = &[
    ("left_cheban", "x*((x*y)*z) = (y*x)*(x*z)"),
    ("right_cheban", "(z*(y*x))*x = (z*x)*(x*y)"),
    ("cheban", "x*((x*y)*z) = (y*(z*x))*x"),
    ("moufang", "(x*y)*(z*x) = (x*(y*z))*x"),
    ("extra", "x*(y*(z*x)) = ((x*y)*z)*x"),
    ("flexible", "x*(y*x) = (x*y)*x"),
    ("lap", "x*(x*y) = (x*x)*y"),
    ("rap", "(y*x)*x = y*(x*x)"),
    ("lcc", "z*(y*x) = ((z*y)/z)*(z*x)"),
    ("osborn", "x*((y*z)*x) = ((x*(y*x))/x)*(z*x)"),
    // one balanced reading of a source formula whose parentheses do not match
    ("generalized_moufang", "x*((y*z)*x) = (((1/y)*(1/x))\\1)*(z*x)"),
    ("wip", "x*(y*x)^rho = y^rho"),
    ("wippacc_ax1", "((x*y)*x)*(x*z) = x*(((y*x)*x)*z)"),
    ("wippacc_ax2", "(z*x)*(x*(y*x)) = (z*(x*(x*y)))*x"),
];

/// Conditions used as search constraints that are not named in the catalog.
const AUXILIARY: &[(&str, &str)] = &[
    // R(x)^2 = L(x)^2
    ("squares_translation", "(y*x)*x = x*(x*y)"),
    // R(x^2) = L(x^2)
    ("square_central_translation", "y*(x*x) = (x*x)*y"),
    ("associative", "(x*y)*z = x*(y*z)"),
    ("commutative", "x*y = y*x"),
];

fn build(entries: &[(&'static str, &str)]) -> Vec<NamedIdentity> {
    entries
        .iter()
        .map(|&(name, text)| NamedIdentity {
            name,
            identity: parse_identity(text).expect("catalog entries parse"),
        })
        .collect()
}

/// Every named identity, in a fixed order.
pub fn catalog() -> Vec<NamedIdentity> {
    build(CATALOG)
}

/// Helper conditions: `squares_translation`, `square_central_translation`,
/// `associative`, `commutative`.
pub fn auxiliary() -> Vec<NamedIdentity> {
    build(AUXILIARY)
}

/// Looks a name up in the catalog, then among the auxiliary conditions.
pub fn lookup(name: &str) -> Option<Identity> {
    CATALOG
        .iter()
        .chain(AUXILIARY)
        .find(|e| e.0 == name)
        .map(|e| parse_identity(e.1).expect("catalog entries parse"))
}

/// Catalog name or inline identity text.
pub fn resolve(name_or_expr: &str) -> Result<Identity, crate::term::ParseError> {
    match lookup(name_or_expr.trim()) {
        Some(id) => Ok(id),
        None => parse_identity(name_or_expr),
    }
}

pub fn left_cheban() -> Identity {
    lookup("left_cheban").unwrap()
}

pub fn right_cheban() -> Identity {
    lookup("right_cheban").unwrap()
}

pub fn cheban() -> Identity {
    lookup("cheban").unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{abelian_groups_up_to_8, cyclic, dihedral, example_3_3, quaternion, symmetric_3};
    use alloc::string::ToString;

    #[test]
    fn names_are_unique() {
        let all: Vec<_> = catalog().into_iter().chain(auxiliary()).map(|e| e.name).collect();
        for (i, a) in all.iter().enumerate() {
            assert!(!all[i + 1..].contains(a), "duplicate {a}");
        }
        assert_eq!(catalog().len(), 14);
    }

    #[test]
    fn render_round_trips() {
        for e in catalog().into_iter().chain(auxiliary()) {
            assert_eq!(parse_identity(&e.identity.to_string()).unwrap(), e.identity, "{}", e.name);
        }
    }

    #[test]
    fn rap_and_right_cheban_are_mirrors() {
        let mirror_vars = |id: Identity| id.mirror();
        assert_eq!(mirror_vars(lookup("lap").unwrap()), lookup("rap").unwrap());
        assert_eq!(left_cheban().mirror(), right_cheban());
    }

    #[test]
    fn example_is_left_cheban() {
        assert!(left_cheban().holds(&example_3_3()));
        assert!(lookup("lcc").unwrap().holds(&example_3_3()));
    }

    #[test]
    fn everything_holds_in_abelian_groups() {
        for e in catalog() {
            assert!(e.identity.holds(&cyclic(4)), "{}", e.name);
            for g in abelian_groups_up_to_8() {
                assert!(e.identity.holds(&g), "{} fails on order {}", e.name, g.order());
            }
        }
    }

    #[test]
    fn groups() {
        let lap = lookup("lap").unwrap();
        for g in [symmetric_3(), quaternion(), dihedral(4), dihedral(5)] {
            assert!(lap.holds(&g));
        }
        assert!(!left_cheban().holds(&symmetric_3()));
        assert!(cheban().holds(&quaternion()));
        assert!(cheban().holds(&dihedral(4)));
    }

    #[test]
    fn resolve_accepts_names_and_expressions() {
        assert_eq!(resolve("left_cheban").unwrap(), left_cheban());
        assert_eq!(resolve("x*y = y*x").unwrap(), lookup("commutative").unwrap());
        assert!(resolve("no_such_name").is_err());
    }
}
