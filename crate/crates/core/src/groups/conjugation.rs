use serde::Serialize;

use super::{FiniteGroup, GroupKind};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjugationCheck {
    pub identity: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjugationReport {
    pub group: String,
    pub checks: Vec<ConjugationCheck>,
}

impl ConjugationReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

/// Checks the conjugation identities linking `S` and `T`.
///
/// For `⟨2,3,3⟩`: `U = T⁻¹RT` satisfies `U⁻¹TU = S⁻¹`, so `[S] = [T⁻¹]` and `[S²] = [T⁻²]`.
/// For `⟨2,3,4⟩` and `⟨2,3,5⟩`: whether `U = SRS⁻¹` satisfies `U⁻¹T⁻¹U = T`, and that no
/// power of `S` is conjugate to a power of `T` other than `±E`.
///
/// The `SRS⁻¹` identity is a word identity in the presentation; it holds in `⟨2,3,4⟩` but
/// fails in `⟨2,3,5⟩`, where `T` is still conjugate to `T⁻¹` through other elements.
pub fn verify_conjugation_identities(g: &FiniteGroup) -> ConjugationReport {
    let mut checks = Vec::new();
    let GroupKind::BinaryPolyhedral { n, .. } = g.kind() else {
        return ConjugationReport {
            group: g.name().to_string(),
            checks,
        };
    };
    let gen = |name: &str| g.generator(name).expect("binary polyhedral generators");
    let (r, s, t) = (gen("R"), gen("S"), gen("T"));
    let inv = |a| g.inverse(a);
    let mut push = |identity: &str, holds: bool| {
        checks.push(ConjugationCheck {
            identity: identity.to_string(),
            holds,
        })
    };
    let central = |a: usize| a == g.identity() || Some(a) == g.neg_identity();
    let s_powers: Vec<usize> = (1..6).map(|j| g.power(s, j)).filter(|&a| !central(a)).collect();
    let t_powers: Vec<usize> = (1..2 * n as usize)
        .map(|j| g.power(t, j))
        .filter(|&a| !central(a))
        .collect();
    let cross_linked = s_powers
        .iter()
        .any(|&a| t_powers.iter().any(|&b| g.class_of(a) == g.class_of(b)));

    if n == 3 {
        let u = g.mul(g.mul(inv(t), r), t);
        push("U = T^-1 R T: U^-1 T U = S^-1", g.conjugate(t, u) == inv(s));
        push("[S] = [T^-1]", g.class_of(s) == g.class_of(inv(t)));
        let s2 = g.power(s, 2);
        let t2 = g.power(t, 2);
        push("[S^2] = [T^-2]", g.class_of(s2) == g.class_of(inv(t2)));
        push("S and T classes cross-link", cross_linked);
    } else {
        let u = g.mul(g.mul(s, r), inv(s));
        push("U = S R S^-1: U^-1 T^-1 U = T", g.conjugate(inv(t), u) == t);
        push(
            "some U satisfies U^-1 T^-1 U = T",
            (0..g.order()).any(|x| g.conjugate(inv(t), x) == t),
        );
        push("no S/T class cross-linking", !cross_linked);
    }
    ConjugationReport {
        group: g.name().to_string(),
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GeneratorChoice;

    fn holds(rep: &ConjugationReport, identity: &str) -> bool {
        rep.checks.iter().find(|c| c.identity == identity).unwrap().holds
    }

    #[test]
    fn identities_per_group() {
        for choice in [GeneratorChoice::Standard, GeneratorChoice::Alternate] {
            let t = FiniteGroup::binary_polyhedral(3, choice).unwrap();
            assert!(verify_conjugation_identities(&t).all_hold());
            let o = FiniteGroup::binary_polyhedral(4, choice).unwrap();
            assert!(verify_conjugation_identities(&o).all_hold());
            let i = FiniteGroup::binary_polyhedral(5, choice).unwrap();
            let rep = verify_conjugation_identities(&i);
            assert!(!holds(&rep, "U = S R S^-1: U^-1 T^-1 U = T"));
            assert!(holds(&rep, "some U satisfies U^-1 T^-1 U = T"));
            assert!(holds(&rep, "no S/T class cross-linking"));
        }
    }

    #[test]
    fn cyclic_group_has_no_checks() {
        let z = FiniteGroup::cyclic(6).unwrap();
        assert!(verify_conjugation_identities(&z).checks.is_empty());
    }
}
