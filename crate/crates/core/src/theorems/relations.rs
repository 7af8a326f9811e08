//! Universal relations through the central `Z₂`, Sunada pairs and Artin sufficiency.

use std::sync::Arc;

use num_traits::ToPrimitive;
use serde::Serialize;

use super::linalg;
use crate::characters::{character_table, ClassFunction};
use crate::error::Result;
use crate::exactnum::Rational;
use crate::groups::{FiniteGroup, GroupKind, SubgroupHandle};
use crate::induction::{cyclic_character, induce_character};
use crate::spectra::{degeneracy_series, spectral_sum, DegeneracySeries, SpectralWeight, TwistSpec};

/// One side of a relation: `Σ coefficient · S(twist)`.
struct Term {
    coefficient: Rational,
    series: DegeneracySeries,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RelationCheck {
    pub group: String,
    pub relation: String,
    /// `false` for a corrected reading added next to a relation that fails as printed.
    pub as_printed: bool,
    pub holds: bool,
    /// First level where the two sides differ.
    pub witness_level: Option<usize>,
    /// Both sides also agree as heat traces (t = 0.1) and truncated zeta sums (s = 3).
    pub additive_spot_check: bool,
}

fn lens_term(g: &Arc<FiniteGroup>, gen: &str, r: usize, c: i64, n_max: usize) -> Result<Term> {
    let h = SubgroupHandle::cyclic(g, gen)?;
    Ok(Term {
        coefficient: Rational::from_integer(c.into()),
        series: degeneracy_series(&TwistSpec::cyclic(&h, r as i64)?, n_max)?,
    })
}

/// `S(A)`, or the zero series when the group has no irrep named `A`.
fn irrep_term(g: &Arc<FiniteGroup>, name: &str, c: i64, n_max: usize) -> Result<Term> {
    let table = character_table(g)?;
    let twist = match table.index_of(name) {
        Ok(_) => TwistSpec::irrep(g, name)?,
        Err(_) => TwistSpec::new(ClassFunction::zero(g), "0")?,
    };
    Ok(Term {
        coefficient: Rational::from_integer(c.into()),
        series: degeneracy_series(&twist, n_max)?,
    })
}

fn evaluate(lhs: &[Term], rhs: &[Term], relation: String, group: &str, n_max: usize) -> Result<RelationCheck> {
    let level = |side: &[Term], n: usize| -> Rational {
        side.iter()
            .map(|t| &t.coefficient * Rational::from_integer(t.series.entries[n].into()))
            .sum()
    };
    let witness_level = (0..=n_max).find(|&n| level(lhs, n) != level(rhs, n));
    let weighted = |side: &[Term], w: SpectralWeight| -> Result<f64> {
        let mut acc = 0.0;
        for t in side {
            acc += t.coefficient.to_f64().unwrap_or(f64::NAN) * spectral_sum(&t.series, w)?.value;
        }
        Ok(acc)
    };
    let mut additive_spot_check = true;
    for w in [SpectralWeight::Heat { t: 0.1 }, SpectralWeight::Zeta { s: 3.0 }] {
        let (a, b) = (weighted(lhs, w)?, weighted(rhs, w)?);
        additive_spot_check &= (a - b).abs() <= 1e-9 * (1.0 + a.abs().max(b.abs()));
    }
    Ok(RelationCheck {
        group: group.to_string(),
        relation,
        as_printed: true,
        holds: witness_level.is_none(),
        witness_level,
        additive_spot_check,
    })
}

fn generator_orders(g: &FiniteGroup) -> Result<Vec<(&'static str, usize)>> {
    ["R", "S", "T", "RST"]
        .into_iter()
        .map(|gen| Ok((gen, g.element_order(g.generator(gen)?))))
        .collect()
}

/// `Σ_{γ ∈ R,S,T} S(r;γ) − S(r;RST)` with every `r` reduced modulo the subgroup order.
fn cyclic_sum(g: &Arc<FiniteGroup>, r: usize, n_max: usize) -> Result<Vec<Term>> {
    generator_orders(g)?
        .into_iter()
        .map(|(gen, q)| lens_term(g, gen, r % q, if gen == "RST" { -1 } else { 1 }, n_max))
        .collect()
}

/// Checks the cyclic decompositions through `Z₂ = {E, −E}` at every level `n ≤ n_max`:
///
/// - `2 S(1) = S(0;T) + S(0;S) + S(0;R) − S(0;RST)`
/// - `S(2s) = Σ_γ S(1;γ) − S(1;RST)`
/// - `S(3) = S(1) + Σ_γ S(2;γ) − S(2;RST)`
/// - `S(4s) = S(2s) + Σ_γ S(3;γ) − S(3;RST)`, with `S(4s) = 0` when there is no `4s`; for the
///   tetrahedral group this reading fails from `n = 3`, and the combination equals
///   `S(2s') + S(2s'')` instead, which is checked as a separate relation
///
/// For the icosahedral group the `3` relation holds only with `3` and `3'` interchanged, and
/// the `3'` relation fails at `n = 0`; the readings `S(3') = S(1) + …(2)` and
/// `S(5) = S(3') + …(4)` are added with `as_printed = false`.
/// - for the icosahedral group only, `S(3') = S(1) + Σ_γ S(4;γ) − S(4;RST)` and
///   `S(6s) = S(4s) + Σ_γ S(5;γ) − S(5;RST)`
pub fn verify_z2_relations(g: &Arc<FiniteGroup>, n_max: usize) -> Result<Vec<RelationCheck>> {
    let name = g.name().to_string();
    let mut out = Vec::new();
    let lhs = vec![irrep_term(g, "1", 2, n_max)?];
    out.push(evaluate(&lhs, &cyclic_sum(g, 0, n_max)?, "2 S(1) = sum_g S(0;g) - S(0;RST)".into(), &name, n_max)?);
    let lhs = vec![irrep_term(g, "2s", 1, n_max)?];
    out.push(evaluate(&lhs, &cyclic_sum(g, 1, n_max)?, "S(2s) = sum_g S(1;g) - S(1;RST)".into(), &name, n_max)?);

    let mut chain = vec![("3", "1", 2), ("4s", "2s", 3)];
    if matches!(g.kind(), GroupKind::BinaryPolyhedral { n: 5, .. }) {
        chain.extend([("3'", "1", 4), ("6s", "4s", 5)]);
    }
    for (target, base, r) in chain {
        let lhs = vec![irrep_term(g, target, 1, n_max)?];
        let mut rhs = vec![irrep_term(g, base, 1, n_max)?];
        rhs.extend(cyclic_sum(g, r, n_max)?);
        let relation = format!("S({target}) = S({base}) + sum_g S({r};g) - S({r};RST)");
        out.push(evaluate(&lhs, &rhs, relation, &name, n_max)?);
    }
    let corrected = |lhs: &[(&str, i64)], base: &str, r: usize| -> Result<RelationCheck> {
        let l = lhs.iter().map(|&(a, c)| irrep_term(g, a, c, n_max)).collect::<Result<Vec<_>>>()?;
        let mut rhs = vec![irrep_term(g, base, 1, n_max)?];
        rhs.extend(cyclic_sum(g, r, n_max)?);
        let names: Vec<String> = lhs.iter().map(|(a, _)| format!("S({a})")).collect();
        let relation = format!("{} = S({base}) + sum_g S({r};g) - S({r};RST)", names.join(" + "));
        Ok(RelationCheck {
            as_printed: false,
            ..evaluate(&l, &rhs, relation, &name, n_max)?
        })
    };
    match g.kind() {
        // χ_{3/2} restricts to 2s' + 2s'', which is what the r = 3 combination produces
        GroupKind::BinaryPolyhedral { n: 3, .. } => out.push(corrected(&[("2s'", 1), ("2s''", 1)], "2s", 3)?),
        // the spin-1 irrep sits in 2↑T, so the tables name it 3'; the r = 4 step then lands on 5
        GroupKind::BinaryPolyhedral { n: 5, .. } => {
            out.push(corrected(&[("3'", 1)], "1", 2)?);
            out.push(corrected(&[("5", 1)], "3'", 4)?);
        }
        _ => {}
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SunadaVerdict {
    pub group: String,
    pub first: String,
    pub second: String,
    /// `Ind ρ₁ = Ind ρ₂` as characters of the ambient group.
    pub equivalent: bool,
    /// Degeneracy series of the two quotients agree; only evaluated when equivalent.
    pub isospectral: Option<bool>,
    pub witness_level: Option<usize>,
}

/// Sunada-type test: equal induced characters force equal twisted spectra on `S³/Γ₁`, `S³/Γ₂`.
pub fn sunada_check(
    h1: &SubgroupHandle,
    rho1: &ClassFunction,
    h2: &SubgroupHandle,
    rho2: &ClassFunction,
    n_max: usize,
) -> Result<SunadaVerdict> {
    if !Arc::ptr_eq(h1.parent(), h2.parent()) {
        return Err(crate::error::Error::GroupMismatch);
    }
    let equivalent = induce_character(h1, rho1)? == induce_character(h2, rho2)?;
    let describe = |h: &SubgroupHandle, rho: &ClassFunction| -> Result<String> {
        let d = character_table(h.group())?.decompose(rho)?;
        Ok(format!("({d}) on {}", h.name()))
    };
    let (mut isospectral, mut witness_level) = (None, None);
    if equivalent {
        let a = degeneracy_series(&TwistSpec::new(rho1.clone(), "rho1")?, n_max)?;
        let b = degeneracy_series(&TwistSpec::new(rho2.clone(), "rho2")?, n_max)?;
        witness_level = (0..=n_max).find(|&n| a.entries[n] != b.entries[n]);
        isospectral = Some(witness_level.is_none());
    }
    Ok(SunadaVerdict {
        group: h1.parent().name().to_string(),
        first: describe(h1, rho1)?,
        second: describe(h2, rho2)?,
        equivalent,
        isospectral,
        witness_level,
    })
}

/// Sunada test for cyclic twists `ω^{r₁}` on `⟨γ₁⟩` and `ω^{r₂}` on `⟨γ₂⟩`.
pub fn sunada_cyclic(
    g: &Arc<FiniteGroup>,
    (gen1, r1): (&str, i64),
    (gen2, r2): (&str, i64),
    n_max: usize,
) -> Result<SunadaVerdict> {
    let h1 = SubgroupHandle::cyclic(g, gen1)?;
    let h2 = SubgroupHandle::cyclic(g, gen2)?;
    let v = sunada_check(&h1, &cyclic_character(&h1, r1)?, &h2, &cyclic_character(&h2, r2)?, n_max)?;
    Ok(SunadaVerdict {
        first: format!("{};{gen1}", r1.rem_euclid(h1.order() as i64)),
        second: format!("{};{gen2}", r2.rem_euclid(h2.order() as i64)),
        ..v
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ArtinReport {
    pub group: String,
    pub generators: Vec<String>,
    /// Every class of the group contains a power of some generator.
    pub classes_met: bool,
    pub rank: usize,
    pub irreps: usize,
    /// `1 + 1 + (l−1) + (m−1) + (n−1)` for `⟨l,m,n⟩`.
    pub predicted_irreps: Option<usize>,
}

impl ArtinReport {
    pub fn sufficient(&self) -> bool {
        self.classes_met && self.rank == self.irreps
    }
}

/// Artin's theorem for the given cyclic subgroups: class coverage and the rational rank of
/// the induced characters.
pub fn artin_sufficiency_with(g: &Arc<FiniteGroup>, generators: &[&str]) -> Result<ArtinReport> {
    let table = character_table(g)?;
    let mut met = vec![false; g.num_classes()];
    let mut rows = Vec::new();
    for gen in generators {
        let h = SubgroupHandle::cyclic(g, gen)?;
        for &m in h.members() {
            met[g.class_of(m)] = true;
        }
        for r in 0..h.order() {
            let ind = induce_character(&h, &cyclic_character(&h, r as i64)?)?;
            rows.push(table.multiplicities(&ind)?);
        }
    }
    let predicted_irreps = match g.kind() {
        GroupKind::BinaryPolyhedral { l, m, n } => Some(2 + (l + m + n) as usize - 3),
        _ => None,
    };
    Ok(ArtinReport {
        group: g.name().to_string(),
        generators: generators.iter().map(|s| s.to_string()).collect(),
        classes_met: met.iter().all(|&x| x),
        rank: linalg::rank(&linalg::from_integers(&rows)),
        irreps: table.len(),
        predicted_irreps,
    })
}

pub fn artin_sufficiency(g: &Arc<FiniteGroup>) -> Result<ArtinReport> {
    artin_sufficiency_with(g, &["R", "S", "T"])
}
