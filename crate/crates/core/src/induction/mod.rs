//! Induced characters, Frobenius reciprocity and induction tables from cyclic subgroups.

mod matrices;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::characters::{
    character_table, integer_inner_product, restrict, ClassFunction, Decomposition,
};
use crate::error::{Error, Result};
use crate::exactnum::{CycloNum, Rational};
use crate::groups::{FiniteGroup, GroupKind, SubgroupHandle};

pub use matrices::{induced_matrices, ExplicitRep, Matrix, MonomialRep};

pub const INDUCTION_SCHEMA_VERSION: u32 = 1;

/// The cyclic character `ω_q^r` on the standalone copy of a cyclic subgroup.
pub fn cyclic_character(h: &SubgroupHandle, r: i64) -> Result<ClassFunction> {
    let sub = h.group();
    let GroupKind::Cyclic { q } = sub.kind() else {
        return Err(Error::Input(format!("{} is not cyclic", h.name())));
    };
    let r = r.rem_euclid(q as i64) as usize;
    Ok(character_table(sub)?.irrep(r))
}

/// `(Ind χ)(g) = (1/|H|) Σ_{x∈G} χ̇(x⁻¹gx)` with `χ̇` vanishing off `H`.
pub fn induce_character(h: &SubgroupHandle, chi: &ClassFunction) -> Result<ClassFunction> {
    if !Arc::ptr_eq(chi.group(), h.group()) {
        return Err(Error::GroupMismatch);
    }
    let g = h.parent();
    induce_with(g, h.order(), |y| h.locate(y).map(|s| chi.at(s).clone()))
}

fn induce_with(
    g: &Arc<FiniteGroup>,
    h_order: usize,
    dotted: impl Fn(usize) -> Option<CycloNum>,
) -> Result<ClassFunction> {
    let inv_h = Rational::new(1.into(), (h_order as i64).into());
    let values = g
        .classes()
        .iter()
        .map(|c| {
            let mut acc = CycloNum::zero();
            for x in 0..g.order() {
                if let Some(v) = dotted(g.conjugate(c.representative, x)) {
                    acc += &v;
                }
            }
            acc.scale(&inv_h)
        })
        .collect();
    ClassFunction::new(g, values)
}

/// `n(A, Ind B)`, computed as `⟨A, Ind B⟩_G` and as `⟨Res A, B⟩_H`; the two must agree.
pub fn frobenius_multiplicity(
    a: &ClassFunction,
    h: &SubgroupHandle,
    b: &ClassFunction,
) -> Result<u64> {
    let lhs = integer_inner_product(a, &induce_character(h, b)?)?;
    let rhs = integer_inner_product(&restrict(a, h)?, b)?;
    if lhs != rhs {
        return Err(Error::Contract(format!(
            "reciprocity fails: <A, Ind B> = {lhs}, <Res A, B> = {rhs}"
        )));
    }
    u64::try_from(lhs).map_err(|_| Error::NotACharacter(format!("negative multiplicity {lhs}")))
}

/// `r↑γ`: the induced representation from the cyclic subgroup `⟨γ⟩`.
#[derive(Clone, Debug, Serialize)]
pub struct InducedDecomposition {
    pub group: String,
    pub generator: String,
    pub q: usize,
    pub r: usize,
    /// `q − r mod q`; both twists induce equivalent representations for real groups.
    pub reflection: usize,
    pub constituents: Decomposition,
    pub text: String,
}

impl fmt::Display for InducedDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}↑{} = {}", self.r, self.generator, self.constituents)
    }
}

/// Decomposes `r↑⟨gen⟩`, once through reciprocity and once through the induced character.
pub fn induce_cyclic(g: &Arc<FiniteGroup>, gen: &str, r: i64) -> Result<InducedDecomposition> {
    let h = SubgroupHandle::cyclic(g, gen)?;
    induce_from_cyclic(&h, gen, r)
}

pub fn induce_from_cyclic(h: &SubgroupHandle, gen: &str, r: i64) -> Result<InducedDecomposition> {
    let g = h.parent();
    let table = character_table(g)?;
    let q = h.order();
    let chi = cyclic_character(h, r)?;
    let induced = induce_character(h, &chi)?;
    let by_formula = table.decompose(&induced)?;
    let mut by_reciprocity = Vec::with_capacity(table.len());
    for a in 0..table.len() {
        let res = restrict(&table.irrep(a), h)?;
        by_reciprocity.push(integer_inner_product(&res, &chi)?);
    }
    for (a, &m) in by_reciprocity.iter().enumerate() {
        if m as u64 != by_formula.multiplicity(&table.label(a).name) {
            return Err(Error::Contract(format!(
                "{}: reciprocity and induced character disagree on {}",
                g.name(),
                table.label(a)
            )));
        }
    }
    let dim = by_formula.dimension();
    if dim != (g.order() / q) as u64 {
        return Err(Error::Contract(format!("dim {dim} of induced rep != [G:H]")));
    }
    let r = r.rem_euclid(q as i64) as usize;
    let text = by_formula.to_string();
    Ok(InducedDecomposition {
        group: g.name().to_string(),
        generator: gen.to_string(),
        q,
        r,
        reflection: (q - r) % q,
        constituents: by_formula,
        text,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct InductionTable {
    pub schema_version: u32,
    pub group: String,
    pub generator: String,
    pub q: usize,
    pub rows: Vec<InducedDecomposition>,
}

/// All `r↑γ` for `r = 0..q`.
pub fn induction_table(g: &Arc<FiniteGroup>, gen: &str) -> Result<InductionTable> {
    let h = SubgroupHandle::cyclic(g, gen)?;
    let q = h.order();
    let rows = (0..q as i64)
        .map(|r| induce_from_cyclic(&h, gen, r))
        .collect::<Result<Vec<_>>>()?;
    Ok(InductionTable {
        schema_version: INDUCTION_SCHEMA_VERSION,
        group: g.name().to_string(),
        generator: gen.to_string(),
        q,
        rows,
    })
}

impl InductionTable {
    /// `Σ_r r↑` as multiplicities; equals the regular representation.
    pub fn column_sum(&self) -> Vec<(String, u64)> {
        let mut acc: Vec<(String, u64)> = Vec::new();
        for row in &self.rows {
            for (name, m) in row.constituents.named() {
                match acc.iter_mut().find(|(n, _)| *n == name) {
                    Some(e) => e.1 += m,
                    None => acc.push((name, m)),
                }
            }
        }
        acc
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("{} induced from <{}> (q = {})\n", self.group, self.generator, self.q);
        for row in &self.rows {
            out.push_str(&format!("{:>3}↑ = {}\n", row.r, row.text));
        }
        out
    }
}

/// Both sides of inducing in stages `H ≤ K ≤ G`.
#[derive(Clone, Debug)]
pub struct StagesReport {
    pub direct: ClassFunction,
    pub staged: ClassFunction,
    /// `Ind_{H→K} χ`, a character of `K`.
    pub intermediate: ClassFunction,
    pub equal: bool,
}

/// Compares `Ind_{H→G} χ` with `Ind_{K→G} Ind_{H→K} χ`; `k ≤ G` and `h ≤ k.group()`.
pub fn induce_in_stages(k: &SubgroupHandle, h: &SubgroupHandle, chi: &ClassFunction) -> Result<StagesReport> {
    if !Arc::ptr_eq(h.parent(), k.group()) {
        return Err(Error::GroupMismatch);
    }
    let intermediate = induce_character(h, chi)?;
    let staged = induce_character(k, &intermediate)?;
    if !Arc::ptr_eq(chi.group(), h.group()) {
        return Err(Error::GroupMismatch);
    }
    let direct = induce_with(k.parent(), h.order(), |y| {
        k.locate(y)
            .and_then(|in_k| h.locate(in_k))
            .map(|s| chi.at(s).clone())
    })?;
    let equal = direct == staged;
    Ok(StagesReport {
        direct,
        staged,
        intermediate,
        equal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::ClassFunction;
    use crate::groups::{find_index2_subgroup, GeneratorChoice};

    fn group(n: u32) -> Arc<FiniteGroup> {
        FiniteGroup::binary_polyhedral(n, GeneratorChoice::Standard).unwrap()
    }

    fn names(d: &InducedDecomposition) -> Vec<(String, u64)> {
        d.constituents.named()
    }

    fn owned(v: &[(&str, u64)]) -> Vec<(String, u64)> {
        v.iter().map(|(n, m)| (n.to_string(), *m)).collect()
    }

    #[test]
    fn trivial_cases() {
        let g = group(3);
        let whole = SubgroupHandle::whole(&g);
        let t = character_table(&g).unwrap();
        for (_, chi) in t.irreps() {
            assert_eq!(induce_character(&whole, &chi).unwrap(), chi);
        }
        let e = SubgroupHandle::trivial(&g).unwrap();
        let ind = induce_character(&e, &ClassFunction::trivial(e.group())).unwrap();
        assert_eq!(ind, ClassFunction::regular(&g));
    }

    #[test]
    fn table_examples() {
        let d = induce_cyclic(&group(3), "T", 0).unwrap();
        assert_eq!(names(&d), owned(&[("1", 1), ("3", 1)]));
        let d = induce_cyclic(&group(4), "T", 1).unwrap();
        assert_eq!(names(&d), owned(&[("2s", 1), ("4s", 1)]));
        let d = induce_cyclic(&group(5), "R", 2).unwrap();
        assert_eq!(names(&d), owned(&[("3", 2), ("3'", 2), ("4", 2), ("5", 2)]));
        let d = induce_cyclic(&group(5), "RST", 1).unwrap();
        assert_eq!(names(&d), owned(&[("2s", 2), ("2s'", 2), ("4s", 4), ("6s", 6)]));
    }

    #[test]
    fn reciprocity_examples() {
        let g = group(3);
        let t = character_table(&g).unwrap();
        let h = SubgroupHandle::cyclic(&g, "T").unwrap();
        let w2 = cyclic_character(&h, 2).unwrap();
        assert_eq!(frobenius_multiplicity(&t.character("3").unwrap(), &h, &w2).unwrap(), 1);
        let i = group(5);
        let ti = character_table(&i).unwrap();
        let hi = SubgroupHandle::cyclic(&i, "T").unwrap();
        let w5 = cyclic_character(&hi, 5).unwrap();
        assert_eq!(frobenius_multiplicity(&ti.character("6s").unwrap(), &hi, &w5).unwrap(), 2);
        for gen in ["R", "S", "T", "RST"] {
            let h = SubgroupHandle::cyclic(&i, gen).unwrap();
            let triv = ClassFunction::trivial(h.group());
            assert_eq!(frobenius_multiplicity(&ti.irrep(0), &h, &triv).unwrap(), 1);
        }
    }

    #[test]
    fn column_sums_are_regular() {
        for n in 3..=5 {
            let g = group(n);
            let t = character_table(&g).unwrap();
            for gen in ["R", "S", "T", "RST"] {
                let tab = induction_table(&g, gen).unwrap();
                let sum = tab.column_sum();
                for l in t.labels() {
                    let m = sum.iter().find(|(n, _)| *n == l.name).map_or(0, |e| e.1);
                    assert_eq!(m as usize, l.dimension, "{} {gen} {}", g.name(), l.name);
                }
            }
        }
    }

    #[test]
    fn z2_split_of_regular() {
        let g = group(4);
        let z2 = SubgroupHandle::cyclic(&g, "RST").unwrap();
        let a = induce_character(&z2, &cyclic_character(&z2, 0).unwrap()).unwrap();
        let b = induce_character(&z2, &cyclic_character(&z2, 1).unwrap()).unwrap();
        assert_eq!(a.add(&b).unwrap(), ClassFunction::regular(&g));
    }

    #[test]
    fn stages_through_index_two_subgroup() {
        let o = group(4);
        let k = find_index2_subgroup(&o).unwrap();
        let h = SubgroupHandle::cyclic(k.group(), "T").unwrap();
        assert_eq!(k.embed(h.generator().unwrap()), o.generator("S").unwrap());
        let chi = cyclic_character(&h, 2).unwrap();
        let rep = induce_in_stages(&k, &h, &chi).unwrap();
        assert!(rep.equal);
        let tk = character_table(k.group()).unwrap();
        assert_eq!(tk.decompose(&rep.intermediate).unwrap().to_string(), "1'' + 3");
        let to = character_table(&o).unwrap();
        assert_eq!(to.decompose(&rep.direct).unwrap().to_string(), "2 + 3 + 3'");
    }

    #[test]
    fn stages_from_center() {
        let g = group(5);
        let k = SubgroupHandle::cyclic(&g, "T").unwrap();
        let sub = k.group();
        let ne = sub.neg_identity().unwrap();
        let h = SubgroupHandle::cyclic_of(sub, ne, "RST").unwrap();
        for r in 0..2 {
            let rep = induce_in_stages(&k, &h, &cyclic_character(&h, r).unwrap()).unwrap();
            assert!(rep.equal);
        }
        let e = SubgroupHandle::trivial(sub).unwrap();
        let rep = induce_in_stages(&k, &e, &ClassFunction::trivial(e.group())).unwrap();
        assert_eq!(rep.direct, ClassFunction::regular(&g));
        assert!(rep.equal);
    }
}
