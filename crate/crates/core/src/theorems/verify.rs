//! The full verification suite, item by item.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use super::{artin_sufficiency, compare_with_reference, sunada_cyclic, verify_z2_relations, Discrepancy};
use crate::characters::{character_table, integer_inner_product, CharacterTable};
use crate::error::{Error, Result};
use crate::groups::{group_from_selector, verify_conjugation_identities, FiniteGroup, GroupKind, SubgroupHandle};
use crate::induction::{cyclic_character, induce_character, induced_matrices, induction_table, ExplicitRep};
use crate::mckay::{class_correspondence, compactified_diagram, mckay_graph, AdeType};
use crate::reference::{self, PUBLISHED_MATRICES};
use crate::spectra::{degeneracy_series, dimension_sum, lens_torsion, oracle_projector_degeneracy, TwistSpec};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

const POLYHEDRAL: [&str; 3] = ["2T", "2O", "2I"];
const CYCLIC_GENERATORS: [&str; 4] = ["R", "S", "T", "RST"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationItem {
    pub item: String,
    pub status: Status,
    /// What broke, e.g. the first failing level.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub suite: String,
    pub n_max: usize,
    pub items: Vec<VerificationItem>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &VerificationItem> {
        self.items.iter().filter(|i| i.status == Status::Fail)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for i in &self.items {
            let status = match i.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            match &i.witness {
                Some(w) => out.push_str(&format!("{status} {}: {w}\n", i.item)),
                None => out.push_str(&format!("{status} {}\n", i.item)),
            }
        }
        let failed = self.failures().count();
        out.push_str(&format!("{} items, {failed} failed\n", self.items.len()));
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Groups,
    Tables,
    Induction,
    Matrices,
    Isospectral,
    Relations,
    Dimension,
    Oracle,
    Torsion,
    Sunada,
    Artin,
    Conjugation,
    InducedMatrices,
    McKay,
}

impl Suite {
    pub const NAMES: [&'static str; 15] = [
        "all",
        "groups",
        "tables",
        "induction",
        "matrices",
        "isospectral",
        "relations",
        "dimension",
        "oracle",
        "torsion",
        "sunada",
        "artin",
        "conjugation",
        "induced-matrices",
        "mckay",
    ];

    const ALL: [Suite; 15] = [
        Suite::All,
        Suite::Groups,
        Suite::Tables,
        Suite::Induction,
        Suite::Matrices,
        Suite::Isospectral,
        Suite::Relations,
        Suite::Dimension,
        Suite::Oracle,
        Suite::Torsion,
        Suite::Sunada,
        Suite::Artin,
        Suite::Conjugation,
        Suite::InducedMatrices,
        Suite::McKay,
    ];
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = Suite::ALL.iter().position(|s| s == self).expect("listed");
        f.write_str(Suite::NAMES[i])
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::NAMES
            .iter()
            .position(|n| n.eq_ignore_ascii_case(s.trim()))
            .map(|i| Suite::ALL[i])
            .ok_or_else(|| Error::Input(format!("unknown suite {s:?}; expected one of {}", Suite::NAMES.join(", "))))
    }
}

struct Collector(Vec<VerificationItem>);

impl Collector {
    fn check(&mut self, item: String, ok: bool, witness: impl FnOnce() -> String) {
        self.0.push(VerificationItem {
            item,
            status: if ok { Status::Pass } else { Status::Fail },
            witness: (!ok).then(witness),
        });
    }

    /// Records an error from the computation itself as a failed item.
    fn run(&mut self, item: String, f: impl FnOnce() -> Result<Option<String>>) {
        let (ok, witness) = match f() {
            Ok(None) => (true, None),
            Ok(Some(w)) => (false, Some(w)),
            Err(e) => (false, Some(format!("error: {e}"))),
        };
        self.0.push(VerificationItem {
            item,
            status: if ok { Status::Pass } else { Status::Fail },
            witness,
        });
    }
}

fn groups() -> Result<Vec<Arc<FiniteGroup>>> {
    POLYHEDRAL.iter().map(|s| group_from_selector(s)).collect()
}

fn small_cyclic() -> Result<Vec<Arc<FiniteGroup>>> {
    [2, 4, 6].into_iter().map(FiniteGroup::cyclic).collect()
}

/// Runs one suite, or every suite for [`Suite::All`]. Items come out sorted by key.
pub fn run_suite(suite: Suite, n_max: usize) -> Result<VerificationReport> {
    let mut c = Collector(Vec::new());
    let selected = |s: Suite| suite == Suite::All || suite == s;
    if selected(Suite::Groups) {
        check_groups(&mut c)?;
    }
    if selected(Suite::Tables) {
        check_tables(&mut c)?;
    }
    if selected(Suite::Induction) {
        check_induction(&mut c)?;
    }
    if selected(Suite::Matrices) {
        check_matrices(&mut c, n_max);
    }
    if selected(Suite::Isospectral) {
        check_isospectral(&mut c, n_max)?;
    }
    if selected(Suite::Relations) {
        for g in groups()? {
            for rel in verify_z2_relations(&g, n_max)? {
                let witness = format!("levels differ first at n = {:?}", rel.witness_level);
                let key = if rel.as_printed {
                    format!("relations/{}/{}", g.name(), rel.relation)
                } else {
                    format!("relations/{}/corrected {}", g.name(), rel.relation)
                };
                c.check(key.clone(), rel.holds, || witness);
                c.check(
                    format!("{key} (heat, zeta)"),
                    rel.additive_spot_check,
                    || "weighted sums differ".into(),
                );
            }
        }
    }
    if selected(Suite::Dimension) {
        let mut all = groups()?;
        all.extend(small_cyclic()?);
        for g in all {
            c.run(format!("dimension/{}", g.name()), || {
                for n in 0..=n_max {
                    let s = dimension_sum(&g, n)?;
                    if s != ((n + 1) * (n + 1)) as u64 {
                        return Ok(Some(format!("sum {s} at n = {n}")));
                    }
                }
                Ok(None)
            });
        }
    }
    if selected(Suite::Oracle) {
        check_oracle(&mut c)?;
    }
    if selected(Suite::Torsion) {
        check_torsion(&mut c);
    }
    if selected(Suite::Sunada) {
        let g = group_from_selector("2T")?;
        let v = sunada_cyclic(&g, ("S", 1), ("T", 5), n_max)?;
        c.check(
            "sunada/2T/1;S ~ 5;T".into(),
            v.equivalent && v.isospectral == Some(true),
            || format!("{v:?}"),
        );
        let v = sunada_cyclic(&g, ("S", 1), ("T", 1), n_max)?;
        c.check("sunada/2T/1;S !~ 1;T".into(), !v.equivalent, || format!("{v:?}"));
    }
    if selected(Suite::Artin) {
        for g in groups()? {
            let rep = artin_sufficiency(&g)?;
            let ok = rep.sufficient() && rep.predicted_irreps == Some(rep.irreps);
            c.check(format!("artin/{}", g.name()), ok, || format!("{rep:?}"));
        }
    }
    if selected(Suite::Conjugation) {
        for g in groups()? {
            for chk in verify_conjugation_identities(&g).checks {
                c.check(format!("conjugation/{}/{}", g.name(), chk.identity), chk.holds, || {
                    "identity does not hold".into()
                });
            }
        }
    }
    if selected(Suite::InducedMatrices) {
        check_induced_matrices(&mut c)?;
    }
    if selected(Suite::McKay) {
        check_mckay(&mut c)?;
    }
    c.0.sort_by(|a, b| a.item.cmp(&b.item));
    Ok(VerificationReport {
        schema_version: REPORT_SCHEMA_VERSION,
        suite: suite.to_string(),
        n_max,
        items: c.0,
    })
}

fn check_groups(c: &mut Collector) -> Result<()> {
    for (g, (order, classes)) in groups()?.into_iter().zip([(24, 7), (48, 8), (120, 9)]) {
        c.check(format!("groups/{}/order", g.name()), g.order() == order, || g.order().to_string());
        c.check(format!("groups/{}/classes", g.name()), g.num_classes() == classes, || {
            g.num_classes().to_string()
        });
        let GroupKind::BinaryPolyhedral { l, m, n } = g.kind() else {
            continue;
        };
        let (r, s, t, rst) = (g.generator("R")?, g.generator("S")?, g.generator("T")?, g.generator("RST")?);
        let ok = g.power(r, l as usize) == rst
            && g.power(s, m as usize) == rst
            && g.power(t, n as usize) == rst
            && g.mul(g.mul(r, s), t) == rst
            && g.mul(rst, rst) == g.identity()
            && rst != g.identity();
        c.check(format!("groups/{}/relations", g.name()), ok, || "presentation fails".into());
    }
    Ok(())
}

fn check_tables(c: &mut Collector) -> Result<()> {
    let mut all = Vec::new();
    for g in groups()? {
        all.push((g.name().to_string(), g.clone()));
        for gen in CYCLIC_GENERATORS {
            all.push((format!("{}/<{gen}>", g.name()), SubgroupHandle::cyclic(&g, gen)?.group().clone()));
        }
    }
    for (key, g) in all {
        c.run(format!("tables/{key}"), || {
            // the table is verified for exact orthogonality when built
            let t = character_table(&g)?;
            let sum: usize = t.labels().iter().map(|l| l.dimension * l.dimension).sum();
            Ok((sum != g.order()).then(|| format!("sum of squared dimensions {sum}")))
        });
    }
    Ok(())
}

/// Name of the complex-conjugate irrep, for every irrep.
fn dual_names(ct: &CharacterTable) -> Result<BTreeMap<String, String>> {
    let irreps: Vec<_> = ct.irreps().collect();
    let mut out = BTreeMap::new();
    for (label, chi) in &irreps {
        let bar = chi.conj();
        let mut found = None;
        for (other, psi) in &irreps {
            if integer_inner_product(&bar, psi)? == 1 {
                found = Some(other.name.clone());
            }
        }
        let dual = found.ok_or_else(|| Error::Contract(format!("no dual of {}", label.name)))?;
        out.insert(label.name.clone(), dual);
    }
    Ok(out)
}

fn check_induction(c: &mut Collector) -> Result<()> {
    for g in groups()? {
        for gen in CYCLIC_GENERATORS {
            let Some(want) = reference::induction_rows(g.name(), gen) else {
                continue;
            };
            c.run(format!("induction/{}/{gen}", g.name()), || {
                let table = induction_table(&g, gen)?;
                for (row, expected) in table.rows.iter().zip(want) {
                    let mut got = row.constituents.named();
                    got.sort();
                    let mut exp: Vec<(String, u64)> = expected.iter().map(|(n, k)| (n.to_string(), *k as u64)).collect();
                    exp.sort();
                    if got != exp {
                        return Ok(Some(format!("{}↑{gen} = {}", row.r, row.text)));
                    }
                }
                let ct = character_table(&g)?;
                // unprinted rows are the duals of printed ones: (q - r)↑ = conj(r↑)
                let dual = dual_names(&ct)?;
                for r in want.len()..table.q {
                    let mut got = table.rows[r].constituents.named();
                    got.sort();
                    let mut exp: Vec<(String, u64)> = table.rows[table.q - r]
                        .constituents
                        .named()
                        .into_iter()
                        .map(|(n, k)| (dual[&n].clone(), k))
                        .collect();
                    exp.sort();
                    if got != exp {
                        return Ok(Some(format!("{r}↑{gen} is not dual to {}↑{gen}", table.q - r)));
                    }
                }
                let regular: Vec<(String, u64)> =
                    ct.labels().iter().map(|l| (l.name.clone(), l.dimension as u64)).collect();
                let mut sum = table.column_sum();
                sum.sort();
                let mut regular = regular;
                regular.sort();
                Ok((sum != regular).then(|| "column sum is not the regular representation".into()))
            });
        }
    }
    Ok(())
}

fn check_matrices(c: &mut Collector, n_max: usize) {
    for m in &PUBLISHED_MATRICES {
        c.run(format!("matrices/{}", m.key), || {
            let (sol, cmp) = compare_with_reference(m.key)?;
            if !sol.round_trip() {
                return Ok(Some("M A != I".into()));
            }
            let expected = match m.key {
                "235" => Discrepancy::RowInterchange {
                    swapped: vec![("3".into(), "3'".into())],
                },
                "233s" => Discrepancy::ScaledInterchange {
                    swapped: vec![("2s'".into(), "2s''".into())],
                    scales: vec!["1/2".into(); 3],
                },
                _ => Discrepancy::Match,
            };
            if cmp.discrepancy != expected {
                return Ok(Some(format!("{:?}", cmp.discrepancy)));
            }
            let g = group_from_selector(m.group)?;
            if let Some((irrep, n)) = sol.check_spectra(&g, n_max)? {
                return Ok(Some(format!("S({irrep}) differs at n = {n}")));
            }
            let residuals = super::check_overdetermined(&g, &sol, n_max)?;
            Ok(residuals.first().map(|r| format!("unused equation {};{} fails at n = {}", r.r, r.generator, r.level)))
        });
    }
}

fn check_isospectral(c: &mut Collector, n_max: usize) -> Result<()> {
    for g in groups()? {
        for gen in CYCLIC_GENERATORS {
            let h = SubgroupHandle::cyclic(&g, gen)?;
            c.run(format!("isospectral/{}/{gen}", g.name()), || {
                for r in 0..h.order() as i64 {
                    let lens = degeneracy_series(&TwistSpec::cyclic(&h, r)?, n_max)?;
                    let global = degeneracy_series(&TwistSpec::induced_cyclic(&h, r)?, n_max)?;
                    if let Some(n) = (0..=n_max).find(|&n| lens.entries[n] != global.entries[n]) {
                        return Ok(Some(format!("r = {r} differs at n = {n}")));
                    }
                    let reflected = degeneracy_series(&TwistSpec::cyclic(&h, h.order() as i64 - r)?, n_max)?;
                    if reflected.entries != lens.entries {
                        return Ok(Some(format!("r = {r} and q - r differ")));
                    }
                }
                Ok(None)
            });
        }
    }
    Ok(())
}

fn check_oracle(c: &mut Collector) -> Result<()> {
    let mut all = small_cyclic()?;
    all.extend(groups()?);
    for g in all {
        c.run(format!("oracle/{}", g.name()), || {
            let t = character_table(&g)?;
            for (l, chi) in t.irreps() {
                let tw = TwistSpec::new(chi, l.name.clone())?;
                for n in 0..=8 {
                    let (a, b) = (crate::spectra::degeneracy(&tw, n)?, oracle_projector_degeneracy(&tw, n)?);
                    if a != b {
                        return Ok(Some(format!("{} at n = {n}: formula {a}, oracle {b}", l.name)));
                    }
                }
            }
            Ok(None)
        });
    }
    Ok(())
}

fn check_torsion(c: &mut Collector) {
    for (q, r, want) in [(4, 1, 2.0), (6, 1, 1.0), (6, 3, 4.0)] {
        c.run(format!("torsion/T({r};{q})"), || {
            let t = lens_torsion(q, r)?;
            Ok(((t.value - want).abs() > 1e-12).then(|| format!("{}", t.value)))
        });
    }
    c.run("torsion/log T(1;4) = log T(1;6) + log T(3;6)/2".into(), || {
        let lhs = lens_torsion(4, 1)?.log;
        let rhs = lens_torsion(6, 1)?.log + 0.5 * lens_torsion(6, 3)?.log;
        Ok(((lhs - rhs).abs() > 1e-12).then(|| format!("{lhs} vs {rhs}")))
    });
}

fn check_induced_matrices(c: &mut Collector) -> Result<()> {
    for g in groups()? {
        for gen in CYCLIC_GENERATORS {
            let h = SubgroupHandle::cyclic(&g, gen)?;
            c.run(format!("induced-matrices/{}/{gen}", g.name()), || {
                for r in 0..h.order() as i64 {
                    let rep = induced_matrices(&h, &ExplicitRep::cyclic(&h, r)?)?;
                    rep.check_homomorphism(24, 1000, r as u64)?;
                    if !rep.is_monomial() {
                        return Ok(Some(format!("r = {r}: not monomial")));
                    }
                    let ind = induce_character(&h, &cyclic_character(&h, r)?)?;
                    if rep.character()? != ind {
                        return Ok(Some(format!("r = {r}: traces differ from the induced character")));
                    }
                }
                Ok(None)
            });
        }
    }
    Ok(())
}

fn check_mckay(c: &mut Collector) -> Result<()> {
    let mut cases: Vec<(Arc<FiniteGroup>, AdeType)> = groups()?
        .into_iter()
        .zip([AdeType::AffineE6, AdeType::AffineE7, AdeType::AffineE8])
        .collect();
    for q in [2u32, 3, 4, 6, 10] {
        cases.push((FiniteGroup::cyclic(q)?, AdeType::AffineA(q as usize - 1)));
    }
    for (g, ty) in &cases {
        c.run(format!("mckay/{}/graph", g.name()), || {
            let m = mckay_graph(g)?;
            if m.ade_type() != Some(*ty) {
                return Ok(Some(format!("type {:?}", m.ade_type())));
            }
            if !m.mark_equation_holds() || !m.is_symmetric() {
                return Ok(Some("mark equation or symmetry fails".into()));
            }
            let bipartite_expected = g.neg_identity().is_some();
            Ok((bipartite_expected && !m.is_spinor_bipartite()).then(|| "not spinor bipartite".into()))
        });
    }
    for g in groups()? {
        let GroupKind::BinaryPolyhedral { l, m, n } = g.kind() else {
            continue;
        };
        c.run(format!("mckay/{}/class diagram", g.name()), || {
            let d = compactified_diagram(&g)?;
            let want = vec![l as usize - 1, m as usize - 1, n as usize - 1];
            if d.arc_sizes() != want {
                return Ok(Some(format!("arc sizes {:?}", d.arc_sizes())));
            }
            if d.node_count != character_table(&g)?.len() || d.relinked_type.is_none() {
                return Ok(Some("re-linked diagram does not match the McKay graph".into()));
            }
            // gluing appears exactly when the S and T circles share classes
            let glued = !d.gluings.is_empty();
            Ok((glued != (n == 3)).then(|| format!("gluing {glued}")))
        });
        c.run(format!("mckay/{}/class correspondence", g.name()), || {
            let cc = class_correspondence(&g)?;
            Ok((!(cc.two_to_one && cc.exhausts && cc.trivial_points)).then(|| format!("{cc:?}")))
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for name in Suite::NAMES {
            assert_eq!(name.parse::<Suite>().unwrap().to_string(), name);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suites_pass() {
        for s in [Suite::Torsion, Suite::Sunada, Suite::Matrices, Suite::Artin] {
            let rep = run_suite(s, 20).unwrap();
            assert!(rep.passed(), "{}", rep.render_text());
            assert!(!rep.items.is_empty());
        }
    }
}
