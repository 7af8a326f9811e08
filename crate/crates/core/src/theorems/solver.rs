//! Per-irrep spectral quantities from lens-space quantities by exact elimination.

use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use super::linalg::{self, QMatrix};
use crate::characters::{character_table, CharacterTable};
use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::groups::{FiniteGroup, SubgroupHandle};
use crate::induction::{cyclic_character, induce_character};
use crate::reference::{self, PublishedMatrix};
use crate::spectra::{degeneracy_series, TwistSpec};

/// `S(r; γ) = Σ_A m_A S(A)` with `m_A` the multiplicity of `A` in `r↑γ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Equation {
    pub r: usize,
    pub generator: String,
    pub coefficients: Vec<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LinearSystem {
    pub group: String,
    pub spinor: bool,
    pub unknowns: Vec<String>,
    pub equations: Vec<Equation>,
}

const GENERATORS: [&str; 4] = ["R", "S", "T", "RST"];

fn sector_indices(table: &CharacterTable, spinor: bool) -> Vec<usize> {
    (0..table.len()).filter(|&a| table.label(a).spinor == spinor).collect()
}

fn equation(g: &Arc<FiniteGroup>, table: &CharacterTable, unknowns: &[usize], r: usize, gen: &str) -> Result<Equation> {
    let h = SubgroupHandle::cyclic(g, gen)?;
    let r = r % h.order();
    let m = table.multiplicities(&induce_character(&h, &cyclic_character(&h, r as i64)?)?)?;
    if m.iter().enumerate().any(|(a, &v)| v != 0 && !unknowns.contains(&a)) {
        return Err(Error::Input(format!("{r}↑{gen} leaves the requested sector")));
    }
    Ok(Equation {
        r,
        generator: gen.to_string(),
        coefficients: unknowns.iter().map(|&a| m[a]).collect(),
    })
}

/// Every equation `(r; γ)` in one sector, for `γ ∈ {R, S, T, RST}` and `0 ≤ r < |γ|`.
pub fn linear_system(g: &Arc<FiniteGroup>, spinor: bool) -> Result<LinearSystem> {
    let table = character_table(g)?;
    let unknowns = sector_indices(&table, spinor);
    let mut equations = Vec::new();
    for gen in GENERATORS {
        let q = g.element_order(g.generator(gen)?);
        // ω^r(−E) = (−1)^r because −E = γ^{q/2}
        for r in (0..q).filter(|r| (r % 2 == 1) == spinor) {
            equations.push(equation(g, &table, &unknowns, r, gen)?);
        }
    }
    Ok(LinearSystem {
        group: g.name().to_string(),
        spinor,
        unknowns: unknowns.iter().map(|&a| table.label(a).name.clone()).collect(),
        equations,
    })
}

impl LinearSystem {
    pub fn coefficient_matrix(&self) -> QMatrix {
        linalg::from_integers(&self.equations.iter().map(|e| e.coefficients.clone()).collect::<Vec<_>>())
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.coefficient_matrix())
    }
}

fn rational_string(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// `S(A) = Σ_j M[A][j] S(rhs_j)`, rows in table order.
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionMatrix {
    pub group: String,
    pub spinor: bool,
    pub irreps: Vec<String>,
    pub rhs: Vec<(usize, String)>,
    pub entries: QMatrix,
    /// Multiplicities of the chosen equations, one row per `rhs` entry.
    pub coefficients: QMatrix,
}

#[derive(Serialize)]
struct SolutionDocument<'a> {
    group: &'a str,
    spinor: bool,
    irreps: &'a [String],
    rhs: Vec<String>,
    entries: Vec<Vec<String>>,
    round_trip: bool,
}

impl SolutionMatrix {
    /// `M · A = I` exactly.
    pub fn round_trip(&self) -> bool {
        linalg::mul(&self.entries, &self.coefficients) == linalg::identity(self.irreps.len())
    }

    pub fn row(&self, irrep: &str) -> Option<&[Rational]> {
        let name = crate::characters::normalize_name(irrep);
        self.irreps.iter().position(|n| *n == name).map(|i| self.entries[i].as_slice())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(SolutionDocument {
            group: &self.group,
            spinor: self.spinor,
            irreps: &self.irreps,
            rhs: self.rhs.iter().map(|(r, g)| format!("{r};{g}")).collect(),
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(rational_string).collect())
                .collect(),
            round_trip: self.round_trip(),
        })
        .expect("solution serializes")
    }

    pub fn render_text(&self) -> String {
        let header: Vec<String> = self.rhs.iter().map(|(r, g)| format!("S({r};{g})")).collect();
        let mut out = format!("{} {} sector\n", self.group, if self.spinor { "spinor" } else { "non-spinor" });
        out.push_str(&format!("{:>8} | {}\n", "", header.join("  ")));
        for (name, row) in self.irreps.iter().zip(&self.entries) {
            let cells: Vec<String> = row
                .iter()
                .zip(&header)
                .map(|(v, h)| format!("{:>w$}", rational_string(v), w = h.len()))
                .collect();
            out.push_str(&format!("{:>8} | {}\n", format!("S({name})"), cells.join("  ")));
        }
        out
    }

    /// Checks `d_n(A) = Σ_j M[A][j] d_n(rhs_j)` for every irrep of the sector, `n ≤ n_max`.
    /// Returns the first failing `(irrep, level)`.
    pub fn check_spectra(&self, g: &Arc<FiniteGroup>, n_max: usize) -> Result<Option<(String, usize)>> {
        let lens = lens_series(g, &self.rhs, n_max)?;
        for (name, row) in self.irreps.iter().zip(&self.entries) {
            let lhs = degeneracy_series(&TwistSpec::irrep(g, name)?, n_max)?.entries;
            if let Some(n) = first_mismatch(&lhs, row, &lens) {
                return Ok(Some((name.clone(), n)));
            }
        }
        Ok(None)
    }
}

fn lens_series(g: &Arc<FiniteGroup>, rhs: &[(usize, String)], n_max: usize) -> Result<Vec<Vec<u64>>> {
    rhs.iter()
        .map(|(r, gen)| {
            let h = SubgroupHandle::cyclic(g, gen)?;
            Ok(degeneracy_series(&TwistSpec::cyclic(&h, *r as i64)?, n_max)?.entries)
        })
        .collect()
}

fn first_mismatch(lhs: &[u64], coeffs: &[Rational], series: &[Vec<u64>]) -> Option<usize> {
    (0..lhs.len()).find(|&n| {
        let rhs: Rational = coeffs
            .iter()
            .zip(series)
            .map(|(c, s)| c * Rational::from_integer(s[n].into()))
            .sum();
        rhs != Rational::from_integer(lhs[n].into())
    })
}

/// Inverts the square system formed by the chosen lens quantities.
pub fn solve_irrep_quantities(
    g: &Arc<FiniteGroup>,
    spinor: bool,
    chosen_rhs: &[(usize, &str)],
) -> Result<SolutionMatrix> {
    let table = character_table(g)?;
    let unknowns = sector_indices(&table, spinor);
    let eqs = chosen_rhs
        .iter()
        .map(|&(r, gen)| equation(g, &table, &unknowns, r, gen))
        .collect::<Result<Vec<_>>>()?;
    if eqs.len() != unknowns.len() {
        return Err(Error::Singular(format!(
            "{} equations for {} unknowns",
            eqs.len(),
            unknowns.len()
        )));
    }
    let a = linalg::from_integers(&eqs.iter().map(|e| e.coefficients.clone()).collect::<Vec<_>>());
    // rows of A are equations, columns irreps: S_rhs = A S_irrep, so S_irrep = A⁻¹ S_rhs
    let entries = linalg::inverse(&a).map_err(|e| {
        let chosen: Vec<String> = chosen_rhs.iter().map(|(r, g)| format!("{r};{g}")).collect();
        Error::Singular(format!("{} with [{}]: {e}", g.name(), chosen.join(", ")))
    })?;
    Ok(SolutionMatrix {
        group: g.name().to_string(),
        spinor,
        irreps: unknowns.iter().map(|&i| table.label(i).name.clone()).collect(),
        rhs: eqs.iter().map(|e| (e.r, e.generator.clone())).collect(),
        entries,
        coefficients: a,
    })
}

/// An equation of the full system that the solved quantities fail to reproduce.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Residual {
    pub r: usize,
    pub generator: String,
    pub level: usize,
}

/// Every equation of the overdetermined system, expressed through the solution, holds on the
/// degeneracy sequences up to `n_max`.
pub fn check_overdetermined(g: &Arc<FiniteGroup>, solution: &SolutionMatrix, n_max: usize) -> Result<Vec<Residual>> {
    let system = linear_system(g, solution.spinor)?;
    let lens = lens_series(g, &solution.rhs, n_max)?;
    let mut failures = Vec::new();
    for e in &system.equations {
        // S(e) = Σ_A a_A S(A) = Σ_j (a · M)_j S(rhs_j)
        let coeffs: Vec<Rational> = (0..solution.rhs.len())
            .map(|j| {
                e.coefficients
                    .iter()
                    .zip(&solution.entries)
                    .map(|(&a, row)| Rational::from_integer(a.into()) * &row[j])
                    .sum()
            })
            .collect();
        let h = SubgroupHandle::cyclic(g, &e.generator)?;
        let lhs = degeneracy_series(&TwistSpec::cyclic(&h, e.r as i64)?, n_max)?.entries;
        if let Some(level) = first_mismatch(&lhs, &coeffs, &lens) {
            failures.push(Residual {
                r: e.r,
                generator: e.generator.clone(),
                level,
            });
        }
    }
    Ok(failures)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Discrepancy {
    Match,
    /// Computed row `i` equals published row `permutation[i]`.
    RowInterchange { swapped: Vec<(String, String)> },
    /// Computed row `i` equals `scales[i]` times the published row.
    Scaled { scales: Vec<String> },
    ScaledInterchange {
        swapped: Vec<(String, String)>,
        scales: Vec<String>,
    },
    Other { mismatched: Vec<(String, usize)> },
}

#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    pub key: String,
    pub group: String,
    pub spinor: bool,
    pub round_trip: bool,
    pub discrepancy: Discrepancy,
}

fn published_entries(p: &PublishedMatrix) -> QMatrix {
    p.entries
        .iter()
        .map(|r| {
            r.iter()
                .map(|&(n, d)| Rational::new(n.into(), d.into()))
                .collect()
        })
        .collect()
}

fn leading_dimension(name: &str) -> String {
    name.chars().take_while(char::is_ascii_digit).collect::<String>() + if name.contains('s') { "s" } else { "" }
}

/// `Some(s)` with `a = s·b`, `s ≠ 0`.
fn proportional(a: &[Rational], b: &[Rational]) -> Option<Rational> {
    let k = b.iter().position(|v| !v.is_zero())?;
    let s = &a[k] / &b[k];
    (!s.is_zero() && a.iter().zip(b).all(|(x, y)| *x == &s * y)).then_some(s)
}

fn search(
    a: usize,
    options: &[Vec<(usize, Rational)>],
    used: &mut Vec<bool>,
    current: &mut Vec<(usize, Rational)>,
    best: &mut Option<((usize, usize), Vec<(usize, Rational)>)>,
) {
    if a == options.len() {
        let scaled = current.iter().filter(|(_, s)| !s.is_one()).count();
        let moved = current.iter().enumerate().filter(|(i, (j, _))| i != j).count();
        if best.as_ref().is_none_or(|(cost, _)| (scaled, moved) < *cost) {
            *best = Some(((scaled, moved), current.clone()));
        }
        return;
    }
    for (j, s) in &options[a] {
        if !used[*j] {
            used[*j] = true;
            current.push((*j, s.clone()));
            search(a + 1, options, used, current, best);
            current.pop();
            used[*j] = false;
        }
    }
}

/// Classifies the difference between a solved matrix and a published fixture.
///
/// Rows may be interchanged only between labels of equal dimension and spinor type; each
/// row may carry its own nonzero rational scale. The explanation with fewest scaled rows,
/// then fewest moved rows, is reported.
pub fn classify(solution: &SolutionMatrix, published: &PublishedMatrix) -> Result<Discrepancy> {
    if solution.irreps.iter().map(String::as_str).ne(published.irreps.iter().copied()) {
        return Err(Error::Contract(format!("{}: irrep order differs from fixture", published.key)));
    }
    let pubm = published_entries(published);
    let n = pubm.len();
    let options: Vec<Vec<(usize, Rational)>> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| leading_dimension(&solution.irreps[i]) == leading_dimension(&solution.irreps[j]))
                .filter_map(|j| proportional(&solution.entries[i], &pubm[j]).map(|s| (j, s)))
                .collect()
        })
        .collect();
    let mut best = None;
    search(0, &options, &mut vec![false; n], &mut Vec::new(), &mut best);
    let Some(((scaled, moved), assign)) = best else {
        let mismatched = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| solution.entries[i][j] != pubm[i][j])
            .map(|(i, j)| (solution.irreps[i].clone(), j))
            .collect();
        return Ok(Discrepancy::Other { mismatched });
    };
    let swapped: Vec<(String, String)> = assign
        .iter()
        .enumerate()
        .filter(|(i, (j, _))| i < j)
        .map(|(i, (j, _))| (solution.irreps[i].clone(), solution.irreps[*j].clone()))
        .collect();
    let scales: Vec<String> = assign.iter().map(|(_, s)| rational_string(s)).collect();
    Ok(match (scaled > 0, moved > 0) {
        (false, false) => Discrepancy::Match,
        (false, true) => Discrepancy::RowInterchange { swapped },
        (true, false) => Discrepancy::Scaled { scales },
        (true, true) => Discrepancy::ScaledInterchange { swapped, scales },
    })
}

/// Solves the system behind a published matrix and compares the two.
pub fn compare_with_reference(key: &str) -> Result<(SolutionMatrix, Comparison)> {
    let published = reference::published_matrix(key)
        .ok_or_else(|| Error::NotFound(format!("no published matrix {key:?}")))?;
    let g = crate::groups::group_from_selector(published.group)?;
    let rhs: Vec<(usize, &str)> = published.rhs.iter().map(|&(r, gen)| (r as usize, gen)).collect();
    let solution = solve_irrep_quantities(&g, published.spinor, &rhs)?;
    let discrepancy = classify(&solution, published)?;
    let comparison = Comparison {
        key: key.to_string(),
        group: published.group.to_string(),
        spinor: published.spinor,
        round_trip: solution.round_trip(),
        discrepancy,
    };
    Ok((solution, comparison))
}
