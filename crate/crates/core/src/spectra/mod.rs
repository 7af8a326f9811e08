//! Twisted scalar Laplacian degeneracies on `S³/Γ` and additive spectral quantities.
//!
//! Level `n` carries eigenvalue `λ_n = n(n+2)` and, for a twist `ρ`, degeneracy
//! `d_n(ρ) = (n+1) ⟨χ_ρ, Res χ_{n/2}⟩_Γ`.

mod oracle;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::characters::{character_table, integer_inner_product, ClassFunction};
use crate::error::{Error, Result};
use crate::exactnum::CycloNum;
use crate::groups::{FiniteGroup, SubgroupHandle};
use crate::induction::{cyclic_character, induce_character};

pub use oracle::{oracle_projector_degeneracy, su2_matrix};

pub const SERIES_SCHEMA_VERSION: u32 = 1;

/// A genuine representation of `Γ`, given by its character.
#[derive(Clone, Debug)]
pub struct TwistSpec {
    character: ClassFunction,
    description: String,
}

impl TwistSpec {
    /// Wraps a character after checking it is a non-negative integer combination of irreps.
    pub fn new(character: ClassFunction, description: impl Into<String>) -> Result<Self> {
        let table = character_table(character.group())?;
        table.decompose(&character)?;
        Ok(TwistSpec {
            character,
            description: description.into(),
        })
    }

    pub fn trivial(group: &Arc<FiniteGroup>) -> Self {
        TwistSpec {
            character: ClassFunction::trivial(group),
            description: "1".into(),
        }
    }

    /// An irrep by display name.
    pub fn irrep(group: &Arc<FiniteGroup>, name: &str) -> Result<Self> {
        let table = character_table(group)?;
        let a = table.index_of(name)?;
        Ok(TwistSpec {
            character: table.irrep(a),
            description: table.label(a).name.clone(),
        })
    }

    /// `Σ c_A A` with `c_A ≥ 0`, in table order.
    pub fn combination(group: &Arc<FiniteGroup>, coeffs: &[i64]) -> Result<Self> {
        if let Some(c) = coeffs.iter().find(|c| **c < 0) {
            return Err(Error::Input(format!("twist coefficient {c} is negative")));
        }
        let table = character_table(group)?;
        let character = table.combine(coeffs)?;
        let description = table.decompose(&character)?.to_string();
        Ok(TwistSpec {
            character,
            description,
        })
    }

    /// The lens-space twist `ω^r` on the standalone cyclic subgroup.
    pub fn cyclic(h: &SubgroupHandle, r: i64) -> Result<Self> {
        let q = h.order() as i64;
        Ok(TwistSpec {
            character: cyclic_character(h, r)?,
            description: format!("{};{}", r.rem_euclid(q), h.name()),
        })
    }

    /// `r↑γ` on the parent group.
    pub fn induced_cyclic(h: &SubgroupHandle, r: i64) -> Result<Self> {
        let q = h.order() as i64;
        Ok(TwistSpec {
            character: induce_character(h, &cyclic_character(h, r)?)?,
            description: format!("{}↑{}", r.rem_euclid(q), h.name()),
        })
    }

    pub fn character(&self) -> &ClassFunction {
        &self.character
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.character.group()
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn dimension(&self) -> usize {
        self.character.degree().to_i64().unwrap_or(0) as usize
    }

    pub fn is_spinor(&self) -> bool {
        self.character.is_spinor()
    }
}

/// `d_n(ρ) = (n+1) ⟨χ_ρ, Res χ_{n/2}⟩`.
pub fn degeneracy(twist: &TwistSpec, n: usize) -> Result<u64> {
    let group = twist.group();
    let spin = ClassFunction::new(group, group.spin_values(n).as_ref().clone())?;
    let m = integer_inner_product(&twist.character, &spin)
        .map_err(|e| Error::Contract(format!("degeneracy at level {n}: {e}")))?;
    u64::try_from(m)
        .map(|m| m * (n as u64 + 1))
        .map_err(|_| Error::Contract(format!("negative intertwining number {m} at level {n}")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegeneracySeries {
    pub group: String,
    pub twist: String,
    pub n_max: usize,
    /// `entries[n] = d_n`.
    pub entries: Vec<u64>,
}

pub fn degeneracy_series(twist: &TwistSpec, n_max: usize) -> Result<DegeneracySeries> {
    let entries = (0..=n_max).map(|n| degeneracy(twist, n)).collect::<Result<Vec<_>>>()?;
    Ok(DegeneracySeries {
        group: twist.group().name().to_string(),
        twist: twist.description.clone(),
        n_max,
        entries,
    })
}

#[derive(Serialize)]
struct SeriesEntry {
    level: usize,
    eigenvalue: u64,
    degeneracy: u64,
}

#[derive(Serialize)]
struct SeriesDocument<'a> {
    schema_version: u32,
    group: &'a str,
    twist: &'a str,
    n_max: usize,
    entries: Vec<SeriesEntry>,
}

impl DegeneracySeries {
    pub fn eigenvalue(n: usize) -> u64 {
        (n * (n + 2)) as u64
    }

    pub fn to_json(&self) -> serde_json::Value {
        let doc = SeriesDocument {
            schema_version: SERIES_SCHEMA_VERSION,
            group: &self.group,
            twist: &self.twist,
            n_max: self.n_max,
            entries: self
                .entries
                .iter()
                .enumerate()
                .map(|(level, &degeneracy)| SeriesEntry {
                    level,
                    eigenvalue: Self::eigenvalue(level),
                    degeneracy,
                })
                .collect(),
        };
        serde_json::to_value(doc).expect("series serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("level,eigenvalue,degeneracy\n");
        for (n, d) in self.entries.iter().enumerate() {
            out.push_str(&format!("{n},{},{d}\n", Self::eigenvalue(n)));
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpectralWeight {
    Raw,
    Heat { t: f64 },
    Zeta { s: f64 },
    /// Eigenvalues `λ ≤ lambda` counted with multiplicity.
    Counting { lambda: f64 },
}

impl fmt::Display for SpectralWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectralWeight::Raw => write!(f, "raw"),
            SpectralWeight::Heat { t } => write!(f, "heat(t={t})"),
            SpectralWeight::Zeta { s } => write!(f, "zeta(s={s})"),
            SpectralWeight::Counting { lambda } => write!(f, "counting(lambda={lambda})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpectralSum {
    pub value: f64,
    /// Upper bound on the omitted tail `n > n_max`; `None` when no bound applies.
    pub tail_bound: Option<f64>,
}

/// `Σ_{n ≤ n_max} d_n f(λ_n)` with a tail estimate from `d_n ≤ (n+1)²`.
pub fn spectral_sum(series: &DegeneracySeries, w: SpectralWeight) -> Result<SpectralSum> {
    let big_n = series.n_max as f64;
    let lam = |n: usize| DegeneracySeries::eigenvalue(n) as f64;
    match w {
        SpectralWeight::Raw => Ok(SpectralSum {
            value: series.entries.iter().map(|&d| d as f64).sum(),
            tail_bound: None,
        }),
        SpectralWeight::Heat { t } => {
            if !(t > 0.0) {
                return Err(Error::Input(format!("heat weight needs t > 0, got {t}")));
            }
            let value = series
                .entries
                .iter()
                .enumerate()
                .map(|(n, &d)| d as f64 * (-t * lam(n)).exp())
                .sum();
            // term ratio for n ≥ N+1 is at most ((N+3)/(N+2))² e^{-t(2N+5)}
            let ratio = ((big_n + 3.0) / (big_n + 2.0)).powi(2) * (-t * (2.0 * big_n + 5.0)).exp();
            let first = (big_n + 2.0).powi(2) * (-t * lam(series.n_max + 1)).exp();
            let tail_bound = (ratio < 1.0).then(|| first / (1.0 - ratio));
            Ok(SpectralSum { value, tail_bound })
        }
        SpectralWeight::Zeta { s } => {
            if !(s > 1.5) {
                return Err(Error::Divergent(format!(
                    "zeta sum needs s > 3/2 to converge, got {s}"
                )));
            }
            let value = series
                .entries
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, &d)| d as f64 * lam(n).powf(-s))
                .sum();
            // n(n+2) ≥ ¾(n+1)² for n ≥ 1, then an integral bound on Σ m^{2-2s}
            let tail_bound = (4.0f64 / 3.0).powf(s) * (big_n + 1.0).powf(3.0 - 2.0 * s) / (2.0 * s - 3.0);
            Ok(SpectralSum {
                value,
                tail_bound: Some(tail_bound),
            })
        }
        SpectralWeight::Counting { lambda } => {
            if lam(series.n_max + 1) <= lambda {
                return Err(Error::Input(format!(
                    "counting up to {lambda} needs levels beyond n_max = {}",
                    series.n_max
                )));
            }
            let value = series
                .entries
                .iter()
                .enumerate()
                .filter(|(n, _)| lam(*n) <= lambda)
                .map(|(_, &d)| d as f64)
                .sum();
            Ok(SpectralSum {
                value,
                tail_bound: Some(0.0),
            })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Torsion {
    pub q: u32,
    pub r: i64,
    pub value: f64,
    pub log: f64,
}

/// `T(r; q) = 4 sin²(πr/q)` for the homogeneous lens space `S³/Z_q` twisted by `ω^r`.
pub fn lens_torsion(q: u32, r: i64) -> Result<Torsion> {
    if q == 0 {
        return Err(Error::Input("lens space order must be positive".into()));
    }
    if r.rem_euclid(q as i64) == 0 {
        return Err(Error::UnsupportedTwist(format!(
            "r = {r} is trivial mod {q}; the untwisted torsion is not covered"
        )));
    }
    let s = (std::f64::consts::PI * r as f64 / q as f64).sin();
    let value = 4.0 * s * s;
    Ok(Torsion {
        q,
        r,
        value,
        log: value.ln(),
    })
}

/// Exact `⟨χ_ρ, Res χ_{n/2}⟩` for a virtual character, without the `(n+1)` factor.
pub fn intertwining(character: &ClassFunction, n: usize) -> Result<i64> {
    let group = character.group();
    let spin = ClassFunction::new(group, group.spin_values(n).as_ref().clone())?;
    integer_inner_product(character, &spin)
}

/// `Σ_A dim(A) d_n(A)` over all irreps of `Γ`.
pub fn dimension_sum(group: &Arc<FiniteGroup>, n: usize) -> Result<u64> {
    let table = character_table(group)?;
    let mut acc = 0;
    for (l, chi) in table.irreps() {
        let t = TwistSpec {
            character: chi,
            description: l.name.clone(),
        };
        acc += l.dimension as u64 * degeneracy(&t, n)?;
    }
    Ok(acc)
}

/// Values of `χ_{n/2}` on each class, exposed for diagnostics.
pub fn spin_values(group: &FiniteGroup, n: usize) -> Vec<CycloNum> {
    group.spin_values(n).as_ref().clone()
}
