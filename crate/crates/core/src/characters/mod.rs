//! Class functions, character tables and restriction of SU(2) spin characters.

mod dixon;
mod labels;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{CycloNum, CycloWire, Rational};
use crate::groups::{FiniteGroup, GroupKind, SubgroupHandle};

pub use labels::normalize_name;

pub const TABLE_SCHEMA_VERSION: u32 = 1;

/// Name and intrinsic data of an irreducible representation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IrrepLabel {
    pub dimension: usize,
    /// `χ(−E) = −χ(E)`.
    pub spinor: bool,
    pub primes: u8,
    /// Display name with ASCII primes, e.g. `3'`, `2s''`, `w^3`.
    pub name: String,
}

impl IrrepLabel {
    pub fn new(dimension: usize, spinor: bool, primes: u8) -> Self {
        let name = format!(
            "{dimension}{}{}",
            if spinor { "s" } else { "" },
            "'".repeat(primes as usize)
        );
        IrrepLabel {
            dimension,
            spinor,
            primes,
            name,
        }
    }

    /// One-dimensional irrep `ω^r` of a cyclic group.
    pub fn cyclic(r: usize, spinor: bool) -> Self {
        IrrepLabel {
            dimension: 1,
            spinor,
            primes: 0,
            name: format!("w^{r}"),
        }
    }
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// The group-independent part of a character table, cached inside the group.
#[derive(Clone, Debug)]
pub struct TableData {
    pub labels: Vec<IrrepLabel>,
    /// `values[a][c]`: irrep `a` on class `c`.
    pub values: Vec<Vec<CycloNum>>,
    /// Number of prime assignments consistent with the reference induction data.
    pub consistent_labelings: usize,
}

/// A function on conjugacy classes with cyclotomic values.
#[derive(Clone)]
pub struct ClassFunction {
    group: Arc<FiniteGroup>,
    values: Vec<CycloNum>,
}

impl fmt::Debug for ClassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values.iter().map(|v| v.display_approx()).collect();
        write!(f, "ClassFunction({}: [{}])", self.group.name(), vals.join(", "))
    }
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.values == other.values
    }
}

impl ClassFunction {
    pub fn new(group: &Arc<FiniteGroup>, values: Vec<CycloNum>) -> Result<Self> {
        if values.len() != group.num_classes() {
            return Err(Error::Input(format!(
                "class function on {} needs {} values, got {}",
                group.name(),
                group.num_classes(),
                values.len()
            )));
        }
        Ok(ClassFunction {
            group: group.clone(),
            values,
        })
    }

    pub fn zero(group: &Arc<FiniteGroup>) -> Self {
        ClassFunction {
            group: group.clone(),
            values: vec![CycloNum::zero(); group.num_classes()],
        }
    }

    pub fn trivial(group: &Arc<FiniteGroup>) -> Self {
        ClassFunction {
            group: group.clone(),
            values: vec![CycloNum::one(); group.num_classes()],
        }
    }

    /// Character of the regular representation.
    pub fn regular(group: &Arc<FiniteGroup>) -> Self {
        let mut f = Self::zero(group);
        f.values[group.class_of(group.identity())] = CycloNum::from_integer(group.order() as i64);
        f
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn values(&self) -> &[CycloNum] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &CycloNum {
        &self.values[class]
    }

    /// Value at an element index.
    pub fn at(&self, element: usize) -> &CycloNum {
        &self.values[self.group.class_of(element)]
    }

    /// `χ(E)`.
    pub fn degree(&self) -> &CycloNum {
        self.at(self.group.identity())
    }

    /// `χ(−E) = −χ(E)`; false when `−E` is absent.
    pub fn is_spinor(&self) -> bool {
        match self.group.neg_identity() {
            Some(ne) => *self.at(ne) == -self.degree(),
            None => false,
        }
    }

    fn same_group(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.group, &other.group) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    fn zip(&self, other: &Self, op: impl Fn(&CycloNum, &CycloNum) -> CycloNum) -> Result<Self> {
        self.same_group(other)?;
        Ok(ClassFunction {
            group: self.group.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| op(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    /// Pointwise product (tensor product of representations).
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a * b)
    }

    pub fn scaled(&self, k: i64) -> Self {
        let c = CycloNum::from_integer(k);
        ClassFunction {
            group: self.group.clone(),
            values: self.values.iter().map(|v| v * &c).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        ClassFunction {
            group: self.group.clone(),
            values: self.values.iter().map(CycloNum::conj).collect(),
        }
    }
}

/// `(1/|G|) Σ_g conj(a(g)) b(g)`, summed class-wise.
pub fn inner_product(a: &ClassFunction, b: &ClassFunction) -> Result<CycloNum> {
    a.same_group(b)?;
    let g = &a.group;
    let mut acc = CycloNum::zero();
    for (c, class) in g.classes().iter().enumerate() {
        let term = &a.values[c].conj() * &b.values[c];
        acc += &term.scale(&Rational::from_integer(class.size().into()));
    }
    Ok(acc.scale(&Rational::new(1.into(), (g.order() as i64).into())))
}

/// Inner product that must be an integer.
pub fn integer_inner_product(a: &ClassFunction, b: &ClassFunction) -> Result<i64> {
    let v = inner_product(a, b)?;
    v.to_i64().ok_or_else(|| {
        Error::NotACharacter(format!("inner product {} is not an integer", v.display_approx()))
    })
}

/// Restriction of the SU(2) spin-`two_j/2` character to `G`.
pub fn spin_character(group: &Arc<FiniteGroup>, two_j: usize) -> ClassFunction {
    ClassFunction {
        group: group.clone(),
        values: group.spin_values(two_j).as_ref().clone(),
    }
}

/// Transports `χ` on the parent to the standalone copy of `H`.
pub fn restrict(chi: &ClassFunction, h: &SubgroupHandle) -> Result<ClassFunction> {
    if !Arc::ptr_eq(chi.group(), h.parent()) {
        return Err(Error::GroupMismatch);
    }
    let sub = h.group();
    let values = sub
        .classes()
        .iter()
        .map(|c| chi.at(h.embed(c.representative)).clone())
        .collect();
    ClassFunction::new(sub, values)
}

/// The character table of a group with canonical irrep labels.
#[derive(Clone)]
pub struct CharacterTable {
    group: Arc<FiniteGroup>,
    data: Arc<TableData>,
}

impl fmt::Debug for CharacterTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CharacterTable")
            .field("group", &self.group.name())
            .field("irreps", &self.data.labels.iter().map(|l| &l.name).collect::<Vec<_>>())
            .finish()
    }
}

/// Derives (or fetches the cached) character table.
///
/// Cyclic groups get their characters `ω^{rk}` directly; everything else goes through
/// a seeded numeric class-algebra eigenproblem, exact recognition and exact verification.
pub fn character_table(group: &Arc<FiniteGroup>) -> Result<CharacterTable> {
    if let Some(data) = group.char_table.get() {
        return Ok(CharacterTable {
            group: group.clone(),
            data: data.clone(),
        });
    }
    let data = match group.kind() {
        GroupKind::Cyclic { q } => cyclic_table(group, q)?,
        _ => {
            let raw = dixon::derive(group)?;
            labels::assign(group, raw)?
        }
    };
    verify_table(group, &data)?;
    let _ = group.char_table.set(Arc::new(data));
    let data = group.char_table.get().expect("table just stored").clone();
    Ok(CharacterTable {
        group: group.clone(),
        data,
    })
}

fn cyclic_table(group: &Arc<FiniteGroup>, q: u32) -> Result<TableData> {
    let mut labels = Vec::new();
    let mut values = Vec::new();
    for r in 0..q as usize {
        let row = (0..group.num_classes())
            .map(|k| CycloNum::root_of_unity(q, (r * k) as i64))
            .collect::<Result<Vec<_>>>()?;
        labels.push(IrrepLabel::cyclic(r, q % 2 == 0 && r % 2 == 1));
        values.push(row);
    }
    Ok(TableData {
        labels,
        values,
        consistent_labelings: 1,
    })
}

fn verify_table(group: &Arc<FiniteGroup>, data: &TableData) -> Result<()> {
    let n = group.num_classes();
    let fail = |m: String| Err(Error::TableDerivation(format!("{}: {m}", group.name())));
    if data.values.len() != n || data.labels.len() != n {
        return fail(format!("{} irreps for {n} classes", data.values.len()));
    }
    let rows: Vec<ClassFunction> = data
        .values
        .iter()
        .map(|v| ClassFunction::new(group, v.clone()))
        .collect::<Result<_>>()?;
    for (a, ra) in rows.iter().enumerate() {
        for (b, rb) in rows.iter().enumerate().skip(a) {
            let ip = inner_product(ra, rb)?;
            let expect = if a == b { CycloNum::one() } else { CycloNum::zero() };
            if ip != expect {
                return fail(format!("rows {a},{b} not orthonormal"));
            }
        }
    }
    let sizes = group.class_sizes();
    for k in 0..n {
        for l in k..n {
            let s: CycloNum = rows.iter().map(|r| &r.values[k].conj() * &r.values[l]).sum();
            let expect = if k == l {
                CycloNum::from_rational(&Rational::new(
                    (group.order() as i64).into(),
                    (sizes[k] as i64).into(),
                ))
            } else {
                CycloNum::zero()
            };
            if s != expect {
                return fail(format!("columns {k},{l} not orthogonal"));
            }
        }
    }
    let dims: usize = data.labels.iter().map(|l| l.dimension * l.dimension).sum();
    if dims != group.order() {
        return fail(format!("sum of squared dimensions {dims}"));
    }
    for (l, r) in data.labels.iter().zip(&rows) {
        if r.degree().to_i64() != Some(l.dimension as i64) || r.is_spinor() != l.spinor {
            return fail(format!("label {} disagrees with its character", l.name));
        }
    }
    Ok(())
}

impl CharacterTable {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.data.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.labels.is_empty()
    }

    pub fn labels(&self) -> &[IrrepLabel] {
        &self.data.labels
    }

    pub fn label(&self, a: usize) -> &IrrepLabel {
        &self.data.labels[a]
    }

    pub fn consistent_labelings(&self) -> usize {
        self.data.consistent_labelings
    }

    pub fn irrep(&self, a: usize) -> ClassFunction {
        ClassFunction {
            group: self.group.clone(),
            values: self.data.values[a].clone(),
        }
    }

    pub fn irreps(&self) -> impl Iterator<Item = (&IrrepLabel, ClassFunction)> + '_ {
        self.data.labels.iter().enumerate().map(|(a, l)| (l, self.irrep(a)))
    }

    /// Index of an irrep by display name (case-insensitive, Unicode or ASCII primes).
    pub fn index_of(&self, name: &str) -> Result<usize> {
        let want = normalize_name(name);
        self.data
            .labels
            .iter()
            .position(|l| normalize_name(&l.name) == want)
            .ok_or_else(|| {
                let names: Vec<&str> = self.data.labels.iter().map(|l| l.name.as_str()).collect();
                Error::Input(format!(
                    "unknown irrep {name:?} for {}; valid names: {}",
                    self.group.name(),
                    names.join(", ")
                ))
            })
    }

    pub fn character(&self, name: &str) -> Result<ClassFunction> {
        Ok(self.irrep(self.index_of(name)?))
    }

    pub fn trivial_index(&self) -> usize {
        self.data
            .values
            .iter()
            .position(|row| row.iter().all(CycloNum::is_one))
            .expect("trivial character present")
    }

    /// Multiplicities `⟨χ_A, φ⟩`; every one must be a non-negative integer.
    pub fn decompose(&self, phi: &ClassFunction) -> Result<Decomposition> {
        let m = self.multiplicities(phi)?;
        if let Some((a, v)) = m.iter().enumerate().find(|(_, v)| **v < 0) {
            return Err(Error::NotACharacter(format!(
                "multiplicity {v} of {}",
                self.data.labels[a].name
            )));
        }
        Ok(Decomposition {
            terms: m
                .into_iter()
                .enumerate()
                .filter(|(_, v)| *v != 0)
                .map(|(a, v)| (self.data.labels[a].clone(), v as u64))
                .collect(),
        })
    }

    /// Integer coefficients of a virtual character in the irrep basis.
    pub fn multiplicities(&self, phi: &ClassFunction) -> Result<Vec<i64>> {
        (0..self.len())
            .map(|a| integer_inner_product(&self.irrep(a), phi))
            .collect()
    }

    /// `Σ_A m_A χ_A`.
    pub fn combine(&self, coeffs: &[i64]) -> Result<ClassFunction> {
        if coeffs.len() != self.len() {
            return Err(Error::Input(format!("{} coefficients for {} irreps", coeffs.len(), self.len())));
        }
        let mut acc = ClassFunction::zero(&self.group);
        for (a, &m) in coeffs.iter().enumerate() {
            if m != 0 {
                acc = acc.add(&self.irrep(a).scaled(m))?;
            }
        }
        Ok(acc)
    }

    pub fn to_document(&self) -> CharacterTableDocument {
        let g = &self.group;
        CharacterTableDocument {
            schema_version: TABLE_SCHEMA_VERSION,
            group: g.name().to_string(),
            classes: g
                .classes()
                .iter()
                .map(|c| ClassEntry {
                    label: c.label.clone(),
                    aliases: c.aliases.clone(),
                    size: c.size(),
                    element_order: c.element_order,
                })
                .collect(),
            irreps: self
                .data
                .labels
                .iter()
                .zip(&self.data.values)
                .map(|(l, row)| IrrepEntry {
                    name: l.name.clone(),
                    dimension: l.dimension,
                    spinor: l.spinor,
                    values: row.iter().map(CycloNum::to_wire).collect(),
                    approx: row
                        .iter()
                        .map(|v| {
                            let z = v.embed();
                            [round12(z.re), round12(z.im)]
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    /// Aligned plain-text rendering, one row per irrep.
    pub fn render_text(&self) -> String {
        let g = &self.group;
        let mut cells: Vec<Vec<String>> = Vec::new();
        let mut header = vec![String::new()];
        header.extend(g.classes().iter().map(|c| format!("{}({})", c.label, c.size())));
        cells.push(header);
        for (l, row) in self.data.labels.iter().zip(&self.data.values) {
            let mut line = vec![l.name.clone()];
            line.extend(row.iter().map(CycloNum::display_approx));
            cells.push(line);
        }
        let widths: Vec<usize> = (0..cells[0].len())
            .map(|c| cells.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for row in cells {
            let line: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(s, w)| format!("{s:>w$}"))
                .collect();
            out.push_str(line.join("  ").trim_end());
            out.push('\n');
        }
        out
    }
}

fn round12(x: f64) -> f64 {
    let r = (x * 1e12).round() / 1e12;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassEntry {
    pub label: String,
    pub aliases: Vec<String>,
    pub size: usize,
    pub element_order: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct IrrepEntry {
    pub name: String,
    pub dimension: usize,
    pub spinor: bool,
    pub values: Vec<CycloWire>,
    pub approx: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CharacterTableDocument {
    pub schema_version: u32,
    pub group: String,
    pub classes: Vec<ClassEntry>,
    pub irreps: Vec<IrrepEntry>,
}

/// A genuine character written as `Σ m_A A`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub terms: Vec<(IrrepLabel, u64)>,
}

impl Decomposition {
    pub fn multiplicity(&self, name: &str) -> u64 {
        let want = normalize_name(name);
        self.terms
            .iter()
            .find(|(l, _)| normalize_name(&l.name) == want)
            .map_or(0, |(_, m)| *m)
    }

    pub fn dimension(&self) -> u64 {
        self.terms.iter().map(|(l, m)| l.dimension as u64 * m).sum()
    }

    /// `(name, multiplicity)` pairs, in table order.
    pub fn named(&self) -> Vec<(String, u64)> {
        self.terms.iter().map(|(l, m)| (l.name.clone(), *m)).collect()
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(l, m)| if *m == 1 { l.name.clone() } else { format!("{m}x{}", l.name) })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
