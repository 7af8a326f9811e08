//! Prime marks for irreps, pinned by the reference induction tables.

use std::sync::Arc;

use super::{IrrepLabel, TableData};
use crate::error::{Error, Result};
use crate::exactnum::{CycloNum, Rational};
use crate::groups::{FiniteGroup, GroupKind};
use crate::reference;

/// Lower-cases and maps Unicode primes (`′`, `″`, `’`) to ASCII apostrophes.
pub fn normalize_name(name: &str) -> String {
    name.trim()
        .replace('″', "''")
        .replace(['′', '’'], "'")
        .to_ascii_lowercase()
}

fn parse_name(name: &str) -> (usize, bool, u8) {
    let digits: String = name.chars().take_while(char::is_ascii_digit).collect();
    let dim = digits.parse().expect("reference names start with a dimension");
    (dim, name.contains('s'), name.matches('\'').count() as u8)
}

fn intrinsic(group: &FiniteGroup, row: &[CycloNum]) -> (usize, bool) {
    let e = group.class_of(group.identity());
    let dim = row[e].to_i64().expect("degree is an integer") as usize;
    let spinor = group
        .neg_identity()
        .is_some_and(|ne| row[group.class_of(ne)] == CycloNum::from_integer(-(dim as i64)));
    (dim, spinor)
}

/// Sort key independent of the numeric derivation: values under the standard embedding.
fn value_key(row: &[CycloNum]) -> Vec<(i64, i64)> {
    row.iter()
        .map(|v| {
            let z = v.embed();
            ((z.re * 1e9).round() as i64, (z.im * 1e9).round() as i64)
        })
        .collect()
}

pub(super) fn assign(group: &Arc<FiniteGroup>, rows: Vec<Vec<CycloNum>>) -> Result<TableData> {
    let reference_name = match group.kind() {
        GroupKind::BinaryPolyhedral { l: 2, m: 3, n: 3 } => Some("2T"),
        GroupKind::BinaryPolyhedral { l: 2, m: 3, n: 4 } => Some("2O"),
        GroupKind::BinaryPolyhedral { l: 2, m: 3, n: 5 } => Some("2I"),
        _ => None,
    };
    match reference_name {
        Some(name) => assign_by_reference(group, rows, name),
        None => Ok(assign_generic(group, rows)),
    }
}

fn assign_generic(group: &FiniteGroup, mut rows: Vec<Vec<CycloNum>>) -> TableData {
    rows.sort_by_cached_key(|r| {
        let (d, s) = intrinsic(group, r);
        let trivial = r.iter().all(CycloNum::is_one);
        (d, s, !trivial, value_key(r))
    });
    let mut labels: Vec<IrrepLabel> = Vec::new();
    for r in &rows {
        let (d, s) = intrinsic(group, r);
        let primes = labels.iter().filter(|l| l.dimension == d && l.spinor == s).count();
        labels.push(IrrepLabel::new(d, s, primes as u8));
    }
    TableData {
        labels,
        values: rows,
        consistent_labelings: 1,
    }
}

/// Multiplicity of irrep `row` in `r↑⟨g⟩` via reciprocity `⟨Res χ, ω^r⟩`.
fn cyclic_multiplicity(group: &FiniteGroup, row: &[CycloNum], g: usize, r: usize) -> Option<u32> {
    let q = group.element_order(g);
    let mut acc = CycloNum::zero();
    let mut p = group.identity();
    for k in 0..q {
        let w = CycloNum::root_of_unity(q as u32, (r * k) as i64).ok()?;
        acc += &(&row[group.class_of(p)].conj() * &w);
        p = group.mul(p, g);
    }
    acc.scale(&Rational::new(1.into(), (q as i64).into()))
        .to_i64()
        .and_then(|v| u32::try_from(v).ok())
}

fn assign_by_reference(
    group: &Arc<FiniteGroup>,
    rows: Vec<Vec<CycloNum>>,
    name: &str,
) -> Result<TableData> {
    let fail = |m: String| Error::TableDerivation(format!("{}: {m}", group.name()));
    let names = reference::irrep_names(name).expect("reference names exist");
    if names.len() != rows.len() {
        return Err(fail(format!("{} irreps, expected {}", rows.len(), names.len())));
    }
    let info: Vec<(usize, bool)> = rows.iter().map(|r| intrinsic(group, r)).collect();
    let trivial = rows
        .iter()
        .position(|r| r.iter().all(CycloNum::is_one))
        .ok_or_else(|| fail("no trivial character".into()))?;

    // multiplicity data: for every reference row, the observed multiplicity of each irrep
    let mut observed: Vec<(Vec<u32>, &'static [(&'static str, u32)])> = Vec::new();
    for gen in ["T", "S", "R", "RST"] {
        let Some(ref_rows) = reference::induction_rows(name, gen) else {
            continue;
        };
        let g = group.generator(gen)?;
        for (r, want) in ref_rows.iter().enumerate() {
            let m = rows
                .iter()
                .map(|row| cyclic_multiplicity(group, row, g, r))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| fail(format!("non-integral multiplicity in {r}↑{gen}")))?;
            observed.push((m, want));
        }
    }

    // candidate names for each row: same dimension and spinor flag; `1` only for the trivial one
    let candidates: Vec<Vec<usize>> = info
        .iter()
        .enumerate()
        .map(|(a, &(d, s))| {
            (0..names.len())
                .filter(|&i| {
                    let (nd, ns, _) = parse_name(names[i]);
                    nd == d && ns == s && ((names[i] == "1") == (a == trivial))
                })
                .collect()
        })
        .collect();

    let mut consistent: Vec<Vec<usize>> = Vec::new();
    let mut current = vec![usize::MAX; rows.len()];
    let mut used = vec![false; names.len()];
    enumerate(&candidates, 0, &mut current, &mut used, &mut |assign| {
        let ok = observed.iter().all(|(m, want)| {
            m.iter().enumerate().all(|(a, &mult)| {
                let expect = want
                    .iter()
                    .filter(|(n, _)| *n == names[assign[a]])
                    .map(|(_, k)| *k)
                    .sum::<u32>();
                mult == expect
            })
        });
        if ok {
            consistent.push(assign.to_vec());
        }
    });
    if consistent.is_empty() {
        return Err(fail("no labelling reproduces the reference induction tables".into()));
    }
    // tie-break: the assignment whose rows, listed in name order, have the smallest values
    let chosen = consistent
        .iter()
        .min_by_key(|assign| {
            let mut order: Vec<usize> = (0..rows.len()).collect();
            order.sort_by_key(|&a| assign[a]);
            order.iter().map(|&a| value_key(&rows[a])).collect::<Vec<_>>()
        })
        .expect("nonempty")
        .clone();
    let mut slots: Vec<Option<Vec<CycloNum>>> = vec![None; names.len()];
    for (a, row) in rows.into_iter().enumerate() {
        slots[chosen[a]] = Some(row);
    }
    let labels = names
        .iter()
        .map(|n| {
            let (d, s, p) = parse_name(n);
            IrrepLabel::new(d, s, p)
        })
        .collect();
    Ok(TableData {
        labels,
        values: slots.into_iter().map(|s| s.expect("bijective assignment")).collect(),
        consistent_labelings: consistent.len(),
    })
}

fn enumerate(
    candidates: &[Vec<usize>],
    a: usize,
    current: &mut Vec<usize>,
    used: &mut Vec<bool>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if a == candidates.len() {
        visit(current);
        return;
    }
    for &i in &candidates[a] {
        if !used[i] {
            used[i] = true;
            current[a] = i;
            enumerate(candidates, a + 1, current, used, visit);
            used[i] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization() {
        assert_eq!(normalize_name("2S″"), "2s''");
        assert_eq!(normalize_name(" 3′ "), "3'");
        assert_eq!(parse_name("2s''"), (2, true, 2));
        assert_eq!(parse_name("1"), (1, false, 0));
    }
}
