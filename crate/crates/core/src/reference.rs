//! Published decompositions and elimination matrices, transcribed as fixtures.
//!
//! Irrep names use ASCII primes. Induction rows list `(name, multiplicity)` for
//! `r = 0, 1, ...` until the column stops (further rows repeat by `r ~ q - r`).

/// `(name, multiplicity)` constituents of one induced representation.
pub type Row = &'static [(&'static str, u32)];

/// Induction rows `r↑γ` for `γ ∈ {T, S, R, RST}` in `2T`, `2O`, `2I`.
///
/// `2T` has no separate `S` column since `⟨S⟩` is conjugate to `⟨T⟩`.
pub fn induction_rows(group: &str, gen: &str) -> Option<&'static [Row]> {
    let rows: &'static [Row] = match (group, gen) {
        ("2T", "T") => &[
            &[("1", 1), ("3", 1)],
            &[("2s''", 1), ("2s", 1)],
            &[("1''", 1), ("3", 1)],
            &[("2s'", 1), ("2s''", 1)],
            &[("1'", 1), ("3", 1)],
            &[("2s", 1), ("2s'", 1)],
        ],
        ("2T", "R") => &[
            &[("1", 1), ("1'", 1), ("1''", 1), ("3", 1)],
            &[("2s", 1), ("2s'", 1), ("2s''", 1)],
            &[("3", 2)],
        ],
        ("2T", "RST") => &[
            &[("1", 1), ("1'", 1), ("1''", 1), ("3", 3)],
            &[("2s", 2), ("2s'", 2), ("2s''", 2)],
        ],
        ("2O", "T") => &[
            &[("1", 1), ("2", 1), ("3", 1)],
            &[("2s", 1), ("4s", 1)],
            &[("3", 1), ("3'", 1)],
            &[("2s'", 1), ("4s", 1)],
            &[("1'", 1), ("2", 1), ("3'", 1)],
        ],
        ("2O", "S") => &[
            &[("1", 1), ("1'", 1), ("3", 1), ("3'", 1)],
            &[("2s", 1), ("2s'", 1), ("4s", 1)],
            &[("2", 1), ("3", 1), ("3'", 1)],
            &[("4s", 2)],
        ],
        ("2O", "R") => &[
            &[("1", 1), ("2", 1), ("3", 1), ("3'", 2)],
            &[("2s", 1), ("2s'", 1), ("4s", 2)],
            &[("1'", 1), ("2", 1), ("3", 2), ("3'", 1)],
        ],
        ("2O", "RST") => &[
            &[("1", 1), ("1'", 1), ("2", 2), ("3", 3), ("3'", 3)],
            &[("2s", 2), ("2s'", 2), ("4s", 4)],
        ],
        ("2I", "T") => &[
            &[("1", 1), ("3", 1), ("3'", 1), ("5", 1)],
            &[("2s", 1), ("4s", 1), ("6s", 1)],
            &[("3'", 1), ("4", 1), ("5", 1)],
            &[("2s'", 1), ("4s", 1), ("6s", 1)],
            &[("3", 1), ("4", 1), ("5", 1)],
            &[("6s", 2)],
        ],
        ("2I", "S") => &[
            &[("1", 1), ("3", 1), ("3'", 1), ("4", 2), ("5", 1)],
            &[("2s", 1), ("2s'", 1), ("4s", 1), ("6s", 2)],
            &[("3", 1), ("3'", 1), ("4", 1), ("5", 2)],
            &[("4s", 2), ("6s", 2)],
        ],
        ("2I", "R") => &[
            &[("1", 1), ("3", 1), ("3'", 1), ("4", 2), ("5", 3)],
            &[("2s", 1), ("2s'", 1), ("4s", 2), ("6s", 3)],
            &[("3", 2), ("3'", 2), ("4", 2), ("5", 2)],
        ],
        // printed as `5×5'`; there is no 5' in 2I and the dimension count needs 5×5
        ("2I", "RST") => &[
            &[("1", 1), ("3", 3), ("3'", 3), ("4", 4), ("5", 5)],
            &[("2s", 2), ("2s'", 2), ("4s", 4), ("6s", 6)],
        ],
        _ => return None,
    };
    Some(rows)
}

/// One lens-space quantity `(r; γ)`.
pub type Rhs = (u32, &'static str);

/// A published elimination matrix expressing per-irrep quantities through lens quantities.
#[derive(Clone, Copy, Debug)]
pub struct PublishedMatrix {
    pub key: &'static str,
    pub group: &'static str,
    pub spinor: bool,
    pub irreps: &'static [&'static str],
    pub rhs: &'static [Rhs],
    /// Entries as `(numerator, denominator)`.
    pub entries: &'static [&'static [(i64, i64)]],
}

const fn w(n: i64) -> (i64, i64) {
    (n, 1)
}

const fn h(n: i64) -> (i64, i64) {
    (n, 2)
}

pub const PUBLISHED_MATRICES: [PublishedMatrix; 6] = [
    PublishedMatrix {
        key: "235s",
        group: "2I",
        spinor: true,
        irreps: &["2s", "2s'", "4s", "6s"],
        rhs: &[(1, "T"), (3, "T"), (5, "T"), (1, "S")],
        entries: &[
            &[w(0), w(-1), h(-1), w(1)],
            &[w(-1), w(0), h(-1), w(1)],
            &[w(1), w(1), w(0), w(-1)],
            &[w(0), w(0), h(1), w(0)],
        ],
    },
    PublishedMatrix {
        key: "235",
        group: "2I",
        spinor: false,
        irreps: &["1", "3", "3'", "4", "5"],
        rhs: &[(0, "T"), (2, "T"), (4, "T"), (2, "S"), (2, "R")],
        entries: &[
            &[w(1), w(1), w(1), w(-1), h(-1)],
            &[w(0), w(0), w(-1), w(0), h(1)],
            &[w(0), w(-1), w(0), w(0), h(1)],
            &[w(0), w(1), w(1), w(-1), w(0)],
            &[w(0), w(0), w(0), w(1), h(-1)],
        ],
    },
    PublishedMatrix {
        key: "234s",
        group: "2O",
        spinor: true,
        irreps: &["2s", "2s'", "4s"],
        rhs: &[(1, "T"), (1, "S"), (3, "S")],
        entries: &[
            &[w(1), w(0), h(-1)],
            &[w(-1), w(1), w(0)],
            &[w(0), w(0), h(1)],
        ],
    },
    PublishedMatrix {
        key: "234",
        group: "2O",
        spinor: false,
        irreps: &["1", "1'", "2", "3", "3'"],
        rhs: &[(0, "T"), (2, "T"), (4, "T"), (2, "S"), (2, "R")],
        entries: &[
            &[w(1), w(1), h(1), w(-1), h(-1)],
            &[w(0), w(0), h(1), w(-1), h(1)],
            &[w(0), w(-1), w(0), w(1), w(0)],
            &[w(0), w(0), h(-1), w(0), h(1)],
            &[w(0), w(1), h(1), w(0), h(-1)],
        ],
    },
    PublishedMatrix {
        key: "233s",
        group: "2T",
        spinor: true,
        irreps: &["2s", "2s'", "2s''"],
        rhs: &[(1, "T"), (3, "T"), (5, "T")],
        entries: &[
            &[w(1), w(-1), w(1)],
            &[w(1), w(1), w(-1)],
            &[w(-1), w(1), w(1)],
        ],
    },
    PublishedMatrix {
        key: "233",
        group: "2T",
        spinor: false,
        irreps: &["1", "1'", "1''", "3"],
        rhs: &[(0, "T"), (2, "T"), (4, "T"), (2, "R")],
        entries: &[
            &[w(1), w(0), w(0), h(-1)],
            &[w(0), w(0), w(1), h(-1)],
            &[w(0), w(1), w(0), h(-1)],
            &[w(0), w(0), w(0), h(1)],
        ],
    },
];

pub fn published_matrix(key: &str) -> Option<&'static PublishedMatrix> {
    PUBLISHED_MATRICES.iter().find(|m| m.key == key)
}

/// Canonical irrep names per group, in table order.
pub fn irrep_names(group: &str) -> Option<&'static [&'static str]> {
    match group {
        "2T" => Some(&["1", "1'", "1''", "2s", "2s'", "2s''", "3"]),
        "2O" => Some(&["1", "1'", "2", "2s", "2s'", "3", "3'", "4s"]),
        "2I" => Some(&["1", "2s", "2s'", "3", "3'", "4", "4s", "5", "6s"]),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dim(name: &str) -> u32 {
        name[..1].parse().unwrap()
    }

    #[test]
    fn dimension_counts() {
        // dim(r↑γ) = |G| / q
        for (g, order, n) in [("2T", 24, 3), ("2O", 48, 4), ("2I", 120, 5)] {
            for (gen, q) in [("T", 2 * n), ("S", 6), ("R", 4), ("RST", 2)] {
                let Some(rows) = induction_rows(g, gen) else { continue };
                for row in rows {
                    let d: u32 = row.iter().map(|(n, m)| dim(n) * m).sum();
                    assert_eq!(d, order / q, "{g} {gen}");
                }
            }
        }
    }

    #[test]
    fn names_are_known() {
        for g in ["2T", "2O", "2I"] {
            let names = irrep_names(g).unwrap();
            for gen in ["T", "S", "R", "RST"] {
                for row in induction_rows(g, gen).unwrap_or(&[]) {
                    assert!(row.iter().all(|(n, _)| names.contains(n)), "{g} {gen} {row:?}");
                }
            }
            let sq: u32 = names.iter().map(|n| dim(n) * dim(n)).sum();
            assert_eq!(sq, [24, 48, 120][["2T", "2O", "2I"].iter().position(|x| *x == g).unwrap()]);
        }
        for m in PUBLISHED_MATRICES {
            let names = irrep_names(m.group).unwrap();
            assert!(m.irreps.iter().all(|n| names.contains(n)));
            assert_eq!(m.entries.len(), m.irreps.len());
            assert!(m.entries.iter().all(|r| r.len() == m.rhs.len()));
        }
    }
}
