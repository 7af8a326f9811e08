//! Explicit induced representation matrices in block-monomial form.
//!
//! With left cosets `G = ∪ g_i H`, the induced matrix of `g` has a single nonzero block
//! in every block column `i`: at block row `j` where `g g_i = g_j h`, holding `B(h)`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::characters::ClassFunction;
use crate::error::{Error, Result};
use crate::exactnum::CycloNum;
use crate::groups::{left_cosets, CosetDecomposition, FiniteGroup, SubgroupHandle};

/// Dense square matrix over the cyclotomic field, row-major.
pub type Matrix = Vec<Vec<CycloNum>>;

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![CycloNum::zero(); m]; n];
    for (i, row) in a.iter().enumerate() {
        for (k, aik) in row.iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[k][j].is_zero() {
                    out[i][j] += &(aik * &b[k][j]);
                }
            }
        }
    }
    out
}

fn trace(a: &Matrix) -> CycloNum {
    a.iter().enumerate().map(|(i, r)| r[i].clone()).sum()
}

/// A representation of a group given by one matrix per element.
#[derive(Clone, Debug)]
pub struct ExplicitRep {
    group: Arc<FiniteGroup>,
    dim: usize,
    matrices: Vec<Matrix>,
}

impl ExplicitRep {
    pub fn new(group: &Arc<FiniteGroup>, matrices: Vec<Matrix>) -> Result<Self> {
        let dim = matrices.first().map_or(0, Vec::len);
        if matrices.len() != group.order()
            || matrices.iter().any(|m| m.len() != dim || m.iter().any(|r| r.len() != dim))
        {
            return Err(Error::Input("one square matrix per group element required".into()));
        }
        Ok(ExplicitRep {
            group: group.clone(),
            dim,
            matrices,
        })
    }

    /// The one-dimensional representation `g^k ↦ ω_q^{rk}` of a cyclic group.
    pub fn cyclic(h: &SubgroupHandle, r: i64) -> Result<Self> {
        let chi = super::cyclic_character(h, r)?;
        let g = h.group();
        let matrices = (0..g.order()).map(|e| vec![vec![chi.at(e).clone()]]).collect();
        Self::new(g, matrices)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, element: usize) -> &Matrix {
        &self.matrices[element]
    }

    /// Exhaustive check `B(ab) = B(a) B(b)`.
    pub fn is_homomorphism(&self) -> bool {
        let g = &self.group;
        (0..g.order()).all(|a| {
            (0..g.order()).all(|b| mat_mul(&self.matrices[a], &self.matrices[b]) == self.matrices[g.mul(a, b)])
        })
    }
}

/// `B↑G` stored as a block permutation plus one `d × d` block per block column.
#[derive(Clone, Debug)]
pub struct MonomialRep {
    group: Arc<FiniteGroup>,
    cosets: CosetDecomposition,
    block_dim: usize,
    /// `perm[g][i] = j` with `g g_i ∈ g_j H`.
    perm: Vec<Vec<usize>>,
    /// `blocks[g][i] = B(g_j⁻¹ g g_i)`.
    blocks: Vec<Vec<Matrix>>,
}

/// Builds the induced matrices of `B` from `H` to its parent.
pub fn induced_matrices(h: &SubgroupHandle, b: &ExplicitRep) -> Result<MonomialRep> {
    if !Arc::ptr_eq(&b.group, h.group()) {
        return Err(Error::GroupMismatch);
    }
    if !b.is_homomorphism() {
        return Err(Error::Input("inducing matrices do not form a representation".into()));
    }
    let g = h.parent();
    let cosets = left_cosets(h);
    let n = cosets.len();
    let mut perm = Vec::with_capacity(g.order());
    let mut blocks = Vec::with_capacity(g.order());
    for x in 0..g.order() {
        let mut p = Vec::with_capacity(n);
        let mut bl = Vec::with_capacity(n);
        for &gi in &cosets.representatives {
            let (j, hh) = cosets.factor(g.mul(x, gi));
            let local = h.locate(hh).ok_or_else(|| Error::Contract("coset factor outside H".into()))?;
            p.push(j);
            bl.push(b.matrix(local).clone());
        }
        perm.push(p);
        blocks.push(bl);
    }
    Ok(MonomialRep {
        group: g.clone(),
        cosets,
        block_dim: b.dim(),
        perm,
        blocks,
    })
}

impl MonomialRep {
    pub fn degree(&self) -> usize {
        self.cosets.len() * self.block_dim
    }

    pub fn num_cosets(&self) -> usize {
        self.cosets.len()
    }

    pub fn coset_representatives(&self) -> &[usize] {
        &self.cosets.representatives
    }

    /// Block-monomial product `D(a) D(b)` as `(perm, blocks)`.
    fn product(&self, a: usize, b: usize) -> (Vec<usize>, Vec<Matrix>) {
        let n = self.num_cosets();
        let mut perm = Vec::with_capacity(n);
        let mut blocks = Vec::with_capacity(n);
        for i in 0..n {
            let k = self.perm[b][i];
            perm.push(self.perm[a][k]);
            blocks.push(mat_mul(&self.blocks[a][k], &self.blocks[b][i]));
        }
        (perm, blocks)
    }

    /// `D(a) D(b) = D(ab)`, exactly.
    pub fn respects_product(&self, a: usize, b: usize) -> bool {
        let ab = self.group.mul(a, b);
        let (perm, blocks) = self.product(a, b);
        perm == self.perm[ab] && blocks == self.blocks[ab]
    }

    /// Exhaustive on all pairs when `|G| ≤ exhaustive_limit`; otherwise all generator
    /// pairs plus `samples` seeded random pairs. Returns the number of pairs checked.
    pub fn check_homomorphism(&self, exhaustive_limit: usize, samples: usize, seed: u64) -> Result<usize> {
        let g = &self.group;
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        if g.order() <= exhaustive_limit {
            for a in 0..g.order() {
                for b in 0..g.order() {
                    pairs.push((a, b));
                }
            }
        } else {
            let gens: Vec<usize> = g.generators().iter().map(|x| x.index).collect();
            for &a in &gens {
                for &b in &gens {
                    pairs.push((a, b));
                }
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                pairs.push((rng.gen_range(0..g.order()), rng.gen_range(0..g.order())));
            }
        }
        for &(a, b) in &pairs {
            if !self.respects_product(a, b) {
                return Err(Error::Contract(format!(
                    "induced matrices fail D(ab) = D(a)D(b) at ({a}, {b})"
                )));
            }
        }
        Ok(pairs.len())
    }

    /// Sum of the diagonal blocks' traces over fixed cosets.
    pub fn trace(&self, element: usize) -> CycloNum {
        (0..self.num_cosets())
            .filter(|&i| self.perm[element][i] == i)
            .map(|i| trace(&self.blocks[element][i]))
            .sum()
    }

    pub fn character(&self) -> Result<ClassFunction> {
        let values = self
            .group
            .classes()
            .iter()
            .map(|c| self.trace(c.representative))
            .collect();
        ClassFunction::new(&self.group, values)
    }

    /// Every row and column of the dense matrix has exactly one nonzero entry (for `d = 1`,
    /// a root of unity).
    pub fn is_monomial(&self) -> bool {
        (0..self.group.order()).all(|x| {
            let d = self.dense(x);
            let rows_ok = d.iter().all(|r| r.iter().filter(|v| !v.is_zero()).count() == 1);
            let cols_ok = (0..d.len()).all(|c| d.iter().filter(|r| !r[c].is_zero()).count() == 1);
            rows_ok && cols_ok
        })
    }

    /// Dense `nd × nd` matrix with rows `(j, m')` and columns `(i, m)`.
    pub fn dense(&self, element: usize) -> Matrix {
        let d = self.block_dim;
        let size = self.degree();
        let mut out = vec![vec![CycloNum::zero(); size]; size];
        for i in 0..self.num_cosets() {
            let j = self.perm[element][i];
            for mp in 0..d {
                for m in 0..d {
                    out[j * d + mp][i * d + m] = self.blocks[element][i][mp][m].clone();
                }
            }
        }
        out
    }

    /// Dense multiplication check on a single pair, independent of the block shortcut.
    pub fn dense_respects_product(&self, a: usize, b: usize) -> bool {
        mat_mul(&self.dense(a), &self.dense(b)) == self.dense(self.group.mul(a, b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GeneratorChoice;
    use crate::induction::{cyclic_character, induce_character};

    fn group(n: u32) -> Arc<FiniteGroup> {
        FiniteGroup::binary_polyhedral(n, GeneratorChoice::Standard).unwrap()
    }

    #[test]
    fn regular_representation() {
        let g = group(3);
        let e = SubgroupHandle::trivial(&g).unwrap();
        let b = ExplicitRep::cyclic(&e, 0).unwrap();
        let rep = induced_matrices(&e, &b).unwrap();
        assert_eq!(rep.degree(), 24);
        assert_eq!(rep.trace(g.identity()).to_i64(), Some(24));
        assert!(rep.is_monomial());
        assert_eq!(rep.check_homomorphism(24, 0, 0).unwrap(), 576);
    }

    #[test]
    fn from_r_in_2t() {
        let g = group(3);
        let h = SubgroupHandle::cyclic(&g, "R").unwrap();
        let b = ExplicitRep::cyclic(&h, 1).unwrap();
        let rep = induced_matrices(&h, &b).unwrap();
        assert_eq!(rep.degree(), 6);
        assert!(rep.is_monomial());
        rep.check_homomorphism(24, 0, 0).unwrap();
        let ind = induce_character(&h, &cyclic_character(&h, 1).unwrap()).unwrap();
        assert_eq!(rep.character().unwrap(), ind);
        let s = g.generator("S").unwrap();
        let t = g.generator("T").unwrap();
        assert!(rep.dense_respects_product(s, t));
    }

    #[test]
    fn non_homomorphism_rejected() {
        let g = group(3);
        let h = SubgroupHandle::cyclic(&g, "R").unwrap();
        let mut b = ExplicitRep::cyclic(&h, 1).unwrap();
        b.matrices[1] = vec![vec![CycloNum::from_integer(2)]];
        assert!(matches!(induced_matrices(&h, &b), Err(Error::Input(_))));
    }
}
