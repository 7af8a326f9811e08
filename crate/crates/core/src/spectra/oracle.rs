//! Floating point cross-check of degeneracies through explicit SU(2) matrices.
//!
//! Each group element becomes `D^j(γ) = exp(−i 2θ n̂·J)` from the spin-`j` angular momentum
//! matrices, and the multiplicity of an irrep comes from the trace of its isotypic projector.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::TwistSpec;
use crate::characters::character_table;
use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, Quat};

type CMatrix = DMatrix<Complex64>;

const PROJECTOR_TOL: f64 = 1e-8;
const ROUNDING_TOL: f64 = 1e-6;

/// `(J_x, J_y, J_z)` in the basis `m = j, j−1, …, −j`.
fn angular_momentum(two_j: usize) -> [CMatrix; 3] {
    let dim = two_j + 1;
    let j = two_j as f64 / 2.0;
    let mut jp = CMatrix::zeros(dim, dim);
    let mut jz = CMatrix::zeros(dim, dim);
    for a in 0..dim {
        let m = j - a as f64;
        jz[(a, a)] = Complex64::new(m, 0.0);
        if a > 0 {
            // ⟨m+1| J₊ |m⟩
            jp[(a - 1, a)] = Complex64::new((j * (j + 1.0) - m * (m + 1.0)).sqrt(), 0.0);
        }
    }
    let jm = jp.adjoint();
    let jx = (&jp + &jm) * Complex64::new(0.5, 0.0);
    let jy = (&jp - &jm) * Complex64::new(0.0, -0.5);
    [jx, jy, jz]
}

fn spin_matrix(q: &Quat, j_ops: &[CMatrix; 3]) -> CMatrix {
    let [w, x, y, z] = q.embed();
    let theta = w.clamp(-1.0, 1.0).acos();
    let s = theta.sin();
    let dim = j_ops[0].nrows();
    if s.abs() < 1e-12 {
        // ±E acts as (±1)^{2j}
        let sign = if w < 0.0 && dim % 2 == 0 { -1.0 } else { 1.0 };
        return CMatrix::identity(dim, dim) * Complex64::new(sign, 0.0);
    }
    let n = [x / s, y / s, z / s];
    let gen = (&j_ops[0] * Complex64::new(n[0], 0.0)
        + &j_ops[1] * Complex64::new(n[1], 0.0)
        + &j_ops[2] * Complex64::new(n[2], 0.0))
        * Complex64::new(0.0, -2.0 * theta);
    gen.exp()
}

/// The SU(2) matrix of a unit quaternion, `w·I − i(x σ_x + y σ_y + z σ_z)`.
pub fn su2_matrix(q: &Quat) -> CMatrix {
    let [w, x, y, z] = q.embed();
    let i = Complex64::i();
    CMatrix::from_row_slice(
        2,
        2,
        &[
            Complex64::new(w, 0.0) - i * z,
            -i * x - Complex64::new(y, 0.0),
            -i * x + Complex64::new(y, 0.0),
            Complex64::new(w, 0.0) + i * z,
        ],
    )
}

fn check_homomorphism(group: &FiniteGroup, mats: &[CMatrix]) -> Result<()> {
    let gens: Vec<usize> = group.generators().iter().map(|g| g.index).collect();
    for &a in &gens {
        for b in 0..group.order() {
            let err = (&mats[a] * &mats[b] - &mats[group.mul(a, b)]).norm();
            if err > PROJECTOR_TOL {
                return Err(Error::Numeric(format!(
                    "spin matrices fail D(ab) = D(a)D(b) by {err:e}"
                )));
            }
        }
    }
    Ok(())
}

/// `d_n(ρ)` from isotypic projectors `P_A = (dim A/|Γ|) Σ conj χ_A(γ) D^{n/2}(γ)`.
///
/// Errors if a projector is not idempotent or its trace is not an integer multiple of
/// `dim A` to within `1e-6`.
pub fn oracle_projector_degeneracy(twist: &TwistSpec, n: usize) -> Result<u64> {
    let group = twist.group();
    let table = character_table(group)?;
    let mults = table.multiplicities(twist.character())?;
    let j_ops = angular_momentum(n);
    let mats: Vec<CMatrix> = group.elements().iter().map(|q| spin_matrix(q, &j_ops)).collect();
    check_homomorphism(group, &mats)?;
    let mut total = 0u64;
    for (a, &c) in mults.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let chi = table.irrep(a);
        let dim = table.label(a).dimension as f64;
        let mut p = CMatrix::zeros(n + 1, n + 1);
        for (g, m) in mats.iter().enumerate() {
            p += m * chi.at(g).embed().conj();
        }
        p *= Complex64::new(dim / group.order() as f64, 0.0);
        let idem = (&p * &p - &p).norm();
        if idem > PROJECTOR_TOL {
            return Err(Error::Numeric(format!(
                "projector for {} is not idempotent ({idem:e})",
                table.label(a).name
            )));
        }
        let mult = p.trace().re / dim;
        let rounded = mult.round();
        if (mult - rounded).abs() > ROUNDING_TOL || rounded < 0.0 {
            return Err(Error::Numeric(format!(
                "projector trace gives non-integral multiplicity {mult}"
            )));
        }
        total += c as u64 * rounded as u64;
    }
    Ok(total * (n as u64 + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GeneratorChoice;
    use crate::spectra::degeneracy;

    #[test]
    fn su2_matches_quaternion_product() {
        let g = FiniteGroup::binary_polyhedral(4, GeneratorChoice::Standard).unwrap();
        for a in 0..g.order() {
            for b in [1, 7, 13] {
                let lhs = su2_matrix(g.element(a)) * su2_matrix(g.element(b));
                let rhs = su2_matrix(g.element(g.mul(a, b)));
                assert!((lhs - rhs).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn spin_half_matrix_is_su2() {
        let ops = angular_momentum(1);
        let g = FiniteGroup::binary_polyhedral(3, GeneratorChoice::Standard).unwrap();
        for q in g.elements() {
            assert!((spin_matrix(q, &ops) - su2_matrix(q)).norm() < 1e-12);
        }
    }

    #[test]
    fn z2_level_two() {
        let g = FiniteGroup::cyclic(2).unwrap();
        assert_eq!(oracle_projector_degeneracy(&TwistSpec::trivial(&g), 2).unwrap(), 9);
        assert_eq!(oracle_projector_degeneracy(&TwistSpec::trivial(&g), 3).unwrap(), 0);
    }

    #[test]
    fn agrees_with_exact_path() {
        let g = FiniteGroup::binary_polyhedral(3, GeneratorChoice::Standard).unwrap();
        let t = character_table(&g).unwrap();
        for (l, chi) in t.irreps() {
            let tw = TwistSpec::new(chi, l.name.clone()).unwrap();
            for n in 0..14 {
                assert_eq!(oracle_projector_degeneracy(&tw, n).unwrap(), degeneracy(&tw, n).unwrap());
            }
        }
    }
}
