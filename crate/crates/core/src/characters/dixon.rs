//! Numeric class-algebra eigenvectors, recognised exactly as sums of roots of unity.

use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactnum::CycloNum;
use crate::groups::FiniteGroup;

const SEEDS: [u64; 6] = [0x5eed, 17, 29, 101, 977, 4099];
const TOL: f64 = 1e-6;

/// Unlabelled irreducible characters, rows in no particular order.
pub(super) fn derive(group: &Arc<FiniteGroup>) -> Result<Vec<Vec<CycloNum>>> {
    let consts = structure_constants(group);
    let mut last = String::new();
    for seed in SEEDS {
        match attempt(group, &consts, seed) {
            Ok(rows) if exact_orthonormal(group, &rows) => return Ok(rows),
            Ok(_) => last = format!("seed {seed}: recognised table fails orthogonality"),
            Err(e) => last = format!("seed {seed}: {e}"),
        }
    }
    Err(Error::TableDerivation(format!("{}: {last}", group.name())))
}

/// `c[j][k][l] = #{x ∈ C_j : x⁻¹ z_l ∈ C_k}` for a fixed `z_l ∈ C_l`.
fn structure_constants(g: &FiniteGroup) -> Vec<Vec<Vec<f64>>> {
    let r = g.num_classes();
    let mut c = vec![vec![vec![0.0; r]; r]; r];
    for (l, class) in g.classes().iter().enumerate() {
        let z = class.representative;
        for x in 0..g.order() {
            let j = g.class_of(x);
            let k = g.class_of(g.mul(g.inverse(x), z));
            c[j][k][l] += 1.0;
        }
    }
    c
}

fn attempt(g: &FiniteGroup, c: &[Vec<Vec<f64>>], seed: u64) -> Result<Vec<Vec<CycloNum>>> {
    let r = g.num_classes();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs: Vec<f64> = (0..r).map(|_| rng.gen_range(0.5..1.5)).collect();
    let a = DMatrix::from_fn(r, r, |k, l| (0..r).map(|j| coeffs[j] * c[j][k][l]).sum::<f64>());
    let eig = a.complex_eigenvalues();
    for i in 0..r {
        for j in 0..i {
            if (eig[i] - eig[j]).norm() < 1e-7 {
                return Err(Error::Numeric("repeated eigenvalue".into()));
            }
        }
    }
    let ac = a.map(|v| Complex64::new(v, 0.0));
    let sizes = g.class_sizes();
    let e_class = g.class_of(g.identity());
    let mut rows = Vec::with_capacity(r);
    for &lambda in eig.iter() {
        let b = &ac - DMatrix::<Complex64>::identity(r, r) * lambda;
        let svd = b.svd(false, true);
        let v_t = svd.v_t.ok_or_else(|| Error::Numeric("svd failed".into()))?;
        let (imin, _) = svd
            .singular_values
            .iter()
            .enumerate()
            .min_by(|x, y| x.1.total_cmp(y.1))
            .expect("nonempty");
        let v: Vec<Complex64> = (0..r).map(|k| v_t[(imin, k)].conj()).collect();
        if v[e_class].norm() < TOL {
            return Err(Error::Numeric("eigenvector vanishes at E".into()));
        }
        let omega: Vec<Complex64> = v.iter().map(|x| x / v[e_class]).collect();
        let denom: f64 = omega
            .iter()
            .zip(&sizes)
            .map(|(w, &s)| w.norm_sqr() / s as f64)
            .sum();
        let d = (g.order() as f64 / denom).sqrt();
        let dim = d.round();
        if (d - dim).abs() > 1e-4 || dim < 1.0 {
            return Err(Error::Numeric(format!("non-integral degree {d}")));
        }
        let dim = dim as usize;
        let row = (0..r)
            .map(|k| {
                let approx = omega[k] * dim as f64 / sizes[k] as f64;
                let m = g.classes()[k].element_order;
                recognise(approx, m, dim)
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok(rows)
}

/// Finds `d` exponents `e_i` with `Σ ζ_m^{e_i} ≈ z` and returns the exact sum.
fn recognise(z: Complex64, m: usize, d: usize) -> Result<CycloNum> {
    let roots: Vec<Complex64> = (0..m)
        .map(|e| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * e as f64 / m as f64))
        .collect();
    let mut best: Option<(f64, Vec<usize>)> = None;
    let mut stack = Vec::with_capacity(d);
    search(&roots, z, d, 0, Complex64::new(0.0, 0.0), &mut stack, &mut best);
    match best {
        Some((err, exps)) if err < TOL * 10.0 => Ok(exps
            .iter()
            .map(|&e| CycloNum::root_of_unity(m as u32, e as i64))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .sum()),
        _ => Err(Error::Numeric(format!("value {z} is not a sum of {d} roots of order {m}"))),
    }
}

fn search(
    roots: &[Complex64],
    target: Complex64,
    left: usize,
    from: usize,
    acc: Complex64,
    stack: &mut Vec<usize>,
    best: &mut Option<(f64, Vec<usize>)>,
) {
    if left == 0 {
        let err = (acc - target).norm();
        if best.as_ref().is_none_or(|(b, _)| err < *b) {
            *best = Some((err, stack.clone()));
        }
        return;
    }
    // the remaining `left` unit vectors move the sum by at most `left`
    if (acc - target).norm() > left as f64 + 1e-9 {
        return;
    }
    for e in from..roots.len() {
        stack.push(e);
        search(roots, target, left - 1, e, acc + roots[e], stack, best);
        stack.pop();
    }
}

fn exact_orthonormal(g: &FiniteGroup, rows: &[Vec<CycloNum>]) -> bool {
    let sizes = g.class_sizes();
    let order = CycloNum::from_integer(g.order() as i64);
    rows.iter().enumerate().all(|(a, ra)| {
        rows.iter().enumerate().skip(a).all(|(b, rb)| {
            let s: CycloNum = ra
                .iter()
                .zip(rb)
                .zip(&sizes)
                .map(|((x, y), &n)| &(&x.conj() * y) * &CycloNum::from_integer(n as i64))
                .sum();
            if a == b {
                s == order
            } else {
                s.is_zero()
            }
        })
    })
}
