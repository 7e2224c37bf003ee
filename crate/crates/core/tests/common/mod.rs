//! Oracles and instance grids shared by the integration tests.

#![allow(dead_code)]

pub mod laws;

use cone_thom::form::{ChartSpec, Form, FormTerm};
use cone_thom::instance::{batch_seeds, generate, random_scalar, GenConfig, PolySpec};
use cone_thom::scalar::{rational, rational_int, Rational, Scalar};
use cone_thom::thom::ConnectionData;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn chart(m: usize, n: usize) -> ChartSpec {
    ChartSpec::new(m, n).unwrap()
}

/// `count` instances cycling through `n in 1..=4`, `m in 0..=3`.
pub fn grid(count: usize, base_seed: u64) -> Vec<ConnectionData> {
    let shapes: Vec<(usize, usize)> = (1..=4).flat_map(|n| (0..=3).map(move |m| (m, n))).collect();
    batch_seeds(base_seed, count)
        .into_iter()
        .enumerate()
        .map(|(k, seed)| {
            let (m, n) = shapes[k % shapes.len()];
            generate(&GenConfig::new(m, n, seed)).unwrap()
        })
        .collect()
}

/// Nodes and weights of the `k`-point Gauss–Hermite rule for the weight
/// `exp(-u^2)`, by Newton iteration on the orthonormal Hermite recurrence.
pub fn gauss_hermite(k: usize) -> Vec<(f64, f64)> {
    let pim4 = std::f64::consts::PI.powf(-0.25);
    let mut out = vec![(0.0, 0.0); k];
    let mut z = 0.0f64;
    for i in 0..k.div_ceil(2) {
        z = match i {
            0 => (2.0 * k as f64 + 1.0).sqrt() - 1.85575 * (2.0 * k as f64 + 1.0).powf(-0.16667),
            1 => z - 1.14 * (k as f64).powf(0.426) / z,
            2 => 1.86 * z - 0.86 * out[0].0,
            3 => 1.91 * z - 0.91 * out[1].0,
            _ => 2.0 * z - out[i - 2].0,
        };
        let mut pp = 0.0;
        for _ in 0..100 {
            let mut p1 = pim4;
            let mut p2 = 0.0;
            for j in 0..k {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = z * (2.0 / (jf + 1.0)).sqrt() * p2 - (jf / (jf + 1.0)).sqrt() * p3;
            }
            pp = (2.0 * k as f64).sqrt() * p2;
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() <= 1e-15 {
                break;
            }
        }
        let w = 2.0 / (pp * pp);
        out[i] = (z, w);
        out[k - 1 - i] = (-z, w);
    }
    out
}

/// `∫ y^p exp(-y^2/2) dy` by quadrature with the substitution `y = √2 u`.
pub fn quadrature_moment(p: u32) -> f64 {
    let sqrt2 = std::f64::consts::SQRT_2;
    gauss_hermite(24)
        .iter()
        .map(|&(u, w)| w * (sqrt2 * u).powi(p as i32))
        .sum::<f64>()
        * sqrt2
}

/// Random special orthogonal rational matrix: a product of plane rotations
/// with Pythagorean cosines and sines.
pub fn random_rotation<R: Rng>(rng: &mut R, n: usize) -> Vec<Vec<Rational>> {
    let mut r: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    if n < 2 {
        return r;
    }
    for _ in 0..3 {
        let p: i64 = rng.random_range(1..6);
        let q: i64 = rng.random_range(0..6);
        let h = p * p + q * q;
        let c = rational(p * p - q * q, h);
        let s = rational(2 * p * q, h);
        let i = rng.random_range(0..n);
        let mut j = rng.random_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        for row in r.iter_mut() {
            let (a, b) = (row[i].clone(), row[j].clone());
            row[i] = &c * &a - &s * &b;
            row[j] = &s * &a + &c * &b;
        }
    }
    r
}

/// Fiber bit set of `e_{i+1} ∧ e_{j+1}`.
fn two_vector(i: usize, j: usize) -> u64 {
    (1 << i) | (1 << j)
}

/// `(Q, S)` from the closed formulas `Q_ij = R_ji + φ_ji ω` and
/// `S_ij = φ_jk η_ki - dφ_ji - φ_ki η_jk`, with `R = dη + η∧η`, assembled
/// coefficient by coefficient.
pub fn qs_matrix_oracle(data: &ConnectionData) -> (Form, Form) {
    let c = data.chart;
    let n = c.n();
    let mut q = Form::zero(c);
    let mut s = Form::zero(c);
    for i in 0..n {
        for j in i + 1..n {
            let key = two_vector(i, j);
            let mut qij = data.eta.entry(j, i).exterior_d();
            let mut sij = Form::scalar(c, data.phi.entry(j, i).clone())
                .exterior_d()
                .scale(&rational_int(-1));
            for k in 0..n {
                qij = &qij + &data.eta.entry(j, k).wedge(data.eta.entry(k, i));
                sij = &sij + &data.eta.entry(k, i).mul_scalar(data.phi.entry(j, k));
                sij = &sij - &data.eta.entry(j, k).mul_scalar(data.phi.entry(k, i));
            }
            qij = &qij + &data.omega.mul_scalar(data.phi.entry(j, i));
            for (t, coeff) in qij.terms() {
                q.add_term(FormTerm::new(t.gauss, t.one_forms, key), coeff);
            }
            for (t, coeff) in sij.terms() {
                s.add_term(FormTerm::new(t.gauss, t.one_forms, key), coeff);
            }
        }
    }
    (q, s)
}

pub fn small_poly() -> PolySpec {
    PolySpec {
        max_degree: 2,
        max_terms: 3,
        coeff_bound: 9,
        t_degree: 1,
        fiber: true,
    }
}

pub fn random_small_scalar<R: Rng>(rng: &mut R, chart: ChartSpec) -> Scalar {
    random_scalar(rng, chart, &small_poly())
}
