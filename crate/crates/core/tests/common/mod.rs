#![allow(dead_code)]

use ddl_core::exactalg::{int, rat};
use ddl_core::{Matrix, MatrixCurve, Poly, RatFunc, Rational};
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-12..=12), rng.gen_range(1..=7))
}

pub fn nonzero_rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let r = small_rational(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

pub fn random_matrix(rng: &mut ChaCha8Rng, m: usize, n: usize) -> Matrix<Rational> {
    Matrix::new(m, n, (0..m * n).map(|_| small_rational(rng)).collect()).unwrap()
}

pub fn invertible_matrix(rng: &mut ChaCha8Rng, k: usize) -> Matrix<Rational> {
    loop {
        let x = random_matrix(rng, k, k);
        if !x.det().unwrap().is_zero() {
            return x;
        }
    }
}

/// Polynomial entries of degree <= `degree`; about a third of the draws copy
/// row 0 into the other rows or zero a column so that degenerate curves appear too.
pub fn random_curve(rng: &mut ChaCha8Rng, m: usize, n: usize, degree: usize) -> MatrixCurve {
    let mut entries: Vec<RatFunc> = (0..m * n)
        .map(|_| {
            let coeffs: Vec<i64> = (0..=degree).map(|_| rng.gen_range(-3..=3)).collect();
            RatFunc::from(Poly::from_ints(&coeffs))
        })
        .collect();
    match rng.gen_range(0..6) {
        0 if m > 1 => {
            for i in 1..m {
                for j in 0..n {
                    entries[i * n + j] = entries[j].clone();
                }
            }
        }
        1 => {
            let j = rng.gen_range(0..n);
            for i in 0..m {
                entries[i * n + j] = RatFunc::zero();
            }
        }
        _ => {}
    }
    MatrixCurve::new(Matrix::new(m, n, entries).unwrap(), int(0), int(1)).unwrap()
}
