mod common;

use common::{invertible_matrix, random_curve};
use ddl_core::catalog;
use ddl_core::curve::{is_generic, is_generic_at, pencil_search, standard_form, Verdict};
use ddl_core::exactalg::{int, rat};
use ddl_core::{GroupElement, Matrix, MatrixCurve, Rational};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SHAPES: [(usize, usize); 6] = [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3), (2, 4)];

fn verdict(c: &MatrixCurve) -> Verdict {
    is_generic(c).verdict
}

/// `diag(B, C)` with `det B det C = 1`, obtained by rescaling the first row of `B`.
fn random_centralizer(rng: &mut ChaCha8Rng, m: usize, n: usize) -> GroupElement {
    let mut b = invertible_matrix(rng, m);
    let c = invertible_matrix(rng, n);
    let fix = (b.det().unwrap() * c.det().unwrap()).recip();
    for j in 0..m {
        let x = b.get(0, j) * &fix;
        b.set(0, j, x);
    }
    GroupElement::centralizer(&b, &c).unwrap()
}

#[test]
fn genericity_is_invariant_under_the_centralizer() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut generic = 0;
    for trial in 0..60 {
        let (m, n) = SHAPES[trial % SHAPES.len()];
        let curve = random_curve(&mut rng, m, n, 2);
        let z = random_centralizer(&mut rng, m, n);
        let moved = curve.with_entries(z.act_on_curve(curve.entries()).unwrap()).unwrap();
        assert_eq!(verdict(&curve), verdict(&moved), "{}", curve.describe());
        generic += usize::from(verdict(&curve) == Verdict::Generic);
    }
    assert!(generic > 10 && generic < 60, "sample should mix verdicts, got {generic} generic");
}

#[test]
fn genericity_is_invariant_under_translation() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for trial in 0..60 {
        let (m, n) = SHAPES[trial % SHAPES.len()];
        let curve = random_curve(&mut rng, m, n, 2);
        let s0 = rat(rng.gen_range(0..=6), 6);
        let shifted = curve.translate(&s0).unwrap();
        assert!(shifted.eval(&s0).unwrap().is_zero());
        assert_eq!(verdict(&curve), verdict(&shifted), "{}", curve.describe());
    }
}

#[test]
fn genericity_is_symmetric_under_transpose() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for trial in 0..60 {
        let (m, n) = SHAPES[trial % SHAPES.len()];
        let curve = random_curve(&mut rng, m, n, 2);
        let t = curve.transpose();
        assert_eq!((t.m(), t.n()), (n, m));
        assert_eq!(verdict(&curve), verdict(&t), "{}", curve.describe());
    }
}

/// A square curve of degree `<= 2` is generic exactly when `det(phi(s) - phi(s0))`
/// is nonzero somewhere on a 10 x 10 grid, since the bivariate determinant has
/// degree at most 4 in each variable.
#[test]
fn square_verdicts_match_a_determinant_grid() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let grid: Vec<Rational> = (0..10).map(|i| rat(i, 9)).collect();
    for trial in 0..80 {
        let k = 1 + trial % 2;
        let curve = random_curve(&mut rng, k, k, 2);
        let values: Vec<Matrix<Rational>> = grid.iter().map(|s| curve.eval(s).unwrap()).collect();
        let nonvanishing = values
            .iter()
            .any(|a| values.iter().any(|b| !a.try_sub(b).unwrap().det().unwrap().is_zero()));
        let expected = if nonvanishing { Verdict::Generic } else { Verdict::NotGeneric };
        assert_eq!(verdict(&curve), expected, "{}", curve.describe());
    }
}

fn psi_at(curve: &MatrixCurve, s: &Rational) -> Option<Matrix<Rational>> {
    let m = curve.m();
    let phi = curve.eval(s)?;
    let first = phi.block(0, m, 0, m);
    let rest = phi.block(0, m, m, curve.n());
    Some(&first.inverse().ok()? * &rest)
}

#[test]
fn factorization_identity_holds_at_sampled_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let mut checked = 0;
    for trial in 0..40 {
        let (m, n) = [(1, 2), (1, 3), (2, 4)][trial % 3];
        let curve = random_curve(&mut rng, m, n, 2).translate(&int(0)).unwrap();
        for s in curve.grid(8).iter().skip(1) {
            let Some(psi) = psi_at(&curve, s) else { continue };
            let phi = curve.eval(s).unwrap();
            let mut head = Matrix::<Rational>::zeros(m, n);
            head.set_block(0, 0, &phi.block(0, m, 0, m));
            let product = GroupElement::u_prime(&psi.neg())
                .compose(&GroupElement::u(&head))
                .compose(&GroupElement::u_prime(&psi));
            assert_eq!(product.matrix(), GroupElement::u(&phi).matrix(), "{} at {s}", curve.describe());
            checked += 1;
        }
    }
    assert!(checked > 100);
}

fn standard_shape(rng: &mut ChaCha8Rng) -> (usize, usize) {
    [(1, 1), (1, 2), (1, 3), (2, 2), (2, 4)][rng.gen_range(0..5)]
}

#[test]
fn standard_forms_verify_by_substitution() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let mut runs = 0;
    while runs < 40 {
        let (m, n) = standard_shape(&mut rng);
        let curve = random_curve(&mut rng, m, n, 3);
        let Some(s0) = curve.grid(6).into_iter().find(|s| is_generic_at(&curve, s)) else { continue };
        let res = standard_form(&curve, &s0).unwrap();
        assert!(res.verify(), "{}", curve.describe());
        assert!(res.verify_against(&curve), "{}", curve.describe());
        assert_eq!(res.witnesses.len(), n / m);
        // the witnesses of a standard curve hit one block each: the block at
        // witness i is invertible and every other block vanishes
        let z = res.conjugated_curve.translate(&res.base_point).unwrap();
        for (i, w) in res.witnesses.iter().enumerate() {
            let at = z.eval(w).unwrap();
            for b in 0..n / m {
                let block = at.block(0, m, b * m, (b + 1) * m);
                if b == i {
                    assert!(!block.det().unwrap().is_zero());
                } else {
                    assert!(block.is_zero());
                }
            }
        }
        runs += 1;
    }
}

#[test]
fn generic_catalog_curves_avoid_pencils() {
    for (name, curve) in catalog::all() {
        if verdict(&curve) == Verdict::Generic {
            assert!(pencil_search(&curve, curve.m() + curve.n()).is_none(), "{name}");
        }
    }
    assert!(pencil_search(&catalog::pencil(), 4).is_some());
}

#[test]
fn scalar_curves_are_standard_at_zero() {
    for m in 1..=3 {
        let res = standard_form(&catalog::scalar(m), &Rational::zero()).unwrap();
        assert!(res.verify_against(&catalog::scalar(m)));
        assert_eq!(res.witnesses, vec![Rational::one()]);
    }
}
