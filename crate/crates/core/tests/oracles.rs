//! Cross-checks against independent computations that share no code with the
//! library: a plain cyclic Jacobi eigensolver and formulas worked from the
//! amplitudes directly.

use approx::assert_abs_diff_eq;
use monogamy::measures::{coa, concurrence, full_report, negativity};
use monogamy::states::{random_haar_pure, reduced_ab};
use monogamy::{Complex64, TripartitePureState};

/// Eigenvalues of a real symmetric matrix, ascending.
fn jacobi_eigvals(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for row in a.iter_mut() {
                    let (akp, akq) = (row[p], row[q]);
                    row[p] = c * akp - s * akq;
                    row[q] = s * akp + c * akq;
                }
                let (lo, hi) = a.split_at_mut(q);
                for (x, y) in lo[p].iter_mut().zip(hi[0].iter_mut()) {
                    let (apk, aqk) = (*x, *y);
                    *x = c * apk - s * aqk;
                    *y = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Eigenvalues of a complex Hermitian matrix via its real embedding
/// `[[Re, −Im], [Im, Re]]`, which doubles every eigenvalue.
fn hermitian_eigvals(h: &[Vec<Complex64>]) -> Vec<f64> {
    let n = h.len();
    let mut real = vec![vec![0.0; 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            real[i][j] = h[i][j].re;
            real[i + n][j + n] = h[i][j].re;
            real[i][j + n] = -h[i][j].im;
            real[i + n][j] = h[i][j].im;
        }
    }
    jacobi_eigvals(real).into_iter().step_by(2).collect()
}

/// `M[ab][c]`, the amplitudes as a 4 × n matrix.
fn amplitude_matrix(s: &TripartitePureState) -> Vec<Vec<Complex64>> {
    let n = s.n();
    (0..4).map(|ab| (0..n).map(|c| s.amplitude(ab / 2, ab % 2, c)).collect()).collect()
}

/// `λᵢ` as singular values of `Mᵀ (σ_y⊗σ_y) M`, whose Gram matrix has the same
/// nonzero spectrum as `ρ ρ̃`.
fn oracle_lambdas(s: &TripartitePureState) -> Vec<f64> {
    let m = amplitude_matrix(s);
    let n = s.n();
    let yy = [-1.0, 1.0, 1.0, -1.0];
    let flip = |ab: usize| 3 - ab;
    let sm: Vec<Vec<Complex64>> =
        (0..n).map(|i| (0..n).map(|j| (0..4).map(|ab| m[ab][i] * yy[ab] * m[flip(ab)][j]).sum()).collect()).collect();
    let gram: Vec<Vec<Complex64>> =
        (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| sm[k][i].conj() * sm[k][j]).sum()).collect()).collect();
    let mut l: Vec<f64> = hermitian_eigvals(&gram).into_iter().map(|x| x.max(0.0).sqrt()).collect();
    l.sort_by(|a, b| b.total_cmp(a));
    l.resize(4, 0.0);
    l.truncate(4);
    l
}

fn oracle_negativity(s: &TripartitePureState) -> f64 {
    let m = amplitude_matrix(s);
    let rho = |r: usize, c: usize| -> Complex64 { m[r].iter().zip(&m[c]).map(|(x, y)| x * y.conj()).sum() };
    // (ρ^{T_A})_{ab,a'b'} = ρ_{a'b,ab'}
    let pt: Vec<Vec<Complex64>> =
        (0..4).map(|r| (0..4).map(|c| rho(2 * (c / 2) + r % 2, 2 * (r / 2) + c % 2)).collect()).collect();
    2.0 * hermitian_eigvals(&pt).iter().filter(|&&x| x < 0.0).map(|x| -x).sum::<f64>()
}

#[test]
fn jacobi_oracle_sanity() {
    let ev = jacobi_eigvals(vec![vec![2.0, 1.0], vec![1.0, 2.0]]);
    assert_abs_diff_eq!(ev[0], 1.0, epsilon = 1e-14);
    assert_abs_diff_eq!(ev[1], 3.0, epsilon = 1e-14);
}

#[test]
fn concurrence_and_coa_match_amplitude_route() {
    for seed in 0..60 {
        let s = random_haar_pure(2 + (seed as usize % 4), seed);
        let rho = reduced_ab(&s);
        let l = oracle_lambdas(&s);
        let c = (l[0] - l[1] - l[2] - l[3]).max(0.0);
        let ca: f64 = l.iter().sum();
        assert_abs_diff_eq!(concurrence(&rho).unwrap(), c, epsilon = 1e-7);
        assert_abs_diff_eq!(coa(&rho).unwrap(), ca, epsilon = 1e-7);
    }
}

#[test]
fn negativity_matches_oracle() {
    for seed in 100..160 {
        let s = random_haar_pure(2 + (seed as usize % 4), seed);
        assert_abs_diff_eq!(negativity(&reduced_ab(&s)).unwrap(), oracle_negativity(&s), epsilon = 1e-10);
    }
}

#[test]
fn pure_pair_concurrence_is_twice_determinant() {
    // |ψ⟩_AB ⊗ |0⟩_C with ψ = (a, b, c, d): C = N = C_a = 2|ad − bc|
    let amps =
        [Complex64::new(0.3, 0.1), Complex64::new(-0.2, 0.4), Complex64::new(0.5, -0.3), Complex64::new(0.1, 0.2)];
    let s = TripartitePureState::new(1, amps.to_vec()).unwrap();
    let a: Vec<Complex64> = s.amplitudes().to_vec();
    let expected = 2.0 * (a[0] * a[3] - a[1] * a[2]).norm();
    let r = full_report(&s).unwrap();
    assert_abs_diff_eq!(r.concurrence, expected, epsilon = 1e-12);
    assert_abs_diff_eq!(r.negativity, expected, epsilon = 1e-12);
    assert_abs_diff_eq!(r.coa, expected, epsilon = 1e-12);
    assert_eq!((r.tau, r.chi, r.varpi, r.eta), (0.0, 0.0, 0.0, 0.0));
}
