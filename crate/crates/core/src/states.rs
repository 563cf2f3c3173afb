//! Pure states of a `2 ⊗ 2 ⊗ n` system and their two-qubit reductions.
//!
//! Amplitudes are stored flat with index `a·2n + b·n + c`, where `a` and `b`
//! label the two qubits and `c ∈ 0..n` labels the auxiliary party. Viewed as
//! a `4 × n` matrix `M` with row `2a + b`, the reduced state of the qubits is
//! `ρ_AB = M M†`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::matcore::{self, ComplexMatrix, HERMITIAN_TOL};
use crate::sampling::{self, rng_from_seed};

/// Norm tolerance for states and for vectors handed to the product constructors.
pub const NORM_TOL: f64 = 1e-10;

/// Singular-value cutoff used by [`local_ranks`] unless told otherwise.
pub const RANK_TOL: f64 = 1e-8;

/// Branches whose probability falls below this are dropped.
pub const BRANCH_PROB_FLOOR: f64 = 1e-14;

const PARAM_TOL: f64 = 1e-12;
const UNITARY_TOL: f64 = 1e-10;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn check_normalized(v: &[Complex64]) -> Result<()> {
    let nv = norm(v);
    if (nv - 1.0).abs() > NORM_TOL || !nv.is_finite() {
        return Err(Error::NotNormalized(nv));
    }
    Ok(())
}

/// One of the three parties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Party {
    A,
    B,
    C,
}

/// A normalized pure state on `2 ⊗ 2 ⊗ n`.
#[derive(Debug, Clone, PartialEq)]
pub struct TripartitePureState {
    n: usize,
    amplitudes: Vec<Complex64>,
}

impl TripartitePureState {
    /// Normalizes `amplitudes` (length `4n`) into a state.
    pub fn new(n: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::DimensionMismatch("n must be at least 1".into()));
        }
        if amplitudes.len() != 4 * n {
            return Err(Error::DimensionMismatch(format!("amplitudes length {} ≠ 4n = {}", amplitudes.len(), 4 * n)));
        }
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let nv = norm(&amplitudes);
        if nv == 0.0 || !nv.is_finite() {
            return Err(Error::ZeroVector);
        }
        Ok(Self { n, amplitudes: amplitudes.into_iter().map(|z| z / nv).collect() })
    }

    /// Dimension of the auxiliary party C.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, a: usize, b: usize, c: usize) -> Complex64 {
        self.amplitudes[a * 2 * self.n + b * self.n + c]
    }

    pub fn norm(&self) -> f64 {
        norm(&self.amplitudes)
    }

    /// The `4 × n` matrix with rows `2a + b` and columns `c`.
    pub fn ab_by_c(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(4, self.n, |r, c| self.amplitudes[r * self.n + c])
    }

    /// Amplitudes arranged with `party` as the row index.
    fn unfolding(&self, party: Party) -> ComplexMatrix {
        let n = self.n;
        match party {
            Party::A => ComplexMatrix::from_fn(2, 2 * n, |a, rest| self.amplitudes[a * 2 * n + rest]),
            Party::B => ComplexMatrix::from_fn(2, 2 * n, |b, col| {
                let (a, cc) = (col / n, col % n);
                self.amplitude(a, b, cc)
            }),
            Party::C => ComplexMatrix::from_fn(n, 4, |cc, ab| self.amplitudes[ab * n + cc]),
        }
    }

    /// Reduced density matrix of a single party.
    pub fn single_party_density(&self, party: Party) -> ComplexMatrix {
        let u = self.unfolding(party);
        &u * &u.dagger()
    }
}

/// Free-function form of [`TripartitePureState::new`].
pub fn make_state(n: usize, amplitudes: Vec<Complex64>) -> Result<TripartitePureState> {
    TripartitePureState::new(n, amplitudes)
}

/// A two-qubit density matrix: Hermitian, unit trace, positive semi-definite.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoQubitDensity(ComplexMatrix);

impl TwoQubitDensity {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if (m.rows(), m.cols()) != (4, 4) {
            return Err(Error::DimensionMismatch(format!(
                "two-qubit density must be 4x4, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > NORM_TOL || tr.im.abs() > NORM_TOL {
            return Err(Error::InvalidParams(format!("trace {tr} is not 1")));
        }
        let eigs = matcore::hermitian_eigvals(&m, HERMITIAN_TOL)?;
        let min = eigs[3];
        if min < -HERMITIAN_TOL {
            return Err(Error::NotPSD(min));
        }
        Ok(Self(m))
    }

    /// `|ψ⟩⟨ψ|` for a normalized two-qubit vector.
    pub fn from_pure(psi: &[Complex64]) -> Result<Self> {
        if psi.len() != 4 {
            return Err(Error::DimensionMismatch(format!("two-qubit vector has length {}", psi.len())));
        }
        check_normalized(psi)?;
        let v = ComplexMatrix::column(psi);
        Ok(Self(&v * &v.dagger()))
    }

    pub(crate) fn from_matrix_unchecked(m: ComplexMatrix) -> Self {
        Self(m)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn partial_transpose(&self) -> ComplexMatrix {
        matcore::partial_transpose_a(&self.0)
    }

    pub fn spin_flip(&self) -> ComplexMatrix {
        matcore::spin_flip(&self.0)
    }

    /// `tr ρ²`.
    pub fn purity(&self) -> f64 {
        (&self.0 * &self.0).trace().re
    }
}

/// Parameters of `λ₀|000⟩ + λ₁e^{iθ}|111⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GhzParams {
    pub lambda0: f64,
    pub lambda1: f64,
    pub theta: f64,
}

impl GhzParams {
    pub fn new(lambda0: f64, lambda1: f64, theta: f64) -> Result<Self> {
        let p = Self { lambda0, lambda1, theta };
        p.validate()?;
        Ok(p)
    }

    /// Solves `λ₁ = √(1 − λ₀²)`.
    pub fn from_lambda0(lambda0: f64, theta: f64) -> Result<Self> {
        if !(lambda0 > 0.0 && lambda0 < 1.0) {
            return Err(Error::InvalidParams(format!("lambda0 = {lambda0} outside (0, 1)")));
        }
        Self::new(lambda0, (1.0 - lambda0 * lambda0).sqrt(), theta)
    }

    pub fn validate(&self) -> Result<()> {
        let Self { lambda0, lambda1, theta } = *self;
        for (name, v) in [("lambda0", lambda0), ("lambda1", lambda1)] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::InvalidParams(format!("{name} = {v} outside (0, 1)")));
            }
        }
        if ((lambda0 * lambda0 + lambda1 * lambda1) - 1.0).abs() > PARAM_TOL {
            return Err(Error::InvalidParams("lambda0² + lambda1² ≠ 1".into()));
        }
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::InvalidParams(format!("theta = {theta} outside [0, π]")));
        }
        Ok(())
    }
}

/// Parameters of `λ̃₀|001⟩ + λ̃₁|010⟩ + λ̃₂|100⟩ + λ̃₃|000⟩`.
///
/// `lt3` may be zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WParams {
    pub lt0: f64,
    pub lt1: f64,
    pub lt2: f64,
    pub lt3: f64,
}

impl WParams {
    pub fn new(lt0: f64, lt1: f64, lt2: f64, lt3: f64) -> Result<Self> {
        let p = Self { lt0, lt1, lt2, lt3 };
        p.validate()?;
        Ok(p)
    }

    /// Solves `λ̃₃` from the normalization; fails if the remainder is negative.
    pub fn from_free(lt0: f64, lt1: f64, lt2: f64) -> Result<Self> {
        let rem = 1.0 - lt0 * lt0 - lt1 * lt1 - lt2 * lt2;
        if rem < -PARAM_TOL {
            return Err(Error::InvalidParams(format!("lt0² + lt1² + lt2² = {} exceeds 1", 1.0 - rem)));
        }
        Self::new(lt0, lt1, lt2, rem.max(0.0).sqrt())
    }

    /// The symmetric point `λ̃₀ = λ̃₁ = λ̃₂ = 1/√3`, `λ̃₃ = 0`.
    pub fn symmetric() -> Self {
        let t = 1.0 / 3f64.sqrt();
        Self { lt0: t, lt1: t, lt2: t, lt3: 0.0 }
    }

    pub fn validate(&self) -> Result<()> {
        let Self { lt0, lt1, lt2, lt3 } = *self;
        for (name, v) in [("lt0", lt0), ("lt1", lt1), ("lt2", lt2)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParams(format!("{name} = {v} must be positive")));
            }
        }
        if !(lt3 >= 0.0 && lt3.is_finite()) {
            return Err(Error::InvalidParams(format!("lt3 = {lt3} must be non-negative")));
        }
        if (lt0 * lt0 + lt1 * lt1 + lt2 * lt2 + lt3 * lt3 - 1.0).abs() > PARAM_TOL {
            return Err(Error::InvalidParams("squared amplitudes do not sum to 1".into()));
        }
        Ok(())
    }
}

/// Local unitaries `(u_A, u_B, u_C)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalUnitaryTriple {
    ua: ComplexMatrix,
    ub: ComplexMatrix,
    uc: ComplexMatrix,
}

impl LocalUnitaryTriple {
    pub fn new(ua: ComplexMatrix, ub: ComplexMatrix, uc: ComplexMatrix) -> Result<Self> {
        for (name, u, dim) in [("u_A", &ua, Some(2)), ("u_B", &ub, Some(2)), ("u_C", &uc, None)] {
            if !u.is_square() || dim.is_some_and(|d| u.rows() != d) {
                return Err(Error::DimensionMismatch(format!("{name} has shape {}x{}", u.rows(), u.cols())));
            }
            let dev = u.unitarity_deviation();
            if dev > UNITARY_TOL {
                return Err(Error::NotUnitary(dev));
            }
        }
        Ok(Self { ua, ub, uc })
    }

    pub fn identity(n: usize) -> Self {
        Self { ua: ComplexMatrix::identity(2), ub: ComplexMatrix::identity(2), uc: ComplexMatrix::identity(n) }
    }

    /// Independent Haar unitaries on each party.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        Self {
            ua: sampling::haar_unitary(2, rng),
            ub: sampling::haar_unitary(2, rng),
            uc: sampling::haar_unitary(n, rng),
        }
    }

    pub fn ua(&self) -> &ComplexMatrix {
        &self.ua
    }

    pub fn ub(&self) -> &ComplexMatrix {
        &self.ub
    }

    pub fn uc(&self) -> &ComplexMatrix {
        &self.uc
    }
}

/// `λ₀|000⟩ + λ₁e^{iθ}|111⟩` with `n = 2`.
pub fn ghz_state(p: &GhzParams) -> Result<TripartitePureState> {
    p.validate()?;
    let mut amps = vec![c(0.0, 0.0); 8];
    amps[0] = c(p.lambda0, 0.0);
    amps[7] = Complex64::from_polar(p.lambda1, p.theta);
    TripartitePureState::new(2, amps)
}

/// `λ̃₀|001⟩ + λ̃₁|010⟩ + λ̃₂|100⟩ + λ̃₃|000⟩` with `n = 2`.
pub fn w_state(p: &WParams) -> Result<TripartitePureState> {
    p.validate()?;
    let mut amps = vec![c(0.0, 0.0); 8];
    amps[0b001] = c(p.lt0, 0.0);
    amps[0b010] = c(p.lt1, 0.0);
    amps[0b100] = c(p.lt2, 0.0);
    amps[0b000] = c(p.lt3, 0.0);
    TripartitePureState::new(2, amps)
}

/// Representatives of the high local-rank classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StandardState {
    /// `|000⟩ + |011⟩ + |112⟩`
    S223,
    /// `|000⟩ + (|011⟩ + |101⟩ + |112⟩)/√2`
    S223Prime,
    /// `|000⟩ + |011⟩ + |102⟩ + |113⟩`
    S224,
}

impl StandardState {
    pub const ALL: [StandardState; 3] = [StandardState::S223, StandardState::S223Prime, StandardState::S224];

    pub fn label(self) -> &'static str {
        match self {
            StandardState::S223 => "S223",
            StandardState::S223Prime => "S223prime",
            StandardState::S224 => "S224",
        }
    }
}

type BasisIndex = (usize, usize, usize);

/// Normalized standard state; the normalization is computed numerically.
pub fn standard_state(which: StandardState) -> TripartitePureState {
    let (n, terms): (usize, Vec<(BasisIndex, f64)>) = match which {
        StandardState::S223 => (3, vec![((0, 0, 0), 1.0), ((0, 1, 1), 1.0), ((1, 1, 2), 1.0)]),
        StandardState::S223Prime => (
            3,
            vec![((0, 0, 0), 1.0), ((0, 1, 1), FRAC_1_SQRT_2), ((1, 0, 1), FRAC_1_SQRT_2), ((1, 1, 2), FRAC_1_SQRT_2)],
        ),
        StandardState::S224 => (4, vec![((0, 0, 0), 1.0), ((0, 1, 1), 1.0), ((1, 0, 2), 1.0), ((1, 1, 3), 1.0)]),
    };
    let mut amps = vec![c(0.0, 0.0); 4 * n];
    for ((a, b, cc), x) in terms {
        amps[a * 2 * n + b * n + cc] = c(x, 0.0);
    }
    TripartitePureState::new(n, amps).expect("standard states are nonzero")
}

/// `|ψ⟩_AB ⊗ |φ⟩_C`.
pub fn product_ab_c(psi_ab: &[Complex64], phi_c: &[Complex64]) -> Result<TripartitePureState> {
    if psi_ab.len() != 4 || phi_c.is_empty() {
        return Err(Error::DimensionMismatch(format!(
            "expected a 4-vector and a nonempty C-vector, got lengths {} and {}",
            psi_ab.len(),
            phi_c.len()
        )));
    }
    check_normalized(psi_ab)?;
    check_normalized(phi_c)?;
    let amps = psi_ab.iter().flat_map(|x| phi_c.iter().map(move |y| x * y)).collect();
    TripartitePureState::new(phi_c.len(), amps)
}

/// `|φ⟩_A ⊗ |ψ⟩_BC`; `psi_bc` has length `2n` with index `b·n + c`.
pub fn product_a_bc(phi_a: &[Complex64], psi_bc: &[Complex64]) -> Result<TripartitePureState> {
    if phi_a.len() != 2 || psi_bc.len() < 2 || !psi_bc.len().is_multiple_of(2) {
        return Err(Error::DimensionMismatch(format!(
            "expected a 2-vector and a 2n-vector, got lengths {} and {}",
            phi_a.len(),
            psi_bc.len()
        )));
    }
    check_normalized(phi_a)?;
    check_normalized(psi_bc)?;
    let amps = phi_a.iter().flat_map(|x| psi_bc.iter().map(move |y| x * y)).collect();
    TripartitePureState::new(psi_bc.len() / 2, amps)
}

/// Haar-random pure state; the same `(n, seed)` always yields the same state.
pub fn random_haar_pure(n: usize, seed: u64) -> TripartitePureState {
    random_haar_pure_with(n, &mut rng_from_seed(seed))
}

/// Haar-random pure state drawn from a caller-owned RNG.
pub fn random_haar_pure_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> TripartitePureState {
    assert!(n >= 1, "n must be at least 1");
    TripartitePureState::new(n, sampling::haar_vector(4 * n, rng)).expect("haar vector is normalized")
}

/// `(u_A ⊗ u_B ⊗ u_C)|Ψ⟩`.
pub fn apply_local_unitaries(s: &TripartitePureState, u: &LocalUnitaryTriple) -> Result<TripartitePureState> {
    if u.uc.rows() != s.n {
        return Err(Error::DimensionMismatch(format!("u_C is {}x{} but n = {}", u.uc.rows(), u.uc.cols(), s.n)));
    }
    let ab = u.ua.kron(&u.ub);
    // (U_AB ⊗ U_C) vec = U_AB · M · U_Cᵀ for the 4 × n amplitude matrix M.
    let m = &(&ab * &s.ab_by_c()) * &u.uc.transpose();
    let out = TripartitePureState { n: s.n, amplitudes: m.to_row_major() };
    let drift = (out.norm() - 1.0).abs();
    if drift > NORM_TOL {
        return Err(Error::NotNormalized(out.norm()));
    }
    Ok(out)
}

/// `ρ_AB = Tr_C |Ψ⟩⟨Ψ|`.
pub fn reduced_ab(s: &TripartitePureState) -> TwoQubitDensity {
    let m = s.ab_by_c();
    TwoQubitDensity::from_matrix_unchecked(&m * &m.dagger())
}

/// Ranks of `ρ_A`, `ρ_B`, `ρ_C`, read off the singular values of the
/// amplitude unfoldings.
pub fn local_ranks(s: &TripartitePureState, tol: f64) -> (usize, usize, usize) {
    (
        matcore::rank_with_tol(&s.unfolding(Party::A), tol),
        matcore::rank_with_tol(&s.unfolding(Party::B), tol),
        matcore::rank_with_tol(&s.unfolding(Party::C), tol),
    )
}

/// Applies one Kraus operator `m` (shape `n' × n`) to party C.
///
/// Returns the branch probability and the renormalized post-measurement state,
/// or `None` when the probability is below [`BRANCH_PROB_FLOOR`].
pub fn apply_kraus_branch(s: &TripartitePureState, m: &ComplexMatrix) -> Result<(f64, Option<TripartitePureState>)> {
    apply_kraus_branch_on(s, Party::C, m)
}

/// Applies one Kraus operator to any party. Operators on A or B must be 2x2.
pub fn apply_kraus_branch_on(
    s: &TripartitePureState,
    party: Party,
    m: &ComplexMatrix,
) -> Result<(f64, Option<TripartitePureState>)> {
    let n = s.n;
    let (n_out, amps) = match party {
        Party::C => {
            if m.cols() != n {
                return Err(Error::DimensionMismatch(format!("Kraus operator has {} columns but n = {n}", m.cols())));
            }
            let out = &s.ab_by_c() * &m.transpose();
            (m.rows(), out.to_row_major())
        }
        Party::A | Party::B => {
            if (m.rows(), m.cols()) != (2, 2) {
                return Err(Error::DimensionMismatch(format!(
                    "operator on a qubit must be 2x2, got {}x{}",
                    m.rows(),
                    m.cols()
                )));
            }
            let id = ComplexMatrix::identity(2);
            let op = if party == Party::A { m.kron(&id) } else { id.kron(m) };
            (n, (&op * &s.ab_by_c()).to_row_major())
        }
    };
    let p: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
    if p < BRANCH_PROB_FLOOR {
        return Ok((p, None));
    }
    Ok((p, Some(TripartitePureState::new(n_out, amps)?)))
}
