//! Dense density-matrix simulation of few-qubit circuits.
//!
//! States are 2^n x 2^n complex Hermitian matrices, so noise channels act
//! exactly rather than being trajectory-sampled; n <= 6 keeps everything
//! cheap (at most 64x64). Qubit 0 is the leftmost tensor factor, i.e. the
//! most significant bit of a basis index.
//!
//! All values are immutable after construction; operations return new states.
//! Sampling takes an explicit [`ChaCha8Rng`] stream owned by the caller.

use ndarray::linalg::kron;
use ndarray::Array2;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hermiticity tolerance for state validation.
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Unit-trace tolerance for state validation.
pub const TRACE_TOL: f64 = 1e-10;
/// Allowed imaginary part when extracting a real expectation value.
pub const REALNESS_TOL: f64 = 1e-10;

/// Number of qubits, restricted to the supported range 1..=6.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QubitCount(u8);

impl QubitCount {
    pub fn new(n: u32) -> Result<Self> {
        if (1..=6).contains(&n) {
            Ok(Self(n as u8))
        } else {
            Err(Error::QubitCount(n))
        }
    }

    pub fn get(self) -> usize {
        self.0 as usize
    }

    /// State dimension 2^n.
    pub fn dim(self) -> usize {
        1 << self.0
    }
}

/// A measurement outcome: the +/-1 parity of a Pauli measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Outcome {
    Plus,
    Minus,
}

impl Outcome {
    pub fn value(self) -> f64 {
        match self {
            Outcome::Plus => 1.0,
            Outcome::Minus => -1.0,
        }
    }

    pub fn sign(self) -> i8 {
        match self {
            Outcome::Plus => 1,
            Outcome::Minus => -1,
        }
    }

    pub fn from_sign(sign: i8) -> Result<Self> {
        match sign {
            1 => Ok(Outcome::Plus),
            -1 => Ok(Outcome::Minus),
            other => Err(Error::InvalidOutcome(other)),
        }
    }
}

/// One letter of a Pauli string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PauliLetter {
    I,
    X,
    Y,
    Z,
}

impl PauliLetter {
    fn matrix(self) -> Array2<Complex64> {
        let o = Complex64::new(0.0, 0.0);
        let l = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        match self {
            PauliLetter::I => Array2::from_shape_vec((2, 2), vec![l, o, o, l]).unwrap(),
            PauliLetter::X => Array2::from_shape_vec((2, 2), vec![o, l, l, o]).unwrap(),
            PauliLetter::Y => Array2::from_shape_vec((2, 2), vec![o, -i, i, o]).unwrap(),
            PauliLetter::Z => Array2::from_shape_vec((2, 2), vec![l, o, o, -l]).unwrap(),
        }
    }
}

/// A signed Pauli string with eigenvalues +/-1, e.g. `XX`, `-YY`, `ZIZ`.
///
/// At least one letter must be non-identity, otherwise the represented
/// operator would be (+/-) the identity and carry no signal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    letters: Vec<PauliLetter>,
    sign: i8,
}

impl PauliString {
    pub fn new(letters: Vec<PauliLetter>, sign: i8) -> Result<Self> {
        if sign != 1 && sign != -1 {
            return Err(Error::PauliParse(format!("sign {sign} is not +1 or -1")));
        }
        if letters.is_empty() || letters.len() > 6 {
            return Err(Error::QubitCount(letters.len() as u32));
        }
        if letters.iter().all(|&l| l == PauliLetter::I) {
            return Err(Error::TrivialPauliString);
        }
        Ok(Self { letters, sign })
    }

    /// Parse strings like `"XX"`, `"-YY"`, `"ZIZ"`.
    pub fn parse(s: &str) -> Result<Self> {
        let (sign, body) = match s.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, s.strip_prefix('+').unwrap_or(s)),
        };
        let mut letters = Vec::with_capacity(body.len());
        for ch in body.chars() {
            letters.push(match ch {
                'I' => PauliLetter::I,
                'X' => PauliLetter::X,
                'Y' => PauliLetter::Y,
                'Z' => PauliLetter::Z,
                other => return Err(Error::PauliParse(format!("bad letter {other:?} in {s:?}"))),
            });
        }
        Self::new(letters, sign)
    }

    pub fn qubits(&self) -> QubitCount {
        QubitCount::new(self.letters.len() as u32).expect("validated at construction")
    }

    pub fn letters(&self) -> &[PauliLetter] {
        &self.letters
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    /// Dense matrix representation, including the sign.
    pub fn matrix(&self) -> Array2<Complex64> {
        let mut out = Array2::from_shape_vec((1, 1), vec![Complex64::new(self.sign as f64, 0.0)])
            .unwrap();
        for letter in &self.letters {
            out = kron(&out, &letter.matrix());
        }
        out
    }
}

impl std::fmt::Display for PauliString {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.sign < 0 {
            write!(f, "-")?;
        }
        for l in &self.letters {
            write!(f, "{}", match l {
                PauliLetter::I => 'I',
                PauliLetter::X => 'X',
                PauliLetter::Y => 'Y',
                PauliLetter::Z => 'Z',
            })?;
        }
        Ok(())
    }
}

/// Circuit gate. Rotation angles are in radians.
#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    Rx { target: usize, angle: f64 },
    Ry { target: usize, angle: f64 },
    Rz { target: usize, angle: f64 },
    Cnot { control: usize, target: usize },
    PauliX { target: usize },
    PauliY { target: usize },
    PauliZ { target: usize },
    /// Reflection about |0..0>: the diagonal {+1, -1, ..., -1} on all qubits.
    Reflection0,
}

impl Gate {
    pub fn validate(&self, n: QubitCount) -> Result<()> {
        let check = |t: usize| {
            if t < n.get() {
                Ok(())
            } else {
                Err(Error::TargetOutOfRange { target: t, qubits: n.get() })
            }
        };
        match *self {
            Gate::Rx { target, .. }
            | Gate::Ry { target, .. }
            | Gate::Rz { target, .. }
            | Gate::PauliX { target }
            | Gate::PauliY { target }
            | Gate::PauliZ { target } => check(target),
            Gate::Cnot { control, target } => {
                if control == target {
                    return Err(Error::CnotSameQubit(control));
                }
                check(control)?;
                check(target)
            }
            Gate::Reflection0 => Ok(()),
        }
    }

    /// The inverse gate: rotations negate their angle, everything else is
    /// self-inverse.
    pub fn inverse(&self) -> Gate {
        match *self {
            Gate::Rx { target, angle } => Gate::Rx { target, angle: -angle },
            Gate::Ry { target, angle } => Gate::Ry { target, angle: -angle },
            Gate::Rz { target, angle } => Gate::Rz { target, angle: -angle },
            ref g => g.clone(),
        }
    }

    /// Dense unitary on the full n-qubit space.
    pub fn unitary(&self, n: QubitCount) -> Result<Array2<Complex64>> {
        self.validate(n)?;
        let dim = n.dim();
        Ok(match *self {
            Gate::Rx { target, angle } => embed_single(rotation_x(angle), target, n),
            Gate::Ry { target, angle } => embed_single(rotation_y(angle), target, n),
            Gate::Rz { target, angle } => embed_single(rotation_z(angle), target, n),
            Gate::PauliX { target } => embed_single(PauliLetter::X.matrix(), target, n),
            Gate::PauliY { target } => embed_single(PauliLetter::Y.matrix(), target, n),
            Gate::PauliZ { target } => embed_single(PauliLetter::Z.matrix(), target, n),
            Gate::Cnot { control, target } => {
                let mut u = Array2::zeros((dim, dim));
                for b in 0..dim {
                    let control_bit = (b >> (n.get() - 1 - control)) & 1;
                    let b2 = b ^ (control_bit << (n.get() - 1 - target));
                    u[(b2, b)] = Complex64::new(1.0, 0.0);
                }
                u
            }
            Gate::Reflection0 => {
                let mut u = Array2::zeros((dim, dim));
                u[(0, 0)] = Complex64::new(1.0, 0.0);
                for b in 1..dim {
                    u[(b, b)] = Complex64::new(-1.0, 0.0);
                }
                u
            }
        })
    }
}

fn rotation_x(angle: f64) -> Array2<Complex64> {
    let c = Complex64::new((angle / 2.0).cos(), 0.0);
    let s = Complex64::new(0.0, -(angle / 2.0).sin());
    Array2::from_shape_vec((2, 2), vec![c, s, s, c]).unwrap()
}

fn rotation_y(angle: f64) -> Array2<Complex64> {
    let c = Complex64::new((angle / 2.0).cos(), 0.0);
    let s = Complex64::new((angle / 2.0).sin(), 0.0);
    Array2::from_shape_vec((2, 2), vec![c, -s, s, c]).unwrap()
}

fn rotation_z(angle: f64) -> Array2<Complex64> {
    let o = Complex64::new(0.0, 0.0);
    let em = Complex64::from_polar(1.0, -angle / 2.0);
    let ep = Complex64::from_polar(1.0, angle / 2.0);
    Array2::from_shape_vec((2, 2), vec![em, o, o, ep]).unwrap()
}

/// Embed a single-qubit unitary at `target` (qubit 0 = leftmost factor).
fn embed_single(u: Array2<Complex64>, target: usize, n: QubitCount) -> Array2<Complex64> {
    let left = Array2::eye(1 << target);
    let right = Array2::eye(1 << (n.get() - 1 - target));
    kron(&kron(&left, &u), &right)
}

fn dagger(m: &Array2<Complex64>) -> Array2<Complex64> {
    m.t().mapv(|z| z.conj())
}

/// An n-qubit density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n: QubitCount,
    mat: Array2<Complex64>,
}

impl DensityMatrix {
    /// |0..0><0..0|.
    pub fn pure_zero(n: QubitCount) -> Self {
        let dim = n.dim();
        let mut mat = Array2::zeros((dim, dim));
        mat[(0, 0)] = Complex64::new(1.0, 0.0);
        Self { n, mat }
    }

    /// Pure state from a normalized amplitude vector.
    pub fn from_amplitudes(n: QubitCount, amps: &[Complex64]) -> Result<Self> {
        let dim = n.dim();
        if amps.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "expected {dim} amplitudes, got {}",
                amps.len()
            )));
        }
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > TRACE_TOL {
            return Err(Error::DimensionMismatch(format!(
                "amplitudes not normalized (norm^2 = {norm})"
            )));
        }
        let mut mat = Array2::zeros((dim, dim));
        for i in 0..dim {
            for j in 0..dim {
                mat[(i, j)] = amps[i] * amps[j].conj();
            }
        }
        Ok(Self { n, mat })
    }

    /// I / 2^n.
    pub fn maximally_mixed(n: QubitCount) -> Self {
        let dim = n.dim();
        let mat = Array2::eye(dim).mapv(|z: Complex64| z / dim as f64);
        Self { n, mat }
    }

    pub fn qubits(&self) -> QubitCount {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.n.dim()
    }

    pub fn matrix(&self) -> &Array2<Complex64> {
        &self.mat
    }

    pub fn trace(&self) -> Complex64 {
        self.mat.diag().sum()
    }

    /// tr(rho^2); 1 for pure states.
    pub fn purity(&self) -> f64 {
        self.mat.dot(&self.mat).diag().sum().re
    }

    /// Check Hermiticity and unit trace against the module tolerances.
    pub fn validate(&self) -> Result<()> {
        let dim = self.dim();
        for i in 0..dim {
            for j in 0..dim {
                let d = (self.mat[(i, j)] - self.mat[(j, i)].conj()).norm();
                if d > HERMITICITY_TOL {
                    return Err(Error::DimensionMismatch(format!(
                        "not Hermitian at ({i},{j}): deviation {d:e}"
                    )));
                }
            }
        }
        let t = self.trace();
        if (t.re - 1.0).abs() > TRACE_TOL || t.im.abs() > TRACE_TOL {
            return Err(Error::DimensionMismatch(format!("trace {t} not 1")));
        }
        Ok(())
    }

    /// Frobenius distance to another state.
    pub fn frobenius_distance(&self, other: &DensityMatrix) -> f64 {
        (&self.mat - &other.mat)
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    fn conjugate_by(&self, u: &Array2<Complex64>) -> DensityMatrix {
        DensityMatrix { n: self.n, mat: u.dot(&self.mat).dot(&dagger(u)) }
    }
}

/// Apply a gate by unitary conjugation: U rho U^dag.
pub fn apply_gate(state: &DensityMatrix, gate: &Gate) -> Result<DensityMatrix> {
    let u = gate.unitary(state.qubits())?;
    Ok(state.conjugate_by(&u))
}

/// tr(rho P), asserted real to within [`REALNESS_TOL`].
pub fn expectation(state: &DensityMatrix, observable: &PauliString) -> Result<f64> {
    if observable.qubits() != state.qubits() {
        return Err(Error::DimensionMismatch(format!(
            "observable on {} qubits, state on {}",
            observable.qubits().get(),
            state.qubits().get()
        )));
    }
    let p = observable.matrix();
    let val: Complex64 = state.matrix().dot(&p).diag().sum();
    if val.im.abs() > REALNESS_TOL {
        return Err(Error::NonRealExpectation(val.im));
    }
    Ok(val.re)
}

/// Global depolarizing channel: survival * rho + (1 - survival) * I/2^n.
///
/// Multiplies every traceless-observable expectation by exactly `survival`.
pub fn apply_global_depolarizing(state: &DensityMatrix, survival: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&survival) || !survival.is_finite() {
        return Err(Error::SurvivalOutOfRange(survival));
    }
    let dim = state.dim();
    let mixed = (1.0 - survival) / dim as f64;
    let mut mat = state.matrix().mapv(|z| z * survival);
    for i in 0..dim {
        mat[(i, i)] += Complex64::new(mixed, 0.0);
    }
    Ok(DensityMatrix { n: state.n, mat })
}

/// Basis-change unitary mapping the measurement eigenbasis of `letter` to the
/// computational basis: H for X, H S^dag for Y (apply S^dag then H), identity
/// for Z and I.
fn basis_change(letter: PauliLetter) -> Array2<Complex64> {
    let h = {
        let r = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Array2::from_shape_vec((2, 2), vec![r, r, r, -r]).unwrap()
    };
    match letter {
        PauliLetter::I | PauliLetter::Z => Array2::eye(2),
        PauliLetter::X => h,
        PauliLetter::Y => {
            let o = Complex64::new(0.0, 0.0);
            let l = Complex64::new(1.0, 0.0);
            let mi = Complex64::new(0.0, -1.0);
            let s_dag = Array2::from_shape_vec((2, 2), vec![l, o, o, mi]).unwrap();
            h.dot(&s_dag)
        }
    }
}

/// Bitstring probabilities of `state` after rotating every qubit of
/// `observable` into the computational basis.
fn rotated_probabilities(state: &DensityMatrix, observable: &PauliString) -> Result<Vec<f64>> {
    if observable.qubits() != state.qubits() {
        return Err(Error::DimensionMismatch(format!(
            "observable on {} qubits, state on {}",
            observable.qubits().get(),
            state.qubits().get()
        )));
    }
    let n = state.qubits();
    let mut u = Array2::from_shape_vec((1, 1), vec![Complex64::new(1.0, 0.0)]).unwrap();
    for &letter in observable.letters() {
        u = kron(&u, &basis_change(letter));
    }
    let rotated = state.conjugate_by(&u);
    let mut probs: Vec<f64> = rotated.matrix().diag().iter().map(|z| z.re.max(0.0)).collect();
    let total: f64 = probs.iter().sum();
    debug_assert!((total - 1.0).abs() < 1e-9, "probabilities sum to {total}");
    for p in &mut probs {
        *p /= total;
    }
    debug_assert_eq!(probs.len(), n.dim());
    Ok(probs)
}

fn parity_of(bitstring: usize, observable: &PauliString) -> Outcome {
    let n = observable.qubits().get();
    let mut sign = observable.sign();
    for (k, &letter) in observable.letters().iter().enumerate() {
        if letter != PauliLetter::I && (bitstring >> (n - 1 - k)) & 1 == 1 {
            sign = -sign;
        }
    }
    Outcome::from_sign(sign).expect("sign is +/-1")
}

fn sample_index(probs: &[f64], rng: &mut ChaCha8Rng) -> usize {
    let r: f64 = rng.gen();
    let mut acc = 0.0;
    for (i, &p) in probs.iter().enumerate() {
        acc += p;
        if r < acc {
            return i;
        }
    }
    probs.len() - 1
}

/// Sample one +/-1 parity outcome of measuring `observable` on `state`.
///
/// P(+1) = (1 + tr(rho P)) / 2. Non-identity qubits are rotated into the
/// computational basis, a bitstring is sampled, and the product of per-qubit
/// eigenvalues over non-identity positions (times the string's sign) is
/// returned.
pub fn measure_parity(
    state: &DensityMatrix,
    observable: &PauliString,
    rng: &mut ChaCha8Rng,
) -> Result<Outcome> {
    let probs = rotated_probabilities(state, observable)?;
    Ok(parity_of(sample_index(&probs, rng), observable))
}

/// Batch version of [`measure_parity`]: the basis change is done once, then
/// `shots` bitstrings are sampled from the same distribution.
pub fn sample_parities(
    state: &DensityMatrix,
    observable: &PauliString,
    shots: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Outcome>> {
    let probs = rotated_probabilities(state, observable)?;
    Ok((0..shots)
        .map(|_| parity_of(sample_index(&probs, rng), observable))
        .collect())
}
