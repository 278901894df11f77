//! Exact small-dimension complex linear algebra for pure and mixed quantum
//! states.
//!
//! Validation happens at construction: every [`StateVector`],
//! [`DensityMatrix`] and [`PositiveOperator`] in circulation has already
//! passed its invariants (normalization, Hermiticity, positive
//! semi-definiteness, trace/weight agreement). Operations therefore accept
//! values, not raw matrices, and raw-matrix entry points reject malformed
//! input instead of propagating it.
//!
//! Tensor-product ordering: the first operand is the leftmost (most
//! significant) factor throughout. Joint states in the attack analysis put
//! the eavesdropper's probe first and the transmitted particle second; only
//! this ordering reproduces the component layout of the probe interaction.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::{Error, Result, TOL_ALGEBRAIC};

/// Weights smaller than this are treated as a zero-probability condition.
const WEIGHT_FLOOR: f64 = 1e-14;

fn hermitian_deviation(m: &DMatrix<Complex64>) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..m.nrows() {
        for j in i..m.ncols() {
            let d = (m[(i, j)] - m[(j, i)].conj()).norm();
            if d > worst {
                worst = d;
            }
        }
    }
    worst
}

fn unitarity_deviation(m: &DMatrix<Complex64>) -> f64 {
    let gram = m.adjoint() * m;
    let mut worst = 0.0f64;
    for i in 0..gram.nrows() {
        for j in 0..gram.ncols() {
            let expected = if i == j { Complex64::ONE } else { Complex64::ZERO };
            let d = (gram[(i, j)] - expected).norm();
            if d > worst {
                worst = d;
            }
        }
    }
    worst
}

/// Eigenvalues of a Hermitian matrix, ascending (nalgebra order unspecified,
/// so sort here).
fn hermitian_eigenvalues(m: &DMatrix<Complex64>) -> Vec<f64> {
    let sym = (m + m.adjoint()).scale(0.5);
    let mut ev: Vec<f64> = sym.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    ev
}

/// A pure state: complex amplitude vector of unit norm.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: DVector<Complex64>,
}

impl StateVector {
    /// Builds a state vector, rejecting non-normalized input.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let v = DVector::from_vec(amplitudes);
        let norm_sq = v.iter().map(|a| a.norm_sqr()).sum::<f64>();
        if (norm_sq - 1.0).abs() > TOL_ALGEBRAIC {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(Self { amplitudes: v })
    }

    /// Builds a state vector from real amplitudes.
    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::new(amplitudes.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    /// The qubit ket `(cos angle, sin angle)`.
    pub fn real_qubit(angle: f64) -> Self {
        Self::from_real(&[angle.cos(), angle.sin()]).expect("unit by construction")
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn amplitude(&self, i: usize) -> Complex64 {
        self.amplitudes[i]
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    /// Kronecker product with `self` as the leftmost (most significant)
    /// factor.
    pub fn tensor(&self, other: &Self) -> Self {
        Self {
            amplitudes: self.amplitudes.kronecker(&other.amplitudes).column(0).into_owned(),
        }
    }

    /// The rank-one projector `|self><self|` as a normalized density matrix.
    pub fn projector(&self) -> DensityMatrix {
        let m = &self.amplitudes * self.amplitudes.adjoint();
        DensityMatrix::new(m).expect("projector of a unit vector is a valid state")
    }
}

/// A mixed (or pure) quantum state with an explicit weight.
///
/// `weight` is the trace: 1 for normalized states, in (0, 1) for
/// sub-normalized states produced by conditioning on classical data. Keeping
/// the weight first-class lets conditioned reduced states carry their
/// probability mass; normalization is a separate, explicit step.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: DMatrix<Complex64>,
    weight: f64,
}

impl DensityMatrix {
    /// Validates and wraps a raw matrix. The weight is read off the trace.
    ///
    /// Rejects non-square, non-Hermitian (beyond 1e-12), non-PSD (eigenvalue
    /// below -1e-12) matrices and traces outside (0, 1].
    pub fn new(entries: DMatrix<Complex64>) -> Result<Self> {
        if entries.nrows() != entries.ncols() || entries.nrows() == 0 {
            return Err(Error::DimensionMismatch(format!(
                "density matrix must be square and non-empty, got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        let dev = hermitian_deviation(&entries);
        if dev > TOL_ALGEBRAIC {
            return Err(Error::NotHermitian { deviation: dev });
        }
        let trace = entries.trace();
        if trace.im.abs() > TOL_ALGEBRAIC {
            return Err(Error::NotHermitian { deviation: trace.im.abs() });
        }
        let weight = trace.re;
        if weight <= WEIGHT_FLOOR || weight > 1.0 + TOL_ALGEBRAIC {
            return Err(Error::InvalidWeight(weight));
        }
        let min_ev = hermitian_eigenvalues(&entries)[0];
        if min_ev < -TOL_ALGEBRAIC {
            return Err(Error::NotPositive { min_eigenvalue: min_ev });
        }
        Ok(Self { entries, weight })
    }

    /// The completely mixed state `I/dim`.
    pub fn completely_mixed(dim: usize) -> Self {
        let m = DMatrix::from_diagonal_element(dim, dim, Complex64::new(1.0 / dim as f64, 0.0));
        Self::new(m).expect("I/dim is a valid state")
    }

    /// Weighted sum of states. The weights must be non-negative and sum to at
    /// most 1 (within tolerance); they multiply each part's own weight.
    pub fn mix(parts: &[(f64, &DensityMatrix)]) -> Result<Self> {
        let dim = parts
            .first()
            .ok_or_else(|| Error::DimensionMismatch("empty mixture".into()))?
            .1
            .dim();
        let mut acc = DMatrix::<Complex64>::zeros(dim, dim);
        for (w, rho) in parts {
            if *w < 0.0 {
                return Err(Error::OutOfRange(format!("negative mixture weight {w}")));
            }
            if rho.dim() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "mixture parts of dim {} and {}",
                    dim,
                    rho.dim()
                )));
            }
            acc += rho.entries().scale(*w);
        }
        Self::new(acc)
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.entries[(i, j)]
    }

    /// The trace, equal to the declared weight.
    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn is_normalized(&self) -> bool {
        (self.weight - 1.0).abs() <= TOL_ALGEBRAIC
    }

    /// Rescales to unit trace.
    pub fn normalize(&self) -> DensityMatrix {
        Self::new(self.entries.scale(1.0 / self.weight)).expect("rescaling preserves validity")
    }

    /// `Tr(rho^2)` of the normalized state; 1 iff pure.
    pub fn purity(&self) -> f64 {
        let n = self.entries.scale(1.0 / self.weight);
        (&n * &n).trace().re
    }

    /// Kronecker product with `self` as the leftmost factor; weights multiply.
    pub fn tensor(&self, other: &Self) -> Self {
        Self::new(self.entries.kronecker(&other.entries)).expect("product of states is a state")
    }

    /// `<psi|rho_normalized|psi>`: fidelity of the normalized state with a
    /// pure target.
    pub fn fidelity_pure(&self, target: &StateVector) -> f64 {
        let v = target.amplitudes();
        ((v.adjoint() * &self.entries * v)[(0, 0)].re / self.weight).clamp(0.0, 1.0)
    }

    /// Reduced state of the kept factor of a bipartite system; the weight is
    /// preserved. `dims` are the factor dimensions, leftmost first.
    pub fn partial_trace(&self, dims: (usize, usize), keep: Subsystem) -> Result<DensityMatrix> {
        let (da, db) = dims;
        if da * db != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "cannot factor dim {} as {}x{}",
                self.dim(),
                da,
                db
            )));
        }
        let kept = match keep {
            Subsystem::First => da,
            Subsystem::Second => db,
        };
        let mut out = DMatrix::<Complex64>::zeros(kept, kept);
        match keep {
            Subsystem::First => {
                for n in 0..da {
                    for m in 0..da {
                        let mut acc = Complex64::ZERO;
                        for mu in 0..db {
                            acc += self.entries[(n * db + mu, m * db + mu)];
                        }
                        out[(n, m)] = acc;
                    }
                }
            }
            Subsystem::Second => {
                for mu in 0..db {
                    for nu in 0..db {
                        let mut acc = Complex64::ZERO;
                        for n in 0..da {
                            acc += self.entries[(n * db + mu, n * db + nu)];
                        }
                        out[(mu, nu)] = acc;
                    }
                }
            }
        }
        DensityMatrix::new(out)
    }

    /// Information-dependent reduced state: traces out one factor with a
    /// positive operator inserted, `Tr_traced[rho (I (x) A)]` (or `A (x) I`
    /// when the first factor is traced out).
    ///
    /// The returned state is weighted by the probability mass of the
    /// condition. With `condition = I` this is exactly `partial_trace`.
    pub fn conditioned_reduced_state(
        &self,
        dims: (usize, usize),
        keep: Subsystem,
        condition: &PositiveOperator,
    ) -> Result<DensityMatrix> {
        let (da, db) = dims;
        if da * db != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "cannot factor dim {} as {}x{}",
                self.dim(),
                da,
                db
            )));
        }
        let traced = match keep {
            Subsystem::First => db,
            Subsystem::Second => da,
        };
        if condition.dim() != traced {
            return Err(Error::DimensionMismatch(format!(
                "condition acts on dim {} but traced factor has dim {}",
                condition.dim(),
                traced
            )));
        }
        let a = condition.entries();
        let kept = match keep {
            Subsystem::First => da,
            Subsystem::Second => db,
        };
        let mut out = DMatrix::<Complex64>::zeros(kept, kept);
        match keep {
            Subsystem::First => {
                // rho_kept[n, m] = sum_{mu, lam} rho[(n, mu), (m, lam)] A[lam, mu]
                for n in 0..da {
                    for m in 0..da {
                        let mut acc = Complex64::ZERO;
                        for mu in 0..db {
                            for lam in 0..db {
                                acc += self.entries[(n * db + mu, m * db + lam)] * a[(lam, mu)];
                            }
                        }
                        out[(n, m)] = acc;
                    }
                }
            }
            Subsystem::Second => {
                // rho_kept[mu, nu] = sum_{n, k} rho[(n, mu), (k, nu)] A[k, n]
                for mu in 0..db {
                    for nu in 0..db {
                        let mut acc = Complex64::ZERO;
                        for n in 0..da {
                            for k in 0..da {
                                acc += self.entries[(n * db + mu, k * db + nu)] * a[(k, n)];
                            }
                        }
                        out[(mu, nu)] = acc;
                    }
                }
            }
        }
        DensityMatrix::new(out)
    }

    /// Re-runs the full construction checks; used by consistency suites.
    pub fn validate(&self) -> Result<()> {
        let rebuilt = Self::new(self.entries.clone())?;
        if (rebuilt.weight - self.weight).abs() > TOL_ALGEBRAIC {
            return Err(Error::TraceMismatch { trace: rebuilt.weight, weight: self.weight });
        }
        Ok(())
    }
}

/// Which factor of a bipartite state an operation keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

/// A Hermitian positive semi-definite operator with no trace constraint.
///
/// Used as the inserted condition in information-dependent reduced states.
#[derive(Debug, Clone, PartialEq)]
pub struct PositiveOperator {
    entries: DMatrix<Complex64>,
}

impl PositiveOperator {
    pub fn new(entries: DMatrix<Complex64>) -> Result<Self> {
        if entries.nrows() != entries.ncols() || entries.nrows() == 0 {
            return Err(Error::DimensionMismatch(format!(
                "operator must be square and non-empty, got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        let dev = hermitian_deviation(&entries);
        if dev > TOL_ALGEBRAIC {
            return Err(Error::NotHermitian { deviation: dev });
        }
        let min_ev = hermitian_eigenvalues(&entries)[0];
        if min_ev < -TOL_ALGEBRAIC {
            return Err(Error::NotPositive { min_eigenvalue: min_ev });
        }
        Ok(Self { entries })
    }

    pub fn identity(dim: usize) -> Self {
        Self { entries: DMatrix::identity(dim, dim) }
    }

    /// `|psi><psi|`.
    pub fn projector(psi: &StateVector) -> Self {
        let v = psi.amplitudes();
        Self { entries: v * v.adjoint() }
    }

    /// `sum_i w_i |psi_i><psi_i|` with non-negative weights.
    pub fn projector_mix(parts: &[(f64, &StateVector)]) -> Result<Self> {
        let dim = parts
            .first()
            .ok_or_else(|| Error::DimensionMismatch("empty projector mix".into()))?
            .1
            .dim();
        let mut acc = DMatrix::<Complex64>::zeros(dim, dim);
        for (w, psi) in parts {
            if *w < 0.0 {
                return Err(Error::OutOfRange(format!("negative projector weight {w}")));
            }
            if psi.dim() != dim {
                return Err(Error::DimensionMismatch("projector mix dims differ".into()));
            }
            acc += (psi.amplitudes() * psi.amplitudes().adjoint()).scale(*w);
        }
        Self::new(acc)
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }
}

/// A qubit state as a real 3-vector; pure states sit on the unit sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    /// Builds a Bloch vector, rejecting norms beyond 1 + 1e-12.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let v = Self { x, y, z };
        if v.norm_sqr() > 1.0 + TOL_ALGEBRAIC {
            return Err(Error::BlochNormExceedsOne(v.norm()));
        }
        Ok(v)
    }

    pub fn zero() -> Self {
        Self { x: 0.0, y: 0.0, z: 0.0 }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Reads `(x, y, z)` off a normalized qubit state:
    /// `x = 2 Re rho_10`, `y = 2 Im rho_10`, `z = rho_00 - rho_11`.
    pub fn from_density(rho: &DensityMatrix) -> Result<Self> {
        if rho.dim() != 2 {
            return Err(Error::DimensionMismatch(format!(
                "Bloch conversion needs dim 2, got {}",
                rho.dim()
            )));
        }
        if !rho.is_normalized() {
            return Err(Error::InvalidWeight(rho.weight()));
        }
        let r10 = rho.entry(1, 0);
        Self::new(2.0 * r10.re, 2.0 * r10.im, rho.entry(0, 0).re - rho.entry(1, 1).re)
    }

    /// `rho = (I + r . sigma)/2`; inverse of [`BlochVector::from_density`].
    pub fn to_density(&self) -> DensityMatrix {
        let m = DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(0.5 * (1.0 + self.z), 0.0),
                Complex64::new(0.5 * self.x, -0.5 * self.y),
                Complex64::new(0.5 * self.x, 0.5 * self.y),
                Complex64::new(0.5 * (1.0 - self.z), 0.0),
            ],
        );
        DensityMatrix::new(m).expect("|r| <= 1 guarantees a valid state")
    }
}

/// Spectral decomposition of a Hermitian matrix.
///
/// Eigenvalues are sorted descending; `eigenvectors` holds the matching
/// orthonormal eigenvectors as columns. Within a degenerate cluster the
/// individual vectors are an arbitrary orthonormal choice, so compare
/// spectral projectors, not vectors, across degeneracies.
#[derive(Debug, Clone)]
pub struct Eigensystem {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: DMatrix<Complex64>,
}

impl Eigensystem {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `sum_i lambda_i v_i v_i^dag`.
    pub fn reconstruct(&self) -> DMatrix<Complex64> {
        let d = self.dim();
        let mut acc = DMatrix::<Complex64>::zeros(d, d);
        for (i, &lam) in self.eigenvalues.iter().enumerate() {
            let v = self.eigenvectors.column(i);
            acc += (v * v.adjoint()).scale(lam);
        }
        acc
    }
}

/// Full eigendecomposition of a Hermitian matrix, eigenvalues descending.
///
/// Rejects matrices whose Hermitian deviation exceeds 1e-12; the
/// decomposition itself runs on the Hermitized half-sum so the result is
/// exactly real.
pub fn hermitian_eigensystem(h: &DMatrix<Complex64>) -> Result<Eigensystem> {
    if h.nrows() != h.ncols() || h.nrows() == 0 {
        return Err(Error::DimensionMismatch(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            h.nrows(),
            h.ncols()
        )));
    }
    let dev = hermitian_deviation(h);
    if dev > TOL_ALGEBRAIC {
        return Err(Error::NotHermitian { deviation: dev });
    }
    let sym = (h + h.adjoint()).scale(0.5);
    let eig = sym.symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let columns: Vec<_> = order.iter().map(|&i| eig.eigenvectors.column(i).into_owned()).collect();
    let eigenvectors = DMatrix::from_columns(&columns);
    Ok(Eigensystem { eigenvalues, eigenvectors })
}

/// `-sum_i lambda_i log2 lambda_i` of a normalized state, in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    if !rho.is_normalized() {
        return Err(Error::InvalidWeight(rho.weight()));
    }
    let mut s = 0.0;
    for lam in hermitian_eigenvalues(rho.entries()) {
        if lam > 0.0 {
            s -= lam * lam.log2();
        }
    }
    Ok(s.max(0.0))
}

/// Applies a unitary to a pure state, rejecting non-unitary matrices
/// (max `|U^dag U - I|` entry above 1e-12).
pub fn apply_unitary(u: &DMatrix<Complex64>, psi: &StateVector) -> Result<StateVector> {
    if u.nrows() != u.ncols() || u.ncols() != psi.dim() {
        return Err(Error::DimensionMismatch(format!(
            "unitary {}x{} applied to dim-{} state",
            u.nrows(),
            u.ncols(),
            psi.dim()
        )));
    }
    let dev = unitarity_deviation(u);
    if dev > TOL_ALGEBRAIC {
        return Err(Error::NotUnitary { deviation: dev });
    }
    let out = u * psi.amplitudes();
    StateVector::new(out.iter().copied().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn tensor_of_basis_states() {
        let e0 = StateVector::from_real(&[1.0, 0.0]).unwrap();
        let e1 = StateVector::from_real(&[0.0, 1.0]).unwrap();
        let t = e0.tensor(&e1);
        let amps: Vec<f64> = t.amplitudes().iter().map(|a| a.re).collect();
        assert_eq!(amps, vec![0.0, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn tensor_probe_with_alice_ket_is_eve_leftmost() {
        let theta = 0.3;
        let probe = StateVector::from_real(&[1.0, 0.0]).unwrap();
        let alice = StateVector::real_qubit(theta);
        let joint = probe.tensor(&alice);
        assert_abs_diff_eq!(joint.amplitude(0).re, theta.cos(), epsilon = 1e-15);
        assert_abs_diff_eq!(joint.amplitude(1).re, theta.sin(), epsilon = 1e-15);
        assert_abs_diff_eq!(joint.amplitude(2).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(joint.amplitude(3).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn tensor_then_partial_trace_round_trip() {
        let rho = StateVector::real_qubit(0.7).projector();
        let joint = rho.tensor(&DensityMatrix::completely_mixed(2));
        let back = joint.partial_trace((2, 2), Subsystem::First).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_abs_diff_eq!(
                    (back.entry(i, j) - rho.entry(i, j)).norm(),
                    0.0,
                    epsilon = 1e-14
                );
            }
        }
    }

    #[test]
    fn bell_state_reduces_to_completely_mixed() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let bell = StateVector::from_real(&[s, 0.0, 0.0, s]).unwrap().projector();
        for keep in [Subsystem::First, Subsystem::Second] {
            let r = bell.partial_trace((2, 2), keep).unwrap();
            assert_abs_diff_eq!(r.entry(0, 0).re, 0.5, epsilon = 1e-14);
            assert_abs_diff_eq!(r.entry(1, 1).re, 0.5, epsilon = 1e-14);
            assert_abs_diff_eq!(r.entry(0, 1).norm(), 0.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn partial_trace_rejects_bad_factorization() {
        let rho = DensityMatrix::completely_mixed(4);
        assert!(rho.partial_trace((3, 2), Subsystem::First).is_err());
    }

    #[test]
    fn conditioned_with_identity_is_partial_trace() {
        // entangled-ish mixed state on 2x2
        let a = StateVector::from_real(&[0.6, 0.0, 0.0, 0.8]).unwrap().projector();
        let b = StateVector::from_real(&[0.0, 1.0, 0.0, 0.0]).unwrap().projector();
        let rho = DensityMatrix::mix(&[(0.5, &a), (0.5, &b)]).unwrap();
        let id = PositiveOperator::identity(2);
        for keep in [Subsystem::First, Subsystem::Second] {
            let plain = rho.partial_trace((2, 2), keep).unwrap();
            let cond = rho.conditioned_reduced_state((2, 2), keep, &id).unwrap();
            for i in 0..2 {
                for j in 0..2 {
                    assert_abs_diff_eq!(
                        (plain.entry(i, j) - cond.entry(i, j)).norm(),
                        0.0,
                        epsilon = 1e-14
                    );
                }
            }
        }
    }

    #[test]
    fn singlet_conditioned_on_bob_projector() {
        // (|01> - |10>)/sqrt(2), Eve (x) Bob
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let singlet = StateVector::from_real(&[0.0, s, -s, 0.0]).unwrap().projector();
        let eta = std::f64::consts::FRAC_PI_6;
        let bob = StateVector::real_qubit(eta);
        let cond = singlet
            .conditioned_reduced_state((2, 2), Subsystem::First, &PositiveOperator::projector(&bob))
            .unwrap();
        assert_abs_diff_eq!(cond.weight(), 0.5, epsilon = 1e-12);
        let target = StateVector::from_real(&[eta.sin(), -eta.cos()]).unwrap();
        assert!(cond.fidelity_pure(&target) >= 1.0 - 1e-12);
        // spec spells out the components at eta = pi/6
        let r = cond.normalize();
        let b = BlochVector::from_density(&r).unwrap();
        let expect = StateVector::from_real(&[0.5, -0.866_025_403_784_438_6]).unwrap();
        assert!(r.fidelity_pure(&expect) >= 1.0 - 1e-12);
        assert!(b.norm() > 1.0 - 1e-12);
    }

    #[test]
    fn conditioned_rejects_wrong_dims() {
        let rho = DensityMatrix::completely_mixed(4);
        let id3 = PositiveOperator::identity(3);
        assert!(rho.conditioned_reduced_state((2, 2), Subsystem::First, &id3).is_err());
    }

    #[test]
    fn positive_operator_rejects_negative() {
        let m = DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-0.5, 0.0)]);
        assert!(matches!(PositiveOperator::new(m), Err(Error::NotPositive { .. })));
    }

    #[test]
    fn bloch_of_completely_mixed_is_origin() {
        let b = BlochVector::from_density(&DensityMatrix::completely_mixed(2)).unwrap();
        assert_abs_diff_eq!(b.norm(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn bloch_of_spin_up_is_north_pole() {
        let up = StateVector::from_real(&[1.0, 0.0]).unwrap().projector();
        let b = BlochVector::from_density(&up).unwrap();
        assert_abs_diff_eq!(b.x, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(b.y, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(b.z, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn bloch_round_trip_on_tilted_pure_state() {
        let alpha = 0.4;
        let b = BlochVector::new((2.0 * alpha).sin(), 0.0, (2.0 * alpha).cos()).unwrap();
        let rho = b.to_density();
        let ket = StateVector::real_qubit(alpha);
        assert!(rho.fidelity_pure(&ket) >= 1.0 - 1e-12);
        let back = BlochVector::from_density(&rho).unwrap();
        assert_abs_diff_eq!(back.x, b.x, epsilon = 1e-12);
        assert_abs_diff_eq!(back.y, b.y, epsilon = 1e-12);
        assert_abs_diff_eq!(back.z, b.z, epsilon = 1e-12);
    }

    #[test]
    fn south_pole_is_down_ket() {
        let rho = BlochVector::new(0.0, 0.0, -1.0).unwrap().to_density();
        let down = StateVector::from_real(&[0.0, 1.0]).unwrap();
        assert!(rho.fidelity_pure(&down) >= 1.0 - 1e-12);
    }

    #[test]
    fn bloch_rejects_long_vectors() {
        assert!(BlochVector::new(1.0, 0.0, 0.1).is_err());
    }

    #[test]
    fn bloch_requires_dim_two() {
        let rho = DensityMatrix::completely_mixed(4);
        assert!(BlochVector::from_density(&rho).is_err());
    }

    #[test]
    fn eigensystem_of_diagonal_is_sorted() {
        let m = DMatrix::from_row_slice(2, 2, &[c(0.3, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.9, 0.0)]);
        let e = hermitian_eigensystem(&m).unwrap();
        assert_abs_diff_eq!(e.eigenvalues[0], 0.9, epsilon = 1e-14);
        assert_abs_diff_eq!(e.eigenvalues[1], 0.3, epsilon = 1e-14);
    }

    #[test]
    fn eigensystem_of_pauli_x() {
        let m = DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        let e = hermitian_eigensystem(&m).unwrap();
        assert_abs_diff_eq!(e.eigenvalues[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e.eigenvalues[1], -1.0, epsilon = 1e-12);
        // eigenvector for +1 is (1, 1)/sqrt(2) up to phase
        let v = e.eigenvectors.column(0);
        assert_abs_diff_eq!((v[0].norm() - std::f64::consts::FRAC_1_SQRT_2).abs(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!((v[0] - v[1]).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn eigensystem_rejects_non_hermitian() {
        let m = DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(0.5, 0.0), c(0.0, 0.0)]);
        assert!(matches!(hermitian_eigensystem(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn entropy_of_pure_state_is_zero() {
        let rho = StateVector::real_qubit(0.3).projector();
        assert_abs_diff_eq!(von_neumann_entropy(&rho).unwrap(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn entropy_of_completely_mixed_qubit_is_one() {
        let rho = DensityMatrix::completely_mixed(2);
        assert_abs_diff_eq!(von_neumann_entropy(&rho).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn entropy_of_two_pure_state_mixture_matches_binary_entropy() {
        // eigenvalues of (Phi_0 + Phi_1)/2 are (1 +- |cos 2a|)/2
        let alpha = 0.1f64;
        let rho = DensityMatrix::mix(&[
            (0.5, &StateVector::real_qubit(alpha).projector()),
            (0.5, &StateVector::real_qubit(-alpha).projector()),
        ])
        .unwrap();
        let p = (1.0 + (2.0 * alpha).cos()) / 2.0;
        let h = -(p * p.log2() + (1.0 - p) * (1.0 - p).log2());
        assert_abs_diff_eq!(von_neumann_entropy(&rho).unwrap(), h, epsilon = 1e-12);
    }

    #[test]
    fn entropy_requires_normalized_state() {
        let rho = DensityMatrix::new(DMatrix::from_diagonal_element(2, 2, c(0.25, 0.0))).unwrap();
        assert!(von_neumann_entropy(&rho).is_err());
    }

    #[test]
    fn apply_identity_preserves_state() {
        let psi = StateVector::real_qubit(0.3);
        let out = apply_unitary(&DMatrix::identity(2, 2), &psi).unwrap();
        assert_abs_diff_eq!((out.amplitude(0) - psi.amplitude(0)).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn apply_unitary_rejects_non_unitary() {
        let m = DMatrix::from_diagonal_element(2, 2, c(0.9, 0.0));
        assert!(matches!(
            apply_unitary(&m, &StateVector::real_qubit(0.0)),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn state_vector_rejects_unnormalized() {
        assert!(StateVector::from_real(&[1.0, 1.0]).is_err());
    }

    #[test]
    fn density_matrix_rejects_overweight() {
        let m = DMatrix::from_diagonal_element(2, 2, c(0.6, 0.0));
        assert!(matches!(DensityMatrix::new(m), Err(Error::InvalidWeight(_))));
    }

    #[test]
    fn weighted_state_normalizes() {
        let m = DMatrix::from_diagonal_element(2, 2, c(0.25, 0.0));
        let rho = DensityMatrix::new(m).unwrap();
        assert_abs_diff_eq!(rho.weight(), 0.5, epsilon = 1e-15);
        assert!(rho.normalize().is_normalized());
    }
}
