//! Logical circuit representation of the layered model circuits.
//!
//! Each [`Layer`] first permutes the qubits, then applies its two-qubit
//! gates; gate pairs address post-permutation positions. Permutations are
//! kept explicitly even where hardware could realize them by relabeling,
//! [`crate::routing`] decides how they become physical.

use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::permutation;

/// Tolerance on `max |U†U − I|` and `|det U − 1|`.
pub const UNITARY_TOLERANCE: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A 4×4 complex matrix acting on a qubit pair.
///
/// For a gate on pair `(a, b)` the basis index of the matrix is
/// `2·bit(a) + bit(b)`, i.e. the first qubit of the pair is the high bit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Unitary4(pub [[Complex64; 4]; 4]);

impl Unitary4 {
    pub fn identity() -> Self {
        let mut m = [[ZERO; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = ONE;
        }
        Unitary4(m)
    }

    pub fn swap() -> Self {
        let mut m = [[ZERO; 4]; 4];
        m[0][0] = ONE;
        m[1][2] = ONE;
        m[2][1] = ONE;
        m[3][3] = ONE;
        Unitary4(m)
    }

    pub fn entries(&self) -> &[[Complex64; 4]; 4] {
        &self.0
    }

    pub fn adjoint(&self) -> Self {
        let mut m = [[ZERO; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = self.0[j][i].conj();
            }
        }
        Unitary4(m)
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        let mut m = [[ZERO; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = (0..4).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        Unitary4(m)
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let mut m = self.0;
        for entry in m.iter_mut().flatten() {
            *entry *= factor;
        }
        Unitary4(m)
    }

    /// `max_ij |(U†U − I)_ij|`.
    pub fn unitarity_deviation(&self) -> f64 {
        let product = self.adjoint().matmul(self);
        let mut worst = 0.0_f64;
        for (i, row) in product.0.iter().enumerate() {
            for (j, &entry) in row.iter().enumerate() {
                let target = if i == j { ONE } else { ZERO };
                worst = worst.max((entry - target).norm());
            }
        }
        worst
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn determinant(&self) -> Complex64 {
        let mut a = self.0;
        let mut det = ONE;
        for col in 0..4 {
            let pivot = (col..4)
                .max_by(|&x, &y| a[x][col].norm().total_cmp(&a[y][col].norm()))
                .unwrap_or(col);
            if a[pivot][col].norm() == 0.0 {
                return ZERO;
            }
            if pivot != col {
                a.swap(pivot, col);
                det = -det;
            }
            det *= a[col][col];
            for row in col + 1..4 {
                let factor = a[row][col] / a[col][col];
                for k in col..4 {
                    let sub = factor * a[col][k];
                    a[row][k] -= sub;
                }
            }
        }
        det
    }

    pub fn is_special_unitary(&self, tolerance: f64) -> bool {
        self.unitarity_deviation() <= tolerance && (self.determinant() - ONE).norm() <= tolerance
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Gate {
    pub pair: (usize, usize),
    pub unitary: Unitary4,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Layer {
    /// Destination table, see [`crate::permutation`].
    pub permutation: Vec<usize>,
    pub gates: Vec<Gate>,
}

impl Layer {
    /// Positions not touched by any gate in this layer.
    pub fn idle_positions(&self, width: usize) -> Vec<usize> {
        let mut busy = alloc::vec![false; width];
        for gate in &self.gates {
            for q in [gate.pair.0, gate.pair.1] {
                if q < width {
                    busy[q] = true;
                }
            }
        }
        (0..width).filter(|&q| !busy[q]).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    pub width: usize,
    pub layers: Vec<Layer>,
}

impl Circuit {
    pub fn new(width: usize, layers: Vec<Layer>) -> Self {
        Circuit { width, layers }
    }

    /// Builds the circuit and rejects it unless [`validate`] is clean.
    pub fn checked(width: usize, layers: Vec<Layer>) -> crate::Result<Self> {
        let circuit = Circuit { width, layers };
        let report = validate(&circuit);
        match report.violations.into_iter().next() {
            None => Ok(circuit),
            Some(v) => Err(crate::Error::Invariant(alloc::format!("{v}"))),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    pub fn gate_count(&self) -> usize {
        self.layers.iter().map(|l| l.gates.len()).sum()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    ZeroWidth,
    PermutationLength { layer: usize, expected: usize, found: usize },
    NotBijection { layer: usize },
    QubitOutOfRange { layer: usize, gate: usize, qubit: usize },
    SelfPair { layer: usize, gate: usize },
    OverlappingPairs { layer: usize, qubit: usize },
    GateCount { layer: usize, expected: usize, found: usize },
    NonUnitary { layer: usize, gate: usize, deviation: f64 },
    NotSpecial { layer: usize, gate: usize, deviation: f64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ZeroWidth => write!(f, "circuit width must be at least 1"),
            Violation::PermutationLength { layer, expected, found } => write!(
                f,
                "layer {layer}: permutation has {found} entries, expected {expected}"
            ),
            Violation::NotBijection { layer } => {
                write!(f, "layer {layer}: permutation is not a bijection")
            }
            Violation::QubitOutOfRange { layer, gate, qubit } => {
                write!(f, "layer {layer}, gate {gate}: qubit {qubit} out of range")
            }
            Violation::SelfPair { layer, gate } => {
                write!(f, "layer {layer}, gate {gate}: pair addresses one qubit twice")
            }
            Violation::OverlappingPairs { layer, qubit } => {
                write!(f, "layer {layer}: overlapping pairs on qubit {qubit}")
            }
            Violation::GateCount { layer, expected, found } => {
                write!(f, "layer {layer}: {found} gates, expected {expected}")
            }
            Violation::NonUnitary { layer, gate, deviation } => write!(
                f,
                "layer {layer}, gate {gate}: not unitary (max |U†U - I| = {deviation:e})"
            ),
            Violation::NotSpecial { layer, gate, deviation } => write!(
                f,
                "layer {layer}, gate {gate}: |det U - 1| = {deviation:e}"
            ),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Lists every invariant violation; an empty report means the circuit is valid.
pub fn validate(circuit: &Circuit) -> ValidationReport {
    let mut violations = Vec::new();
    let n = circuit.width;
    if n == 0 {
        violations.push(Violation::ZeroWidth);
    }
    for (li, layer) in circuit.layers.iter().enumerate() {
        if layer.permutation.len() != n {
            violations.push(Violation::PermutationLength {
                layer: li,
                expected: n,
                found: layer.permutation.len(),
            });
        } else if !permutation::is_bijection(&layer.permutation) {
            violations.push(Violation::NotBijection { layer: li });
        }

        if layer.gates.len() != n / 2 {
            violations.push(Violation::GateCount {
                layer: li,
                expected: n / 2,
                found: layer.gates.len(),
            });
        }

        let mut used = alloc::vec![false; n];
        for (gi, gate) in layer.gates.iter().enumerate() {
            let (a, b) = gate.pair;
            if a == b {
                violations.push(Violation::SelfPair { layer: li, gate: gi });
            }
            for q in [a, b] {
                if q >= n {
                    violations.push(Violation::QubitOutOfRange { layer: li, gate: gi, qubit: q });
                } else if used[q] && !(q == b && a == b) {
                    violations.push(Violation::OverlappingPairs { layer: li, qubit: q });
                } else {
                    used[q] = true;
                }
            }

            let deviation = gate.unitary.unitarity_deviation();
            if !(deviation <= UNITARY_TOLERANCE) {
                violations.push(Violation::NonUnitary { layer: li, gate: gi, deviation });
            } else {
                let det_dev = (gate.unitary.determinant() - ONE).norm();
                if !(det_dev <= UNITARY_TOLERANCE) {
                    violations.push(Violation::NotSpecial {
                        layer: li,
                        gate: gi,
                        deviation: det_dev,
                    });
                }
            }
        }
    }
    ValidationReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn identity_layer(n: usize, pairs: &[(usize, usize)]) -> Layer {
        Layer {
            permutation: permutation::identity(n),
            gates: pairs
                .iter()
                .map(|&pair| Gate { pair, unitary: Unitary4::identity() })
                .collect(),
        }
    }

    #[test]
    fn identity_circuit_is_valid() {
        let c = Circuit::new(2, vec![identity_layer(2, &[(0, 1)])]);
        assert!(validate(&c).is_valid());
        assert_eq!(c.depth(), 1);
    }

    #[test]
    fn repeated_entry_is_not_a_bijection() {
        let mut layer = identity_layer(2, &[(0, 1)]);
        layer.permutation = vec![0, 0];
        let report = validate(&Circuit::new(2, vec![layer]));
        assert_eq!(report.violations, vec![Violation::NotBijection { layer: 0 }]);
    }

    #[test]
    fn overlapping_pairs_are_reported() {
        let c = Circuit::new(4, vec![identity_layer(4, &[(0, 1), (1, 2)])]);
        let report = validate(&c);
        assert_eq!(
            report.violations,
            vec![Violation::OverlappingPairs { layer: 0, qubit: 1 }]
        );
    }

    #[test]
    fn wrong_gate_count_and_range() {
        let c = Circuit::new(5, vec![identity_layer(5, &[(0, 7)])]);
        let report = validate(&c);
        assert!(report
            .violations
            .contains(&Violation::GateCount { layer: 0, expected: 2, found: 1 }));
        assert!(report
            .violations
            .contains(&Violation::QubitOutOfRange { layer: 0, gate: 0, qubit: 7 }));
    }

    #[test]
    fn perturbed_unitary_is_rejected() {
        let mut u = Unitary4::identity();
        u.0[1][2] += Complex64::new(1e-3, 0.0);
        let mut layer = identity_layer(2, &[(0, 1)]);
        layer.gates[0].unitary = u;
        let report = validate(&Circuit::new(2, vec![layer]));
        assert!(matches!(report.violations[..], [Violation::NonUnitary { layer: 0, gate: 0, .. }]));
    }

    #[test]
    fn global_phase_breaks_special_unitarity() {
        let u = Unitary4::identity().scale(Complex64::new(0.0, 1.0));
        // i^4 = 1, so i·I is special unitary, while e^{iπ/8}·I is not
        assert!(u.is_special_unitary(UNITARY_TOLERANCE));
        let phase = Complex64::from_polar(1.0, core::f64::consts::PI / 8.0);
        assert!(!Unitary4::identity().scale(phase).is_special_unitary(UNITARY_TOLERANCE));
    }

    #[test]
    fn swap_determinant() {
        // SWAP has det −1; it is unitary but not in SU(4)
        assert!((Unitary4::swap().determinant() + ONE).norm() < 1e-15);
        assert_eq!(Unitary4::swap().unitarity_deviation(), 0.0);
    }

    #[test]
    fn checked_rejects_invalid() {
        assert!(Circuit::checked(2, vec![identity_layer(2, &[])]).is_err());
        assert!(Circuit::checked(2, vec![identity_layer(2, &[(1, 0)])]).is_ok());
    }
}
