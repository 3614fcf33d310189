//! The two-qubit ansatz, Grover iterates, and L-layer enhanced-sampling
//! circuits, with depth accounting in ansatz units.
//!
//! Depths are exact rationals: the ansatz costs 1 unit, the reflection about
//! |0..0> costs [`REFLECTION_DEPTH_UNITS`] (half an ansatz in this two-qubit
//! setting), and the observable's Pauli gates are free, giving 2.5 L + 1 units
//! for an L-layer circuit.

use std::f64::consts::FRAC_PI_2;
use std::f64::consts::PI;

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::sim::{apply_gate, DensityMatrix, Gate, PauliLetter, PauliString, QubitCount};

/// Depth of one ansatz query, in ansatz units.
pub const ANSATZ_DEPTH_UNITS: Rational64 = Rational64::new_raw(1, 1);
/// Depth of the reflection about |0..0>, in ansatz units. A named constant so
/// other cost models are one edit away.
pub const REFLECTION_DEPTH_UNITS: Rational64 = Rational64::new_raw(1, 2);

/// An ordered gate list with depth metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n: QubitCount,
    gates: Vec<Gate>,
    depth_units: Rational64,
}

impl Circuit {
    pub fn new(n: QubitCount) -> Self {
        Self { n, gates: Vec::new(), depth_units: Rational64::new_raw(0, 1) }
    }

    pub fn qubits(&self) -> QubitCount {
        self.n
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    /// Circuit-time cost in ansatz units.
    pub fn depth_units(&self) -> Rational64 {
        self.depth_units
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.n)?;
        self.gates.push(gate);
        Ok(())
    }

    fn append(&mut self, other: &Circuit) -> Result<()> {
        if other.n != self.n {
            return Err(Error::DimensionMismatch(format!(
                "appending {}-qubit circuit to {}-qubit circuit",
                other.n.get(),
                self.n.get()
            )));
        }
        self.gates.extend(other.gates.iter().cloned());
        self.depth_units += other.depth_units;
        Ok(())
    }

    /// The programmatic inverse: gates reversed, rotation angles negated
    /// (CNOT, Paulis and the reflection are self-inverse). Costs the same
    /// depth as the original.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            n: self.n,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
            depth_units: self.depth_units,
        }
    }

    /// Apply every gate in order to `state`.
    pub fn apply_to(&self, state: &DensityMatrix) -> Result<DensityMatrix> {
        if state.qubits() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "{}-qubit circuit applied to {}-qubit state",
                self.n.get(),
                state.qubits().get()
            )));
        }
        let mut out = state.clone();
        for gate in &self.gates {
            out = apply_gate(&out, gate)?;
        }
        Ok(out)
    }

    /// Run the circuit on |0..0>.
    pub fn simulate(&self) -> Result<DensityMatrix> {
        self.apply_to(&DensityMatrix::pure_zero(self.n))
    }

    /// Line-oriented text form: a `qubits` line, a `depth` line (exact
    /// rational), then one gate per line as `kind [angle] targets`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("qubits {}\n", self.n.get()));
        out.push_str(&format!("depth {}\n", self.depth_units));
        for gate in &self.gates {
            let line = match *gate {
                Gate::Rx { target, angle } => format!("rx {angle} {target}"),
                Gate::Ry { target, angle } => format!("ry {angle} {target}"),
                Gate::Rz { target, angle } => format!("rz {angle} {target}"),
                Gate::Cnot { control, target } => format!("cnot {control} {target}"),
                Gate::PauliX { target } => format!("x {target}"),
                Gate::PauliY { target } => format!("y {target}"),
                Gate::PauliZ { target } => format!("z {target}"),
                Gate::Reflection0 => "reflection0".to_string(),
            };
            out.push_str(&line);
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Circuit> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let bad = |msg: &str| Error::CircuitFormat(msg.to_string());

        let header = lines.next().ok_or_else(|| bad("missing qubits line"))?;
        let n: u32 = header
            .strip_prefix("qubits ")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| bad("malformed qubits line"))?;
        let n = QubitCount::new(n)?;

        let depth_line = lines.next().ok_or_else(|| bad("missing depth line"))?;
        let depth: Rational64 = depth_line
            .strip_prefix("depth ")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| bad("malformed depth line"))?;

        let mut circuit = Circuit::new(n);
        for line in lines {
            let mut parts = line.split_whitespace();
            let kind = parts.next().ok_or_else(|| bad("empty gate line"))?;
            let mut angle_and_target = |k: &str| -> Result<(f64, usize)> {
                let angle = parts
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| bad(&format!("{k}: bad angle")))?;
                let target = parts
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| bad(&format!("{k}: bad target")))?;
                Ok((angle, target))
            };
            let gate = match kind {
                "rx" => {
                    let (angle, target) = angle_and_target("rx")?;
                    Gate::Rx { target, angle }
                }
                "ry" => {
                    let (angle, target) = angle_and_target("ry")?;
                    Gate::Ry { target, angle }
                }
                "rz" => {
                    let (angle, target) = angle_and_target("rz")?;
                    Gate::Rz { target, angle }
                }
                "cnot" => {
                    let control = parts
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| bad("cnot: bad control"))?;
                    let target = parts
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| bad("cnot: bad target"))?;
                    Gate::Cnot { control, target }
                }
                "x" | "y" | "z" => {
                    let target = parts
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| bad("pauli: bad target"))?;
                    match kind {
                        "x" => Gate::PauliX { target },
                        "y" => Gate::PauliY { target },
                        _ => Gate::PauliZ { target },
                    }
                }
                "reflection0" => Gate::Reflection0,
                other => return Err(bad(&format!("unknown gate kind {other:?}"))),
            };
            circuit.push(gate)?;
        }
        circuit.depth_units = depth;
        Ok(circuit)
    }
}

/// What to build: the ansatz angle, the observable, and the layer count L.
#[derive(Debug, Clone, PartialEq)]
pub struct EnhancedSamplingSpec {
    pub ansatz_theta: f64,
    pub observable: PauliString,
    pub layers: u32,
}

/// The fixed two-qubit state-preparation circuit, depth 1 ansatz unit.
pub fn build_ansatz(theta: f64) -> Circuit {
    let n = QubitCount::new(2).expect("2 is in range");
    let mut circuit = Circuit::new(n);
    for gate in [
        Gate::Ry { target: 0, angle: FRAC_PI_2 },
        Gate::Rx { target: 1, angle: PI },
        Gate::Rx { target: 1, angle: -FRAC_PI_2 },
        Gate::Cnot { control: 0, target: 1 },
        Gate::Rz { target: 1, angle: theta },
        Gate::Cnot { control: 0, target: 1 },
        Gate::Ry { target: 0, angle: -FRAC_PI_2 },
        Gate::Rx { target: 1, angle: FRAC_PI_2 },
    ] {
        circuit.push(gate).expect("fixed gates are valid on 2 qubits");
    }
    circuit.depth_units = ANSATZ_DEPTH_UNITS;
    circuit
}

/// The observable as explicit gates, one per non-identity letter.
pub fn pauli_gates(observable: &PauliString) -> Vec<Gate> {
    observable
        .letters()
        .iter()
        .enumerate()
        .filter_map(|(target, &letter)| match letter {
            PauliLetter::I => None,
            PauliLetter::X => Some(Gate::PauliX { target }),
            PauliLetter::Y => Some(Gate::PauliY { target }),
            PauliLetter::Z => Some(Gate::PauliZ { target }),
        })
        .collect()
}

/// One Grover iterate U = A R0 A^dag P as a gate sequence (P first), costing
/// two ansatz queries plus the reflection: 2.5 units.
pub fn build_grover_iterate(ansatz: &Circuit, observable: &PauliString) -> Result<Circuit> {
    if observable.qubits() != ansatz.qubits() {
        return Err(Error::DimensionMismatch(format!(
            "observable on {} qubits, ansatz on {}",
            observable.qubits().get(),
            ansatz.qubits().get()
        )));
    }
    let mut circuit = Circuit::new(ansatz.qubits());
    for gate in pauli_gates(observable) {
        circuit.push(gate)?;
    }
    circuit.append(&ansatz.inverse())?;
    circuit.push(Gate::Reflection0)?;
    circuit.append(ansatz)?;
    circuit.depth_units = ansatz.depth_units() * 2 + REFLECTION_DEPTH_UNITS;
    Ok(circuit)
}

/// Exact circuit-time cost of an L-layer enhanced-sampling circuit: 2.5 L + 1.
pub fn enhanced_depth_units(layers: u32) -> Rational64 {
    Rational64::new(5 * layers as i64, 2) + 1
}

/// The full measurement circuit: ansatz followed by L Grover iterates.
pub fn build_enhanced_circuit(spec: &EnhancedSamplingSpec) -> Circuit {
    let ansatz = build_ansatz(spec.ansatz_theta);
    let iterate = build_grover_iterate(&ansatz, &spec.observable)
        .expect("observable validated against the 2-qubit ansatz");
    let mut circuit = ansatz.clone();
    for _ in 0..spec.layers {
        circuit.append(&iterate).expect("same qubit count");
    }
    debug_assert_eq!(circuit.depth_units(), enhanced_depth_units(spec.layers));
    circuit
}
