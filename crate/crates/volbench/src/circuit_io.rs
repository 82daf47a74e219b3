//! Canonical JSON form of a [`Circuit`]:
//!
//! ```json
//! {"width": 2, "layers": [{"perm": [1, 0], "gates": [{"pair": [0, 1], "u": [[[re, im], …4], …4]}]}]}
//! ```
//!
//! Doubles are written in shortest round-trip form, so a serialize /
//! deserialize cycle is bit-exact.

use serde::{Deserialize, Serialize};
use volbench_core::circuit::{validate, Circuit, Gate, Layer, Unitary4};
use volbench_core::Complex64;

use crate::FormatError;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CircuitDoc {
    width: usize,
    layers: Vec<LayerDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LayerDoc {
    perm: Vec<usize>,
    gates: Vec<GateDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GateDoc {
    pair: [usize; 2],
    u: Vec<Vec<[f64; 2]>>,
}

fn to_doc(circuit: &Circuit) -> CircuitDoc {
    CircuitDoc {
        width: circuit.width,
        layers: circuit
            .layers
            .iter()
            .map(|layer| LayerDoc {
                perm: layer.permutation.clone(),
                gates: layer
                    .gates
                    .iter()
                    .map(|g| GateDoc {
                        pair: [g.pair.0, g.pair.1],
                        u: g.unitary.0.iter().map(|row| row.iter().map(|z| [z.re, z.im]).collect()).collect(),
                    })
                    .collect(),
            })
            .collect(),
    }
}

pub fn to_json(circuit: &Circuit) -> String {
    serde_json::to_string(&to_doc(circuit)).expect("circuit documents always serialize")
}

pub fn to_json_pretty(circuit: &Circuit) -> String {
    serde_json::to_string_pretty(&to_doc(circuit)).expect("circuit documents always serialize")
}

fn unitary(u: &[Vec<[f64; 2]>], where_: &str) -> Result<Unitary4, FormatError> {
    if u.len() != 4 || u.iter().any(|row| row.len() != 4) {
        let shape: Vec<usize> = u.iter().map(Vec::len).collect();
        return Err(FormatError::Schema(format!("{where_}: expected a 4x4 matrix, got rows of lengths {shape:?}")));
    }
    let mut entries = [[Complex64::new(0.0, 0.0); 4]; 4];
    for (i, row) in u.iter().enumerate() {
        for (j, &[re, im]) in row.iter().enumerate() {
            entries[i][j] = Complex64::new(re, im);
        }
    }
    Ok(Unitary4(entries))
}

/// Parses and validates a circuit.
pub fn from_json(text: &str) -> Result<Circuit, FormatError> {
    let doc: CircuitDoc = crate::error::decode_json(text)?;
    let mut layers = Vec::with_capacity(doc.layers.len());
    for (li, layer) in doc.layers.into_iter().enumerate() {
        let gates = layer
            .gates
            .iter()
            .enumerate()
            .map(|(gi, g)| {
                Ok(Gate { pair: (g.pair[0], g.pair[1]), unitary: unitary(&g.u, &format!("layer {li} gate {gi}"))? })
            })
            .collect::<Result<Vec<_>, FormatError>>()?;
        layers.push(Layer { permutation: layer.perm, gates });
    }
    let circuit = Circuit::new(doc.width, layers);
    let report = validate(&circuit);
    if !report.is_valid() {
        let list: Vec<String> = report.violations.iter().map(ToString::to_string).collect();
        return Err(FormatError::Invariant(list.join("; ")));
    }
    Ok(circuit)
}
