//! Seeded generation of model circuits.

use alloc::vec::Vec;

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::circuit::{Circuit, Gate, Layer, Unitary4};
use crate::seed::SeedSpec;
use crate::{Error, Result};

/// How the `⌊n/2⌋` gates of a layer are paired after the permutation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Pairing {
    /// `(0,1), (2,3), …` on post-permutation positions.
    #[default]
    Adjacent,
    /// A fresh uniformly random perfect matching per layer.
    RandomDisjoint,
}

impl core::str::FromStr for Pairing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "adjacent" => Ok(Pairing::Adjacent),
            "random-disjoint" | "random" => Ok(Pairing::RandomDisjoint),
            other => Err(Error::Parse(alloc::format!("unknown pairing `{other}`"))),
        }
    }
}

impl Pairing {
    pub fn as_str(&self) -> &'static str {
        match self {
            Pairing::Adjacent => "adjacent",
            Pairing::RandomDisjoint => "random-disjoint",
        }
    }
}

/// Haar-random element of SU(4) drawn from `rng`.
///
/// Gram–Schmidt on a complex Ginibre matrix gives the QR factor with a
/// positive real R diagonal, which is Haar on U(4). The global phase is then
/// rotated so that `det U = 1`.
pub fn haar_su4_from<R: Rng + ?Sized>(rng: &mut R) -> Unitary4 {
    let scale = core::f64::consts::FRAC_1_SQRT_2;
    let mut columns = [[Complex64::new(0.0, 0.0); 4]; 4];
    for column in columns.iter_mut() {
        for entry in column.iter_mut() {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            *entry = Complex64::new(re * scale, im * scale);
        }
    }

    // modified Gram–Schmidt
    for j in 0..4 {
        for i in 0..j {
            let (done, rest) = columns.split_at_mut(j);
            let q = &done[i];
            let v = &mut rest[0];
            let proj: Complex64 = q.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum();
            for (vk, qk) in v.iter_mut().zip(q.iter()) {
                *vk -= proj * qk;
            }
        }
        let norm = columns[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for entry in columns[j].iter_mut() {
            *entry /= norm;
        }
    }

    let mut m = [[Complex64::new(0.0, 0.0); 4]; 4];
    for (j, column) in columns.iter().enumerate() {
        for (i, &entry) in column.iter().enumerate() {
            m[i][j] = entry;
        }
    }
    let u = Unitary4(m);
    let phase = u.determinant().arg();
    u.scale(Complex64::from_polar(1.0, -phase / 4.0))
}

pub fn haar_su4(seed: &SeedSpec) -> Unitary4 {
    haar_su4_from(&mut seed.rng())
}

/// Uniform permutation of `0..n` (Fisher–Yates) as a destination table.
pub fn random_permutation(n: usize, seed: &SeedSpec) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut seed.rng());
    perm
}

/// Builds a width-`n`, depth-`d` model circuit.
///
/// Stream layout below `seed`: layer `l` uses `[l, 0]` for its permutation,
/// `[l, 1]` for a random pairing and `[l, 2 + g]` for gate `g`.
pub fn build_model_circuit(n: usize, d: usize, seed: &SeedSpec, pairing: Pairing) -> Result<Circuit> {
    if n < 2 {
        return Err(Error::Domain(alloc::format!("model circuits need n >= 2, got {n}")));
    }
    if d < 1 {
        return Err(Error::Domain(alloc::format!("model circuits need d >= 1, got {d}")));
    }
    let layers = (0..d)
        .map(|l| {
            let layer_seed = seed.child(l as u64);
            let permutation = random_permutation(n, &layer_seed.child(0));
            let order: Vec<usize> = match pairing {
                Pairing::Adjacent => (0..n).collect(),
                Pairing::RandomDisjoint => random_permutation(n, &layer_seed.child(1)),
            };
            let gates = order
                .chunks_exact(2)
                .enumerate()
                .map(|(g, pair)| Gate {
                    pair: (pair[0], pair[1]),
                    unitary: haar_su4(&layer_seed.child(2 + g as u64)),
                })
                .collect();
            Layer { permutation, gates }
        })
        .collect();
    Ok(Circuit::new(n, layers))
}
