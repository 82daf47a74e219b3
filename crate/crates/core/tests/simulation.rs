use volbench_core::circuit::{Circuit, Gate, Layer, Unitary4};
use volbench_core::permutation::compose;
use volbench_core::random::{build_model_circuit, random_permutation};
use volbench_core::sim::{
    ideal_probabilities, noisy_distribution_exact, sample_noisy_trajectory, DensityMatrix, StateVector,
};
use volbench_core::{Complex64, NoiseModel, Pairing, SeedSpec};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Maps |00> to (|00> + |11>)/sqrt(2); real orthogonal with det 1.
fn bell_unitary() -> Unitary4 {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let z = c(0.0, 0.0);
    Unitary4([
        [c(s, 0.0), z, z, c(-s, 0.0)],
        [z, c(s, 0.0), c(-s, 0.0), z],
        [z, c(s, 0.0), c(s, 0.0), z],
        [c(s, 0.0), z, z, c(s, 0.0)],
    ])
}

fn bell_circuit() -> Circuit {
    Circuit::checked(2, vec![Layer { permutation: vec![0, 1], gates: vec![Gate { pair: (0, 1), unitary: bell_unitary() }] }])
        .unwrap()
}

fn random_state(width: usize, seed: u64) -> StateVector {
    // any normalized vector works; use a cheap deterministic one
    let mut x = seed;
    let amps: Vec<Complex64> = (0..1usize << width)
        .map(|_| {
            x = volbench_core::seed::splitmix64(x);
            let re = (x >> 11) as f64 / (1u64 << 53) as f64 - 0.5;
            x = volbench_core::seed::splitmix64(x);
            let im = (x >> 11) as f64 / (1u64 << 53) as f64 - 0.5;
            c(re, im)
        })
        .collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    StateVector::from_amplitudes(amps.into_iter().map(|a| a / norm).collect()).unwrap()
}

#[test]
fn permutation_composition_law() {
    for n in 1..=4 {
        for trial in 0..20u64 {
            let p = random_permutation(n, &SeedSpec::with_path(1, &[n as u64, trial, 0]));
            let q = random_permutation(n, &SeedSpec::with_path(1, &[n as u64, trial, 1]));
            let state = random_state(n, trial);
            let mut once = state.clone();
            once.apply_permutation(&compose(&p, &q));
            let mut twice = state.clone();
            twice.apply_permutation(&q);
            twice.apply_permutation(&p);
            assert_eq!(once.amplitudes(), twice.amplitudes());
        }
    }
}

#[test]
fn ideal_bell_distribution() {
    let probs = ideal_probabilities(&bell_circuit()).unwrap();
    for (p, e) in probs.iter().zip([0.5, 0.0, 0.0, 0.5]) {
        assert!((p - e).abs() < 1e-12);
    }
    let empty = Circuit::checked(2, vec![]).unwrap();
    assert_eq!(ideal_probabilities(&empty).unwrap(), vec![1.0, 0.0, 0.0, 0.0]);
}

#[test]
fn noiseless_bell_sampling() {
    let shots = 10_000;
    let counts = sample_noisy_trajectory(&bell_circuit(), &NoiseModel::ideal(), shots, &SeedSpec::new(8)).unwrap();
    assert_eq!(counts.get(0b00) + counts.get(0b11), shots);
    let sigma = (0.25 / shots as f64).sqrt();
    assert!((counts.get(0) as f64 / shots as f64 - 0.5).abs() < 3.0 * sigma);
}

#[test]
fn full_readout_flip_swaps_bell_outcomes() {
    let noise = NoiseModel::new(0.0, 0.0, 0.0, 1.0).unwrap();
    let ideal = sample_noisy_trajectory(&bell_circuit(), &NoiseModel::ideal(), 2000, &SeedSpec::new(4)).unwrap();
    let flipped = sample_noisy_trajectory(&bell_circuit(), &noise, 2000, &SeedSpec::new(4)).unwrap();
    assert_eq!(flipped.get(0b01) + flipped.get(0b10), 0);
    // same random stream, every bit inverted
    assert_eq!(flipped.get(0b11), ideal.get(0b00));
    assert_eq!(flipped.get(0b00), ideal.get(0b11));
}

#[test]
fn full_depolarizing_is_uniform() {
    let noise = NoiseModel::new(0.0, 1.0, 0.0, 0.0).unwrap();
    for seed in 0..5 {
        let circuit = build_model_circuit(2, 3, &SeedSpec::new(seed), Pairing::Adjacent).unwrap();
        let exact = noisy_distribution_exact(&circuit, &noise).unwrap();
        assert!(exact.iter().all(|p| (p - 0.25).abs() < 1e-9), "{exact:?}");

        let shots = 20_000u64;
        let counts = sample_noisy_trajectory(&circuit, &noise, shots, &SeedSpec::new(100 + seed)).unwrap();
        let sigma = (shots as f64 * 0.25 * 0.75).sqrt();
        for outcome in 0..4 {
            assert!((counts.get(outcome) as f64 - shots as f64 / 4.0).abs() < 3.0 * sigma);
        }
    }
}

#[test]
fn zero_noise_density_matches_state_vector() {
    for n in 1..=6 {
        let circuit = if n == 1 {
            Circuit::checked(1, vec![Layer { permutation: vec![0], gates: vec![] }]).unwrap()
        } else {
            build_model_circuit(n, n + 2, &SeedSpec::new(n as u64), Pairing::Adjacent).unwrap()
        };
        let sv = ideal_probabilities(&circuit).unwrap();
        let dm = noisy_distribution_exact(&circuit, &NoiseModel::ideal()).unwrap();
        let diff = sv.iter().zip(&dm).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        assert!(diff <= 1e-9, "n={n}: {diff}");
    }
}

#[test]
fn density_engine_keeps_a_valid_state() {
    let circuit = build_model_circuit(4, 6, &SeedSpec::new(31), Pairing::Adjacent).unwrap();
    let mut rho = DensityMatrix::zero(4);
    for layer in &circuit.layers {
        rho.apply_permutation(&layer.permutation);
        for gate in &layer.gates {
            rho.apply_gate(&gate.unitary, gate.pair);
            rho.depolarize(&[gate.pair.0, gate.pair.1], 0.07);
        }
        assert!((rho.trace() - c(1.0, 0.0)).norm() < 1e-9);
        assert!(rho.hermiticity_deviation() < 1e-9);
        for probe in 0..8 {
            let v = random_state(4, probe);
            assert!(rho.expectation(v.amplitudes()).re >= -1e-9);
        }
    }
}

#[test]
fn gates_preserve_norm() {
    let circuit = build_model_circuit(6, 10, &SeedSpec::new(12), Pairing::RandomDisjoint).unwrap();
    let mut state = random_state(6, 3);
    for layer in &circuit.layers {
        state.apply_permutation(&layer.permutation);
        for gate in &layer.gates {
            state.apply_gate(&gate.unitary, gate.pair).unwrap();
            assert!((state.norm_sqr() - 1.0).abs() <= 1e-12);
        }
    }
    assert!(state.apply_gate(&Unitary4::identity(), (0, 6)).is_err());
    assert!(state.apply_gate(&Unitary4::identity(), (2, 2)).is_err());
}

#[test]
fn swap_gate_moves_basis_state() {
    // |01> means qubit 0 = 0, qubit 1 = 1, i.e. index 0b10
    let mut state = StateVector::basis(2, 0b10);
    state.apply_gate(&Unitary4::swap(), (0, 1)).unwrap();
    assert_eq!(state.probabilities(), vec![0.0, 1.0, 0.0, 0.0]);
    let mut state = StateVector::basis(2, 0b10);
    state.apply_permutation(&[1, 0]);
    assert_eq!(state.probabilities(), vec![0.0, 1.0, 0.0, 0.0]);
}

#[rustfmt::skip]
fn fixture() -> Circuit {
    // frozen from tests/oracles/noisy_fixture.py
    let u_a = Unitary4([
        [c(0.1713530773472575, 0.14852078448436604), c(-0.05375534881128774, 0.17882362236737767), c(0.039321195492211636, -0.24418661197071437), c(-0.922238688099354, 0.04488561361359467)],
        [c(-0.15143143767744416, -0.662940328393901), c(0.13426116112073586, -0.4979812956794831), c(0.46286314932824124, 0.04968972636425867), c(-0.23075332210982302, 0.04010923662813411)],
        [c(-0.4558646463676745, 0.28993301360976315), c(0.7627936021422539, -0.21764309068880017), c(-0.23340466852273697, -0.078563978621522), c(-0.11710080231894089, -0.06738725019405703)],
        [c(-0.4100531985606402, -0.16168174384613257), c(-0.24411243206318392, 0.10152620570054961), c(-0.39882696812457946, 0.7088034915818481), c(-0.2722462382166837, 0.015283445950125412)],
    ]);
    let u_b = Unitary4([
        [c(0.09702047835370507, 0.2666251483470939), c(-0.30094375963757447, 0.17344458589407138), c(0.07852436284773875, -0.47539624479170717), c(0.749313926426923, 0.07217243759297831)],
        [c(-0.7080153888490568, -0.23961976535928528), c(0.47231222773718384, 0.026001987338228245), c(0.2495638057019751, -0.28007644587845665), c(0.17728456582875285, -0.21304203212753642)],
        [c(0.49793737324658766, 0.2703734424495913), c(0.6562245983261534, -0.1793518815289828), c(0.4161965949049615, 0.10813292513083683), c(0.17291618061433614, -0.03669349342666714)],
        [c(0.019499358009004056, 0.19842122676384913), c(-0.35163412029361774, 0.26296484543121545), c(0.65684940079204, -0.1036530549296102), c(-0.36784005924724167, -0.4358329118083204)],
    ]);
    Circuit::checked(3, vec![
        Layer { permutation: vec![2, 0, 1], gates: vec![Gate { pair: (0, 1), unitary: u_a }] },
        Layer { permutation: vec![1, 2, 0], gates: vec![Gate { pair: (1, 2), unitary: u_b }] },
    ]).unwrap()
}

#[rustfmt::skip]
const FIXTURE_IDEAL: [f64; 8] = [0.10686684120654937, 0.0, 0.2743642792593195, 0.0, 0.12008046652570536, 0.0, 0.4986884130084256, 0.0];
#[rustfmt::skip]
const FIXTURE_NOISY: [f64; 8] = [0.12790258197336288, 0.009155478435298587, 0.2525120299733762, 0.018075228892221958, 0.1405550061895326, 0.010061159894407182, 0.41223038186372807, 0.029508132778072266];

#[test]
fn fixture_matches_external_oracle() {
    let circuit = fixture();
    let ideal = ideal_probabilities(&circuit).unwrap();
    let noise = NoiseModel::new(0.05, 0.1, 0.0, 0.02).unwrap();
    let noisy = noisy_distribution_exact(&circuit, &noise).unwrap();
    for x in 0..8 {
        assert!((ideal[x] - FIXTURE_IDEAL[x]).abs() < 1e-12, "ideal[{x}]");
        assert!((noisy[x] - FIXTURE_NOISY[x]).abs() < 1e-12, "noisy[{x}]");
    }

    let shots = 100_000u64;
    let counts = sample_noisy_trajectory(&circuit, &noise, shots, &SeedSpec::new(6)).unwrap();
    for (x, &p) in FIXTURE_NOISY.iter().enumerate() {
        let sigma = (p * (1.0 - p) / shots as f64).sqrt().max(1e-6);
        let freq = counts.get(x) as f64 / shots as f64;
        assert!((freq - p).abs() < 4.0 * sigma, "outcome {x}: {freq} vs {p}");
    }
}

#[test]
fn trajectories_converge_to_density_matrix() {
    let noise = NoiseModel::new(0.0, 0.05, 0.0, 0.0).unwrap();
    for i in 0..5u64 {
        let n = 2 + (i % 2) as usize;
        let circuit = build_model_circuit(n, 3 + i as usize, &SeedSpec::new(900 + i), Pairing::Adjacent).unwrap();
        let exact = noisy_distribution_exact(&circuit, &noise).unwrap();
        let counts = sample_noisy_trajectory(&circuit, &noise, 50_000, &SeedSpec::new(i)).unwrap();
        let tvd = 0.5 * exact.iter().zip(counts.frequencies()).map(|(p, f)| (p - f).abs()).sum::<f64>();
        assert!(tvd <= 0.02, "circuit {i}: tvd {tvd}");
    }
}

#[test]
fn capacity_limits_are_enforced() {
    let circuit = Circuit::new(7, vec![]);
    assert!(matches!(
        noisy_distribution_exact(&circuit, &NoiseModel::ideal()),
        Err(volbench_core::Error::Capacity { .. })
    ));
    let wide = Circuit::new(21, vec![]);
    assert!(matches!(ideal_probabilities(&wide), Err(volbench_core::Error::Capacity { .. })));
}
