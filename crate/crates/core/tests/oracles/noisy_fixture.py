"""Independent numpy oracle for the fixed 3-qubit fixture in tests/simulation.rs.

Builds two SU(4) gates from fixed Hamiltonians, evolves the density matrix
with depolarizing (replace-by-maximally-mixed) noise after every gate and on
idle positions, applies readout flips, and prints the distributions that the
Rust test freezes.
"""
import numpy as np
from scipy.linalg import expm

N = 3


def su4(seed_values):
    h = np.zeros((4, 4), complex)
    it = iter(seed_values)
    for i in range(4):
        h[i, i] = next(it)
        for j in range(i + 1, 4):
            h[i, j] = complex(next(it), next(it))
            h[j, i] = np.conj(h[i, j])
    u = expm(1j * h)
    det = np.linalg.det(u)
    return u * np.exp(-1j * np.angle(det) / 4)


U_A = su4([0.3, -0.7, 0.2, 1.1, -0.4, 0.5, 0.9, -1.3, 0.25, 0.6, -0.8, 0.15, 0.05, 1.7, -0.2, 0.45])
U_B = su4([1.2, 0.1, -0.6, -0.3, 0.8, 0.35, -1.1, 0.7, -0.5, 0.4, 0.2, -0.9, 1.05, -0.15, 0.65, -0.75])
LAYERS = [([2, 0, 1], [((0, 1), U_A)]), ([1, 2, 0], [((1, 2), U_B)])]


def axis(q):
    return N - 1 - q


def apply_unitary(rho, u, a, b):
    # basis index of the pair is 2*bit(a) + bit(b)
    t = rho.reshape((2,) * (2 * N))
    u4 = u.reshape(2, 2, 2, 2)
    ra, rb = axis(a), axis(b)
    t = np.moveaxis(t, [ra, rb], [0, 1])
    t = np.einsum("ijkl,kl...->ij...", u4, t)
    t = np.moveaxis(t, [0, 1], [ra, rb])
    ca, cb = N + axis(a), N + axis(b)
    t = np.moveaxis(t, [ca, cb], [0, 1])
    t = np.einsum("ijkl,kl...->ij...", u4.conj(), t)
    t = np.moveaxis(t, [0, 1], [ca, cb])
    return t.reshape(2 ** N, 2 ** N)


def permutation_matrix(perm):
    p = np.zeros((2 ** N, 2 ** N))
    for x in range(2 ** N):
        y = 0
        for i, j in enumerate(perm):
            if x >> i & 1:
                y |= 1 << j
        p[y, x] = 1
    return p


def depolarize(rho, qubits, p):
    mixed = np.zeros_like(rho)
    mask = sum(1 << q for q in qubits)
    d = 2 ** N
    for x in range(d):
        for y in range(d):
            if (x & mask) != (y & mask):
                continue
            # Tr_S over the target bits with the rest fixed
            acc = 0
            for s in range(2 ** len(qubits)):
                bits = 0
                for k, q in enumerate(qubits):
                    if s >> k & 1:
                        bits |= 1 << q
                acc += rho[(x & ~mask) | bits, (y & ~mask) | bits]
            mixed[x, y] = acc / 2 ** len(qubits)
    return (1 - p) * rho + p * mixed


def run(p1, p2, p_readout):
    rho = np.zeros((2 ** N, 2 ** N), complex)
    rho[0, 0] = 1
    for perm, gates in LAYERS:
        pm = permutation_matrix(perm)
        rho = pm @ rho @ pm.T
        used = set()
        for (a, b), u in gates:
            rho = apply_unitary(rho, u, a, b)
            rho = depolarize(rho, [a, b], p2)
            used |= {a, b}
        for q in range(N):
            if q not in used:
                rho = depolarize(rho, [q], p1)
    probs = np.real(np.diag(rho)).copy()
    for q in range(N):
        flipped = probs.copy()
        for x in range(2 ** N):
            flipped[x] = (1 - p_readout) * probs[x] + p_readout * probs[x ^ (1 << q)]
        probs = flipped
    return probs


def fmt(vec):
    return ", ".join(repr(float(v)) for v in vec)


if __name__ == "__main__":
    for name, u in (("U_A", U_A), ("U_B", U_B)):
        print(name)
        for row in u:
            print("  [" + ", ".join(f"c({float(z.real)!r}, {float(z.imag)!r})" for z in row) + "],")
    print("ideal", fmt(run(0, 0, 0)))
    print("noisy", fmt(run(0.05, 0.1, 0.02)))
    print("full", fmt(run(0, 1, 0)))
