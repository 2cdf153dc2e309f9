"""Teleportation and super-dense coding channels plus the four operator-space maps.

The teleportation channel factors as: couple the input with a maximally
entangled pair, project onto the entangled basis (each outcome (j,k) leaving
Bob with T_jk† rho T_jk at weight 1/d^2), then undo with T_jk . T_jk†.  The
super-dense channel encodes a distribution into the entangled basis and reads
it back by the same measurement.  The embedding/recovery pairs s1/t1 and
s2/t2 realize the non-trace-preserving operator-space versions; s2 and t2
carry the flipped index (j, d-k).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import rng_from_seed
from .errors import UsageError, ValidationError
from .matrix_core import asmatrix, dagger, frobenius, tensor
from .weyl_pauli import entangled_basis, phi_plus, t_jk


@dataclass(frozen=True)
class DensityMatrix:
    """d x d density matrix; validation is explicit, not implicit."""

    d: int
    matrix: np.ndarray

    def __post_init__(self):
        m = asmatrix(self.matrix)
        if m.shape != (self.d, self.d):
            raise ValidationError(f"matrix shape {m.shape} != ({self.d},{self.d})")
        object.__setattr__(self, "matrix", m)

    def validate(self, tol: float = 1e-10) -> "DensityMatrix":
        m = self.matrix
        if frobenius(m - dagger(m)) > tol:
            raise ValidationError("density matrix is not Hermitian")
        if abs(np.trace(m) - 1.0) > tol:
            raise ValidationError(f"trace {np.trace(m)} != 1")
        if np.linalg.eigvalsh((m + dagger(m)) / 2).min() < -tol:
            raise ValidationError("density matrix has a negative eigenvalue")
        return self


def random_density(d: int, seed: int | np.random.Generator = 0) -> DensityMatrix:
    rng = rng_from_seed(seed)
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    m = g @ dagger(g)
    return DensityMatrix(d, m / np.trace(m))


@dataclass(frozen=True)
class ClassicalDist:
    """Probability distribution over the d^2 labels (j, k), row-major."""

    d: int
    probs: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=float).ravel()
        if p.size != self.d * self.d:
            raise ValidationError(f"need {self.d ** 2} probabilities, got {p.size}")
        object.__setattr__(self, "probs", p)

    def validate(self, tol: float = 1e-12) -> "ClassicalDist":
        if self.probs.min() < -tol:
            raise ValidationError("negative probability")
        if abs(self.probs.sum() - 1.0) > tol:
            raise ValidationError(f"probabilities sum to {self.probs.sum()}")
        return self

    def prob(self, j: int, k: int) -> float:
        return float(self.probs[j * self.d + k])


def random_dist(d: int, seed: int | np.random.Generator = 0) -> ClassicalDist:
    rng = rng_from_seed(seed)
    p = rng.random(d * d)
    return ClassicalDist(d, p / p.sum())


@dataclass(frozen=True)
class MeasurementOutcome:
    """Alice's measurement result: one conditional state per label, uniform weight."""

    d: int
    blocks: dict[tuple[int, int], np.ndarray]
    weight: float

    def block(self, j: int, k: int) -> np.ndarray:
        return self.blocks[(j, k)]


def alice_measurement(rho: DensityMatrix) -> MeasurementOutcome:
    """Conditional states of the teleportation measurement.

    Outcome (j,k) occurs with probability 1/d^2 and leaves T_jk† rho T_jk.
    """
    rho.validate()
    d = rho.d
    blocks = {}
    for j in range(d):
        for k in range(d):
            t = t_jk(d, j, k)
            blocks[(j, k)] = dagger(t) @ rho.matrix @ t
    return MeasurementOutcome(d, blocks, 1.0 / d ** 2)


def conditional_expectation_blocks(rho: DensityMatrix) -> dict[tuple[int, int], np.ndarray]:
    """Independent oracle for alice_measurement.

    Forms rho ⊗ phi on C^d ⊗ C^d ⊗ C^d, compresses systems (1,2) with each
    entangled basis vector, and returns the resulting d x d blocks, which
    should equal weight * T_jk† rho T_jk.
    """
    d = rho.d
    phi = phi_plus(d)
    big = tensor(rho.matrix, np.outer(phi.amplitudes, np.conj(phi.amplitudes)))
    basis = entangled_basis(d)
    out = {}
    m = big.reshape(d * d, d, d * d, d)
    for j in range(d):
        for k in range(d):
            v = basis.vector(j, k).amplitudes
            out[(j, k)] = np.einsum("a,ambn,b->mn", np.conj(v), m, v)
    return out


def bob_correction(outcome: MeasurementOutcome) -> DensityMatrix:
    """Average of T_jk block T_jk† over outcomes at their common weight."""
    d = outcome.d
    acc = np.zeros((d, d), dtype=complex)
    for (j, k), block in outcome.blocks.items():
        t = t_jk(d, j, k)
        acc += t @ block @ dagger(t)
    return DensityMatrix(d, outcome.weight * acc)


def teleport(rho: DensityMatrix) -> DensityMatrix:
    """Composite teleportation channel; equals the identity channel."""
    return bob_correction(alice_measurement(rho))


def superdense(p: ClassicalDist) -> ClassicalDist:
    """Composite super-dense coding channel; equals the identity on distributions.

    The intermediate state sum_jk p_jk |phi_jk><phi_jk| is formed explicitly
    and read back via the entangled-basis measurement.
    """
    p.validate()
    d = p.d
    basis = entangled_basis(d)
    state = np.zeros((d * d, d * d), dtype=complex)
    for j in range(d):
        for k in range(d):
            v = basis.vector(j, k).amplitudes
            state += p.prob(j, k) * np.outer(v, np.conj(v))
    out = np.empty(d * d)
    for j in range(d):
        for k in range(d):
            v = basis.vector(j, k).amplitudes
            out[j * d + k] = float(np.real(np.conj(v) @ state @ v))
    return ClassicalDist(d, out)


# ---------------------------------------------------------------------------
# Operator-space embedding / recovery maps.  Block elements of M_d(l_1^{d^2})
# are stored as dicts keyed by the label (j, k).
# ---------------------------------------------------------------------------

def s1_map(rho: DensityMatrix) -> dict[tuple[int, int], np.ndarray]:
    """rho -> (1/d) T_jk† rho T_jk per label (j,k)."""
    d = rho.d
    return {(j, k): dagger(t_jk(d, j, k)) @ rho.matrix @ t_jk(d, j, k) / d
            for j in range(d) for k in range(d)}


def t1_map(blocks: dict[tuple[int, int], np.ndarray]) -> np.ndarray:
    """Block element -> (1/d) sum_jk T_jk E_jk T_jk†."""
    labels = sorted(blocks)
    d = int(np.sqrt(len(labels)))
    if d * d != len(labels):
        raise UsageError(f"expected d^2 blocks, got {len(labels)}")
    acc = np.zeros_like(next(iter(blocks.values())), dtype=complex)
    for (j, k), e in blocks.items():
        t = t_jk(d, j, k)
        acc += t @ e @ dagger(t)
    return acc / d


def s2_map(p: ClassicalDist) -> np.ndarray:
    """Distribution -> d * sum_jk p_jk |phi_{j,d-k}><phi_{j,d-k}| in M_{d^2}."""
    d = p.d
    basis = entangled_basis(d)
    acc = np.zeros((d * d, d * d), dtype=complex)
    for j in range(d):
        for k in range(d):
            v = basis.vector(j, (d - k) % d).amplitudes
            acc += d * p.prob(j, k) * np.outer(v, np.conj(v))
    return acc


def t2_map(mat: np.ndarray) -> ClassicalDist:
    """M_{d^2} element -> (1/d) tr(mat phi_{j,d-k}) at label (j,k)."""
    mat = asmatrix(mat)
    d = int(np.sqrt(mat.shape[0]))
    if d * d != mat.shape[0] or mat.shape[0] != mat.shape[1]:
        raise UsageError(f"t2_map needs a d^2 x d^2 matrix, got {mat.shape}")
    basis = entangled_basis(d)
    out = np.empty(d * d)
    for j in range(d):
        for k in range(d):
            v = basis.vector(j, (d - k) % d).amplitudes
            out[j * d + k] = float(np.real(np.conj(v) @ mat @ v)) / d
    return ClassicalDist(d, out)


# ---------------------------------------------------------------------------
# Choi-side representation of channels, used to cross-check the formula
# evaluators and to certify complete positivity / trace preservation.
# ---------------------------------------------------------------------------

def choi_matrix(apply_fn, dim_in: int) -> np.ndarray:
    """Choi matrix sum_ab e_ab ⊗ Lambda(e_ab) of a channel given as a callable."""
    probe = np.zeros((dim_in, dim_in), dtype=complex)
    probe[0, 0] = 1.0
    dim_out = np.asarray(apply_fn(probe)).shape[0]
    choi = np.zeros((dim_in * dim_out, dim_in * dim_out), dtype=complex)
    for a in range(dim_in):
        for b in range(dim_in):
            e = np.zeros((dim_in, dim_in), dtype=complex)
            e[a, b] = 1.0
            out = np.asarray(apply_fn(e))
            choi[a * dim_out:(a + 1) * dim_out, b * dim_out:(b + 1) * dim_out] = out
    return choi


def apply_choi(choi: np.ndarray, rho: np.ndarray, dim_in: int) -> np.ndarray:
    """Evaluate the channel encoded by a Choi matrix on rho."""
    rho = asmatrix(rho)
    dim_out = choi.shape[0] // dim_in
    c = choi.reshape(dim_in, dim_out, dim_in, dim_out)
    return np.einsum("ab,ambn->mn", rho, c)


def choi_is_cp(choi: np.ndarray, tol: float = 1e-10) -> bool:
    herm = (choi + dagger(choi)) / 2
    return float(np.linalg.eigvalsh(herm).min()) >= -tol


def choi_is_trace_preserving(choi: np.ndarray, dim_in: int, tol: float = 1e-10) -> bool:
    dim_out = choi.shape[0] // dim_in
    c = choi.reshape(dim_in, dim_out, dim_in, dim_out)
    partial = np.einsum("ambm->ab", c)
    return frobenius(partial - np.eye(dim_in)) <= tol


def teleport_channel_fn(d: int):
    """Teleportation as a raw matrix callable, for Choi-based cross-checks."""
    ts = [t_jk(d, j, k) for j in range(d) for k in range(d)]

    def apply(mat: np.ndarray) -> np.ndarray:
        acc = np.zeros((d, d), dtype=complex)
        for t in ts:
            acc += t @ (dagger(t) @ mat @ t) @ dagger(t)
        return acc / d ** 2

    return apply


def alice_channel_fn(d: int):
    """Alice's stage as a channel M_d -> M_{d^2} ⊗ M_d (classical register first)."""
    ts = [t_jk(d, j, k) for j in range(d) for k in range(d)]

    def apply(mat: np.ndarray) -> np.ndarray:
        out = np.zeros((d ** 3, d ** 3), dtype=complex)
        for idx, t in enumerate(ts):
            reg = np.zeros((d * d, d * d), dtype=complex)
            reg[idx, idx] = 1.0
            out += tensor(reg, dagger(t) @ mat @ t) / d ** 2
        return out

    return apply
