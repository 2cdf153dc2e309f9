"""Generalized Pauli operators and the scalar phase algebra of their words.

Convention used everywhere in this package (nonstandard but fixed): X is the
diagonal phase operator X|j> = exp(2*pi*i*j/d)|j> and Z is the cyclic shift
Z|j> = |j+1 mod d>.  All index arithmetic on exponents is modulo d.  The
commutation consequence is Z X = exp(-2*pi*i/d) X Z.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import UsageError, ValidationError
from .matrix_core import StateVector, tensor

TAU = 2.0 * np.pi


def _phase(num: float, d: int) -> complex:
    return complex(np.exp(1j * TAU * num / d))


def pauli_x(d: int) -> np.ndarray:
    """Diagonal phase operator diag(exp(2*pi*i*j/d))."""
    if d < 2:
        raise UsageError("pauli_x needs d >= 2")
    return np.diag(np.exp(1j * TAU * np.arange(d) / d)).astype(complex)


def pauli_z(d: int) -> np.ndarray:
    """Cyclic shift |j> -> |j+1 mod d>."""
    if d < 2:
        raise UsageError("pauli_z needs d >= 2")
    z = np.zeros((d, d), dtype=complex)
    z[(np.arange(d) + 1) % d, np.arange(d)] = 1.0
    return z


@dataclass(frozen=True)
class PauliLabel:
    """Scalar multiple phase * X^j Z^k of a Weyl word, exponents mod d."""

    d: int
    phase: complex = 1.0 + 0.0j
    j: int = 0
    k: int = 0

    def __post_init__(self):
        if self.d < 2:
            raise ValidationError("PauliLabel needs d >= 2")
        object.__setattr__(self, "phase", complex(self.phase))
        object.__setattr__(self, "j", int(self.j) % self.d)
        object.__setattr__(self, "k", int(self.k) % self.d)
        if abs(abs(self.phase) - 1.0) > 1e-12:
            raise ValidationError(f"|phase| = {abs(self.phase)} is not 1")

    def to_json(self) -> dict:
        return {"d": self.d, "phase": [self.phase.real, self.phase.imag],
                "j": self.j, "k": self.k}

    @staticmethod
    def from_json(obj: dict) -> "PauliLabel":
        re, im = obj["phase"]
        return PauliLabel(int(obj["d"]), complex(re, im), int(obj["j"]), int(obj["k"]))


def t_op(label: PauliLabel) -> np.ndarray:
    """Evaluate phase * X^j Z^k as a dense matrix.

    X^j Z^k maps |c> to exp(2*pi*i*j*(c+k)/d) |c+k>, so the matrix has a
    single phase entry per column.
    """
    d, j, k = label.d, label.j, label.k
    m = np.zeros((d, d), dtype=complex)
    cols = np.arange(d)
    rows = (cols + k) % d
    m[rows, cols] = np.exp(1j * TAU * j * rows / d)
    return label.phase * m


def t_jk(d: int, j: int, k: int) -> np.ndarray:
    return t_op(PauliLabel(d, 1.0, j, k))


def phi_plus(d: int) -> StateVector:
    """Maximally entangled (1/sqrt(d)) sum_j |j>|j> on C^d ⊗ C^d."""
    amps = np.zeros(d * d, dtype=complex)
    amps[np.arange(d) * d + np.arange(d)] = 1.0 / np.sqrt(d)
    return StateVector(amps, (d, d))


def phi_vec(d: int, j: int, k: int) -> StateVector:
    """Entangled basis vector (X^j Z^k ⊗ 1) applied to the maximally entangled state."""
    if not (0 <= j < d and 0 <= k < d):
        raise UsageError(f"indices ({j},{k}) out of range for d={d}")
    op = tensor(t_jk(d, j, k), np.eye(d))
    return StateVector(op @ phi_plus(d).amplitudes, (d, d))


@dataclass(frozen=True)
class EntangledBasis:
    """All d^2 entangled basis vectors, ordered lexicographically by (j, k)."""

    d: int
    vectors: tuple[StateVector, ...]

    def vector(self, j: int, k: int) -> StateVector:
        return self.vectors[(j % self.d) * self.d + (k % self.d)]

    def gram(self) -> np.ndarray:
        v = np.column_stack([vec.amplitudes for vec in self.vectors])
        return np.conj(v.T) @ v


def entangled_basis(d: int) -> EntangledBasis:
    return EntangledBasis(d, tuple(phi_vec(d, j, k) for j in range(d) for k in range(d)))


def pauli_times(a: PauliLabel, b: PauliLabel) -> PauliLabel:
    """Label of the plain product T_a T_b.

    Moving Z^{k_a} past X^{j_b} costs exp(-2*pi*i*j_b*k_a/d).
    """
    if a.d != b.d:
        raise UsageError(f"modulus mismatch {a.d} != {b.d}")
    d = a.d
    phase = a.phase * b.phase * _phase(-b.j * a.k, d)
    return PauliLabel(d, phase, a.j + b.j, a.k + b.k)


def pauli_adjoint(a: PauliLabel) -> PauliLabel:
    """Label of T_a†:  (X^j Z^k)† = exp(-2*pi*i*j*k/d) X^{-j} Z^{-k}."""
    return PauliLabel(a.d, np.conj(a.phase) * _phase(-a.j * a.k, a.d), -a.j, -a.k)


def pauli_mul(a: PauliLabel, b: PauliLabel) -> PauliLabel:
    """Label of T_a T_b†, the collapse step for alternating words.

    For unit-phase labels this is exp(2*pi*i*b_j*(a_k-b_k)/d) X^{a_j-b_j} Z^{a_k-b_k};
    the general case carries phase_a * conj(phase_b) in front.
    """
    if a.d != b.d:
        raise UsageError(f"modulus mismatch {a.d} != {b.d}")
    d = a.d
    phase = a.phase * np.conj(b.phase) * _phase(b.j * (a.k - b.k), d)
    return PauliLabel(d, phase, a.j - b.j, a.k - b.k)


def word_lambda(pairs: Sequence[tuple[int, int]], d: int,
                tail: tuple[int, int] = (0, 0)) -> complex:
    """Scalar collected when an alternating conjugated word is collapsed.

    The word is  prod_a [(T_{j_a,k_a}† ⊗ 1) U^{e_a} (T_{j_a,k_a} ⊗ 1)]  followed
    by (T_tail ⊗ 1).  Regrouping leaves between consecutive U-powers the factors
    T_{j_a,k_a} T_{j_{a+1},k_{a+1}}† and at the end T_{j_n,k_n} T_tail; the scalar
    is the product of the phases those merges produce:

        exp((2*pi*i/d) * [sum_{a=1}^{n-1} j_{a+1} (k_a - k_{a+1})  -  tail_j * k_n])

    The exponents e_a never enter.  For an empty word the scalar is 1.
    """
    pairs = [(int(j) % d, int(k) % d) for j, k in pairs]
    tj, tk = int(tail[0]) % d, int(tail[1]) % d
    if not pairs:
        return 1.0 + 0.0j
    total = 0
    for a in range(len(pairs) - 1):
        total += pairs[a + 1][0] * (pairs[a][1] - pairs[a + 1][1])
    total -= tj * pairs[-1][1]
    return _phase(total, d)


def word_lambda_collapsed(pairs: Sequence[tuple[int, int]], d: int,
                          tail: tuple[int, int] = (0, 0)) -> complex:
    """Same scalar as word_lambda, accumulated one pauli_mul / pauli_times step
    at a time.  Kept as an independent code path for cross-checking."""
    pairs = list(pairs)
    if not pairs:
        return 1.0 + 0.0j
    phase = 1.0 + 0.0j
    for a in range(len(pairs) - 1):
        cur = PauliLabel(d, 1.0, *pairs[a])
        nxt = PauliLabel(d, 1.0, *pairs[a + 1])
        phase *= pauli_mul(cur, nxt).phase
    last = PauliLabel(d, 1.0, *pairs[-1])
    phase *= pauli_times(last, PauliLabel(d, 1.0, *tail)).phase
    return complex(phase)


def collapsed_word_ops(pairs: Sequence[tuple[int, int]], d: int,
                       tail: tuple[int, int] = (0, 0)) -> list[np.ndarray]:
    """Unit-phase T-matrices interleaving the U-powers of the collapsed form.

    Element 0 is T_{j_1,k_1}†, elements 1..n-1 are the difference operators
    T_{j_a - j_{a+1}, k_a - k_{a+1}}, element n is T_{j_n + tail_j, k_n + tail_k}.
    Together with word_lambda they reconstitute the original word exactly.
    """
    pairs = [(int(j) % d, int(k) % d) for j, k in pairs]
    if not pairs:
        return [t_jk(d, *tail)]
    ops = [np.conj(t_jk(d, *pairs[0]).T)]
    for a in range(len(pairs) - 1):
        ops.append(t_jk(d, pairs[a][0] - pairs[a + 1][0], pairs[a][1] - pairs[a + 1][1]))
    ops.append(t_jk(d, pairs[-1][0] + tail[0], pairs[-1][1] + tail[1]))
    return ops
