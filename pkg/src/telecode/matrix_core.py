"""Dense complex linear algebra substrate.

Matrices are plain complex ndarrays.  Conventions fixed once for the whole
package: row-major storage, big-endian tensor index order (the product state
|j> ⊗ |k> sits at flat index j*d_B + k), Frobenius norm for all tolerances.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .config import rng_from_seed
from .errors import UsageError, ValidationError


def asmatrix(a) -> np.ndarray:
    """Coerce to a finite 2-d complex array."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise UsageError(f"expected a matrix, got ndim={m.ndim}")
    if not np.all(np.isfinite(m.view(float))):
        raise ValidationError("matrix has non-finite entries")
    return m


def dagger(a: np.ndarray) -> np.ndarray:
    return np.conj(a.T)


def frobenius(a: np.ndarray) -> float:
    return float(np.linalg.norm(a))


def tensor(*factors: np.ndarray) -> np.ndarray:
    """Kronecker product of one or more matrices, left to right."""
    if not factors:
        raise UsageError("tensor() needs at least one factor")
    out = np.asarray(factors[0], dtype=complex)
    for f in factors[1:]:
        out = np.kron(out, np.asarray(f, dtype=complex))
    return out


def eij(d: int, i: int, j: int) -> np.ndarray:
    """Matrix unit e_ij in M_d."""
    m = np.zeros((d, d), dtype=complex)
    m[i % d, j % d] = 1.0
    return m


def is_unitary(u: np.ndarray, tol: float = 1e-10) -> bool:
    """True iff ||u u† - I||_F <= tol.  Non-square input is a usage error."""
    u = np.asarray(u)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise UsageError(f"is_unitary needs a square matrix, got shape {u.shape}")
    return frobenius(u @ dagger(u) - np.eye(u.shape[0])) <= tol


def random_unitary(n: int, seed: int | np.random.Generator = 0) -> np.ndarray:
    """Haar-distributed unitary, deterministic for a fixed seed.

    QR of a complex Ginibre matrix with the R-diagonal phases absorbed, which
    makes the distribution Haar and the factorization unambiguous.
    """
    if n < 1:
        raise UsageError("random_unitary needs n >= 1")
    rng = rng_from_seed(seed)
    g = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(g)
    phases = np.diag(r).copy()
    phases /= np.abs(phases)
    return q * phases[np.newaxis, :]


def permute_tensor_factors(mat: np.ndarray, dims: Sequence[int], perm: Sequence[int]) -> np.ndarray:
    """Reorder the tensor factors of a square matrix on ⊗_i C^{dims[i]}.

    perm[i] names the old position of the factor that ends up at slot i.
    """
    dims = list(dims)
    n = int(np.prod(dims))
    mat = asmatrix(mat)
    if mat.shape != (n, n):
        raise UsageError(f"matrix shape {mat.shape} does not match dims {dims}")
    if sorted(perm) != list(range(len(dims))):
        raise UsageError(f"perm {perm} is not a permutation of the factors")
    k = len(dims)
    t = mat.reshape(dims + dims)
    axes = list(perm) + [p + k for p in perm]
    out_dims = [dims[p] for p in perm]
    return t.transpose(axes).reshape(int(np.prod(out_dims)), int(np.prod(out_dims)))


@dataclass(frozen=True)
class StateVector:
    """Normalized ket with an optional tensor-factor structure."""

    amplitudes: np.ndarray
    factor_dims: tuple[int, ...] | None = None

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).ravel()
        object.__setattr__(self, "amplitudes", amps)
        if not np.all(np.isfinite(amps.view(float))):
            raise ValidationError("state vector has non-finite amplitudes")
        if self.factor_dims is not None:
            fd = tuple(int(d) for d in self.factor_dims)
            object.__setattr__(self, "factor_dims", fd)
            if int(np.prod(fd)) != amps.size:
                raise ValidationError(
                    f"factor_dims {fd} do not multiply to dim {amps.size}")

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> "StateVector":
        n = self.norm()
        if n == 0:
            raise ValidationError("cannot normalize the zero vector")
        return StateVector(self.amplitudes / n, self.factor_dims)

    def require_normalized(self, tol: float = 1e-10) -> None:
        if abs(self.norm() - 1.0) > tol:
            raise ValidationError(f"vector norm {self.norm()} != 1 beyond {tol}")


def basis_state(dim: int, index: int, factor_dims: tuple[int, ...] | None = None) -> StateVector:
    amps = np.zeros(dim, dtype=complex)
    amps[index] = 1.0
    return StateVector(amps, factor_dims)


@dataclass(frozen=True)
class SchmidtDecomposition:
    """Singular data of a bipartite amplitude matrix, coefficients descending."""

    coefficients: np.ndarray
    left_vectors: np.ndarray   # columns are the A-side Schmidt vectors
    right_vectors: np.ndarray  # rows are the B-side Schmidt vectors
    cut: tuple[tuple[int, ...], tuple[int, ...]]

    def rank(self, rank_tol: float = 1e-8) -> int:
        return int(np.sum(self.coefficients > rank_tol))


def _resolve_cut(factor_dims: tuple[int, ...], cut) -> tuple[tuple[int, ...], tuple[int, ...]]:
    k = len(factor_dims)
    if isinstance(cut, int):
        if not 0 < cut < k:
            raise UsageError(f"cut {cut} must split {k} factors into two nonempty sides")
        side_a = tuple(range(cut))
    else:
        side_a = tuple(int(i) for i in cut)
        if not side_a or len(set(side_a)) != len(side_a) or any(i < 0 or i >= k for i in side_a):
            raise UsageError(f"cut {cut} is not a valid factor subset")
        if len(side_a) == k:
            raise UsageError("cut must leave at least one factor on side B")
    side_b = tuple(i for i in range(k) if i not in side_a)
    return side_a, side_b


def schmidt(state: StateVector, cut=1) -> SchmidtDecomposition:
    """Schmidt decomposition across a bipartition of the tensor factors.

    cut is either the number of leading factors on side A or an explicit list
    of factor indices for side A.  Requires factor_dims to be set.
    """
    if state.factor_dims is None:
        raise UsageError("schmidt needs a StateVector with factor_dims")
    side_a, side_b = _resolve_cut(state.factor_dims, cut)
    dims = state.factor_dims
    da = int(np.prod([dims[i] for i in side_a]))
    db = int(np.prod([dims[i] for i in side_b]))
    amp = state.amplitudes.reshape(dims).transpose(side_a + side_b).reshape(da, db)
    u, s, vh = np.linalg.svd(amp, full_matrices=False)
    return SchmidtDecomposition(coefficients=s, left_vectors=u, right_vectors=vh,
                                cut=(side_a, side_b))


def schmidt_rank(state: StateVector, cut=1, rank_tol: float = 1e-8) -> int:
    return schmidt(state, cut).rank(rank_tol)


# ---------------------------------------------------------------------------
# JSON wire formats.
# Matrix: {"rows": N, "cols": M, "data": [[re, im], ...]} row-major.
# Vector: {"dim": N, "data": [[re, im], ...], "factor_dims": [...] | null}.
# ---------------------------------------------------------------------------

def _pairs(values: Iterable[complex]) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in values]


def matrix_to_json(m: np.ndarray) -> dict:
    m = asmatrix(m)
    return {"rows": m.shape[0], "cols": m.shape[1], "data": _pairs(m.ravel())}


def matrix_from_json(obj: dict) -> np.ndarray:
    try:
        rows, cols = int(obj["rows"]), int(obj["cols"])
        data = obj["data"]
    except (KeyError, TypeError) as exc:
        raise UsageError(f"malformed matrix JSON: {exc}") from exc
    if len(data) != rows * cols:
        raise UsageError(f"matrix JSON claims {rows}x{cols} but has {len(data)} entries")
    flat = np.array([complex(re, im) for re, im in data], dtype=complex)
    return flat.reshape(rows, cols)


def vector_to_json(v: StateVector) -> dict:
    return {
        "dim": v.dim,
        "data": _pairs(v.amplitudes),
        "factor_dims": list(v.factor_dims) if v.factor_dims is not None else None,
    }


def vector_from_json(obj: dict) -> StateVector:
    try:
        dim = int(obj["dim"])
        data = obj["data"]
    except (KeyError, TypeError) as exc:
        raise UsageError(f"malformed vector JSON: {exc}") from exc
    if len(data) != dim:
        raise UsageError(f"vector JSON claims dim {dim} but has {len(data)} entries")
    amps = np.array([complex(re, im) for re, im in data], dtype=complex)
    fd = obj.get("factor_dims")
    return StateVector(amps, tuple(fd) if fd is not None else None)
