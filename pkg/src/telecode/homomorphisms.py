"""Generator-level homomorphisms between the block algebra and the free-unitary algebra.

A BrownRep assigns n x n blocks u_jk whose stacked matrix U = sum e_jk ⊗ u_jk
is unitary; a FreeRep assigns d^2 independent unitaries g_lm.  The maps sigma1
and sigma2 exchange the two presentations, the automorphism quartet
alpha1/alpha2/beta1/beta2 drives two commuting order-d actions, and
covariant_embedding realizes the iterated crossed product concretely so that
all covariance and composition identities can be checked entrywise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import rng_from_seed
from .errors import UsageError, ValidationError
from .matrix_core import (dagger, eij, frobenius, is_unitary, permute_tensor_factors,
                          random_unitary, tensor)
from .weyl_pauli import TAU, pauli_x, pauli_z, phi_vec, t_jk


@dataclass(frozen=True)
class FreeRep:
    """Concrete unitaries standing in for free generators.

    When num_gens = d^2 the generators are indexed (l, m) row-major and d_ctx
    records the modulus the indexing refers to.
    """

    gens: tuple[np.ndarray, ...]
    d_ctx: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "gens", tuple(np.asarray(g, dtype=complex) for g in self.gens))

    @property
    def num_gens(self) -> int:
        return len(self.gens)

    @property
    def block_dim(self) -> int:
        return self.gens[0].shape[0]

    def gen(self, l: int, m: int) -> np.ndarray:
        d = self._require_d()
        return self.gens[(l % d) * d + (m % d)]

    def _require_d(self) -> int:
        d = self.d_ctx if self.d_ctx is not None else int(round(np.sqrt(self.num_gens)))
        if d * d != self.num_gens:
            raise UsageError(f"{self.num_gens} generators do not form a d^2 grid")
        return d

    def validate(self, tol: float = 1e-10) -> "FreeRep":
        for i, g in enumerate(self.gens):
            if not is_unitary(g, tol):
                raise ValidationError(f"generator {i} is not unitary at {tol}")
        return self


def random_free_rep(d: int, n: int, seed: int | np.random.Generator = 0) -> FreeRep:
    rng = rng_from_seed(seed)
    gens = tuple(random_unitary(n, rng) for _ in range(d * d))
    return FreeRep(gens, d_ctx=d)


@dataclass(frozen=True)
class BrownRep:
    """d^2 blocks of size n whose stacked dn x dn matrix is unitary."""

    d: int
    n: int
    blocks: np.ndarray  # shape (d, d, n, n)

    def __post_init__(self):
        b = np.asarray(self.blocks, dtype=complex)
        if b.shape != (self.d, self.d, self.n, self.n):
            raise ValidationError(f"blocks shape {b.shape} != {(self.d, self.d, self.n, self.n)}")
        object.__setattr__(self, "blocks", b)

    def u(self, j: int, k: int) -> np.ndarray:
        return self.blocks[j % self.d, k % self.d]

    def fundamental_unitary(self) -> np.ndarray:
        d, n = self.d, self.n
        out = np.zeros((d * n, d * n), dtype=complex)
        for j in range(d):
            for k in range(d):
                out[j * n:(j + 1) * n, k * n:(k + 1) * n] = self.blocks[j, k]
        return out

    def validate(self, tol: float = 1e-10) -> "BrownRep":
        if not is_unitary(self.fundamental_unitary(), tol):
            raise ValidationError(f"fundamental unitary fails at {tol}")
        return self


def brown_from_unitary(d: int, big: np.ndarray) -> BrownRep:
    """Slice any dn x dn unitary into its d x d grid of n x n blocks."""
    big = np.asarray(big, dtype=complex)
    if big.shape[0] != big.shape[1] or big.shape[0] % d:
        raise UsageError(f"cannot slice shape {big.shape} into a {d}x{d} block grid")
    n = big.shape[0] // d
    blocks = big.reshape(d, n, d, n).transpose(0, 2, 1, 3)
    return BrownRep(d, n, blocks)


def random_brown_rep(d: int, n: int, seed: int | np.random.Generator = 0) -> BrownRep:
    return brown_from_unitary(d, random_unitary(d * n, seed))


# ---------------------------------------------------------------------------
# The two embeddings.
# ---------------------------------------------------------------------------

def sigma1(free: FreeRep) -> dict[tuple[int, int], np.ndarray]:
    """Block-algebra image of each u_jk inside M_d of the free generators.

    sigma1(u_jk) = (1/d) sum_lm exp(-2 pi i (j-k) l / d) e_{j-m,k-m} ⊗ g_lm.
    """
    d = free._require_d()
    n = free.block_dim
    out = {}
    for j in range(d):
        for k in range(d):
            acc = np.zeros((d * n, d * n), dtype=complex)
            for l in range(d):
                ph = np.exp(-1j * TAU * ((j - k) * l) / d)
                for m in range(d):
                    acc += ph * tensor(eij(d, j - m, k - m), free.gen(l, m))
            out[(j, k)] = acc / d
    return out


def sigma1_fundamental(free: FreeRep) -> np.ndarray:
    """Stack sum e_jk ⊗ sigma1(u_jk); unitary whenever the g_lm are."""
    d = free._require_d()
    n = free.block_dim
    img = sigma1(free)
    out = np.zeros((d * d * n, d * d * n), dtype=complex)
    for (j, k), blk in img.items():
        out += tensor(eij(d, j, k), blk)
    return out


def sigma1_projector_form(free: FreeRep) -> np.ndarray:
    """Equivalent form sum_lm |phi_{-l,m}><phi_{-l,m}| ⊗ g_lm of the stacked image."""
    d = free._require_d()
    n = free.block_dim
    out = np.zeros((d * d * n, d * d * n), dtype=complex)
    for l in range(d):
        for m in range(d):
            v = phi_vec(d, (-l) % d, m).amplitudes
            out += tensor(np.outer(v, np.conj(v)), free.gen(l, m))
    return out


def sigma1_projector_form_generator_first(free: FreeRep) -> np.ndarray:
    """Same operator with the generator factor moved to the front."""
    d = free._require_d()
    n = free.block_dim
    mat = sigma1_projector_form(free)
    return permute_tensor_factors(mat, [d, d, n], [2, 0, 1])


def sigma2(brown: BrownRep) -> dict[tuple[int, int], np.ndarray]:
    """Free-generator images sigma2(g_lm) = sum_jk exp(2 pi i (j-k) l / d) e_{j-m,k-m} ⊗ u_jk."""
    d, n = brown.d, brown.n
    out = {}
    for l in range(d):
        for m in range(d):
            acc = np.zeros((d * n, d * n), dtype=complex)
            for j in range(d):
                for k in range(d):
                    ph = np.exp(1j * TAU * ((j - k) * l) / d)
                    acc += ph * tensor(eij(d, j - m, k - m), brown.u(j, k))
            out[(l, m)] = acc
    return out


def sigma2_conjugation(brown: BrownRep, l: int, m: int) -> np.ndarray:
    """Second route: (T_{l,-m} ⊗ 1) U (T_{l,-m} ⊗ 1)†."""
    d, n = brown.d, brown.n
    t = tensor(t_jk(d, l, (-m) % d), np.eye(n))
    return t @ brown.fundamental_unitary() @ dagger(t)


# ---------------------------------------------------------------------------
# Automorphisms.  alpha2 is the shift-by-one action u_jk -> u_{j+1,k+1};
# applying it d times returns the original rep exactly.
# ---------------------------------------------------------------------------

def alpha1(brown: BrownRep, power: int = 1) -> BrownRep:
    d = brown.d
    blocks = np.empty_like(brown.blocks)
    for j in range(d):
        for k in range(d):
            blocks[j, k] = np.exp(1j * TAU * ((j - k) * power) / d) * brown.blocks[j, k]
    return BrownRep(d, brown.n, blocks)


def alpha2(brown: BrownRep, power: int = 1) -> BrownRep:
    d = brown.d
    blocks = np.empty_like(brown.blocks)
    for j in range(d):
        for k in range(d):
            blocks[j, k] = brown.blocks[(j + power) % d, (k + power) % d]
    return BrownRep(d, brown.n, blocks)


def beta1(free: FreeRep, power: int = 1) -> FreeRep:
    """g_jk -> g_{j+1,k}, iterated power times."""
    d = free._require_d()
    gens = tuple(free.gen(j + power, k) for j in range(d) for k in range(d))
    return FreeRep(gens, d_ctx=d)


def beta2(free: FreeRep, power: int = 1) -> FreeRep:
    """g_jk -> g_{j,k-1}, iterated power times."""
    d = free._require_d()
    gens = tuple(free.gen(j, k - power) for j in range(d) for k in range(d))
    return FreeRep(gens, d_ctx=d)


# ---------------------------------------------------------------------------
# The basis-change unitary V and the crossed-product relations.
# ---------------------------------------------------------------------------

def v_unitary(d: int) -> np.ndarray:
    """Unitary with columns V|jk> = exp(-2 pi i j k / d) |phi_jk>."""
    if d < 2:
        raise UsageError("v_unitary needs d >= 2")
    v = np.zeros((d * d, d * d), dtype=complex)
    for j in range(d):
        for k in range(d):
            col = np.exp(-1j * TAU * (j * k) / d) * phi_vec(d, j, k).amplitudes
            v[:, j * d + k] = col
    return v


def check_ue(d: int) -> dict[str, float]:
    """Residuals of the two conjugation identities attached to V."""
    v = v_unitary(d)
    x, z = pauli_x(d), pauli_z(d)
    i_d = np.eye(d)
    res_unitary = frobenius(v @ dagger(v) - np.eye(d * d))
    res_x = frobenius(dagger(v) @ tensor(x, i_d) @ v - tensor(z, x))
    res_z = frobenius(dagger(v) @ tensor(z, i_d) @ v - tensor(np.eye(d), z))
    return {"v_unitary": res_unitary, "x_conjugation": res_x, "z_conjugation": res_z}


@dataclass(frozen=True)
class CovariantEmbedding:
    """Concrete crossed-product data: pi(u_jk) plus the order-d unitaries v, w."""

    brown: BrownRep
    v: np.ndarray
    w: np.ndarray
    pi_blocks: dict[tuple[int, int], np.ndarray]

    def pi(self, j: int, k: int) -> np.ndarray:
        return self.pi_blocks[(j % self.brown.d, k % self.brown.d)]


def covariant_embedding(brown: BrownRep) -> CovariantEmbedding:
    """pi(A) = sum_lm e_ll ⊗ e_mm ⊗ alpha1^{-l} alpha2^{-m}(A), v = Z ⊗ X ⊗ 1, w = 1 ⊗ Z ⊗ 1."""
    d, n = brown.d, brown.n
    x, z = pauli_x(d), pauli_z(d)
    i_n = np.eye(n)
    v = tensor(z, x, i_n)
    w = tensor(np.eye(d), z, i_n)
    pi_blocks = {}
    reps = {}
    for l in range(d):
        for m in range(d):
            reps[(l, m)] = alpha2(alpha1(brown, -l), -m)
    for j in range(d):
        for k in range(d):
            acc = np.zeros((d * d * n, d * d * n), dtype=complex)
            for l in range(d):
                for m in range(d):
                    acc += tensor(eij(d, l, l), eij(d, m, m), reps[(l, m)].u(j, k))
            pi_blocks[(j, k)] = acc
    return CovariantEmbedding(brown, v, w, pi_blocks)


def check_covariance(emb: CovariantEmbedding) -> dict[str, float]:
    """Residuals of the crossed-product relations on every generator image."""
    brown = emb.brown
    d = brown.d
    res: dict[str, float] = {}
    res["vw_commutation"] = frobenius(emb.v @ emb.w - np.exp(1j * TAU / d) * emb.w @ emb.v)
    res["v_order"] = frobenius(np.linalg.matrix_power(emb.v, d) - np.eye(emb.v.shape[0]))
    res["w_order"] = frobenius(np.linalg.matrix_power(emb.w, d) - np.eye(emb.w.shape[0]))
    a1 = covariant_embedding(alpha1(brown))
    a2 = covariant_embedding(alpha2(brown))
    worst_v = worst_w = 0.0
    for j in range(d):
        for k in range(d):
            worst_v = max(worst_v, frobenius(
                emb.v @ emb.pi(j, k) @ dagger(emb.v) - a1.pi(j, k)))
            worst_w = max(worst_w, frobenius(
                emb.w @ emb.pi(j, k) @ dagger(emb.w) - a2.pi(j, k)))
    res["v_covariance"] = worst_v
    res["w_covariance"] = worst_w
    return res


# ---------------------------------------------------------------------------
# Composition identities.
# ---------------------------------------------------------------------------

def compose_s2_s1(brown: BrownRep, j: int, k: int) -> np.ndarray:
    """(id ⊗ sigma2) applied to sigma1(u_jk), with the g_lm realized as sigma2 images."""
    d, n = brown.d, brown.n
    s2 = sigma2(brown)
    acc = np.zeros((d * d * n, d * d * n), dtype=complex)
    for l in range(d):
        ph = np.exp(-1j * TAU * ((j - k) * l) / d)
        for m in range(d):
            acc += ph * tensor(eij(d, j - m, k - m), s2[(l, m)])
    return acc / d


def compose_s2_s1_expected(brown: BrownRep, j: int, k: int) -> np.ndarray:
    """Expected value sum_{l,m} |phi_{-l,-m}><phi_{-l,-m}| ⊗ alpha1^l alpha2^m (u_jk)."""
    d, n = brown.d, brown.n
    acc = np.zeros((d * d * n, d * d * n), dtype=complex)
    for l in range(d):
        for m in range(d):
            v = phi_vec(d, (-l) % d, (-m) % d).amplitudes
            img = alpha2(alpha1(brown, l), m).u(j, k)
            acc += tensor(np.outer(v, np.conj(v)), img)
    return acc


def compose_s1_s2(free: FreeRep, l: int, m: int) -> np.ndarray:
    """(id ⊗ sigma1) applied to sigma2(g_lm), with the u_jk realized as sigma1 images."""
    d = free._require_d()
    n = free.block_dim
    s1 = sigma1(free)
    acc = np.zeros((d * d * n, d * d * n), dtype=complex)
    for j in range(d):
        for k in range(d):
            ph = np.exp(1j * TAU * ((j - k) * l) / d)
            acc += ph * tensor(eij(d, j - m, k - m), s1[(j, k)])
    return acc


def compose_s1_s2_expected(free: FreeRep, l: int, m: int) -> np.ndarray:
    """Expected value sum_{a,b} |phi_{a,b}><phi_{a,b}| ⊗ beta1^{-a} beta2^{-b}(g_lm).

    No 1/d prefactor: the left side is a homomorphic image of a unitary, and
    this projector-weighted sum is unitary exactly as written.
    """
    d = free._require_d()
    n = free.block_dim
    acc = np.zeros((d * d * n, d * d * n), dtype=complex)
    for a in range(d):
        for b in range(d):
            v = phi_vec(d, a, b).amplitudes
            img = beta2(beta1(free, -a), -b).gen(l, m)
            acc += tensor(np.outer(v, np.conj(v)), img)
    return acc


def compose_identity_check(brown: BrownRep, free: FreeRep | None = None,
                           tol: float = 1e-10,
                           perturb: dict[tuple, np.ndarray] | None = None) -> dict:
    """Verify the displayed composition identities generator by generator.

    Checks, for every (j,k): the projector form of (id ⊗ sigma2) ∘ sigma1, and
    its V-conjugation onto the diagonal crossed-product embedding.  When a
    FreeRep is supplied the mirrored identity for (id ⊗ sigma1) ∘ sigma2 is
    checked on every (l,m) as well.  Returns a report dict with one entry per
    identity instance; failures carry the offending index and residual.

    The identities are linear in the representation blocks and therefore hold
    for arbitrary block data; rep validity is certified separately through the
    unitarity checks.  perturb is a fault-injection hook for exercising the
    failure-reporting path: it maps ("s2s1"|"vconj"|"s1s2", i, j) to a matrix
    added to that instance's computed left side before comparison.
    """
    perturb = perturb or {}
    d, n = brown.d, brown.n
    v2 = tensor(v_unitary(d), np.eye(n))
    emb = covariant_embedding(brown)
    checks = []
    for j in range(d):
        for k in range(d):
            lhs = compose_s2_s1(brown, j, k)
            lhs1 = lhs + perturb.get(("s2s1", j, k), 0)
            res1 = frobenius(lhs1 - compose_s2_s1_expected(brown, j, k))
            checks.append({"name": f"compose_s2_s1[{j},{k}]", "residual": res1,
                           "passed": res1 <= tol})
            lhs2 = dagger(v2) @ lhs @ v2 + perturb.get(("vconj", j, k), 0)
            res2 = frobenius(lhs2 - emb.pi(j, k))
            checks.append({"name": f"v_conjugation_to_diagonal[{j},{k}]", "residual": res2,
                           "passed": res2 <= tol})
    if free is not None:
        for l in range(d):
            for m in range(d):
                lhs3 = compose_s1_s2(free, l, m) + perturb.get(("s1s2", l, m), 0)
                res3 = frobenius(lhs3 - compose_s1_s2_expected(free, l, m))
                checks.append({"name": f"compose_s1_s2[{l},{m}]", "residual": res3,
                               "passed": res3 <= tol})
    failed = [c for c in checks if not c["passed"]]
    return {"d": d, "n": n, "tolerance": tol, "checks": checks,
            "passed": not failed, "failures": [c["name"] for c in failed]}
