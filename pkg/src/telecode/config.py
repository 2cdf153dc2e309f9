"""Central tolerance table and seeding conventions.

Every threshold used by the verification suites lives here so that reports can
echo the effective values.  The defaults are expressed in Frobenius norm and
leave several orders of magnitude of headroom over double-precision noise,
since all checked identities are exact in exact arithmetic.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

DEFAULT_SEED = 0


@dataclass(frozen=True)
class Tolerances:
    """Default thresholds, overridable per CLI run via --tol / --rank-tol."""

    exact: float = 1e-12        # phase-exact algebraic identities
    identity: float = 1e-10     # roundtrips, covariance relations, unitarity
    orthonormal: float = 1e-10  # Gram-matrix deviation for vector families
    psd: float = 1e-10          # eigenvalue floor for density / Choi checks
    prob_sum: float = 1e-12     # probability normalization
    rank: float = 1e-8          # numerical Schmidt-rank cutoff
    obstruction: float = 1e-8   # relation-residual gate in obstruction_check
    order: float = 1e-8         # ||u^m - I|| gate for spectral PVMs

    def as_dict(self) -> dict[str, float]:
        return asdict(self)


DEFAULT_TOLS = Tolerances()


def rng_from_seed(seed: int | np.random.Generator | None) -> np.random.Generator:
    """Return a Generator; passing an existing Generator threads it through."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(DEFAULT_SEED if seed is None else seed)
