"""Distribution abstraction, the standard normal base, and reproducible RNG.

Survival functions are first-class here: ``log_sf`` is part of the
interface rather than being derived from ``1 - cdf``, because the tail
diagnostics need masses at ordinates where ``1 - cdf`` is numerically 0.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod

import numpy as np

from . import numcore
from .errors import BracketingError, DomainError
from .numcore import DEFAULT_TOL, LogProb, Tolerance

__all__ = [
    "ContinuousDistribution",
    "StandardNormal",
    "RngState",
    "log_tail_mass",
]


class RngState:
    """Reproducible random stream with an explicit 64-bit seed.

    Wraps a counter-based generator (Philox): identical seed, identical
    stream, and child streams obtained with :meth:`split` are
    statistically independent of the parent and of each other. A state is
    owned by its caller; nothing in the package shares one behind the
    caller's back.
    """

    def __init__(self, seed: int | None = None):
        if seed is not None:
            seed = int(seed)
            if not (0 <= seed < 2**64):
                raise DomainError(f"seed must be a 64-bit unsigned integer, got {seed}")
        self._seq = np.random.SeedSequence(seed)
        self.seed = seed if seed is not None else int(self._seq.entropy) & (2**64 - 1)
        self.generator = np.random.Generator(np.random.Philox(self._seq))

    def split(self, n: int) -> list["RngState"]:
        """n child states, deterministically derived from this state's seed."""
        if n < 1:
            raise DomainError(f"need at least one child stream, got n={n}")
        children = []
        for child_seq in self._seq.spawn(n):
            state = object.__new__(RngState)
            state._seq = child_seq
            state.seed = self.seed
            state.generator = np.random.Generator(np.random.Philox(child_seq))
            children.append(state)
        return children

    def uniform(self, n: int) -> np.ndarray:
        """n variates on (0, 1), endpoints excluded."""
        u = self.generator.random(n)
        # random() may return exactly 0.0; quantile transforms need (0, 1)
        return np.clip(u, 5e-324, 1.0 - 2**-53)

    def standard_normal(self, n: int) -> np.ndarray:
        return self.generator.standard_normal(n)

    def __repr__(self) -> str:
        return f"RngState(seed={self.seed})"


class ContinuousDistribution(ABC):
    """Absolutely continuous distribution on the real line.

    Subclasses must provide pdf/cdf and both log tails; generic quantile
    and sampling fall back to bracketed inversion of the cdf. All
    evaluation methods are pure; instances are immutable after
    construction.
    """

    @abstractmethod
    def pdf(self, y: float) -> float: ...

    @abstractmethod
    def cdf(self, y: float) -> float: ...

    @abstractmethod
    def log_cdf(self, y: float) -> LogProb: ...

    @abstractmethod
    def log_sf(self, y: float) -> LogProb:
        """ln P(Y > y); must stay finite wherever the true mass is
        representable in log space, far past the underflow of 1 - cdf."""

    def log_pdf(self, y: float) -> float:
        v = self.pdf(y)
        return math.log(v) if v > 0.0 else float("-inf")

    def sf(self, y: float) -> float:
        return math.exp(self.log_sf(y))

    def quantile(self, q: float, tol: Tolerance = DEFAULT_TOL) -> float:
        """Generic quantile: expanding-bracket root find on the cdf."""
        if not (0.0 < q < 1.0):
            raise DomainError(f"quantile argument must lie in (0, 1), got {q}")
        lo, hi = -1.0, 1.0
        for _ in range(200):
            if self.cdf(lo) < q:
                break
            lo *= 2.0
        else:
            raise BracketingError("could not bracket quantile from below")
        for _ in range(200):
            if self.cdf(hi) > q:
                break
            hi *= 2.0
        else:
            raise BracketingError("could not bracket quantile from above")
        return numcore.find_root(lambda y: self.cdf(y) - q, lo, hi, tol)

    def quantile_array(self, q: np.ndarray) -> np.ndarray:
        return np.array([self.quantile(float(v)) for v in q])

    def sample(self, rng: RngState, n: int) -> np.ndarray:
        """n inversion-sampled draws, deterministic given the rng state."""
        if n < 1:
            raise DomainError(f"sample count must be >= 1, got {n}")
        return self.quantile_array(rng.uniform(n))


class StandardNormal(ContinuousDistribution):
    """The standard normal: symmetric base distribution of every
    composition in this package."""

    def pdf(self, y: float) -> float:
        return float(numcore.normal_pdf(y))

    def log_pdf(self, y: float) -> float:
        return float(numcore.log_normal_pdf(y))

    def cdf(self, y: float) -> float:
        return float(numcore.normal_cdf(y))

    def log_cdf(self, y: float) -> LogProb:
        return float(numcore.log_normal_cdf(y))

    def log_sf(self, y: float) -> LogProb:
        return float(numcore.log_normal_sf(y))

    def quantile(self, q: float, tol: Tolerance = DEFAULT_TOL) -> float:
        return float(numcore.normal_quantile(q))

    def quantile_array(self, q: np.ndarray) -> np.ndarray:
        return numcore.normal_quantile(q)

    def __repr__(self) -> str:
        return "StandardNormal()"


def log_tail_mass(dist: ContinuousDistribution, y: float) -> LogProb:
    """ln of the two-sided tail mass P(Y < -y) + P(Y > y), y > 0.

    Combined by log-sum-exp of the two log tails, so the result stays
    finite whenever either side is representable in log space (for the
    standard normal that covers y up to 40 and beyond).
    """
    if not (y > 0.0):
        raise DomainError(f"tail ordinate must be positive, got {y}")
    return float(np.logaddexp(dist.log_cdf(-y), dist.log_sf(y)))
