"""Seedable random variate generators for sorting inputs.

Uniform bits come from xoshiro256** (period 2**256 - 1), whose 256-bit state
is expanded from a 64-bit seed with SplitMix64, as recommended by the
generator's authors. Uniform reals take the top 53 bits, so they lie in
[0, 1) on a 2**-53 lattice.

Normals use the Box-Muller transform with pair caching; Cauchy variates are
the ratio of two normals; Binomial(m, p) is the literal count of successes
among m Bernoulli(p) trials.

Each generator exists twice: a scalar Python path (``next_*`` functions,
usable with any object exposing ``next_uniform01`` and a ``spare`` slot) and
a compiled batch path used by :func:`generate_array`. Both consume the
uniform stream identically, so a batch equals the same number of scalar
draws from the same state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from numba import njit

MASK64 = (1 << 64) - 1
CAUCHY_GUARD = 1e-300

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_INV53 = 1.0 / 9007199254740992.0  # 2**-53


class InvalidParameterError(ValueError):
    """Raised for distribution parameters or variates outside their domain."""


# --------------------------------------------------------------------------
# 64-bit integer plumbing (pure Python, used for seeding and seed mixing)


def splitmix64_next(x: int) -> tuple[int, int]:
    """Advance a SplitMix64 state; returns ``(new_state, output)``."""
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return x, z ^ (z >> 31)


def mix64(x: int) -> int:
    """SplitMix64 output function applied to a single 64-bit word."""
    return splitmix64_next(x & MASK64)[1]


def seed_state(seed: int) -> np.ndarray:
    """Expand a 64-bit seed into a xoshiro256** state vector."""
    if not 0 <= seed <= MASK64:
        raise InvalidParameterError(f"seed must be a 64-bit unsigned integer, got {seed}")
    words = []
    x = seed
    for _ in range(4):
        x, out = splitmix64_next(x)
        words.append(out)
    return np.array(words, dtype=np.uint64)


# --------------------------------------------------------------------------
# compiled kernels


@njit(cache=True)
def _rotl(x, k):
    return (x << np.uint64(k)) | (x >> np.uint64(64 - k))


@njit(cache=True)
def _next_u64(s):
    s0 = s[0]
    s1 = s[1]
    s2 = s[2]
    s3 = s[3]
    result = _rotl(s1 * np.uint64(5), 7) * np.uint64(9)
    t = s1 << np.uint64(17)
    s2 ^= s0
    s3 ^= s1
    s1 ^= s2
    s0 ^= s3
    s2 ^= t
    s3 = _rotl(s3, 45)
    s[0] = s0
    s[1] = s1
    s[2] = s2
    s[3] = s3
    return result


@njit(cache=True)
def _next_uniform(s):
    return float(_next_u64(s) >> np.uint64(11)) * _INV53


@njit(cache=True)
def _fill_u64(s, out):
    for i in range(out.shape[0]):
        out[i] = _next_u64(s)


@njit(cache=True)
def _fill_uniform(s, out):
    for i in range(out.shape[0]):
        out[i] = _next_uniform(s)


@njit(cache=True)
def _normal_pair(s):
    u1 = 0.0
    u2 = 0.0
    while u1 == 0.0:
        u1 = _next_uniform(s)
        u2 = _next_uniform(s)
    radius = math.sqrt(-2.0 * math.log(u1))
    theta = 2.0 * math.pi * u2
    return radius * math.cos(theta), radius * math.sin(theta)


@njit(cache=True)
def _draw_normal(s, spare):
    # spare[0] holds the cached second variate, NaN when empty
    if not math.isnan(spare[0]):
        z = spare[0]
        spare[0] = math.nan
        return z
    z1, z2 = _normal_pair(s)
    spare[0] = z2
    return z1


@njit(cache=True)
def _fill_normal(s, spare, out):
    for i in range(out.shape[0]):
        out[i] = _draw_normal(s, spare)


@njit(cache=True)
def _fill_cauchy(s, spare, out):
    for i in range(out.shape[0]):
        while True:
            num = _draw_normal(s, spare)
            den = _draw_normal(s, spare)
            if abs(den) >= CAUCHY_GUARD:
                break
        out[i] = num / den


@njit(cache=True)
def _fill_binomial(s, m, p, out):
    for i in range(out.shape[0]):
        k = 0
        for _ in range(m):
            if _next_uniform(s) < p:
                k += 1
        out[i] = k


# --------------------------------------------------------------------------
# generator state


class RngState:
    """Deterministic uniform bit generator plus the cached Box-Muller spare.

    Parameters
    ----------
    seed : int
        64-bit unsigned seed. Identical seeds give identical streams.
    """

    def __init__(self, seed: int) -> None:
        self.seed = seed
        self._s = seed_state(seed)
        self.spare: Optional[float] = None

    def next_u64(self) -> int:
        return int(_next_u64(self._s))

    def next_uniform01(self) -> float:
        return float(_next_uniform(self._s))

    def _spare_array(self) -> np.ndarray:
        return np.array([math.nan if self.spare is None else self.spare])

    def _store_spare(self, arr: np.ndarray) -> None:
        self.spare = None if math.isnan(arr[0]) else float(arr[0])

    def uniforms(self, n: int) -> np.ndarray:
        out = np.empty(n, dtype=np.float64)
        _fill_uniform(self._s, out)
        return out

    def normals(self, n: int) -> np.ndarray:
        spare = self._spare_array()
        out = np.empty(n, dtype=np.float64)
        _fill_normal(self._s, spare, out)
        self._store_spare(spare)
        return out

    def cauchys(self, n: int) -> np.ndarray:
        spare = self._spare_array()
        out = np.empty(n, dtype=np.float64)
        _fill_cauchy(self._s, spare, out)
        self._store_spare(spare)
        return out

    def binomials(self, n: int, m: int, p: float) -> np.ndarray:
        _check_binomial(m, p)
        out = np.empty(n, dtype=np.int64)
        _fill_binomial(self._s, m, p, out)
        return out


# --------------------------------------------------------------------------
# scalar reference path


def next_uniform01(rng) -> float:
    return rng.next_uniform01()


def box_muller(u1: float, u2: float) -> tuple[float, float]:
    """Map ``u1`` in (0, 1) and ``u2`` in [0, 1) to two standard normals."""
    if not 0.0 < u1 <= 1.0:
        raise InvalidParameterError(f"u1 must lie in (0, 1], got {u1}")
    radius = math.sqrt(-2.0 * math.log(u1))
    theta = 2.0 * math.pi * u2
    return radius * math.cos(theta), radius * math.sin(theta)


def next_std_normal(rng) -> float:
    """Draw one standard normal, returning the cached spare when present."""
    if rng.spare is not None:
        z, rng.spare = rng.spare, None
        return z
    while True:
        u1 = rng.next_uniform01()
        u2 = rng.next_uniform01()
        if u1 > 0.0:
            break
    z1, z2 = box_muller(u1, u2)
    rng.spare = z2
    return z1


def next_cauchy(rng, draw_normal: Callable = next_std_normal) -> float:
    """Standard Cauchy variate as the ratio of two standard normals.

    Pairs whose denominator is below ``CAUCHY_GUARD`` in magnitude are
    redrawn, so the result is always finite.
    """
    while True:
        num = draw_normal(rng)
        den = draw_normal(rng)
        if abs(den) >= CAUCHY_GUARD:
            return num / den


def _check_binomial(m: int, p: float) -> None:
    if isinstance(m, bool) or int(m) != m or m < 1:
        raise InvalidParameterError(f"binomial m must be a positive integer, got {m}")
    if not 0.0 <= p <= 1.0:
        raise InvalidParameterError(f"binomial p must lie in [0, 1], got {p}")


def next_binomial(m: int, p: float, rng) -> int:
    _check_binomial(m, p)
    return sum(1 for _ in range(int(m)) if rng.next_uniform01() < p)


# --------------------------------------------------------------------------
# distribution specs


@dataclass(frozen=True)
class DistributionSpec:
    """Names an input distribution; ``m`` and ``p`` are set for binomial only.

    Valid names are listed in ``DISTRIBUTIONS``. ``sorted``, ``reversed`` and
    ``allequal`` are deterministic and ignore the generator.
    """

    name: str
    m: Optional[int] = None
    p: Optional[float] = None

    def __post_init__(self) -> None:
        if self.name not in DISTRIBUTIONS:
            raise InvalidParameterError(
                f"unknown distribution {self.name!r}; expected one of {sorted(DISTRIBUTIONS)}"
            )
        if self.name == "binomial":
            if self.m is None or self.p is None:
                raise InvalidParameterError("binomial requires both m and p")
            _check_binomial(self.m, self.p)
            object.__setattr__(self, "m", int(self.m))
            object.__setattr__(self, "p", float(self.p))
        elif self.m is not None or self.p is not None:
            raise InvalidParameterError(f"{self.name} takes no m/p parameters")

    @classmethod
    def binomial(cls, m: int, p: float) -> "DistributionSpec":
        return cls("binomial", m, p)

    @property
    def deterministic(self) -> bool:
        return self.name in ("sorted", "reversed", "allequal")

    def __str__(self) -> str:
        if self.name == "binomial":
            return f"binomial(m={self.m}, p={self.p})"
        return self.name


DISTRIBUTIONS = frozenset(
    {"uniform01", "normal", "cauchy", "binomial", "sorted", "reversed", "allequal"}
)

UNIFORM01 = DistributionSpec("uniform01")
STD_NORMAL = DistributionSpec("normal")
CAUCHY = DistributionSpec("cauchy")
SORTED = DistributionSpec("sorted")
REVERSED = DistributionSpec("reversed")
ALL_EQUAL = DistributionSpec("allequal")


def generate_array(spec: DistributionSpec, n: int, rng: RngState) -> np.ndarray:
    """Draw ``n`` keys according to ``spec``.

    Real-valued distributions return float64 arrays; binomial and the
    deterministic patterns return int64 arrays.
    """
    if n < 0:
        raise InvalidParameterError(f"n must be non-negative, got {n}")
    name = spec.name
    if name == "uniform01":
        return rng.uniforms(n)
    if name == "normal":
        return rng.normals(n)
    if name == "cauchy":
        return rng.cauchys(n)
    if name == "binomial":
        return rng.binomials(n, spec.m, spec.p)
    if name == "sorted":
        return np.arange(n, dtype=np.int64)
    if name == "reversed":
        return np.arange(n - 1, -1, -1, dtype=np.int64)
    return np.zeros(n, dtype=np.int64)
