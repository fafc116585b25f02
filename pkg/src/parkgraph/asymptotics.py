"""Asymptotic estimates, exact probabilities and Monte-Carlo sampling.

``p(n, m) = M(n, m) / n^(n+m)`` is the chance that a uniform random mapping
together with a uniform random sequence of ``m`` preferences parks. With
``rho = m/n`` it tends to ``L(rho)``, which vanishes from ``rho = 1/2`` on;
right at ``1/2`` it decays like ``n^(-1/6)``.

Large estimates are carried as natural logarithms (mpmath floats) so that
nothing overflows; :meth:`RegimeEstimate.ratio` compares with an exact count.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath
import numpy as np

from .core import MappingFn, RootedTree
from .enumgen import _adjacency, _orient, _prufer_edges
from .errors import DomainError
from .exactcount import exact_F_n, exact_M_nm

DEFAULT_DELTA = 0.05
MC_BLOCK = 4096

SUB, CRIT, SUPER = "sub-critical", "critical", "super-critical"

_GAMMA_2_3 = mpmath.gamma(mpmath.mpf(2) / 3)
# sqrt(2) 3^(1/6) Gamma(2/3) / sqrt(pi), the same number as sqrt(6/pi) Gamma(2/3) / 3^(1/3)
_CRIT_CONST = mpmath.sqrt(2) * mpmath.power(3, mpmath.mpf(1) / 6) * _GAMMA_2_3 / mpmath.sqrt(mpmath.pi)
C_HALF = float(mpmath.sqrt(6 / mpmath.pi) * _GAMMA_2_3 / mpmath.cbrt(3))


def _check_nm(n: int, m: int) -> None:
    if n < 1 or not 0 <= m <= n:
        raise DomainError(f"need n >= 1 and 0 <= m <= n, got n={n}, m={m}")


def regime_of(n: int, m: int, delta: float = DEFAULT_DELTA) -> str:
    """Tag by load factor; the band ``|m/n - 1/2| <= delta`` counts as critical."""
    rho = m / n
    if abs(rho - 0.5) <= delta:
        return CRIT
    return SUB if rho < 0.5 else SUPER


@dataclass(frozen=True)
class RegimeEstimate:
    n: int
    m: int
    regime: str
    log_estimate: mpmath.mpf
    delta: float = DEFAULT_DELTA

    @property
    def estimate(self) -> mpmath.mpf:
        return mpmath.exp(self.log_estimate)

    @property
    def probability(self) -> float:
        """The estimate divided by n^(n+m)."""
        return float(mpmath.exp(self.log_estimate - (self.n + self.m) * mpmath.log(self.n)))

    def ratio(self, exact: int) -> float:
        """exact / estimate, computed without forming huge floats."""
        return float(mpmath.exp(mpmath.log(mpmath.mpf(exact)) - self.log_estimate))


def asymp_M(n: int, m: int, delta: float = DEFAULT_DELTA) -> RegimeEstimate:
    _check_nm(n, m)
    regime = regime_of(n, m, delta)
    N, M = mpmath.mpf(n), mpmath.mpf(m)
    log = mpmath.log
    if regime == SUB:
        value = (N + M + 0.5) * log(N) + 0.5 * log(N - 2 * M) - log(N - M)
    elif regime == CRIT:
        # p ~ C n^(-1/6); off the exact midpoint this is only a rough guide
        value = log(_CRIT_CONST) + (N + M - mpmath.mpf(1) / 6) * log(N)
    else:
        value = (mpmath.loggamma(M + 1) - mpmath.loggamma(N - M + 1)
                 + (2 * N - M + 1.5) * log(N) + (2 * M - N + 1) * log(2)
                 - 2.5 * log(2 * M - N))
    return RegimeEstimate(n, m, regime, value, delta)


# --- limiting constants ------------------------------------------------------

def _check_rho(rho: float, closed: bool = False) -> None:
    ok = 0 <= rho <= 1 if closed else 0 < rho < 1
    if not ok:
        raise DomainError(f"rho={rho} is out of range")


def c_less(rho: float) -> float:
    _check_rho(rho, closed=True)
    if rho >= 0.5:
        raise DomainError("C_< is defined for rho < 1/2")
    return math.sqrt(1 - 2 * rho) / (1 - rho)


def c_greater(rho: float) -> float:
    _check_rho(rho)
    if rho <= 0.5:
        raise DomainError("C_> is defined for rho > 1/2")
    return 2 * math.sqrt(rho / ((1 - rho) * (2 * rho - 1) ** 5))


def d_greater(rho: float) -> float:
    _check_rho(rho)
    return (4 * rho / math.e ** 2) ** rho * math.e / (2 * (1 - rho) ** (1 - rho))


@dataclass(frozen=True)
class PhaseConstants:
    rho: float
    regime: str
    c: float  # C_<, C_{1/2} or C_>
    d: float | None = None  # exponential base D_> above the threshold


def prob_constants(rho: float) -> PhaseConstants:
    """Constants of the leading-order behaviour of p(n, rho n).

    Below 1/2: p -> C_<. At 1/2: p ~ C_{1/2} n^(-1/6).
    Above 1/2: p ~ C_> n^(-1) D_>^n.
    """
    _check_rho(rho)
    if rho < 0.5:
        return PhaseConstants(rho, SUB, c_less(rho))
    if rho == 0.5:
        return PhaseConstants(rho, CRIT, C_HALF)
    return PhaseConstants(rho, SUPER, c_greater(rho), d_greater(rho))


def limit_L(rho: float) -> float:
    _check_rho(rho, closed=True)
    if rho >= 0.5:
        return 0.0
    return c_less(rho)


# --- exact probabilities -----------------------------------------------------

@dataclass(frozen=True)
class ExactProbability:
    value: Fraction

    def __float__(self) -> float:
        return float(self.value)


def prob_exact(n: int, m: int) -> ExactProbability:
    _check_nm(n, m)
    return ExactProbability(Fraction(exact_M_nm(n, m), n ** (n + m)))


def expected_pfs_per_tree(n: int) -> Fraction:
    """Mean number of full parking sequences of a uniform random rooted tree."""
    if n < 1:
        raise DomainError("n must be positive")
    return Fraction(exact_F_n(n), n ** (n - 1))


def expected_pfs_asymptotic_log(n: int) -> mpmath.mpf:
    """log of sqrt(2 pi) 2^(n+1) n^(n-1/2) / e^n."""
    N = mpmath.mpf(n)
    return 0.5 * mpmath.log(2 * mpmath.pi) + (N + 1) * mpmath.log(2) + (N - 0.5) * mpmath.log(N) - N


# --- sampling ----------------------------------------------------------------

def make_rng(seed) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed))


def sample_tree(n: int, rng: np.random.Generator) -> RootedTree:
    """Uniform rooted labelled tree: random Prüfer code plus random root."""
    if n < 1:
        raise DomainError("n must be positive")
    code = (rng.integers(1, n + 1, size=max(n - 2, 0))).tolist()
    root = int(rng.integers(1, n + 1))
    return _orient(n, _adjacency(n, _prufer_edges(n, code)), root)


def sample_mapping(n: int, rng: np.random.Generator) -> MappingFn:
    if n < 1:
        raise DomainError("n must be positive")
    return MappingFn(tuple(rng.integers(1, n + 1, size=n).tolist()))


def _parks(succ: list[int], prefs: list[int], n: int) -> bool:
    # succ and prefs are 0-based here
    occupied = bytearray(n)
    for v in prefs:
        steps = 0
        while occupied[v]:
            steps += 1
            if steps == n:
                return False
            v = succ[v]
        occupied[v] = 1
    return True


def _mc_block(args) -> int:
    n, m, count, seq = args
    rng = np.random.default_rng(seq)
    succ = rng.integers(0, n, size=(count, n)).tolist()
    prefs = rng.integers(0, n, size=(count, m)).tolist()
    return sum(_parks(f, s, n) for f, s in zip(succ, prefs))


@dataclass(frozen=True)
class MCEstimate:
    successes: int
    trials: int

    @property
    def p(self) -> float:
        return self.successes / self.trials

    @property
    def stderr(self) -> float:
        p = self.p
        return math.sqrt(p * (1 - p) / self.trials)


def mc_probability(n: int, m: int, trials: int, seed=0, workers: int = 1) -> MCEstimate:
    """Fraction of random (mapping, sequence) pairs that park.

    Trials are cut into fixed blocks, each with its own child seed, so the
    result does not depend on ``workers``.
    """
    _check_nm(n, m)
    if trials < 1:
        raise DomainError("trials must be at least 1")
    sizes = [MC_BLOCK] * (trials // MC_BLOCK)
    if trials % MC_BLOCK:
        sizes.append(trials % MC_BLOCK)
    children = np.random.SeedSequence(seed).spawn(len(sizes))
    jobs = [(n, m, k, ss) for k, ss in zip(sizes, children)]
    if workers <= 1 or len(jobs) == 1:
        hits = sum(map(_mc_block, jobs))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            hits = sum(pool.map(_mc_block, jobs))
    return MCEstimate(hits, trials)


# --- phase curve -------------------------------------------------------------

PHASE_COLUMNS = ("rho", "n", "p_exact", "p_mc", "mc_stderr", "asymptotic", "regime")


def drivers_for(rho, n: int) -> int:
    """floor(rho * n), taking rho as the decimal it was written as."""
    return math.floor(Fraction(str(rho)) * n)


def phase_rows(rhos: Sequence[float], ns: Sequence[int], trials: int = 0, seed=0,
               workers: int = 1, delta: float = DEFAULT_DELTA) -> list[dict]:
    rows = []
    for n in ns:
        for rho in rhos:
            _check_rho(rho, closed=True)
            m = drivers_for(rho, n)
            row = {"rho": rho, "n": n, "p_exact": float(prob_exact(n, m)),
                   "p_mc": None, "mc_stderr": None}
            if trials:
                est = mc_probability(n, m, trials, seed=[seed, n, m], workers=workers)
                row["p_mc"], row["mc_stderr"] = est.p, est.stderr
            a = asymp_M(n, m, delta)
            row["asymptotic"], row["regime"] = a.probability, a.regime
            rows.append(row)
    return rows
