"""Closed-form parameter, tail-bound, and threshold computations.

Everything here is a pure function of (n, m, p) or of small integer
parameters.  Probabilities are computed in log space and summed with
compensated summation; threshold values are exact rationals when the inputs
are integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import exp, lgamma, log

from .errors import BoundInapplicableError, ConfigError

_TIE_WINDOW = 1e-9


@dataclass(frozen=True)
class RegimeParams:
    """Derived quantities for one (n, m, p) regime."""

    n: int
    m: int
    p: float
    t: int
    tau: float
    q_face: float
    c1: float | None
    bound1: float | None
    c2: float | None
    bound2: float | None
    kappa: float

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "p": self.p,
            "t": self.t,
            "tau": self.tau,
            "q_face": self.q_face,
            "c1": self.c1,
            "bound1": self.bound1,
            "c2": self.c2,
            "bound2": self.bound2,
            "kappa": self.kappa,
        }


def _validate_nmp(n: int, m: int, p: float) -> None:
    if not 0.0 < p < 1.0:
        raise ConfigError(f"need 0 < p < 1, got {p}")
    if not 1 <= m < n:
        raise ConfigError(f"need 1 <= m < n, got m={m}, n={n}")


def compute_t_tau(n: int, m: int, p: float) -> tuple[int, float]:
    """Round log_p(m/n) to the nearest integer, smaller on half-integer ties.

    Returns (t, tau) with tau = t - log_p(m/n) and |tau| <= 1/2.  Ties are
    detected within a 1e-9 window on the fractional part (floats cannot
    certify exact half-integers in general), and resolved to the smaller t.
    """
    _validate_nmp(n, m, p)
    e = log(m / n) / log(p)
    floor_e = math.floor(e)
    frac = e - floor_e
    if frac > 0.5 + _TIE_WINDOW:
        t = floor_e + 1
    else:
        # below the window, or a tie: both take the smaller integer
        t = floor_e
    return t, t - e


def binomial_tail(trials: int, prob: float, m: int, direction: str = ">=") -> float:
    """Exact binomial tail P(B >= m) or P(B <= m) for B ~ Bin(trials, prob).

    Terms are evaluated in log space and combined with math.fsum; the side
    with fewer terms is summed and complemented when cheaper.
    """
    if direction not in (">=", "<="):
        raise ConfigError(f"direction must be '>=' or '<=', got {direction!r}")
    if not 0 <= m <= trials:
        raise ConfigError(f"need 0 <= m <= trials, got m={m}, trials={trials}")
    if not 0.0 <= prob <= 1.0:
        raise ConfigError(f"probability {prob} outside [0, 1]")

    if prob == 0.0:
        hit = m == 0 if direction == ">=" else True
        return 1.0 if hit else 0.0
    if prob == 1.0:
        hit = True if direction == ">=" else m == trials
        return 1.0 if hit else 0.0

    lp = log(prob)
    lq = math.log1p(-prob)

    def mass(lo: int, hi: int) -> float:
        terms = [
            lgamma(trials + 1) - lgamma(k + 1) - lgamma(trials - k + 1) + k * lp + (trials - k) * lq
            for k in range(lo, hi + 1)
        ]
        return math.fsum(exp(t) for t in terms)

    if direction == ">=":
        lo, hi = m, trials
    else:
        lo, hi = 0, m
    if hi - lo <= trials - (hi - lo):
        return min(1.0, mass(lo, hi))
    if direction == ">=":
        return min(1.0, max(0.0, 1.0 - mass(0, m - 1)))
    return min(1.0, max(0.0, 1.0 - mass(m + 1, trials)))


def face_probability_q(n: int, m: int, p: float) -> float:
    """Marginal probability that a fixed t-set is a face: P(Bin(n-t, p^t) >= m)."""
    t, _ = compute_t_tau(n, m, p)
    return binomial_tail(n - t, p**t, m, ">=")


def hoeffding_bound(trials: int, prob: float, m: int, direction: str = ">=") -> float:
    """Hoeffding tail bound exp[-(2/trials)(trials*prob - m)^2].

    Applicable only when m is on the far side of the mean for the requested
    direction.
    """
    if direction not in (">=", "<="):
        raise ConfigError(f"direction must be '>=' or '<=', got {direction!r}")
    mean = trials * prob
    if direction == ">=" and not m > mean:
        raise BoundInapplicableError(f"need m > mean for '>=', got m={m}, mean={mean}")
    if direction == "<=" and not m < mean:
        raise BoundInapplicableError(f"need m < mean for '<=', got m={m}, mean={mean}")
    return exp(-(2.0 / trials) * (mean - m) ** 2)


def chernoff_lower_bound(mu: float, delta: float) -> float:
    """Bernstein–Chernoff bound exp(-delta^2 * mu / 2) on P[S <= (1-delta)*mu]."""
    if mu <= 0:
        raise ConfigError(f"mean must be positive, got {mu}")
    if not 0.0 < delta <= 1.0:
        raise ConfigError(f"delta must lie in (0, 1], got {delta}")
    return exp(-(delta**2) * mu / 2.0)


def lemma_face_bounds(n: int, m: int, p: float) -> dict:
    """Hoeffding-derived constants and bounds on over/under-sized faces.

    bound1 = exp(-c1*m^2/n) bounds the probability that a fixed (t+1)-set is
    a face; bound2 = exp(-c2*m^2/n) bounds the probability that a fixed
    (t-1)-set is not a face (the latter requires n >= 9).
    """
    if n < 9:
        raise ConfigError(f"need n >= 9, got {n}")
    _validate_nmp(n, m, p)
    c1 = 0.5 if p <= 0.25 else 2.0 * (1.0 - math.sqrt(p)) ** 2
    c2 = 1.0 / 3.0 if p <= 0.25 else (1.0 / 3.0) * (1.0 / math.sqrt(p) - 1.0) ** 2
    ratio = m * m / n
    return {
        "c1": c1,
        "bound1": exp(-c1 * ratio),
        "c2": c2,
        "bound2": exp(-c2 * ratio),
    }


def kappa(n: int, m: int, p: float) -> float:
    """m^2 * (-ln p) / (n * (ln n)^2), the divergence rate in the support theorem."""
    if not 0.0 < p < 1.0:
        raise ConfigError(f"need 0 < p < 1, got {p}")
    if n < 2:
        raise ConfigError(f"need n >= 2, got {n}")
    return m * m * (-log(p)) / (n * log(n) ** 2)


def regime_params(n: int, m: int, p: float) -> RegimeParams:
    """All derived regime quantities for one (n, m, p)."""
    t, tau = compute_t_tau(n, m, p)
    bounds = lemma_face_bounds(n, m, p) if n >= 9 else None
    return RegimeParams(
        n=n,
        m=m,
        p=p,
        t=t,
        tau=tau,
        q_face=face_probability_q(n, m, p),
        c1=bounds["c1"] if bounds else None,
        bound1=bounds["bound1"] if bounds else None,
        c2=bounds["c2"] if bounds else None,
        bound2=bounds["bound2"] if bounds else None,
        kappa=kappa(n, m, p),
    )


# -- asymptotic-condition diagnostics ---------------------------------------


@dataclass(frozen=True)
class ParameterFamily:
    """Evaluable rules n -> (p_n, m_n) describing a parameter sequence."""

    p_of_n: object  # Callable[[int], float]
    m_of_n: object  # Callable[[int], int]
    label: str = ""


@dataclass(frozen=True)
class Theorem1Report:
    rows: tuple          # per-n dicts: n, p, m, t, growth, kappa
    condition: int | None
    details: str


def theorem1_condition_check(family: ParameterFamily, n_grid) -> Theorem1Report:
    """Numerically classify a parameter family against the three condition
    pairs under which the complex support concentrates.

    Condition 1: constant p with m^2/(n ln^2 n) diverging.
    Condition 2: p -> 0 with (-ln p) m^2/(n ln^2 n) staying above 4.
    Condition 3: constant m and p = n^(-1/b) for a constant b lying in
    (t-1, m(t+1)/(m+t+1)) for some integer t < sqrt(2m+1).
    """
    n_grid = sorted(int(n) for n in n_grid)
    if len(n_grid) < 2:
        raise ConfigError("need at least two grid points")
    rows = []
    for n in n_grid:
        try:
            p = float(family.p_of_n(n))
            m = int(family.m_of_n(n))
        except Exception as exc:
            raise ConfigError(f"malformed family rules at n={n}: {exc}") from exc
        _validate_nmp(n, m, p)
        t, _ = compute_t_tau(n, m, p)
        rows.append(
            {
                "n": n,
                "p": p,
                "m": m,
                "t": t,
                "growth": m * m / (n * log(n) ** 2),
                "kappa": kappa(n, m, p),
            }
        )

    ps = [r["p"] for r in rows]
    ms = [r["m"] for r in rows]
    growth = [r["growth"] for r in rows]
    kappas = [r["kappa"] for r in rows]

    p_constant = all(abs(p - ps[0]) <= 1e-12 for p in ps)
    p_decreasing = all(b < a for a, b in zip(ps, ps[1:]))
    diverging = (
        all(b > a for a, b in zip(growth, growth[1:])) and growth[-1] >= 2 * growth[0]
    )
    if p_constant and diverging:
        return Theorem1Report(tuple(rows), 1, "constant p, m^2/(n ln^2 n) increasing")

    tail = kappas[len(kappas) // 2 :]
    if p_decreasing and all(k > 4 for k in tail):
        return Theorem1Report(tuple(rows), 2, "p decreasing, kappa > 4 on the tail")

    m_constant = all(m == ms[0] for m in ms)
    bs = [-log(n) / log(p) for n, p in zip(n_grid, ps)]
    b_constant = all(abs(b - bs[0]) <= 1e-9 * max(1.0, abs(bs[0])) for b in bs)
    if m_constant and b_constant:
        m0, b = ms[0], bs[0]
        t_max = math.isqrt(2 * m0)  # integer t < sqrt(2m+1) <=> t*t <= 2m
        for t in range(1, t_max + 1):
            hi = m0 * (t + 1) / (m0 + t + 1)
            if t - 1 < b < hi:
                return Theorem1Report(
                    tuple(rows), 3, f"constant m={m0}, b={b:.6g} in ({t - 1}, {hi:.6g}) for t={t}"
                )
    return Theorem1Report(tuple(rows), None, "no condition pair matched")


# -- threshold formulas ------------------------------------------------------


@dataclass(frozen=True)
class CorollaryInterval:
    exists_interval: bool
    constant_interval: tuple[Fraction, Fraction] | None


def corollary_interval(k: int, m: int) -> CorollaryInterval:
    """Interval of density exponents with concentrated support class.

    An interval exists iff k < sqrt(2m+1); when additionally k^2 + k < m the
    support is a single deterministic complex for exponents in
    (max{k, mk/(m+k)}, min{k+1, m(k+1)/(m+k+1)}).
    """
    if k < 1 or m < 1:
        raise ConfigError("k and m must be >= 1")
    exists = k * k < 2 * m + 1
    interval = None
    if k * k + k < m:
        lo = max(Fraction(k), Fraction(m * k, m + k))
        hi = min(Fraction(k + 1), Fraction(m * k + m, m + k + 1))
        if lo < hi:
            interval = (lo, hi)
    return CorollaryInterval(exists, interval)


@dataclass(frozen=True)
class ThresholdSet:
    """Two-facet thresholds: k-sets of size k sharing ell vertices, m witnesses."""

    k: int
    ell: int
    m: int
    crossover_m: Fraction          # witness count above which the pair regime opens
    pair_threshold: Fraction       # appearance of an ell-sharing pair of faces
    all_faces_threshold: Fraction  # appearance of every (k+1)-set obstruction
    has_third_phenomenon: bool

    def pair_count_exponent(self, beta) -> Fraction:
        """log_n of the expected number of ell-sharing face pairs at p = n^(-1/beta)."""
        beta = Fraction(beta)
        return Fraction(2 * self.k + 2 * self.m - self.ell) - Fraction(2 * self.k * self.m) / beta

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "ell": self.ell,
            "m": self.m,
            "crossover_m": str(self.crossover_m),
            "pair_threshold": str(self.pair_threshold),
            "all_faces_threshold": str(self.all_faces_threshold),
            "has_third_phenomenon": self.has_third_phenomenon,
        }


def two_facet_thresholds(k: int, ell: int, m: int) -> ThresholdSet:
    """Exact thresholds for a pair of k-vertex facets sharing ell vertices."""
    if not 1 <= ell < k:
        raise ConfigError(f"need 1 <= ell < k, got ell={ell}, k={k}")
    if m < 1:
        raise ConfigError("m must be >= 1")
    crossover = Fraction(ell * (2 * k - ell), 2 * (k - ell))
    return ThresholdSet(
        k=k,
        ell=ell,
        m=m,
        crossover_m=crossover,
        pair_threshold=Fraction(2 * k * m, 2 * k + 2 * m - ell),
        all_faces_threshold=Fraction((k + 1) * m, k + 1 + m),
        has_third_phenomenon=Fraction(m) > crossover,
    )
