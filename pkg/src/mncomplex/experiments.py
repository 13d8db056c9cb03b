"""Monte Carlo harness and exact small-n enumeration.

Trials are the unit of parallelism.  Every trial derives its RNG stream from
(master_seed, global trial index), and records are merged in (grid point,
trial) order, so output is bit-identical at any worker-pool width.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .census import count_copies
from .complexes import SimplicialComplex, m_neighbor_complex, support_class
from .errors import BudgetExceededError, ConfigError
from .graph_core import Graph, Seed, common_neighbor_count, sample_er
from .regime import compute_t_tau, face_probability_q
from .shapes import shape_from_complex

EXPERIMENT_KINDS = ("support", "copies", "threshold", "tv", "covariance", "ratio")


@dataclass
class ExperimentConfig:
    """Parameters of one experiment run."""

    kind: str
    trials: int = 1
    master_seed: int = 0
    threads: int = 1
    output: str | None = None
    # grid axes; which ones apply depends on the kind
    n_values: tuple = ()
    m_values: tuple = ()
    p_values: tuple = ()
    beta_values: tuple = ()
    k: int | None = None
    cap: int | None = None
    x_facets: tuple = ()          # facets of a target complex, as vertex tuples
    property: str | None = None   # threshold probe: contains-x | all-k-faces | some-k-face
    q_rule: str = "theorem"       # tv probe: theorem | conjecture
    budget: int = 10**7

    def validate(self) -> "ExperimentConfig":
        if self.kind not in EXPERIMENT_KINDS:
            raise ConfigError(f"unknown experiment kind {self.kind!r}")
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if self.threads < 1:
            raise ConfigError("threads must be >= 1")
        return self

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "trials": self.trials,
            "master_seed": self.master_seed,
            "threads": self.threads,
            "output": self.output,
            "n_values": list(self.n_values),
            "m_values": list(self.m_values),
            "p_values": list(self.p_values),
            "beta_values": list(self.beta_values),
            "k": self.k,
            "cap": self.cap,
            "x_facets": [list(f) for f in self.x_facets],
            "property": self.property,
            "q_rule": self.q_rule,
            "budget": self.budget,
        }


def _mean_stderr(values) -> tuple[float, float]:
    values = list(values)
    n = len(values)
    mean = sum(values) / n
    if n < 2:
        return mean, 0.0
    var = sum((v - mean) ** 2 for v in values) / (n - 1)
    return mean, math.sqrt(var / n)


def _run_tasks(worker, tasks, threads: int):
    """Run worker over tasks, deterministically ordered regardless of width."""
    if threads <= 1:
        results = [worker(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(worker, tasks, chunksize=1))
    return results


def target_complex_from_facets(x_facets) -> SimplicialComplex:
    """Downward-closed complex generated by the given facets."""
    faces = set()
    verts = sorted({v for f in x_facets for v in f})
    if not verts:
        raise ConfigError("target complex needs at least one facet vertex")
    if verts[0] < 0:
        raise ConfigError("facet vertices must be nonnegative integers")
    n = verts[-1] + 1
    for f in x_facets:
        f = tuple(sorted(set(f)))
        for c in range(1, len(f) + 1):
            faces.update(itertools.combinations(f, c))
    return SimplicialComplex.from_faces(n, faces)


# -- support census -----------------------------------------------------------


def _support_trial(task: dict) -> dict:
    n, m, p = task["n"], task["m"], task["p"]
    t = task["t"]
    cap = task["cap"]
    g = sample_er(n, p, Seed(task["master_seed"], task["stream"]))
    kx = m_neighbor_complex(g, m, cap)
    rep = support_class(kx, t)
    rec = {
        "n": n,
        "m": m,
        "p": p,
        "t": t,
        "trial": task["trial"],
        "in_y": int(rep.in_y),
    }
    for label, c in (("below", t - 1), ("at", t), ("above", t + 1)):
        count = rep.counts.get(c, 0)
        rec[f"count_{label}"] = count
        rec[f"ratio_{label}"] = count / comb(n, c) if 1 <= c <= n else 0.0
    return rec


def run_support_census(config: ExperimentConfig):
    """Face-count ratios around cardinality t and the Y-membership rate."""
    config.validate()
    grid = [
        {"n": n, "m": m, "p": p}
        for n in config.n_values
        for m in config.m_values
        for p in config.p_values
    ]
    if not grid:
        raise ConfigError("support census needs n, m, and p grids")
    tasks = []
    for gi, point in enumerate(grid):
        t, _ = compute_t_tau(point["n"], point["m"], point["p"])
        cap = config.cap if config.cap is not None else t + 2
        if cap < t + 1:
            raise ConfigError(f"cap {cap} too low to certify membership at t={t}")
        for trial in range(config.trials):
            tasks.append(
                {
                    **point,
                    "t": t,
                    "cap": cap,
                    "trial": trial,
                    "stream": gi * config.trials + trial,
                    "master_seed": config.master_seed,
                }
            )
    records = _run_tasks(_support_trial, tasks, config.threads)
    records.sort(key=lambda r: (r["n"], r["m"], r["p"], r["trial"]))

    summary = []
    for point in grid:
        rows = [
            r
            for r in records
            if (r["n"], r["m"], r["p"]) == (point["n"], point["m"], point["p"])
        ]
        q = face_probability_q(point["n"], point["m"], point["p"])
        mean_at, se_at = _mean_stderr([r["ratio_at"] for r in rows])
        summary.append(
            {
                **point,
                "t": rows[0]["t"],
                "trials": len(rows),
                "q_face": q,
                "frac_in_y": sum(r["in_y"] for r in rows) / len(rows),
                "mean_ratio_below": _mean_stderr([r["ratio_below"] for r in rows])[0],
                "mean_ratio_at": mean_at,
                "stderr_ratio_at": se_at,
                "mean_ratio_above": _mean_stderr([r["ratio_above"] for r in rows])[0],
            }
        )
    return records, summary


# -- copy-count sweep ----------------------------------------------------------


def _copy_trial(task: dict) -> dict:
    n, m, beta = task["n"], task["m"], task["beta"]
    p = n ** (-1.0 / beta)
    g = sample_er(n, p, Seed(task["master_seed"], task["stream"]))
    kx = m_neighbor_complex(g, m, task["cap"])
    x = target_complex_from_facets(task["x_facets"])
    return {
        "n": n,
        "m": m,
        "beta": beta,
        "p": p,
        "trial": task["trial"],
        "copies": count_copies(kx, x),
    }


def run_copy_count_sweep(config: ExperimentConfig):
    """Mean labeled copy counts of a target complex across an (n, m, beta) grid."""
    config.validate()
    if not config.x_facets:
        raise ConfigError("copy sweep needs target facets")
    x = target_complex_from_facets(config.x_facets)
    cap = max(len(f) for f in config.x_facets)
    grid = [
        {"n": n, "m": m, "beta": b}
        for n in config.n_values
        for m in config.m_values
        for b in config.beta_values
    ]
    if not grid:
        raise ConfigError("copy sweep needs n, m, and beta grids")
    tasks = [
        {
            **point,
            "cap": cap,
            "x_facets": config.x_facets,
            "trial": trial,
            "stream": gi * config.trials + trial,
            "master_seed": config.master_seed,
        }
        for gi, point in enumerate(grid)
        for trial in range(config.trials)
    ]
    records = _run_tasks(_copy_trial, tasks, config.threads)
    records.sort(key=lambda r: (r["n"], r["m"], r["beta"], r["trial"]))
    summary = []
    for point in grid:
        rows = [
            r
            for r in records
            if (r["n"], r["m"], r["beta"]) == (point["n"], point["m"], point["beta"])
        ]
        mean, se = _mean_stderr([r["copies"] for r in rows])
        summary.append({**point, "trials": len(rows), "mean_copies": mean, "stderr": se})
    shape = shape_from_complex(x)
    extras = {"shape_cap": list(shape.cap), "phi": shape.phi}
    if shape.pure_value() is not None:
        from .shapes import m_density

        extras["predicted_thresholds"] = {
            str(m): str(m_density(shape, m, config.budget)) for m in config.m_values
        }
    return records, summary, extras


# -- threshold probe -----------------------------------------------------------

THRESHOLD_PROPERTIES = ("contains-x", "all-k-faces", "some-k-face")


def _threshold_trial(task: dict) -> dict:
    n, m, beta = task["n"], task["m"], task["beta"]
    p = n ** (-1.0 / beta)
    g = sample_er(n, p, Seed(task["master_seed"], task["stream"]))
    prop = task["property"]
    if prop == "contains-x":
        kx = m_neighbor_complex(g, m, task["cap"])
        x = target_complex_from_facets(task["x_facets"])
        has = count_copies(kx, x) > 0
    else:
        k = task["k"]
        kx = m_neighbor_complex(g, m, k)
        if prop == "all-k-faces":
            has = kx.face_count(k) == comb(n, k)
        else:
            has = kx.face_count(k) > 0
    return {
        "property": prop,
        "n": n,
        "m": m,
        "beta": beta,
        "p": p,
        "trial": task["trial"],
        "has_property": int(has),
    }


def run_threshold_probe(config: ExperimentConfig):
    """Empirical probability curves for a monotone property across beta and n."""
    config.validate()
    prop = config.property
    if prop not in THRESHOLD_PROPERTIES:
        raise ConfigError(f"property must be one of {THRESHOLD_PROPERTIES}, got {prop!r}")
    if prop == "contains-x":
        if not config.x_facets:
            raise ConfigError("contains-x probe needs target facets")
        x = target_complex_from_facets(config.x_facets)
        shape = shape_from_complex(x)
        from .shapes import m_density

        predicted = {
            str(m): str(m_density(shape, m, config.budget)) for m in config.m_values
        }
        cap = max(len(f) for f in config.x_facets)
        k = None
    else:
        if config.k is None:
            raise ConfigError(f"{prop} probe needs k")
        k = config.k
        cap = k
        if prop == "all-k-faces":
            predicted = {str(m): str(Fraction(k)) for m in config.m_values}
        else:
            predicted = {
                str(m): str(Fraction(m * k, m + k)) for m in config.m_values
            }
    grid = [
        {"n": n, "m": m, "beta": b}
        for n in config.n_values
        for m in config.m_values
        for b in config.beta_values
    ]
    if not grid:
        raise ConfigError("threshold probe needs n, m, and beta grids")
    tasks = [
        {
            **point,
            "property": prop,
            "k": k,
            "cap": cap,
            "x_facets": config.x_facets,
            "trial": trial,
            "stream": gi * config.trials + trial,
            "master_seed": config.master_seed,
        }
        for gi, point in enumerate(grid)
        for trial in range(config.trials)
    ]
    records = _run_tasks(_threshold_trial, tasks, config.threads)
    records.sort(key=lambda r: (r["n"], r["m"], r["beta"], r["trial"]))
    summary = []
    for point in grid:
        rows = [
            r
            for r in records
            if (r["n"], r["m"], r["beta"]) == (point["n"], point["m"], point["beta"])
        ]
        summary.append(
            {
                **point,
                "property": prop,
                "trials": len(rows),
                "fraction": sum(r["has_property"] for r in rows) / len(rows),
                "predicted_threshold": predicted[str(point["m"])],
            }
        )
    return records, summary


# -- exact small-n enumeration ---------------------------------------------


def _all_graphs(n: int):
    """Every labeled graph on [n] with its edge count, via edge bitmasks."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        rows = [0] * n
        edges = 0
        mm = mask
        while mm:
            idx = (mm & -mm).bit_length() - 1
            u, v = pairs[idx]
            rows[u] |= 1 << v
            rows[v] |= 1 << u
            edges += 1
            mm &= mm - 1
        yield Graph(n, rows, validate=False), edges, len(pairs)


def q_from_rule(n: int, k: int, m: int, beta: float, rule: str) -> float:
    """The two published q scalings; they disagree, so both are selectable."""
    if rule == "theorem":
        return float(n) ** (m * (1.0 - k / beta))
    if rule == "conjecture":
        return float(n) ** (-k * m / beta)
    raise ConfigError(f"unknown q rule {rule!r}")


@dataclass(frozen=True)
class ExactDistributionResult:
    gamma_dist: dict       # canonical complex key -> probability
    lm_dist: dict
    tv_distance: float
    notes: tuple = ()


def exact_small_distribution(
    n: int, m: int, p: float, k: int, q: float
) -> ExactDistributionResult:
    """Exact distributions of the m-neighbor complex of G(n, p) and of the
    skeleton-plus-independent-k-faces model, with their total variation
    distance over labeled complexes."""
    if n > 6:
        raise BudgetExceededError(f"full graph enumeration infeasible for n={n} > 6")
    if not 0.0 <= p <= 1.0 or not 0.0 <= q <= 1.0:
        raise ConfigError("p and q must lie in [0, 1]")
    if not 1 <= k <= n:
        raise ConfigError(f"need 1 <= k <= n, got k={k}")

    gamma: dict = {}
    for g, edges, total_pairs in _all_graphs(n):
        weight = p**edges * (1.0 - p) ** (total_pairs - edges)
        if weight == 0.0:
            continue
        kx = m_neighbor_complex(g, m, n)
        key = kx.canonical_key()
        gamma[key] = gamma.get(key, 0.0) + weight

    lm: dict = {}
    skeleton = [
        (c, tuple(itertools.combinations(range(n), c))) for c in range(1, k)
    ]
    ksets = list(itertools.combinations(range(n), k))
    for chosen_mask in range(1 << len(ksets)):
        j = chosen_mask.bit_count()
        weight = q**j * (1.0 - q) ** (len(ksets) - j)
        if weight == 0.0:
            continue
        faces = list(skeleton)
        chosen = tuple(
            f for i, f in enumerate(ksets) if chosen_mask >> i & 1
        )
        if chosen:
            faces.append((k, chosen))
        key = tuple(faces)
        lm[key] = lm.get(key, 0.0) + weight

    keys = set(gamma) | set(lm)
    tv = 0.5 * math.fsum(abs(gamma.get(key, 0.0) - lm.get(key, 0.0)) for key in keys)
    notes = (
        "q scalings: appearance-ratio rule n^(m(1-k/beta)) vs "
        "vanishing-distance rule n^(-km/beta); pass the one you mean.",
    )
    return ExactDistributionResult(gamma, lm, tv, notes)


def exact_face_probability(n: int, m: int, p: float, face) -> float:
    """P(face in complex) by full graph enumeration (oracle for the binomial form)."""
    if n > 6:
        raise BudgetExceededError(f"full graph enumeration infeasible for n={n} > 6")
    face = tuple(sorted(face))
    terms = []
    for g, edges, total_pairs in _all_graphs(n):
        if common_neighbor_count(g, face) >= m:
            terms.append(p**edges * (1.0 - p) ** (total_pairs - edges))
    return math.fsum(terms)


def face_covariance_probe(n: int, m: int, p: float, f1, f2) -> Fraction:
    """Exact covariance of the two face indicators under G(n, p).

    Computed with exact rational weights so the sign is certain.
    """
    if n > 6:
        raise BudgetExceededError(f"full graph enumeration infeasible for n={n} > 6")
    f1 = tuple(sorted(f1))
    f2 = tuple(sorted(f2))
    pf = Fraction(*float(p).as_integer_ratio())
    e_x = Fraction(0)
    e_y = Fraction(0)
    e_xy = Fraction(0)
    for g, edges, total_pairs in _all_graphs(n):
        w = pf**edges * (1 - pf) ** (total_pairs - edges)
        x = common_neighbor_count(g, f1) >= m
        y = common_neighbor_count(g, f2) >= m
        if x:
            e_x += w
        if y:
            e_y += w
        if x and y:
            e_xy += w
    return e_xy - e_x * e_y


# -- appearance-ratio probe --------------------------------------------------


def _ratio_trial(task: dict) -> dict:
    n, m, beta = task["n"], task["m"], task["beta"]
    p = n ** (-1.0 / beta)
    g = sample_er(n, p, Seed(task["master_seed"], task["stream"]))
    kx = m_neighbor_complex(g, m, task["cap"])
    x = target_complex_from_facets(task["x_facets"])
    return {
        "n": n,
        "m": m,
        "beta": beta,
        "p": p,
        "trial": task["trial"],
        "copies": count_copies(kx, x),
    }


def falling_factorial(n: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= n - i
    return out


def expected_copies_lm(n: int, x0: int, phi: int, q: float) -> float:
    """Expected labeled copies under the independent-faces model: each of the
    (n)_{x0} injections needs its phi distinct facet images present."""
    return falling_factorial(n, x0) * q**phi


def theorem3_ratio_probe(config: ExperimentConfig):
    """Monte Carlo estimate of the copy-count ratio between the two models.

    Hypothesis violations are reported as flags; the probe still runs.
    """
    config.validate()
    if not config.x_facets:
        raise ConfigError("ratio probe needs target facets")
    if len(config.m_values) != 1 or len(config.beta_values) != 1:
        raise ConfigError("ratio probe takes a single m and a single beta")
    m = config.m_values[0]
    beta = config.beta_values[0]
    x = target_complex_from_facets(config.x_facets)
    shape = shape_from_complex(x)
    k = shape.pure_value()
    phi = shape.phi
    x0 = shape.x0
    flags = []
    if k is None:
        flags.append("target complex is not pure; hypothesis checks skipped")
    else:
        if not m > k * x0 * phi:
            flags.append(f"hypothesis m > k*x0*phi violated: {m} <= {k * x0 * phi}")
        lo = Fraction(k * m * phi, x0 + m * phi)
        if not (lo < Fraction(beta).limit_denominator(10**9) < k):
            flags.append(
                f"hypothesis {lo} < beta < {k} violated for beta={beta}"
            )
    cap = max(len(f) for f in config.x_facets)
    tasks = [
        {
            "n": n,
            "m": m,
            "beta": beta,
            "cap": cap,
            "x_facets": config.x_facets,
            "trial": trial,
            "stream": gi * config.trials + trial,
            "master_seed": config.master_seed,
        }
        for gi, n in enumerate(config.n_values)
        for trial in range(config.trials)
    ]
    if not tasks:
        raise ConfigError("ratio probe needs an n grid")
    records = _run_tasks(_ratio_trial, tasks, config.threads)
    records.sort(key=lambda r: (r["n"], r["trial"]))
    summary = []
    for n in config.n_values:
        rows = [r for r in records if r["n"] == n]
        mean, se = _mean_stderr([r["copies"] for r in rows])
        q = q_from_rule(n, k if k is not None else 0, m, beta, "theorem")
        expected = expected_copies_lm(n, x0, phi, q)
        summary.append(
            {
                "n": n,
                "m": m,
                "beta": beta,
                "trials": len(rows),
                "mean_copies": mean,
                "stderr": se,
                "q": q,
                "expected_copies_lm": expected,
                "ratio": mean / expected if expected > 0 else float("nan"),
            }
        )
    return records, summary, {"flags": flags, "qualitative": True}
