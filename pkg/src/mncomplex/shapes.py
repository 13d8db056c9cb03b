"""Facet-shape algebra: intersection/exclusive/union versions over the subset
lattice of a facet set, pointwise products, exact pair densities, and the
witness-minimizing density that governs appearance thresholds.

Subsets A of the facet set F = {0..phi-1} are indexed by bitmask: bit i of
the index corresponds to facet i.  All densities are exact ``Fraction``
values so that ties (e.g. 3 < 3) are never blurred by floats.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from math import prod

from .errors import BudgetExceededError, ConfigError

VERSIONS = ("cap", "excl", "cup")


def _subsets_of(a: int):
    """All subsets of bitmask a, including 0 and a itself."""
    sub = a
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & a


def _supersets_of(a: int, full: int):
    rest = full & ~a
    sub = rest
    while True:
        yield a | sub
        if sub == 0:
            return
        sub = (sub - 1) & rest


def convert_version(values, frm: str, to: str, phi: int):
    """Convert a subset-indexed vector between the cap/excl/cup versions.

    Each direction is an explicit inclusion-exclusion formula over the
    subset lattice; conversions compose to the identity on valid shapes.
    """
    if frm not in VERSIONS or to not in VERSIONS:
        raise ConfigError(f"unknown version in {frm!r} -> {to!r}")
    size = 1 << phi
    values = list(values)
    if len(values) != size:
        raise ConfigError(f"expected vector of length {size}, got {len(values)}")
    if frm == to:
        return list(values)
    full = size - 1

    if frm == "cap" and to == "cup":
        return [
            sum((-1) ** (b.bit_count() - 1) * values[b] for b in _subsets_of(a) if b)
            for a in range(size)
        ]
    if frm == "cap" and to == "excl":
        return [
            sum(
                (-1) ** (b.bit_count() - a.bit_count()) * values[b]
                for b in _supersets_of(a, full)
            )
            for a in range(size)
        ]
    if frm == "excl" and to == "cup":
        return [
            sum(values[b] for b in range(size) if b & a)
            for a in range(size)
        ]
    if frm == "excl" and to == "cap":
        return [
            sum(values[b] for b in _supersets_of(a, full))
            for a in range(size)
        ]
    if frm == "cup" and to == "cap":
        return [
            values[full]
            if a == 0
            else sum((-1) ** (b.bit_count() - 1) * values[b] for b in _subsets_of(a) if b)
            for a in range(size)
        ]
    if frm == "cup" and to == "excl":
        # B ranges over all subsets of A including the empty set; the empty
        # subset slot of the result is fixed at zero.
        return [
            0
            if a == 0
            else sum(
                (-1) ** (a.bit_count() - b.bit_count() + 1) * values[full & ~b]
                for b in _subsets_of(a)
            )
            for a in range(size)
        ]
    raise AssertionError("unreachable")


@dataclass(frozen=True)
class FShape:
    """Integer shape of an F-set: the three linked subset-lattice vectors.

    Valid shapes satisfy cap[0] == cup[F] (the empty-intersection slot is
    the ground-set size) and hence excl[0] == 0.
    """

    phi: int
    cap: tuple
    excl: tuple
    cup: tuple

    def __post_init__(self):
        size = 1 << self.phi
        for name in VERSIONS:
            if len(getattr(self, name)) != size:
                raise ConfigError(f"{name} vector must have length {size}")

    @classmethod
    def from_cap(cls, cap, phi: int | None = None) -> "FShape":
        cap = tuple(cap)
        if phi is None:
            phi = (len(cap)).bit_length() - 1
        if 1 << phi != len(cap):
            raise ConfigError(f"cap length {len(cap)} is not 2^phi for phi={phi}")
        excl = convert_version(cap, "cap", "excl", phi)
        if excl[0] != 0:
            raise ConfigError(
                f"inconsistent shape: cap[0]={cap[0]} differs from cup[F]={cap[0] - excl[0]}"
            )
        cup = convert_version(cap, "cap", "cup", phi)
        return cls(phi, cap, tuple(excl), tuple(cup))

    @classmethod
    def from_excl(cls, excl, phi: int | None = None) -> "FShape":
        excl = tuple(excl)
        if phi is None:
            phi = (len(excl)).bit_length() - 1
        if 1 << phi != len(excl):
            raise ConfigError(f"excl length {len(excl)} is not 2^phi for phi={phi}")
        if excl[0] != 0:
            raise ConfigError("excl[0] must be 0")
        cap = convert_version(excl, "excl", "cap", phi)
        cup = convert_version(excl, "excl", "cup", phi)
        return cls(phi, tuple(cap), excl, tuple(cup))

    @classmethod
    def from_cup(cls, cup, phi: int | None = None) -> "FShape":
        cup = tuple(cup)
        if phi is None:
            phi = (len(cup)).bit_length() - 1
        if 1 << phi != len(cup):
            raise ConfigError(f"cup length {len(cup)} is not 2^phi for phi={phi}")
        if cup[0] != 0:
            raise ConfigError("cup[0] must be 0")
        cap = convert_version(cup, "cup", "cap", phi)
        excl = convert_version(cup, "cup", "excl", phi)
        return cls(phi, tuple(cap), tuple(excl), cup)

    @property
    def x0(self) -> int:
        """Ground-set size: the shared value cap[0] == cup[F]."""
        return self.cap[0]

    def is_nonnegative(self) -> bool:
        return all(e >= 0 for e in self.excl)

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.excl)

    def pure_value(self) -> int | None:
        """The common singleton-cap value, or None if not pure."""
        singles = [self.cap[1 << i] for i in range(self.phi)]
        return singles[0] if all(s == singles[0] for s in singles) else None

    def singleton_caps(self) -> tuple:
        return tuple(self.cap[1 << i] for i in range(self.phi))

    def to_json(self) -> str:
        return json.dumps({"phi": self.phi, "cap": list(self.cap)})

    @classmethod
    def from_json(cls, text: str) -> "FShape":
        obj = json.loads(text)
        try:
            return cls.from_cap(obj["cap"], phi=int(obj["phi"]))
        except (KeyError, TypeError) as exc:
            raise ConfigError(f"bad shape JSON: {exc}") from exc


@dataclass(frozen=True)
class FSetWitness:
    """Assignment of a finite label set to each facet; ground set is the union."""

    sets: tuple  # tuple of frozensets, one per facet

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(frozenset(s) for s in self.sets))

    @property
    def phi(self) -> int:
        return len(self.sets)

    @property
    def ground(self) -> frozenset:
        return frozenset().union(*self.sets) if self.sets else frozenset()

    def shape(self) -> FShape:
        return shape_from_facets(self.sets)

    def is_m_pure(self, m: int) -> bool:
        return all(len(s) == m for s in self.sets)


def shape_from_facets(facets, vertices=None) -> FShape:
    """Shape of the F-set sending each facet label to its vertex set.

    ``vertices``, when given, must equal the union of the facets: a vertex
    outside all facets would break the cap[0] == cup[F] identity.
    """
    facets = [frozenset(f) for f in facets]
    if not facets:
        raise ConfigError("need at least one facet")
    ground = frozenset().union(*facets)
    if vertices is not None:
        extra = frozenset(vertices) - ground
        if extra:
            raise ConfigError(f"vertices outside every facet: {sorted(map(str, extra))}")
    phi = len(facets)
    cap = []
    for a in range(1 << phi):
        if a == 0:
            cap.append(len(ground))
            continue
        members = [facets[i] for i in range(phi) if a >> i & 1]
        inter = members[0]
        for s in members[1:]:
            inter = inter & s
        cap.append(len(inter))
    return FShape.from_cap(cap, phi=phi)


def shape_from_complex(x_complex) -> FShape:
    """Shape of a simplicial complex, with its maximal faces as the F-set."""
    facets = maximal_faces(x_complex)
    return shape_from_facets(facets, vertices=range(x_complex.n_vertices))


def maximal_faces(x_complex):
    """Maximal faces of a complex, in canonical (card, lex) order."""
    faces = list(x_complex.all_faces())
    sets = [frozenset(f) for f in faces]
    return [
        f
        for f, s in zip(faces, sets)
        if not any(s < other for other in sets)
    ]


def cap_product(w: FShape, x: FShape) -> FShape:
    """Pointwise product of the intersection versions.

    The empty-subset slot of the product is recomputed as cup[F] of the
    product (the edge count of the facet-wise complete-bipartite witness
    graph), not as the product of the inputs' ground-set sizes.
    """
    if w.phi != x.phi:
        raise ConfigError(f"facet counts differ: {w.phi} != {x.phi}")
    size = 1 << w.phi
    cap = [w.cap[a] * x.cap[a] for a in range(size)]
    cap[0] = sum(
        (-1) ** (a.bit_count() - 1) * cap[a] for a in range(1, size)
    )
    excl = convert_version(cap, "cap", "excl", w.phi)
    cup = convert_version(cap, "cap", "cup", w.phi)
    return FShape(w.phi, tuple(cap), tuple(excl), tuple(cup))


def _product_ground(w_cap, x_cap, size: int) -> int:
    """(wx)_0 without building the full product shape."""
    return sum(
        (-1) ** (a.bit_count() - 1) * w_cap[a] * x_cap[a] for a in range(1, size)
    )


@dataclass(frozen=True)
class ShapePredicates:
    nonnegative: bool
    k_pure: bool
    pure_value: int | None
    x0: int
    phi_count: int


def shape_predicates(x: FShape, k: int | None = None) -> ShapePredicates:
    pure = x.pure_value()
    return ShapePredicates(
        nonnegative=x.is_nonnegative(),
        k_pure=(pure == k) if k is not None else pure is not None,
        pure_value=pure,
        x0=x.x0,
        phi_count=x.phi,
    )


def shape_leq(z: FShape, x: FShape) -> bool:
    """z <= x iff x - z is nonnegative (componentwise on the exclusive version)."""
    if z.phi != x.phi:
        raise ConfigError(f"facet counts differ: {z.phi} != {x.phi}")
    return all(xe - ze >= 0 for xe, ze in zip(x.excl, z.excl))


def pair_density(x: FShape, w: FShape) -> Fraction:
    """b(x, w) = (xw)_0 / (x_0 + w_0), exact."""
    if x.phi != w.phi:
        raise ConfigError(f"facet counts differ: {x.phi} != {w.phi}")
    denom = x.x0 + w.x0
    if denom == 0:
        raise ConfigError("pair density undefined for two empty shapes")
    return Fraction(_product_ground(w.cap, x.cap, 1 << x.phi), denom)


DEFAULT_BUDGET = 10**7


def enumerate_m_pure_shapes(phi: int, m: int, budget: int = DEFAULT_BUDGET):
    """All nonnegative m-pure shapes on phi facets, canonically ordered.

    Enumerates exclusive-version vectors: the entries on multi-facet subsets
    are free (subject to per-facet totals <= m) and the singleton entries are
    then forced, so there are at most (m+1)^(2^phi - phi) candidates.
    """
    if phi < 1:
        raise ConfigError("phi must be >= 1")
    if m < 0:
        raise ConfigError("m must be >= 0")
    estimate = (m + 1) ** ((1 << phi) - phi - 1)
    if estimate > budget:
        raise BudgetExceededError(
            f"{estimate} candidate witness shapes exceed budget {budget}",
            estimate=estimate,
        )
    size = 1 << phi
    multi = [a for a in range(size) if a.bit_count() >= 2]
    excl = [0] * size

    def rec(idx: int, rem: list):
        if idx == len(multi):
            for f in range(phi):
                excl[1 << f] = rem[f]
            yield FShape.from_excl(tuple(excl), phi=phi)
            return
        a = multi[idx]
        members = [f for f in range(phi) if a >> f & 1]
        top = min(rem[f] for f in members)
        for val in range(top + 1):
            excl[a] = val
            for f in members:
                rem[f] -= val
            yield from rec(idx + 1, rem)
            for f in members:
                rem[f] += val
        excl[a] = 0

    yield from rec(0, [m] * phi)


def _sub_shapes(x: FShape, budget: int):
    """All nonnegative nonzero z <= x as (cap_vector, z0) pairs."""
    size = 1 << x.phi
    count = prod(e + 1 for e in x.excl[1:])
    if count > budget:
        raise BudgetExceededError(
            f"{count} sub-shapes exceed budget {budget}", estimate=count
        )
    out = []
    for combo in itertools.product(*(range(e + 1) for e in x.excl[1:])):
        z0 = sum(combo)
        if z0 == 0:
            continue
        excl = (0,) + combo
        cap = convert_version(excl, "excl", "cap", x.phi)
        out.append((cap, z0))
    return out


def max_sub_density(x: FShape, w: FShape, budget: int = DEFAULT_BUDGET) -> Fraction:
    """max b(z, v) over nonnegative nonzero z <= x, v <= w, by exhaustive
    enumeration of exclusive-version vectors."""
    if not (x.is_nonnegative() and w.is_nonnegative()):
        raise ConfigError("both shapes must be nonnegative")
    if x.is_zero() or w.is_zero():
        raise ConfigError("both shapes must be nonzero")
    size = 1 << x.phi
    zs = _sub_shapes(x, budget)
    vs = _sub_shapes(w, budget)
    if len(zs) * len(vs) > budget:
        raise BudgetExceededError(
            f"{len(zs) * len(vs)} sub-shape pairs exceed budget {budget}",
            estimate=len(zs) * len(vs),
        )
    best_num, best_den = 0, 1
    for z_cap, z0 in zs:
        for v_cap, v0 in vs:
            num = _product_ground(z_cap, v_cap, size)
            den = z0 + v0
            if num * best_den > best_num * den:
                best_num, best_den = num, den
    return Fraction(best_num, best_den)


def m_density(x: FShape, m: int, budget: int = DEFAULT_BUDGET) -> Fraction:
    """min over nonnegative m-pure witness shapes of the max sub-shape density.

    This is the appearance threshold of the complex with shape x under
    m-witnessed construction.
    """
    if not x.is_nonnegative():
        raise ConfigError("shape must be nonnegative")
    if x.pure_value() is None:
        raise ConfigError("shape must be pure")
    best = None
    for w in enumerate_m_pure_shapes(x.phi, m, budget):
        if w.is_zero():
            continue
        d = max_sub_density(x, w, budget)
        if best is None or d < best:
            best = d
    if best is None:
        raise ConfigError("no nonzero m-pure witness shapes exist")
    return best


def r_shape(phi: int, m: int) -> FShape:
    """The spread-out m-pure witness: singleton caps m, all larger caps zero."""
    if phi < 1 or m < 0:
        raise ConfigError("need phi >= 1 and m >= 0")
    size = 1 << phi
    cap = [0] * size
    cap[0] = m * phi
    for f in range(phi):
        cap[1 << f] = m
    return FShape.from_cap(cap, phi=phi)


def r_density(x: FShape, m: int) -> Fraction:
    """b(x, r) for the spread-out witness: k*m*phi / (x_0 + m*phi).

    Verified against pair_density on the explicit r shape.
    """
    k = x.pure_value()
    if k is None:
        raise ConfigError("shape must be pure")
    phi = x.phi
    value = Fraction(k * m * phi, x.x0 + m * phi)
    direct = pair_density(x, r_shape(phi, m))
    if value != direct:
        raise AssertionError(f"r-density formula {value} != direct {direct}")
    return value


# -- reduction parameters and the counterexample inequalities ----------------


@dataclass(frozen=True)
class IneqResult:
    applicable: bool
    lhs: Fraction | None = None
    rhs: Fraction | None = None
    holds: bool | None = None

    def as_dict(self) -> dict:
        return {
            "applicable": self.applicable,
            "lhs": None if self.lhs is None else str(self.lhs),
            "rhs": None if self.rhs is None else str(self.rhs),
            "holds": self.holds,
        }


@dataclass(frozen=True)
class ReducedParams:
    k: int                # xbar
    m: int                # wbar
    phi: int
    x0: int
    w0: int
    xw0: int
    x_w: Fraction
    pi_w_x: Fraction
    pi_x_w: Fraction
    phi_x: Fraction
    phi_w: Fraction
    b: Fraction

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "m": self.m,
            "phi": self.phi,
            "x0": self.x0,
            "w0": self.w0,
            "xw0": self.xw0,
            "x_w": str(self.x_w),
            "pi_w_x": str(self.pi_w_x),
            "pi_x_w": str(self.pi_x_w),
            "phi_x": str(self.phi_x),
            "phi_w": str(self.phi_w),
            "b": str(self.b),
        }


def reduced_parameters(x: FShape, w: FShape) -> ReducedParams:
    """Normalized pair parameters for a pure shape/witness pair."""
    if x.phi != w.phi:
        raise ConfigError(f"facet counts differ: {x.phi} != {w.phi}")
    k = x.pure_value()
    m = w.pure_value()
    if k is None or m is None:
        raise ConfigError("both shapes must be pure")
    xw0 = _product_ground(w.cap, x.cap, 1 << x.phi)
    phi = x.phi
    return ReducedParams(
        k=k,
        m=m,
        phi=phi,
        x0=x.x0,
        w0=w.x0,
        xw0=xw0,
        x_w=Fraction(x.x0 * m, w.x0 * k),
        pi_w_x=Fraction(xw0, x.x0 * m),
        pi_x_w=Fraction(xw0, w.x0 * k),
        phi_x=Fraction(phi * k, x.x0),
        phi_w=Fraction(phi * m, w.x0),
        b=Fraction(xw0, x.x0 + w.x0),
    )


def conjecture2_inequalities(params: ReducedParams) -> dict:
    """The two exact rational inequalities a counterexample pair must satisfy.

    Zero denominators are reported as inapplicable, not as failures.
    """
    k = Fraction(params.k)
    ineq3 = IneqResult(applicable=False)
    den3 = params.pi_x_w - 1
    if den3 != 0:
        rhs = (params.phi_w - 1) / den3
        ineq3 = IneqResult(True, k, rhs, k < rhs)

    ineq4 = IneqResult(applicable=False)
    den4a = params.pi_x_w - 1
    den4b = params.phi_x - 1
    if den4a != 0 and den4b != 0:
        rhs = (1 / den4a) * (1 - params.phi_w * (params.pi_w_x - 1) / den4b)
        ineq4 = IneqResult(True, k, rhs, k < rhs)

    return {"ineq3": ineq3, "ineq4": ineq4}
