"""Exact distribution counting and occupancy optimization.

The engine answers one combinatorial question three ways.  Distribute
the elements of a pure qset over n boxes so that the boxes are
disjoint and jointly exhaust the collection:

* "mb"  counts every ordered assignment; there are n**N of them even
  when the particles are indistinguishable, because sub-collections
  are counted at the hidden-label level.
* "be"  counts only the distinguishable outcomes, one per occupancy
  vector: C(N+n-1, n-1).
* "fd"  adds the exclusion constraint (at most one particle per box):
  C(n, N).

The assignments with a fixed occupancy vector (n_1, ..., n_n) form a
class of N!/prod(n_i!) mutually indistinguishable possibilities, and
summing that weight over all occupancy vectors recovers n**N exactly
(the Leibniz multinomial identity).  The most probable occupancy is
the one maximizing the weight.

All counting paths use exact integers; floating point appears only in
`asymptotic_distribution`, the large-N stationary-occupancy solver.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from scipy.optimize import brentq

from .kernel import CapacityError, FileFormatError, QSet, is_pure, quasi_cardinal

MODELS = ("mb", "be", "fd")

DEFAULT_ENUM_CAPACITY = 10 ** 6
DEFAULT_SCAN_CAP = 10 ** 7

# sample size for object-level validation of enumerated assignments
_VALIDATE_PREFIX = 1000


def _check_model(model):
    if model not in MODELS:
        raise ValueError(f"unknown statistics model {model!r}; expected one of {MODELS}")
    return model


def occupancy_vectors(N, n):
    """All n-part occupancy vectors summing to N, reverse-lexicographic.

    (3, 2) yields (3,0), (2,1), (1,2), (0,3).
    """
    if n < 1:
        raise ValueError("need at least one box")
    if N < 0:
        raise ValueError("particle count must be non-negative")
    if n == 1:
        yield (N,)
        return
    for first in range(N, -1, -1):
        for rest in occupancy_vectors(N - first, n - 1):
            yield (first,) + rest


def multinomial_weight(v):
    """N!/prod(n_i!): the number of ordered assignments with occupancy v."""
    N = 0
    denom = 1
    for part in v:
        if part < 0:
            raise ValueError("occupancy entries must be non-negative")
        N += part
        denom *= math.factorial(part)
    return math.factorial(N) // denom


def count_distributions(N, n, model):
    """Closed-form state count for N particles in n boxes."""
    _check_model(model)
    if N < 0 or n < 1:
        raise ValueError("need N >= 0 and n >= 1")
    if model == "mb":
        return n ** N
    if model == "be":
        return math.comb(N + n - 1, n - 1)
    return math.comb(n, N) if N <= n else 0


def enumerate_distributions(x, n, model, capacity=DEFAULT_ENUM_CAPACITY):
    """Stream the distributions of x's elements over n boxes.

    For "mb" yields ordered tuples of disjoint sub-qsets covering x,
    in lexicographic order of the underlying assignment word (element
    j of x, in canonical order, goes to box word[j]).  For "be" and
    "fd" yields occupancy vectors in reverse-lexicographic order.
    """
    _check_model(model)
    if not isinstance(x, QSet):
        raise TypeError("x must be a qset")
    if not is_pure(x):
        raise ValueError("distribution statistics are defined for pure qsets only")
    if n < 1:
        raise ValueError("need at least one box")
    N = quasi_cardinal(x)
    total = count_distributions(N, n, model)
    if total > capacity:
        raise CapacityError(
            f"{model} enumeration would stream {total} items (capacity {capacity}); "
            f"the exact count is available from count_distributions")
    if model == "mb":
        return _mb_tuples(x, n)
    vectors = occupancy_vectors(N, n)
    if model == "fd":
        return (v for v in vectors if all(k <= 1 for k in v))
    return vectors


def _mb_tuples(x, n):
    elems = x.elements
    universe = x.universe
    for word in product(range(n), repeat=len(elems)):
        boxes = [[] for _ in range(n)]
        for elem, b in zip(elems, word):
            boxes[b].append(elem)
        yield tuple(QSet(universe, box) for box in boxes)


def q26prime_check(x, n, capacity=DEFAULT_ENUM_CAPACITY):
    """Materialize the ordered-tuple distributions of x and count them.

    Enumerates every assignment of x's elements to n boxes, de-duplicates
    at the hidden-label level, object-validates a prefix (boxes disjoint,
    union x, sizes summing to qc(x)), and compares the distinct count
    against n**qc(x).  Returns True exactly when they agree.
    """
    if not isinstance(x, QSet):
        raise TypeError("x must be a qset")
    if not is_pure(x):
        raise ValueError("the tuple-count axiom applies to pure qsets")
    if n < 1:
        raise ValueError("need at least one box")
    N = quasi_cardinal(x)
    expected = n ** N
    if expected > capacity:
        raise CapacityError(f"n^N = {expected} exceeds capacity {capacity}")
    return _count_distinct_tuples(x, n) == expected


def _count_distinct_tuples(x, n, validate_prefix=_VALIDATE_PREFIX):
    """Distinct box-content tuples, counted at the hidden-label level.

    Each assignment is encoded as a base-n integer over the canonical
    element order; distinct encodings correspond one-to-one to distinct
    tuples of box contents, which the validated prefix spot-checks at
    the qset level.
    """
    elems = x.elements
    N = len(elems)
    seen = set()
    validated = 0
    for word in product(range(n), repeat=N):
        code = 0
        for b in word:
            code = code * n + b
        seen.add(code)
        if validated < validate_prefix:
            validated += 1
            boxes = [[] for _ in range(n)]
            for elem, b in zip(elems, word):
                boxes[b].append(elem)
            qsets = [QSet(x.universe, box) for box in boxes]
            union = set()
            total = 0
            for q in qsets:
                for m in q:
                    assert m not in union, "boxes must be disjoint"
                    union.add(m)
                total += quasi_cardinal(q)
            assert union == set(elems), "boxes must cover x"
            assert total == N, "box sizes must sum to qc(x)"
    return len(seen)


@dataclass
class IdentityReport:
    """Result of expanding n**N into its occupancy-weight parcels."""

    N: int
    n: int
    lhs: int
    rhs: int
    equal: bool
    parcels: list  # [(occupancy vector, weight)] in reverse-lex order


def verify_leibniz_identity(N, n):
    """Check n**N == sum of N!/prod(n_i!) over all occupancy vectors."""
    parcels = [(v, multinomial_weight(v)) for v in occupancy_vectors(N, n)]
    lhs = n ** N
    rhs = sum(w for _, w in parcels)
    return IdentityReport(N=N, n=n, lhs=lhs, rhs=rhs, equal=lhs == rhs, parcels=parcels)


@dataclass
class OccupancyOptimum:
    """Argmax set of an occupancy-weight maximization."""

    argmax: list  # occupancy vectors, reverse-lex order; all ties reported
    weight: int
    feasible: bool = True


def most_probable_occupancy(N, n, model="mb"):
    """All occupancy vectors maximizing the assignment weight.

    Only the "mb" model weights occupancies (by N!/prod(n_i!)); under
    "be" and "fd" every admissible state counts once, so there is no
    most probable state and the call is refused.
    """
    _check_model(model)
    if model != "mb":
        raise ValueError(
            f"all states are equiweighted under the {model} model; "
            "a most probable occupancy is only defined for mb")
    if N < 0 or n < 1:
        raise ValueError("need N >= 0 and n >= 1")
    best = -1
    argmax = []
    for v in occupancy_vectors(N, n):
        w = multinomial_weight(v)
        if w > best:
            best = w
            argmax = [v]
        elif w == best:
            argmax.append(v)
    return OccupancyOptimum(argmax=argmax, weight=best)


# ---------------------------------------------------------------------------
# Level schemes: degeneracies and an energy constraint

@dataclass(frozen=True)
class LevelScheme:
    """Energy levels with degeneracies plus global constraints.

    levels: tuple of (energy, degeneracy); energies are exact rationals,
    degeneracies positive integers.  N is the particle count.  E, when
    present, constrains the total energy, either exactly or as an upper
    bound depending on mode.
    """

    levels: tuple
    N: int
    E: Fraction | None = None
    mode: str = "exact"

    def __post_init__(self):
        levels = tuple((Fraction(e), int(g)) for e, g in self.levels)
        object.__setattr__(self, "levels", levels)
        if not levels:
            raise ValueError("at least one level is required")
        for e, g in levels:
            if g < 1:
                raise ValueError("degeneracies must be >= 1")
        if not isinstance(self.N, int) or self.N < 0:
            raise ValueError("N must be a non-negative integer")
        if self.E is not None:
            object.__setattr__(self, "E", Fraction(self.E))
        if self.mode not in ("exact", "at_most"):
            raise ValueError('mode must be "exact" or "at_most"')

    @property
    def energies(self):
        return tuple(e for e, _ in self.levels)

    @property
    def degeneracies(self):
        return tuple(g for _, g in self.levels)

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict):
            raise FileFormatError("level scheme must be a JSON object")
        unknown = set(data) - {"levels", "N", "E", "mode"}
        if unknown:
            raise FileFormatError(f"unknown level scheme keys: {sorted(unknown)}")
        raw = data.get("levels")
        if not isinstance(raw, list) or not raw:
            raise FileFormatError('"levels" must be a non-empty array')
        levels = []
        for entry in raw:
            if not isinstance(entry, dict) or set(entry) != {"energy", "g"}:
                raise FileFormatError('each level must be {"energy": ..., "g": ...}')
            levels.append((entry["energy"], entry["g"]))
        if "N" not in data:
            raise FileFormatError('"N" is required')
        try:
            return cls(levels=tuple(levels), N=data["N"],
                       E=data.get("E"), mode=data.get("mode", "exact"))
        except (ValueError, TypeError) as exc:
            raise FileFormatError(str(exc)) from exc

    @classmethod
    def from_file(cls, path):
        with open(path, "r", encoding="utf-8") as fh:
            try:
                data = json.load(fh, parse_float=Fraction)
            except json.JSONDecodeError as exc:
                raise FileFormatError(f"invalid JSON in {path}: {exc}") from exc
        return cls.from_dict(data)


def _degenerate_weight(v, degeneracies):
    # N! * prod(g_i^{n_i}) / prod(n_i!), exact
    w = multinomial_weight(v)
    for k, g in zip(v, degeneracies):
        w *= g ** k
    return w


def constrained_most_probable(scheme, cap=DEFAULT_SCAN_CAP):
    """Exact argmax of the degeneracy-weighted occupancy count.

    Scans every occupancy vector meeting the particle and energy
    constraints and reports all maximizers of
    N! * prod(g_i**n_i) / prod(n_i!).  Infeasible constraints yield an
    empty argmax with feasible=False.
    """
    n = len(scheme.levels)
    total = math.comb(scheme.N + n - 1, n - 1)
    if total > cap:
        raise CapacityError(
            f"{total} occupancy vectors exceed the scan cap {cap}; "
            "use asymptotic_distribution for large instances")
    energies = scheme.energies
    degeneracies = scheme.degeneracies
    best = -1
    argmax = []
    for v in _feasible_vectors(scheme.N, energies, scheme.E, scheme.mode):
        w = _degenerate_weight(v, degeneracies)
        if w > best:
            best = w
            argmax = [v]
        elif w == best:
            argmax.append(v)
    if not argmax:
        return OccupancyOptimum(argmax=[], weight=0, feasible=False)
    return OccupancyOptimum(argmax=argmax, weight=best)


def _feasible_vectors(N, energies, E, mode):
    """Occupancy vectors meeting the energy constraint, reverse-lex.

    Prunes on the attainable energy range of the remaining levels.
    """
    n = len(energies)
    if E is None:
        yield from occupancy_vectors(N, n)
        return

    suffix_min = [Fraction(0)] * (n + 1)
    suffix_max = [Fraction(0)] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix_min[i] = min(energies[i], suffix_min[i + 1]) if i < n - 1 else energies[i]
        suffix_max[i] = max(energies[i], suffix_max[i + 1]) if i < n - 1 else energies[i]

    def rec(i, remaining, budget, prefix):
        if i == n - 1:
            cost = energies[i] * remaining
            ok = cost <= budget if mode == "at_most" else cost == budget
            if ok:
                yield prefix + (remaining,)
            return
        for k in range(remaining, -1, -1):
            rest = remaining - k
            new_budget = budget - energies[i] * k
            low = suffix_min[i + 1] * rest
            if mode == "at_most":
                if low <= new_budget:
                    yield from rec(i + 1, rest, new_budget, prefix + (k,))
            else:
                high = suffix_max[i + 1] * rest
                if low <= new_budget <= high:
                    yield from rec(i + 1, rest, new_budget, prefix + (k,))

    yield from rec(0, N, Fraction(E), ())


# ---------------------------------------------------------------------------
# Asymptotic (large-N) occupancies via Lagrange multipliers

@dataclass
class AsymptoticResult:
    """Stationary mean occupancies with their multipliers and residuals."""

    occupancies: list  # floats, one per level
    alpha: float
    beta: float
    residual_count: float
    residual_energy: float


_EXP_LIMIT = 700.0


def _exp(t):
    return math.inf if t > _EXP_LIMIT else math.exp(t)


def _occupancies(model, levels, N, alpha, beta):
    out = []
    for e, g in levels:
        t = alpha + beta * e
        if model == "mb":
            out.append(g * _exp(-t))
        elif model == "be":
            d = _exp(t) - 1.0
            out.append(g / d if d > 0 else math.inf)
        else:
            out.append(g / (_exp(t) + 1.0))
    return out


def _solve_alpha(model, levels, N, beta):
    """Eliminate alpha at fixed beta so the occupancies sum to N."""
    if model == "mb":
        z = sum(g * _exp(-beta * e) for e, g in levels)
        return math.log(z / N)
    if model == "fd" and N >= sum(g for _, g in levels):
        raise ValueError(
            f"exclusion admits at most {sum(g for _, g in levels)} particles, got {N}")

    def excess(alpha):
        return sum(_occupancies(model, levels, N, alpha, beta)) - N

    lower_limit = None
    if model == "be":
        # occupancies diverge at alpha + beta*e_i = 0 for the level
        # minimizing alpha + beta*e_i
        lo = max(-beta * e for e, _ in levels)
        lower_limit = lo + max(1e-12, abs(lo) * 1e-12)
        a, b = lower_limit, lower_limit + 1.0
    else:
        a, b = -1.0, 1.0
    a, b = _expand_bracket(excess, a, b, lower_limit=lower_limit)
    return brentq(excess, a, b, xtol=1e-14, rtol=8.9e-16, maxiter=200)


def _expand_bracket(fn, a, b, lower_limit=None, max_steps=200):
    fa, fb = fn(a), fn(b)
    steps = 0
    while fa * fb > 0:
        steps += 1
        if steps > max_steps:
            raise ValueError("constraint is outside the attainable range (no bracket)")
        width = b - a
        if fa > 0 and fb > 0:
            # both too high: increase the lower end of occupancy decay
            a, b = b, b + 2 * width
        else:
            a = a - 2 * width
            if lower_limit is not None:
                a = max(a, lower_limit + (b - lower_limit) * 1e-15)
        fa, fb = fn(a), fn(b)
    return a, b


def asymptotic_distribution(scheme, model):
    """Mean occupancies solving the two-multiplier stationarity system.

    Solves n_i = g_i*exp(-alpha-beta*e_i) (mb), g_i/(exp(alpha+beta*e_i)-1)
    (be) or g_i/(exp(alpha+beta*e_i)+1) (fd) subject to sum(n_i) = N and
    sum(n_i e_i) = E, by bracketed root finding on beta with alpha
    eliminated at each step.  Residuals are verified to relative 1e-10.
    """
    _check_model(model)
    if scheme.N < 1:
        raise ValueError("need at least one particle")
    if len(scheme.levels) < 2:
        raise ValueError("need at least two levels")
    if scheme.E is None:
        raise ValueError("an energy constraint is required")
    N = scheme.N
    E = float(scheme.E)
    levels = [(float(e), float(g)) for e, g in scheme.levels]
    e_min = min(e for e, _ in levels)
    e_max = max(e for e, _ in levels)

    if e_min == e_max:
        # degenerate scheme: the energy constraint is forced
        if scheme.E != Fraction(scheme.levels[0][0]) * N:
            raise ValueError("energy constraint is outside the attainable range")
        beta = 0.0
        alpha = _solve_alpha(model, levels, N, beta)
    else:
        if not (N * e_min < E < N * e_max):
            raise ValueError(
                f"energy constraint must lie strictly between {N * e_min} and {N * e_max}")

        def energy_excess(beta):
            alpha = _solve_alpha(model, levels, N, beta)
            occ = _occupancies(model, levels, N, alpha, beta)
            return sum(o * e for o, (e, _) in zip(occ, levels)) - E

        a, b = _expand_bracket(energy_excess, -1.0, 1.0)
        beta = brentq(energy_excess, a, b, xtol=1e-14, rtol=8.9e-16, maxiter=200)
        alpha = _solve_alpha(model, levels, N, beta)

    occ = _occupancies(model, levels, N, alpha, beta)
    if model == "be":
        for (e, _), o in zip(levels, occ):
            if not math.isfinite(o) or alpha + beta * e <= 0:
                raise ValueError(
                    f"occupancy pole: alpha + beta*e <= 0 at the level with energy {e}")
    r_count = abs(sum(occ) - N)
    r_energy = abs(sum(o * e for o, (e, _) in zip(occ, levels)) - E)
    tol_count = 1e-10 * max(1.0, abs(N))
    tol_energy = 1e-10 * max(1.0, abs(E))
    if r_count > tol_count or r_energy > tol_energy:
        raise ValueError(
            f"root finding did not reach the residual tolerance: "
            f"|dN| = {r_count:.3e}, |dE| = {r_energy:.3e}")
    return AsymptoticResult(occupancies=occ, alpha=alpha, beta=beta,
                            residual_count=r_count, residual_energy=r_energy)
