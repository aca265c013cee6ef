"""Finite models of collections whose atoms need not have an identity.

A Universe declares two stocks of atoms:

* micro atoms, which carry a *kind* and nothing else observable.  Two
  micro atoms of the same kind are indistinguishable; the question
  "are they equal?" is not well formed and `extensionally_equal`
  refuses to answer it.  Internally each micro atom does carry a
  hidden integer label, but that label is used only for counting
  (quasi-cardinals, power-qset sizes, deterministic enumeration
  order) and is never part of the public comparison surface.
* macro atoms, classical named objects for which indistinguishability
  and identity coincide.

On top of the atoms sit qsets: immutable finite collections that may
hold micro atoms, macro atoms, ordered pairs and other qsets.  The
size of a qset, its quasi-cardinal, counts elements at the hidden
label level, so a qset of three same-kind micro atoms has
quasi-cardinal 3 even though its elements agree on every observable
attribute.

Indistinguishability of qsets is defined through signatures: the
per-kind multiplicity profile of the micro part together with the
per-class profile of everything else.  Two qsets are indistinguishable
exactly when their signatures match, which realizes weak
extensionality ("same quantity of elements of the same sort").

Everything is immutable after construction.  A Universe is built
(kinds, macro atoms, optional registered qsets) and then sealed;
operations never mutate a sealed universe and are safe to call
concurrently on shared values.
"""

from __future__ import annotations

import json
from collections import Counter
from itertools import combinations

POWER_QSET_BOUND = 20


class QuasiSetError(Exception):
    """Base class for errors raised by this package."""


class UniverseMismatchError(QuasiSetError):
    """Operands belong to different universes."""


class IllFormedFormulaError(QuasiSetError):
    """An identity-level question was asked about a micro atom."""


class CapacityError(QuasiSetError):
    """The requested materialization exceeds a configured bound."""


class FileFormatError(QuasiSetError):
    """An input file does not match the documented schema."""


# ---------------------------------------------------------------------------
# Entities

class Entity:
    """Common base for everything a universe can hold."""

    __slots__ = ()

    @property
    def universe(self):
        raise NotImplementedError


class MicroAtom(Entity):
    """An atom with a kind but no observable identity.

    Constructed by the Universe when kind populations are declared.
    The repr deliberately omits the hidden label: two indistinguishable
    atoms print identically.
    """

    __slots__ = ("_universe", "kind", "_index")

    def __init__(self, universe, kind, index):
        self._universe = universe
        self.kind = kind
        self._index = index

    @property
    def universe(self):
        return self._universe

    def __repr__(self):
        return f"m[{self.kind}]"


class MacroAtom(Entity):
    """A classical named atom; identity is just name identity."""

    __slots__ = ("_universe", "name")

    def __init__(self, universe, name):
        self._universe = universe
        self.name = name

    @property
    def universe(self):
        return self._universe

    def __repr__(self):
        return f"M[{self.name}]"


class QSet(Entity):
    """An immutable collection of entities.

    Build through `Universe.qset` (which also registers the result
    while the universe is still unsealed) or receive from operations.
    Equality and hashing are extensional: two qsets compare equal when
    they have the same elements, micro atoms counted by hidden label.
    """

    __slots__ = ("_universe", "_set", "_sorted", "_keyc", "_sigc", "_hashc")

    def __init__(self, universe, elements):
        # internal: use Universe.qset / operations, which validate
        self._universe = universe
        self._set = frozenset(elements)
        self._sorted = None
        self._keyc = None
        self._sigc = None
        self._hashc = None

    @property
    def universe(self):
        return self._universe

    @property
    def elements(self):
        """Elements in canonical (deterministic) order."""
        if self._sorted is None:
            self._sorted = tuple(sorted(self._set, key=_key))
        return self._sorted

    def __len__(self):
        return len(self._set)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, entity):
        return entity in self._set

    def __eq__(self, other):
        if not isinstance(other, QSet):
            return NotImplemented
        return _key(self) == _key(other)

    def __hash__(self):
        if self._hashc is None:
            self._hashc = hash(_key(self))
        return self._hashc

    def union(self, other):
        return combine(self, other, "union")

    def intersection(self, other):
        return combine(self, other, "intersection")

    def difference(self, other):
        return combine(self, other, "difference")

    __or__ = union
    __and__ = intersection
    __sub__ = difference

    def subqset_of(self, other):
        _require_same_universe(self, other)
        return self._set <= other._set

    def __repr__(self):
        inner = ", ".join(repr(e) for e in self.elements)
        return "qset{" + inner + "}"


class OrderedPair(Entity):
    """Positional ordered pair, the native encoding used by relations.

    The generalized pair encoding through weak pairs collapses when the
    coordinates are indistinguishable, so relation machinery stores
    pairs positionally instead.  Pairs are plumbing: they are not one
    of the three theory sorts and count as atoms (quasi-cardinal 0).
    """

    __slots__ = ("left", "right", "_keyc", "_sigc", "_hashc")

    def __init__(self, left, right):
        _require_same_universe(left, right)
        self.left = left
        self.right = right
        self._keyc = None
        self._sigc = None
        self._hashc = None

    @property
    def universe(self):
        return self.left.universe

    def __eq__(self, other):
        if not isinstance(other, OrderedPair):
            return NotImplemented
        return _key(self) == _key(other)

    def __hash__(self):
        if self._hashc is None:
            self._hashc = hash(_key(self))
        return self._hashc

    def __repr__(self):
        return f"pair({self.left!r}, {self.right!r})"


def _key(e):
    """Canonical identity/order key.  Total order over mixed entities.

    Micro atoms key on the hidden label (internal counting use), macro
    atoms on their name, qsets on the sorted keys of their elements.
    """
    if isinstance(e, MicroAtom):
        return (0, e._index)
    if isinstance(e, MacroAtom):
        return (1, e.name)
    if isinstance(e, OrderedPair):
        if e._keyc is None:
            e._keyc = (2, _key(e.left), _key(e.right))
        return e._keyc
    if isinstance(e, QSet):
        if e._keyc is None:
            e._keyc = (3, tuple(sorted(_key(m) for m in e._set)))
        return e._keyc
    raise TypeError(f"not an entity: {e!r}")


def signature(e):
    """Observable profile of an entity, as a nested tuple.

    Micro atoms expose only their kind, macro atoms their name, and a
    qset exposes the multiset of its elements' signatures.  Entities
    are indistinguishable exactly when their signatures are equal.
    """
    if isinstance(e, MicroAtom):
        return ("m", e.kind)
    if isinstance(e, MacroAtom):
        return ("M", e.name)
    if isinstance(e, OrderedPair):
        if e._sigc is None:
            e._sigc = ("pair", signature(e.left), signature(e.right))
        return e._sigc
    if isinstance(e, QSet):
        if e._sigc is None:
            counts = Counter(signature(m) for m in e._set)
            e._sigc = ("Q", tuple(sorted(counts.items())))
        return e._sigc
    raise TypeError(f"not an entity: {e!r}")


def micro_signature(kind):
    """Signature that a micro atom of the given kind would have."""
    return ("m", kind)


def macro_signature(name):
    return ("M", name)


# ---------------------------------------------------------------------------
# Universe

class Universe:
    """Finite carrier: declared atom populations plus registered qsets.

    `kinds` maps kind labels to population counts; `macro_atoms` names
    the classical atoms.  Hidden labels are assigned deterministically,
    kind blocks in sorted label order.  Qsets built through `qset()`
    before `seal()` are registered and become part of the scope that
    weak pairs of qsets range over; after sealing, `qset()` still
    builds values but the register no longer grows.
    """

    __slots__ = ("_kinds", "_by_kind", "_micro", "_macro", "_registry",
                 "_sealed", "_sig_index")

    def __init__(self, kinds=None, macro_atoms=()):
        kinds = dict(kinds or {})
        for label, count in kinds.items():
            if not isinstance(label, str) or not label:
                raise ValueError(f"kind label must be a non-empty string: {label!r}")
            if not isinstance(count, int) or isinstance(count, bool) or count < 0:
                raise ValueError(f"population of kind {label!r} must be a non-negative integer")
        self._kinds = kinds
        self._by_kind = {}
        index = 0
        atoms = []
        for label in sorted(kinds):
            block = tuple(MicroAtom(self, label, index + i) for i in range(kinds[label]))
            index += kinds[label]
            self._by_kind[label] = block
            atoms.extend(block)
        self._micro = tuple(atoms)
        names = list(macro_atoms)
        if len(set(names)) != len(names):
            raise ValueError("duplicate macro atom names")
        for name in names:
            if not isinstance(name, str) or not name:
                raise ValueError(f"macro atom name must be a non-empty string: {name!r}")
        self._macro = {name: MacroAtom(self, name) for name in sorted(names)}
        self._registry = {}
        self._sealed = False
        self._sig_index = None

    # -- construction ------------------------------------------------------

    def qset(self, elements=()):
        """Build a qset over this universe; register it if unsealed."""
        q = _make_qset(self, elements)
        if not self._sealed:
            q = self._registry.setdefault(_key(q), q)
        return q

    def empty(self):
        return self.qset(())

    def seal(self):
        self._sealed = True
        return self

    @property
    def sealed(self):
        return self._sealed

    # -- access ------------------------------------------------------------

    @property
    def kinds(self):
        return dict(self._kinds)

    def micro_atoms(self):
        return self._micro

    def atoms_of_kind(self, label):
        return self._by_kind[label]

    def macro_atoms(self):
        return tuple(self._macro.values())

    def macro_atom(self, name):
        return self._macro[name]

    def atoms(self):
        return self._micro + tuple(self._macro.values())

    def registered_qsets(self):
        return tuple(self._registry.values())

    def _scope(self):
        return self.atoms() + self.registered_qsets()

    def _class_members(self, sig):
        """Entities in scope with the given signature."""
        if self._sealed:
            if self._sig_index is None:
                index = {}
                for e in self._scope():
                    index.setdefault(signature(e), []).append(e)
                self._sig_index = {s: tuple(v) for s, v in index.items()}
            return self._sig_index.get(sig, ())
        return tuple(e for e in self._scope() if signature(e) == sig)

    # -- serialization -----------------------------------------------------

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict):
            raise FileFormatError("universe description must be a JSON object")
        unknown = set(data) - {"kinds", "M_atoms"}
        if unknown:
            raise FileFormatError(f"unknown universe keys: {sorted(unknown)}")
        kinds = data.get("kinds", {})
        names = data.get("M_atoms", [])
        if not isinstance(kinds, dict):
            raise FileFormatError('"kinds" must be an object of label -> count')
        if not isinstance(names, list):
            raise FileFormatError('"M_atoms" must be an array of names')
        try:
            return cls(kinds=kinds, macro_atoms=names)
        except ValueError as exc:
            raise FileFormatError(str(exc)) from exc

    @classmethod
    def from_file(cls, path):
        with open(path, "r", encoding="utf-8") as fh:
            try:
                data = json.load(fh, object_pairs_hook=_reject_duplicate_keys)
            except json.JSONDecodeError as exc:
                raise FileFormatError(f"invalid JSON in {path}: {exc}") from exc
        return cls.from_dict(data)

    def __repr__(self):
        macros = sorted(self._macro)
        state = "sealed" if self._sealed else "unsealed"
        return f"Universe(kinds={self._kinds!r}, macro_atoms={macros!r}, {state})"


def _reject_duplicate_keys(pairs):
    seen = set()
    for k, _ in pairs:
        if k in seen:
            raise FileFormatError(f"duplicate label {k!r}")
        seen.add(k)
    return dict(pairs)


def _make_qset(universe, elements):
    """Internal qset constructor: validates, never registers."""
    elements = tuple(elements)
    for e in elements:
        if not isinstance(e, Entity):
            raise TypeError(f"qset elements must be entities, got {e!r}")
        if e.universe is not universe:
            raise UniverseMismatchError("element belongs to a different universe")
    return QSet(universe, elements)


def _require_same_universe(a, b):
    if a.universe is not b.universe:
        raise UniverseMismatchError("entities belong to different universes")


# ---------------------------------------------------------------------------
# Predicates on sorts

def is_micro(e):
    return isinstance(e, MicroAtom)


def is_macro(e):
    return isinstance(e, MacroAtom)


def is_qset(e):
    return isinstance(e, QSet)


def is_set(e):
    """True iff `e` is a qset with no micro atom anywhere inside.

    Classical sets are the qsets whose transitive closure is free of
    micro atoms; atoms themselves are not sets.
    """
    if not isinstance(e, QSet):
        return False
    return all(isinstance(m, MacroAtom) or is_set(m) for m in e._set)


def is_classical(e):
    """True for macro atoms and sets (identity is meaningful)."""
    return isinstance(e, MacroAtom) or is_set(e)


def is_pure(x):
    """True iff `x` is a qset whose elements are all micro atoms."""
    return isinstance(x, QSet) and all(isinstance(m, MicroAtom) for m in x._set)


def similar(x, y):
    """All cross pairs of elements indistinguishable (both qsets)."""
    if not (isinstance(x, QSet) and isinstance(y, QSet)):
        raise TypeError("similar is defined on qsets")
    _require_same_universe(x, y)
    return all(indistinguishable(a, b) for a in x._set for b in y._set)


# ---------------------------------------------------------------------------
# Core operations

def indistinguishable(a, b):
    """Equivalence relation standing in for equality on micro atoms.

    Micro atoms: same kind.  Macro atoms: same atom.  Qsets: equal
    signatures, i.e. the same quantity of elements of the same sort,
    classwise.  Mixed sorts are never indistinguishable.
    """
    _require_same_universe(a, b)
    return signature(a) == signature(b)


def extensionally_equal(x, y):
    """Identity-level equality; not defined for micro atoms.

    Qsets are extensionally equal when they have the same elements
    (micro members compared at the hidden-label level), macro atoms
    when they are the same atom.  Asking about a micro atom raises
    IllFormedFormulaError rather than returning False: the question
    itself is rejected.
    """
    if isinstance(x, MicroAtom) or isinstance(y, MicroAtom):
        raise IllFormedFormulaError("equality is not defined for micro atoms")
    _require_same_universe(x, y)
    if isinstance(x, MacroAtom) or isinstance(y, MacroAtom):
        return x is y
    if type(x) is not type(y):
        return False
    return _key(x) == _key(y)


def quasi_cardinal(e):
    """Exact size: 0 for atoms and pairs, element count for qsets."""
    if isinstance(e, QSet):
        return len(e._set)
    if isinstance(e, Entity):
        return 0
    raise TypeError(f"not an entity: {e!r}")


def weak_pair(universe, x, y):
    """The qset of everything in scope indistinguishable from x or y.

    Scope is the universe's declared atoms plus its registered qsets
    (plus x and y themselves when they are qsets, so that x is always
    a member of its own weak singleton).
    """
    if x.universe is not universe or y.universe is not universe:
        raise UniverseMismatchError("arguments must belong to the given universe")
    sig_x, sig_y = signature(x), signature(y)
    members = list(universe._class_members(sig_x))
    if sig_y != sig_x:
        members.extend(universe._class_members(sig_y))
    for extra in (x, y):
        if isinstance(extra, (QSet, OrderedPair)):
            members.append(extra)
    return _make_qset(universe, members)


def weak_singleton(universe, x):
    """[x]: the weak pair of x with itself."""
    return weak_pair(universe, x, x)


def strong_singleton(universe, x, within=None):
    """A sub-qset of [x] with quasi-cardinal exactly 1.

    The representative is the canonically least candidate (lowest
    hidden label for micro atoms); any two strong singletons of the
    same entity are indistinguishable, so no caller may depend on the
    choice.  `within` restricts the candidate pool to the elements of
    a qset, e.g. to pick a representative that actually occurs in some
    host collection.
    """
    if x.universe is not universe:
        raise UniverseMismatchError("argument must belong to the given universe")
    if within is None:
        candidates = list(universe._class_members(signature(x)))
        if isinstance(x, (QSet, OrderedPair)):
            candidates.append(x)
    else:
        candidates = [e for e in within if indistinguishable(e, x)]
    if not candidates:
        raise ValueError("no candidate indistinguishable from x in the given pool")
    rep = min(candidates, key=_key)
    return _make_qset(universe, (rep,))


def combine(x, y, mode):
    """Element-level union / intersection / difference of two qsets."""
    if not (isinstance(x, QSet) and isinstance(y, QSet)):
        raise TypeError("combine is defined on qsets")
    _require_same_universe(x, y)
    if mode == "union":
        members = x._set | y._set
    elif mode == "intersection":
        members = x._set & y._set
    elif mode == "difference":
        members = x._set - y._set
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return QSet(x.universe, members)


def power_qset(x, bound=POWER_QSET_BOUND):
    """The qset of all sub-qsets of x; exactly 2**qc(x) members.

    Sub-qsets are formed at the hidden-label level, so the count is
    2**qc(x) even when many members are mutually indistinguishable.
    """
    if not isinstance(x, QSet):
        raise TypeError("power_qset is defined on qsets")
    n = len(x._set)
    if n > bound:
        raise CapacityError(
            f"power qset of a {n}-element qset would have 2^{n} = {2 ** n} members "
            f"(bound {bound})")
    elems = x.elements
    subs = []
    for r in range(n + 1):
        for combo in combinations(elems, r):
            subs.append(QSet(x.universe, combo))
    return QSet(x.universe, subs)


def quotient_by_indist(x):
    """Classes of x's elements under indistinguishability.

    Returns a canonically ordered list of (signature, multiplicity)
    pairs, one per class.  Classical elements fall into unitary
    classes; same-kind micro atoms collapse into one class with their
    count.
    """
    if not isinstance(x, QSet):
        raise TypeError("quotient_by_indist is defined on qsets")
    counts = Counter(signature(m) for m in x._set)
    return sorted(counts.items())


def separate(x, predicate):
    """[t in x : predicate(t)] -- the sub-qset satisfying the predicate.

    Predicates must be functions of the observable interface (sort,
    kind, structure); when restricted to micro atoms they may not
    distinguish atoms of the same kind.  That restriction is enforced:
    a predicate whose answers differ inside one kind raises ValueError.
    """
    if not isinstance(x, QSet):
        raise TypeError("separate is defined on qsets")
    verdict_by_kind = {}
    selected = []
    for m in x.elements:
        r = bool(predicate(m))
        if isinstance(m, MicroAtom):
            previous = verdict_by_kind.setdefault(m.kind, r)
            if previous != r:
                raise ValueError(
                    f"predicate distinguishes indistinguishable atoms of kind {m.kind!r}")
        if r:
            selected.append(m)
    return QSet(x.universe, selected)


_RELATION_VERDICTS = ("not-a-relation", "relation", "q-function",
                      "q-injection", "q-surjection", "q-bijection")


def classify_q_relation(f, x, y):
    """Strongest classification of f as a relation between x and y.

    Returns one of "not-a-relation", "relation", "q-function",
    "q-injection", "q-surjection", "q-bijection".  A q-function maps
    indistinguishable arguments to indistinguishable values; the
    injection / surjection refinements add the reverse implication or
    totality on y, plus the quasi-cardinal comparisons of domain and
    range (<=, >=, = respectively).
    """
    for q in (f, x, y):
        if not isinstance(q, QSet):
            raise TypeError("classify_q_relation expects qsets")
    _require_same_universe(f, x)
    _require_same_universe(f, y)

    pairs = list(f._set)
    for p in pairs:
        if not isinstance(p, OrderedPair):
            return "not-a-relation"
        if p.left not in x or p.right not in y:
            return "not-a-relation"

    lefts = {p.left for p in pairs}
    total = all(u in lefts for u in x._set)
    functional = all(
        indistinguishable(p.right, q.right)
        for p in pairs for q in pairs
        if indistinguishable(p.left, q.left))
    if not (total and functional):
        return "relation"

    rights = {p.right for p in pairs}
    dom = QSet(f.universe, lefts)
    rng = QSet(f.universe, rights)
    reverse_functional = all(
        indistinguishable(p.left, q.left)
        for p in pairs for q in pairs
        if indistinguishable(p.right, q.right))
    injective = reverse_functional and len(dom) <= len(rng)
    onto = all(v in rights for v in y._set)
    surjective = onto and len(dom) >= len(rng)
    if injective and surjective:
        return "q-bijection"
    if injective:
        return "q-injection"
    if surjective:
        return "q-surjection"
    return "q-function"


def permutation_swap_check(x, z, w):
    """Swap one occupant of x for an indistinguishable atom; compare.

    Removes a strong singleton of z chosen *within* x (z must occur in
    x for the removal to mean anything) and unions in a strong
    singleton of w.  The result is always indistinguishable from x --
    the swap is unobservable -- and this function re-derives that fact
    rather than assuming it.
    """
    if not isinstance(x, QSet):
        raise TypeError("x must be a qset")
    if not isinstance(z, MicroAtom):
        raise ValueError("z must be a micro atom")
    if z not in x:
        raise ValueError("z must be an element of x")
    if not isinstance(w, MicroAtom):
        raise ValueError("w must be a micro atom")
    _require_same_universe(x, z)
    _require_same_universe(x, w)
    if not indistinguishable(w, z):
        raise ValueError("w must be indistinguishable from z")
    u = x.universe
    z_prime = strong_singleton(u, z, within=x)
    w_prime = strong_singleton(u, w)
    result = combine(combine(x, z_prime, "difference"), w_prime, "union")
    return indistinguishable(result, x)
