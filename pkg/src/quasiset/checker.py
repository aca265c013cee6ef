"""Axiom and theorem verification over concrete finite universes.

Quantified statements are evaluated over a bounded but systematically
generated pool of entities: the universe's declared atoms, every qset
of atoms, and nested qsets up to a configurable depth and width.  The
pool is registered into a working universe so that weak pairs range
over exactly the domain the quantifiers range over.

Each statement yields a report with one of four verdicts:

* holds          -- every examined instantiation satisfied the body;
* fails          -- a counterexample was found (witness attached);
* vacuous        -- no instantiation satisfied the antecedent;
* not-checkable  -- the statement quantifies over something no finite
                    model can provide (the infinity axiom).

Failure witnesses are concrete entities: re-evaluating the statement
body on them through the kernel reproduces the violation.  Theorem
checks can never legitimately fail; a failing theorem report indicates
a kernel bug, which is what makes them useful as an integration
surface.  The `fault_qc` hook in CheckOptions exists to corrupt
measured cardinalities on purpose and prove that detection works.

Reports are deterministic: the same universe and options produce the
same list, in fixed statement order, regardless of execution order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from itertools import combinations

from . import stats
from .kernel import (
    Universe,
    _key,
    _make_qset,
    combine,
    extensionally_equal,
    indistinguishable,
    is_classical,
    is_macro,
    is_micro,
    is_pure,
    is_qset,
    is_set,
    power_qset,
    quasi_cardinal,
    quotient_by_indist,
    separate,
    signature,
    strong_singleton,
    weak_pair,
    weak_singleton,
)

AXIOM_IDS = tuple(
    ["Q%d" % i for i in range(1, 26)] + ["Q26'", "Q27", "Q28", "Q29"])
THEOREM_IDS = tuple("T%d" % i for i in range(1, 10)) + ("L1",)

CANONICAL_UNIVERSES = ("canonical_small.json", "canonical_mixed.json")


@dataclass
class AxiomReport:
    """Verdict for one axiom or theorem."""

    axiom: str
    verdict: str  # holds | fails | vacuous | not-checkable
    witness: tuple | None = None
    cost: int = 0
    note: str = ""

    def to_dict(self):
        return {
            "axiom": self.axiom,
            "verdict": self.verdict,
            "witness": None if self.witness is None else [repr(w) for w in self.witness],
            "cost": self.cost,
            "note": self.note,
        }


@dataclass
class CheckOptions:
    """Bounds and suites controlling a checking run.

    fault_qc, when set, intercepts the cardinality measurements taken
    by the counting statements; it receives (tag, subject, true_value)
    and returns the value the checker should believe.  Tags in use:
    "tuple-count" (ordered-tuple distributions) and "power-qset".
    """

    depth: int = 2
    nested_width: int = 2
    power_bound: int = 20
    q26_n_cap: int = 4
    q26_capacity: int = 10 ** 6
    predicates: list | None = None
    functional_conditions: list | None = None
    fault_qc: object = None

    def __post_init__(self):
        if self.depth < 1:
            raise ValueError("depth bound must be >= 1")
        if self.predicates is not None and not self.predicates:
            raise ValueError("predicate suite must be non-empty")


def default_predicates(universe):
    """Separation/substitutivity suite: sort tests, kind membership,
    quasi-cardinal thresholds."""
    preds = [
        ("micro", is_micro),
        ("macro", is_macro),
        ("classical-set", is_set),
    ]
    for kind in sorted(universe.kinds):
        preds.append((f"kind-{kind}",
                      lambda t, _k=kind: is_micro(t) and t.kind == _k))
    preds.extend([
        ("qc-at-least-1", lambda t: quasi_cardinal(t) >= 1),
        ("qc-at-least-2", lambda t: quasi_cardinal(t) >= 2),
        ("qc-at-most-1", lambda t: quasi_cardinal(t) <= 1),
    ])
    return preds


def canonical_universe_path(name):
    """Filesystem path of one of the shipped canonical universe files."""
    if name not in CANONICAL_UNIVERSES:
        raise KeyError(f"unknown canonical universe {name!r}; have {CANONICAL_UNIVERSES}")
    return resources.files("quasiset").joinpath("data", name)


def canonical_universe(name):
    ref = canonical_universe_path(name)
    data = json.loads(ref.read_text(encoding="utf-8"))
    return Universe.from_dict(data).seal()


# ---------------------------------------------------------------------------
# The working model

class _Model:
    """Entity pool + caches shared by the individual checks."""

    def __init__(self, universe, opts):
        if not isinstance(universe, Universe):
            raise TypeError("expected a Universe")
        if not universe.sealed:
            raise ValueError("universe must be sealed before checking")
        self.opts = opts
        self.bounded_note = ""
        self.u = Universe(kinds=universe.kinds,
                          macro_atoms=[m.name for m in universe.macro_atoms()])
        self._build_pool()
        self.atoms = self.u.atoms()
        self.qsets = tuple(q for q in self.pool if is_qset(q))
        self.empty = next(q for q in self.qsets if len(q) == 0)
        # signature classes over the pool
        sig_to_cid = {}
        classes = []
        self.cid = {}
        for e in self.pool:
            s = signature(e)
            if s not in sig_to_cid:
                sig_to_cid[s] = len(classes)
                classes.append([])
            c = sig_to_cid[s]
            classes[c].append(e)
            self.cid[_key(e)] = c
        self.classes = [tuple(c) for c in classes]
        self._quotients = {}
        self._partition = None
        if opts.predicates is None:
            self.predicates = default_predicates(self.u)
        else:
            self.predicates = list(opts.predicates)
        if opts.functional_conditions is None:
            self.functional_conditions = [
                ("const-empty", lambda e: self.empty),
                ("weak-singleton", lambda e: weak_singleton(self.u, e)),
                ("strong-singleton", lambda e: strong_singleton(self.u, e)),
            ]
        else:
            self.functional_conditions = list(opts.functional_conditions)

    def _build_pool(self):
        atoms = self.u.atoms()
        level = []
        if len(atoms) <= 12:
            base_subsets = [combo for r in range(len(atoms) + 1)
                            for combo in combinations(atoms, r)]
        else:
            # too many atoms to take every subset; keep small ones plus
            # the kind populations and the full stock
            self.bounded_note = "atom subsets restricted (population too large)"
            base_subsets = [combo for r in range(self.opts.nested_width + 1)
                            for combo in combinations(atoms, r)]
            base_subsets.extend(self.u.atoms_of_kind(k) for k in sorted(self.u.kinds))
            base_subsets.append(atoms)
        seen = set()
        for combo in base_subsets:
            q = self.u.qset(combo)
            if _key(q) not in seen:
                seen.add(_key(q))
                level.append(q)
        for _ in range(self.opts.depth - 1):
            members = list(atoms) + level
            fresh = []
            for r in range(self.opts.nested_width + 1):
                for combo in combinations(members, r):
                    q = self.u.qset(combo)
                    if _key(q) not in seen:
                        seen.add(_key(q))
                        fresh.append(q)
            level.extend(fresh)
        self.u.seal()
        self.pool = tuple(sorted(list(atoms) + level, key=_key))

    # -- helpers ------------------------------------------------------------

    def measure(self, tag, subject, true_value):
        if self.opts.fault_qc is not None:
            return self.opts.fault_qc(tag, subject, true_value)
        return true_value

    def same_class(self, a, b):
        return self.cid[_key(a)] == self.cid[_key(b)]

    def quotient(self, x):
        k = _key(x)
        if k not in self._quotients:
            self._quotients[k] = tuple(quotient_by_indist(x))
        return self._quotients[k]

    def verify_partition(self):
        """Exhaustively confirm that indistinguishability coincides with
        the signature-class partition of the pool; cached."""
        if self._partition is None:
            cost = 0
            witness = None
            for x in self.pool:
                cx = self.cid[_key(x)]
                for y in self.pool:
                    cost += 1
                    if indistinguishable(x, y) != (cx == self.cid[_key(y)]):
                        witness = (x, y)
                        break
                if witness:
                    break
            self._partition = (witness, cost)
        return self._partition

    def fresh_copy(self, q):
        """Extensionally equal duplicate object (distinct instance)."""
        return _make_qset(self.u, q.elements)


def _report(axiom, hits, cost, witness=None, note=""):
    if witness is not None:
        return AxiomReport(axiom, "fails", witness, cost, note)
    if hits == 0:
        return AxiomReport(axiom, "vacuous", None, cost, note)
    return AxiomReport(axiom, "holds", None, cost, note)


# ---------------------------------------------------------------------------
# Axioms

def _q1(m):
    cost = 0
    for e in m.pool:
        cost += 1
        if not indistinguishable(e, e):
            return _report("Q1", cost, cost, (e,), "reflexivity violated")
    return _report("Q1", cost, cost, note="reflexivity over the pool")


def _q2(m):
    witness, cost = m.verify_partition()
    note = "symmetry via exhaustive pair scan (relation matches a partition)"
    return _report("Q2", cost, cost, witness, note)


def _q3(m):
    witness, cost = m.verify_partition()
    if witness is not None:
        return _report("Q3", cost, cost, witness, "pair scan disagreed with partition")
    triples = 0
    for cls in m.classes:
        for x in cls:
            for y in cls:
                if not indistinguishable(x, y):
                    return _report("Q3", 1, cost + triples, (x, y), "class not coherent")
                for z in cls:
                    triples += 1
                    if not indistinguishable(x, z):
                        return _report("Q3", 1, cost + triples, (x, y, z))
    note = ("transitivity via within-class triples; cross-class chains are "
            "excluded by the verified pair scan")
    return _report("Q3", triples, cost + triples, note=note)


def _q4(m):
    # substitutivity for classical objects in API-expressible contexts
    pairs = [(e, e) for e in m.pool if is_classical(e)]
    pairs.extend((q, m.fresh_copy(q)) for q in m.qsets if is_set(q))
    contexts = [(name, p) for name, p in m.predicates]
    contexts.append(("quasi-cardinal", quasi_cardinal))
    contexts.append(("is-set", is_set))
    cost = 0
    hits = 0
    for x, y in pairs:
        if not indistinguishable(x, y):
            continue
        hits += 1
        for name, ctx in contexts:
            cost += 1
            if ctx(x) != ctx(y):
                return _report("Q4", hits, cost, (x, y), f"context {name} disagrees")
        for host in m.qsets:
            cost += 1
            if (x in host) != (y in host):
                return _report("Q4", hits, cost, (x, y, host), "membership context disagrees")
    return _report("Q4", hits, cost, note="classical pairs incl. fresh extensional copies")


def _q5(m):
    cost = 0
    for a in m.atoms:
        cost += 1
        if is_micro(a) and is_macro(a):
            return _report("Q5", cost, cost, (a,))
    return _report("Q5", cost, cost)


def _q6(m):
    cost = 0
    hits = 0
    for e in m.pool:
        if is_qset(e):
            for t in e:
                cost += 1
                hits += 1
                # containment exists; the container is a qset by sort
        else:
            cost += 1
            if quasi_cardinal(e) != 0:
                return _report("Q6", hits, cost, (e,), "atom reports elements")
    return _report("Q6", max(hits, 1), cost, note="atoms are element-free by construction")


def _q7(m):
    cost = 0
    for e in m.pool:
        cost += 1
        if is_set(e) and not is_qset(e):
            return _report("Q7", cost, cost, (e,))
    return _report("Q7", cost, cost)


def _q8(m):
    cost = 0
    hits = 0
    for q in m.qsets:
        for t in q:
            cost += 1
            if is_micro(t):
                hits += 1
                if is_set(q):
                    return _report("Q8", hits, cost, (q, t))
                break
    return _report("Q8", hits, cost)


def _q9(m):
    cost = 0
    for q in m.qsets:
        cost += 1
        classical_elements = all(is_classical(t) for t in q)
        if classical_elements != is_set(q):
            return _report("Q9", cost, cost, (q,))
    return _report("Q9", cost, cost)


def _q10(m):
    cost = 0
    hits = 0
    for cls in m.classes:
        for x in cls:
            for y in cls:
                cost += 1
                if is_micro(x):
                    hits += 1
                    if not is_micro(y):
                        return _report("Q10", hits, cost, (x, y))
    return _report("Q10", hits, cost, note="within-class scan (cross-class pairs never equivalent)")


def _q11(m):
    cost = 1
    e = m.empty
    if quasi_cardinal(e) != 0 or not is_set(e):
        return _report("Q11", 1, cost, (e,))
    return _report("Q11", 1, cost)


def _q12(m):
    pairs = [(q, q) for q in m.qsets if is_set(q)]
    pairs.extend((q, m.fresh_copy(q)) for q in m.qsets if is_set(q))
    cost = 0
    hits = 0
    for x, y in pairs:
        cost += 1
        if indistinguishable(x, y):
            hits += 1
            if not extensionally_equal(x, y):
                return _report("Q12", hits, cost, (x, y))
    # cross-class set pairs are never indistinguishable; confirm on classes
    for cls in m.classes:
        sets = [e for e in cls if is_set(e)]
        cost += len(sets)
        if len(sets) > 1:
            for a, b in combinations(sets, 2):
                hits += 1
                if not extensionally_equal(a, b):
                    return _report("Q12", hits, cost, (a, b))
    return _report("Q12", hits, cost)


def _q13(m):
    # weak pair membership is class-determined: scan one representative
    # per class pair, plus every weak singleton individually
    class_members = []
    for cls in m.classes:
        class_members.append(frozenset(_key(e) for e in cls))
    reps = [cls[0] for cls in m.classes]
    cost = 0
    for i, x in enumerate(reps):
        for j, y in enumerate(reps):
            cost += 1
            z = weak_pair(m.u, x, y)
            got = {_key(t) for t in z}
            if got != set(class_members[i] | class_members[j]):
                return _report("Q13", cost, cost, (x, y, z), "membership mismatch")
    for e in m.pool:
        cost += 1
        w = weak_singleton(m.u, e)
        if {_key(t) for t in w} != set(class_members[m.cid[_key(e)]]):
            return _report("Q13", cost, cost, (e, w), "weak singleton mismatch")
        if e not in w:
            return _report("Q13", cost, cost, (e, w), "x missing from [x]")
    note = "class representatives (membership depends only on equivalence classes)"
    return _report("Q13", cost, cost, note=note)


def _q14(m):
    cost = 0
    hits = 0
    for x in m.qsets:
        for name, pred in m.predicates:
            hits += 1
            y = separate(x, pred)
            if not y.subqset_of(x):
                return _report("Q14", hits, cost, (x, y), f"separation not a subqset ({name})")
            for t in x:
                cost += 1
                if (t in y) != bool(pred(t)):
                    return _report("Q14", hits, cost, (x, t), f"membership mismatch ({name})")
    return _report("Q14", hits, cost)


def _q15(m):
    cost = 0
    hits = 0
    for x in m.qsets:
        if not all(is_qset(t) for t in x):
            continue
        hits += 1
        union = m.empty
        for t in x:
            union = combine(union, t, "union")
        for t in x:
            for z in t:
                cost += 1
                if z not in union:
                    return _report("Q15", hits, cost, (x, t, z), "missing from union")
        for z in union:
            cost += 1
            if not any(z in t for t in x):
                return _report("Q15", hits, cost, (x, z), "union has a stray element")
    return _report("Q15", hits, cost)


def _q16(m):
    cost = 0
    hits = 0
    for x in m.qsets:
        if len(x) > m.opts.power_bound:
            continue
        hits += 1
        p = power_qset(x, bound=m.opts.power_bound)
        for t in p:
            cost += 1
            if not t.subqset_of(x):
                return _report("Q16", hits, cost, (x, t), "power member not a subqset")
        for t in m.qsets:
            cost += 1
            if t.subqset_of(x) != (t in p):
                return _report("Q16", hits, cost, (x, t), "membership mismatch")
    return _report("Q16", hits, cost)


def _q17(m):
    return AxiomReport("Q17", "not-checkable", None, 0,
                       "infinity cannot hold in a finite universe")


def _q18(m):
    cost = 0
    hits = 0
    for x in m.qsets:
        if len(x) == 0 or not all(is_qset(t) for t in x):
            continue
        hits += 1
        found = False
        for y in x:
            cost += 1
            if len(combine(y, x, "intersection")) == 0:
                found = True
                break
        if not found:
            return _report("Q18", hits, cost, (x,), "no membership-minimal element")
    return _report("Q18", hits, cost)


def _q19(m):
    cost = 0
    for a in m.atoms:
        cost += 1
        if quasi_cardinal(a) != 0:
            return _report("Q19", cost, cost, (a,))
    return _report("Q19", max(cost, 1), cost, note="vacuous when no atoms declared" if not m.atoms else "")


def _q20(m):
    cost = 0
    for q in m.qsets:
        cost += 1
        qc = quasi_cardinal(q)
        if not isinstance(qc, int) or qc < 0:
            return _report("Q20", cost, cost, (q,), "quasi-cardinal not a cardinal")
        if is_set(q) and qc != sum(1 for _ in q):
            return _report("Q20", cost, cost, (q,), "set cardinality mismatch")
    return _report("Q20", cost, cost)


def _q21(m):
    cost = 0
    hits = 0
    for q in m.qsets:
        cost += 1
        if len(q.elements) > 0:
            hits += 1
            if quasi_cardinal(q) == 0:
                return _report("Q21", hits, cost, (q,))
    return _report("Q21", hits, cost)


def _q22(m):
    cost = 0
    for x in m.qsets:
        elems = x.elements
        for beta in range(len(elems) + 1):
            cost += 1
            sub = _make_qset(m.u, elems[:beta])
            if quasi_cardinal(sub) != beta or not sub.subqset_of(x):
                return _report("Q22", cost, cost, (x, sub))
    return _report("Q22", cost, cost)


def _q23_q24(m):
    cost = 0
    w23 = w24 = None
    hits23 = hits24 = 0
    for x in m.qsets:
        for y in m.qsets:
            cost += 1
            if y.subqset_of(x):
                hits23 += 1
                if quasi_cardinal(y) > quasi_cardinal(x):
                    w23 = w23 or (y, x)
                if not extensionally_equal(y, x):
                    hits24 += 1
                    if quasi_cardinal(y) >= quasi_cardinal(x):
                        w24 = w24 or (y, x)
    return (_report("Q23", hits23, cost, w23),
            _report("Q24", hits24, cost, w24, "finiteness is automatic here"))


def _q25(m):
    cost = 0
    hits = 0
    for x in m.qsets:
        for y in m.qsets:
            cost += 1
            if len(combine(x, y, "intersection")) == 0:
                hits += 1
                u = combine(x, y, "union")
                if quasi_cardinal(u) != quasi_cardinal(x) + quasi_cardinal(y):
                    return _report("Q25", hits, cost, (x, y, u))
    return _report("Q25", hits, cost)


def _q26prime(m):
    cost = 0
    hits = 0
    for x in m.qsets:
        if not is_pure(x):
            continue
        N = quasi_cardinal(x)
        for n in range(1, m.opts.q26_n_cap + 1):
            if n ** N > m.opts.q26_capacity:
                continue
            hits += 1
            cost += n ** N
            counted = m.measure("tuple-count", (x, n), stats._count_distinct_tuples(x, n))
            if counted != n ** N:
                note = f"n={n}: counted {counted}, expected {n ** N}"
                return _report("Q26'", hits, cost, (x,), note)
    return _report("Q26'", hits, cost,
                   note=f"pure sub-collections, n up to {m.opts.q26_n_cap}")


def _q27(m):
    cost = 0
    hits = 0
    for x in m.qsets:
        qx = m.quotient(x)
        for y in m.qsets:
            cost += 1
            qy = m.quotient(y)
            matched = (set(qx) == set(qy))  # classwise: same sort, same size
            if matched:
                hits += 1
                if not indistinguishable(x, y):
                    return _report("Q27", hits, cost, (x, y))
    return _report("Q27", hits, cost)


def _q28(m):
    cost = 0
    hits = 0
    for x in m.qsets:
        for name, f in m.functional_conditions:
            elems = x.elements
            functional = True
            for w in elems:
                for w2 in elems:
                    cost += 1
                    if indistinguishable(w, w2) and not indistinguishable(f(w), f(w2)):
                        functional = False
                        break
                if not functional:
                    break
            if not functional:
                continue
            hits += 1
            image = _make_qset(m.u, [f(w) for w in elems])
            for z in image:
                cost += 1
                if not any(indistinguishable(z, f(w)) for w in elems):
                    return _report("Q28", hits, cost, (x, z), f"image leak ({name})")
    return _report("Q28", hits, cost)


def _q29(m):
    cost = 0
    hits = 0
    for x in m.qsets:
        if len(x) == 0 or not all(is_qset(t) for t in x):
            continue
        members = x.elements
        if any(len(t) == 0 for t in members):
            continue
        if any(len(combine(a, b, "intersection")) > 0
               for a, b in combinations(members, 2)):
            continue
        hits += 1
        chosen = None
        candidates = []
        union = m.empty
        for t in members:
            union = combine(union, t, "union")
        candidates.append(union)
        candidates.extend(m.qsets)
        for candidate in candidates:
            ok = True
            for y in members:
                for v in y:
                    cost += 1
                    if not _q29_selector_exists(m, v, y, candidate):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                chosen = candidate
                break
        if chosen is None:
            return _report("Q29", hits, cost, (x,), "no selector qset found by search")
    return _report("Q29", hits, cost,
                   note="satisfiability by bounded search over the pool plus the family union")


def _q29_selector_exists(m, v, y, u_):
    # exists a one-element w subset of [v] with w∩y indistinguishable from w∩u_
    for r in m.u._class_members(signature(v)):
        w = _make_qset(m.u, (r,))
        if indistinguishable(combine(w, y, "intersection"),
                             combine(w, u_, "intersection")):
            return True
    return False


# ---------------------------------------------------------------------------
# Theorems

def _t1(m):
    cost = 0
    hits = 0
    for cls in m.classes:
        for x in cls:
            for y in cls:
                cost += 1
                hits += 1
                if is_macro(x) != is_macro(y) or is_qset(x) != is_qset(y):
                    return _report("T1", hits, cost, (x, y))
    return _report("T1", hits, cost, note="within-class scan")


def _t2(m):
    cost = 0
    hits = 0
    for x in m.qsets:
        if not is_pure(x) or len(x) == 0:
            continue
        if len(m.quotient(x)) != 1:
            continue
        hits += 1
        rep = check_order_impossibility(x)
        cost += rep.cost
        if rep.verdict == "fails":
            return _report("T2", hits, cost, rep.witness, rep.note)
    return _report("T2", hits, cost, note="one-kind pure collections in the pool")


def _t3(m):
    # Sim(x, y) iff each side has at most one element class and the
    # classes agree; precomputed from quotients
    cost = 0
    hits = 0
    for x in m.qsets:
        qx = m.quotient(x)
        for y in m.qsets:
            cost += 1
            qy = m.quotient(y)
            if len(qx) > 1 or len(qy) > 1:
                continue
            if qx and qy and qx[0][0] != qy[0][0]:
                continue
            if quasi_cardinal(x) != quasi_cardinal(y):
                continue
            hits += 1
            if not indistinguishable(x, y):
                return _report("T3", hits, cost, (x, y))
    return _report("T3", hits, cost, note="similarity derived from element classes")


def _t4(m):
    cost = 0
    hits = 0
    for q in m.qsets:
        cost += 1
        hits += 1
        if not indistinguishable(q, m.fresh_copy(q)):
            return _report("T4", hits, cost, (q,))
    note = "same-membership pairs are extensional duplicates (pool is extensional)"
    return _report("T4", hits, cost, note=note)


def _t5(m):
    reps = [cls[0] for cls in m.classes]
    singletons = [weak_singleton(m.u, r) for r in reps]
    cost = 0
    for i, x in enumerate(reps):
        for j, y in enumerate(reps):
            cost += 1
            lhs = (i == j) and quasi_cardinal(singletons[i]) == quasi_cardinal(singletons[j])
            rhs = indistinguishable(singletons[i], singletons[j])
            if lhs != rhs:
                return _report("T5", cost, cost, (x, y), "weak singleton criterion")
    return _report("T5", cost, cost, note="class representatives")


def _t6(m):
    cost = 0
    for e in m.pool:
        cost += 1
        ss = strong_singleton(m.u, e)
        if quasi_cardinal(ss) != 1:
            return _report("T6", cost, cost, (e, ss), "wrong quasi-cardinal")
        if not ss.subqset_of(weak_singleton(m.u, e)):
            return _report("T6", cost, cost, (e, ss), "not inside the weak singleton")
        member = ss.elements[0]
        if not indistinguishable(member, e):
            return _report("T6", cost, cost, (e, ss), "representative not equivalent")
    return _report("T6", cost, cost)


def _t7(m):
    cost = 0
    for q in m.qsets:
        c1 = m.fresh_copy(q)
        c2 = m.fresh_copy(q)
        cost += 4
        if not (extensionally_equal(q, q) and extensionally_equal(q, c1)
                and extensionally_equal(c1, q) and extensionally_equal(c1, c2)
                and extensionally_equal(q, c2)):
            return _report("T7", cost, cost, (q,), "equivalence laws")
        if not indistinguishable(q, c1):
            return _report("T7", cost, cost, (q, c1), "equality must imply equivalence")
        if quasi_cardinal(q) != quasi_cardinal(c1) or is_set(q) != is_set(c1):
            return _report("T7", cost, cost, (q, c1), "substitution in basic contexts")
    for a in m.atoms:
        if is_macro(a):
            cost += 1
            if not extensionally_equal(a, a):
                return _report("T7", cost, cost, (a,))
    return _report("T7", cost, cost, note="reflexivity, symmetry, transitivity, substitution")


def _t8(m):
    from .kernel import permutation_swap_check
    cost = 0
    hits = 0
    for x in m.qsets:
        micro_members = [t for t in x if is_micro(t)]
        for z in micro_members:
            for w in m.u.atoms_of_kind(z.kind):
                cost += 1
                hits += 1
                if not permutation_swap_check(x, z, w):
                    return _report("T8", hits, cost, (x, z, w))
    return _report("T8", hits, cost, note="all (x, z, w) with z in x and w of z's kind")


def _t9(m):
    cost = 0
    hits = 0
    for x in m.qsets:
        if not is_set(x) or len(x) > 4:
            continue
        hits += 1
        n_found, pair_cost = _count_disjoint_covers(m, x, 2)
        cost += pair_cost
        if n_found != 2 ** len(x):
            return _report("T9", hits, cost, (x,), f"pairs: {n_found} != 2^{len(x)}")
        if len(x) <= 3:
            n3, c3 = _count_disjoint_covers(m, x, 3)
            cost += c3
            if n3 != 3 ** len(x):
                return _report("T9", hits, cost, (x,), f"triples: {n3} != 3^{len(x)}")
    return _report("T9", hits, cost, note="classical sets of the pool, tuple length 2 and 3")


def _count_disjoint_covers(m, x, n):
    """Count ordered n-tuples of disjoint subsets covering x, by direct
    enumeration over the power qset."""
    subsets = list(power_qset(x, bound=m.opts.power_bound))
    count = 0
    cost = 0

    def rec(i, remaining):
        nonlocal count, cost
        if i == n - 1:
            cost += 1
            # the last component is forced to equal what remains
            if any(extensionally_equal(s, remaining) for s in subsets):
                count += 1
            return
        for s in subsets:
            cost += 1
            if s.subqset_of(remaining):
                rec(i + 1, combine(remaining, s, "difference"))

    rec(0, x)
    return count, cost


def _l1(m):
    cost = 0
    hits = 0
    for x in m.qsets:
        if not is_set(x) or len(x) > m.opts.power_bound:
            continue
        hits += 1
        cost += 2 ** len(x)
        measured = m.measure("power-qset", x, quasi_cardinal(power_qset(x, bound=m.opts.power_bound)))
        if measured != 2 ** len(x):
            return _report("L1", hits, cost, (x,), f"counted {measured}")
    return _report("L1", hits, cost)


# ---------------------------------------------------------------------------
# Public entry points

_AXIOM_CHECKS = [
    ("Q1", _q1), ("Q2", _q2), ("Q3", _q3), ("Q4", _q4), ("Q5", _q5),
    ("Q6", _q6), ("Q7", _q7), ("Q8", _q8), ("Q9", _q9), ("Q10", _q10),
    ("Q11", _q11), ("Q12", _q12), ("Q13", _q13), ("Q14", _q14),
    ("Q15", _q15), ("Q16", _q16), ("Q17", _q17), ("Q18", _q18),
    ("Q19", _q19), ("Q20", _q20), ("Q21", _q21), ("Q22", _q22),
    ("Q23+Q24", _q23_q24), ("Q25", _q25), ("Q26'", _q26prime),
    ("Q27", _q27), ("Q28", _q28), ("Q29", _q29),
]

_THEOREM_CHECKS = [
    ("T1", _t1), ("T2", _t2), ("T3", _t3), ("T4", _t4), ("T5", _t5),
    ("T6", _t6), ("T7", _t7), ("T8", _t8), ("T9", _t9), ("L1", _l1),
]


def check_axioms(universe, opts=None):
    """Evaluate every axiom against the universe; one report each."""
    opts = opts or CheckOptions()
    m = _Model(universe, opts)
    reports = []
    for _name, fn in _AXIOM_CHECKS:
        out = fn(m)
        if isinstance(out, tuple):
            reports.extend(out)
        else:
            reports.append(out)
    if m.bounded_note:
        for r in reports:
            r.note = (r.note + "; " if r.note else "") + m.bounded_note
    return reports


def check_theorems(universe, opts=None):
    """Evaluate the stated theorems; a failure indicates a kernel bug."""
    opts = opts or CheckOptions()
    m = _Model(universe, opts)
    reports = [fn(m) for _, fn in _THEOREM_CHECKS]
    if m.bounded_note:
        for r in reports:
            r.note = (r.note + "; " if r.note else "") + m.bounded_note
    return reports


def check_order_impossibility(x):
    """No equivalence-invariant relation on a one-kind pure qset is a
    strict order under the irreflexivity-under-equivalence reading.

    Enumerates every relation that is a union of class products (for a
    one-kind qset: the empty and the full relation) and confirms each
    non-empty one contains a pair of equivalent elements.
    """
    if not is_pure(x):
        raise ValueError("x must be a pure qset")
    classes = quotient_by_indist(x)
    if len(classes) > 1:
        raise ValueError("x must be one-kind (all elements pairwise equivalent)")
    elems = x.elements
    if not elems:
        return AxiomReport("T2", "holds", None, 0, "empty collection: no relations to rule out")
    k = len(classes)
    blocks = [(i, j) for i in range(k) for j in range(k)]
    cost = 0
    for size in range(1, len(blocks) + 1):
        for chosen in combinations(blocks, size):
            # all pairs in the chosen class products
            found_equiv_pair = False
            for (i, j) in chosen:
                for u_ in elems:
                    for v in elems:
                        cost += 1
                        if indistinguishable(u_, v):
                            found_equiv_pair = True
                            break
                    if found_equiv_pair:
                        break
                if found_equiv_pair:
                    break
            if not found_equiv_pair:
                return AxiomReport("T2", "fails", (x,), cost,
                                   f"relation {chosen} is equivalence-irreflexive")
    note = "exhaustive scan of invariant relations"
    if len(elems) == 1:
        note += "; single element, strictness vacuous"
    return AxiomReport("T2", "holds", None, cost, note)
