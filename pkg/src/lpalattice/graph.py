"""Directed graphs with multiplicity bundles and their admissible-pair lattice.

A graph is finitely presented: finitely many vertices and finitely many
edge bundles, each bundle carrying a multiplicity that is either a positive
integer (that many parallel edges) or omega (an infinite family, which is
how infinite emitters and breaking vertices arise while keeping every
enumeration finite).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache


class GraphError(ValueError):
    pass


class _Omega:
    """Multiplicity marker for an infinite bundle."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"


OMEGA = _Omega()

MAX_LATTICE_VERTICES = 16  # subset enumeration of hereditary saturated sets


@dataclass(frozen=True)
class Bundle:
    name: str
    source: str
    target: str
    multiplicity: object = 1  # positive int or OMEGA

    @property
    def is_infinite(self) -> bool:
        return self.multiplicity is OMEGA


class Graph:
    """Immutable directed graph given by vertices and bundles."""

    def __init__(self, vertices, bundles):
        self.vertices = frozenset(vertices)
        bundles = tuple(sorted(bundles, key=lambda b: b.name))
        seen = set()
        for b in bundles:
            if b.name in seen:
                raise GraphError(f"duplicate bundle id {b.name!r}")
            seen.add(b.name)
            if b.source not in self.vertices:
                raise GraphError(f"unknown vertex id {b.source!r} in bundle {b.name!r}")
            if b.target not in self.vertices:
                raise GraphError(f"unknown vertex id {b.target!r} in bundle {b.name!r}")
            if b.multiplicity is not OMEGA and (not isinstance(b.multiplicity, int) or b.multiplicity < 1):
                raise GraphError(f"bad multiplicity {b.multiplicity!r} in bundle {b.name!r}")
        self.bundles = bundles
        self._out = {v: [] for v in self.vertices}
        self._in = {v: [] for v in self.vertices}
        for b in bundles:
            self._out[b.source].append(b)
            self._in[b.target].append(b)
        self._key = (self.vertices, self.bundles)
        self._hash = hash(self._key)

    def __eq__(self, other):
        return isinstance(other, Graph) and self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Graph({sorted(self.vertices)}, {len(self.bundles)} bundles)"

    # -- local structure -------------------------------------------------
    def out_bundles(self, v: str):
        return self._out[v]

    def in_bundles(self, v: str):
        return self._in[v]

    def check_vertices(self, vs):
        unknown = set(vs) - self.vertices
        if unknown:
            raise GraphError(f"unknown vertex id(s) {sorted(unknown)}")

    def is_infinite_emitter(self, v: str) -> bool:
        return any(b.is_infinite for b in self._out[v])

    def is_sink(self, v: str) -> bool:
        return not self._out[v]

    def is_regular(self, v: str) -> bool:
        return bool(self._out[v]) and not self.is_infinite_emitter(v)

    def out_targets(self, v: str) -> frozenset:
        return frozenset(b.target for b in self._out[v])

    def successors(self, v: str) -> frozenset:
        return self.out_targets(v)

    def escape_count(self, v: str, H) -> object:
        """Number of edges from v whose target avoids H (OMEGA if infinite)."""
        total = 0
        for b in self._out[v]:
            if b.target not in H:
                if b.is_infinite:
                    return OMEGA
                total += b.multiplicity
        return total

    def reachable(self, v: str) -> frozenset:
        seen = {v}
        stack = [v]
        while stack:
            for w in self.out_targets(stack.pop()):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return frozenset(seen)


# -- hereditary and saturated machinery ------------------------------------


def is_hereditary(g: Graph, H) -> bool:
    return all(b.target in H for v in H for b in g.out_bundles(v))


def is_saturated(g: Graph, H) -> bool:
    for v in g.vertices - set(H):
        if g.is_regular(v) and g.out_targets(v) <= set(H):
            return False
    return True


def hereditary_closure(g: Graph, seed) -> frozenset:
    """Smallest hereditary superset: follow bundles out to a fixpoint."""
    g.check_vertices(seed)
    out = set(seed)
    stack = list(seed)
    while stack:
        for w in g.out_targets(stack.pop()):
            if w not in out:
                out.add(w)
                stack.append(w)
    return frozenset(out)


def _lambda_closure(g: Graph, base, absorb) -> frozenset:
    # one sweep adds every vertex, regular or in absorb, all of whose
    # targets already lie inside; repeat to a fixpoint
    cur = set(base)
    changed = True
    while changed:
        changed = False
        for v in g.vertices - cur:
            if (g.is_regular(v) or v in absorb) and g.out_targets(v) <= cur:
                cur.add(v)
                changed = True
    return frozenset(cur)


def breaking_vertices(g: Graph, H) -> frozenset:
    """Infinite emitters outside H with finitely many (but some) edges avoiding H."""
    if not is_hereditary(g, H):
        raise GraphError("set is not hereditary")
    out = set()
    for v in g.vertices - set(H):
        if g.is_infinite_emitter(v):
            n = g.escape_count(v, H)
            if n is not OMEGA and n > 0:
                out.add(v)
    return frozenset(out)


def saturated_closure(g: Graph, base, absorb=frozenset()) -> frozenset:
    """The absorb-saturation of a hereditary set.

    Adds every vertex that is regular or in absorb once all of its targets
    are inside; the result is hereditary and saturated, and additionally
    swallows the absorb vertices whose edges it exhausts.
    """
    g.check_vertices(base)
    g.check_vertices(absorb)
    if not is_hereditary(g, base):
        raise GraphError("set is not hereditary")
    allowed = set(base) | breaking_vertices(g, base)
    if not set(absorb) <= allowed:
        raise GraphError(f"absorb vertices out of range: {sorted(set(absorb) - allowed)}")
    return _lambda_closure(g, base, frozenset(absorb))


def hereditary_saturated_closure(g: Graph, seed) -> frozenset:
    return _lambda_closure(g, hereditary_closure(g, seed), frozenset())


# -- admissible pairs -------------------------------------------------------


@dataclass(frozen=True)
class AdmissiblePair:
    """A hereditary saturated set together with some of its breaking vertices."""

    H: frozenset
    S: frozenset

    def key(self):
        return (len(self.H), tuple(sorted(self.H)), tuple(sorted(self.S)))

    def label(self) -> str:
        h = "{" + ",".join(sorted(self.H)) + "}"
        if self.S:
            return h + "|{" + ",".join(sorted(self.S)) + "}"
        return h

    @staticmethod
    def parse(text: str) -> "AdmissiblePair":
        text = text.strip()
        parts = text.split("|")
        if len(parts) > 2:
            raise GraphError(f"bad pair label {text!r}")

        def one(part):
            part = part.strip()
            if not (part.startswith("{") and part.endswith("}")):
                raise GraphError(f"bad pair label {text!r}")
            inner = part[1:-1].strip()
            return frozenset(s.strip() for s in inner.split(",") if s.strip())

        h = one(parts[0])
        s = one(parts[1]) if len(parts) == 2 else frozenset()
        return AdmissiblePair(h, s)

    def __str__(self):
        return self.label()


BOTTOM = AdmissiblePair(frozenset(), frozenset())


class PairLattice:
    """The finite lattice of admissible pairs of a graph."""

    def __init__(self, graph: Graph):
        if len(graph.vertices) > MAX_LATTICE_VERTICES:
            raise GraphError(
                f"admissible-pair enumeration is limited to {MAX_LATTICE_VERTICES} vertices"
            )
        self.graph = graph
        hs_sets = {hereditary_saturated_closure(graph, k) for n in range(len(graph.vertices) + 1)
                   for k in itertools.combinations(sorted(graph.vertices), n)}
        pairs = []
        for H in hs_sets:
            bv = sorted(breaking_vertices(graph, H))
            for n in range(len(bv) + 1):
                for s in itertools.combinations(bv, n):
                    pairs.append(AdmissiblePair(H, frozenset(s)))
        self.pairs = tuple(sorted(pairs, key=AdmissiblePair.key))
        self._index = {p: i for i, p in enumerate(self.pairs)}
        self.bottom = BOTTOM
        self.top = AdmissiblePair(graph.vertices, frozenset())
        self.star = tuple(p for p in self.pairs if p != BOTTOM)
        self._star_index = {p: i for i, p in enumerate(self.star)}
        self._join_table = None
        self._leq_table = None
        self._ji = None

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def __contains__(self, pair):
        return pair in self._index

    def check(self, pair: AdmissiblePair):
        if pair not in self._index:
            raise GraphError(f"{pair.label()} is not an admissible pair of this graph")

    def leq(self, a: AdmissiblePair, b: AdmissiblePair) -> bool:
        return a.H <= b.H and a.S <= (b.H | b.S)

    def meet(self, a: AdmissiblePair, b: AdmissiblePair) -> AdmissiblePair:
        h = a.H & b.H
        s = (a.S & b.S) | ((a.S | b.S) & (a.H | b.H))
        return AdmissiblePair(h, s)

    def join(self, a: AdmissiblePair, b: AdmissiblePair) -> AdmissiblePair:
        return self.sup([a, b])

    def sup(self, pairs) -> AdmissiblePair:
        """Supremum of any collection; the empty collection gives the bottom."""
        pairs = list(pairs)
        if not pairs:
            return BOTTOM
        h = frozenset().union(*(p.H for p in pairs))
        s = frozenset().union(*(p.S for p in pairs))
        sat = _lambda_closure(self.graph, h, s)
        return AdmissiblePair(sat, s - sat)

    # index-level tables for the hot loops in the classification lattice
    def star_index(self, pair: AdmissiblePair) -> int:
        return self._star_index[pair]

    def join_table(self):
        if self._join_table is None:
            n = len(self.star)
            table = [[0] * n for _ in range(n)]
            for i in range(n):
                for j in range(i + 1):
                    k = self._star_index[self.join(self.star[i], self.star[j])]
                    table[i][j] = table[j][i] = k
            self._join_table = table
        return self._join_table

    def leq_table(self):
        if self._leq_table is None:
            self._leq_table = [
                [self.leq(a, b) for b in self.star] for a in self.star
            ]
        return self._leq_table

    def star_join_irreducibles(self):
        """Star indices of the join-irreducible pairs.

        The lattice is distributive, so every pair is the supremum of the
        join-irreducibles below it, which is what makes saturated functions
        recoverable from their values there.
        """
        if self._ji is None:
            ji = []
            for i, p in enumerate(self.star):
                below = [q for q in self.pairs if q != p and self.leq(q, p)]
                if self.sup(below) != p:
                    ji.append(i)
            self._ji = ji
        return self._ji

    def hasse_edges(self):
        """Covering relations, for drawing the lattice."""
        edges = []
        for a in self.pairs:
            for b in self.pairs:
                if a == b or not self.leq(a, b):
                    continue
                if any(c not in (a, b) and self.leq(a, c) and self.leq(c, b) for c in self.pairs):
                    continue
                edges.append((a, b))
        return edges


@lru_cache(maxsize=None)
def pair_lattice(g: Graph) -> PairLattice:
    return PairLattice(g)


# -- cycles -----------------------------------------------------------------


@dataclass(frozen=True)
class CycleClass:
    """A closed simple path up to rotation.

    Steps are (vertex, bundle, slot) triples in canonical rotation (the
    lexicographically least one, which starts at the smallest vertex since
    cycle vertices are distinct).  A bundle of infinite multiplicity is
    represented by the single slot 0.
    """

    steps: tuple

    @property
    def base(self) -> str:
        return self.steps[0][0]

    def vertices(self) -> frozenset:
        return frozenset(v for v, _, _ in self.steps)

    def bundle_at(self, v: str) -> str:
        for w, b, _ in self.steps:
            if w == v:
                return b
        raise GraphError(f"vertex {v!r} is not on the cycle")

    def label(self) -> str:
        return "-".join(f"{b}.{s}" for _, b, s in self.steps)

    def __str__(self):
        return self.label()

    @staticmethod
    def canonical(steps) -> "CycleClass":
        steps = tuple(steps)
        best = min(range(len(steps)), key=lambda i: steps[i:] + steps[:i])
        return CycleClass(steps[best:] + steps[:best])


def _vertex_cycles(g: Graph):
    """Simple cycles as vertex tuples, least vertex first."""
    order = sorted(g.vertices)
    results = []

    def extend(start, path, on_path):
        for w in sorted(g.out_targets(path[-1])):
            if w == start:
                results.append(tuple(path))
            elif w > start and w not in on_path:
                on_path.add(w)
                path.append(w)
                extend(start, path, on_path)
                path.pop()
                on_path.remove(w)

    for start in order:
        extend(start, [start], {start})
    return results


def cycles(g: Graph) -> list[CycleClass]:
    """All cycles (closed simple paths up to rotation), canonically rotated."""
    out = []
    for vcycle in _vertex_cycles(g):
        n = len(vcycle)
        choices = []
        for i in range(n):
            v, w = vcycle[i], vcycle[(i + 1) % n]
            step = []
            for b in g.out_bundles(v):
                if b.target != w:
                    continue
                slots = [0] if b.is_infinite else range(b.multiplicity)
                step.extend((v, b.name, s) for s in slots)
            choices.append(step)
        for combo in itertools.product(*choices):
            out.append(CycleClass.canonical(combo))
    return sorted(set(out), key=lambda c: (len(c.steps), c.steps))


def _exit_targets(g: Graph, c: CycleClass) -> frozenset:
    """Ranges of the exits of c; a slot left over on a cycle bundle is an exit."""
    cverts = c.vertices()
    targets = set()
    for v in cverts:
        used = c.bundle_at(v)
        for b in g.out_bundles(v):
            if b.name != used or b.is_infinite or b.multiplicity >= 2:
                targets.add(b.target)
    return frozenset(targets)


def exclusive_cycles(g: Graph) -> list[CycleClass]:
    """Cycles whose base vertex carries exactly one closed simple path.

    A cycle is disqualified exactly when some exit can flow back into the
    cycle: that return trip is a second closed simple path at the base.
    """
    out = []
    for c in cycles(g):
        cverts = c.vertices()
        if all(g.reachable(t).isdisjoint(cverts) for t in _exit_targets(g, c)):
            out.append(c)
    return out


def cycle_vertex_closure(g: Graph, c: CycleClass) -> frozenset:
    return hereditary_saturated_closure(g, c.vertices())


def exit_closure(g: Graph, c: CycleClass) -> frozenset:
    """Hereditary saturated closure of the ranges of the exits of c."""
    if c not in set(cycles(g)):
        raise GraphError(f"{c.label()} is not a cycle of this graph")
    return hereditary_saturated_closure(g, _exit_targets(g, c))


def find_cycle(g: Graph, label: str) -> CycleClass:
    for c in cycles(g):
        if c.label() == label:
            return c
    raise GraphError(f"no cycle labelled {label!r}")


# -- global conditions -------------------------------------------------------


def downward_directed(g: Graph, S) -> bool:
    """Whether every two members of S flow to a common member of S."""
    g.check_vertices(S)
    S = set(S)
    reach = {v: g.reachable(v) for v in S}
    return all(S & reach[v] & reach[w] for v in S for w in S)


def has_condition_k(g: Graph) -> bool:
    return not exclusive_cycles(g)


def is_row_finite(g: Graph) -> bool:
    return not any(b.is_infinite for b in g.bundles)
