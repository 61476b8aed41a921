"""Shared fixtures: a catalog of small graphs and brute-force oracles.

The oracles here recompute expected values along routes independent of the
library's own algorithms: subset enumeration for closures, the literal
union-over-subsets formula for saturation (element sets over finite rings),
and integer row reduction for Laurent ideal membership.
"""

import itertools
import random

from lpalattice import (
    OMEGA,
    Bundle,
    Graph,
    IntegersMod,
    LaurentIdeal,
    LaurentPoly,
    PrimeField,
    RingIdeal,
    ZZ,
)
from lpalattice.ideals import ClassifiedIdeal, SaturatedFunction, _saturate_vals


# -- graph catalog ----------------------------------------------------------


def toeplitz():
    return Graph(["u", "v"], [Bundle("e", "u", "u"), Bundle("f", "u", "v")])


def fork():
    return Graph(["u", "v", "w"], [Bundle("a", "u", "v"), Bundle("b", "u", "w")])


def chain(n):
    verts = [f"v{i}" for i in range(n)]
    bundles = [Bundle(f"e{i}", f"v{i}", f"v{i+1}") for i in range(n - 1)]
    return Graph(verts, bundles)


def single_vertex():
    return Graph(["v"], [])


def isolated(n):
    return Graph([f"v{i}" for i in range(n)], [])


def prime_counterexample():
    # two loops at v plus an edge down to w
    return Graph(
        ["v", "w"],
        [Bundle("e1", "v", "v"), Bundle("e2", "v", "v"), Bundle("f", "v", "w")],
    )


def omega_fork():
    return Graph(
        ["w", "a", "b"], [Bundle("g", "w", "a", OMEGA), Bundle("h", "w", "b")]
    )


def loop_no_exit():
    return Graph(["v"], [Bundle("e", "v", "v")])


def double_loop():
    return Graph(["v"], [Bundle("e", "v", "v", 2)])


def toeplitz_with_sink():
    return Graph(
        ["u", "v", "w"],
        [Bundle("e", "u", "u"), Bundle("f", "u", "v"), Bundle("g", "v", "w")],
    )


def two_cycle():
    return Graph(["a", "b"], [Bundle("e", "a", "b"), Bundle("f", "b", "a")])


def two_cycle_with_exit():
    return Graph(
        ["a", "b", "s"],
        [Bundle("e", "a", "b"), Bundle("f", "b", "a"), Bundle("g", "a", "s")],
    )


def star4_graph():
    # loops feeding a shared sink; its pair lattice has 4 nonbottom pairs
    return Graph(
        ["a", "b", "c"],
        [
            Bundle("e", "a", "a"),
            Bundle("f", "c", "b", 2),
            Bundle("g", "c", "c"),
            Bundle("h", "a", "b"),
        ],
    )


def star6_graph():
    # a chain of loops with an infinite bundle; 6 nonbottom pairs
    return Graph(
        ["p", "q", "r", "s"],
        [
            Bundle("e", "r", "q"),
            Bundle("f", "s", "r"),
            Bundle("g", "q", "q"),
            Bundle("h", "r", "r"),
            Bundle("k", "r", "p", OMEGA),
        ],
    )


def law_suite_graphs():
    """Named (graph, ring) instances for the randomized lattice-law suite."""
    z4, z6, f2, f3 = IntegersMod(4), IntegersMod(6), PrimeField(2), PrimeField(3)
    return [
        ("single/Z", single_vertex(), ZZ),
        ("chain2/Z", chain(2), ZZ),
        ("chain3/Z4", chain(3), z4),
        ("fork/Z", fork(), ZZ),
        ("fork/Z6", fork(), z6),
        ("isolated2/Z12", isolated(2), IntegersMod(12)),
        ("toeplitz/Z", toeplitz(), ZZ),
        ("toeplitz-sink/Z", toeplitz_with_sink(), ZZ),
        ("two-cycle/Z", two_cycle(), ZZ),
        ("two-cycle-exit/Z", two_cycle_with_exit(), ZZ),
        ("prime-example/Z", prime_counterexample(), ZZ),
        ("omega-fork/Z4", omega_fork(), z4),
        ("loop/F2", loop_no_exit(), f2),
        ("double-loop/F3", double_loop(), f3),
    ]


def random_graph(rng: random.Random, max_v=5, max_b=8, allow_omega=True):
    n = rng.randint(1, max_v)
    verts = [f"v{i}" for i in range(n)]
    bundles = []
    for k in range(rng.randint(0, max_b)):
        mult = rng.choice([1, 1, 1, 1, 2, 3] + ([OMEGA] if allow_omega else []))
        bundles.append(Bundle(f"b{k}", rng.choice(verts), rng.choice(verts), mult))
    return Graph(verts, bundles)


# -- brute-force closure oracle ----------------------------------------------


def naive_saturated_closure(g: Graph, base, absorb=frozenset()):
    """Smallest superset of base that is hereditary, saturated, and absorbs.

    Computed by intersecting every subset of the vertices that satisfies the
    three closure conditions directly; only usable for small graphs.
    """
    verts = sorted(g.vertices)
    best = None
    for bits in range(1 << len(verts)):
        sub = frozenset(v for i, v in enumerate(verts) if bits >> i & 1)
        if not set(base) <= sub:
            continue
        if any(b.target not in sub for v in sub for b in g.out_bundles(v)):
            continue
        closed = True
        for v in g.vertices - sub:
            if (g.is_regular(v) or v in absorb) and g.out_targets(v) <= sub:
                closed = False
                break
        if not closed:
            continue
        best = sub if best is None else best & sub
    return best


# -- subset-formula saturation oracle (finite rings) ---------------------------


def subset_formula_saturation(ctx, raw):
    """The union-over-all-subsets closure, evaluated on literal element sets.

    First makes the raw table order-reversing, then for each pair unions, over
    every subset of pairs whose supremum is that pair, the intersection of the
    corresponding element sets.  Returns canonical generators, asserting along
    the way that each union really is an ideal.
    """
    ring = ctx.ring
    star = ctx.star
    n = len(star)
    leq = ctx.lattice.leq_table()
    f0 = list(raw)
    for i in range(n):
        for j in range(n):
            if leq[i][j]:
                f0[i] = ring.gen_sum(f0[i], raw[j])
    elements = list(ring.elements())
    sets0 = [frozenset(x for x in elements if ring.gen_member(f0[i], x)) for i in range(n)]
    sup_index = {}
    for subset in range(1, 1 << n):
        members = [star[i] for i in range(n) if subset >> i & 1]
        sup_index[subset] = ctx.lattice.star_index(ctx.lattice.sup(members))
    out = []
    for target in range(n):
        union = set()
        for subset, sup in sup_index.items():
            if sup != target:
                continue
            meet = None
            for i in range(n):
                if subset >> i & 1:
                    meet = sets0[i] if meet is None else meet & sets0[i]
            union |= meet
        gen = ring.gen_from_elements(union)
        assert union == {x for x in elements if ring.gen_member(gen, x)}, (
            "union over subsets is not an ideal"
        )
        out.append(gen)
    return tuple(out)


# -- integer row-reduction membership oracle for Laurent ideals ----------------


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def integer_row_echelon(rows, width):
    """Row echelon over Z by Euclidean remainder cascades (avoids the
    coefficient blowup of single-shot unimodular combinations)."""
    work = [list(r) + [0] * (width - len(r)) for r in rows if any(r)]
    out = []
    for col in range(width):
        active = [r for r in work if r[col]]
        rest = [r for r in work if not r[col]]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            p = active[0]
            nxt = [p]
            for r in active[1:]:
                q = r[col] // p[col]
                if q:
                    r = [x - q * y for x, y in zip(r, p)]
                if r[col]:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            active = nxt
        if active:
            p = active[0]
            if p[col] < 0:
                p = [-x for x in p]
            out.append(p)
        work = rest
    return out


def in_row_span(vec, echelon, width):
    v = list(vec) + [0] * (width - len(vec))
    for row in echelon:
        col = next(i for i, x in enumerate(row) if x)
        if v[col] == 0:
            continue
        if v[col] % row[col] != 0:
            return False
        q = v[col] // row[col]
        v = [a - q * b for a, b in zip(v, row)]
    return not any(v)


class LaurentSpanOracle:
    """Brute-force membership in a Laurent ideal over Z by row reduction.

    Works on the Z-module of shifts x^a * g of the generators up to a
    generous degree window; membership in the Laurent ideal allows an extra
    power of x on the probe.  The echelon form is computed once.
    """

    def __init__(self, gens, window=30, probe_deg=12):
        self.gens = [g for g in gens if any(g)]
        self.width = max((len(g) for g in self.gens), default=1) + probe_deg + window
        rows = []
        for g in self.gens:
            for shift in range(self.width - len(g) + 1):
                rows.append([0] * shift + list(g))
        self.echelon = integer_row_echelon(rows, self.width)

    def member(self, p, shift_bound=16):
        if not any(p):
            return True
        if not self.gens:
            return False
        for s in range(shift_bound):
            vec = [0] * s + list(p)
            if len(vec) <= self.width and in_row_span(vec, self.echelon, self.width):
                return True
        return False


def laurent_member_bruteforce(p, gens, shift_bound=16, window=30):
    return LaurentSpanOracle(gens, window=window, probe_deg=len(p) + 2).member(
        p, shift_bound
    )


# -- random classification pairs ----------------------------------------------


_Z_GEN_POOL = (0, 0, 1, 2, 3, 4, 6, 12)


def random_poly(ctx, rng):
    terms = {}
    for _ in range(rng.randint(1, 3)):
        exp = rng.randint(-2, 3)
        coeff = rng.choice([-4, -3, -2, -1, 1, 2, 3, 4])
        terms[exp] = terms.get(exp, 0) + coeff
    return LaurentPoly.from_terms(ctx.ring, terms)


def random_classified(ctx, rng: random.Random) -> ClassifiedIdeal:
    """A pseudorandom valid classification pair for the given context."""
    ring = ctx.ring
    pool = list(ring.enumerate_gens()) if ring.is_finite else list(_Z_GEN_POOL)
    raw = [rng.choice(pool) if rng.random() < 0.6 else 0 for _ in ctx.star]
    extras = {
        i: random_poly(ctx, rng)
        for i in range(len(ctx.cycles))
        if rng.random() < 0.6
    }
    vals = _saturate_vals(ctx, raw)
    while True:
        g = []
        for i in range(len(ctx.cycles)):
            base = LaurentIdeal.extend(RingIdeal(ring, vals[ctx.cycle_closure_idx[i]]))
            gi = base
            if i in extras:
                k = ctx.cycle_exit_idx[i]
                mult = (
                    ring.gen_generator_element(vals[k])
                    if k is not None
                    else ring.one()
                )
                if not ring.is_zero(mult):
                    gi = base + LaurentIdeal.from_polys(
                        ring, [extras[i].scale(mult)]
                    )
            g.append(gi)
        grown = list(vals)
        changed = False
        for i, gi in enumerate(g):
            k = ctx.cycle_closure_idx[i]
            s = ring.gen_sum(grown[k], gi.contract().gen)
            if s != grown[k]:
                grown[k] = s
                changed = True
        if not changed:
            break
        vals = _saturate_vals(ctx, grown)
    return ClassifiedIdeal(SaturatedFunction(ctx, vals), tuple(g))


def acyclic_family(max_v=4, max_e=5):
    """All acyclic bundle graphs up to isomorphism, by vertex count and
    total edge multiplicity."""
    seen = set()
    out = []
    for n in range(1, max_v + 1):
        pairs = [(i, j) for i in range(n) for j in range(n) if i < j]

        def counts(idx, left):
            if idx == len(pairs):
                yield ()
                return
            for c in range(left + 1):
                for rest in counts(idx + 1, left - c):
                    yield (c,) + rest

        for combo in counts(0, max_e):
            edges = [(a, b, c) for (a, b), c in zip(pairs, combo) if c]
            key = min(
                tuple(sorted((perm[a], perm[b], c) for a, b, c in edges))
                for perm in itertools.permutations(range(n))
            )
            if (n, key) in seen:
                continue
            seen.add((n, key))
            out.append(
                Graph(
                    [f"v{i}" for i in range(n)],
                    [
                        Bundle(f"b{k}", f"v{a}", f"v{b}", c)
                        for k, (a, b, c) in enumerate(edges)
                    ],
                )
            )
    return out
