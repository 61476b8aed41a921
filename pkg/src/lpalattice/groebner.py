"""Strong Groebner bases for polynomial ideals over the integers.

Ideals live in Z[x]; intersections are computed through the rank-two free
module Z[x]^2 with one auxiliary component that gets eliminated.  A
*strong* basis is one where every leading term of the ideal is divisible,
monomial and coefficient both, by the leading term of some basis element;
over a Euclidean coefficient ring this is obtained by completing under
S-polynomials and gcd-polynomials.

Monomials are pairs (component, x-degree) compared lexicographically, so
the auxiliary component dominates and the order restricts to the degree
order on Z[x].  Multiplication only shifts the x-degree: a monomial can
never change component, which is what keeps the elimination tame.
"""

from __future__ import annotations

import heapq
import math

Mono = tuple[int, int]  # (component, x-degree)
Poly = dict[Mono, int]  # monomial -> nonzero coefficient


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, u, v) with g = gcd(a, b) = u*a + v*b, g >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def p_trim(p: Poly) -> Poly:
    return {m: c for m, c in p.items() if c != 0}


def p_add(p: Poly, q: Poly) -> Poly:
    out = dict(p)
    for m, c in q.items():
        s = out.get(m, 0) + c
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return out


def p_scale_shift(p: Poly, c: int, shift: int) -> Poly:
    """Multiply by c * x^shift; the component of each monomial is fixed."""
    if c == 0:
        return {}
    return {(m[0], m[1] + shift): c * v for m, v in p.items()}


def p_lt(p: Poly) -> tuple[Mono, int]:
    m = max(p)
    return m, p[m]


def _mono_divides(a: Mono, b: Mono) -> bool:
    return a[0] == b[0] and a[1] <= b[1]


def reduce_poly(f: Poly, basis: list[Poly], keep_leading: bool = False) -> Poly:
    """Full normal form of f modulo basis.

    Coefficients are reduced with canonical Euclidean remainders
    (0 <= r < leading coefficient of the reducer); among the reducers that
    make progress the one with the smallest leading coefficient is used,
    which is the canonical choice when the basis is inter-reduced.
    """
    lts = [(p_lt(b), b) for b in basis if b]
    work = dict(f)
    out: Poly = {}
    guard = max(work) if (keep_leading and work) else None
    while work:
        m = max(work)
        c = work.pop(m)
        if c == 0:
            continue
        if keep_leading and m == guard:
            out[m] = c
            continue
        best = None
        for (bm, bc), b in lts:
            if _mono_divides(bm, m) and c // bc != 0:
                if best is None or bc < best[0][1] or (bc == best[0][1] and bm > best[0][0]):
                    best = ((bm, bc), b)
        if best is None:
            out[m] = c
            continue
        (bm, bc), b = best
        q = c // bc
        r = c - q * bc
        if r:
            work[m] = r
        shift = m[1] - bm[1]
        for m2, v in b.items():
            if m2 == bm:
                continue
            k = (m2[0], m2[1] + shift)
            if k in out:  # already-finished monomial gets corrected in place
                s = out[k] - q * v
                if s:
                    out[k] = s
                else:
                    del out[k]
            else:
                s = work.get(k, 0) - q * v
                if s:
                    work[k] = s
                else:
                    work.pop(k, None)
    return out


def _s_poly(f: Poly, g: Poly) -> Poly:
    (mf, cf), (mg, cg) = p_lt(f), p_lt(g)
    d = max(mf[1], mg[1])
    l = cf * cg // math.gcd(cf, cg)
    a = p_scale_shift(f, l // cf, d - mf[1])
    b = p_scale_shift(g, -(l // cg), d - mg[1])
    return p_add(a, b)


def _g_poly(f: Poly, g: Poly) -> Poly:
    (mf, cf), (mg, cg) = p_lt(f), p_lt(g)
    d = max(mf[1], mg[1])
    _, u, v = xgcd(cf, cg)
    a = p_scale_shift(f, u, d - mf[1])
    b = p_scale_shift(g, v, d - mg[1])
    return p_add(a, b)


def _sign_norm(p: Poly) -> Poly:
    if not p:
        return p
    _, c = p_lt(p)
    if c < 0:
        return {m: -v for m, v in p.items()}
    return p


def _pair_candidates(f: Poly, g: Poly) -> list[Poly]:
    cf, cg = p_lt(f)[1], p_lt(g)[1]
    out = [_s_poly(f, g)]
    if cf % cg != 0 and cg % cf != 0:
        out.append(_g_poly(f, g))
    return out


def strong_groebner(gens: list[Poly]) -> list[Poly]:
    """Canonical reduced strong Groebner basis of the ideal the gens span.

    Pairs are processed smallest lcm first and basis elements whose leading
    term becomes strongly reducible are retired and re-reduced, which keeps
    coefficients from compounding.  The completion is self-certifying: the
    loop only exits once every S- and gcd-polynomial of the surviving basis
    reduces to zero.
    """
    basis: list[Poly] = []
    alive: list[bool] = []
    pairs: list = []  # (lcm monomial, tiebreak, i, j)
    todo: list[Poly] = [p for g in gens if (p := _sign_norm(p_trim(g)))]
    counter = 0

    def push_pairs(i):
        nonlocal counter
        mi, _ = p_lt(basis[i])
        for j in range(i):
            if not alive[j]:
                continue
            mj, _ = p_lt(basis[j])
            if mi[0] != mj[0]:  # leads in different components never pair
                continue
            lcm = (mi[0], max(mi[1], mj[1]))
            counter += 1
            heapq.heappush(pairs, (lcm, counter, i, j))

    def insert(h):
        hm, hc = p_lt(h)
        idx = len(basis)
        basis.append(h)
        alive.append(True)
        for j in range(idx):
            if not alive[j]:
                continue
            bm, bc = p_lt(basis[j])
            if _mono_divides(hm, bm) and bc % hc == 0:
                alive[j] = False
                todo.append(basis[j])
        push_pairs(idx)

    while True:
        while todo or pairs:
            if todo:
                cand = todo.pop()
            else:
                _, _, i, j = heapq.heappop(pairs)
                if not (alive[i] and alive[j]):
                    continue
                cands = _pair_candidates(basis[i], basis[j])
                todo.extend(cands[1:])
                cand = cands[0]
            h = _sign_norm(reduce_poly(cand, [b for b, a in zip(basis, alive) if a]))
            if h:
                insert(h)
        current = [b for b, a in zip(basis, alive) if a]
        leftovers = []
        for i, f in enumerate(current):
            for g in current[:i]:
                if p_lt(f)[0][0] != p_lt(g)[0][0]:
                    continue
                for cand in _pair_candidates(f, g):
                    if not is_member(cand, current):
                        leftovers.append(cand)
        if not leftovers:
            return _interreduce(current)
        todo.extend(leftovers)


def _interreduce(basis: list[Poly]) -> list[Poly]:
    # drop elements whose leading term is strongly reducible by a mate
    basis = [b for b in basis if b]
    changed = True
    while changed:
        changed = False
        for i, b in enumerate(basis):
            bm, bc = p_lt(b)
            for j, c in enumerate(basis):
                if i == j:
                    continue
                cm, cc = p_lt(c)
                if _mono_divides(cm, bm) and bc % cc == 0:
                    rest = basis[:i] + basis[i + 1:]
                    h = _sign_norm(reduce_poly(b, rest))
                    basis = rest + ([h] if h else [])
                    changed = True
                    break
            if changed:
                break
    # tail-reduce for the canonical form; leading terms are stable now
    out = []
    for i, b in enumerate(basis):
        rest = basis[:i] + basis[i + 1:]
        out.append(_sign_norm(reduce_poly(b, rest, keep_leading=True)))
    out.sort(key=lambda p: (p_lt(p)[0], sorted(p.items())))
    return out


def is_member(f: Poly, basis: list[Poly]) -> bool:
    return not reduce_poly(f, basis)


# -- the univariate layer used for Laurent ideals -----------------------

Dense = tuple[int, ...]  # coefficients, constant term first, no trailing zero


def dense_to_poly(d: Dense) -> Poly:
    return {(0, i): c for i, c in enumerate(d) if c != 0}


def poly_to_dense(p: Poly) -> Dense:
    if not p:
        return ()
    deg = max(m[1] for m in p)
    if any(m[0] for m in p):
        raise ValueError("element is not in the eliminated component")
    out = [0] * (deg + 1)
    for (_, i), c in p.items():
        out[i] = c
    return tuple(out)


def gb_dense(gens: list[Dense]) -> tuple[Dense, ...]:
    basis = strong_groebner([dense_to_poly(g) for g in gens])
    return tuple(sorted(poly_to_dense(b) for b in basis))


def member_dense(f: Dense, basis: tuple[Dense, ...]) -> bool:
    return is_member(dense_to_poly(f), [dense_to_poly(b) for b in basis])


def intersect_dense(a: tuple[Dense, ...], b: tuple[Dense, ...]) -> tuple[Dense, ...]:
    """Generators of the intersection of two ideals of Z[x].

    Works in the module Z[x]^2 spanned by (f, 0) for f in a and (g, g)
    for g in b: the elements with vanishing first component are exactly
    the pairs (0, h) with h in the intersection.
    """
    gens: list[Poly] = []
    for f in a:
        gens.append({(1, i): c for i, c in enumerate(f) if c != 0})
    for g in b:
        q = {(1, i): c for i, c in enumerate(g) if c != 0}
        q.update({(0, i): c for i, c in enumerate(g) if c != 0})
        gens.append(q)
    basis = strong_groebner(gens)
    kept = [p for p in basis if all(m[0] == 0 for m in p)]
    return tuple(sorted(poly_to_dense(p) for p in kept))


def colon_x_dense(basis: tuple[Dense, ...]) -> tuple[Dense, ...]:
    """Generators of (I : x), via intersecting with <x> and dividing by x."""
    meet = intersect_dense(basis, ((0, 1),))
    shifted = []
    for f in meet:
        if f and f[0] != 0:
            raise AssertionError("element of I /\\ <x> with nonzero constant term")
        shifted.append(tuple(f[1:]))
    return gb_dense([s for s in shifted if s])


def saturate_x_dense(gens: list[Dense]) -> tuple[Dense, ...]:
    """Canonical basis of the x-saturation of <gens>, by iterated colon."""
    cur = gb_dense([g for g in gens if any(g)])
    while cur:
        nxt = colon_x_dense(cur)
        if nxt == cur:
            break
        cur = nxt
    return cur
