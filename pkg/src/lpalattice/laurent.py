"""Laurent polynomials over a coefficient ring and exact ideals of R[x, x^-1].

Since x is a unit, an ideal of R[x, x^-1] is identified with the
x-saturated ideal of R[x] it contracts to.  Over a field that ideal is
principal and is stored as a single normalized generator (minimum exponent
zero, nonzero constant term, monic).  Over Z it is stored as the canonical
reduced strong Groebner basis of the x-saturated ideal; over Z/n the same
engine is reused on the lift to Z[x] with the modulus adjoined.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from . import groebner
from .rings import IntegersMod, RingError, RingIdeal, RingSpec, ZZ


@dataclass(frozen=True)
class LaurentPoly:
    """A Laurent polynomial, stored as sorted (exponent, coefficient) terms."""

    ring: RingSpec
    terms: tuple  # ((exp, coeff), ...), exps strictly increasing, coeffs nonzero

    @staticmethod
    def from_terms(ring: RingSpec, items) -> "LaurentPoly":
        acc = {}
        pairs = items.items() if isinstance(items, dict) else items
        for exp, coeff in pairs:
            c = ring.add(acc.get(exp, ring.zero()), coeff)
            if ring.is_zero(c):
                acc.pop(exp, None)
            else:
                acc[exp] = c
        return LaurentPoly(ring, tuple(sorted(acc.items())))

    @staticmethod
    def zero(ring: RingSpec) -> "LaurentPoly":
        return LaurentPoly(ring, ())

    @staticmethod
    def constant(ring: RingSpec, c) -> "LaurentPoly":
        return LaurentPoly.from_terms(ring, [(0, c)])

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coefficients(self):
        return [c for _, c in self.terms]

    def min_exp(self) -> int:
        return self.terms[0][0]

    def _binop(self, other, op):
        if self.ring != other.ring:
            raise RingError("mismatched rings")
        return LaurentPoly.from_terms(
            self.ring, list(self.terms) + [(e, op(c)) for e, c in other.terms]
        )

    def __add__(self, other):
        return self._binop(other, lambda c: c)

    def __sub__(self, other):
        return self._binop(other, self.ring.neg)

    def __mul__(self, other):
        if self.ring != other.ring:
            raise RingError("mismatched rings")
        out = []
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                out.append((e1 + e2, self.ring.mul(c1, c2)))
        return LaurentPoly.from_terms(self.ring, out)

    def scale(self, c) -> "LaurentPoly":
        return LaurentPoly.from_terms(self.ring, [(e, self.ring.mul(c, v)) for e, v in self.terms])

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly(self.ring, tuple((e + k, c) for e, c in self.terms))

    def to_dense(self) -> tuple:
        """Coefficients after shifting so the minimum exponent is zero."""
        if not self.terms:
            return ()
        base = self.terms[0][0]
        out = [self.ring.zero()] * (self.terms[-1][0] - base + 1)
        for e, c in self.terms:
            out[e - base] = c
        return tuple(out)

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for i, (e, c) in enumerate(self.terms):
            neg = False
            try:
                neg = c < 0
            except TypeError:
                pass
            mag = -c if neg else c
            if e == 0:
                body = self.ring.format_element(mag)
            else:
                xpart = "x" if e == 1 else f"x^{e}"
                body = xpart if mag == 1 else f"{self.ring.format_element(mag)}{xpart}"
            if i == 0:
                pieces.append(f"-{body}" if neg else body)
            else:
                pieces.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(pieces)


_TERM_RE = re.compile(r"(?:(?P<c>\d+(?:/\d+)?)\*?)?(?P<x>x(?:\^(?P<e>-?\d+))?)?")


def parse_poly(ring: RingSpec, text: str) -> LaurentPoly:
    """Parse terms like ``3x^-2 + 1 - x`` or ``2*x^3``."""
    s = text.replace(" ", "")
    if not s:
        raise RingError("empty polynomial")
    chunks = []
    cur = ""
    for ch in s:
        if ch in "+-" and cur and cur[-1] not in "^+-*/":
            chunks.append(cur)
            cur = ch
        else:
            cur += ch
    chunks.append(cur)
    terms = []
    for chunk in chunks:
        sign = 1
        while chunk and chunk[0] in "+-":
            if chunk[0] == "-":
                sign = -sign
            chunk = chunk[1:]
        m = _TERM_RE.fullmatch(chunk)
        if not m or (m["c"] is None and m["x"] is None):
            raise RingError(f"bad polynomial term {chunk!r} in {text!r}")
        coeff = ring.parse_element(m["c"]) if m["c"] is not None else ring.one()
        if sign < 0:
            coeff = ring.neg(coeff)
        exp = 0
        if m["x"] is not None:
            exp = int(m["e"]) if m["e"] is not None else 1
        terms.append((exp, coeff))
    return LaurentPoly.from_terms(ring, terms)


# -- dense helpers over a field ------------------------------------------


def _f_trim(ring, v):
    v = list(v)
    while v and ring.is_zero(v[-1]):
        v.pop()
    return v


def _f_divmod(ring, a, b):
    a = _f_trim(ring, a)
    b = _f_trim(ring, b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = ring.inverse(b[-1])
    q = [ring.zero()] * max(0, len(a) - len(b) + 1)
    r = list(a)
    while len(r) >= len(b) and _f_trim(ring, r):
        if ring.is_zero(r[-1]):
            r.pop()
            continue
        k = len(r) - len(b)
        f = ring.mul(r[-1], inv)
        q[k] = f
        for i, c in enumerate(b):
            r[k + i] = ring.sub(r[k + i], ring.mul(f, c))
        r.pop()
    return q, _f_trim(ring, r)


def _f_gcd(ring, a, b):
    a, b = _f_trim(ring, a), _f_trim(ring, b)
    while b:
        _, r = _f_divmod(ring, a, b)
        a, b = b, r
    return a


def _f_mul(ring, a, b):
    out = [ring.zero()] * (len(a) + len(b) - 1) if a and b else []
    for i, c in enumerate(a):
        for j, d in enumerate(b):
            out[i + j] = ring.add(out[i + j], ring.mul(c, d))
    return out


def _f_normalize(ring, v):
    """Strip x factors and make monic; canonical generator over a field."""
    v = _f_trim(ring, v)
    while v and ring.is_zero(v[0]):
        v.pop(0)
    if not v:
        return ()
    inv = ring.inverse(v[-1])
    return tuple(ring.mul(c, inv) for c in v)


# -- cached integer-side engine calls ------------------------------------


@lru_cache(maxsize=None)
def _z_saturate(gens: tuple) -> tuple:
    return groebner.saturate_x_dense(list(gens))


@lru_cache(maxsize=None)
def _z_intersect(a: tuple, b: tuple) -> tuple:
    return groebner.gb_dense(list(groebner.intersect_dense(a, b)))


@lru_cache(maxsize=None)
def _z_member(f: tuple, basis: tuple) -> bool:
    return groebner.member_dense(f, basis)


@dataclass(frozen=True)
class LaurentIdeal:
    """An ideal of R[x, x^-1] in canonical basis form.

    Two ideals are equal iff their bases are identical; every basis element
    has a nonzero constant term.
    """

    ring: RingSpec
    basis: tuple

    # -- construction ----------------------------------------------------
    @staticmethod
    def from_polys(ring: RingSpec, polys) -> "LaurentIdeal":
        denses = [p.to_dense() for p in polys if not p.is_zero]
        if ring.is_field:
            g = []
            for d in denses:
                g = _f_gcd(ring, g, list(d))
            return LaurentIdeal(ring, _field_basis(ring, g))
        return LaurentIdeal(ring, _z_saturate(_lift(ring, denses)))

    @staticmethod
    def parse(ring: RingSpec, text: str) -> "LaurentIdeal":
        text = text.strip()
        if not (text.startswith("<") and text.endswith(">")):
            raise RingError(f"bad ideal literal {text!r}")
        inner = text[1:-1].strip()
        polys = [parse_poly(ring, part) for part in inner.split(",")] if inner else []
        return LaurentIdeal.from_polys(ring, polys)

    @staticmethod
    def zero(ring: RingSpec) -> "LaurentIdeal":
        return LaurentIdeal.from_polys(ring, [])

    @staticmethod
    def unit(ring: RingSpec) -> "LaurentIdeal":
        return LaurentIdeal.from_polys(ring, [LaurentPoly.constant(ring, ring.one())])

    @staticmethod
    def extend(ideal: RingIdeal) -> "LaurentIdeal":
        """The extension J[x, x^-1] of an ideal J of R."""
        ring = ideal.ring
        return LaurentIdeal.from_polys(
            ring, [LaurentPoly.constant(ring, ideal.generator_element())]
        )

    # -- basic structure -------------------------------------------------
    def _check(self, other: "LaurentIdeal"):
        if self.ring != other.ring:
            raise RingError(f"mismatched rings {self.ring} and {other.ring}")

    @property
    def is_zero(self) -> bool:
        return self == LaurentIdeal.zero(self.ring)

    @property
    def is_unit(self) -> bool:
        gen = (self.ring.one(),) if self.ring.is_field else (1,)
        return self.basis == (gen,)

    def generators(self) -> list[LaurentPoly]:
        out = []
        for d in sorted(self.basis, key=lambda d: (len(d), d)):
            p = LaurentPoly.from_terms(self.ring, list(enumerate(d)))
            if not p.is_zero:
                out.append(p)
        return out

    def __str__(self):
        return "<" + ", ".join(str(p) for p in self.generators()) + ">"

    # -- membership and containment ---------------------------------------
    def __contains__(self, p: LaurentPoly) -> bool:
        if p.ring != self.ring:
            raise RingError("mismatched rings")
        d = p.to_dense()
        if self.ring.is_field:
            if not self.basis:
                return not d
            _, r = _f_divmod(self.ring, list(d), list(self.basis[0]))
            return not r
        return _z_member(_lift_one(self.ring, d), self.basis)

    def __le__(self, other: "LaurentIdeal") -> bool:
        self._check(other)
        if self.ring.is_field:
            return all(p in other for p in self.generators())
        return all(_z_member(b, other.basis) for b in self.basis)

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other: "LaurentIdeal") -> "LaurentIdeal":
        self._check(other)
        if self.ring.is_field:
            return LaurentIdeal.from_polys(self.ring, self.generators() + other.generators())
        return LaurentIdeal(self.ring, _z_saturate(tuple(sorted(set(self.basis + other.basis)))))

    def __mul__(self, other: "LaurentIdeal") -> "LaurentIdeal":
        self._check(other)
        ring = self.ring
        if ring.is_field:
            if not self.basis or not other.basis:
                return LaurentIdeal.zero(ring)
            prod = _f_mul(ring, list(self.basis[0]), list(other.basis[0]))
            return LaurentIdeal(ring, _field_basis(ring, prod))
        gens = [_dense_mul(a, b) for a in self.basis for b in other.basis]
        return LaurentIdeal(ring, _z_saturate(_lift(ring, gens, lifted=True)))

    def intersect(self, other: "LaurentIdeal") -> "LaurentIdeal":
        self._check(other)
        ring = self.ring
        if ring.is_field:
            if not self.basis or not other.basis:
                return LaurentIdeal.zero(ring)
            a, b = list(self.basis[0]), list(other.basis[0])
            g = _f_gcd(ring, a, b)
            q, _ = _f_divmod(ring, _f_mul(ring, a, b), g)
            return LaurentIdeal(ring, _field_basis(ring, q))
        return LaurentIdeal(ring, _z_intersect(self.basis, other.basis))

    __and__ = intersect

    def scale(self, element) -> "LaurentIdeal":
        """The ideal generated by element * (each generator)."""
        return LaurentIdeal.from_polys(
            self.ring, [p.scale(element) for p in self.generators()]
        )

    def divide_exact(self, element) -> "LaurentIdeal":
        """The colon ideal (I : element), assuming element divides every coefficient."""
        if self.ring != ZZ:
            raise RingError("exact division is only implemented over Z")
        e = int(element)
        if e == 0:
            raise RingError("division by zero")
        gens = []
        for d in self.basis:
            if any(c % e for c in d):
                raise RingError(f"{element} does not divide all coefficients")
            gens.append(tuple(c // e for c in d))
        return LaurentIdeal(self.ring, _z_saturate(tuple(sorted(set(gens)))))

    # -- contraction, extension, grading -----------------------------------
    def contract(self) -> RingIdeal:
        """The ideal I /\\ R of the coefficient ring."""
        ring = self.ring
        if ring.is_field:
            return RingIdeal(ring, 1 if self.is_unit else 0)
        for d in self.basis:
            if len(d) == 1:
                return RingIdeal(ring, ring.gen_normalize(d[0]))
        return RingIdeal.zero(ring)

    def coefficient_ideal(self) -> RingIdeal:
        """The smallest J <= R with I contained in J[x, x^-1]."""
        ring = self.ring
        if ring.is_field:
            return RingIdeal(ring, 0 if not self.basis else 1)
        coeffs = [c for d in self.basis for c in d]
        return RingIdeal.of(ring, *coeffs)

    def is_graded(self) -> bool:
        """Graded for the Z-grading of R[x, x^-1]; exactly the extensions."""
        return self == LaurentIdeal.extend(self.contract())


def _field_basis(ring, dense) -> tuple:
    v = _f_normalize(ring, dense)
    return (v,) if v else ()


def _dense_mul(a: tuple, b: tuple) -> tuple:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, c in enumerate(a):
        for j, d in enumerate(b):
            out[i + j] += c * d
    return tuple(out)


def _lift_one(ring, dense) -> tuple:
    v = [int(ring.normalize(c)) for c in dense]
    while v and v[-1] == 0:
        v.pop()
    return tuple(v)


def _lift(ring, denses, lifted=False) -> tuple:
    """Integer generator tuple for the Z-side engine (modulus adjoined for Z/n)."""
    out = set()
    for d in denses:
        v = tuple(int(c) for c in d) if lifted else _lift_one(ring, d)
        if any(v):
            out.add(v)
    if isinstance(ring, IntegersMod):
        out.add((ring.n,))
    return tuple(sorted(out))
