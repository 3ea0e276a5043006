"""Sparse multivariate polynomials with exact coefficients.

A polynomial is a dict from exponent tuples to nonzero Fraction (or int)
coefficients.  Monomial orders are graded lexicographic throughout, which
keeps every enumeration deterministic.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


class Poly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        self.terms = {}
        if terms:
            for exps, c in dict(terms).items():
                c = Fraction(c)
                if c:
                    self.terms[tuple(exps)] = c

    @staticmethod
    def zero(nvars: int) -> "Poly":
        return Poly(nvars)

    @staticmethod
    def const(nvars: int, c) -> "Poly":
        return Poly(nvars, {(0,) * nvars: Fraction(c)})

    @staticmethod
    def variable(nvars: int, i: int) -> "Poly":
        e = [0] * nvars
        e[i] = 1
        return Poly(nvars, {tuple(e): Fraction(1)})

    @staticmethod
    def monomial(nvars: int, exps, c=1) -> "Poly":
        return Poly(nvars, {tuple(exps): Fraction(c)})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.nvars, other)
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.nvars, other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            elif e in out:
                del out[e]
        p = Poly(self.nvars)
        p.terms = out
        return p

    __radd__ = __add__

    def __neg__(self):
        p = Poly(self.nvars)
        p.terms = {e: -c for e, c in self.terms.items()}
        return p

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly(self.nvars)
            p = Poly(self.nvars)
            p.terms = {e: c * other for e, c in self.terms.items()}
            return p
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                elif e in out:
                    del out[e]
        p = Poly(self.nvars)
        p.terms = out
        return p

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative polynomial power")
        result = Poly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def substitute(self, values: list["Poly"]) -> "Poly":
        """Evaluate at polynomials (all of the same variable count)."""
        nv = values[0].nvars if values else 0
        out = Poly.zero(nv)
        for e, c in self.terms.items():
            term = Poly.const(nv, c)
            for i, k in enumerate(e):
                if k:
                    term = term * values[i] ** k
            out = out + term
        return out

    def permute_variables(self, images: list[int]) -> "Poly":
        """Variable i becomes variable images[i]."""
        out = {}
        for e, c in self.terms.items():
            ne = [0] * self.nvars
            for i, k in enumerate(e):
                ne[images[i]] += k
            ne = tuple(ne)
            out[ne] = out.get(ne, Fraction(0)) + c
        return Poly(self.nvars, out)

    def leading_term_grlex(self):
        """(exps, coeff) maximal in graded lex order."""
        key = max(self.terms, key=lambda e: (sum(e), e))
        return key, self.terms[key]

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms, key=lambda e: (sum(e), e), reverse=True):
            c = self.terms[e]
            mono = "*".join(
                f"x{i}^{k}" if k > 1 else f"x{i}" for i, k in enumerate(e) if k
            )
            bits.append(f"{c}" if not mono else (f"{c}*{mono}" if c != 1 else mono))
        return " + ".join(bits)


def monomials_of_degree(nvars: int, d: int):
    """All exponent tuples of total degree d, in lexicographic order."""
    if nvars == 0:
        if d == 0:
            yield ()
        return
    if nvars == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(nvars - 1, d - first):
            yield (first,) + rest


def monomials_of_multidegree(slot_sizes: list[int], degrees: list[int]):
    """Exponent tuples for variables grouped in slots with a fixed total
    degree per slot; deterministic order."""
    pools = [list(monomials_of_degree(s, d)) for s, d in zip(slot_sizes, degrees)]
    for combo in itertools.product(*pools):
        yield tuple(itertools.chain.from_iterable(combo))


def is_symmetric(p: Poly) -> bool:
    """Invariance under all adjacent transpositions of the variables."""
    n = p.nvars
    for i in range(n - 1):
        images = list(range(n))
        images[i], images[i + 1] = images[i + 1], images[i]
        if p.permute_variables(images) != p:
            return False
    return True


def elementary_symmetric(nvars: int, k: int) -> Poly:
    out = {}
    for subset in itertools.combinations(range(nvars), k):
        e = [0] * nvars
        for i in subset:
            e[i] = 1
        out[tuple(e)] = Fraction(1)
    if k == 0:
        return Poly.const(nvars, 1)
    return Poly(nvars, out)
