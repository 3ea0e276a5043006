"""The lambda-ring engine over line-sum normal forms: alternating-sum
classes, multiplicative Bott classes and their inverses in localized
truncated rings, reduction to elementary symmetric functions, and the
characteristic-p product identity.

Every operation here routes through sums of rank-one monomials, so products
are exact and finite.  Inversion is only performed on elements whose rank
part is invertible in the localized coefficient ring and whose rank-zero
part is nilpotent.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import is_prime, localized_at_l_check
from .polynomials import Poly, elementary_symmetric, is_symmetric
from .kspaces import EqKClass, KClassPn


class LineSumClass:
    """Integer combination of rank-one monomials in some ambient ring.

    Monomials are ambient ring elements of lambda-degree one (lines); each
    carries an integer multiplicity which may be negative for virtual
    classes.
    """

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = [(mono, int(mult)) for mono, mult in terms if mult]

    def expand(self):
        out = self.ring.zero()
        for mono, mult in self.terms:
            out = out + mono * mult
        return out

    def rank(self) -> int:
        return sum(mult for _, mult in self.terms)

    def __add__(self, other: "LineSumClass") -> "LineSumClass":
        return LineSumClass(self.ring, self.terms + other.terms)


class PnRing:
    """Ambient adapter for R(G) (x) K0(P^n) line computations."""

    def __init__(self, group, n: int):
        self.group = group
        self.n = n

    def zero(self):
        return EqKClass.zero(self.group, self.n)

    def one(self):
        return EqKClass.one(self.group, self.n)

    def line(self, m: int, char=None) -> EqKClass:
        """The line h^m twisted by a one-dimensional character."""
        base = EqKClass.from_base(self.group, KClassPn.h_power(self.n, m))
        if char is not None:
            base = base * EqKClass.from_char(self.group, char, self.n)
        return base

    def split_unit_nilpotent(self, x: EqKClass):
        # augmentation = virtual rank: character dimension of the u^0 slice
        rank = x.rank_char().dim().rational_part()
        nil = x - self.one() * rank
        return rank, nil


class TruncatedRing:
    """Rank part plus a square-zero ideal spanned by named symbols; the
    coefficient ring is the localization at a prime p."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError("prime required")
        self.p = p

    def zero(self):
        return TruncatedElement(self.p, Fraction(0), {})

    def one(self):
        return TruncatedElement(self.p, Fraction(1), {})

    def line(self, symbol: str) -> "TruncatedElement":
        """A rank-one line whose reduced part is the named ideal symbol."""
        return TruncatedElement(self.p, Fraction(1), {symbol: Fraction(1)})

    def split_unit_nilpotent(self, x: "TruncatedElement"):
        return x.rank, TruncatedElement(self.p, Fraction(0), x.ideal)


@dataclass(frozen=True)
class TruncatedElement:
    """a + sum_s c_s * s with the ideal spanned by the symbols s squaring
    to zero."""

    p: int
    rank: Fraction
    ideal: dict

    def __post_init__(self):
        object.__setattr__(
            self, "ideal", {k: Fraction(v) for k, v in self.ideal.items() if Fraction(v)}
        )
        object.__setattr__(self, "rank", Fraction(self.rank))

    def _coerce(self, other) -> "TruncatedElement":
        if isinstance(other, TruncatedElement):
            return other
        return TruncatedElement(self.p, Fraction(other), {})

    def __add__(self, other):
        o = self._coerce(other)
        ideal = dict(self.ideal)
        for k, v in o.ideal.items():
            ideal[k] = ideal.get(k, Fraction(0)) + v
        return TruncatedElement(self.p, self.rank + o.rank, ideal)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedElement(self.p, -self.rank, {k: -v for k, v in self.ideal.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncatedElement(
                self.p, self.rank * other, {k: v * other for k, v in self.ideal.items()}
            )
        o = self._coerce(other)
        # ideal * ideal = 0
        ideal = {k: v * o.rank for k, v in self.ideal.items()}
        for k, v in o.ideal.items():
            ideal[k] = ideal.get(k, Fraction(0)) + v * self.rank
        return TruncatedElement(self.p, self.rank * o.rank, ideal)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = TruncatedElement(self.p, Fraction(1), {})
        for _ in range(k):
            out = out * self
        return out

    def is_l_localized(self) -> bool:
        return localized_at_l_check(self.rank, self.p) and all(
            localized_at_l_check(v, self.p) for v in self.ideal.values()
        )


# -- lambda_-1 and Bott classes --------------------------------------------------


class ExpansionError(Exception):
    """Inversion of a factor was required but its rank-zero part failed to
    nilpotently terminate (or its rank part is not invertible)."""


NILPOTENCY_BOUND = 64


def _invert_unit_plus_nilpotent(ring, x, prime: int | None = None):
    """Exact inverse of x = a(1 + nu) with a an invertible scalar and nu
    nilpotent; raises ExpansionError otherwise."""
    a, nil = ring.split_unit_nilpotent(x)
    if a == 0:
        raise ExpansionError("rank part vanishes; element is not invertible")
    if prime is not None and not localized_at_l_check(Fraction(1, 1) / a, prime):
        raise ExpansionError(
            f"rank part {a} is not invertible in the localization at {prime}"
        )
    ainv = Fraction(1, 1) / Fraction(a)
    nu = nil * ainv
    inv = ring.one()
    power = ring.one()
    for _ in range(NILPOTENCY_BOUND):
        power = power * nu * (-1)
        if _is_zero(ring, power):
            break
        inv = inv + power
    else:
        raise ExpansionError("nilpotency bound exceeded while inverting")
    inv = inv * ainv
    if not _is_zero(ring, x * inv - ring.one()):
        raise ExpansionError("inverse verification failed")
    return inv


def _is_zero(ring, x):
    return x == ring.zero()


def lambda_minus_one(x: LineSumClass):
    """Product over monomials of (1 - monomial)^multiplicity; negative
    multiplicities expand by the terminating geometric series and are only
    defined when (1 - monomial) is invertible in the ambient ring."""
    ring = x.ring
    out = ring.one()
    for mono, mult in x.terms:
        factor = ring.one() - mono
        if mult > 0:
            for _ in range(mult):
                out = out * factor
        else:
            inv = _invert_unit_plus_nilpotent(ring, factor)
            for _ in range(-mult):
                out = out * inv
    return out


def bott_theta(x: LineSumClass, l: int):
    """Multiplicative Bott class: theta(line) = 1 + line + ... + line^(l-1),
    extended multiplicatively; negative multiplicities invert in the
    localized truncated ring."""
    ring = x.ring
    out = ring.one()
    for mono, mult in x.terms:
        factor = ring.zero()
        power = ring.one()
        for _ in range(l):
            factor = factor + power
            power = power * mono
        if mult > 0:
            for _ in range(mult):
                out = out * factor
        else:
            inv = _invert_unit_plus_nilpotent(ring, factor, prime=l if is_prime(l) else None)
            for _ in range(-mult):
                out = out * inv
    return out


def bott_theta_inverse(x: LineSumClass, l: int):
    """Exact inverse of the Bott class in the l-localized ambient ring;
    the product with bott_theta(x) is verified to be exactly one."""
    if not is_prime(l):
        raise ValueError("localization prime required")
    theta = bott_theta(x, l)
    return _invert_unit_plus_nilpotent(x.ring, theta, prime=l)


# -- symmetric function reduction ---------------------------------------------------


def symmetric_reduce(p: Poly) -> Poly:
    """Rewrite a symmetric polynomial in the elementary symmetric
    polynomials e_1..e_n (classical leading-term elimination); the output
    polynomial has one variable per e_i, and substituting e_i(x) recovers
    the input exactly."""
    if not is_symmetric(p):
        raise ValueError("input polynomial is not symmetric")
    n = p.nvars
    residual = p
    out = Poly.zero(n)
    while residual:
        exps, coeff = residual.leading_term_grlex()
        # symmetric leading exponents are weakly decreasing
        e_exps = [exps[i] - exps[i + 1] for i in range(n - 1)] + [exps[n - 1]]
        if any(e < 0 for e in e_exps):
            raise ValueError("leading term of a symmetric polynomial must be dominant")
        out = out + Poly.monomial(n, e_exps, coeff)
        subtract = Poly.const(n, coeff)
        for i, e in enumerate(e_exps):
            if e:
                subtract = subtract * elementary_symmetric(n, i + 1) ** e
        residual = residual - subtract
    return out


def expand_in_elementaries(q: Poly) -> Poly:
    """Inverse substitution: variable i of q becomes e_(i+1)(x)."""
    n = q.nvars
    return q.substitute([elementary_symmetric(n, i + 1) for i in range(n)])


# -- characteristic-p product identity ------------------------------------------------


def cartier_identity_check(n: int, p: int) -> bool:
    """Exact polynomial identity
    prod_i (1 - x_i^p) = prod_i (1 - x_i) * prod_i (1 + x_i + ... + x_i^(p-1)),
    the universal form of the statement that the alternating sum of a
    Frobenius pull-back equals the alternating sum times the Bott class."""
    if n < 1:
        raise ValueError("need at least one line variable")
    lhs = Poly.const(n, 1)
    rhs_alt = Poly.const(n, 1)
    rhs_bott = Poly.const(n, 1)
    for i in range(n):
        xi = Poly.variable(n, i)
        lhs = lhs * (Poly.const(n, 1) - xi ** p)
        rhs_alt = rhs_alt * (Poly.const(n, 1) - xi)
        geo = Poly.zero(n)
        for k in range(p):
            geo = geo + xi ** k
        rhs_bott = rhs_bott * geo
    return lhs == rhs_alt * rhs_bott
