"""Exact scalar arithmetic: rationals, cyclotomic numbers, l-local rationals.

Floating point is banned throughout the package; every value here is an
arbitrary-precision integer, a Fraction, or a cyclotomic number with
Fraction coordinates.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

#: Exact rational scalar used everywhere.  fractions.Fraction already keeps
#: lowest terms with a positive denominator, which is the required canonical
#: form.
Rational = Fraction


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def mobius(n: int) -> int:
    if n == 1:
        return 1
    result = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    if n > 1:
        result = -result
    return result


def _poly_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] += ca * cb
    return tuple(out)


def _poly_divexact(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """Exact division of integer polynomials, b monic up to sign."""
    a_list = list(a)
    db = len(b) - 1
    lead = b[-1]
    quot = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a_list[i]
        if c == 0:
            continue
        assert c % lead == 0
        q = c // lead
        quot[i - db] = q
        for j, cb in enumerate(b):
            a_list[i - db + j] -= q * cb
    assert not any(a_list), "non-exact polynomial division"
    return tuple(quot)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients (low degree first) of the n-th cyclotomic polynomial.

    Computed by Moebius factorization of x^n - 1.
    """
    if n < 1:
        raise ValueError("order must be positive")
    num: tuple[int, ...] = (1,)
    den: tuple[int, ...] = (1,)
    for d in range(1, n + 1):
        if n % d != 0:
            continue
        mu = mobius(n // d)
        if mu == 0:
            continue
        factor = tuple([-1] + [0] * (d - 1) + [1])  # x^d - 1
        if mu == 1:
            num = _poly_mul(num, factor)
        else:
            den = _poly_mul(den, factor)
    return _poly_divexact(num, den)


def _phi_degree(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


class Cyclotomic:
    """Element of Q(zeta_n) in the power basis 1, zeta, ..., zeta^(d-1).

    d is the degree of the n-th cyclotomic polynomial; for prime n this is
    the basis 1, zeta, ..., zeta^(n-2).  Coefficients are the unique
    representative modulo the cyclotomic polynomial, so equality is
    coordinate-wise.  Instances are immutable.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs):
        self.order = order
        self.coeffs = tuple(Fraction(c) for c in coeffs)
        if len(self.coeffs) != _phi_degree(order):
            raise ValueError("coefficient vector has wrong length")

    # -- construction ---------------------------------------------------

    @staticmethod
    def from_vector(coeffs, n: int) -> "Cyclotomic":
        """Reduce an arbitrary coefficient vector for powers of zeta_n."""
        if n < 1:
            raise ValueError("order must be positive")
        folded = [Fraction(0)] * n
        for j, c in enumerate(coeffs):
            folded[j % n] += Fraction(c)
        phi = cyclotomic_polynomial(n)
        d = len(phi) - 1
        # reduce modulo the (monic, integer) cyclotomic polynomial
        for i in range(n - 1, d - 1, -1):
            c = folded[i]
            if c:
                folded[i] = Fraction(0)
                for j in range(d):
                    folded[i - d + j] -= c * phi[j]
        return Cyclotomic(n, folded[:d])

    @staticmethod
    def from_rational(q, n: int = 1) -> "Cyclotomic":
        return Cyclotomic.from_vector([Fraction(q)], n)

    @staticmethod
    def zeta(n: int, k: int = 1) -> "Cyclotomic":
        """zeta_n^k."""
        vec = [Fraction(0)] * n
        vec[k % n] = Fraction(1)
        return Cyclotomic.from_vector(vec, n)

    # -- order handling --------------------------------------------------

    def promote(self, n: int) -> "Cyclotomic":
        """Embed into Q(zeta_n); requires self.order | n (zeta_m = zeta_n^(n/m))."""
        if n == self.order:
            return self
        if n % self.order != 0:
            raise ValueError("can only promote to a multiple order")
        step = n // self.order
        vec = [Fraction(0)] * n
        for j, c in enumerate(self.coeffs):
            vec[(j * step) % n] += c
        return Cyclotomic.from_vector(vec, n)

    @staticmethod
    def _common(a: "Cyclotomic", b: "Cyclotomic"):
        n = a.order * b.order // gcd(a.order, b.order)
        return a.promote(n), b.promote(n)

    @staticmethod
    def _coerce(x) -> "Cyclotomic":
        if isinstance(x, Cyclotomic):
            return x
        return Cyclotomic.from_rational(Fraction(x))

    # -- ring operations --------------------------------------------------

    def __add__(self, other):
        a, b = Cyclotomic._common(self, Cyclotomic._coerce(other))
        return Cyclotomic(a.order, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.order, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-Cyclotomic._coerce(other))

    def __rsub__(self, other):
        return Cyclotomic._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.order, [c * other for c in self.coeffs])
        if isinstance(other, Cyclotomic):
            # scalar fast paths dominate in character tables
            if other.is_rational():
                q = other.coeffs[0] if other.coeffs else Fraction(0)
                return Cyclotomic(self.order, [c * q for c in self.coeffs])
            if self.is_rational():
                q = self.coeffs[0] if self.coeffs else Fraction(0)
                return Cyclotomic(other.order, [c * q for c in other.coeffs])
        a, b = Cyclotomic._common(self, Cyclotomic._coerce(other))
        n = a.order
        out = [Fraction(0)] * (2 * n)
        for i, ca in enumerate(a.coeffs):
            if ca:
                for j, cb in enumerate(b.coeffs):
                    if cb:
                        out[i + j] += ca * cb
        return Cyclotomic.from_vector(out, n)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers not supported; use norm-based inversion")
        result = Cyclotomic.from_rational(1, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.rational_part() == other
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = Cyclotomic._common(self, other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        if self.is_rational():
            return hash(self.rational_part())
        return hash((self.order, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        return f"Cyclotomic(order={self.order}, coeffs={[str(c) for c in self.coeffs]})"

    # -- structure ---------------------------------------------------------

    def galois(self, k: int) -> "Cyclotomic":
        """Apply zeta -> zeta^k; requires gcd(k, order) = 1."""
        n = self.order
        if gcd(k, n) != 1:
            raise ValueError("galois exponent must be coprime to the order")
        vec = [Fraction(0)] * n
        for j, c in enumerate(self.coeffs):
            vec[(j * k) % n] += c
        return Cyclotomic.from_vector(vec, n)

    def conjugate(self) -> "Cyclotomic":
        """Complex conjugation zeta -> zeta^(-1)."""
        if self.order == 1:
            return self
        return self.galois(self.order - 1)

    def norm(self) -> Fraction:
        """Product of all Galois conjugates; a rational number."""
        n = self.order
        result = Cyclotomic.from_rational(1, n)
        for k in range(1, n + 1):
            if gcd(k, n) == 1:
                result = result * self.galois(k)
        return result.rational_part()

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_part(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"not a rational value: {self!r}")
        return self.coeffs[0]


def cyclotomic_normalize(coeffs, n: int) -> Cyclotomic:
    """Canonical reduced form of a coefficient vector modulo the n-th
    cyclotomic polynomial."""
    return Cyclotomic.from_vector(coeffs, n)


def localized_at_l_check(q, l: int) -> bool:
    """True iff the denominator of q is a power of the prime l."""
    if not is_prime(l):
        raise ValueError(f"{l} is not prime")
    d = Fraction(q).denominator
    while d % l == 0:
        d //= l
    return d == 1


class LocalizedAtL:
    """Rational with denominator a power of the prime l (the ring Z[1/l])."""

    __slots__ = ("value", "prime")

    def __init__(self, value, prime: int):
        value = Fraction(value)
        if not localized_at_l_check(value, prime):
            raise ValueError(f"{value} is not l-integral for l={prime}")
        self.value = value
        self.prime = prime

    def _coerce(self, other) -> Fraction:
        if isinstance(other, LocalizedAtL):
            if other.prime != self.prime:
                raise ValueError("mixed localization primes")
            return other.value
        return Fraction(other)

    def __add__(self, other):
        return LocalizedAtL(self.value + self._coerce(other), self.prime)

    __radd__ = __add__

    def __neg__(self):
        return LocalizedAtL(-self.value, self.prime)

    def __sub__(self, other):
        return LocalizedAtL(self.value - self._coerce(other), self.prime)

    def __mul__(self, other):
        return LocalizedAtL(self.value * self._coerce(other), self.prime)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, LocalizedAtL):
            return self.prime == other.prime and self.value == other.value
        return self.value == other

    def __hash__(self):
        return hash(self.value)

    def __repr__(self):
        return f"LocalizedAtL({self.value}, l={self.prime})"
