"""Concrete Grothendieck-group models: the point and projective space,
equivariant coefficients for trivial actions, the tensor-power operation
routes, external-symbol algebra, and push-forwards.

Equivariant classes for a trivial action are modeled as R(G) (x) K0(P^n);
this is a modeling assumption of the artifact (valid for the point and
projective space over a field), with the split trivial-isotypic projection
available as a runtime sanity check.  K0(P^n) uses the basis u^0..u^n,
u = h - 1, u^(n+1) = 0, so h is invertible by a finite geometric series.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .characters import (
    ClassFunction,
    adams_psi_char,
    character_table,
    decompose,
    from_decomposition,
)
from .exact import Cyclotomic
from .groups import (
    Embedding,
    FiniteGroup,
    Permutation,
    cyclic_group,
    symmetric_group,
    young_subgroup,
)


class OracleDisagreement(Exception):
    """Two independent computation routes produced different values; an
    implementation bug or a falsified identity, never ignored."""


# -- K0 of projective space ---------------------------------------------------


class KClassPn:
    """Element of K0(P^n) in the u-basis, u = h - 1, u^(n+1) = 0."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs):
        self.n = n
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > n + 1:
            if any(cs[n + 1 :]):
                raise ValueError("coefficients beyond u^n must vanish")
            cs = cs[: n + 1]
        cs += [Fraction(0)] * (n + 1 - len(cs))
        self.coeffs = tuple(cs)

    @staticmethod
    def zero(n: int) -> "KClassPn":
        return KClassPn(n, [])

    @staticmethod
    def one(n: int) -> "KClassPn":
        return KClassPn(n, [1])

    @staticmethod
    def u(n: int) -> "KClassPn":
        return KClassPn(n, [0, 1])

    @staticmethod
    def h_power(n: int, m: int) -> "KClassPn":
        """h^m for any integer m; h^(-1) is the finite geometric series."""
        if m >= 0:
            out = [Fraction(comb(m, k)) for k in range(min(m, n) + 1)]
            return KClassPn(n, out)
        hinv = KClassPn(n, [(-1) ** k for k in range(n + 1)])
        result = KClassPn.one(n)
        for _ in range(-m):
            result = result * hinv
        return result

    @staticmethod
    def from_h_dict(n: int, d: dict) -> "KClassPn":
        out = KClassPn.zero(n)
        for m, c in d.items():
            out = out + KClassPn.h_power(n, m) * c
        return out

    def to_h_dict(self) -> dict:
        """Unique expansion over the basis h^0..h^n (triangular solve)."""
        residual = list(self.coeffs)
        out = {}
        for k in range(self.n, -1, -1):
            c = residual[k]
            if c:
                out[k] = c
                hk = KClassPn.h_power(self.n, k)
                for i, hc in enumerate(hk.coeffs):
                    residual[i] -= c * hc
        assert not any(residual)
        return out

    def rank(self) -> Fraction:
        return self.coeffs[0]

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = KClassPn.one(self.n) * other
        return KClassPn(self.n, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return KClassPn(self.n, [-a for a in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = KClassPn.one(self.n) * other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return KClassPn(self.n, [a * other for a in self.coeffs])
        out = [Fraction(0)] * (self.n + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b and i + j <= self.n:
                        out[i + j] += a * b
        return KClassPn(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("use h_power for inverses of h")
        result = KClassPn.one(self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = KClassPn.one(self.n) * other
        return isinstance(other, KClassPn) and self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.n, self.coeffs))

    def __repr__(self):
        return f"KClassPn(n={self.n}, u-coeffs={[str(c) for c in self.coeffs]})"

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def psi(self, k: int) -> "KClassPn":
        """Adams operation on the base: h^m -> h^(k m)."""
        out = KClassPn.zero(self.n)
        for m, c in self.to_h_dict().items():
            out = out + KClassPn.h_power(self.n, k * m) * c
        return out


def euler_characteristic_twist(n: int, m: int) -> Fraction:
    """Euler characteristic of the m-th twist on P^n: binomial(n + m, n) as
    a polynomial in m, valid for every integer m."""
    num = Fraction(1)
    for i in range(1, n + 1):
        num *= Fraction(m + i, i)
    return num


def pushforward_projective(x: KClassPn) -> Fraction:
    """Push-forward to the point; the linear extension of
    h^m -> binomial(n + m, n).  In the u-basis, u^k -> binomial(n, k)."""
    return sum(c * comb(x.n, k) for k, c in enumerate(x.coeffs))


# -- R(G) (x) K0(P^n) ----------------------------------------------------------


_STRUCT_CACHE: dict = {}
_STRUCT_LOCK = threading.Lock()


def _structure_constants(G: FiniteGroup):
    key = (G.descriptor, G.elements)
    with _STRUCT_LOCK:
        cached = _STRUCT_CACHE.get(key)
    if cached is not None:
        return cached
    table = character_table(G)
    r = len(table)
    consts = [[None] * r for _ in range(r)]
    for i in range(r):
        for j in range(i, r):
            c = decompose(table.irreducibles[i] * table.irreducibles[j])
            consts[i][j] = c
            consts[j][i] = c
    with _STRUCT_LOCK:
        _STRUCT_CACHE[key] = consts
    return consts


class EqKClass:
    """Element of R(G) (x) K0(P^n): a matrix of coefficients indexed by
    (irreducible character of G) x (power of u)."""

    __slots__ = ("group", "n", "matrix")

    def __init__(self, group: FiniteGroup, n: int, matrix):
        self.group = group
        self.n = n
        r = len(character_table(group))
        rows = [tuple(Fraction(c) for c in row) for row in matrix]
        if len(rows) != r or any(len(row) != n + 1 for row in rows):
            raise ValueError("matrix shape must be (#irreducibles) x (n+1)")
        self.matrix = tuple(rows)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(G: FiniteGroup, n: int) -> "EqKClass":
        r = len(character_table(G))
        return EqKClass(G, n, [[0] * (n + 1) for _ in range(r)])

    @staticmethod
    def one(G: FiniteGroup, n: int) -> "EqKClass":
        return EqKClass.from_base(G, KClassPn.one(n))

    @staticmethod
    def from_base(G: FiniteGroup, x: KClassPn) -> "EqKClass":
        """The G-trivial embedding K0(X) -> K0(G, X)."""
        table = character_table(G)
        trivial_idx = next(
            i for i, irr in enumerate(table.irreducibles) if all(v == 1 for v in irr.values)
        )
        r = len(table)
        rows = [[Fraction(0)] * (x.n + 1) for _ in range(r)]
        rows[trivial_idx] = list(x.coeffs)
        out = EqKClass(G, x.n, rows)
        assert out.trivial_part() == x, "trivial-isotypic split sanity check failed"
        return out

    @staticmethod
    def from_char(G: FiniteGroup, chi: ClassFunction, n: int) -> "EqKClass":
        coeffs = decompose(chi)
        rows = [[Fraction(c)] + [Fraction(0)] * n for c in coeffs]
        return EqKClass(G, n, rows)

    @staticmethod
    def from_values(G: FiniteGroup, n: int, values) -> "EqKClass":
        """Decompose a K0(P^n)-valued class function (one KClassPn per
        conjugacy class, in class order) over the irreducible basis.
        Multiplicities must come out as integers."""
        classes = G.conjugacy_classes()
        table = character_table(G)
        rows = []
        for irr in table.irreducibles:
            row = []
            for k in range(n + 1):
                acc = Cyclotomic.from_rational(0)
                for size, val, cv in zip(classes.sizes, values, irr.values):
                    acc = acc + cv.conjugate() * (val.coeffs[k] * size)
                acc = acc * Fraction(1, G.order)
                if not acc.is_rational():
                    raise ValueError("values do not decompose rationally")
                q = acc.rational_part()
                if q.denominator != 1:
                    raise ValueError(f"non-integral multiplicity {q}")
                row.append(q)
            rows.append(row)
        out = EqKClass(G, n, rows)
        if out.values() != [KClassPn(n, v.coeffs) for v in values]:
            raise OracleDisagreement("value-form decomposition failed to round-trip")
        return out

    # -- views --------------------------------------------------------------

    def values(self) -> list[KClassPn]:
        """K0(P^n)-valued class function form; requires rational character
        values (symmetric groups and their young subgroups)."""
        table = character_table(self.group)
        classes = self.group.conjugacy_classes()
        out = []
        for ci in range(len(classes)):
            acc = [Fraction(0)] * (self.n + 1)
            for irr, row in zip(table.irreducibles, self.matrix):
                v = irr.values[ci]
                if not v.is_rational():
                    raise ValueError("class has irrational character values")
                q = v.rational_part()
                for k in range(self.n + 1):
                    acc[k] += q * row[k]
            out.append(KClassPn(self.n, acc))
        return out

    def value_at(self, g: Permutation) -> KClassPn:
        classes = self.group.conjugacy_classes()
        return self.values()[classes.index_of_element(g)]

    def trivial_part(self) -> KClassPn:
        table = character_table(self.group)
        trivial_idx = next(
            i for i, irr in enumerate(table.irreducibles) if all(v == 1 for v in irr.values)
        )
        return KClassPn(self.n, self.matrix[trivial_idx])

    def u_slice_char(self, k: int) -> ClassFunction:
        return from_decomposition(self.group, [row[k] for row in self.matrix])

    def rank_char(self) -> ClassFunction:
        return self.u_slice_char(0)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for row in self.matrix for c in row)

    def is_l_localized(self, l: int) -> bool:
        from .exact import localized_at_l_check

        return all(localized_at_l_check(c, l) for row in self.matrix for c in row)

    # -- arithmetic -----------------------------------------------------------

    def _check_compat(self, other: "EqKClass"):
        if self.group.elements != other.group.elements or self.n != other.n:
            raise ValueError("mismatched ambient rings")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = EqKClass.one(self.group, self.n) * other
        self._check_compat(other)
        return EqKClass(
            self.group,
            self.n,
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.matrix, other.matrix)
            ],
        )

    __radd__ = __add__

    def __neg__(self):
        return EqKClass(self.group, self.n, [[-a for a in row] for row in self.matrix])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = EqKClass.one(self.group, self.n) * other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return EqKClass(
                self.group, self.n, [[a * other for a in row] for row in self.matrix]
            )
        if isinstance(other, KClassPn):
            other = EqKClass.from_base(self.group, other)
        self._check_compat(other)
        consts = _structure_constants(self.group)
        r = len(self.matrix)
        rows = [[Fraction(0)] * (self.n + 1) for _ in range(r)]
        for i in range(r):
            base_i = self.matrix[i]
            if not any(base_i):
                continue
            for j in range(r):
                base_j = other.matrix[j]
                if not any(base_j):
                    continue
                # base product, truncated at u^n
                prod = [Fraction(0)] * (self.n + 1)
                for a in range(self.n + 1):
                    if base_i[a]:
                        for b in range(self.n + 1 - a):
                            if base_j[b]:
                                prod[a + b] += base_i[a] * base_j[b]
                for k, mult in enumerate(consts[i][j]):
                    if mult:
                        row = rows[k]
                        for t in range(self.n + 1):
                            row[t] += mult * prod[t]
        return EqKClass(self.group, self.n, rows)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not defined here")
        result = EqKClass.one(self.group, self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        return (
            isinstance(other, EqKClass)
            and self.group.elements == other.group.elements
            and self.n == other.n
            and self.matrix == other.matrix
        )

    def __hash__(self):
        return hash((self.group.elements, self.n, self.matrix))

    def __repr__(self):
        return f"EqKClass({self.group.descriptor}, n={self.n}, matrix={self.matrix})"

    # -- operations --------------------------------------------------------------

    def psi(self, k: int) -> "EqKClass":
        """Adams operation: psi^k on the character factor, h^m -> h^(km)
        on the base factor."""
        table = character_table(self.group)
        r = len(table)
        rows = [[Fraction(0)] * (self.n + 1) for _ in range(r)]
        for j in range(r):
            base_j = KClassPn(self.n, self.matrix[j])
            if not any(base_j.coeffs):
                continue
            psi_base = base_j.psi(k)
            psi_char = decompose(adams_psi_char(table.irreducibles[j], k))
            for i, mult in enumerate(psi_char):
                if mult:
                    for t in range(self.n + 1):
                        rows[i][t] += mult * psi_base.coeffs[t]
        return EqKClass(self.group, self.n, rows)

    def restrict(self, embedding: Embedding) -> "EqKClass":
        """Restriction along a subgroup embedding; acts on the character
        factor slice by slice, the base factor is unchanged."""
        if embedding.G.elements != self.group.elements:
            raise ValueError("embedding target differs from the class group")
        H = embedding.H
        tableH = character_table(H)
        rows = [[Fraction(0)] * (self.n + 1) for _ in range(len(tableH))]
        from .characters import restrict as restrict_char

        for k in range(self.n + 1):
            chi = self.u_slice_char(k)
            res = restrict_char(chi, embedding)
            for i, c in enumerate(decompose(res)):
                rows[i][k] = Fraction(c)
        return EqKClass(H, self.n, rows)

    def pushforward(self) -> "EqKClass":
        """Push-forward along P^n -> point on the base factor."""
        rows = [[pushforward_projective(KClassPn(self.n, row))] for row in self.matrix]
        return EqKClass(self.group, 0, rows)

    def lambda_k(self, k: int) -> "EqKClass":
        """Exterior power by the Newton recursion in R(G) (x) K0(P^n)."""
        lams = [EqKClass.one(self.group, self.n)]
        for kk in range(1, k + 1):
            acc = EqKClass.zero(self.group, self.n)
            sign = 1
            for i in range(1, kk + 1):
                acc = acc + self.psi(i) * lams[kk - i] * sign
                sign = -sign
            lams.append(acc * Fraction(1, kk))
        return lams[k]

    def lambda_minus_one(self, degree_bound: int) -> "EqKClass":
        """Alternating sum of exterior powers for a class of finite
        lambda-degree; errors if lambda^(bound+1) fails to vanish."""
        out = EqKClass.zero(self.group, self.n)
        sign = 1
        for i in range(degree_bound + 1):
            out = out + self.lambda_k(i) * sign
            sign = -sign
        if self.lambda_k(degree_bound + 1) != EqKClass.zero(self.group, self.n):
            raise ValueError(
                f"class does not have lambda-degree <= {degree_bound}; "
                "lambda_minus_one is only defined for finite lambda-degree"
            )
        return out


def zero_section_pushforward(w: EqKClass, n: int) -> EqKClass:
    """Push-forward along the zero-section inclusion of the point into P^n:
    w -> w * (1 - h^(-1))^n, the Koszul resolution class carrying the
    trivial equivariant structure."""
    if w.n != 0:
        raise ValueError("zero-section source must live on the point")
    factor = (KClassPn.one(n) - KClassPn.h_power(n, -1)) ** n
    rows = [[w.matrix[i][0] * c for c in factor.coeffs] for i in range(len(w.matrix))]
    return EqKClass(w.group, n, rows)


# -- standard equivariant classes ---------------------------------------------


def permutation_module_class(l: int, n: int) -> EqKClass:
    """Class of the rank-l permutation module of Sigma_l (the module with
    the obvious permuting action on l copies of the structure sheaf)."""
    from .characters import natural_permutation_character

    G = symmetric_group(l)
    return EqKClass.from_char(G, natural_permutation_character(G), n)


def summation_kernel_class(l: int, n: int) -> EqKClass:
    """Class of the rank-(l-1) kernel of the summation map from the
    permutation module to the trivial module."""
    return permutation_module_class(l, n) - EqKClass.one(symmetric_group(l), n)


def sign_class(l: int, n: int) -> EqKClass:
    from .characters import sign_character

    G = symmetric_group(l)
    return EqKClass.from_char(G, sign_character(G), n)


# -- line sums and tensor-power routes ------------------------------------------


def h_dict_psi_value(E: dict, j: int, n: int) -> KClassPn:
    """psi^j of a line sum given as an h-exponent multiset {m: mult}."""
    out = KClassPn.zero(n)
    for m, mult in E.items():
        if mult:
            out = out + KClassPn.h_power(n, j * m) * mult
    return out


def split_h_class(x: KClassPn) -> tuple[dict, dict]:
    """Canonical (positive, negative) line-sum decomposition of a virtual
    class, read off the h^0..h^n basis expansion."""
    E, F = {}, {}
    for m, c in sorted(x.to_h_dict().items()):
        if c.denominator != 1:
            raise ValueError("virtual class has non-integral h-coordinates")
        c = int(c)
        if c > 0:
            E[m] = c
        elif c < 0:
            F[m] = -c
    return E, F


def line_rank(E: dict) -> int:
    return sum(E.values())


def _block_subgroup_member(perm: Permutation, blocks) -> bool:
    offset = 0
    for b in blocks:
        for i in range(offset + 1, offset + b + 1):
            if not offset + 1 <= perm(i) <= offset + b:
                return False
        offset += b
    return True


def _block_cycle_value(perm: Permutation, blocks, factors, signs, n: int) -> KClassPn:
    """Value at a block-subgroup element of the product over blocks of the
    per-cycle Adams evaluations, twisted by the block sign characters."""
    out = KClassPn.one(n)
    offset = 0
    sign = 1
    for b, factor, sgn in zip(blocks, factors, signs):
        seen = [False] * b
        for start in range(1, b + 1):
            if seen[start - 1]:
                continue
            length = 0
            i = start
            while not seen[i - 1]:
                seen[i - 1] = True
                i = perm(offset + i) - offset
                length += 1
            out = out * h_dict_psi_value(factor, length, n)
            if sgn and length % 2 == 0:
                sign = -sign
        offset += b
    return out * sign


def induced_symbol_value(l: int, n: int, blocks, factors, signs) -> EqKClass:
    """Internal evaluation of an induced block symbol as a K0-valued class
    function on Sigma_l: the value at sigma is the brute-force induced sum
    whose block-subgroup values are products of per-cycle Adams evaluations
    of the block factors (sign-twisted blocks multiply by the block sign)."""
    G = symmetric_group(l)
    classes = G.conjugacy_classes()
    order_P = 1
    for b in blocks:
        order_P *= _factorial(b)
    values = []
    for rep in classes.representatives:
        acc = KClassPn.zero(n)
        for x in G.elements:
            y = x.inverse() * rep * x
            if _block_subgroup_member(y, blocks):
                acc = acc + _block_cycle_value(y, blocks, factors, signs, n)
        values.append(acc * Fraction(1, order_P))
    return EqKClass.from_values(G, n, values)


def _factorial(b: int) -> int:
    out = 1
    for i in range(2, b + 1):
        out *= i
    return out


def tau_genuine(E: dict, l: int, n: int) -> EqKClass:
    """Tensor power of a genuine line sum: the class function whose value
    at a permutation of cycle type (m_1, ..., m_k) is the product of the
    Adams evaluations psi^(m_i)."""
    if any(mult < 0 for mult in E.values()):
        raise ValueError("genuine line sums need non-negative multiplicities")
    G = symmetric_group(l)
    classes = G.conjugacy_classes()
    values = []
    for mu in classes.labels:
        v = KClassPn.one(n)
        for part in mu:
            v = v * h_dict_psi_value(E, part, n)
        values.append(v)
    return EqKClass.from_values(G, n, values)


def tau_internal(x, l: int, n: int, route: str = "cycle_psi") -> EqKClass:
    """The l-th tensor power operation K0(P^n) -> R(Sigma_l) (x) K0(P^n).

    x may be a KClassPn (canonically decomposed) or an explicit pair
    (E, F) of h-exponent multisets standing for the class [E] - [F].
    Routes: "lemma12" and "cor110" expand the virtual class through the two
    induced-symbol formulas, "cross" multiplies out the componentwise
    inverse under the cross product, "cycle_psi" evaluates per-cycle Adams
    products directly (the oracle route).
    """
    if isinstance(x, KClassPn):
        if x.n != n:
            raise ValueError("dimension mismatch")
        E, F = split_h_class(x)
    else:
        E, F = x
    if route == "cycle_psi":
        G = symmetric_group(l)
        classes = G.conjugacy_classes()
        values = []
        for mu in classes.labels:
            v = KClassPn.one(n)
            for part in mu:
                v = v * (h_dict_psi_value(E, part, n) - h_dict_psi_value(F, part, n))
            values.append(v)
        return EqKClass.from_values(G, n, values)
    if route == "lemma12":
        out = EqKClass.zero(symmetric_group(l), n)
        for a in range(l + 1):
            if a and not E:
                continue
            for comp in _compositions(l - a):
                if comp and not F:
                    continue
                u = len(comp)
                blocks = ([a] if a else []) + list(comp)
                factors = ([E] if a else []) + [F] * u
                signs = [False] * len(blocks)
                term = induced_symbol_value(l, n, blocks, factors, signs)
                out = out + term * ((-1) ** u)
        return out
    if route == "cor110":
        out = EqKClass.zero(symmetric_group(l), n)
        for i in range(l + 1):
            blocks, factors, signs = [], [], []
            if i:
                blocks.append(i)
                factors.append(E)
                signs.append(False)
            if l - i:
                blocks.append(l - i)
                factors.append(F)
                signs.append(True)
            if not blocks:
                term = EqKClass.one(symmetric_group(l), n)
            else:
                term = induced_symbol_value(l, n, blocks, factors, signs)
            out = out + term * ((-1) ** (l - i))
        return out
    if route == "cross":
        out = EqKClass.zero(symmetric_group(l), n)
        for i in range(l + 1):
            a = tau_genuine(E, i, n)
            b = tau_negation_genuine(F, l - i, n)
            out = out + cross_product(a, b)
        return out
    raise ValueError(f"unknown route {route!r}")


def _compositions(total: int):
    """Compositions of total into positive parts (empty for total = 0)."""
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in _compositions(total - first):
            yield (first,) + rest


def tau_negation_genuine(F: dict, j: int, n: int) -> EqKClass:
    """tau^j(-[F]) = (-1)^j [F^(tensor j)] (x) sign for a genuine line sum."""
    return tau_genuine(F, j, n) * sign_class(j, n) * ((-1) ** j)


def tau_all_routes(x, l: int, n: int) -> EqKClass:
    """All four routes, raising OracleDisagreement unless they agree."""
    results = {r: tau_internal(x, l, n, route=r) for r in ("lemma12", "cor110", "cross", "cycle_psi")}
    first = results["lemma12"]
    for name, val in results.items():
        if val != first:
            raise OracleDisagreement(f"tensor-power routes disagree: lemma12 vs {name}")
    return first


# -- cross product and restriction ----------------------------------------------


def cross_product(a: EqKClass, b: EqKClass) -> EqKClass:
    """Induced product R(Sigma_i) (x) R(Sigma_j) -> R(Sigma_(i+j)) over a
    common base, computed by brute-force induction of the outer tensor."""
    if a.n != b.n:
        raise ValueError("cross product needs a common base")
    i = a.group.degree
    j = b.group.degree
    l = i + j
    G = symmetric_group(l)
    blocks = (i, j)
    avals = a.values()
    bvals = b.values()
    aclasses = a.group.conjugacy_classes()
    bclasses = b.group.conjugacy_classes()
    order_P = _factorial(i) * _factorial(j)
    n = a.n
    classes = G.conjugacy_classes()
    values = []
    for rep in classes.representatives:
        acc = KClassPn.zero(n)
        for x in G.elements:
            y = x.inverse() * rep * x
            if _block_subgroup_member(y, blocks):
                pa = Permutation(tuple(y(t) for t in range(1, i + 1))) if i else Permutation(())
                pb = Permutation(tuple(y(i + t) - i for t in range(1, j + 1))) if j else Permutation(())
                va = avals[aclasses.index_of_element(pa)]
                vb = bvals[bclasses.index_of_element(pb)]
                acc = acc + va * vb
        values.append(acc * Fraction(1, order_P))
    return EqKClass.from_values(G, n, values)


def outer_tensor_on_young(a: EqKClass, b: EqKClass) -> EqKClass:
    """a (x) b as a class on the young subgroup Sigma_i x Sigma_(l-i)."""
    if a.n != b.n:
        raise ValueError("mismatched bases")
    i, j = a.group.degree, b.group.degree
    P = young_subgroup(i + j, (i, j))
    avals = a.values()
    bvals = b.values()
    aclasses = a.group.conjugacy_classes()
    bclasses = b.group.conjugacy_classes()
    values = []
    for rep in P.conjugacy_classes().representatives:
        pa = Permutation(tuple(rep(t) for t in range(1, i + 1))) if i else Permutation(())
        pb = Permutation(tuple(rep(i + t) - i for t in range(1, j + 1))) if j else Permutation(())
        values.append(
            avals[aclasses.index_of_element(pa)] * bvals[bclasses.index_of_element(pb)]
        )
    return EqKClass.from_values(P, a.n, values)


def restrict_eqk(x: EqKClass, subgroup: str, param=None) -> EqKClass:
    """Restriction to a young subgroup ("young", (i, l-i)) or to the cyclic
    subgroup generated by the long cycle ("cyclic")."""
    l = x.group.degree
    if subgroup == "young":
        H = young_subgroup(l, tuple(param))
        emb = Embedding.inclusion(H, x.group)
    elif subgroup == "cyclic":
        H = cyclic_group(l)
        emb = Embedding.inclusion(H, x.group)
    else:
        raise ValueError("supported subgroups: young blocks or the cyclic subgroup")
    return x.restrict(emb)


# -- external symbols and the Kuenneth push-forward -------------------------------


@dataclass(frozen=True)
class ExternalSymbol:
    """Formal induced external product over block subgroups: one block of
    size b with factor F contributes F^(boxtimes b), sign-twisted when
    flagged.  Blocks are kept sorted so that symbols with permuted equal
    blocks are identified."""

    l: int
    blocks: tuple  # tuple of (size, factor as sorted (m, mult) tuple, sign flag)
    multiplicity: int = 1

    @staticmethod
    def make(l: int, raw_blocks, multiplicity: int = 1) -> "ExternalSymbol":
        blocks = []
        for size, factor, sign in raw_blocks:
            key = tuple(sorted((m, mult) for m, mult in dict(factor).items() if mult))
            blocks.append((size, key, bool(sign)))
        if sum(b[0] for b in blocks) != l:
            raise ValueError("block sizes must sum to l")
        if any(b[0] <= 0 for b in blocks):
            raise ValueError("block sizes must be positive")
        return ExternalSymbol(l, tuple(sorted(blocks)), multiplicity)

    def scaled(self, k: int) -> "ExternalSymbol":
        return ExternalSymbol(self.l, self.blocks, self.multiplicity * k)


def tau_external(x, l: int, n: int) -> list[ExternalSymbol]:
    """External tensor power of a virtual class as a formal symbol
    combination (the alternating induced-block expansion); a genuine class
    yields the single symbol [E^(boxtimes l)]."""
    if isinstance(x, KClassPn):
        E, F = split_h_class(x)
    else:
        E, F = x
    if l == 0:
        return [ExternalSymbol.make(0, [], 1)]
    out = []
    for i in range(l + 1):
        raw = []
        if i:
            if not E:
                continue
            raw.append((i, E, False))
        if l - i:
            if not F:
                continue
            raw.append((l - i, F, True))
        mult = (-1) ** (l - i)
        if not raw:
            continue
        out.append(ExternalSymbol.make(l, raw, mult))
    return out


def kunneth_pushforward(symbols, l: int, n: int) -> EqKClass:
    """Push forward an external symbol combination along (P^n)^l -> point.

    Every block factor is replaced by the genuine vector space of dimension
    equal to its Euler characteristic; acyclicity (all twists m >= 0 with
    non-negative multiplicities) is required so that these are honest
    global-section spaces.  The result is the induced class function
    sigma -> prod over blocks of d^(#cycles), sign-twisted where flagged.
    """
    G = symmetric_group(l)
    out = EqKClass.zero(G, 0)
    for sym in symbols:
        if sym.l != l:
            raise ValueError("mixed symbol degrees")
        factors = []
        blocks = []
        signs = []
        for size, factor, sign in sym.blocks:
            d = Fraction(0)
            for m, mult in factor:
                if m < 0 or mult < 0:
                    raise ValueError(
                        "Kuenneth push-forward requires acyclic factors "
                        "(non-negative twists and multiplicities)"
                    )
                d += mult * euler_characteristic_twist(n, m)
            assert d.denominator == 1
            factors.append({0: int(d)})  # d copies of the trivial line
            blocks.append(size)
            signs.append(sign)
        term = induced_symbol_value(l, 0, blocks, factors, signs)
        out = out + term * sym.multiplicity
    return out
