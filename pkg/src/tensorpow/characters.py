"""Class functions and representation-ring arithmetic for the supported
group family: symmetric groups (Murnaghan-Nakayama), cyclic groups
(root-of-unity characters), and direct products of such.

Induction uses the brute-force element-sum formula; Mackey decomposition
only ever appears as a test oracle.  Virtual characters are stored as class
functions and decomposed into irreducibles on demand; a non-integral
decomposition is a hard error.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .exact import Cyclotomic, is_prime
from .groups import (
    ConjugacyClassSet,
    Embedding,
    FiniteGroup,
    Permutation,
    power_class_map,
    split_product_element,
)
from .linalg import solve_integer


class ClassFunction:
    """Cyclotomic-valued function on the conjugacy classes of a group."""

    __slots__ = ("group", "values")

    def __init__(self, group: FiniteGroup, values):
        self.group = group
        vals = []
        for v in values:
            if not isinstance(v, Cyclotomic):
                v = Cyclotomic.from_rational(Fraction(v))
            vals.append(v)
        if len(vals) != len(group.conjugacy_classes()):
            raise ValueError("one value per conjugacy class required")
        self.values = tuple(vals)

    # -- ring structure (pointwise) --------------------------------------

    def _coerce(self, other) -> "ClassFunction":
        if isinstance(other, ClassFunction):
            if other.group is not self.group and other.group.elements != self.group.elements:
                raise ValueError("class functions live on different groups")
            return other
        return ClassFunction(self.group, [other] * len(self.values))

    def __add__(self, other):
        o = self._coerce(other)
        return ClassFunction(self.group, [a + b for a, b in zip(self.values, o.values)])

    __radd__ = __add__

    def __neg__(self):
        return ClassFunction(self.group, [-a for a in self.values])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ClassFunction(self.group, [a * other for a in self.values])
        o = self._coerce(other)
        return ClassFunction(self.group, [a * b for a, b in zip(self.values, o.values)])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return self.group.elements == other.group.elements and self.values == other.values

    def __hash__(self):
        return hash((self.group.elements, self.values))

    def __repr__(self):
        return f"ClassFunction({self.group.descriptor}, {[str(v.coeffs) for v in self.values]})"

    # -- queries -----------------------------------------------------------

    def value_at(self, g: Permutation) -> Cyclotomic:
        classes = self.group.conjugacy_classes()
        return self.values[classes.index_of_element(g)]

    def dim(self) -> Cyclotomic:
        classes = self.group.conjugacy_classes()
        idx = classes.index_of_element(self.group.identity)
        return self.values[idx]

    def conjugate(self) -> "ClassFunction":
        return ClassFunction(self.group, [v.conjugate() for v in self.values])

    def inner(self, other: "ClassFunction") -> Fraction:
        classes = self.group.conjugacy_classes()
        total = Cyclotomic.from_rational(0)
        for size, a, b in zip(classes.sizes, self.values, other.values):
            total = total + a * b.conjugate() * size
        total = total * Fraction(1, self.group.order)
        if not total.is_rational():
            raise ValueError("inner product is not rational")
        return total.rational_part()


# -- partitions and Murnaghan-Nakayama ---------------------------------------


def partitions(n: int, max_part: int | None = None):
    """Partitions of n in descending lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def murnaghan_nakayama(lam: tuple, mu: tuple) -> int:
    """Irreducible symmetric-group character value chi^lam(mu) by recursive
    border-strip removal on beta-numbers."""
    if sum(lam) != sum(mu):
        raise ValueError("partition sizes differ")
    if not lam:
        return 1
    k = mu[0]
    rest = mu[1:]
    m = len(lam)
    beta = [lam[i] + (m - 1 - i) for i in range(m)]
    beta_set = set(beta)
    total = 0
    for i in range(m):
        b = beta[i] - k
        if b < 0 or b in beta_set:
            continue
        height = sum(1 for x in beta if b < x < beta[i])
        new_beta = sorted((x for x in beta if x != beta[i]), reverse=True)
        new_beta.append(b)
        new_beta.sort(reverse=True)
        new_lam = tuple(new_beta[j] - (m - 1 - j) for j in range(m))
        new_lam = tuple(x for x in new_lam if x > 0)
        total += (-1) ** height * murnaghan_nakayama(new_lam, rest)
    return total


def hook_length_dimension(lam: tuple) -> int:
    """Dimension of the symmetric-group irreducible via hook lengths."""
    n = sum(lam)
    conj = [sum(1 for p in lam if p > j) for j in range(lam[0])] if lam else []
    prod = 1
    for i, row in enumerate(lam):
        for j in range(row):
            prod *= (row - j) + (conj[j] - i) - 1
    return factorial(n) // prod


# -- character tables ---------------------------------------------------------


class CharacterTable:
    def __init__(self, group: FiniteGroup, irreducibles, labels):
        self.group = group
        self.irreducibles = list(irreducibles)
        self.labels = list(labels)
        self.label_index = {lab: i for i, lab in enumerate(self.labels)}
        self._conjugate_rows = None

    def conjugate_rows(self):
        if self._conjugate_rows is None:
            self._conjugate_rows = [
                tuple(v.conjugate() for v in irr.values) for irr in self.irreducibles
            ]
        return self._conjugate_rows

    def __len__(self):
        return len(self.irreducibles)


class UnsupportedGroupError(Exception):
    pass


_TABLE_CACHE: dict = {}
_TABLE_LOCK = threading.Lock()
_CACHE_ENABLED = True


def set_table_cache(enabled: bool) -> None:
    """Disable/enable table memoization (results must not change)."""
    global _CACHE_ENABLED
    with _TABLE_LOCK:
        _CACHE_ENABLED = enabled
        if not enabled:
            _TABLE_CACHE.clear()


def _cyclic_log_map(G: FiniteGroup, gen: Permutation, n: int):
    log = {}
    power = G.identity
    for k in range(n):
        log[power] = k
        power = power * gen
    return log


def _raw_table(G: FiniteGroup):
    """(irr value rows, irr labels), rows aligned with G's conjugacy classes."""
    kind = G.descriptor[0]
    classes = G.conjugacy_classes()
    if kind == "trivial" or G.order == 1:
        return [(Cyclotomic.from_rational(1),) * len(classes)], ["1"]
    if kind == "symmetric":
        l = G.descriptor[1]
        if l > 7:
            raise UnsupportedGroupError("symmetric groups supported up to degree 7")
        labels = list(partitions(l))
        rows = []
        for lam in labels:
            rows.append(
                tuple(
                    Cyclotomic.from_rational(murnaghan_nakayama(lam, mu))
                    for mu in classes.labels
                )
            )
        return rows, labels
    if kind in ("cyclic", "cyclic-subgroup"):
        n = G.order
        if n > 30:
            raise UnsupportedGroupError("cyclic groups supported up to order 30")
        gen = G.generators[0] if kind == "cyclic" else G.cyclic_generator
        if not G.generators:
            gen = G.identity
        log = _cyclic_log_map(G, gen, n)
        ks = [log[rep] for rep in classes.representatives]
        rows = []
        for j in range(n):
            rows.append(tuple(Cyclotomic.zeta(n, (j * k) % n) for k in ks))
        return rows, list(range(n))
    if kind == "young":
        # direct product of symmetric groups on consecutive blocks
        return _product_raw_table(G, _young_factors(G))
    if kind == "product":
        return _product_raw_table(G, list(G.factors))
    raise UnsupportedGroupError(f"no character table for descriptor {G.descriptor}")


def _young_factors(G: FiniteGroup):
    from .groups import symmetric_group

    factors = []
    offset = 0
    for b in G.blocks:
        factors.append((symmetric_group(b), offset, b))
        offset += b
    return factors


def _product_raw_table(G: FiniteGroup, factors):
    classes = G.conjugacy_classes()

    def split(g):
        if hasattr(G, "factors"):
            return list(split_product_element(G, g))
        parts = []
        for _, offset, b in factors:
            parts.append(Permutation(tuple(g(offset + i) - offset for i in range(1, b + 1))))
        return parts

    factor_groups = [f[0] if isinstance(f, tuple) else f for f in factors]
    factor_tables = [character_table(F) for F in factor_groups]
    # class index in each factor for every class of G
    factor_class_indices = []
    for rep in classes.representatives:
        parts = split(rep)
        factor_class_indices.append(
            tuple(
                F.conjugacy_classes().index_of_element(p)
                for F, p in zip(factor_groups, parts)
            )
        )
    rows = []
    labels = []
    import itertools as _it

    for combo in _it.product(*[range(len(t)) for t in factor_tables]):
        row = []
        for cls_idx in factor_class_indices:
            v = Cyclotomic.from_rational(1)
            for t_i, (table, ci) in enumerate(zip(factor_tables, cls_idx)):
                v = v * table.irreducibles[combo[t_i]].values[ci]
            row.append(v)
        rows.append(tuple(row))
        labels.append(tuple(factor_tables[i].labels[combo[i]] for i in range(len(combo))))
    return rows, labels


def _validate_orthogonality(G: FiniteGroup, rows):
    classes = G.conjugacy_classes()
    n = len(rows)
    order = G.order
    conj = [tuple(v.conjugate() for v in row) for row in rows]
    for i in range(n):
        for j in range(i, n):
            total = Cyclotomic.from_rational(0)
            for size, a, b in zip(classes.sizes, rows[i], conj[j]):
                total = total + a * b * size
            expected = order if i == j else 0
            if total != expected:
                raise AssertionError(
                    f"row orthogonality failed for {G.descriptor} at ({i},{j})"
                )
    for ci in range(len(classes)):
        for cj in range(ci, len(classes)):
            total = Cyclotomic.from_rational(0)
            for ri in range(n):
                total = total + rows[ri][ci] * conj[ri][cj]
            expected = Fraction(order, classes.sizes[ci]) if ci == cj else 0
            if total != expected:
                raise AssertionError(
                    f"column orthogonality failed for {G.descriptor} at ({ci},{cj})"
                )


def character_table(G: FiniteGroup) -> CharacterTable:
    key = (G.descriptor, G.elements)
    with _TABLE_LOCK:
        cached = _TABLE_CACHE.get(key) if _CACHE_ENABLED else None
    if cached is None:
        rows, labels = _raw_table(G)
        _validate_orthogonality(G, rows)
        cached = (rows, labels)
        with _TABLE_LOCK:
            if _CACHE_ENABLED:
                _TABLE_CACHE[key] = cached
    rows, labels = cached
    irreducibles = [ClassFunction(G, row) for row in rows]
    return CharacterTable(G, irreducibles, labels)


# -- standard characters -------------------------------------------------------


def trivial_character(G: FiniteGroup) -> ClassFunction:
    return ClassFunction(G, [1] * len(G.conjugacy_classes()))


def regular_character(G: FiniteGroup) -> ClassFunction:
    classes = G.conjugacy_classes()
    return ClassFunction(
        G, [G.order if rep.is_identity() else 0 for rep in classes.representatives]
    )


def sign_character(G: FiniteGroup) -> ClassFunction:
    classes = G.conjugacy_classes()
    return ClassFunction(G, [rep.sign() for rep in classes.representatives])


def natural_permutation_character(G: FiniteGroup) -> ClassFunction:
    """Character of the permutation action on the underlying set
    {1..degree}; for Sigma_l and C_l this is the class of the module with
    basis indexed by that set."""
    classes = G.conjugacy_classes()
    vals = []
    for rep in classes.representatives:
        vals.append(sum(1 for i in range(1, G.degree + 1) if rep(i) == i))
    return ClassFunction(G, vals)


# -- induction and restriction -------------------------------------------------


def induce_values(embedding: Embedding, value_of, zero, scale):
    """Generic brute-force induction of a class-function with values in any
    module: returns the list of induced values at the target's class reps.

    value_of(h) gives the value at an element h of the source group; zero is
    the additive identity of the value module; scale(v, q) multiplies a value
    by a Fraction q.
    """
    H, G = embedding.H, embedding.G
    image_value = {embedding(h): value_of(h) for h in H.elements}
    classes = G.conjugacy_classes()
    out = []
    for rep in classes.representatives:
        acc = zero
        for x in G.elements:
            y = x.inverse() * rep * x
            v = image_value.get(y)
            if v is not None:
                acc = acc + v
        out.append(scale(acc, Fraction(1, H.order)))
    return out


def induce(phi: ClassFunction, embedding: Embedding) -> ClassFunction:
    if phi.group.elements != embedding.H.elements:
        raise ValueError("class function does not live on the embedding source")
    vals = induce_values(
        embedding,
        lambda h: phi.value_at(h),
        Cyclotomic.from_rational(0),
        lambda v, q: v * q,
    )
    return ClassFunction(embedding.G, vals)


def restrict(chi: ClassFunction, embedding: Embedding) -> ClassFunction:
    if chi.group.elements != embedding.G.elements:
        raise ValueError("class function does not live on the embedding target")
    H = embedding.H
    classes = H.conjugacy_classes()
    return ClassFunction(H, [chi.value_at(embedding(rep)) for rep in classes.representatives])


# -- lambda-ring operations -----------------------------------------------------


def adams_psi_char(chi: ClassFunction, k: int) -> ClassFunction:
    pm = power_class_map(chi.group, k)
    return ClassFunction(chi.group, [chi.values[pm[i]] for i in range(len(chi.values))])


def exterior_power_char(chi: ClassFunction, k: int) -> ClassFunction:
    """Exterior power via the Newton recursion
    k*lambda^k = sum_{i=1..k} (-1)^(i-1) psi^i * lambda^(k-i)."""
    if k < 0:
        raise ValueError("exterior power degree must be nonnegative")
    lams = [trivial_character(chi.group)]
    for kk in range(1, k + 1):
        acc = ClassFunction(chi.group, [0] * len(chi.values))
        sign = 1
        for i in range(1, kk + 1):
            acc = acc + adams_psi_char(chi, i) * lams[kk - i] * sign
            sign = -sign
        lams.append(acc * Fraction(1, kk))
    result = lams[k]
    try:
        decompose(result)
    except ValueError as err:
        raise ValueError(
            f"exterior power lambda^{k} produced a non-integral class function: {err}"
        ) from None
    return result


def decompose_fractional(chi: ClassFunction) -> tuple[Fraction, ...]:
    """Coordinates of a class function over the irreducibles, as exact
    rationals (integrality is the caller's concern)."""
    table = character_table(chi.group)
    classes = chi.group.conjugacy_classes()
    order = chi.group.order
    coeffs = []
    for conj_row in table.conjugate_rows():
        total = Cyclotomic.from_rational(0)
        for size, a, b in zip(classes.sizes, chi.values, conj_row):
            total = total + a * b * size
        if not total.is_rational():
            raise ValueError("coordinate is not rational")
        coeffs.append(total.rational_part() * Fraction(1, order))
    return tuple(coeffs)


def decompose(chi: ClassFunction) -> tuple[int, ...]:
    """Multiplicities of chi over the irreducibles; errors on non-integers."""
    coeffs = []
    for c in decompose_fractional(chi):
        if c.denominator != 1:
            raise ValueError(f"non-integral multiplicity {c}")
        coeffs.append(int(c))
    return tuple(coeffs)


def is_virtual_character(chi: ClassFunction) -> bool:
    try:
        decompose(chi)
        return True
    except ValueError:
        return False


def from_decomposition(G: FiniteGroup, coeffs) -> ClassFunction:
    table = character_table(G)
    out = ClassFunction(G, [0] * len(G.conjugacy_classes()))
    for c, irr in zip(coeffs, table.irreducibles):
        out = out + irr * c
    return out


# -- ideal membership ------------------------------------------------------------


class CharRing:
    """R(G) presented with its canonical integer basis of irreducibles."""

    def __init__(self, G: FiniteGroup):
        self.G = G
        self.table = character_table(G)

    def basis(self):
        return list(self.table.irreducibles)

    def coords(self, x: ClassFunction):
        return list(decompose_fractional(x))

    def mul(self, a, b):
        return a * b

    def from_coords(self, coords):
        table = character_table(self.G)
        out = ClassFunction(self.G, [0] * len(self.G.conjugacy_classes()))
        for c, irr in zip(coords, table.irreducibles):
            out = out + irr * c
        return out


def ideal_membership(x, generators, ring, l_localized: int | None = None, max_power: int = 12):
    """Decide membership of x in the two-sided ideal generated by the given
    elements, over the ring's canonical integer lattice.

    Returns (member, witnesses) where witnesses[i] is a ring element w_i
    with x = sum_i generators[i] * w_i (after scaling by l^-k when an
    l-localized ring is requested; the scaling power is applied to x).
    """
    basis = ring.basis()
    columns = []
    col_source = []
    for gi, g in enumerate(generators):
        for b in basis:
            columns.append(ring.coords(ring.mul(g, b)))
            col_source.append(gi)
    if not columns:
        return (not any(ring.coords(x))), []
    nrows = len(columns[0])
    matrix = [[columns[c][r] for c in range(len(columns))] for r in range(nrows)]

    target = ring.coords(x)
    powers = [0] if l_localized is None else range(max_power + 1)
    for k in powers:
        scale = (l_localized ** k) if l_localized is not None else 1
        rhs = [c * scale for c in target]
        if any(Fraction(c).denominator != 1 for c in rhs):
            continue
        sol = solve_integer(matrix, [int(c) for c in rhs])
        if sol is not None:
            witnesses = []
            for gi in range(len(generators)):
                coords = [0] * len(basis)
                for c, src in enumerate(col_source):
                    if src == gi:
                        coords[c % len(basis)] += sol[c]
                w = ring.from_coords(coords)
                if l_localized is not None and k:
                    w = w * Fraction(1, l_localized ** k)
                witnesses.append(w)
            return True, witnesses
    return False, []


def regular_ideal_generators(G: FiniteGroup):
    return [regular_character(G)]


def lambda_power_ideal_generators(G: FiniteGroup, upto: int):
    """Exterior powers of the natural permutation module, i = 1..upto."""
    perm = natural_permutation_character(G)
    return [exterior_power_char(perm, i) for i in range(1, upto + 1)]


# -- quotient models ------------------------------------------------------------


def quotient_to_cyclotomic(x: ClassFunction, l: int) -> Cyclotomic:
    """Ring map R(C_l)/([regular]) -> Z[zeta_l], defining character t to zeta_l."""
    if not is_prime(l):
        raise ValueError("order must be prime")
    G = x.group
    if G.descriptor[0] not in ("cyclic", "cyclic-subgroup") or G.order != l:
        raise ValueError("input must live on the cyclic group of order l")
    coeffs = decompose(x)
    out = Cyclotomic.from_rational(0)
    for j, c in enumerate(coeffs):
        out = out + Cyclotomic.zeta(l, j) * c
    return out


def modular_dimension_quotient(jordan_blocks, p: int) -> int:
    """Composition length modulo p of a module over the mod-p group algebra
    of the cyclic group of order p, given by its Jordan block sizes (the
    only simple module is the trivial one, so length = total dimension)."""
    if not is_prime(p):
        raise ValueError("p must be prime")
    blocks = list(jordan_blocks)
    if any(not 1 <= b <= p for b in blocks):
        raise ValueError("Jordan blocks for the cyclic group have size 1..p")
    return sum(blocks) % p
