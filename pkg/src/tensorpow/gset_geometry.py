"""Equivariant vector bundles on finite G-sets over a point: section
push-forwards, tensor-power bundles with cyclic-times-diagonal structure,
the no-denominators push-forward congruence on the supported grid, the
induction/Adams compatibility check, and the explicit K1 tensor-power
computation.

Bundles are stored per orbit as a stabilizer character; per-point fibers
only ever materialize inside trace computations.  The congruence check runs
double-entry: once through the certified orbit decomposition of X^l and
once by direct enumeration of X^l, and the two must agree exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .characters import (
    CharRing,
    ClassFunction,
    adams_psi_char,
    decompose,
    ideal_membership,
    induce,
    regular_character,
    restrict,
    trivial_character,
)
from .exact import Cyclotomic, is_prime
from .groups import (
    Embedding,
    FiniteGSet,
    FiniteGroup,
    Permutation,
    PowerDecomposition,
    cyclic_group,
    decompose_power_gset,
    direct_product,
    product_element,
    split_product_element,
    subgroup_of,
    symmetric_group,
    young_subgroup,
)
from .kspaces import OracleDisagreement


def restrict_gset(X: FiniteGSet, H: FiniteGroup) -> FiniteGSet:
    """Same points, action restricted to a subgroup (elements of H must act
    on X through the original group)."""
    return FiniteGSet(H, X.points, X._act, name=f"{X.name}|{H.descriptor}")


class EquivariantBundle:
    """Vector bundle on a finite right H-set over a point, presented by one
    (virtual) stabilizer character per orbit."""

    def __init__(self, gset: FiniteGSet, orbit_characters):
        self.gset = gset
        self.group = gset.group
        self.orbits = []
        chars = list(orbit_characters)
        orbit_list = gset.orbits()
        if len(chars) != len(orbit_list):
            raise ValueError("one stabilizer character per orbit required")
        for orbit, chi in zip(orbit_list, chars):
            base = orbit[0]
            stab = subgroup_of(self.group, self.gset.stabilizer_elements(base))
            if chi.group.elements != stab.elements:
                raise ValueError("character does not live on the orbit stabilizer")
            transporters = {}
            for x in orbit:
                transporters[x] = self.gset.transporter(base, x)
            self.orbits.append((base, stab, chi, transporters))
        self._point_data = {}
        for base, stab, chi, transporters in self.orbits:
            for x, r in transporters.items():
                self._point_data[x] = (chi, r)

    def fiber_trace(self, x, s: Permutation) -> Cyclotomic:
        """Trace of the structure map of s on the fiber at x; s must fix x."""
        chi, r = self._point_data[x]
        return chi.value_at(r * s * r.inverse())

    def fiber_dim(self, x) -> Cyclotomic:
        chi, _ = self._point_data[x]
        return chi.dim()

    def total_dimension(self) -> Fraction:
        total = Fraction(0)
        for x in self.gset.points:
            total += self.fiber_dim(x).rational_part()
        return total

    def is_genuine(self) -> bool:
        return all(c >= 0 for _, _, chi, _ in self.orbits for c in decompose(chi))


def trivial_bundle(X: FiniteGSet) -> EquivariantBundle:
    chars = []
    for orbit in X.orbits():
        stab = subgroup_of(X.group, X.stabilizer_elements(orbit[0]))
        chars.append(trivial_character(stab))
    return EquivariantBundle(X, chars)


def sections_pushforward(E: EquivariantBundle) -> ClassFunction:
    """Character of the acting group on the direct sum of all fibers (the
    push-forward to the point), by fixed-point trace bookkeeping."""
    H = E.group
    classes = H.conjugacy_classes()
    values = []
    for rep in classes.representatives:
        acc = Cyclotomic.from_rational(0)
        for x in E.gset.points:
            if E.gset.act(x, rep) == x:
                acc = acc + E.fiber_trace(x, rep)
        values.append(acc)
    return ClassFunction(H, values)


# -- tensor powers over the power set -------------------------------------------


def _cycles_of_rotation(sigma: Permutation, l: int):
    """Cycle decomposition of a degree-l permutation as position lists."""
    return sigma.cycles()


def cyclic_product_group(l: int, H: FiniteGroup) -> FiniteGroup:
    return direct_product(cyclic_group(l), H)


def tau_character(W: ClassFunction, l: int, CH: FiniteGroup) -> ClassFunction:
    """Character of the l-th tensor power of a representation with the
    cyclic group permuting factors: value at (sigma, h) is the product over
    cycles of W(h^(cycle length)).  W must be a genuine character."""
    if any(c < 0 for c in decompose(W)):
        raise ValueError("tensor powers need a genuine character")
    classes = CH.conjugacy_classes()
    values = []
    for rep in classes.representatives:
        sigma, h = split_product_element(CH, rep)
        v = Cyclotomic.from_rational(1)
        for cyc in sigma.cycles():
            v = v * W.value_at(h ** len(cyc))
        values.append(v)
    return ClassFunction(CH, values)


def tensor_power_bundle_direct(E: EquivariantBundle, l: int, CH: FiniteGroup) -> ClassFunction:
    """Character of CH = C_l x H on the sections of the external l-th power
    over X^l, by direct enumeration of fixed tuples (integer index tables
    keep the scan cheap; the enumeration itself stays exhaustive)."""
    import itertools

    if not E.is_genuine():
        raise ValueError("tensor powers need genuine fibers")
    X = E.gset
    points = list(X.points)
    pidx = {p: i for i, p in enumerate(points)}
    classes = CH.conjugacy_classes()
    values = []
    for rep in classes.representatives:
        sigma, h = split_product_element(CH, rep)
        cycles = sigma.cycles()
        hcol = [pidx[X.act(p, h)] for p in points]
        s = [sigma(j) - 1 for j in range(1, l + 1)]
        # per cycle length: trace of the structure map of h^m where defined
        trace_col = {}
        for cyc in cycles:
            m = len(cyc)
            if m not in trace_col:
                hm = h ** m
                trace_col[m] = [
                    E.fiber_trace(p, hm) if X.act(p, hm) == p else None for p in points
                ]
        acc = Cyclotomic.from_rational(0)
        rng = range(l)
        for tup in itertools.product(range(len(points)), repeat=l):
            if all(hcol[tup[s[j]]] == tup[j] for j in rng):
                v = Cyclotomic.from_rational(1)
                for cyc in cycles:
                    v = v * trace_col[len(cyc)][tup[cyc[0] - 1]]
                acc = acc + v
        values.append(acc)
    return ClassFunction(CH, values)


def internal_power_pushforward(E: EquivariantBundle, l: int, CH: FiniteGroup) -> ClassFunction:
    """Sections of the fiberwise l-th tensor power on X itself: the cyclic
    factor permutes the tensor factors of each fiber, H acts as before.
    This is the push-forward of the internal tensor power."""
    X = E.gset
    classes = CH.conjugacy_classes()
    values = []
    for rep in classes.representatives:
        sigma, h = split_product_element(CH, rep)
        cycles = sigma.cycles()
        acc = Cyclotomic.from_rational(0)
        for x in X.points:
            if X.act(x, h) == x:
                v = Cyclotomic.from_rational(1)
                for cyc in cycles:
                    v = v * E.fiber_trace(x, h ** len(cyc))
                acc = acc + v
        values.append(acc)
    return ClassFunction(CH, values)


def tensor_power_bundle_decomposed(
    E: EquivariantBundle, decomp: PowerDecomposition, CH: FiniteGroup
) -> tuple[ClassFunction, ClassFunction, ClassFunction]:
    """Tensor-power character through the certified decomposition of X^l:
    returns (total, diagonal part, free part).  The free part is supported
    on sigma = 1 (it is induced through the free cyclic direction); this is
    checked, not assumed."""
    if not E.is_genuine():
        raise ValueError("tensor powers need genuine fibers")
    l = decomp.l
    classes = CH.conjugacy_classes()
    diag_values = []
    free_values = []
    for rep in classes.representatives:
        sigma, h = split_product_element(CH, rep)
        cycles = sigma.cycles()
        # diagonal part: embedded points (x, ..., x)
        acc = Cyclotomic.from_rational(0)
        for x in decomp.base.points:
            if decomp.base.act(x, h) == x:
                v = Cyclotomic.from_rational(1)
                for cyc in cycles:
                    v = v * E.fiber_trace(x, h ** len(cyc))
                acc = acc + v
        diag_values.append(acc)
        # free part: labels fixed by (sigma, h), traced through the
        # bijection.  The label action always shifts the cyclic coordinate
        # by sigma, so no label is fixed unless sigma is the identity.
        accf = Cyclotomic.from_rational(0)
        if sigma.is_identity():
            # a label (i, m[, x]) is fixed by (1, h) iff h fixes m (and x)
            hinv = h.inverse()
            if decomp.mode == "principal":
                fixed_m = [
                    m for m in decomp.M if all(hinv * t * h == t for t in m)
                ]
                fixed_x = [x for x in decomp.base.points if decomp.base.act(x, h) == x]
                labels = [
                    (i, m, x)
                    for i in range(l)
                    for m in fixed_m
                    for x in fixed_x
                ]
            else:
                fixed_m = [
                    m
                    for m in decomp.M
                    if all(decomp.base.act(t, h) == t for t in m)
                ]
                labels = [(i, m) for i in range(l) for m in fixed_m]
            for label in labels:
                tup = decomp.embed_free[label]
                v = Cyclotomic.from_rational(1)
                for cyc in cycles:
                    j = cyc[0]
                    v = v * E.fiber_trace(tup[j - 1], h ** len(cyc))
                accf = accf + v
        free_values.append(accf)
    diag = ClassFunction(CH, diag_values)
    free = ClassFunction(CH, free_values)
    total = diag + free
    # the free part must be induced through the cyclic direction
    for rep, v in zip(classes.representatives, free.values):
        sigma, _ = split_product_element(CH, rep)
        if not sigma.is_identity() and v != 0:
            raise OracleDisagreement(
                "free part of the decomposition is not supported on sigma = 1"
            )
    return total, diag, free


def _embed_in_decomposition_group(rep, CH: FiniteGroup, decomp: PowerDecomposition):
    """Map an element of C_l x H into C_l x G (same cyclic part, inclusion
    on the second factor)."""
    sigma, h = split_product_element(CH, rep)
    return product_element(decomp.product_group, sigma, h)


# -- the push-forward congruence -------------------------------------------------


def regular_cyclic_class(CH: FiniteGroup, l: int) -> ClassFunction:
    """The class of the group algebra of the cyclic factor, viewed in
    R(C_l x H): value l at (1, h), zero off the cyclic identity."""
    classes = CH.conjugacy_classes()
    values = []
    for rep in classes.representatives:
        sigma, _ = split_product_element(CH, rep)
        values.append(l if sigma.is_identity() else 0)
    return ClassFunction(CH, values)


@dataclass
class CongruenceReport:
    group: FiniteGroup
    subgroup: FiniteGroup
    l: int
    mode: str
    passed: bool
    lhs: ClassFunction
    rhs: ClassFunction
    witness: ClassFunction
    decomposition_counts: tuple


def theorem_pushforward_congruence(
    G: FiniteGroup,
    l: int,
    mode: str,
    E_chooser=None,
    Gp: FiniteGroup | None = None,
    H: FiniteGroup | None = None,
    decomp: PowerDecomposition | None = None,
) -> CongruenceReport:
    """Tensor power commutes with the point push-forward modulo the ideal
    generated by the cyclic group algebra class, for free or coset models.

    Verifies, all exactly:
      1. the decomposition certificate (built fresh unless supplied);
      2. tau(sections(E)) equals the external-power sections (point
         Kuenneth equality);
      3. the decomposition route total equals the direct enumeration when
         |X|^l is small enough to scan (double entry);
      4. lhs - rhs equals the regular cyclic class times an explicit
         witness character, cross-checked by integer ideal membership.
    """
    if decomp is None:
        decomp = decompose_power_gset(G, l, mode, Gp)
    if H is None:
        H = G
    XH = restrict_gset(decomp.base, H)
    if E_chooser is None:
        E = trivial_bundle(XH)
    else:
        E = E_chooser(XH)
    CH = cyclic_product_group(l, H)

    W = sections_pushforward(E)
    lhs = tau_character(W, l, CH)

    total, diag, free = tensor_power_bundle_decomposed(E, decomp, CH)
    rhs = internal_power_pushforward(E, l, CH)
    if diag != rhs:
        raise OracleDisagreement("decomposition diagonal differs from the internal power")

    if len(decomp.base.points) ** l <= 100_000:
        direct = tensor_power_bundle_direct(E, l, CH)
        if direct != total:
            raise OracleDisagreement(
                "decomposition route and direct enumeration disagree"
            )
    if lhs != total:
        raise OracleDisagreement(
            "tensor power of the push-forward differs from the external sections"
        )

    # explicit witness from the free part: free = [O[C_l]] (x) witness
    classes = CH.conjugacy_classes()
    witness_values = []
    for rep, v in zip(classes.representatives, free.values):
        sigma, h = split_product_element(CH, rep)
        if sigma.is_identity():
            witness_values.append(v * Fraction(1, l))
        else:
            # value at (sigma, h) with sigma = 1 in the same h-class
            one_rep = product_element(CH, cyclic_group(l).identity, h)
            witness_values.append(
                free.value_at(one_rep) * Fraction(1, l)
            )
    witness = ClassFunction(CH, witness_values)
    decompose(witness)  # integrality of the witness
    reg = regular_cyclic_class(CH, l)
    if reg * witness != free:
        raise OracleDisagreement("free part is not a multiple of the cyclic class")
    if lhs - rhs != free:
        raise OracleDisagreement("difference of the two routes is not the free part")

    member, _ = ideal_membership(lhs - rhs, [reg], CharRing(CH))
    if not member:
        raise OracleDisagreement(
            "integer ideal membership disagrees with the explicit witness"
        )
    return CongruenceReport(
        group=G,
        subgroup=H,
        l=l,
        mode=mode,
        passed=True,
        lhs=lhs,
        rhs=rhs,
        witness=witness,
        decomposition_counts=decomp.counts(),
    )


def induction_adams_check(G: FiniteGroup, Gp: FiniteGroup, phi: ClassFunction, l: int) -> bool:
    """psi^l(Ind phi) == Ind(psi^l phi), exactly, for l prime to |G|."""
    if not is_prime(l):
        raise ValueError("l must be prime")
    if G.order % l == 0:
        raise ValueError(f"l = {l} divides |G| = {G.order}")
    emb = Embedding.inclusion(Gp, G)
    lhs = adams_psi_char(induce(phi, emb), l)
    rhs = induce(adams_psi_char(phi, l), emb)
    return lhs == rhs


# -- K1 of the cyclic group algebra ----------------------------------------------


@dataclass(frozen=True)
class K1Element:
    """Formal unit exponents, one per character of the cyclic group."""

    prime: int
    exponents: tuple

    def __mul__(self, other: "K1Element") -> "K1Element":
        if self.prime != other.prime:
            raise ValueError("mixed primes")
        return K1Element(
            self.prime, tuple(a + b for a, b in zip(self.exponents, other.exponents))
        )


def binomial_identity_check(l: int) -> bool:
    """The alternating weighted binomial sum evaluates to -1 exactly:
    sum_{i=1}^{l-1} (-1)^(l-i) (1/l) C(l,i) i == -1."""
    if not is_prime(l):
        raise ValueError("l must be prime")
    total = Fraction(0)
    for i in range(1, l):
        total += Fraction((-1) ** (l - i)) * Fraction(comb(l, i), l) * i
    return total == Fraction(-1)


def k1_tensor_power(l: int, beta_exponent: int = 1) -> K1Element:
    """Tensor power of a rank-one pair (line, unit) on the K1 level of the
    cyclic group algebra, through the reduced-pair route: expand the
    alternating induced-block sum, identify the interior blocks as free
    modules over the cyclic group algebra (verified by character
    arithmetic, not assumed), and collect determinant exponents per
    isotypic character.  The generic answer is (l-1, -1, ..., -1)."""
    if not is_prime(l):
        raise ValueError("l must be prime")
    if not binomial_identity_check(l):
        raise OracleDisagreement("binomial identity failed")
    Sl = symmetric_group(l)
    Cl = cyclic_group(l)
    emb_cyc = Embedding.inclusion(Cl, Sl)
    exponents = [Fraction(0)] * l
    for i in range(1, l):
        # block character: trivial on the first block, sign on the second
        P = young_subgroup(l, (i, l - i))
        classes = P.conjugacy_classes()
        vals = []
        for rep in classes.representatives:
            second = Permutation(tuple(rep(i + t) - i for t in range(1, l - i + 1)))
            vals.append(second.sign())
        block_char = ClassFunction(P, vals)
        induced = restrict(induce(block_char, Embedding.inclusion(P, Sl)), emb_cyc)
        expected_mult = Fraction(comb(l, i), l)
        if induced != regular_character(Cl) * expected_mult:
            raise OracleDisagreement(
                "interior induced block is not free over the cyclic group algebra"
            )
        # determinant of the unit acting as beta^i on a free module of that
        # multiplicity: exponent i on every isotypic character
        for j in range(l):
            exponents[j] += Fraction((-1) ** (l - i)) * expected_mult * i
    # the full-power block contributes beta^l on the trivial character; the
    # all-sign block carries the identity unit and contributes nothing
    exponents[0] += l
    out = []
    for e in exponents:
        if e.denominator != 1:
            raise OracleDisagreement("non-integral determinant exponent")
        out.append(int(e) * beta_exponent)
    result = K1Element(l, tuple(out))
    expected = (l - 1,) + (-1,) * (l - 1)
    if beta_exponent == 1 and result.exponents != expected:
        raise OracleDisagreement("tensor power exponents differ from the closed form")
    return result
