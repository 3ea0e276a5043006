"""Graded polynomial algebras and degreewise exact linear algebra: Koszul
homology tables, the diagonal conormal module with its symmetric-group
structure, invariant-section generation certificates, and surjectivity of
the cyclic difference maps onto the diagonal ideal.

All computations are bounded-degree; every certificate states the bound it
was verified at.  Generation certificates are decided by monomial
containment at a single deep multidegree (full rank mod a large prime
soundly implies full rank over the rationals); the difference-map images are
spanned by differences of monomials, so their ranks are exact partition
counts (union-find), cross-checked against dense elimination in the tests.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .groups import Permutation, symmetric_group
from .linalg import (
    CERT_PRIME,
    UnionFind,
    mat_rank,
    nullspace,
    sparse_rank_mod_p,
    trace_on_subspace,
)
from .polynomials import Poly, monomials_of_degree, monomials_of_multidegree


# -- graded algebras -------------------------------------------------------------


class GradedAlgebra:
    """Polynomial algebra with weighted variables and deterministic
    graded-lex monomial bases per degree (computed on demand)."""

    def __init__(self, nvars: int, degrees=None):
        self.nvars = nvars
        self.degrees = tuple(degrees) if degrees else (1,) * nvars
        self._bases: dict[int, list] = {}

    def monomials(self, d: int) -> list[tuple]:
        if d not in self._bases:
            if set(self.degrees) == {1}:
                self._bases[d] = list(monomials_of_degree(self.nvars, d))
            else:
                out = []

                def rec(i, remaining, acc):
                    if i == self.nvars:
                        if remaining == 0:
                            out.append(tuple(acc))
                        return
                    w = self.degrees[i]
                    for e in range(remaining // w, -1, -1):
                        rec(i + 1, remaining - e * w, acc + [e])

                rec(0, d, [])
                self._bases[d] = out
        return self._bases[d]

    def dim(self, d: int) -> int:
        return len(self.monomials(d))


def poly_to_vector(p: Poly, basis: list[tuple]):
    index = {m: i for i, m in enumerate(basis)}
    vec = [Fraction(0)] * len(basis)
    for e, c in p.terms.items():
        vec[index[e]] += c
    return vec


# -- Koszul homology ---------------------------------------------------------------


def koszul_homology_dimensions(nvars: int, shifts, images, D: int):
    """Homology dimensions of the Koszul complex of a graded map from a
    free module with the given shifts onto the span of the given
    homogeneous polynomials.

    Returns {(i, d): dim H_i in internal degree d} for 0 <= i <= rank,
    0 <= d <= D.  Reports (raises) if a requested image degree exceeds the
    bound rather than silently truncating a comparison.
    """
    r = len(shifts)
    if len(images) != r:
        raise ValueError("one image polynomial per free generator")
    A = GradedAlgebra(nvars)
    for s, f in zip(shifts, images):
        if f and (not f.is_homogeneous() or (f.total_degree() != s and f != 0)):
            if f.total_degree() != s:
                raise ValueError("image degree must equal the generator shift")

    subsets = {i: list(itertools.combinations(range(r), i)) for i in range(r + 1)}

    def component_basis(i: int, d: int):
        out = []
        for S in subsets[i]:
            s = sum(shifts[a] for a in S)
            if d - s < 0:
                continue
            for m in A.monomials(d - s):
                out.append((S, m))
        return out

    def differential_matrix(i: int, d: int):
        """Matrix of d_i: (Lambda^i F)_d -> (Lambda^(i-1) F)_d."""
        src = component_basis(i, d)
        dst = component_basis(i - 1, d)
        dst_index = {b: k for k, b in enumerate(dst)}
        cols = []
        for S, m in src:
            vec = [Fraction(0)] * len(dst)
            mono = Poly.monomial(nvars, m)
            for pos, a in enumerate(S):
                Snew = tuple(x for x in S if x != a)
                img = images[a] * mono
                for e, c in img.terms.items():
                    key = (Snew, e)
                    vec[dst_index[key]] += c * ((-1) ** pos)
            cols.append(vec)
        # rows = dst, cols = src
        return [[cols[c][rr] for c in range(len(cols))] for rr in range(len(dst))], len(src), len(dst)

    table = {}
    for d in range(D + 1):
        ranks = {}
        dims = {}
        for i in range(r + 2):
            if i <= r:
                dims[i] = len(component_basis(i, d))
            if 1 <= i <= r:
                mat, nsrc, ndst = differential_matrix(i, d)
                ranks[i] = mat_rank(mat) if mat and nsrc else 0
            else:
                ranks.setdefault(i, 0)
        for i in range(r + 1):
            ker = dims[i] - ranks.get(i, 0)
            im = ranks.get(i + 1, 0)
            table[(i, d)] = ker - im
    return table


def wedge_homotopy_check(l: int) -> bool:
    """Exactness certificate for the complex built from wedging with the
    invariant sum of the standard basis: the projection-based contracting
    homotopy satisfies hd + dh = id in every exterior degree."""
    # basis of Lambda^i: sorted tuples from {1..l}
    def wedge_with_N(S):
        out = {}
        for a in range(1, l + 1):
            if a in S:
                continue
            pos = sum(1 for x in S if x < a)
            T = tuple(sorted(S + (a,)))
            out[T] = out.get(T, 0) + (-1) ** pos
        return out

    def homotopy(S):
        if 1 in S:
            return {tuple(x for x in S if x != 1): 1}
        return {}

    for i in range(l + 1):
        basis = list(itertools.combinations(range(1, l + 1), i))
        for S in basis:
            acc = {}
            # h(d(S)) with d = N wedge -
            for T, c in wedge_with_N(S).items():
                for U, c2 in homotopy(T).items():
                    acc[U] = acc.get(U, 0) + c * c2
            # d(h(S))
            for T, c in homotopy(S).items():
                for U, c2 in wedge_with_N(T).items():
                    acc[U] = acc.get(U, 0) + c * c2
            acc = {k: v for k, v in acc.items() if v}
            if acc != {S: 1}:
                return False
    return True


# -- tensor-power slot algebra -----------------------------------------------------


class SlotAlgebra:
    """The l-fold tensor power of a polynomial algebra in n variables:
    a polynomial ring in l*n variables grouped in slots, with the
    symmetric group permuting slots and the multiplication map to the
    single-slot algebra."""

    def __init__(self, n: int, l: int):
        self.n = n
        self.l = l
        self.nvars = n * l

    def var(self, slot: int, i: int) -> int:
        return slot * self.n + i

    def slot_permute_exponents(self, e: tuple, sigma: Permutation) -> tuple:
        out = [0] * self.nvars
        for slot in range(self.l):
            target = sigma(slot + 1) - 1
            for i in range(self.n):
                out[self.var(target, i)] = e[self.var(slot, i)]
        return tuple(out)

    def mu_exponents(self, e: tuple) -> tuple:
        """Image exponent vector under the multiplication map."""
        out = [0] * self.n
        for slot in range(self.l):
            for i in range(self.n):
                out[i] += e[self.var(slot, i)]
        return tuple(out)

    def monomials_total(self, d: int) -> list[tuple]:
        return list(monomials_of_degree(self.nvars, d))

    def monomials_slotwise(self, per_slot_degree: int) -> list[tuple]:
        return list(
            monomials_of_multidegree([self.n] * self.l, [per_slot_degree] * self.l)
        )


@dataclass
class ConormalReport:
    n: int
    l: int
    degree_results: dict = field(default_factory=dict)  # d -> (matches, computed, expected)
    alpha_equivariant: bool = True

    @property
    def all_match(self) -> bool:
        return self.alpha_equivariant and all(
            m for m, _, _ in self.degree_results.values()
        )


def diagonal_conormal(n: int, l: int, D: int) -> ConormalReport:
    """Compare the symmetric-group character of each graded piece of
    I/I^2, for I the kernel of the multiplication map on the l-fold slot
    algebra, against the character of (differentials) (x) (summation
    kernel): per degree d the expected trace of sigma is
    n * dim B_(d-1) * (fix(sigma) - 1)."""
    report = ConormalReport(n=n, l=l)
    if l == 1:
        for d in range(D + 1):
            report.degree_results[d] = (True, [0], [0])
        return report
    T = SlotAlgebra(n, l)
    B = GradedAlgebra(n)
    G = symmetric_group(l)
    classes = G.conjugacy_classes()

    # alpha on generators: sigma . (y_{i,j} - y_{i+1,j}) == y_{sigma(i),j} - y_{sigma(i+1),j}
    for sigma in G.generators or [G.identity]:
        for i in range(1, l):
            for j in range(n):
                e_a = [0] * T.nvars
                e_a[T.var(i - 1, j)] = 1
                e_b = [0] * T.nvars
                e_b[T.var(i, j)] = 1
                lhs = Poly(T.nvars, {T.slot_permute_exponents(tuple(e_a), sigma): 1}) - Poly(
                    T.nvars, {T.slot_permute_exponents(tuple(e_b), sigma): 1}
                )
                e_c = [0] * T.nvars
                e_c[T.var(sigma(i) - 1, j)] = 1
                e_d = [0] * T.nvars
                e_d[T.var(sigma(i + 1) - 1, j)] = 1
                rhs = Poly(T.nvars, {tuple(e_c): 1}) - Poly(T.nvars, {tuple(e_d): 1})
                if lhs != rhs:
                    report.alpha_equivariant = False

    ideal_bases: dict[int, list] = {}

    def ideal_basis(d: int):
        if d not in ideal_bases:
            basis = T.monomials_total(d)
            rows = []
            bd = B.monomials(d)
            bidx = {m: i for i, m in enumerate(bd)}
            for ri in range(len(bd)):
                rows.append([Fraction(0)] * len(basis))
            for ci, e in enumerate(basis):
                rows[bidx[T.mu_exponents(e)]][ci] = Fraction(1)
            ideal_bases[d] = nullspace(rows, ncols=len(basis))
        return ideal_bases[d]

    for d in range(D + 1):
        basis = T.monomials_total(d)
        I_d = ideal_basis(d)
        # (I^2)_d: spans of products of lower ideal pieces
        prods = []
        for d1 in range(1, d):
            d2 = d - d1
            if d1 > d2:
                break
            basis1 = T.monomials_total(d1)
            basis2 = T.monomials_total(d2)
            bindex = {m: i for i, m in enumerate(basis)}
            for v1 in ideal_basis(d1):
                p1 = {m: c for m, c in zip(basis1, v1) if c}
                for v2 in ideal_basis(d2):
                    vec = [Fraction(0)] * len(basis)
                    for m1, c1 in p1.items():
                        for m2, c2 in zip(basis2, v2):
                            if c2:
                                key = tuple(a + b for a, b in zip(m1, m2))
                                vec[bindex[key]] += c1 * c2
                    prods.append(vec)
        # reduce the product span to an independent basis
        if prods:
            from .linalg import rref

            red, pivots = rref(prods)
            I2_basis = [red[i] for i in range(len(pivots))]
        else:
            I2_basis = []

        computed = []
        expected = []
        for rep in classes.representatives:
            mat = [[Fraction(0)] * len(basis) for _ in range(len(basis))]
            for ci, e in enumerate(basis):
                target = T.slot_permute_exponents(e, rep)
                mat[basis.index(target)][ci] = Fraction(1)
            tr_I = trace_on_subspace(mat, I_d) if I_d else Fraction(0)
            tr_I2 = trace_on_subspace(mat, I2_basis) if I2_basis else Fraction(0)
            computed.append(tr_I - tr_I2)
            fix = sum(1 for i in range(1, l + 1) if rep(i) == i)
            expected.append(Fraction(n * B.dim(d - 1) * (fix - 1)) if d >= 1 else Fraction(0))
        report.degree_results[d] = (computed == expected, computed, expected)
    return report


# -- invariant sections and generation certificates ----------------------------------


@dataclass
class SectionCertificate:
    r: int
    l: int
    sections: list
    certified_N: int | None
    failing_monomial: tuple | None = None

    @property
    def generated(self) -> bool:
        return self.certified_N is not None


def _symmetrize_labels(T: SlotAlgebra, labels: tuple) -> Poly:
    """Sum of the distinct slot arrangements of the label tuple: the
    orbit-sum of x_(labels[0]) (x) ... (x) x_(labels[l-1])."""
    terms = {}
    for arrangement in set(itertools.permutations(labels)):
        e = [0] * T.nvars
        for slot, lab in enumerate(arrangement):
            e[T.var(slot, lab)] += 1
        terms[tuple(e)] = 1
    return Poly(T.nvars, terms)


def invariant_sections_generate(r: int, l: int, N_bound: int = 4) -> SectionCertificate:
    """Run the greedy covering construction over all vanishing patterns of
    the coordinate sections to produce invariant sections of the l-fold
    external power of the tautological line, then certify generation by
    monomial containment at multidegree (N, ..., N) for the smallest
    working N <= N_bound."""
    n = r + 1
    T = SlotAlgebra(n, l)
    proper_subsets = [
        frozenset(s)
        for size in range(n)
        for s in itertools.combinations(range(n), size)
    ]
    sections = []
    seen = set()
    for pattern in itertools.product(proper_subsets, repeat=l):
        covered: set[int] = set()
        labels = [None] * l
        while len(covered) < l:
            chosen = None
            for k in range(n):
                hits = [i for i in range(l) if i not in covered and k not in pattern[i]]
                if hits:
                    chosen = (k, hits)
                    break
            if chosen is None:  # impossible for proper vanishing sets
                raise AssertionError("no section hits an uncovered slot")
            k, hits = chosen
            for i in hits:
                labels[i] = k
            covered.update(hits)
        sec = _symmetrize_labels(T, tuple(labels))
        key = frozenset(sec.terms.items())
        if key not in seen:
            seen.add(key)
            sections.append(sec)

    # invariance check: every slot transposition fixes every section
    G = symmetric_group(l)
    for sec in sections:
        for sigma in G.generators or [G.identity]:
            permuted_terms = {
                T.slot_permute_exponents(e, sigma): c for e, c in sec.terms.items()
            }
            if Poly(T.nvars, permuted_terms) != sec:
                raise AssertionError("constructed section is not invariant")

    last_missing = None
    for N in range(1, N_bound + 1):
        targets = T.monomials_slotwise(N)
        tindex = {m: i for i, m in enumerate(targets)}
        columns = []
        for sec in sections:
            for mult in T.monomials_slotwise(N - 1):
                col = {}
                for e, c in sec.terms.items():
                    key = tuple(a + b for a, b in zip(e, mult))
                    col[tindex[key]] = col.get(tindex[key], 0) + int(c)
                columns.append(col)
        rank = sparse_rank_mod_p(columns, CERT_PRIME)
        if rank == len(targets):
            return SectionCertificate(r=r, l=l, sections=sections, certified_N=N)
        last_missing = targets[0]
    return SectionCertificate(
        r=r, l=l, sections=sections, certified_N=None, failing_monomial=last_missing
    )


# -- surjectivity of the difference maps onto the diagonal ideal ---------------------


@dataclass
class SurjectivityReport:
    mode: str
    l: int
    D: int
    cokernel_dims: dict  # degree -> dim coker
    equivariant: bool

    @property
    def surjective(self) -> bool:
        return self.equivariant and all(v == 0 for v in self.cokernel_dims.values())

    @property
    def surjective_from(self) -> int | None:
        """Smallest degree threshold k0 <= D with zero cokernel in every
        degree k0..D (the bounded-degree form of sheaf surjectivity, which
        only constrains all sufficiently deep twists); None if even the top
        degree fails."""
        if not self.equivariant:
            return None
        k0 = None
        for k in sorted(self.cokernel_dims):
            if self.cokernel_dims[k] == 0:
                if k0 is None:
                    k0 = k
            else:
                k0 = None
        return k0


def _projective_generators(T: SlotAlgebra, r: int, l: int):
    """Monomial pairs (m1, m2) with m1 - m2 the image of a kernel-basis
    vector under one of the coordinate-tuple maps: rotations of pure
    tensors of coordinates."""
    n = r + 1
    gens = []
    cycle = Permutation.from_cycles(l, [tuple(range(1, l + 1))]) if l > 1 else Permutation.identity(1)
    for j in itertools.product(range(n), repeat=l):
        base = [0] * T.nvars
        for slot, lab in enumerate(j):
            base[T.var(slot, lab)] += 1
        rotations = []
        e = tuple(base)
        for _ in range(l):
            rotations.append(e)
            e = T.slot_permute_exponents(e, cycle)
        for i in range(l - 1):
            gens.append((rotations[i], rotations[i + 1]))
    return gens


def _cycle_power(sigma: Permutation, l: int) -> int:
    """k with sigma the k-th power of the standard long cycle."""
    return (sigma(1) - 1) % l


def _affine_generators(T: SlotAlgebra, n: int, l: int):
    gens = []
    for j in range(n):
        for i in range(l - 1):
            e1 = [0] * T.nvars
            e1[T.var(i, j)] = 1
            e2 = [0] * T.nvars
            e2[T.var(i + 1, j)] = 1
            gens.append((tuple(e1), tuple(e2)))
    return gens


def _check_map_equivariance(T: SlotAlgebra, basis_images, group_elems, index_action) -> bool:
    """Each assembled map sends [a] to the monomial basis_images[a-1]; it is
    equivariant iff permuting slots of the image matches the image of the
    permuted index, for every group element."""
    for sigma in group_elems:
        for a, img in enumerate(basis_images, start=1):
            lhs = T.slot_permute_exponents(img, sigma)
            rhs = basis_images[index_action(sigma, a) - 1]
            if lhs != rhs:
                return False
    return True


def alpha_surjective(l: int, D: int, mode: str, r: int | None = None, n: int | None = None) -> SurjectivityReport:
    """Degreewise surjectivity of the assembled difference maps onto the
    diagonal ideal, by exact partition-rank comparison.

    projective mode: coordinates x_0..x_r, generators are consecutive
    cyclic rotations of coordinate tensors, target is the ideal twisted
    into multidegree (k, ..., k), k <= D.  affine mode: algebra generators
    x_1..x_n placed in single slots, target is the ideal in total degree
    d <= D.  A failed degree is reported in the cokernel table, not raised.
    """
    if mode == "projective":
        if r is None:
            raise ValueError("projective mode needs the coordinate count r")
        nv = r + 1
        T = SlotAlgebra(nv, l)
        gens = _projective_generators(T, r, l)
        cycle = (
            Permutation.from_cycles(l, [tuple(range(1, l + 1))])
            if l > 1
            else Permutation.identity(1)
        )
        # each coordinate-tuple map [a] -> a-th rotation must intertwine the
        # cyclic slot action with the index shift
        equivariant = True
        for j in itertools.product(range(nv), repeat=l):
            base = [0] * T.nvars
            for slot, lab in enumerate(j):
                base[T.var(slot, lab)] += 1
            rotations = []
            e = tuple(base)
            for _ in range(l):
                rotations.append(e)
                e = T.slot_permute_exponents(e, cycle)
            cyc_elems = [cycle ** k for k in range(l)]
            if not _check_map_equivariance(
                T,
                rotations,
                cyc_elems,
                lambda sigma, a: ((a - 1 + _cycle_power(sigma, l)) % l) + 1,
            ):
                equivariant = False
        degrees = range(1, D + 1)

        def target_monomials(k):
            return T.monomials_slotwise(k)

        def multipliers(k):
            return T.monomials_slotwise(k - 1)

    elif mode == "affine":
        if n is None:
            raise ValueError("affine mode needs the variable count n")
        T = SlotAlgebra(n, l)
        gens = _affine_generators(T, n, l)
        sym = symmetric_group(l)
        equivariant = True
        for j in range(n):
            images = []
            for a in range(l):
                e = [0] * T.nvars
                e[T.var(a, j)] = 1
                images.append(tuple(e))
            if not _check_map_equivariance(
                T, images, list(sym.elements), lambda sigma, a: sigma(a)
            ):
                equivariant = False
        degrees = range(1, D + 1)

        def target_monomials(k):
            return T.monomials_total(k)

        def multipliers(k):
            return T.monomials_total(k - 1)

    else:
        raise ValueError(f"unknown mode {mode!r}")

    coker = {}
    for k in degrees:
        targets = target_monomials(k)
        uf = UnionFind()
        for m in targets:
            uf.find(m)
        for mult in multipliers(k):
            for a, b in gens:
                ma = tuple(x + y for x, y in zip(a, mult))
                mb = tuple(x + y for x, y in zip(b, mult))
                uf.union(ma, mb)
        components = uf.components()
        fibers = len({T.mu_exponents(m) for m in targets})
        coker[k] = components - fibers
    return SurjectivityReport(
        mode=mode, l=l, D=D, cokernel_dims=coker, equivariant=equivariant
    )
