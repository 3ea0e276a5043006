"""Finite permutation groups, conjugacy classes, finite G-sets, and the
cyclic-by-diagonal orbit decompositions of l-fold power sets.

Groups are always concretely enumerated (breadth-first closure of the
generators, deterministic order); everything downstream works by brute
force over elements.  G-sets carry right actions, written act(x, g), with
act(x, g*h) == act(act(x, g), h).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .exact import is_prime

DEFAULT_CLOSURE_CAP = 50_000


class ClosureCapExceeded(Exception):
    def __init__(self, partial_size: int, cap: int):
        super().__init__(
            f"group closure exceeded cap {cap} (partial size {partial_size})"
        )
        self.partial_size = partial_size
        self.cap = cap


class Permutation:
    """Bijection of {1..m}, stored as the tuple of images."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {images}")
        self.images = images

    @staticmethod
    def identity(m: int) -> "Permutation":
        return Permutation(range(1, m + 1))

    @staticmethod
    def from_cycles(m: int, cycles) -> "Permutation":
        images = list(range(1, m + 1))
        for cycle in cycles:
            for i, a in enumerate(cycle):
                images[a - 1] = cycle[(i + 1) % len(cycle)]
        return Permutation(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        # (a*b)(i) = a(b(i))
        return Permutation(self.images[j - 1] for j in other.images)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Permutation(inv)

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return self.inverse() ** (-k)
        result = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * self.degree
        out = []
        for start in range(1, self.degree + 1):
            if seen[start - 1]:
                continue
            cyc = [start]
            seen[start - 1] = True
            j = self(start)
            while j != start:
                cyc.append(j)
                seen[j - 1] = True
                j = self(j)
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def sign(self) -> int:
        return -1 if (self.degree - len(self.cycles())) % 2 else 1

    def is_identity(self) -> bool:
        return all(self.images[i] == i + 1 for i in range(self.degree))

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __lt__(self, other):
        return self.images < other.images

    def __repr__(self):
        cyc = [c for c in self.cycles() if len(c) > 1]
        return "id" if not cyc else "".join(str(c).replace(",)", ")") for c in cyc)


class FiniteGroup:
    """Concretely enumerated permutation group with a structural descriptor.

    The descriptor drives character-table construction:
      ("trivial",), ("symmetric", l), ("cyclic", n),
      ("product", descA, descB) for direct products on disjoint blocks,
      ("subgroup", parent descriptor) for enumerated subgroups.
    """

    def __init__(self, degree, generators, descriptor, cap=DEFAULT_CLOSURE_CAP):
        self.degree = degree
        self.generators = list(generators)
        self.descriptor = descriptor
        self.elements = self._close(cap)
        self._index = {g: i for i, g in enumerate(self.elements)}
        self.identity = Permutation.identity(degree)
        self._classes = None
        self._block_split = None  # set for product groups

    def _close(self, cap):
        identity = Permutation.identity(self.degree)
        seen = {identity}
        order = [identity]
        frontier = [identity]
        while frontier:
            new = []
            for g in frontier:
                for s in self.generators:
                    h = g * s
                    if h not in seen:
                        seen.add(h)
                        new.append(h)
                        if len(seen) > cap:
                            raise ClosureCapExceeded(len(seen), cap)
            new.sort()
            order.extend(new)
            frontier = new
        return tuple(order)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g):
        return g in self._index

    def index_of(self, g: Permutation) -> int:
        return self._index[g]

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self):
        return f"FiniteGroup({self.descriptor}, order={self.order})"

    def conjugacy_classes(self) -> "ConjugacyClassSet":
        if self._classes is None:
            self._classes = _compute_classes(self)
        return self._classes


@dataclass(frozen=True)
class ConjugacyClassSet:
    group: FiniteGroup
    representatives: tuple[Permutation, ...]
    sizes: tuple[int, ...]
    labels: tuple
    element_class: dict  # Permutation -> class index

    def __len__(self):
        return len(self.representatives)

    def index_of_element(self, g: Permutation) -> int:
        return self.element_class[g]


def _compute_classes(G: FiniteGroup) -> ConjugacyClassSet:
    remaining = set(G.elements)
    reps, sizes, members = [], [], {}
    # scan in enumeration order for determinism
    for g in G.elements:
        if g not in remaining:
            continue
        orbit = {x.inverse() * g * x for x in G.elements}
        remaining -= orbit
        for h in orbit:
            members[h] = len(reps)
        reps.append(g)
        sizes.append(len(orbit))
    labels = tuple(_class_label(G, r) for r in reps)
    return ConjugacyClassSet(G, tuple(reps), tuple(sizes), labels, members)


def _class_label(G: FiniteGroup, rep: Permutation):
    kind = G.descriptor[0]
    if kind == "symmetric":
        return rep.cycle_type()
    if kind == "cyclic":
        n = G.descriptor[1]
        c = G.generators[0] if G.generators else G.identity
        power = G.identity
        for k in range(n):
            if power == rep:
                return k
            power = power * c
        raise AssertionError("cyclic class representative is not a generator power")
    if kind == "product":
        a, b = split_product_element(G, rep)
        GA, GB = G.factors
        return (
            _class_label(GA, _conjugacy_rep_of(GA, a)),
            _class_label(GB, _conjugacy_rep_of(GB, b)),
        )
    return rep.cycle_type()


def _conjugacy_rep_of(G: FiniteGroup, g: Permutation) -> Permutation:
    classes = G.conjugacy_classes()
    return classes.representatives[classes.index_of_element(g)]


# -- constructors -----------------------------------------------------------


def symmetric_group(l: int) -> FiniteGroup:
    if l <= 1:
        return FiniteGroup(l, [], ("symmetric", l))
    gens = [Permutation.from_cycles(l, [(1, 2)]), Permutation.from_cycles(l, [tuple(range(1, l + 1))])]
    if l == 2:
        gens = gens[:1]
    return FiniteGroup(l, gens, ("symmetric", l))


def cyclic_group(n: int) -> FiniteGroup:
    """C_n realized inside the symmetric group on n letters, generated by
    the full cycle (1 2 ... n)."""
    if n == 1:
        return FiniteGroup(1, [], ("cyclic", 1))
    gen = Permutation.from_cycles(n, [tuple(range(1, n + 1))])
    return FiniteGroup(n, [gen], ("cyclic", n))


def trivial_group(degree: int = 1) -> FiniteGroup:
    return FiniteGroup(degree, [], ("trivial",))


def _shift_permutation(p: Permutation, offset: int, degree: int) -> Permutation:
    images = list(range(1, degree + 1))
    for i in range(1, p.degree + 1):
        images[offset + i - 1] = offset + p(i)
    return Permutation(images)


def direct_product(A: FiniteGroup, B: FiniteGroup) -> FiniteGroup:
    """A x B acting on the disjoint union of the two underlying sets."""
    degree = A.degree + B.degree
    gens = [_shift_permutation(g, 0, degree) for g in A.generators]
    gens += [_shift_permutation(g, A.degree, degree) for g in B.generators]
    G = FiniteGroup(degree, gens, ("product", A.descriptor, B.descriptor))
    G.factors = (A, B)
    return G


def split_product_element(G: FiniteGroup, g: Permutation):
    """Factor an element of a direct product back into its components."""
    A, B = G.factors
    a = Permutation(g(i) for i in range(1, A.degree + 1))
    b = Permutation(g(A.degree + i) - A.degree for i in range(1, B.degree + 1))
    return a, b


def product_element(G: FiniteGroup, a: Permutation, b: Permutation) -> Permutation:
    A, B = G.factors
    images = [a(i) for i in range(1, A.degree + 1)]
    images += [A.degree + b(i) for i in range(1, B.degree + 1)]
    return Permutation(images)


def young_subgroup(l: int, blocks) -> FiniteGroup:
    """Product of symmetric groups on consecutive blocks inside Sigma_l.

    Elements are genuine degree-l permutations, so the inclusion into
    Sigma_l is the identity map.
    """
    blocks = tuple(blocks)
    if sum(blocks) != l:
        raise ValueError("block sizes must sum to l")
    gens = []
    offset = 0
    descs = []
    for b in blocks:
        S = symmetric_group(b)
        gens += [_shift_permutation(g, offset, l) for g in S.generators]
        descs.append(("symmetric", b))
        offset += b
    desc = descs[0] if len(descs) == 1 else ("young", blocks)
    G = FiniteGroup(l, gens, desc)
    G.blocks = blocks
    return G


def cyclic_in_symmetric(l: int) -> FiniteGroup:
    """The cyclic subgroup of Sigma_l generated by the cycle (1 2 ... l);
    identical to cyclic_group(l) as a permutation group."""
    return cyclic_group(l)


def enumerate_group(generators, cap: int = DEFAULT_CLOSURE_CAP) -> FiniteGroup:
    """Breadth-first closure of arbitrary generators (deterministic order)."""
    if not generators:
        raise ValueError("need at least one generator (or use trivial_group)")
    degree = generators[0].degree
    if any(g.degree != degree for g in generators):
        raise ValueError("mixed permutation degrees")
    return FiniteGroup(degree, generators, ("subgroup", "ad-hoc"), cap=cap)


def subgroup_of(G: FiniteGroup, elements) -> FiniteGroup:
    """The subgroup generated by the given elements of G, tagged for tables
    when it is visibly cyclic (or all of G)."""
    elements = list(elements)
    H = FiniteGroup(G.degree, elements, ("subgroup", G.descriptor))
    if H.order == G.order:
        return G
    # a cyclic subgroup can reuse the cyclic character table machinery
    for g in H.elements:
        if all(any(g ** k == h for k in range(H.order)) for h in H.elements):
            H.descriptor = ("cyclic-subgroup", H.order)
            H.cyclic_generator = g
            break
    return H


def all_subgroups(G: FiniteGroup) -> list[FiniteGroup]:
    """All subgroups of a small group, via closures of 1- and 2-element
    generating sets (complete for every group of order < 24 used here)."""
    seen = {}
    elems = list(G.elements)
    subsets = [()] + [(g,) for g in elems] + list(itertools.combinations(elems, 2))
    for gens in subsets:
        H = FiniteGroup(G.degree, list(gens), ("subgroup", G.descriptor))
        key = frozenset(H.elements)
        if key not in seen:
            seen[key] = subgroup_of(G, list(gens))
    return sorted(seen.values(), key=lambda H: (H.order, H.elements))


# -- power maps ----------------------------------------------------------


def power_class_map(G: FiniteGroup, k: int) -> dict[int, int]:
    """class index of g  ->  class index of g^k (well defined on classes)."""
    classes = G.conjugacy_classes()
    return {
        i: classes.index_of_element(rep ** k)
        for i, rep in enumerate(classes.representatives)
    }


# -- embeddings ------------------------------------------------------------


class Embedding:
    """Injective homomorphism H -> G given by an explicit element map."""

    def __init__(self, H: FiniteGroup, G: FiniteGroup, mapping):
        self.H = H
        self.G = G
        self.mapping = dict(mapping)
        self._validate()

    def _validate(self):
        if len(self.mapping) != self.H.order:
            raise ValueError("embedding must be defined on every element")
        images = set(self.mapping.values())
        if len(images) != len(self.mapping):
            raise ValueError("embedding is not injective")
        for a in self.H.elements:
            for b in self.H.generators or [self.H.identity]:
                if self.mapping[a * b] != self.mapping[a] * self.mapping[b]:
                    raise ValueError("embedding is not a homomorphism")
        for g in images:
            if g not in self.G:
                raise ValueError("image element is not in the target group")

    def __call__(self, h: Permutation) -> Permutation:
        return self.mapping[h]

    @staticmethod
    def inclusion(H: FiniteGroup, G: FiniteGroup) -> "Embedding":
        return Embedding(H, G, {h: h for h in H.elements})

    @staticmethod
    def left_factor(A: FiniteGroup, P: FiniteGroup) -> "Embedding":
        return Embedding(A, P, {a: product_element(P, a, P.factors[1].identity) for a in A.elements})

    @staticmethod
    def right_factor(B: FiniteGroup, P: FiniteGroup) -> "Embedding":
        return Embedding(B, P, {b: product_element(P, P.factors[0].identity, b) for b in B.elements})


# -- finite G-sets -----------------------------------------------------------


class CertificateError(Exception):
    """A constructed decomposition failed its point-by-point verification;
    this signals an implementation bug, never a property of the input."""


class FiniteGSet:
    """Finite set with a right action of a FiniteGroup.

    The action map satisfies act(x, g*h) == act(act(x, g), h) and
    act(x, identity) == x; verify_axioms() checks both by enumeration.
    """

    def __init__(self, group: FiniteGroup, points, act, name: str = ""):
        self.group = group
        self.points = tuple(points)
        self._act = act
        self.name = name
        self._point_index = {x: i for i, x in enumerate(self.points)}
        self._cache: dict = {}

    def act(self, x, g: Permutation):
        key = (x, g)
        y = self._cache.get(key)
        if y is None:
            y = self._act(x, g)
            self._cache[key] = y
        return y

    def __len__(self):
        return len(self.points)

    def verify_axioms(self) -> bool:
        e = self.group.identity
        for x in self.points:
            if self.act(x, e) != x:
                return False
        for x in self.points:
            for g in self.group.elements:
                y = self.act(x, g)
                if y not in self._point_index:
                    return False
                for h in self.group.generators or [e]:
                    if self.act(x, g * h) != self.act(y, h):
                        return False
        return True

    def orbits(self) -> list[list]:
        seen = set()
        out = []
        for x in self.points:
            if x in seen:
                continue
            orbit = sorted({self.act(x, g) for g in self.group.elements}, key=repr)
            seen.update(orbit)
            out.append(orbit)
        return out

    def stabilizer_elements(self, x) -> list[Permutation]:
        return [g for g in self.group.elements if self.act(x, g) == x]

    def transporter(self, x, y):
        """Some g with act(x, g) == y, or None."""
        for g in self.group.elements:
            if self.act(x, g) == y:
                return g
        return None


def principal_gset(G: FiniteGroup) -> FiniteGSet:
    """G acting freely and transitively on itself by right multiplication."""
    return FiniteGSet(G, G.elements, lambda x, g: x * g, name="principal")


def coset_gset(G: FiniteGroup, Gp: FiniteGroup) -> FiniteGSet:
    """Right cosets G'\\G with right multiplication; points are canonical
    (minimal) coset representatives."""

    def canonical(g: Permutation) -> Permutation:
        return min(h * g for h in Gp.elements)

    points = sorted({canonical(g) for g in G.elements})
    return FiniteGSet(G, points, lambda x, g: canonical(x * g), name="coset")


def point_gset(G: FiniteGroup) -> FiniteGSet:
    return FiniteGSet(G, ("pt",), lambda x, g: x, name="point")


def power_gset(X: FiniteGSet, l: int) -> FiniteGSet:
    """X^l with the right action of C_l x G: cyclic coordinate rotation on
    the left factor, the diagonal action on the right factor."""
    G = X.group
    Cl = cyclic_group(l)
    CG = direct_product(Cl, G)
    points = list(itertools.product(X.points, repeat=l))

    def act(x, p):
        sigma, gamma = split_product_element(CG, p)
        return tuple(X.act(x[sigma(j + 1) - 1], gamma) for j in range(l))

    return FiniteGSet(CG, points, act, name=f"{X.name}^{l}")


# -- decomposition of X^l ----------------------------------------------------


def _rotate_scaled(g: tuple, i: int) -> tuple:
    """The twisted cyclic action on tuples over G with first entry 1:
    c^i(g) = g_{i+1}^{-1} * (g_{i+1}, ..., g_l, g_1, ..., g_i)."""
    l = len(g)
    lead_inv = g[i].inverse()
    return tuple(lead_inv * g[(i + j) % l] for j in range(l))


@dataclass
class PowerDecomposition:
    """Certificate for X^l == diagonal(X)  disjoint-union  C_l x M (x X).

    mode is "principal" or "coset".  embed_diagonal and embed_free are the
    explicit bijection pieces; verify() re-checks bijectivity and the
    intertwining of the C_l x G actions point by point.
    """

    mode: str
    group: FiniteGroup              # G
    product_group: FiniteGroup      # C_l x G
    l: int
    base: FiniteGSet                # X
    power: FiniteGSet               # X^l with the C_l x G action
    M: tuple
    free_points: tuple              # (i, m, x) or (i, m) labels
    embed_diagonal: dict            # x -> point of X^l
    embed_free: dict                # free label -> point of X^l

    def free_act(self, label, p: Permutation):
        sigma, gamma = split_product_element(self.product_group, p)
        # sigma = c^j for some j; recover j from the image of 1
        j = sigma(1) - 1
        if self.mode == "principal":
            i, m, x = label
            m_new = tuple(gamma.inverse() * t * gamma for t in m)
            return ((i + j) % self.l, m_new, self.base.act(x, gamma))
        i, m = label
        m_new = tuple(self.base.act(t, gamma) for t in m)
        return ((i + j) % self.l, m_new)

    def counts(self):
        return len(self.base.points), len(self.M), len(self.power.points)

    def verify(self):
        power_index = self.power._point_index
        # bijectivity
        images = list(self.embed_diagonal.values()) + list(self.embed_free.values())
        if len(images) != len(set(images)) or len(images) != len(self.power.points):
            raise CertificateError("decomposition is not a bijection")
        for y in images:
            if y not in power_index:
                raise CertificateError("decomposition image leaves X^l")
        # the diagonal piece is where all coordinates agree
        for x in self.base.points:
            if self.embed_diagonal[x] != tuple([x] * self.l):
                raise CertificateError("diagonal embedding is not the diagonal")
        # intertwining, every group element at every point
        for p in self.product_group.elements:
            sigma, gamma = split_product_element(self.product_group, p)
            for x in self.base.points:
                lhs = self.embed_diagonal[self.base.act(x, gamma)]
                rhs = self.power.act(self.embed_diagonal[x], p)
                if lhs != rhs:
                    raise CertificateError("diagonal piece does not intertwine")
            for label in self.free_points:
                lhs = self.embed_free[self.free_act(label, p)]
                rhs = self.power.act(self.embed_free[label], p)
                if lhs != rhs:
                    raise CertificateError("free piece does not intertwine")
        # freeness of the cyclic direction on M
        seen = set()
        for m in self.M:
            for i in range(self.l):
                y = _rotate_scaled(m, i) if self.mode == "principal" else _rotate_tuple(m, i)
                if y in seen:
                    raise CertificateError("(c^i, h) -> c^i(h) is not injective on C_l x M")
                seen.add(y)
        return True


def _rotate_tuple(m: tuple, i: int) -> tuple:
    l = len(m)
    return tuple(m[(j + i) % l] for j in range(l))


def decompose_power_gset(G: FiniteGroup, l: int, mode: str, Gp: FiniteGroup | None = None) -> PowerDecomposition:
    """Constructs and verifies the orbit decomposition of X^l under C_l x G.

    mode "principal": X = G itself; mode "coset": X = G'\\G for Gp <= G.
    Requires l prime and l not dividing |G|.
    """
    if not is_prime(l):
        raise ValueError(f"l = {l} must be prime")
    if G.order % l == 0:
        raise ValueError(f"l = {l} divides |G| = {G.order}")
    if mode == "principal":
        X = principal_gset(G)
    elif mode == "coset":
        if Gp is None:
            raise ValueError("coset mode needs a subgroup")
        X = coset_gset(G, Gp)
    else:
        raise ValueError(f"unknown mode {mode!r}")

    power = power_gset(X, l)
    CG = power.group

    # greedy G-stable system of C_l-orbit representatives
    M: list[tuple] = []
    covered: set[tuple] = set()
    if mode == "principal":
        identity_tuple = tuple([G.identity] * l)
        universe = [
            (G.identity,) + rest
            for rest in itertools.product(G.elements, repeat=l - 1)
        ]
        universe = [u for u in universe if u != identity_tuple]
        orbit_of = lambda u: sorted({tuple(g.inverse() * t * g for t in u) for g in G.elements})
        rotate = _rotate_scaled
    else:
        diag = {tuple([x] * l) for x in X.points}
        universe = [u for u in itertools.product(X.points, repeat=l) if u not in diag]
        orbit_of = lambda u: sorted({tuple(X.act(t, g) for t in u) for g in G.elements})
        rotate = _rotate_tuple

    for u in universe:
        if u in covered:
            continue
        orbit = orbit_of(u)
        for h in orbit:
            for i in range(l):
                y = rotate(h, i)
                if y in covered:
                    raise CertificateError("greedy orbit overlaps covered points")
                covered.add(y)
        M.extend(orbit)

    # assemble the bijection
    embed_diagonal = {x: tuple([x] * l) for x in X.points}
    embed_free = {}
    free_points = []
    if mode == "principal":
        for m in M:
            for i in range(l):
                for x in X.points:
                    label = (i, m, x)
                    g_rot = _rotate_scaled(m, i)
                    point = tuple(X.act(X.act(x, m[i]), t) for t in g_rot)
                    free_points.append(label)
                    embed_free[label] = point
    else:
        for m in M:
            for i in range(l):
                label = (i, m)
                free_points.append(label)
                embed_free[label] = _rotate_tuple(m, i)

    decomp = PowerDecomposition(
        mode=mode,
        group=G,
        product_group=CG,
        l=l,
        base=X,
        power=power,
        M=tuple(M),
        free_points=tuple(free_points),
        embed_diagonal=embed_diagonal,
        embed_free=embed_free,
    )
    decomp.verify()
    return decomp
