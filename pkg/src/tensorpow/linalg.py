"""Exact linear algebra kernels.

Dense routines work over Fraction (or any exact field with +,-,*,/ and
truthiness for nonzero).  Integer lattice questions go through Smith normal
form.  Large sparse certificates use elimination modulo a big prime, which
is sound for proving full rank over Q (a nonzero minor mod p is nonzero in Z).
"""

from __future__ import annotations

from fractions import Fraction


# -- dense field routines -------------------------------------------------

def mat_rank(rows) -> int:
    """Rank of a dense matrix given as a list of row lists (destructive copy)."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    row = 0
    for col in range(ncols):
        pivot = None
        for r in range(row, len(m)):
            if m[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        pv = m[row][col]
        for r in range(row + 1, len(m)):
            if m[r][col]:
                factor = m[r][col] / pv
                mr = m[r]
                mp = m[row]
                for c in range(col, ncols):
                    mr[c] -= factor * mp[c]
        row += 1
        rank += 1
        if row == len(m):
            break
    return rank


def rref(rows):
    """Reduced row echelon form; returns (matrix, pivot column list)."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    row = 0
    for col in range(ncols):
        pivot = None
        for r in range(row, len(m)):
            if m[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        pv = m[row][col]
        m[row] = [x / pv for x in m[row]]
        for r in range(len(m)):
            if r != row and m[r][col]:
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[row])]
        pivots.append(col)
        row += 1
        if row == len(m):
            break
    return m, pivots


def nullspace(rows, ncols=None):
    """Basis of the right kernel of the matrix (list of column vectors)."""
    if not rows:
        if not ncols:
            return []
        return [
            [Fraction(1) if i == j else Fraction(0) for i in range(ncols)]
            for j in range(ncols)
        ]
    ncols = len(rows[0])
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for i, p in enumerate(pivots):
            vec[p] = -red[i][f]
        basis.append(vec)
    return basis


def solve(rows, rhs):
    """One solution x of A x = b over the field, or None."""
    if not rows:
        return None if any(rhs) else []
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    # inconsistent if a pivot lands in the rhs column
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for i, p in enumerate(pivots):
        x[p] = red[i][ncols]
    return x


def trace_on_subspace(action_rows, basis_vectors) -> Fraction:
    """Trace of a linear map restricted to an invariant subspace.

    action_rows is the matrix of the map on the ambient space; the subspace
    is given by spanning vectors (assumed linearly independent).  Raises if
    the subspace is not invariant.
    """
    if not basis_vectors:
        return Fraction(0)
    nc = len(basis_vectors)
    images = []
    for v in basis_vectors:
        images.append([sum(row[j] * v[j] for j in range(len(v))) for row in action_rows])
    # solve B c = image for each image, B has basis vectors as columns
    rows = [[basis_vectors[k][i] for k in range(nc)] for i in range(len(basis_vectors[0]))]
    tr = Fraction(0)
    for idx, img in enumerate(images):
        coeffs = solve(rows, img)
        if coeffs is None:
            raise ValueError("subspace is not invariant under the action")
        tr += coeffs[idx]
    return tr


# -- integer lattice routines ----------------------------------------------

def smith_normal_form(matrix):
    """Smith normal form over Z.

    Returns (d, u, v) with u * A * v = d, u and v unimodular, d diagonal
    (as a list of rows).  Small dense matrices only.
    """
    a = [list(map(int, row)) for row in matrix]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    u = [[int(i == j) for j in range(nr)] for i in range(nr)]
    v = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, k):
        for row in a:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    t = 0
    while t < min(nr, nc):
        # find a nonzero pivot
        pivot = None
        for i in range(t, nr):
            for j in range(t, nc):
                if a[i][j]:
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            # clear column t
            done = True
            for i in range(t + 1, nr):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    add_row(t, i, -q)
                    if a[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, nc):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    add_col(t, j, -q)
                    if a[t][j]:
                        swap_cols(t, j)
                        done = False
            if done:
                break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return a, u, v


def solve_integer(matrix, rhs):
    """Integer solution x of A x = b, or None.

    matrix is a list of rows; rhs a list of ints.
    """
    nr = len(matrix)
    nc = len(matrix[0]) if nr else 0
    if nr == 0:
        return [0] * nc if not any(rhs) else None
    d, u, v = smith_normal_form(matrix)
    c = [sum(u[i][k] * rhs[k] for k in range(nr)) for i in range(nr)]
    y = [0] * nc
    for i in range(min(nr, nc)):
        di = d[i][i]
        if di:
            if c[i] % di != 0:
                return None
            y[i] = c[i] // di
        elif c[i]:
            return None
    if any(c[i] for i in range(min(nr, nc), nr)):
        return None
    return [sum(v[i][k] * y[k] for k in range(nc)) for i in range(nc)]


# -- sparse elimination mod p ------------------------------------------------

CERT_PRIME = 1_000_003


def sparse_rank_mod_p(columns, p: int = CERT_PRIME) -> int:
    """Rank mod p of a set of sparse columns (dicts row_index -> int)."""
    # echelon: pivot row index -> normalized sparse column
    echelon: dict[int, dict[int, int]] = {}
    rank = 0
    for col in columns:
        vec = {i: c % p for i, c in col.items() if c % p}
        while vec:
            piv = min(vec)
            if piv in echelon:
                factor = vec[piv]
                base = echelon[piv]
                for i, c in base.items():
                    nv = (vec.get(i, 0) - factor * c) % p
                    if nv:
                        vec[i] = nv
                    elif i in vec:
                        del vec[i]
            else:
                inv = pow(vec[piv], p - 2, p)
                echelon[piv] = {i: (c * inv) % p for i, c in vec.items()}
                rank += 1
                break
    return rank


class UnionFind:
    """Disjoint sets over hashable items."""

    def __init__(self):
        self.parent = {}

    def find(self, x):
        parent = self.parent
        if x not in parent:
            parent[x] = x
            return x
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb

    def components(self) -> int:
        return sum(1 for x, p in self.parent.items() if x == p)
