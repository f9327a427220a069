"""Exact dense linear algebra over the scalar field.

Matrices are plain lists of lists of Scalar, vectors plain lists of Scalar.
Everything here is straight Gaussian elimination over a field; there is no
pivoting heuristic beyond "first nonzero", because exact arithmetic needs no
numerical care and the matrices involved stay small.
"""

from __future__ import annotations

from .scalars import ONE, ZERO, Scalar


def smat(rows):
    """Coerce a list-of-lists of ints/Scalars into Scalar entries."""
    return [[x if isinstance(x, Scalar) else Scalar.from_int(x) for x in row]
            for row in rows]


def zeros(m, n):
    return [[ZERO] * n for _ in range(m)]


def identity(n):
    return [[ONE if j == k else ZERO for k in range(n)] for j in range(n)]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c, a):
    return [[c * x for x in row] for row in a]


def mat_mul(a, b):
    n = len(b)
    cols = len(b[0]) if n else 0
    out = []
    for row in a:
        acc = [ZERO] * cols
        for j, x in enumerate(row):
            if x:
                brow = b[j]
                for k in range(cols):
                    if brow[k]:
                        acc[k] = acc[k] + x * brow[k]
        out.append(acc)
    return out


def mat_vec(a, v):
    out = []
    for row in a:
        s = ZERO
        for x, y in zip(row, v):
            if x and y:
                s = s + x * y
        out.append(s)
    return out


def transpose(a):
    return [list(col) for col in zip(*a)]


def kron(a, b):
    """Kronecker product: (a ⊗ b)[(i,j),(k,l)] = a[i][k] * b[j][l]."""
    bm, bn = len(b), len(b[0])
    out = []
    for arow in a:
        for brow in b:
            out.append([x * y for x in arow for y in brow])
    return out


def mat_eq(a, b):
    if len(a) != len(b):
        return False
    return all(ra == rb for ra, rb in zip(a, b))


def is_zero_matrix(a):
    return all(not x for row in a for x in row)


def rref(rows):
    """Reduced row echelon form.  Returns (new_rows, pivot_columns).

    The input is not modified; zero rows are dropped from the result.
    """
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for k in range(r, len(rows)):
            if rows[k][c]:
                pivot = k
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c].inv()
        rows[r] = [x * inv for x in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][c]:
                f = rows[k][c]
                rows[k] = [x - f * y for x, y in zip(rows[k], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(a):
    return len(rref(a)[1])


def nullspace(a):
    """Basis of the right kernel {v : a·v = 0}, one vector per free column."""
    if not a:
        return []
    ncols = len(a[0])
    red, pivots = rref(a)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [ZERO] * ncols
        v[free] = ONE
        for r, p in enumerate(pivots):
            v[p] = -red[r][free]
        basis.append(v)
    return basis


def solve(a, b):
    """One solution of a·x = b (free variables zero), or None if inconsistent."""
    if not a:
        return None if any(b) else []
    aug = [list(row) + [val] for row, val in zip(a, b)]
    red, pivots = rref(aug)
    ncols = len(a[0])
    if ncols in pivots:          # pivot in the augmented column
        return None
    x = [ZERO] * ncols
    for r, p in enumerate(pivots):
        x[p] = red[r][-1]
    return x


def inverse(a):
    """Matrix inverse, or None when singular."""
    n = len(a)
    aug = [list(row) + list(irow) for row, irow in zip(a, identity(n))]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        return None
    return [row[n:] for row in red]


def row_space_contains(basis_rref, pivots, v):
    """Whether vector v lies in the row space given by an rref basis."""
    v = list(v)
    for row, p in zip(basis_rref, pivots):
        if v[p]:
            f = v[p]
            v = [x - f * y for x, y in zip(v, row)]
    return not any(v)


def same_row_space(a, b):
    ra, pa = rref(a)
    rb, pb = rref(b)
    return pa == pb and mat_eq(ra, rb)


def stack(mats):
    """Vertical concatenation of matrices with equal column counts."""
    out = []
    for m in mats:
        out.extend(m)
    return out


def eigenspace(m, lam):
    """Kernel basis of (m - lam·I)."""
    n = len(m)
    shifted = [[m[j][k] - lam if j == k else m[j][k] for k in range(n)]
               for j in range(n)]
    return nullspace(shifted)
