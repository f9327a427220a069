"""Finite-dimensional modules over the dual algebras.

Builds the regular modules of the finite dual subalgebras, cyclic
weight modules, and the translation action of dual functionals on the
quotient algebras, then decomposes everything into irreducibles by
exact linear algebra: invariant subspaces are found from joint
eigenvectors (eigenvalue candidates come from the cubic constraints
the dual relations impose), factors are certified irreducible, and
isomorphism classes are settled by solving for explicit intertwiners.

Matrix convention throughout: column j of a generator matrix holds the
coordinates of the image of the j-th basis vector.
"""

import random

from .duality import (
    COPRODUCT_TAGS,
    CheckLine,
    DUAL_LETTERS,
    RELATION_TAGS,
    build_finite_subalgebra,
    duality,
)
from .freealg import NCPoly
from .linalg import identity, mat_eq, mat_mul, mat_vec, nullspace, rref
from .scalars import ONE, ZERO, integer, scalar

_S0 = ZERO
_S1 = ONE


class UnsupportedModuleError(ValueError):
    """A module falls outside the supported exact machinery."""


class WeightError(ValueError):
    """A requested weight violates an algebra constraint."""


# ---------------------------------------------------------------------------
# module wrapper


class ModuleRep:
    """A module given by one exact matrix per acting dual generator.

    `side` records which regular-type action the matrices encode: a
    letter matrix of a right module is the matrix of  f -> f.z,  and a
    product of letters then acts by composing in reversed order, so the
    substitution check stays honest for both sides."""

    def __init__(self, algebra, labels, matrices, *, side="left",
                 truncated=False, collapsed=False, notes=()):
        self.algebra = algebra
        self.labels = tuple(labels)
        self.matrices = {z: [list(row) for row in m] for z, m in matrices.items()}
        self.side = side
        self.truncated = truncated
        self.collapsed = collapsed
        self.notes = tuple(notes)
        n = len(self.labels)
        for z, m in self.matrices.items():
            if len(m) != n or any(len(row) != n for row in m):
                raise ValueError(f"matrix for {z} is not {n}x{n}")

    @property
    def dim(self):
        return len(self.labels)

    def letters(self):
        return tuple(sorted(self.matrices))

    def action(self, u):
        """Matrix of a polynomial in the dual generators."""
        if isinstance(u, str):
            u = duality(self.algebra).parse(u)
        n = self.dim
        out = [[_S0] * n for _ in range(n)]
        for w, c in u.terms.items():
            m = identity(n)
            for z in (w if self.side == "left" else reversed(w)):
                if z not in self.matrices:
                    raise KeyError(z)
                m = mat_mul(m, self.matrices[z])
            for i in range(n):
                for j in range(n):
                    if m[i][j]:
                        out[i][j] = out[i][j] + c * m[i][j]
        return out

    def scalar_action(self, u):
        """The scalar by which an expression acts, or None if the action
        is not a multiple of the identity."""
        m = self.action(u)
        c = m[0][0]
        n = self.dim
        for i in range(n):
            for j in range(n):
                if m[i][j] != (c if i == j else _S0):
                    return None
        return c

    def check_relations(self):
        """Substitute the matrices into every defining relation of the
        dual algebra that only uses available generators.  Columns listed
        in `boundary` (basis vectors whose images fall off a truncation
        window) are excluded from the comparison."""
        skip_cols = getattr(self, "boundary", frozenset())
        lines = []
        for tag, lhs, rhs in RELATION_TAGS[self.algebra]:
            try:
                a, b = self.action(lhs), self.action(rhs)
            except KeyError:
                lines.append(CheckLine(tag, True, 0, detail="skipped: generator absent"))
                continue
            ok = all(a[i][j] == b[i][j]
                     for i in range(self.dim) for j in range(self.dim)
                     if j not in skip_cols)
            detail = "matrix substitution"
            if skip_cols:
                detail += f" ({len(skip_cols)} window-boundary columns excluded)"
            lines.append(CheckLine(tag, ok, 0, detail=detail))
        return lines

    def relations_hold(self):
        return all(line.ok for line in self.check_relations())

    def __repr__(self):
        return (f"ModuleRep({self.algebra}, dim={self.dim}, "
                f"letters={''.join(self.letters())})")


_CASIMIR_EXPRS = (("A", "A"), ("B^2", "B^2"), ("D^2", "D^2"))


class IrrepDescriptor:
    """Invariant data of an irreducible factor: dimension, the values of
    the central elements (or "free" when a generator is absent), and
    discrete labels."""

    def __init__(self, dim, casimirs, labels=()):
        self.dim = dim
        self.casimirs = tuple(casimirs)
        self.labels = tuple(sorted(labels))

    @classmethod
    def of(cls, rep, labels=()):
        cas = []
        for name, expr in _CASIMIR_EXPRS:
            try:
                c = rep.scalar_action(expr)
            except KeyError:
                cas.append((name, "free"))
                continue
            if c is None:
                raise UnsupportedModuleError(
                    f"{name} does not act as a scalar on a dim-{rep.dim} factor")
            cas.append((name, str(c)))
        return cls(rep.dim, cas, labels)

    def casimir(self, name):
        for k, v in self.casimirs:
            if k == name:
                return v
        return None

    def key(self):
        return (self.dim, self.casimirs, self.labels)

    def __eq__(self, other):
        return isinstance(other, IrrepDescriptor) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        cas = ", ".join(f"{k}={v}" for k, v in self.casimirs)
        lab = "".join(f" {k}={v}" for k, v in self.labels)
        return f"<dim {self.dim}: {cas}{lab}>"


# ---------------------------------------------------------------------------
# exact subspace helpers


def _span(vectors):
    if not vectors:
        return []
    rows, _ = rref([list(v) for v in vectors])
    return [row for row in rows if any(row)]


def _reduce_against(v, basis):
    """Reduce v against an echelonized basis; returns (coords, remainder)."""
    v = list(v)
    coords = []
    for row in basis:
        p = next(k for k, x in enumerate(row) if x)
        c = v[p]
        coords.append(c)
        if c:
            for k in range(len(v)):
                v[k] = v[k] - c * row[k]
    return coords, v


def _closure(mats, seed):
    basis = _span(seed)
    while True:
        new = list(basis)
        for v in basis:
            for m in mats.values():
                new.append(mat_vec(m, v))
        nb = _span(new)
        if len(nb) == len(basis):
            return nb
        basis = nb


def _subspace_kernel(mats_letter, lam, space):
    """Vectors v in span(space) with M v = lam v, as combinations of space."""
    m = len(space)
    if m == 0:
        return []
    rows = []
    images = [mat_vec(mats_letter, v) for v in space]
    n = len(space[0])
    # coefficient system: sum_k c_k (M s_k - lam s_k) = 0
    for i in range(n):
        rows.append([images[k][i] - lam * space[k][i] for k in range(m)])
    out = []
    for coeffs in nullspace(rows):
        v = [_S0] * n
        for k, c in enumerate(coeffs):
            if c:
                for i in range(n):
                    v[i] = v[i] + c * space[k][i]
        out.append(v)
    return out


def default_candidates(dim):
    """Eigenvalue pool: the roots allowed by the cubic relations plus the
    integer window that degree-space spectra live in."""
    pool = [integer(0), integer(1), integer(-1), scalar("i"), scalar("-i")]
    for k in range(2, dim + 1):
        pool.append(integer(k))
        pool.append(integer(-k))
    return pool


def _joint_eigenvector(mats, dim, pool):
    """A common eigenvector of every matrix, with its eigenvalue tuple,
    or None.  Branches over the candidate pool with exact kernel
    intersections, so an empty result is a proof that no line is
    invariant (given that all joint eigenvalues lie in the pool)."""
    letters = sorted(mats)
    full = [[(_S1 if i == j else _S0) for j in range(dim)] for i in range(dim)]
    states = [(full, ())]
    for z in letters:
        nxt = []
        for space, values in states:
            seen = []
            for lam in pool:
                if any(lam == s for s in seen):
                    continue
                seen.append(lam)
                sub = _subspace_kernel(mats[z], lam, space)
                if sub:
                    nxt.append((_span(sub), values + ((z, lam),)))
        states = nxt
        if not states:
            return None
    space, values = states[0]
    return space[0], values


def _restrict(mats, basis):
    sub = {}
    for z, m in mats.items():
        cols = []
        for v in basis:
            img = mat_vec(m, v)
            coords, rem = _reduce_against(img, basis)
            if any(rem):
                raise UnsupportedModuleError("restriction left the subspace")
            cols.append(coords)
        k = len(basis)
        sub[z] = [[cols[j][i] for j in range(k)] for i in range(k)]
    return sub


def _quotient(mats, basis, dim):
    pivots = [next(k for k, x in enumerate(row) if x) for row in basis]
    free = [j for j in range(dim) if j not in pivots]
    out = {}
    for z, m in mats.items():
        cols = []
        for j in free:
            e = [_S0] * dim
            e[j] = _S1
            _, rem = _reduce_against(mat_vec(m, e), basis)
            cols.append([rem[k] for k in free])
        out[z] = [[cols[j][i] for j in range(len(free))] for i in range(len(free))]
    return out, free


def _minimal_submodule(mats, dim, pool):
    """An irreducible submodule.  Joint eigenvectors are tried first;
    otherwise the smallest single-eigenvector closure is minimized
    recursively until no proper invariant subspace remains."""
    jv = _joint_eigenvector(mats, dim, pool)
    if jv is not None:
        return _span([jv[0]])
    best = None
    for z in sorted(mats):
        for lam in pool:
            for v in _subspace_kernel(
                    mats[z], lam,
                    [[(_S1 if i == j else _S0) for j in range(dim)]
                     for i in range(dim)]):
                w = _closure(mats, [v])
                if best is None or len(w) < len(best):
                    best = w
    if best is None:
        raise UnsupportedModuleError(
            "no eigenvector in the candidate pool; eigenvalue outside Q(i)?")
    while len(best) > 1:
        inner = _restrict(mats, best)
        sub = _try_proper_submodule(inner, len(best), pool)
        if sub is None:
            break
        best = _span([
            [sum((c * best[k][i] for k, c in enumerate(coords)), _S0)
             for i in range(dim)]
            for coords in sub
        ])
    return best


def _try_proper_submodule(mats, dim, pool):
    jv = _joint_eigenvector(mats, dim, pool)
    if jv is not None and dim > 1:
        return _span([jv[0]])
    best = None
    for z in sorted(mats):
        for lam in pool:
            for v in _subspace_kernel(
                    mats[z], lam,
                    [[(_S1 if i == j else _S0) for j in range(dim)]
                     for i in range(dim)]):
                w = _closure(mats, [v])
                if len(w) < dim and (best is None or len(w) < len(best)):
                    best = w
    return best


class Component:
    """One irreducible factor of a filtration: its matrices, descriptor,
    and representative vectors in the coordinates of the parent module."""

    def __init__(self, rep, descriptor, witness):
        self.rep = rep
        self.descriptor = descriptor
        self.witness = [list(v) for v in witness]

    def __repr__(self):
        return f"Component({self.descriptor!r})"


class Decomposition:
    def __init__(self, parent, components, classes):
        self.parent = parent
        self.components = components
        self.classes = classes  # list of {"members": [...], "intertwiners": {...}}

    def multiset(self):
        out = {}
        for c in self.components:
            out[c.descriptor] = out.get(c.descriptor, 0) + 1
        return out

    def class_sizes(self):
        return sorted(len(c["members"]) for c in self.classes)

    def verify_flag(self):
        """Re-checks that each partial flag subspace is invariant."""
        mats = self.parent.matrices
        flag = []
        for comp in self.components:
            flag.extend(comp.witness)
            basis = _span(flag)
            for m in mats.values():
                for v in basis:
                    _, rem = _reduce_against(mat_vec(m, v), basis)
                    if any(rem):
                        return False
        return True


def _component_labels(rep):
    if rep.dim != 1:
        return ()
    return tuple((z, str(rep.matrices[z][0][0])) for z in sorted(rep.matrices))


def decompose(rep, pool=None):
    """Filtration of a ModuleRep by invariant subspaces with irreducible
    quotients, bottom-up, plus intertwiner-certified isomorphism classes.

    Raises UnsupportedModuleError when no eigenvector over the candidate
    pool makes progress (an eigenvalue outside Q(i)) or when a central
    element fails to act as a scalar on a factor.
    """
    if pool is None:
        pool = default_candidates(max(rep.dim, 1))
    mats = rep.matrices
    dim = rep.dim
    lift = [[(_S1 if i == j else _S0) for i in range(rep.dim)] for j in range(rep.dim)]
    components = []
    while dim:
        w = _minimal_submodule(mats, dim, pool)
        sub = _restrict(mats, w)
        factor = ModuleRep(rep.algebra,
                           [f"c{len(components)}.{k}" for k in range(len(w))],
                           sub, side=rep.side)
        witness = [
            [sum((c * lift[k][i] for k, c in enumerate(row) if c), _S0)
             for i in range(rep.dim)]
            for row in w
        ]
        desc = IrrepDescriptor.of(factor, _component_labels(factor))
        components.append(Component(factor, desc, witness))
        mats, free = _quotient(mats, w, dim)
        lift = [lift[j] for j in free]
        dim -= len(w)
    if sum(c.rep.dim for c in components) != rep.dim:
        raise UnsupportedModuleError("factor dimensions do not add up")
    classes = _isomorphism_classes(components)
    return Decomposition(rep, components, classes)


# ---------------------------------------------------------------------------
# intertwiners


def intertwiner_space(m1, m2):
    """Basis of matrices T with T m1(z) = m2(z) T for every letter z."""
    letters = sorted(m1)
    if sorted(m2) != letters:
        raise ValueError("letter sets differ")
    d1 = len(next(iter(m1.values())))
    d2 = len(next(iter(m2.values())))
    rows = []
    for z in letters:
        a, b = m1[z], m2[z]
        for i in range(d2):
            for j in range(d1):
                row = [_S0] * (d2 * d1)
                for k in range(d1):
                    row[i * d1 + k] = row[i * d1 + k] + a[k][j]
                for k in range(d2):
                    row[k * d1 + j] = row[k * d1 + j] - b[i][k]
                rows.append(row)
    out = []
    for v in nullspace(rows):
        out.append([[v[i * d1 + j] for j in range(d1)] for i in range(d2)])
    return out


def _det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    out = _S0
    sign = _S1
    for j in range(n):
        if m[0][j]:
            minor = [[m[i][k] for k in range(n) if k != j] for i in range(1, n)]
            out = out + sign * m[0][j] * _det(minor)
        sign = -sign
    return out


def invertible_intertwiner(m1, m2):
    """An invertible intertwiner, or None with certainty: the determinant
    on the intertwiner space is a polynomial of per-variable degree at
    most n, so vanishing on the full (n+1)^s integer grid proves that no
    invertible element exists."""
    basis = intertwiner_space(m1, m2)
    if not basis:
        return None
    d1 = len(basis[0][0])
    d2 = len(basis[0])
    if d1 != d2:
        return None
    n = d1
    s = len(basis)
    grid = [integer(k) for k in range(n + 1)]

    def combos(depth, acc):
        if depth == s:
            yield acc
            return
        for g in grid:
            yield from combos(depth + 1, acc + (g,))

    for cs in combos(0, ()):
        t = [[sum((cs[k] * basis[k][i][j] for k in range(s)), _S0)
              for j in range(n)] for i in range(n)]
        if _det(t):
            return t
    return None


def _isomorphism_classes(components):
    classes = []
    for idx, comp in enumerate(components):
        placed = False
        for cls in classes:
            rep0 = components[cls["members"][0]]
            if comp.rep.dim != rep0.rep.dim:
                continue
            if sorted(comp.rep.matrices) != sorted(rep0.rep.matrices):
                continue
            t = invertible_intertwiner(rep0.rep.matrices, comp.rep.matrices)
            if t is not None:
                cls["members"].append(idx)
                cls["intertwiners"][idx] = t
                placed = True
                break
        if not placed:
            classes.append({"members": [idx], "intertwiners": {}})
    # isomorphic factors must carry identical invariant data
    for cls in classes:
        descs = {components[i].descriptor for i in cls["members"]}
        if len(descs) != 1:
            raise UnsupportedModuleError("isomorphic factors with unequal descriptors")
    return classes


# ---------------------------------------------------------------------------
# regular modules of the finite dual subalgebras


def left_regular(fin=None):
    """Left multiplication module of a finite-dimensional subalgebra of
    the dual (default: the nine-dimensional subalgebra on B, C, D)."""
    if fin is None:
        fin = build_finite_subalgebra()
    labels = ["*".join(w) if w else "1" for w in fin.basis]
    mats = {}
    for z in ("B", "C", "D"):
        mats[z] = fin.left_matrix(fin.word_vector((z,)))
    return ModuleRep("s03", labels, mats)


def right_regular(fin=None):
    """Right multiplication module of the nine-dimensional subalgebra."""
    if fin is None:
        fin = build_finite_subalgebra()
    labels = ["*".join(w) if w else "1" for w in fin.basis]
    mats = {}
    for z in ("B", "C", "D"):
        mats[z] = fin.right_matrix(fin.word_vector((z,)))
    return ModuleRep("s03", labels, mats, side="right")


def _s14_reduce(word):
    """Normal form of a word in the dual letters B, D for the subalgebra
    they generate: D's sorted left past B's (each swap a sign), then
    B^3 -> B and D^2 B -> B.  Result: (sign, d_power, b_power)."""
    m = word.count("D")
    k = word.count("B")
    inv = 0
    seen_b = 0
    for z in word:
        if z == "B":
            seen_b += 1
        else:
            inv += seen_b
    sign = _S1 if inv % 2 == 0 else -_S1
    if k:
        while k > 2:
            k -= 2
        m %= 2
    return sign, m, k


def _s14_label(m, k):
    if k == 0:
        return "1" if m == 0 else ("D" if m == 1 else f"D^{m}")
    b = "B" if k == 1 else "B^2"
    return b if m == 0 else f"D*{b}"


def right_regular_s14(L=6):
    """Right multiplication module of the subalgebra of the s14 dual
    generated by B and D, truncated at tail power L.  Basis:
    1, B, B^2, D*B, D*B^2, D, D^2, ..., D^L.  Images that climb past the
    window are dropped and recorded in the `dropped` attribute."""
    if L < 2:
        raise ValueError("truncation level must be at least 2")
    basis = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2)] + [(m, 0) for m in range(1, L + 1)]
    labels = [_s14_label(m, k) for m, k in basis]
    index = {mk: i for i, mk in enumerate(basis)}
    dropped = []
    mats = {}
    for z in ("B", "D"):
        n = len(basis)
        mat = [[_S0] * n for _ in range(n)]
        for j, (m, k) in enumerate(basis):
            word = "D" * m + "B" * k + z
            sign, m2, k2 = _s14_reduce(word)
            if k2 == 0 and m2 > L:
                dropped.append((labels[j], z))
                continue
            mat[index[(m2, k2)]][j] = sign
        mats[z] = mat
    rep = ModuleRep("s14", labels, mats, side="right", truncated=True,
                    notes=("tail of repeating trivial quotients beyond the window",))
    rep.dropped = dropped
    rep.power_basis = basis
    rep.window = L
    rep.boundary = frozenset(
        j for j, (m, k) in enumerate(basis) if k == 0 and m > L - 3)
    return rep


def s14_mixed_action_report(L=6):
    """Why the four candidate lines in the right regular module are not
    submodules: the vectors v(e,e') = B + e B^2 - e' D*B + e e' D*B^2 are
    eigenvectors for LEFT multiplication by B and RIGHT multiplication by
    D -- two different actions.  Under the right action of B they swap
    e' -> -e', and a joint right-eigenvector search with both eigenvalues
    nonzero over {1,-1} comes back empty."""
    rep = right_regular_s14(L)
    n = rep.dim
    idx = {lab: i for i, lab in enumerate(rep.labels)}

    left_mats = {}
    for z in ("B", "D"):
        mat = [[_S0] * n for _ in range(n)]
        for j, (m, k) in enumerate(rep.power_basis):
            word = z + "D" * m + "B" * k
            sign, m2, k2 = _s14_reduce(word)
            if k2 == 0 and m2 > L:
                continue
            mat[idx[_s14_label(m2, k2)]][j] = sign
        left_mats[z] = mat

    pm = (integer(1), integer(-1))
    vectors = {}
    checks = {"left_B": {}, "right_D": {}, "right_B_swaps": {}}
    for e in pm:
        for ep in pm:
            v = [_S0] * n
            v[idx["B"]] = _S1
            v[idx["B^2"]] = e
            v[idx["D*B"]] = -ep
            v[idx["D*B^2"]] = e * ep
            vectors[(str(e), str(ep))] = v
    for (e_s, ep_s), v in vectors.items():
        e, ep = scalar(e_s), scalar(ep_s)
        lv = mat_vec(left_mats["B"], v)
        checks["left_B"][(e_s, ep_s)] = lv == [e * x for x in v]
        rv = mat_vec(rep.matrices["D"], v)
        checks["right_D"][(e_s, ep_s)] = rv == [ep * x for x in v]
        bv = mat_vec(rep.matrices["B"], v)
        target = vectors[(str(e), str(-ep))]
        checks["right_B_swaps"][(e_s, ep_s)] = bv == [e * x for x in target]

    # no joint right-eigenvector with both eigenvalues nonzero
    joint = []
    for lb in pm:
        for ld in pm:
            space = _subspace_kernel(
                rep.matrices["B"], lb,
                [[(_S1 if i == j else _S0) for j in range(n)] for i in range(n)])
            if space:
                space = _subspace_kernel(rep.matrices["D"], ld, space)
            if space:
                joint.append((str(lb), str(ld)))
    return {
        "vectors": vectors,
        "left_B_eigen": all(checks["left_B"].values()),
        "right_D_eigen": all(checks["right_D"].values()),
        "right_B_swaps_sign": all(checks["right_B_swaps"].values()),
        "joint_nonzero_pairs": joint,
    }


# ---------------------------------------------------------------------------
# weight modules


def weight_module(algebra, letter, weight, L=8):
    """Cyclic module generated by a single weight vector.

    s03 / D: the weight must satisfy w^3 = w; built as the quotient of
    the nine-dimensional subalgebra by the left ideal it generates, so
    the matrices come out of verified structure constants.
    s14 / D: any weight; for w^2 != 1 the relation D^2 B = B forces
    B v0 = 0 and the module honestly collapses to one dimension
    (flagged `collapsed`).
    s14 / B: the weight must satisfy w^3 = w; w = 0 yields the truncated
    shift tail.
    """
    weight = scalar(weight) if isinstance(weight, str) else (
        integer(weight) if isinstance(weight, int) else weight)
    if algebra == "s03" and letter == "D":
        if weight ** 3 != weight:
            raise WeightError(
                f"weight w = {weight} violates the cubic relation D^3 = D "
                "(needs w^3 = w, i.e. w in {0, 1, -1})")
        fin = build_finite_subalgebra()
        x = fin.word_vector(("D",))
        u = fin.unit_vector()
        for i in range(fin.dim):
            x[i] = x[i] - weight * u[i]
        ideal = _span([fin.multiply(e, x) for e in _unit_vectors(fin.dim)])
        mats = {z: fin.left_matrix(fin.word_vector((z,))) for z in ("B", "C", "D")}
        qmats, free = _quotient(mats, ideal, fin.dim)
        labels = ["*".join(fin.basis[j]) if fin.basis[j] else "1" for j in free]
        rep = ModuleRep("s03", labels, qmats)
        _, rem = _reduce_against(fin.unit_vector(), ideal)
        rep.cyclic = [rem[j] for j in free]
        return rep
    if algebra == "s14" and letter == "D":
        if weight ** 2 == _S1:
            lam = weight
            mats = {
                "B": [[_S0, _S0, _S0], [_S1, _S0, _S1], [_S0, _S1, _S0]],
                "D": [[lam, _S0, _S0], [_S0, -lam, _S0], [_S0, _S0, lam]],
            }
            rep = ModuleRep("s14", ("v0", "B.v0", "B^2.v0"), mats)
        else:
            rep = ModuleRep("s14", ("v0",),
                            {"B": [[_S0]], "D": [[weight]]}, collapsed=True,
                            notes=("D^2*B = B forces B.v0 = 0 for this weight",))
        rep.cyclic = [_S1] + [_S0] * (rep.dim - 1)
        return rep
    if algebra == "s14" and letter == "B":
        if weight ** 3 != weight:
            raise WeightError(
                f"weight w = {weight} violates the cubic relation B^3 = B "
                "(needs w^3 = w, i.e. w in {0, 1, -1})")
        if weight == _S0:
            n = L + 1
            shift = [[_S0] * n for _ in range(n)]
            for j in range(n - 1):
                shift[j + 1][j] = _S1
            rep = ModuleRep("s14", tuple(f"D^{k}.v0" for k in range(n)),
                            {"B": [[_S0] * n for _ in range(n)], "D": shift},
                            truncated=True,
                            notes=("tail D^k.v0 continues past the window",))
        else:
            nu = weight
            mats = {
                "B": [[nu, _S0], [_S0, -nu]],
                "D": [[_S0, _S1], [_S1, _S0]],
            }
            rep = ModuleRep("s14", ("v0", "D.v0"), mats,
                            notes=("D^2.v0 identified with v0",))
        rep.cyclic = [_S1] + [_S0] * (rep.dim - 1)
        return rep
    raise UnsupportedModuleError(
        f"no weight-module construction for algebra {algebra!r} with "
        f"weight letter {letter!r}")


def _unit_vectors(n):
    out = []
    for j in range(n):
        e = [_S0] * n
        e[j] = _S1
        out.append(e)
    return out


# ---------------------------------------------------------------------------
# translation action of the dual on the quotient algebra


def right_regular_action(name, z, f):
    """Contraction of the coproduct of f against the bracket with z:
    the degree-preserving action  f  ->  sum f1 <z, f2>."""
    d = duality(name)
    pres = d.presentation
    if isinstance(z, str):
        z = d.parse(z)
    elif isinstance(z, tuple):
        z = NCPoly.word(z)
    if isinstance(f, tuple):
        f = NCPoly.word(f)
    elif isinstance(f, str):
        f = pres.parse(f)
    f = pres.normal_form(f)
    out = NCPoly.zero()
    for w, c in f.terms.items():
        for (f1, f2), cc in pres.coproduct_word(w).terms.items():
            v = d.pair_normal(z, f2)
            if v:
                out = out + NCPoly.word(f1, c * cc * v)
    return pres.normal_form(out)


def _compatible_on_pair(name, tag, letter, parsed, f, g):
    d = duality(name)
    pres = d.presentation
    fg = pres.normal_form(NCPoly.word(f) * NCPoly.word(g))
    lhs = right_regular_action(name, d.parse(letter), fg)
    rhs = NCPoly.zero()
    for zl, zr in parsed:
        rhs = rhs + right_regular_action(name, zl, NCPoly.word(f)) \
            * right_regular_action(name, zr, NCPoly.word(g))
    return lhs == pres.normal_form(rhs)


def product_compatibility(name, maxdeg=3, extra_pairs=()):
    """The action on a product expands through the coproduct of the
    functional: act(z, f*g) = sum act(z1, f) * act(z2, g) over the
    verified coproduct terms of z.  Exhaustive over basis words with
    deg f + deg g <= maxdeg, plus any explicitly supplied word pairs.
    Returns (ok, witness)."""
    d = duality(name)
    pres = d.presentation
    for tag, letter, parts, _eps in COPRODUCT_TAGS[name]:
        parsed = [(d.parse(l), d.parse(r)) for l, r in parts]
        for df in range(0, maxdeg + 1):
            for dg in range(0, maxdeg + 1 - df):
                for f in pres.basis(df):
                    for g in pres.basis(dg):
                        if not _compatible_on_pair(name, tag, letter, parsed, f, g):
                            return False, (tag, f, g)
        for f, g in extra_pairs:
            if not _compatible_on_pair(name, tag, letter, parsed, tuple(f), tuple(g)):
                return False, (tag, f, g)
    return True, None


def random_word_pairs(name, total, count, seed=0):
    """Deterministic sample of normal-word pairs with degrees summing to
    `total`, for spot checks above the exhaustive window."""
    pres = duality(name).presentation
    rng = random.Random(seed)
    pairs = []
    for _ in range(count):
        df = rng.randint(0, total)
        fs = list(pres.basis(df))
        gs = list(pres.basis(total - df))
        if not fs or not gs:
            continue
        pairs.append((rng.choice(fs), rng.choice(gs)))
    return pairs


_FIRST_SWAP = {"at": "bt", "bt": "at", "ct": "dt", "dt": "ct"}
_LAST_MAP = {"at": ("ct", -1), "bt": ("dt", 1), "ct": ("at", 1), "dt": ("bt", -1)}
_SINGLE_D = {"at": ("dt", 1), "bt": ("ct", -1), "ct": ("bt", -1), "dt": ("at", 1)}


def s03_letter_structure(maxdeg=5):
    """Exhaustive structural facts of the translation action on the s03
    quotient: the degree functional acts by the length, the first
    shape-indicator rewrites only the leading letter, the second only
    the trailing letter, and the last one kills every word of length
    greater than one.  Returns (ok, witness)."""
    pres = duality("s03").presentation
    for n in range(0, maxdeg + 1):
        for w in pres.basis(n):
            fa = right_regular_action("s03", "A", w)
            if fa != (NCPoly.word(w, integer(n)) if n else NCPoly.zero()):
                return False, ("A", w)
            fb = right_regular_action("s03", "B", w)
            expect = NCPoly.word((_FIRST_SWAP[w[0]],) + w[1:]) if n else NCPoly.zero()
            if fb != expect:
                return False, ("B", w)
            fc = right_regular_action("s03", "C", w)
            if n:
                letter, sgn = _LAST_MAP[w[-1]]
                expect = NCPoly.word(w[:-1] + (letter,), integer(sgn))
            else:
                expect = NCPoly.zero()
            if fc != expect:
                return False, ("C", w)
            fd = right_regular_action("s03", "D", w)
            if n == 1:
                letter, sgn = _SINGLE_D[w[0]]
                expect = NCPoly.word((letter,), integer(sgn))
            else:
                expect = NCPoly.zero()
            if fd != expect:
                return False, ("D", w)
    return True, None


# ---------------------------------------------------------------------------
# degree spaces


def degree_basis(name, n, family=None):
    pres = duality(name).presentation
    words = list(pres.basis(n))
    if name == "s14" and n >= 1:
        if family not in ("ad", "bc"):
            raise ValueError("s14 degree spaces split into the 'ad' and 'bc' halves")
        keep = ("at", "dt") if family == "ad" else ("bt", "ct")
        words = [w for w in words if all(z in keep for z in w)]
    return words


def degree_module(name, n, family=None):
    """The translation action on one degree component (for s14, on one
    half), restricted to the dual letters that preserve the span; the
    excluded letters are listed in the notes."""
    words = degree_basis(name, n, family)
    index = {w: i for i, w in enumerate(words)}
    dim = len(words)
    mats = {}
    excluded = []
    for z in DUAL_LETTERS[name]:
        mat = [[_S0] * dim for _ in range(dim)]
        ok = True
        for j, w in enumerate(words):
            img = right_regular_action(name, (z,), w)
            for w2, c in img.terms.items():
                if w2 not in index:
                    ok = False
                    break
                mat[index[w2]][j] = c
            if not ok:
                break
        if ok:
            mats[z] = mat
        else:
            excluded.append(z)
    rep = ModuleRep(name, ["*".join(w) if w else "1" for w in words], mats,
                    notes=tuple(f"letter {z} does not preserve the span"
                                for z in excluded))
    rep.basis_words = words
    return rep


_SANDWICH_FAMILIES = {
    # family: (first-letter pair (x0, x1), last-letter pair (y0, y1))
    # vector = (x0 + e*x1) . interior . (y0 + i*e'*y1)
    "f1": (("at", "bt"), ("at", "ct")),
    "f2": (("dt", "ct"), ("dt", "bt")),
    "f3": (("at", "bt"), ("dt", "bt")),
    "f4": (("dt", "ct"), ("at", "ct")),
}


def s03_sandwich_vectors(n):
    """Joint eigenvector basis of the degree-n component of the s03
    quotient (n >= 2): every normal word sorts into one of four families
    by its first and last letters, and each (family, interior) group
    carries four sign-labeled vectors."""
    if n < 2:
        raise ValueError("sandwich vectors need degree at least 2")
    words = degree_basis("s03", n)
    groups = {}
    for w in words:
        for fam, ((x0, x1), (y0, y1)) in _SANDWICH_FAMILIES.items():
            if w[0] in (x0, x1) and w[-1] in (y0, y1):
                groups.setdefault((fam, w[1:-1]), []).append(w)
                break
        else:
            raise UnsupportedModuleError(f"word {w} fits no family")
    ii = scalar("i")
    out = []
    pm = (integer(1), integer(-1))
    for (fam, interior), members in sorted(groups.items()):
        (x0, x1), (y0, y1) = _SANDWICH_FAMILIES[fam]
        if sorted(members) != sorted(
                [(x,) + interior + (y,) for x in (x0, x1) for y in (y0, y1)]):
            raise UnsupportedModuleError(f"family {fam} group {interior} incomplete")
        for e in pm:
            for ep in pm:
                vec = {
                    (x0,) + interior + (y0,): _S1,
                    (x1,) + interior + (y0,): e,
                    (x0,) + interior + (y1,): ii * ep,
                    (x1,) + interior + (y1,): ii * e * ep,
                }
                out.append({
                    "family": fam,
                    "interior": interior,
                    "eps": e,
                    "epsp": ep,
                    "vector": vec,
                })
    return out


def s03_degree_report(n):
    """Decomposition data for the degree-n component of the s03 quotient:
    n = 1 gives two isomorphic two-dimensional factors, n >= 2 a basis of
    sign-labeled lines in four isomorphism classes."""
    if n == 0:
        rep = degree_module("s03", 0)
        return {"n": n, "dim": rep.dim, "module": rep,
                "components": decompose(rep)}
    rep = degree_module("s03", n)
    out = {"n": n, "dim": rep.dim, "module": rep}
    if n == 1:
        dec = decompose(rep)
        out["components"] = dec
        return out
    sand = s03_sandwich_vectors(n)
    index = {w: i for i, w in enumerate(rep.basis_words)}
    checked = []
    ii = scalar("i")
    for item in sand:
        v = [_S0] * rep.dim
        for w, c in item["vector"].items():
            v[index[w]] = c
        expect = {"A": integer(n), "B": item["eps"],
                  "C": ii * item["epsp"], "D": _S0}
        ok = all(mat_vec(rep.matrices[z], v) == [lam * x for x in v]
                 for z, lam in expect.items())
        checked.append(ok)
        item["eigen_ok"] = ok
    out["vectors"] = sand
    out["all_eigen"] = all(checked)
    out["count_ok"] = len(sand) == rep.dim == 2 ** (n + 1)
    sizes = {}
    for item in sand:
        sizes[(str(item["eps"]), str(item["epsp"]))] = sizes.get(
            (str(item["eps"]), str(item["epsp"])), 0) + 1
    out["class_sizes"] = sizes
    return out


def _binomial(n, k):
    out = 1
    for j in range(k):
        out = out * (n - j) // (j + 1)
    return out


def s14_halves_mirror(n):
    """The partner action on the second half is the exact negative of the
    action on the first (under the letter swap that matches the bases),
    which is why the two halves share a spectrum."""
    ad = degree_module("s14", n, "ad").matrices["D"]
    bc = degree_module("s14", n, "bc").matrices["D"]
    return all(bc[i][j] == -ad[i][j]
               for i in range(len(ad)) for j in range(len(ad)))


def s14_degree_report(n, family):
    """Spectral data of the degree functional's partner action on one
    half of the degree-n component of the s14 quotient: simple spectrum
    of matching parity, the binomial kernel line at even degree, and the
    two-term recursions the eigenvector coefficients satisfy.  The two
    halves carry mirrored ladder orientations, so the coefficient
    extraction on the second half uses the negated eigenvalue."""
    rep = degree_module("s14", n, family)
    dm = rep.matrices["D"]
    orient = integer(1) if family != "bc" else integer(-1)
    dim = rep.dim
    spectrum = []
    for tau in range(-n, n + 1):
        lam = integer(tau)
        space = _subspace_kernel(dm, lam, _unit_vectors(dim))
        if space:
            spectrum.append((tau, _span(space)))
    mults = {tau: len(vs) for tau, vs in spectrum}
    expected = sorted(t for t in range(-n, n + 1) if (t - n) % 2 == 0)
    out = {
        "n": n,
        "family": family,
        "module": rep,
        "spectrum": sorted(mults),
        "expected_spectrum": expected,
        "multiplicities_simple": all(m == 1 for m in mults.values()),
        "bookkeeping": sum(mults.values()) == n + 1,
        "length_scalar": rep.scalar_action("A") == integer(n),
        "parity_scalar": rep.scalar_action("K") == integer((-1) ** n),
        "counit_like_zero": n == 0 or rep.scalar_action("E") == _S0,
    }
    if n % 2 == 0 and n > 0:
        half = n // 2
        kern = dict(spectrum)[0][0]
        # normalize leading coefficient
        lead = next(x for x in kern if x)
        kern = [x / lead for x in kern]
        binom = [_S0] * dim
        for k in range(half + 1):
            binom[2 * k] = integer(_binomial(half, k))
        out["kernel_binomial"] = kern == binom
    rec_ok = []
    for tau, vecs in spectrum:
        if tau == 0:
            continue
        v = list(vecs[0])
        if not v[0]:
            rec_ok.append(False)
            continue
        lead = v[0]
        v = [x / lead for x in v]
        t = orient * integer(tau)
        alphas = [v[2 * k] for k in range(0, (dim + 1) // 2)]
        betas = [v[2 * k + 1] / t for k in range(0, dim // 2)]
        if n % 2 == 0:
            half = n // 2
            a = alphas + [_S0]
            b = [_S0] + betas + [_S0]  # b[k+1] = beta_k, with beta_{-1} = b[0] = 0
            ok = all(
                t * t * b[k + 1] == integer(2 * (half - k)) * a[k]
                - integer(2 * (k + 1)) * a[k + 1]
                for k in range(half)
            ) and all(
                a[k] == integer(2 * k + 1) * b[k + 1]
                - integer(2 * half - 2 * k + 1) * b[k]
                for k in range(half + 1)
            )
        else:
            half = (n - 1) // 2
            a = alphas + [_S0]
            b = [_S0] + betas
            ok = all(
                t * t * b[k + 1] == integer(2 * half - 2 * k + 1) * a[k]
                - integer(2 * (k + 1)) * a[k + 1]
                for k in range(half + 1)
            ) and all(
                a[k] == integer(2 * k + 1) * b[k + 1]
                - integer(2 * (half - k + 1)) * b[k]
                for k in range(half + 1)
            )
        rec_ok.append(ok)
    out["recursions_ok"] = all(rec_ok) and bool(rec_ok)
    out["descriptors"] = [
        IrrepDescriptor(1, (("A", str(integer(n))), ("B^2", "0"), ("D^2", str(integer(tau * tau)))),
                        (("tau", str(tau)),))
        for tau in sorted(mults)
    ]
    return out


# ---------------------------------------------------------------------------
# catalog assembly


def irrep_catalog(algebra, source, *, weight_letter=None, weight=None,
                  degree=None, family=None, L=6):
    """Rows describing the irreducible factors that a construction
    produces; the shape is stable for machine output."""
    rows = []

    def add(construction, descriptor, members=1, extra=()):
        rows.append({
            "algebra": algebra,
            "construction": construction,
            "dim": descriptor.dim,
            "casimirs": dict(descriptor.casimirs),
            "labels": dict(descriptor.labels) | dict(extra),
            "members": members,
        })

    if source == "lrr":
        if algebra != "s03":
            raise UnsupportedModuleError("left regular catalog exists for s03 only")
        dec = decompose(left_regular())
        for cls in dec.classes:
            add("left-regular", dec.components[cls["members"][0]].descriptor,
                len(cls["members"]))
    elif source == "rrr":
        if algebra == "s03":
            dec = decompose(right_regular())
            for cls in dec.classes:
                add("right-regular", dec.components[cls["members"][0]].descriptor,
                    len(cls["members"]))
        elif algebra == "s14":
            dec = decompose(right_regular_s14(L))
            for cls in dec.classes:
                add("right-regular", dec.components[cls["members"][0]].descriptor,
                    len(cls["members"]),
                    extra=(("window", str(L)),))
        else:
            raise UnsupportedModuleError("right regular catalog: s03 or s14")
    elif source == "weight":
        rep = weight_module(algebra, weight_letter, weight, L=L)
        dec = decompose(rep)
        for cls in dec.classes:
            add(f"weight[{weight_letter}={weight}]",
                dec.components[cls["members"][0]].descriptor,
                len(cls["members"]))
    elif source == "pir":
        if degree is None:
            raise ValueError("degree space catalog needs a degree")
        if algebra == "s03":
            rpt = s03_degree_report(degree)
            if degree <= 1:
                dec = rpt["components"]
                for cls in dec.classes:
                    add(f"degree[{degree}]",
                        dec.components[cls["members"][0]].descriptor,
                        len(cls["members"]))
            else:
                for (e, ep), cnt in sorted(rpt["class_sizes"].items()):
                    add(f"degree[{degree}]",
                        IrrepDescriptor(
                            1,
                            (("A", str(integer(degree))), ("B^2", "1"), ("D^2", "0")),
                            (("eps", e), ("epsp", ep))),
                        cnt)
        elif algebra == "s14":
            for fam in ([family] if family else ["ad", "bc"]):
                rpt = s14_degree_report(degree, fam)
                for desc in rpt["descriptors"]:
                    add(f"degree[{degree}]", desc, 1,
                        extra=(("half", fam),))
        else:
            raise UnsupportedModuleError("degree catalog: s03 or s14")
    else:
        raise ValueError(f"unknown catalog source {source!r}")
    return rows
