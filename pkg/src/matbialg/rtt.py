"""Relation extraction from 4x4 R-matrices.

Given an invertible-or-not 4x4 matrix R over the scalar field, the sixteen
components of R·T1·T2 − T2·T1·R (with T the 2x2 matrix of free generators
a, b, c, d; T1 = T⊗1, T2 = 1⊗T) are quadratic polynomials whose span
generates the defining ideal of a matrix bialgebra.  This module extracts
that span canonically, verifies the Yang–Baxter equation exactly, applies
gauge conjugations, and compares the resulting ideals.

Index convention (fixed once, verified against the known relation sets):
the row of R is the pair (i,k), the column the pair (m,n), flattened as
2i+k; component (ik),(jl) of the defining equation reads

    sum_{m,n} R[(ik),(mn)] T[m][j] T[n][l]
  = sum_{m,n} T[k][n] T[i][m] R[(mn),(jl)].
"""

from __future__ import annotations

import re
from itertools import product

from .bialgebra import MATRIX_IN_SYM, MATRIX_LETTERS, SYM_LETTERS
from .freealg import (NCPoly, RewriteSystem, echelonize, leading_word,
                      linear_reduce, ncparse, span_equal)
from .linalg import identity, inverse, kron, mat_eq, mat_mul, smat
from .scalars import ONE, Q, QI, Scalar, scalar

# ---------------------------------------------------------------------------
# registry of built-in R-matrices
# ---------------------------------------------------------------------------

_Z = Scalar.from_int(0)
_1 = ONE


def _build_registry():
    reg = {
        # eight-relation bialgebra
        "S03": smat([[1, 0, 0, 1],
                     [0, 1, 1, 0],
                     [0, 1, -1, 0],
                     [-1, 0, 0, 1]]),
        # generic-parameter anti-diagonal family
        "S14": [[_Z, _Z, _Z, Q],
                [_Z, _Z, _1, _Z],
                [_Z, _1, _Z, _Z],
                [Q, _Z, _Z, _Z]],
        # one-parameter slice (both deformation parameters set equal) of the
        # standard two-parameter upper-triangular family
        "S21": [[_1, _Z, _Z, _Z],
                [_Z, Q, _1 - Q * Q, _Z],
                [_Z, _Z, Q, _Z],
                [_Z, _Z, _Z, _1]],
        # diagonal gauge-normal form reached at parameter -1
        "R0": smat([[1, 0, 0, 0],
                    [0, -1, 0, 0],
                    [0, 0, -1, 0],
                    [0, 0, 0, 1]]),
        # controls
        "ID": identity(4),
        "FLIP": smat([[1, 0, 0, 0],
                      [0, 0, 1, 0],
                      [0, 1, 0, 0],
                      [0, 0, 0, 1]]),
    }
    reg["S14q1"] = specialize_rmatrix(reg["S14"], 1)
    reg["S14qm1"] = specialize_rmatrix(reg["S14"], -1)
    return reg


def specialize_rmatrix(R, q0):
    """Evaluate every entry at q = q0 (exact; raises PoleError at poles)."""
    return [[Scalar.from_qi(e.specialize(q0)) for e in row] for row in R]


def rmatrix(key):
    """Fetch a built-in R-matrix by name (a fresh copy)."""
    if key not in RMATRICES:
        raise KeyError(f"unknown R-matrix {key!r}; have {sorted(RMATRICES)}")
    return [row[:] for row in RMATRICES[key]]


# ---------------------------------------------------------------------------
# RTT extraction
# ---------------------------------------------------------------------------

def rtt_components(R, letters=MATRIX_LETTERS):
    """The 16 raw components of R·T1·T2 − T2·T1·R, row-major in (i,k,j,l)."""
    a_, b_, c_, d_ = (NCPoly.letter(x) for x in letters)
    T = [[a_, b_], [c_, d_]]

    def idx(i, k):
        return 2 * i + k

    comps = []
    for i in (0, 1):
        for k in (0, 1):
            for j in (0, 1):
                for l in (0, 1):
                    lhs = NCPoly.zero()
                    rhs = NCPoly.zero()
                    for m in (0, 1):
                        for n in (0, 1):
                            cl = R[idx(i, k)][idx(m, n)]
                            if cl:
                                lhs = lhs + T[m][j] * T[n][l] * cl
                            cr = R[idx(m, n)][idx(j, l)]
                            if cr:
                                rhs = rhs + T[k][n] * T[i][m] * cr
                    comps.append(lhs - rhs)
    return comps


def rtt_relations(R, letters=MATRIX_LETTERS):
    """Canonical (echelonized) generating set of the ideal cut out by R."""
    return echelonize(rtt_components(R, letters), letters)


# ---------------------------------------------------------------------------
# Yang-Baxter and gauge transformations
# ---------------------------------------------------------------------------

def _r13(R):
    out = [[_Z] * 8 for _ in range(8)]
    for i in (0, 1):
        for j in (0, 1):
            for k in (0, 1):
                for i2 in (0, 1):
                    for k2 in (0, 1):
                        out[4 * i + 2 * j + k][4 * i2 + 2 * j + k2] = \
                            R[2 * i + k][2 * i2 + k2]
    return out


def yang_baxter_residue(R):
    """R12·R13·R23 − R23·R13·R12 as an exact 8x8 matrix."""
    i2 = identity(2)
    r12 = kron(R, i2)
    r23 = kron(i2, R)
    r13 = _r13(R)
    lhs = mat_mul(mat_mul(r12, r13), r23)
    rhs = mat_mul(mat_mul(r23, r13), r12)
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(lhs, rhs)]


def yang_baxter(R) -> bool:
    return all(not x for row in yang_baxter_residue(R) for x in row)


GAUGE_PLUS = smat([[1, 1], [1, -1]])
GAUGE_MINUS = [[_1, Scalar.from_qi(QI(0, 1))],
               [Scalar.from_qi(QI(0, 1)), _1]]


def gauge_conjugate(R, U):
    """(U ⊗ U) · R · (U ⊗ U)^{-1}.  Overall scaling of U is irrelevant, so
    the gauge matrices are stored unnormalized with entries in {1, -1, i}."""
    W = kron(U, U)
    Winv = inverse(W)
    if Winv is None:
        raise ValueError("gauge matrix is singular")
    return mat_mul(mat_mul(W, R), Winv)


# ---------------------------------------------------------------------------
# canonical relation sets and ideal comparison
# ---------------------------------------------------------------------------

def canonical_relations(key):
    """Frozen reference relation sets in the matrix letters a, b, c, d."""
    P = lambda s: ncparse(s, MATRIX_LETTERS)
    if key == "s03":
        return [P("b*b + c*c"), P("a*a - d*d"),
                P("c*d - b*a"), P("d*c + a*b"),
                P("b*d - c*a"), P("d*b + a*c"),
                P("d*a - a*d"), P("c*b + b*c")]
    if key == "s14":
        return [P("b*b - c*c"), P("a*a - d*d"),
                P("a*b"), P("b*a"), P("a*c"), P("c*a"),
                P("b*d"), P("d*b"), P("c*d"), P("d*c")]
    if key == "s14q1":
        return [P("a*a - d*d"), P("b*b - c*c"),
                P("a*b - c*d"), P("b*a - d*c"),
                P("c*a - d*b"), P("a*c - b*d")]
    if key == "s14qm1":
        return [P("a*a - d*d"), P("b*b - c*c"),
                P("a*b + c*d"), P("b*a + d*c"),
                P("c*a + d*b"), P("a*c + b*d")]
    if key == "commutative":
        out = []
        for j, x in enumerate(MATRIX_LETTERS):
            for y in MATRIX_LETTERS[:j]:
                out.append(ncparse(f"{x}*{y} - {y}*{x}", MATRIX_LETTERS))
        return out
    raise KeyError(f"no canonical relation set {key!r}")


def relations_in_sym(relations):
    """Rewrite matrix-letter relations in the symmetrized letters and
    echelonize there."""
    mapped = [r.map_letters(MATRIX_IN_SYM) for r in relations]
    return echelonize(mapped, SYM_LETTERS)


def _padded_products(rels, alphabet, deg):
    """All u·r·v of the given total degree (relations must be homogeneous)."""
    out = []
    for r in rels:
        rdeg = r.max_degree()
        if any(len(w) != rdeg for w in r.terms):
            raise ValueError("degree-sliced comparison needs homogeneous relations")
        pad = deg - rdeg
        if pad < 0:
            continue
        for lsize in range(pad + 1):
            for u in product(alphabet, repeat=lsize):
                for v in product(alphabet, repeat=pad - lsize):
                    out.append(NCPoly.word(u) * r * NCPoly.word(v))
    return out


def ideal_contained_upto(rels_src, rels_tgt, alphabet, maxdeg=4):
    """Degree-by-degree ideal containment: every padded product u·r·v from
    the source set must reduce to zero against the echelonized degree slice
    of the target ideal.  Linear reduction against a full degree slice is
    decisive (no confluence assumption).  Returns (ok, witness_or_None)."""
    index = {x: j for j, x in enumerate(alphabet)}
    for deg in range(2, maxdeg + 1):
        slice_tgt = echelonize(_padded_products(rels_tgt, alphabet, deg), alphabet)
        pivots = {leading_word(p, index): p for p in slice_tgt}
        for probe in _padded_products(rels_src, alphabet, deg):
            if linear_reduce(probe, pivots, index):
                return False, (deg, probe)
    return True, None


def ideal_equal_quadratic(rels_a, rels_b, alphabet, maxdeg=4):
    """Ideal equality for sets of homogeneous quadratic relations.

    The decisive test is equality of the degree-2 linear spans (complete for
    quadratic generating sets); on top of that, every padded product up to
    `maxdeg` is reduced to zero against the other side's oriented rules, in
    both directions.  Returns (ok, report)."""
    spans = span_equal(rels_a, rels_b, alphabet)
    ab, wit_ab = ideal_contained_upto(rels_a, rels_b, alphabet, maxdeg)
    ba, wit_ba = ideal_contained_upto(rels_b, rels_a, alphabet, maxdeg)
    ok = spans and ab and ba
    return ok, {
        "degree2_span_equal": spans,
        "a_reduces_into_b": ab,
        "b_reduces_into_a": ba,
        "witness": wit_ab or wit_ba,
    }


# ---------------------------------------------------------------------------
# R-matrix text format: 16 scalar expressions, row-major; '#' starts a comment
# ---------------------------------------------------------------------------

def format_rmatrix(R) -> str:
    return "\n".join(", ".join(str(e) for e in row) for row in R) + "\n"


def parse_rmatrix_text(text):
    fields = []
    for ln, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0]
        for m in re.finditer(r"[^,;\s]+", body):
            fields.append((m.group(), ln, m.start() + 1))
    if len(fields) != 16:
        raise ValueError(f"expected 16 entries, found {len(fields)}")
    vals = []
    for f, ln, col in fields:
        try:
            vals.append(scalar(f))
        except Exception as e:
            raise ValueError(
                f"line {ln}, column {col}: unreadable entry {f!r} ({e})"
            ) from e
    return [vals[4 * j:4 * j + 4] for j in range(4)]


def load_rmatrix(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_rmatrix_text(fh.read())


RMATRICES = _build_registry()
RMATRIX_NAMES = tuple(sorted(RMATRICES))
