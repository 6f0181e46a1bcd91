"""Small dense linear algebra over GF(q): rank, determinant, GL(N, q)."""

from __future__ import annotations

import itertools

from .gf import FieldElement, FieldParams


def rank(rows) -> int:
    """Rank of a matrix (sequence of rows of FieldElements) by Gaussian elimination."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    if any(len(r) != ncols for r in m):
        raise ValueError("ragged matrix")
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def det(rows) -> FieldElement:
    m = [list(r) for r in rows]
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("determinant of a non-square matrix")
    field = m[0][0].field
    d = field.one
    for c in range(n):
        pivot = next((i for i in range(c, n) if m[i][c]), None)
        if pivot is None:
            return field.zero
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            d = -d
        d = d * m[c][c]
        inv = m[c][c].inverse()
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return d


def matvec(g, v):
    return tuple(sum((a * x for a, x in zip(row, v)), v[0].field.zero) for row in g)


def identity(field: FieldParams, n: int):
    return tuple(tuple(field.one if i == j else field.zero for j in range(n)) for i in range(n))


def general_linear_group(field: FieldParams, n: int = 2) -> list:
    """Every invertible n x n matrix, in index order of the flattened entries."""
    out = []
    for flat in itertools.product(field.elements, repeat=n * n):
        g = tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))
        if det(g):
            out.append(g)
    return out


def gl_generators(field: FieldParams, n: int = 2) -> list:
    """Elementary matrices (transvections, diagonal scalings, swaps); they generate GL(n, q)."""
    gens = []
    one = identity(field, n)
    for i, j in itertools.permutations(range(n), 2):
        for t in field.nonzero:
            g = [list(r) for r in one]
            g[i][j] = t
            gens.append(tuple(map(tuple, g)))
        g = [list(r) for r in one]
        g[i], g[j] = g[j], g[i]
        gens.append(tuple(map(tuple, g)))
    for i in range(n):
        for t in field.nonzero[1:]:
            g = [list(r) for r in one]
            g[i][i] = t
            gens.append(tuple(map(tuple, g)))
    return list(dict.fromkeys(gens))
