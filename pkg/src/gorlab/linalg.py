"""Scalar-generic linear algebra for orthogonal representations.

Two modes share one set of entry points:

* ``"exact"`` -- entries are ``int`` or ``fractions.Fraction``; every
  predicate is decided without tolerance.  Integer inputs stay integer
  throughout (fraction-free elimination), which keeps the construction fast.
* ``"float"`` -- entries are floats handled by numpy; rank decisions use a
  relative singular-value threshold ``eps``.

Vectors are plain sequences of scalars; a "list of vectors" is read as the
columns of a matrix.  Matrices are lists of rows.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, islice
from math import gcd, lcm
from typing import Optional, Sequence

import numpy as np

EXACT = "exact"
FLOAT = "float"
MODES = (EXACT, FLOAT)

DEFAULT_EPS = 1e-9


class DimensionError(ValueError):
    """Operands have inconsistent shapes."""


class ModeError(ValueError):
    """Operation is not available in the requested scalar mode."""


def _check_mode(mode):
    if mode not in MODES:
        raise ModeError(f"unknown mode {mode!r}; expected one of {MODES}")


def _common_dim(vectors, dim=None):
    for v in vectors:
        if dim is None:
            dim = len(v)
        elif len(v) != dim:
            raise DimensionError(f"vector of length {len(v)} in a family of dimension {dim}")
    return dim


def _exact_div(a, b):
    # Division known to be exact; keep ints as ints.
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        assert r == 0, "inexact fraction-free division"
        return q
    return Fraction(a) / b


def dot(u, v):
    if len(u) != len(v):
        raise DimensionError(f"dot of lengths {len(u)} and {len(v)}")
    return sum((a * b for a, b in zip(u, v)), 0)


def gram(columns: Sequence[Sequence]) -> list[list]:
    """Matrix of pairwise inner products of ``columns`` (k x k, symmetric)."""
    _common_dim(columns)
    k = len(columns)
    g = [[0] * k for _ in range(k)]
    for a in range(k):
        for b in range(a, k):
            g[a][b] = g[b][a] = dot(columns[a], columns[b])
    return g


def _check_square(m):
    k = len(m)
    for row in m:
        if len(row) != k:
            raise DimensionError(f"matrix is not square ({k} rows, row of length {len(row)})")
    return k


def determinant(m: Sequence[Sequence]):
    """Exact determinant by Bareiss fraction-free elimination.

    Integer matrices never leave the integers.  The 0 x 0 determinant is 1.
    """
    k = _check_square(m)
    if k == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for c in range(k - 1):
        if a[c][c] == 0:
            for r in range(c + 1, k):
                if a[r][c] != 0:
                    a[c], a[r] = a[r], a[c]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[c][c]
        for r in range(c + 1, k):
            arc = a[r][c]
            row_r, row_c = a[r], a[c]
            for j in range(c + 1, k):
                row_r[j] = _exact_div(row_r[j] * piv - arc * row_c[j], prev)
            row_r[c] = 0
        prev = piv
    return sign * a[k - 1][k - 1]


def adjugate(m: Sequence[Sequence]) -> list[list]:
    """Classical adjugate, ``m @ adjugate(m) == determinant(m) * I``.

    Nonsingular input goes through fraction-free Gauss-Jordan on ``[m | I]``;
    singular input falls back to cofactors.
    """
    k = _check_square(m)
    if k == 0:
        return []
    if k == 1:
        return [[1]]
    adj = _adjugate_gauss_jordan(m, k)
    if adj is not None:
        return adj
    return _adjugate_cofactors(m, k)


def _adjugate_gauss_jordan(m, k):
    # Fraction-free Gauss-Jordan: after the last pivot the left block is
    # det * I (up to the row-swap sign) and the right block is the adjugate.
    a = [list(row) + [1 if i == j else 0 for j in range(k)] for i, row in enumerate(m)]
    width = 2 * k
    sign = 1
    prev = 1
    for c in range(k):
        if a[c][c] == 0:
            for r in range(c + 1, k):
                if a[r][c] != 0:
                    a[c], a[r] = a[r], a[c]
                    sign = -sign
                    break
            else:
                return None
        piv = a[c][c]
        row_c = a[c]
        for r in range(k):
            if r == c:
                continue
            row_r = a[r]
            arc = row_r[c]
            for j in range(width):
                if j == c:
                    continue
                row_r[j] = _exact_div(row_r[j] * piv - arc * row_c[j], prev)
            row_r[c] = 0
        prev = piv
    # Row swaps were applied to [m | I]; the right block is then det(P m) * (P m)^-1 * P
    # = sign * det(m) * m^-1, so the correction factor is ``sign``.
    return [[sign * a[r][k + j] for j in range(k)] for r in range(k)]


def _adjugate_cofactors(m, k):
    adj = [[0] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            minor = [row[:j] + row[j + 1:] for r, row in enumerate(m) if r != i]
            minor = [list(r) for r in minor]
            adj[j][i] = (-1) ** (i + j) * determinant(minor)
    return adj


def matmul(a, b):
    return [[sum((x * y for x, y in zip(row, col)), 0) for col in zip(*b)] for row in a]


def _rank_exact(columns):
    dim = _common_dim(columns)
    if not columns or dim == 0:
        return 0
    # Rows of the eliminated matrix are the input vectors; rank is symmetric.
    a = [list(v) for v in columns]
    rows, cols = len(a), dim
    rank = 0
    prev = 1
    for c in range(cols):
        if rank == rows:
            break
        pivot_row = None
        for r in range(rank, rows):
            if a[r][c] != 0:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        a[rank], a[pivot_row] = a[pivot_row], a[rank]
        piv = a[rank][c]
        row_p = a[rank]
        for r in range(rank + 1, rows):
            row_r = a[r]
            arc = row_r[c]
            for j in range(c + 1, cols):
                row_r[j] = _exact_div(row_r[j] * piv - arc * row_p[j], prev)
            row_r[c] = 0
        prev = piv
        rank += 1
    return rank


def _as_float_matrix(columns, dim=None):
    dim = _common_dim(columns, dim)
    if not columns:
        return np.zeros((dim or 0, 0))
    return np.array([[float(x) for x in v] for v in columns], dtype=float).T


def singular_values(columns) -> np.ndarray:
    mat = _as_float_matrix(columns)
    if mat.size == 0:
        return np.zeros(0)
    return np.linalg.svd(mat, compute_uv=False)


def rank(columns: Sequence[Sequence], mode: str = EXACT, eps: float = DEFAULT_EPS) -> int:
    """Rank of the matrix whose columns are ``columns``.

    Exact mode uses fraction-free elimination.  Float mode counts singular
    values above ``eps`` times the largest one.
    """
    _check_mode(mode)
    if mode == EXACT:
        return _rank_exact(columns)
    s = singular_values(columns)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > eps * s[0]))


def complement_map(preceding: Sequence[Sequence], w: Sequence, mode: str = EXACT):
    """Map ``w`` into the orthogonal complement of ``span(preceding)``.

    Returns ``det(G) * w - V @ adj(G) @ V.T @ w`` with ``V`` the matrix whose
    columns are ``preceding`` and ``G = V.T @ V``.  The result is orthogonal
    to every preceding vector, vanishes identically when they are dependent,
    and for independent ``preceding`` equals ``det(G)`` times the orthogonal
    projection of ``w``, so it sweeps the whole complement as ``w`` varies.
    """
    _check_mode(mode)
    dim = len(w)
    _common_dim(preceding, dim)
    if not preceding:
        return list(w) if mode == EXACT else [float(x) for x in w]
    if mode == FLOAT:
        v = np.array([[float(x) for x in p] for p in preceding]).T
        wf = np.array([float(x) for x in w])
        g = v.T @ v
        det_g = np.linalg.det(g)
        adj_g = _float_adjugate(g)
        return list(det_g * wf - v @ (adj_g @ (v.T @ wf)))
    g = gram(preceding)
    det_g = determinant(g)
    adj_g = adjugate(g)
    vt_w = [dot(p, w) for p in preceding]
    coeffs = [sum((adj_g[a][b] * vt_w[b] for b in range(len(vt_w))), 0) for a in range(len(vt_w))]
    out = []
    for d in range(dim):
        s = det_g * w[d]
        for c, p in zip(coeffs, preceding):
            s -= p[d] * c
        out.append(s)
    return out


def _float_adjugate(g):
    k = g.shape[0]
    adj = np.empty_like(g)
    for i in range(k):
        for j in range(k):
            minor = np.delete(np.delete(g, i, axis=0), j, axis=1)
            adj[j, i] = (-1) ** (i + j) * (np.linalg.det(minor) if minor.size else 1.0)
    return adj


def primitive(v: Sequence) -> tuple[int, ...]:
    """Smallest integer vector that is a positive multiple of rational ``v``."""
    fracs = [Fraction(x) for x in v]
    den = 1
    for f in fracs:
        den = lcm(den, f.denominator)
    ints = [int(f * den) for f in fracs]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(0 for _ in ints)
    return tuple(x // g for x in ints)


def is_zero(v, mode: str = EXACT) -> bool:
    if mode == EXACT:
        return all(x == 0 for x in v)
    return not np.any(np.asarray(v, dtype=float))


def general_position(
    vectors: Sequence[Sequence], dim: int, mode: str = EXACT, eps: float = DEFAULT_EPS
) -> Optional[tuple[int, ...]]:
    """Check that every ``dim`` of ``vectors`` are linearly independent.

    Returns ``None`` when they are, otherwise the lexicographically first
    index subset of size ``dim`` that is dependent.  In float mode each vector
    is normalized first so that the relative threshold is scale-free.
    """
    n = len(vectors)
    if dim < 1:
        raise ValueError("dimension must be at least 1")
    if n < dim:
        raise DimensionError(f"need at least {dim} vectors, got {n}")
    _common_dim(vectors, dim)
    if mode == EXACT:
        return _general_position_exact(vectors, dim)
    vectors = [_unit(v) for v in vectors]
    for subset in combinations(range(n), dim):
        if not subset_independent([vectors[i] for i in subset], mode, eps):
            return subset
    return None


def _general_position_exact(vectors, dim, chunk=4096):
    ints = [_integral(v) for v in vectors]
    res = np.array([[x % _PRIME for x in v] for v in ints], dtype=np.int64)
    subsets = combinations(range(len(vectors)), dim)
    while True:
        batch = list(islice(subsets, chunk))
        if not batch:
            return None
        idx = np.array(batch, dtype=np.intp)
        dets = _dets_mod(res[idx], _PRIME)
        # Nonzero residue proves independence; zero residues are settled exactly.
        for j in np.flatnonzero(dets == 0):
            subset = batch[j]
            if determinant([ints[i] for i in subset]) == 0:
                return subset


def subset_independent(vectors, mode: str = EXACT, eps: float = DEFAULT_EPS) -> bool:
    """True when the square family ``vectors`` (len == dimension) is a basis."""
    if mode == EXACT:
        rows = [_integral(v) for v in vectors]
        if any(not any(r) for r in rows):
            return False
        return determinant(rows) != 0
    return rank([_unit(v) for v in vectors], FLOAT, eps) == len(vectors)


# Below 2**31 so that products of residues fit in int64.
_PRIME = 2_147_483_647


def _integral(v):
    if all(isinstance(x, int) for x in v):
        return list(v)
    return list(primitive(v))


def _modinv(x, p):
    # Fermat inverse, vectorized; zero maps to zero.
    result = np.ones_like(x)
    base = x % p
    e = p - 2
    while e:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return np.where(x == 0, 0, result)


def _dets_mod(mats, p):
    """Determinants over GF(p) of a stack of square int64 matrices."""
    a = np.array(mats, dtype=np.int64) % p
    count, k, _ = a.shape
    det = np.ones(count, dtype=np.int64)
    rows = np.arange(count)
    for c in range(k):
        nz = a[:, c:, c] != 0
        has = nz.any(axis=1)
        piv = np.argmax(nz, axis=1) + c
        swap = has & (piv != c)
        if swap.any():
            r = rows[swap]
            top = a[r, c].copy()
            a[r, c] = a[r, piv[swap]]
            a[r, piv[swap]] = top
            det[swap] = (p - det[swap]) % p
        pv = a[:, c, c]
        det = np.where(has, det * pv % p, 0)
        if c + 1 < k:
            f = a[:, c + 1:, c] * _modinv(pv, p)[:, None] % p
            a[:, c + 1:, :] = (a[:, c + 1:, :] - f[:, :, None] * a[:, None, c, :] % p) % p
    return det


def _unit(v):
    a = np.asarray([float(x) for x in v])
    nrm = np.linalg.norm(a)
    return a / nrm if nrm > 0 else a


def orthonormal_complement_basis(
    preceding: Sequence[Sequence], dim: int, mode: str = FLOAT, eps: float = DEFAULT_EPS
) -> np.ndarray:
    """Orthonormal basis of ``span(preceding)``'s orthogonal complement in R^dim.

    Returned as an array of shape ``(dim - rank, dim)``, one basis vector per
    row.  Float mode only: normalization needs square roots.
    """
    if mode != FLOAT:
        raise ModeError("orthonormal_complement_basis needs float mode")
    _common_dim(preceding, dim)
    if not preceding:
        return np.eye(dim)
    mat = np.array([[float(x) for x in p] for p in preceding])
    # Right singular vectors beyond the numerical rank span the null space of mat.
    _, s, vt = np.linalg.svd(mat, full_matrices=True)
    r = int(np.count_nonzero(s > eps * s[0])) if s.size and s[0] > 0 else 0
    return vt[r:]
