"""Exact rational linear algebra.

Matrices are lists of rows of ``Fraction``.  Sparse elimination (rows as
dicts) is used for the large intertwiner systems that Hom computations
produce; everything else is plain dense code.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Matrix = list  # list[list[Fraction]]
Vector = list

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def zeros(r: int, c: int) -> Matrix:
    return [[ZERO] * c for _ in range(r)]


def identity(n: int) -> Matrix:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = ONE
    return m


def as_matrix(rows: Iterable[Iterable], ncols: int | None = None) -> Matrix:
    out = [[frac(x) for x in row] for row in rows]
    if ncols is not None and not out:
        return []
    return out


def shape(a: Matrix, ncols: int | None = None) -> tuple[int, int]:
    if not a:
        return 0, (ncols or 0)
    return len(a), len(a[0])


def transpose(a: Matrix, ncols: int = 0) -> Matrix:
    if not a:
        return [[] for _ in range(ncols)]
    return [list(col) for col in zip(*a)]


def matmul(a: Matrix, b: Matrix, inner: int | None = None, bcols: int | None = None) -> Matrix:
    """a (r x k) times b (k x c).  Empty dimensions need explicit sizes."""
    r = len(a)
    k = len(b) if inner is None else inner
    if bcols is None:
        bcols = len(b[0]) if b else 0
    if r == 0:
        return []
    if k == 0:
        return zeros(r, bcols)
    out = []
    for row in a:
        acc = [ZERO] * bcols
        for t, x in enumerate(row):
            if x:
                brow = b[t]
                for j in range(bcols):
                    y = brow[j]
                    if y:
                        acc[j] += x * y
        out.append(acc)
    return out


def matvec(a: Matrix, v: Sequence) -> Vector:
    return [sum((x * y for x, y in zip(row, v) if x and y), ZERO) for row in a]


def vecmat(v: Sequence, a: Matrix, ncols: int | None = None) -> Vector:
    if ncols is None:
        ncols = len(a[0]) if a else 0
    out = [ZERO] * ncols
    for x, row in zip(v, a):
        if x:
            for j, y in enumerate(row):
                if y:
                    out[j] += x * y
    return out


def add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(r, s)] for r, s in zip(a, b)]


def scale(a: Matrix, c) -> Matrix:
    c = frac(c)
    return [[c * x for x in r] for r in a]


def is_zero(a: Matrix) -> bool:
    return all(not x for row in a for x in row)


def block_diag(blocks: Sequence[Matrix], shapes: Sequence[tuple[int, int]]) -> Matrix:
    R = sum(s[0] for s in shapes)
    C = sum(s[1] for s in shapes)
    out = zeros(R, C)
    r0 = c0 = 0
    for blk, (r, c) in zip(blocks, shapes):
        for i in range(r):
            for j in range(c):
                out[r0 + i][c0 + j] = blk[i][j]
        r0 += r
        c0 += c
    return out


# --- sparse elimination -------------------------------------------------

def _sparse_rref(rows: list[dict], ncols: int) -> tuple[list[dict], list[int]]:
    """Reduced row echelon form of sparse rows.  Returns (rows, pivots)."""
    pivots: list[int] = []
    basis: list[dict] = []
    pivot_of: dict[int, int] = {}
    for row in rows:
        r = {k: frac(v) for k, v in row.items() if v}
        # reduce against existing pivots
        while r:
            hit = [c for c in r if c in pivot_of]
            if not hit:
                break
            for c in hit:
                if c not in r:
                    continue
                coef = r[c]
                prow = basis[pivot_of[c]]
                for k, v in prow.items():
                    nv = r.get(k, ZERO) - coef * v
                    if nv:
                        r[k] = nv
                    else:
                        r.pop(k, None)
        if not r:
            continue
        p = min(r)
        inv = 1 / r[p]
        r = {k: v * inv for k, v in r.items()}
        # eliminate p from earlier rows
        for idx, prow in enumerate(basis):
            if p in prow:
                coef = prow[p]
                for k, v in r.items():
                    nv = prow.get(k, ZERO) - coef * v
                    if nv:
                        prow[k] = nv
                    else:
                        prow.pop(k, None)
        pivot_of[p] = len(basis)
        basis.append(r)
        pivots.append(p)
    order = sorted(range(len(basis)), key=lambda i: pivots[i])
    return [basis[i] for i in order], [pivots[i] for i in order]


def sparse_nullspace(rows: list[dict], ncols: int) -> list[Vector]:
    """Basis of {x : row . x = 0 for all rows}."""
    red, piv = _sparse_rref(rows, ncols)
    pivset = set(piv)
    free = [c for c in range(ncols) if c not in pivset]
    out = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for row, p in zip(red, piv):
            c = row.get(f)
            if c:
                v[p] = -c
        out.append(v)
    return out


def _to_sparse(a: Matrix) -> list[dict]:
    return [{j: x for j, x in enumerate(row) if x} for row in a]


def rref(a: Matrix, ncols: int | None = None) -> tuple[Matrix, list[int]]:
    if ncols is None:
        ncols = len(a[0]) if a else 0
    red, piv = _sparse_rref(_to_sparse(a), ncols)
    dense = []
    for row in red:
        d = [ZERO] * ncols
        for k, v in row.items():
            d[k] = v
        dense.append(d)
    return dense, piv


def rank(a: Matrix) -> int:
    if not a:
        return 0
    return len(_sparse_rref(_to_sparse(a), len(a[0]))[1])


def nullspace(a: Matrix, ncols: int | None = None) -> list[Vector]:
    """Right kernel basis of a."""
    if ncols is None:
        ncols = len(a[0]) if a else 0
    return sparse_nullspace(_to_sparse(a), ncols)


def left_nullspace(a: Matrix, nrows: int | None = None) -> list[Vector]:
    if nrows is None:
        nrows = len(a)
    return nullspace(transpose(a), nrows)


def row_space(vectors: Sequence[Vector], ncols: int) -> list[Vector]:
    red, _ = rref([list(v) for v in vectors], ncols)
    return red


def column_basis_indices(a: Matrix) -> list[int]:
    """Indices of a maximal independent set of columns (pivot columns)."""
    if not a:
        return []
    return rref(a)[1]


def independent_subset(vectors: Sequence[Vector], ncols: int) -> list[int]:
    """Greedy indices of vectors forming a basis of their span."""
    chosen: list[int] = []
    piv_rows: list[dict] = []
    for i, v in enumerate(vectors):
        trial = piv_rows + [{j: x for j, x in enumerate(v) if x}]
        red, piv = _sparse_rref(trial, ncols)
        if len(piv) > len(piv_rows):
            chosen.append(i)
            piv_rows = red
    return chosen


def solve(a: Matrix, b: Vector, ncols: int | None = None) -> Vector | None:
    """One solution x of a x = b, or None."""
    if ncols is None:
        ncols = len(a[0]) if a else 0
    aug = [list(row) + [frac(bi)] for row, bi in zip(a, b)]
    red, piv = rref(aug, ncols + 1)
    if ncols in piv:
        return None
    x = [ZERO] * ncols
    for row, p in zip(red, piv):
        x[p] = row[ncols]
    return x


def solve_many(a: Matrix, bs: Sequence[Vector], ncols: int) -> list[Vector] | None:
    """Solve a x = b for several right-hand sides at once."""
    k = len(bs)
    aug = []
    for i, row in enumerate(a):
        aug.append(list(row) + [frac(b[i]) for b in bs])
    red, piv = rref(aug, ncols + k)
    if any(p >= ncols for p in piv):
        return None
    out = []
    for t in range(k):
        x = [ZERO] * ncols
        for row, p in zip(red, piv):
            x[p] = row[ncols + t]
        out.append(x)
    return out


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [list(map(frac, row)) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(a)]
    red, piv = rref(aug, 2 * n)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red[:n]]


def det(a: Matrix) -> Fraction:
    n = len(a)
    m = [list(map(frac, row)) for row in a]
    d = ONE
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c]), None)
        if p is None:
            return ZERO
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d *= m[c][c]
        inv = 1 / m[c][c]
        for r in range(c + 1, n):
            if m[r][c]:
                f = m[r][c] * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return d


def inertia(g: Matrix) -> tuple[int, int, int]:
    """(n_plus, n_minus, n_zero) of a symmetric rational matrix.

    Symmetric Gaussian elimination (congruence), with the usual 2x2 pivot
    trick when the diagonal vanishes.
    """
    m = [list(map(frac, row)) for row in g]
    n = len(m)
    pos = neg = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if m[i][i]), None)
        if piv is None:
            # all diagonal zero: find off-diagonal entry and rotate
            pair = next(((i, j) for i in active for j in active if i < j and m[i][j]), None)
            if pair is None:
                break
            i, j = pair
            # row_i += row_j, col_i += col_j  makes m[i][i] = 2 m[i][j]
            for k in range(n):
                m[i][k] += m[j][k]
            for k in range(n):
                m[k][i] += m[k][j]
            piv = i
        d = m[piv][piv]
        if d > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        for r in active:
            if m[r][piv]:
                f = m[r][piv] / d
                for k in active:
                    m[r][k] -= f * m[piv][k]
                m[r][piv] = ZERO
        for r in active:
            m[piv][r] = ZERO
    return pos, neg, n - pos - neg


def smith_diagonal(a: list[list[int]]) -> list[int]:
    """Nonzero invariant factors of an integer matrix."""
    m = [list(map(int, row)) for row in a]
    if not m or not m[0]:
        return []
    rows, cols = len(m), len(m[0])
    diag = []
    t = 0
    while t < min(rows, cols):
        # pick smallest nonzero |entry| in submatrix
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if m[i][j] and (best is None or abs(m[i][j]) < abs(m[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        m[t], m[i] = m[i], m[t]
        for row in m:
            row[t], row[j] = row[j], row[t]
        while True:
            done = True
            p = m[t][t]
            for i in range(t + 1, rows):
                q = m[i][t] // p
                if q:
                    m[i] = [x - q * y for x, y in zip(m[i], m[t])]
                if m[i][t]:
                    done = False
            for j in range(t + 1, cols):
                q = m[t][j] // p
                if q:
                    for row in m:
                        row[j] -= q * row[t]
                if m[t][j]:
                    done = False
            if done:
                # divisibility condition
                bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if m[i][j] % p), None)
                if bad is None:
                    break
                m[t] = [x + y for x, y in zip(m[t], m[bad[0]])]
                continue
            # move smallest remaining entry of row/col t to pivot
            best = (t, t)
            for i in range(t, rows):
                if m[i][t] and abs(m[i][t]) < abs(m[best[0]][best[1]]):
                    best = (i, t)
            for j in range(t, cols):
                if m[t][j] and abs(m[t][j]) < abs(m[best[0]][best[1]]):
                    best = (t, j)
            i, j = best
            m[t], m[i] = m[i], m[t]
            for row in m:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(m[t][t]))
        t += 1
    return diag


def extend_to_basis(vectors: Sequence[Vector], n: int) -> list[Vector]:
    """Standard unit vectors completing the span of `vectors` to Q^n."""
    red, piv = rref([list(v) for v in vectors], n) if vectors else ([], [])
    pivset = set(piv)
    out = []
    for j in range(n):
        if j not in pivset:
            e = [ZERO] * n
            e[j] = ONE
            out.append(e)
    return out


def coordinates(basis: Sequence[Vector], v: Vector, n: int) -> Vector | None:
    """Coefficients c with sum c_i basis_i = v, or None."""
    if not basis:
        return [] if all(not x for x in v) else None
    return solve(transpose([list(b) for b in basis]), list(v), len(basis))
