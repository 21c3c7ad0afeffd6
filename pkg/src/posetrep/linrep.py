"""Representations of bound quiver algebras over Q: Hom, Ext, resolutions, AR translates.

Conventions: left modules are covariant representations, an arrow s -> t acts
by a (dim M_t x dim M_s) matrix, P(i) has basis the paths starting at i, so
Hom(P(i), M) = M_i, and I(i)_j is the dual of the paths j -> i.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import sympy

from . import linalg as la
from .algebra import AlgebraMismatch, BoundAlgebra

ZERO, ONE = la.ZERO, la.ONE


class NotIndecomposable(ValueError):
    pass


class RelationViolated(ValueError):
    pass


def _mat(rows, r, c):
    if r == 0:
        return []
    m = [[la.frac(x) for x in row] for row in rows]
    if len(m) != r or any(len(row) != c for row in m):
        raise ValueError(f"expected a {r}x{c} matrix")
    return m


def _mul(a, b, r, k, c):
    """(r x k)(k x c) with explicit sizes so empty blocks behave."""
    if r == 0:
        return []
    if k == 0 or c == 0:
        return la.zeros(r, c)
    return la.matmul(a, b, k, c)


def _eye(n):
    return la.identity(n)


@dataclass(frozen=True, eq=False)
class Representation:
    algebra: BoundAlgebra
    dims: tuple
    maps: tuple  # per arrow, a dims[t] x dims[s] matrix

    @staticmethod
    def make(alg: BoundAlgebra, dims, maps, check: bool = True) -> "Representation":
        dims = tuple(int(d) for d in dims)
        if len(dims) != alg.n or len(maps) != len(alg.arrows):
            raise ValueError("dims/maps do not match the algebra")
        mm = tuple(_mat(m, dims[t], dims[s]) for m, (s, t) in zip(maps, alg.arrows))
        rep = Representation(alg, dims, mm)
        if check:
            rep.check_relations()
        return rep

    def __repr__(self):
        return f"Rep{list(self.dims)}"

    @property
    def total(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total == 0

    def path_matrix(self, i: int, j: int, arrows: tuple):
        m = _eye(self.dims[i])
        cur = i
        for k in arrows:
            s, t = self.algebra.arrows[k]
            m = _mul(self.maps[k], m, self.dims[t], self.dims[s], self.dims[i])
            cur = t
        return m

    def basis_path_matrix(self, i: int, j: int, idx: int):
        return self.path_matrix(i, j, self.algebra.paths[i][j][idx])

    def check_relations(self):
        for (i, j, p1), (_, _, p2) in self.algebra.relations():
            if self.path_matrix(i, j, p1) != self.path_matrix(i, j, p2):
                raise RelationViolated(f"commutativity fails between {self.algebra.vertices[i]} "
                                       f"and {self.algebra.vertices[j]}")
        return True

    def dual(self) -> "Representation":
        """D M, a representation of the opposite algebra."""
        return dual(self)

    def to_text(self) -> str:
        alg = self.algebra
        lines = ["dims: " + " ".join(f"{v}={d}" for v, d in zip(alg.vertices, self.dims))]
        for m, (s, t) in zip(self.maps, alg.arrows):
            rows = ",".join("[" + ",".join(str(x) for x in row) + "]" for row in m)
            lines.append(f"map {alg.vertices[s]}->{alg.vertices[t]}: [{rows}]")
        return "\n".join(lines) + "\n"


def dual(m: Representation) -> Representation:
    alg = m.algebra
    maps = []
    for mat, (s, t) in zip(m.maps, alg.arrows):
        # transpose of a dims[t] x dims[s] matrix is dims[s] x dims[t]
        if m.dims[s] == 0:
            maps.append([])
        elif m.dims[t] == 0:
            maps.append(la.zeros(m.dims[s], 0))
        else:
            maps.append(la.transpose(mat))
    return Representation(alg.opposite(), m.dims, tuple(maps))


def parse_fraction_rows(body: str) -> list[list[Fraction]]:
    """'[[1,0],[1/2,3]]' -> rows of Fractions."""
    body = body.strip()
    if not body.startswith("[[") and body not in ("[]", ""):
        raise ValueError(f"bad matrix {body!r}")
    inner = body[1:-1].strip()
    if not inner:
        return []
    rows = []
    for chunk in inner.split("]"):
        chunk = chunk.strip().lstrip(",").strip().lstrip("[")
        if chunk or rows == []:
            rows.append([Fraction(x.strip()) for x in chunk.split(",") if x.strip()])
    return [r for r in rows if r] or rows


def parse_representation(alg: BoundAlgebra, text: str) -> Representation:
    """`dims: a=2 b=1` then `map a->b: [[1,0]]`; parallel arrows take maps in order."""
    dims = None
    maps: dict = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("dims:"):
            d = dict(tok.split("=") for tok in line[5:].split())
            unknown = set(d) - set(alg.vertices)
            if unknown:
                raise ValueError(f"unknown vertices {sorted(unknown)}")
            dims = [int(d.get(v, 0)) for v in alg.vertices]
        elif line.startswith("map "):
            head, body = line[4:].split(":", 1)
            a, b = (x.strip() for x in head.split("->"))
            maps.setdefault((a, b), []).append(parse_fraction_rows(body))
        else:
            raise ValueError(f"cannot parse line {line!r}")
    if dims is None:
        raise ValueError("missing dims line")
    out = []
    for s, t in alg.arrows:
        lst = maps.get((alg.vertices[s], alg.vertices[t]))
        if lst:
            out.append(lst.pop(0))
        else:
            out.append(la.zeros(dims[t], dims[s]) if dims[t] else [])
    return Representation.make(alg, dims, out)


# --- standard modules ------------------------------------------------------

def zero_rep(alg: BoundAlgebra) -> Representation:
    return Representation(alg, (0,) * alg.n, tuple([] for _ in alg.arrows))


def simple(alg: BoundAlgebra, i: int) -> Representation:
    dims = [0] * alg.n
    dims[i] = 1
    return Representation.make(alg, dims, [la.zeros(dims[t], dims[s]) if dims[t] else [] for s, t in alg.arrows],
                               check=False)


def projective(alg: BoundAlgebra, i: int) -> Representation:
    dims = [len(alg.paths[i][j]) for j in range(alg.n)]
    maps = []
    for k, (s, t) in enumerate(alg.arrows):
        m = la.zeros(dims[t], dims[s]) if dims[t] else []
        for a, p in enumerate(alg.paths[i][s]):
            m[alg.reduce(i, t, p + (k,))][a] = ONE
        maps.append(m)
    return Representation(alg, tuple(dims), tuple(maps))


def injective(alg: BoundAlgebra, i: int) -> Representation:
    dims = [len(alg.paths[j][i]) for j in range(alg.n)]
    maps = []
    for k, (s, t) in enumerate(alg.arrows):
        m = la.zeros(dims[t], dims[s]) if dims[t] else []
        # (alpha f)(q) = f(alpha q) for q a path t -> i
        for b, q in enumerate(alg.paths[t][i]):
            m[b][alg.reduce(s, i, (k,) + q)] = ONE
        maps.append(m)
    return Representation(alg, tuple(dims), tuple(maps))


def regular(alg: BoundAlgebra) -> list[Representation]:
    return [projective(alg, i) for i in range(alg.n)]


def direct_sum(reps: Sequence[Representation], alg: BoundAlgebra | None = None) -> Representation:
    if not reps:
        if alg is None:
            raise ValueError("empty sum needs the algebra")
        return zero_rep(alg)
    alg = reps[0].algebra
    for r in reps:
        if not r.algebra.same(alg):
            raise AlgebraMismatch("summands over different algebras")
    dims = tuple(sum(r.dims[i] for r in reps) for i in range(alg.n))
    maps = []
    for k, (s, t) in enumerate(alg.arrows):
        blocks = [r.maps[k] if r.dims[t] else [] for r in reps]
        shapes = [(r.dims[t], r.dims[s]) for r in reps]
        maps.append(la.block_diag(blocks, shapes) if dims[t] else [])
    return Representation(alg, dims, tuple(maps))


# --- morphisms -------------------------------------------------------------

Morphism = tuple  # per vertex, a dims_N[i] x dims_M[i] matrix


@dataclass(frozen=True)
class HomSpace:
    source: Representation
    target: Representation
    basis: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)


def _check_same(x: Representation, y: Representation):
    if not x.algebra.same(y.algebra):
        raise AlgebraMismatch("modules over different algebras")


def hom(x: Representation, y: Representation) -> HomSpace:
    """Basis of the intertwiners x -> y."""
    _check_same(x, y)
    alg = x.algebra
    off, tot = [], 0
    for i in range(alg.n):
        off.append(tot)
        tot += y.dims[i] * x.dims[i]
    if tot == 0:
        return HomSpace(x, y, ())
    rows = []
    for k, (s, t) in enumerate(alg.arrows):
        ys, yt, xs, xt = y.dims[s], y.dims[t], x.dims[s], x.dims[t]
        if yt == 0 or xs == 0:
            continue
        Y, X = y.maps[k], x.maps[k]
        for a in range(yt):
            for b in range(xs):
                row = {}
                # (Y f_s)[a][b] - (f_t X)[a][b]
                for c in range(ys):
                    if Y[a][c]:
                        key = off[s] + c * xs + b
                        row[key] = row.get(key, ZERO) + Y[a][c]
                for c in range(xt):
                    if X[c][b]:
                        key = off[t] + a * xt + c
                        row[key] = row.get(key, ZERO) - X[c][b]
                row = {kk: v for kk, v in row.items() if v}
                if row:
                    rows.append(row)
    basis = []
    for vec in la.sparse_nullspace(rows, tot):
        f = []
        for i in range(alg.n):
            r, c = y.dims[i], x.dims[i]
            f.append([vec[off[i] + a * c: off[i] + (a + 1) * c] for a in range(r)] if r else [])
        basis.append(tuple(f))
    return HomSpace(x, y, tuple(basis))


def hom_dim(x: Representation, y: Representation) -> int:
    return hom(x, y).dim


def compose(g: Morphism, f: Morphism, x: Representation, y: Representation, z: Representation) -> Morphism:
    """g o f for f: x -> y and g: y -> z."""
    return tuple(_mul(g[i], f[i], z.dims[i], y.dims[i], x.dims[i]) for i in range(x.algebra.n))


def is_morphism(f: Morphism, x: Representation, y: Representation) -> bool:
    for k, (s, t) in enumerate(x.algebra.arrows):
        a = _mul(y.maps[k], f[s], y.dims[t], y.dims[s], x.dims[s])
        b = _mul(f[t], x.maps[k], y.dims[t], x.dims[t], x.dims[s])
        if a != b:
            return False
    return True


def lin_comb(coeffs, morphs: Sequence[Morphism], x: Representation, y: Representation) -> Morphism:
    out = []
    for i in range(x.algebra.n):
        r, c = y.dims[i], x.dims[i]
        m = la.zeros(r, c) if r else []
        for a, f in zip(coeffs, morphs):
            if a:
                for u in range(r):
                    for v in range(c):
                        if f[i][u][v]:
                            m[u][v] += a * f[i][u][v]
        out.append(m)
    return tuple(out)


def _left_inverse(b, r, c):
    """L with L b = I_c for a full column rank r x c matrix."""
    if c == 0:
        return []
    rows = la.column_basis_indices(la.transpose(b))
    sq = [b[i] for i in rows]
    inv = la.inverse(sq)
    out = la.zeros(c, r)
    for a in range(c):
        for t, i in enumerate(rows):
            out[a][i] = inv[a][t]
    return out


def _right_inverse(q, r, c):
    """R with q R = I_r for a full row rank r x c matrix."""
    if r == 0:
        return la.zeros(c, 0) if c else []
    lt = _left_inverse(la.transpose(q), c, r)
    return la.transpose(lt)


def kernel(f: Morphism, x: Representation, y: Representation) -> tuple[Representation, Morphism]:
    """Kernel module K and inclusion K -> x."""
    alg = x.algebra
    bases, incl = [], []
    for i in range(alg.n):
        if x.dims[i] == 0:
            bases.append([])
            continue
        if y.dims[i] == 0:
            ns = [[ONE if a == b else ZERO for a in range(x.dims[i])] for b in range(x.dims[i])]
        else:
            ns = la.nullspace(f[i], x.dims[i])
        bases.append(ns)
    dims = tuple(len(b) for b in bases)
    B = [la.transpose(b, 0) if b else ([] if x.dims[i] == 0 else la.zeros(x.dims[i], 0))
         for i, b in enumerate(bases)]
    L = [_left_inverse(B[i], x.dims[i], dims[i]) for i in range(alg.n)]
    maps = []
    for k, (s, t) in enumerate(alg.arrows):
        if dims[t] == 0:
            maps.append([])
            continue
        m = _mul(x.maps[k], B[s], x.dims[t], x.dims[s], dims[s])
        maps.append(_mul(L[t], m, dims[t], x.dims[t], dims[s]))
    return Representation(alg, dims, tuple(maps)), tuple(B[i] if x.dims[i] else [] for i in range(alg.n))


def cokernel(f: Morphism, x: Representation, y: Representation) -> tuple[Representation, Morphism]:
    """Cokernel module C and projection y -> C."""
    alg = y.algebra
    Q = []
    for i in range(alg.n):
        if y.dims[i] == 0:
            Q.append([])
        elif x.dims[i] == 0:
            Q.append(_eye(y.dims[i]))
        else:
            Q.append(la.left_nullspace(f[i], y.dims[i]))
    dims = tuple(len(q) for q in Q)
    R = [_right_inverse(Q[i], dims[i], y.dims[i]) for i in range(alg.n)]
    maps = []
    for k, (s, t) in enumerate(alg.arrows):
        if dims[t] == 0:
            maps.append([])
            continue
        m = _mul(Q[t], y.maps[k], dims[t], y.dims[t], y.dims[s])
        maps.append(_mul(m, R[s], dims[t], y.dims[s], dims[s]))
    proj = tuple(Q[i] if dims[i] else [] for i in range(alg.n))
    return Representation(alg, dims, tuple(maps)), proj


def image_dims(f: Morphism, x: Representation, y: Representation) -> tuple:
    return tuple(la.rank(f[i]) if x.dims[i] and y.dims[i] else 0 for i in range(x.algebra.n))


def submodule(y: Representation, spaces: Sequence[list]) -> tuple[Representation, Morphism]:
    """Submodule with the given column-spanning vectors per vertex (assumed stable)."""
    alg = y.algebra
    B, dims = [], []
    for i in range(alg.n):
        vecs = [list(v) for v in spaces[i]]
        if vecs:
            red = la.row_space(vecs, y.dims[i])
            B.append(la.transpose(red))
            dims.append(len(red))
        else:
            B.append(la.zeros(y.dims[i], 0) if y.dims[i] else [])
            dims.append(0)
    L = [_left_inverse(B[i], y.dims[i], dims[i]) for i in range(alg.n)]
    maps = []
    for k, (s, t) in enumerate(alg.arrows):
        if dims[t] == 0:
            maps.append([])
            continue
        m = _mul(y.maps[k], B[s], y.dims[t], y.dims[s], dims[s])
        maps.append(_mul(L[t], m, dims[t], y.dims[t], dims[s]))
    return Representation(alg, tuple(dims), tuple(maps)), tuple(B)


# --- projective covers and presentations ------------------------------------

def radical_space(m: Representation, i: int) -> list:
    vecs = []
    alg = m.algebra
    for k in alg.in_arrows[i]:
        s = alg.arrows[k][0]
        if m.dims[s]:
            vecs.extend(la.transpose(m.maps[k]))
    return la.row_space(vecs, m.dims[i]) if vecs else []


def top_vectors(m: Representation) -> list[tuple[int, list]]:
    """Generators (vertex, vector) spanning a complement of rad M at each vertex."""
    out = []
    for i in range(m.algebra.n):
        if m.dims[i] == 0:
            continue
        rad = radical_space(m, i)
        for e in la.extend_to_basis(rad, m.dims[i]):
            out.append((i, e))
    return out


def top_dims(m: Representation) -> list[int]:
    t = [0] * m.algebra.n
    for i, _ in top_vectors(m):
        t[i] += 1
    return t


def proj_sum(alg: BoundAlgebra, verts: Sequence[int]) -> Representation:
    return direct_sum([projective(alg, i) for i in verts], alg)


def cover_map(m: Representation, gens) -> tuple[Representation, Morphism]:
    """The map P = sum P(i_r) -> M sending the r-th generator to its vector."""
    alg = m.algebra
    P = proj_sum(alg, [i for i, _ in gens])
    f = []
    for j in range(alg.n):
        cols = []
        for i, v in gens:
            for idx in range(len(alg.paths[i][j])):
                pm = m.basis_path_matrix(i, j, idx)
                cols.append(la.matvec(pm, v) if m.dims[j] else [])
        f.append(la.transpose(cols, 0) if (cols and m.dims[j]) else (la.zeros(m.dims[j], 0) if m.dims[j] else []))
    return P, tuple(f)


def projective_cover(m: Representation):
    """(P0, generator list, surjection P0 -> M)."""
    gens = top_vectors(m)
    P, f = cover_map(m, gens)
    return P, gens, f


@dataclass(frozen=True)
class Presentation:
    """Minimal P1 -> P0 -> M -> 0; F[r][c] is the coefficient vector of the
    c-th generator of P1 in the summand P(p0[r]) at vertex p1[c]."""
    p0: tuple
    p1: tuple
    F: tuple


def syzygy(m: Representation):
    P, gens, f = projective_cover(m)
    K, incl = kernel(f, P, m)
    return P, gens, f, K, incl


def presentation(m: Representation) -> Presentation:
    alg = m.algebra
    P, gens, f, K, incl = syzygy(m)
    p0 = tuple(i for i, _ in gens)
    kgens = top_vectors(K)
    p1 = tuple(j for j, _ in kgens)
    F = [[None] * len(p1) for _ in p0]
    for c, (j, w) in enumerate(kgens):
        vec = la.matvec(incl[j], w)  # coordinates in P0 at vertex j
        pos = 0
        for r, i in enumerate(p0):
            size = len(alg.paths[i][j])
            F[r][c] = tuple(vec[pos:pos + size])
            pos += size
    return Presentation(p0, p1, tuple(tuple(r) for r in F))


def _proj_map(alg: BoundAlgebra, src: Sequence[int], tgt: Sequence[int], elem) -> tuple[Representation, Representation, Morphism]:
    """Map sum P(src_c) -> sum P(tgt_r) with e_{src_c} -> elem(r, c) in P(tgt_r)_{src_c}."""
    S = proj_sum(alg, src)
    T = proj_sum(alg, tgt)
    f = []
    for k in range(alg.n):
        rows = T.dims[k]
        cols = S.dims[k]
        m = la.zeros(rows, cols) if rows else []
        col0 = 0
        for c, j in enumerate(src):
            qs = alg.paths[j][k]
            row0 = 0
            for r, i in enumerate(tgt):
                x = elem(r, c)
                for a, coef in enumerate(x):
                    if coef:
                        for b in range(len(qs)):
                            m[row0 + alg.concat(i, j, a, k, b)][col0 + b] += coef
                row0 += len(alg.paths[i][k])
            col0 += len(qs)
        f.append(m)
    return S, T, tuple(f)


def transpose_module(m: Representation) -> Representation:
    """Tr M over the opposite algebra (projective summands of M vanish)."""
    alg = m.algebra
    op = alg.opposite()
    pres = presentation(m)

    def elem(c, r):
        # component P^op(p0[r]) -> P^op(p1[c]): reverse the element F[r][c]
        x = pres.F[r][c]
        i, j = pres.p0[r], pres.p1[c]
        out = [ZERO] * len(op.paths[j][i])
        for a, coef in enumerate(x):
            if coef:
                p = alg.paths[i][j][a]
                out[op.reduce(j, i, tuple(reversed(p)))] += coef
        return out

    S, T, f = _proj_map(op, pres.p0, pres.p1, elem)
    C, _ = cokernel(f, S, T)
    return C


def tau(m: Representation) -> Representation:
    return dual(transpose_module(m))


def tau_inv(m: Representation) -> Representation:
    return transpose_module(dual(m))


def ar_translate(m: Representation, direction: str = "tau", check: bool = True) -> Representation:
    if check and not is_indecomposable(m):
        raise NotIndecomposable("AR translate is taken of indecomposables only")
    if direction == "tau":
        return tau(m)
    if direction in ("tau_minus", "tau-", "tau_inv"):
        return tau_inv(m)
    raise ValueError(direction)


def ext1_dim(x: Representation, y: Representation) -> int:
    _check_same(x, y)
    if x.is_zero() or y.is_zero():
        return 0
    P, gens, f, K, _ = syzygy(x)
    hp = sum(y.dims[i] for i, _ in gens)
    return hom_dim(K, y) - hp + hom_dim(x, y)


# --- resolutions -------------------------------------------------------------

@dataclass(frozen=True)
class Resolution:
    side: str
    terms: tuple  # multiplicity vectors of P_0, P_1, ... (or I_0, I_1, ...)

    @property
    def length(self) -> int:
        return max(0, len(self.terms) - 1)


def resolve(m: Representation, side: str = "projective", max_len: int | None = None) -> Resolution:
    if side == "injective":
        r = resolve(dual(m), "projective", max_len)
        return Resolution("injective", r.terms)
    alg = m.algebra
    terms = []
    cur = m
    limit = max_len if max_len is not None else alg.n + 1
    while not cur.is_zero():
        P, gens, f = projective_cover(cur)
        mult = [0] * alg.n
        for i, _ in gens:
            mult[i] += 1
        terms.append(tuple(mult))
        if len(terms) > limit:
            raise RuntimeError("resolution longer than the bound")
        cur, _ = kernel(f, P, cur)
    return Resolution("projective", tuple(terms))


def pd(m: Representation) -> int:
    return resolve(m).length


def idim(m: Representation) -> int:
    return resolve(m, "injective").length


def global_dimension(alg: BoundAlgebra) -> int:
    return max(pd(simple(alg, i)) for i in range(alg.n))


# --- endomorphisms, indecomposability, decomposition ------------------------

def _block(f: Morphism, m: Representation):
    """Endomorphism as one square matrix on the total space."""
    D = m.total
    out = la.zeros(D, D)
    o = 0
    for i in range(m.algebra.n):
        d = m.dims[i]
        for a in range(d):
            for b in range(d):
                out[o + a][o + b] = f[i][a][b]
        o += d
    return out


def _trace(f: Morphism, m: Representation) -> Fraction:
    return sum((f[i][a][a] for i in range(m.algebra.n) for a in range(m.dims[i])), ZERO)


def end_radical_codim(m: Representation, basis=None) -> int:
    """dim End(M) - dim rad End(M), via the trace form (characteristic zero)."""
    if basis is None:
        basis = hom(m, m).basis
    k = len(basis)
    g = [[_trace(compose(basis[a], basis[b], m, m, m), m) for b in range(k)] for a in range(k)]
    return la.rank(g) if k else 0


def is_indecomposable(m: Representation) -> bool:
    """Absolutely indecomposable: End(M)/rad is one-dimensional."""
    if m.is_zero():
        return False
    return end_radical_codim(m) == 1


def _charpoly(mat) -> sympy.Poly:
    x = sympy.Symbol("x")
    M = sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in row] for row in mat])
    return M.charpoly(x)


def _poly_eval(poly: sympy.Poly, mat):
    n = len(mat)
    out = la.zeros(n, n)
    for c in poly.all_coeffs():
        out = la.matmul(out, mat, n, n)
        c = Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1]))
        for i in range(n):
            out[i][i] += c
    return out


def _fitting_split(m: Representation, f: Morphism):
    """Nontrivial M = ker y^N + im y^N for y a factor of the charpoly of f, or None."""
    mat = _block(f, m)
    if not mat:
        return None
    cp = _charpoly(mat)
    factors = sympy.factor_list(cp.as_expr(), cp.gens[0])[1]
    if len(factors) < 2:
        return None
    p = sympy.Poly(factors[0][0], cp.gens[0])
    y = _poly_eval(p, mat)
    n = len(mat)
    yN = y
    for _ in range(max(1, n.bit_length())):
        yN = la.matmul(yN, yN, n, n)
    ker = la.nullspace(yN, n)
    img = [list(r) for r in la.transpose(yN)]
    img = la.row_space(img, n)
    if not ker or not img:
        return None
    return ker, img


def _split_spaces(m: Representation, vecs):
    """Total-space vectors of a graded subspace -> per-vertex lists."""
    out = [[] for _ in range(m.algebra.n)]
    offs, o = [], 0
    for d in m.dims:
        offs.append(o)
        o += d
    for v in vecs:
        for i, d in enumerate(m.dims):
            part = v[offs[i]:offs[i] + d]
            if any(part):
                out[i].append(part)
    return out


def decompose(m: Representation, seed: int = 0) -> list[Representation]:
    """Indecomposable summands (split over Q; non-split pieces are returned whole)."""
    if m.is_zero():
        return []
    basis = hom(m, m).basis
    if end_radical_codim(m, basis) == 1:
        return [m]
    rng = random.Random(seed)
    candidates = list(basis)
    for _ in range(6):
        coeffs = [Fraction(rng.randint(-5, 5)) for _ in basis]
        candidates.append(lin_comb(coeffs, basis, m, m))
    for f in candidates:
        split = _fitting_split(m, f)
        if split is None:
            continue
        ker, img = split
        a, _ = submodule(m, _split_spaces(m, ker))
        b, _ = submodule(m, _split_spaces(m, img))
        if a.total + b.total == m.total and a.total and b.total:
            return decompose(a, seed) + decompose(b, seed)
    return [m]


def isomorphic(x: Representation, y: Representation) -> bool:
    """Isomorphism test for indecomposables."""
    if x.dims != y.dims:
        return False
    if x.is_zero():
        return True
    hf = hom(x, y).basis
    hg = hom(y, x).basis
    for f in hf:
        for g in hg:
            if la.det(_block(compose(g, f, x, y, x), x)) != 0:
                return True
    return False


def basic_summands(reps: Sequence[Representation]) -> list[Representation]:
    """Pairwise non-isomorphic indecomposable summands of the given modules."""
    out: list[Representation] = []
    for r in reps:
        for s in decompose(r):
            if not any(isomorphic(s, t) for t in out):
                out.append(s)
    return out


# --- trace, generation, tilting ------------------------------------------------

def trace_dims(t: Representation, x: Representation) -> tuple:
    """Dimension vector of the sum of images of all maps t -> x."""
    basis = hom(t, x).basis
    out = []
    for i in range(x.algebra.n):
        if x.dims[i] == 0 or t.dims[i] == 0:
            out.append(0)
            continue
        cols = []
        for f in basis:
            cols.extend(la.transpose(f[i]))
        out.append(len(la.row_space(cols, x.dims[i])) if cols else 0)
    return tuple(out)


def gen_membership(t: Representation, x: Representation) -> bool:
    _check_same(t, x)
    return trace_dims(t, x) == x.dims


@dataclass
class TiltingCertificate:
    is_tilting: bool
    summand_dims: list
    rigid: bool
    pd_ok: bool
    count: int
    reason: str = ""


def is_tilting(t, summands_given: bool | None = None) -> TiltingCertificate:
    """Rigid, projective dimension at most one, and n pairwise non-isomorphic summands.

    `t` is a Representation or a list of its summands.
    """
    if isinstance(t, Representation):
        parts = basic_summands([t])
    else:
        parts = basic_summands(list(t))
    if not parts:
        return TiltingCertificate(False, [], True, True, 0, "zero module")
    alg = parts[0].algebra
    rigid = all(ext1_dim(a, b) == 0 for a in parts for b in parts)
    pd_ok = alg.is_hereditary or all(pd(a) <= 1 for a in parts)
    ok = rigid and pd_ok and len(parts) == alg.n
    reason = "" if ok else ("not rigid" if not rigid else "projective dimension > 1" if not pd_ok
                            else f"{len(parts)} summands, need {alg.n}")
    return TiltingCertificate(ok, [list(p.dims) for p in parts], rigid, pd_ok, len(parts), reason)


# --- misc ---------------------------------------------------------------------

def coxeter_matrix(alg: BoundAlgebra):
    """Phi with dim(tau^- M) = dim(M) Phi for row vectors (hereditary, M not injective)."""
    C = [[Fraction(x) for x in row] for row in alg.cartan]
    Ct = la.transpose(C)
    return la.scale(la.matmul(la.inverse(Ct), C), -1)


def generic_rep(alg: BoundAlgebra, dims, seed: int = 0) -> Representation:
    """Random small-integer matrices (path algebras only: no relations to honour)."""
    if alg.kind != "path":
        raise ValueError("generic representations are built for path algebras")
    rng = random.Random(seed)
    maps = []
    for s, t in alg.arrows:
        maps.append([[Fraction(rng.randint(-3, 3)) for _ in range(dims[s])] for _ in range(dims[t])])
    return Representation.make(alg, dims, maps)
