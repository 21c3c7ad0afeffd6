"""Grothendieck groups, g-vectors, walls, tilting transfer and g-vector fans.

K0(proj) vectors are written in the basis [P(i)], K0(mod) vectors in the basis
[S(i)]; the pairing is the dot product, so <[P(i)], [M]> = dims(M)[i].  A
dimension vector x is read as the functional x C^{-1} (Cartan C with rows the
dimension vectors of the projectives).
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg as la
from . import linrep
from .algebra import BoundAlgebra, path_algebra
from .knitting import knit
from .quiver import Quiver, is_hyperbolic, negative_cone_contains, tits


class RankMismatch(ValueError):
    pass


class NotInNegativeCone(ValueError):
    pass


class NotHyperbolic(ValueError):
    pass


class NotTilting(ValueError):
    pass


def pairing(theta: Sequence, d: Sequence, alg: BoundAlgebra | None = None) -> Fraction:
    if len(theta) != len(d) or (alg is not None and len(d) != alg.n):
        raise RankMismatch("vector lengths differ")
    return sum((Fraction(a) * b for a, b in zip(theta, d)), Fraction(0))


def cartan(alg: BoundAlgebra) -> list:
    return [[Fraction(x) for x in row] for row in alg.cartan]


def dims_to_proj(alg: BoundAlgebra, x: Sequence) -> list[Fraction]:
    """theta with theta . C = x, i.e. [P] -> dim P read backwards."""
    return la.vecmat([Fraction(v) for v in x], la.inverse(cartan(alg)), alg.n)


def euler(alg: BoundAlgebra, x: Sequence, y: Sequence) -> Fraction:
    return pairing(dims_to_proj(alg, x), y)


# --- g-vectors -------------------------------------------------------------------

@dataclass(frozen=True)
class GVector:
    dims: tuple
    proj_part: tuple
    vector: tuple


def g_vector(m: linrep.Representation | None, proj_part: Sequence[int] | None = None,
             alg: BoundAlgebra | None = None) -> GVector:
    """[P0] - [P1] - [Q] from the minimal presentation of m."""
    alg = alg or m.algebra
    g = [0] * alg.n
    if m is not None and not m.is_zero():
        pres = linrep.presentation(m)
        for i in pres.p0:
            g[i] += 1
        for j in pres.p1:
            g[j] -= 1
    q = tuple(proj_part or (0,) * alg.n)
    for i, k in enumerate(q):
        g[i] -= k
    return GVector(tuple(m.dims) if m is not None else (0,) * alg.n, q, tuple(g))


def theta_value(theta: Sequence, m: linrep.Representation) -> Fraction:
    return pairing(theta, m.dims)


# --- tilting transfer ---------------------------------------------------------------

@dataclass
class TransferData:
    matB: list  # theta_B = theta . matB
    matHat: list  # hat d = d . matHat
    summands: list
    gvectors: list

    def identity_holds(self) -> bool:
        n = len(self.matB)
        prod = la.matmul(self.matB, la.transpose(self.matHat), n, n)
        return prod == la.identity(n)

    def hat(self, d: Sequence) -> list:
        return la.vecmat([Fraction(x) for x in d], self.matHat, len(self.matB))

    def theta_B(self, theta: Sequence) -> list:
        return la.vecmat([Fraction(x) for x in theta], self.matB, len(self.matB))


def transfer(alg: BoundAlgebra, t: Sequence[linrep.Representation]) -> TransferData:
    """matHat from explicit Hom/Ext of T against the simples; matB its pairing mate."""
    summands = linrep.basic_summands(list(t))
    cert = linrep.is_tilting(summands)
    if not cert.is_tilting:
        raise NotTilting(cert.reason)
    n = alg.n
    hat = la.zeros(n, n)
    for i in range(n):
        s = linrep.simple(alg, i)
        for k, tk in enumerate(summands):
            hat[i][k] = Fraction(linrep.hom_dim(tk, s) - linrep.ext1_dim(tk, s))
    G = [list(map(Fraction, g_vector(tk).vector)) for tk in summands]
    # theta(d) = theta_B(hat d) for all d  <=>  matB . matHat^T = I
    matB = la.inverse(la.transpose(hat))
    data = TransferData(matB, hat, summands, G)
    if la.transpose(hat) != G:
        raise AssertionError("hat map differs from the g-vector pairing of T")
    return data


def hom_dims_from(t_summands, m: linrep.Representation) -> list[int]:
    return [linrep.hom_dim(tk, m) for tk in t_summands]


def ext_dims_from(t_summands, m: linrep.Representation) -> list[int]:
    return [linrep.ext1_dim(tk, m) for tk in t_summands]


@dataclass
class KnittedTransferReport:
    tilting_nodes: tuple
    identity: bool
    pairing_checks: int  # <theta, d> = <theta_B, hat d> over unit theta and window d
    gen_checks: int  # window modules in Gen T with hat d = [Hom(T, M)]
    perp_checks: int  # window modules in T-perp with hat d = -[Ext(T, M)]
    mismatches: list

    @property
    def holds(self) -> bool:
        return self.identity and not self.mismatches


def knitted_transfer(c, t_nodes: Sequence) -> KnittedTransferReport:
    """The transfer identity for a postprojective tilting T, from knitted data only.

    hat is read off the Euler form (g-vectors dims(T_k) C^{-1}); Hom and Ext come
    from the mesh closed form, so the comparison is between independent sources.
    """
    from .knitting import _hom_fast, ext_dim

    alg = c.algebra
    n = alg.n
    Cinv = la.inverse(cartan(alg))
    G = [la.vecmat([Fraction(x) for x in c.dims[nd]], Cinv, n) for nd in t_nodes]
    hat = la.transpose(G)
    matB = la.inverse(la.transpose(hat))
    data = TransferData(matB, hat, list(t_nodes), G)
    bad = []
    pc = gc = qc = 0
    for nd in c.nodes:
        d = c.dims[nd]
        h = data.hat(d)
        homs = [_hom_fast(c, t, nd) for t in t_nodes]
        exts = [ext_dim(c, t, nd) for t in t_nodes]
        if [int(x) for x in h] != [a - b for a, b in zip(homs, exts)] or any(x.denominator != 1 for x in h):
            bad.append(("euler", nd))
        if not any(exts):
            gc += 1
            if [int(x) for x in h] != homs:
                bad.append(("gen", nd))
        if not any(homs):
            qc += 1
            if [int(x) for x in h] != [-e for e in exts]:
                bad.append(("perp", nd))
        for i in range(n):
            theta = [Fraction(int(i == j)) for j in range(n)]
            pc += 1
            if pairing(theta, d) != pairing(data.theta_B(theta), h):
                bad.append(("pairing", nd, i))
    return KnittedTransferReport(tuple(t_nodes), data.identity_holds(), pc, gc, qc, bad)


# --- walls ---------------------------------------------------------------------------

@dataclass
class WallReport:
    holds: bool
    theta_m: Fraction
    violations: list
    checked: int
    budget: int
    exhaustive: bool = False


def _generated(m: linrep.Representation, vecs) -> tuple:
    """Dimension vector of the submodule generated by (vertex, vector) pairs."""
    alg = m.algebra
    spaces = [[] for _ in range(alg.n)]
    for i, v in vecs:
        for j in range(alg.n):
            for idx in range(len(alg.paths[i][j])):
                if m.dims[j]:
                    spaces[j].append(la.matvec(m.basis_path_matrix(i, j, idx), v))
    return tuple(len(la.row_space(s, m.dims[j])) if s else 0 for j, s in enumerate(spaces))


def quotient_dims(m: linrep.Representation, budget: int = 3) -> set:
    """Dimension vectors of quotients M/U with U generated by at most `budget` pool vectors."""
    pool = []
    for i, d in enumerate(m.dims):
        for a in range(d):
            e = [Fraction(0)] * d
            e[a] = Fraction(1)
            pool.append((i, e))
        if d > 1:
            pool.append((i, [Fraction(1)] * d))
    out = {tuple(m.dims), (0,) * len(m.dims)}
    for k in range(1, budget + 1):
        for combo in itertools.combinations(pool, k):
            sub = _generated(m, combo)
            out.add(tuple(a - b for a, b in zip(m.dims, sub)))
    return out


def wall_check(theta: Sequence, m: linrep.Representation, budget: int = 3) -> WallReport:
    """theta(M) = 0 and theta >= 0 on the enumerated quotients of M.

    A violation is an exact refutation; a pass is only as strong as the budget.
    """
    tm = theta_value(theta, m)
    if all(Fraction(x) == 0 for x in theta):
        return WallReport(True, tm, [], 0, budget, True)
    if tm != 0:
        return WallReport(False, tm, [("M", tuple(m.dims), tm)], 0, budget)
    qd = quotient_dims(m, budget)
    bad = [("quotient", d, pairing(theta, d)) for d in sorted(qd) if pairing(theta, d) < 0]
    return WallReport(not bad, tm, bad, len(qd), budget)


# --- negative cone -------------------------------------------------------------------

def cone_samples(q: Quiver, count: int = 20, box: int = 6) -> list[tuple]:
    """Lattice points of the negative cone, taken in a fixed order (smallest sum first)."""
    pts = [x for x in itertools.product(range(1, box + 1), repeat=q.n) if tits(q, x) < 0]
    pts.sort(key=lambda x: (sum(x), x))
    if len(pts) <= count:
        return pts
    step = len(pts) / count
    return [pts[int(k * step)] for k in range(count)]


@dataclass
class ConeReport:
    theta: tuple
    values: dict  # node -> theta(N)
    all_negative: bool


def negative_cone_vs_postprojectives(q: Quiver, x: Sequence, window: int = 5) -> ConeReport:
    """theta = x C^{-1} for x in the negative cone; evaluate on the knitted postprojectives."""
    if not is_hyperbolic(q):
        raise NotHyperbolic("quiver is not hyperbolic")
    if not negative_cone_contains(q, x):
        raise NotInNegativeCone(f"{tuple(x)} is not in the negative cone")
    c = knit(q, window)
    alg = c.algebra
    theta = dims_to_proj(alg, x)
    vals = {nd: pairing(theta, c.dims[nd]) for nd in c.nodes}
    return ConeReport(tuple(theta), vals, all(v < 0 for v in vals.values()))


# --- support tau-tilting pairs and the g-vector fan -----------------------------------

@dataclass
class Pair:
    """Basic support tau-tilting pair: indecomposable modules plus projective vertices Q."""
    modules: tuple
    Q: frozenset

    def gvecs(self, alg: BoundAlgebra) -> list[tuple]:
        out = [g_vector(m).vector for m in self.modules]
        for v in sorted(self.Q):
            e = [0] * alg.n
            e[v] = -1
            out.append(tuple(e))
        return out

    def key(self, alg) -> frozenset:
        return frozenset(self.gvecs(alg))


def _projective_vertex(m: linrep.Representation) -> int | None:
    td = linrep.top_dims(m)
    if sum(td) != 1:
        return None
    v = td.index(1)
    return v if tuple(m.algebra.cartan[v]) == m.dims else None


def _left_mutation(alg: BoundAlgebra, pair: Pair, idx: int) -> Pair | None:
    x = pair.modules[idx]
    rest = [m for k, m in enumerate(pair.modules) if k != idx]
    if rest and linrep.gen_membership(linrep.direct_sum(rest), x):
        return None
    # left add(rest)-approximation by all basis maps; its cokernel minus add(rest) is Y
    targets, comps = [], []
    for u in rest:
        for f in linrep.hom(x, u).basis:
            targets.append(u)
            comps.append(f)
    if targets:
        U = linrep.direct_sum(targets)
        f = tuple([row for f_, u in zip(comps, targets) for row in f_[i]] if U.dims[i] else []
                  for i in range(alg.n))
        C, _ = linrep.cokernel(f, x, U)
        parts = [p for p in linrep.decompose(C) if not any(linrep.isomorphic(p, u) for u in rest)]
    else:
        parts = []
    if len(parts) > 1:
        raise AssertionError("mutation produced more than one new summand")
    if parts:
        return Pair(tuple(rest) + (parts[0],), pair.Q)
    support = {i for u in rest for i in range(alg.n) if u.dims[i]}
    new = [v for v in range(alg.n) if v not in support and v not in pair.Q]
    if len(new) != 1:
        raise AssertionError("no unique projective to add")
    return Pair(tuple(rest), pair.Q | {new[0]})


def dagger(alg: BoundAlgebra, pair: Pair) -> Pair:
    """(M, Q) -> (Tr M_np + Q*, M_p*) over the opposite algebra."""
    op = alg.opposite()
    mods, q = [], set()
    for m in pair.modules:
        v = _projective_vertex(m)
        if v is None:
            mods.append(linrep.transpose_module(m))
        else:
            q.add(v)
    for v in sorted(pair.Q):
        mods.append(linrep.projective(op, v))
    return Pair(tuple(mods), frozenset(q))


def mutate(alg: BoundAlgebra, pair: Pair, summand: tuple) -> Pair:
    """Mutate at ('M', index) or ('Q', vertex)."""
    kind, k = summand
    if kind == "M":
        res = _left_mutation(alg, pair, k)
        if res is not None:
            return res
        target = pair.modules[k]
        v = _projective_vertex(target)
        d = dagger(alg, pair)
        if v is not None:
            return dagger(alg.opposite(), _mutate_q_dual(alg.opposite(), d, v))
        tr = linrep.transpose_module(target)
        j = next(i for i, m in enumerate(d.modules) if linrep.isomorphic(m, tr))
        res = _left_mutation(alg.opposite(), d, j)
        if res is None:
            raise AssertionError("neither left nor right mutation applies")
        return dagger(alg.opposite(), res)
    # Q-summand: in the dagger it becomes the module P^op(k)
    d = dagger(alg, pair)
    j = next(i for i, m in enumerate(d.modules) if _projective_vertex(m) == k)
    res = _left_mutation(alg.opposite(), d, j)
    if res is None:
        raise AssertionError("Q-summand mutation failed")
    return dagger(alg.opposite(), res)


def _mutate_q_dual(op: BoundAlgebra, d: Pair, v: int) -> Pair:
    """Mutation of the Q-part vertex v in a pair over `op`, done as a left mutation after dagger."""
    back = dagger(op, d)
    j = next(i for i, m in enumerate(back.modules) if _projective_vertex(m) == v)
    res = _left_mutation(op.opposite(), back, j)
    if res is None:
        raise AssertionError("projective summand mutation failed")
    return dagger(op.opposite(), res)


@dataclass
class Fan:
    cones: list  # sorted tuples of rays (maximal cones)
    complete: bool
    closed: bool
    budget: int
    facet_pairing: bool | None = None
    exterior_witness: tuple | None = None
    pairs: list = field(default_factory=list, repr=False)

    def to_json(self) -> dict:
        return {"rays": sorted({r for c in self.cones for r in c}), "cones": [list(map(list, c)) for c in self.cones],
                "complete": self.complete, "closed": self.closed, "budget": self.budget,
                "facet_pairing": self.facet_pairing,
                "exterior_witness": list(self.exterior_witness) if self.exterior_witness else None}


def _in_cone(rays: Sequence[tuple], v: Sequence) -> bool:
    """v in the closed simplicial cone spanned by independent rays."""
    n = len(v)
    A = la.transpose([[Fraction(x) for x in r] for r in rays])
    c = la.solve(A, [Fraction(x) for x in v], len(rays))
    return c is not None and all(x >= 0 for x in c)


def facet_pairing(cones: Sequence[tuple]) -> bool:
    count: dict = {}
    for c in cones:
        for k in range(len(c)):
            f = tuple(sorted(c[:k] + c[k + 1:]))
            count[f] = count.get(f, 0) + 1
    return all(v == 2 for v in count.values())


def exterior_witness(cones: Sequence[tuple], n: int, box: int = 3) -> tuple | None:
    """A primitive integer direction outside every listed cone, if the box has one."""
    from math import gcd

    cands = [v for v in itertools.product(range(-box, box + 1), repeat=n) if any(v)]
    cands = [v for v in cands if gcd(*[abs(x) for x in v]) == 1] if n > 1 else [(1,), (-1,)]
    cands.sort(key=lambda v: (sum(abs(x) for x in v), v))
    for v in cands:
        if not any(_in_cone(c, v) for c in cones):
            return v
    return None


def g_fan(alg: BoundAlgebra, budget: int = 50, witness_box: int = 3) -> Fan:
    """Breadth-first mutation from (Lambda, 0); stops after `budget` maximal cones."""
    start = Pair(tuple(linrep.projective(alg, i) for i in range(alg.n)), frozenset())
    seen = {start.key(alg): start}
    order = [start]
    dq = deque([start])
    closed = True
    while dq:
        p = dq.popleft()
        summands = [("M", k) for k in range(len(p.modules))] + [("Q", v) for v in sorted(p.Q)]
        for s in summands:
            nb = mutate(alg, p, s)
            k = nb.key(alg)
            if k not in seen:
                if len(seen) >= budget:
                    closed = False
                    continue
                seen[k] = nb
                order.append(nb)
                dq.append(nb)
    cones = sorted(tuple(sorted(p.gvecs(alg))) for p in order)
    for c in cones:
        if la.rank([list(map(Fraction, r)) for r in c]) != alg.n:
            raise AssertionError("cone is not simplicial")
    fp = facet_pairing(cones) if closed else None
    complete = closed and bool(fp)
    wit = None if complete else exterior_witness(cones, alg.n, witness_box)
    return Fan(cones, complete, closed, budget, fp, wit, order)


def all_indecomposables_finite(q: Quiver) -> list[linrep.Representation]:
    """Every indecomposable of a Dynkin path algebra, via the exhausted postprojective component."""
    c = knit(q, 4 * q.n + 4)
    if not c.exhausted:
        raise ValueError("quiver is not of finite type")
    return [c.module(nd) for nd in c.nodes]


def brute_force_support_tilting(alg: BoundAlgebra, indecs: Sequence[linrep.Representation]) -> list[frozenset]:
    """Oracle: subsets (M, Q) with M tau-rigid, Hom(Q, M) = 0 and |M| + |Q| = n."""
    n = alg.n
    taus = [linrep.tau(x) for x in indecs]
    out = []
    for k in range(n + 1):
        for ms in itertools.combinations(range(len(indecs)), k):
            if any(linrep.hom_dim(indecs[a], taus[b]) for a in ms for b in ms):
                continue
            supp = {i for a in ms for i in range(n) if indecs[a].dims[i]}
            free = [v for v in range(n) if v not in supp]
            for qs in itertools.combinations(free, n - k):
                gs = [g_vector(indecs[a]).vector for a in ms]
                gs += [tuple(-1 if i == v else 0 for i in range(n)) for v in qs]
                out.append(frozenset(gs))
    return out


# --- the not-g-tame pipeline -----------------------------------------------------------

@dataclass
class NotGTameReport:
    samples: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(s["cone_negative"] and s["transfer_identity"] and s["wall"] in ("pass", "skipped")
                   for s in self.samples)


def _wall_module(alg: BoundAlgebra, theta, box: int, seed: int):
    """A generic indecomposable M with theta(M) = 0 whose enumerated quotients are theta-nonnegative."""
    n = alg.n
    for d in sorted(itertools.product(range(0, box + 1), repeat=n), key=lambda v: (sum(v), v)):
        if not any(d) or pairing(theta, d) != 0:
            continue
        m = linrep.generic_rep(alg, d, seed)
        if linrep.is_indecomposable(m) and wall_check(theta, m).holds:
            return m
    return None


def verify_notgtame(q: Quiver, t: Sequence[linrep.Representation] | None, samples: Sequence[Sequence],
                    window: int = 4, wall_box: int = 4, seed: int = 0,
                    perp_dim_cap: int = 24) -> NotGTameReport:
    """(i) theta < 0 on window postprojectives, (ii) exact transfer identity,
    (iii) a wall module M of theta lies in Gen T and the transported wall values agree."""
    if not is_hyperbolic(q):
        raise NotHyperbolic("quiver is not hyperbolic")
    alg = path_algebra(q)
    t = list(t) if t is not None else [linrep.projective(alg, i) for i in range(alg.n)]
    tr = transfer(alg, t)
    tsum = linrep.direct_sum(tr.summands)
    rep = NotGTameReport()
    c = knit(q, window)
    for x in samples:
        cone = negative_cone_vs_postprojectives(q, x, window)
        theta = list(cone.theta)
        entry = {"x": list(x), "theta": [str(v) for v in theta], "cone_negative": cone.all_negative,
                 "transfer_identity": tr.identity_holds(), "wall": "skipped"}
        m = _wall_module(alg, theta, wall_box, seed)
        if m is not None:
            ok = linrep.gen_membership(tsum, m)
            tb = tr.theta_B(theta)
            ok = ok and pairing(tb, hom_dims_from(tr.summands, m)) == 0
            for d in quotient_dims(m):
                # quotients of M stay in Gen T, so hat d = [Hom(T, X)] and theta_B(hat d) = theta(d)
                ok = ok and pairing(tb, tr.hat(d)) == pairing(theta, d) >= 0
            for nd in c.nodes:
                if sum(c.dims[nd]) > perp_dim_cap:
                    entry.setdefault("budget_flags", []).append(f"T-perp check skipped at {nd}")
                    continue
                n_mod = c.module(nd)
                if all(h == 0 for h in hom_dims_from(tr.summands, n_mod)):
                    ok = ok and pairing(tb, ext_dims_from(tr.summands, n_mod)) > 0
            entry["wall"] = "pass" if ok else "fail"
            entry["wall_module_dims"] = list(m.dims)
        rep.samples.append(entry)
    return rep
