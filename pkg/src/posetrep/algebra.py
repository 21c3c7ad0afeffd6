"""Bound quiver algebras with a monomial path basis: path algebras and incidence algebras.

Every path of the quiver equals exactly one basis path modulo the relations
(for a path algebra the path itself, for an incidence algebra the chosen
representative of its interval), so products never need linear combinations.
"""
from __future__ import annotations

from collections import deque
from functools import cached_property

from .poset import Poset
from .quiver import Quiver

Path = tuple  # (source, target, arrow indices)


class AlgebraMismatch(ValueError):
    pass


class BoundAlgebra:
    """kind is 'path' (no relations) or 'incidence' (all parallel paths identified)."""

    def __init__(self, vertices, arrows, kind: str, name: str = "", _op_of=None):
        self.vertices = tuple(vertices)
        self.arrows = tuple(arrows)  # (source index, target index)
        self.kind = kind
        self.name = name
        self.n = len(self.vertices)
        self._op = _op_of
        self.out_arrows = [[] for _ in range(self.n)]
        self.in_arrows = [[] for _ in range(self.n)]
        for k, (s, t) in enumerate(self.arrows):
            self.out_arrows[s].append(k)
            self.in_arrows[t].append(k)
        self._build_paths()

    def __repr__(self):
        return f"BoundAlgebra({self.name or self.kind}, n={self.n}, dim={self.dim})"

    def _build_paths(self):
        n = self.n
        self.paths = [[[] for _ in range(n)] for _ in range(n)]
        self._index: list[list[dict]] = [[{} for _ in range(n)] for _ in range(n)]
        for i in range(n):
            if self.kind == "path":
                stack = [(i, ())]
                while stack:
                    v, arr = stack.pop()
                    self._index[i][v][arr] = len(self.paths[i][v])
                    self.paths[i][v].append(arr)
                    for k in self.out_arrows[v]:
                        stack.append((self.arrows[k][1], arr + (k,)))
                for j in range(n):
                    order = sorted(self.paths[i][j], key=lambda p: (len(p), p))
                    self.paths[i][j] = order
                    self._index[i][j] = {p: t for t, p in enumerate(order)}
            else:
                # breadth first: one shortest representative per reachable vertex
                seen = {i: ()}
                dq = deque([i])
                while dq:
                    v = dq.popleft()
                    for k in sorted(self.out_arrows[v]):
                        w = self.arrows[k][1]
                        if w not in seen:
                            seen[w] = seen[v] + (k,)
                            dq.append(w)
                for j, p in seen.items():
                    self.paths[i][j] = [p]

    def reduce(self, i: int, j: int, arrows: tuple) -> int:
        """Index of the basis path equal to the given path i -> j."""
        if self.kind == "path":
            return self._index[i][j][arrows]
        return 0

    def concat(self, i: int, j: int, a: int, k: int, b: int) -> int:
        """Basis index of paths[i][j][a] followed by paths[j][k][b]."""
        if self.kind == "incidence":
            return 0
        return self._index[i][k][self.paths[i][j][a] + self.paths[j][k][b]]

    @cached_property
    def cartan(self) -> list[list[int]]:
        """C[i][j] = dim of paths i -> j = dim Hom(P(j), P(i))."""
        return [[len(self.paths[i][j]) for j in range(self.n)] for i in range(self.n)]

    @cached_property
    def dim(self) -> int:
        return sum(map(sum, self.cartan))

    @cached_property
    def is_hereditary(self) -> bool:
        if self.kind == "path":
            return True
        # incidence algebra: hereditary iff no two distinct Hasse paths are parallel
        return all(c <= 1 for c in self._hasse_path_counts())

    def _hasse_path_counts(self):
        n = self.n
        out = []
        for i in range(n):
            cnt = [0] * n
            cnt[i] = 1
            order = self._topo()
            for v in order:
                if cnt[v]:
                    for k in self.out_arrows[v]:
                        cnt[self.arrows[k][1]] += cnt[v]
            out.extend(cnt)
        return out

    def _topo(self):
        indeg = [len(self.in_arrows[v]) for v in range(self.n)]
        dq = deque(v for v in range(self.n) if indeg[v] == 0)
        out = []
        while dq:
            v = dq.popleft()
            out.append(v)
            for k in self.out_arrows[v]:
                w = self.arrows[k][1]
                indeg[w] -= 1
                if indeg[w] == 0:
                    dq.append(w)
        return out

    def relations(self) -> list[tuple[Path, Path]]:
        """Commutativity generators: for i and two upper neighbours, the two routes to each common target."""
        if self.kind == "path":
            return []
        out = []
        for i in range(self.n):
            outs = self.out_arrows[i]
            for a in range(len(outs)):
                for b in range(a + 1, len(outs)):
                    ka, kb = outs[a], outs[b]
                    va, vb = self.arrows[ka][1], self.arrows[kb][1]
                    for j in range(self.n):
                        if self.paths[va][j] and self.paths[vb][j]:
                            out.append(((i, j, (ka,) + self.paths[va][j][0]),
                                        (i, j, (kb,) + self.paths[vb][j][0])))
        return out

    def opposite(self) -> "BoundAlgebra":
        if self._op is None:
            op = BoundAlgebra(self.vertices, [(t, s) for s, t in self.arrows], self.kind,
                              (self.name + "^op") if self.name else "", _op_of=self)
            self._op = op
        return self._op

    def quiver(self) -> Quiver:
        return Quiver(self.vertices, [(self.vertices[s], self.vertices[t]) for s, t in self.arrows])

    def same(self, other: "BoundAlgebra") -> bool:
        return self is other or (self.kind == other.kind and self.vertices == other.vertices
                                 and self.arrows == other.arrows)


def path_algebra(q: Quiver, name: str = "") -> BoundAlgebra:
    return BoundAlgebra(q.vertices, q.arrow_idx(), "path", name)


def incidence_algebra(p: Poset, name: str = "") -> BoundAlgebra:
    arrows = sorted(p.cover_pairs())
    alg = BoundAlgebra(p.elements, arrows, "incidence", name)
    alg.poset = p
    return alg
