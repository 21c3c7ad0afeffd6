"""Acyclic quivers: graph types, the Tits form, hyperbolicity."""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import networkx as nx
import numpy as np

from . import linalg as la


class NotConnected(ValueError):
    pass


class NotWild(ValueError):
    pass


class ParseError(ValueError):
    pass


class Quiver:
    """Finite acyclic quiver; arrows are (source, target) name pairs, repeats allowed."""

    __slots__ = ("vertices", "arrows", "index")

    def __init__(self, vertices: Iterable[str], arrows: Iterable[tuple[str, str]]):
        self.vertices = tuple(str(v) for v in vertices)
        self.index = {v: i for i, v in enumerate(self.vertices)}
        self.arrows = tuple((str(a), str(b)) for a, b in arrows)
        for a, b in self.arrows:
            if a not in self.index or b not in self.index:
                raise ValueError(f"arrow {a}->{b} uses unknown vertex")
        g = nx.DiGraph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.arrows)
        if not nx.is_directed_acyclic_graph(g):
            raise ValueError("quiver has an oriented cycle")

    def __len__(self):
        return len(self.vertices)

    def __repr__(self):
        return f"Quiver({len(self.vertices)} vertices, {len(self.arrows)} arrows)"

    def __eq__(self, other):
        return isinstance(other, Quiver) and set(self.vertices) == set(other.vertices) and \
            Counter(self.arrows) == Counter(other.arrows)

    def __hash__(self):
        return hash((frozenset(self.vertices), frozenset(Counter(self.arrows).items())))

    @property
    def n(self) -> int:
        return len(self.vertices)

    def arrow_idx(self) -> list[tuple[int, int]]:
        return [(self.index[a], self.index[b]) for a, b in self.arrows]

    def multiplicity(self) -> list[list[int]]:
        """d[i][j] = number of arrows i -> j."""
        n = self.n
        d = [[0] * n for _ in range(n)]
        for i, j in self.arrow_idx():
            d[i][j] += 1
        return d

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, [(b, a) for a, b in self.arrows])

    def delete(self, vs: Iterable[str]) -> "Quiver":
        vs = set(vs)
        return Quiver([v for v in self.vertices if v not in vs],
                      [(a, b) for a, b in self.arrows if a not in vs and b not in vs])

    def subquiver(self, vs: Iterable[str]) -> "Quiver":
        vs = set(vs)
        return Quiver([v for v in self.vertices if v in vs],
                      [(a, b) for a, b in self.arrows if a in vs and b in vs])

    def graph(self) -> nx.MultiGraph:
        g = nx.MultiGraph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.arrows)
        return g

    def is_connected(self) -> bool:
        return self.n > 0 and nx.is_connected(self.graph())

    def components(self) -> list["Quiver"]:
        return [self.subquiver(c) for c in nx.connected_components(self.graph())]

    def topological_order(self) -> list[int]:
        g = nx.DiGraph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.arrow_idx())
        return list(nx.lexicographical_topological_sort(g))

    def sinks(self) -> list[str]:
        src = {a for a, _ in self.arrows}
        return [v for v in self.vertices if v not in src]

    def sources(self) -> list[str]:
        tgt = {b for _, b in self.arrows}
        return [v for v in self.vertices if v not in tgt]

    def path_counts(self) -> list[list[int]]:
        """C[i][j] = number of paths i -> j (trivial path included)."""
        n = self.n
        order = self.topological_order()
        succ = [[] for _ in range(n)]
        for i, j in self.arrow_idx():
            succ[i].append(j)
        C = [[0] * n for _ in range(n)]
        for v in reversed(order):
            C[v][v] = 1
            for w in succ[v]:
                for u in range(n):
                    C[v][u] += C[w][u]
        return C


# --- text format ---------------------------------------------------------

def parse_quiver(text: str) -> Quiver:
    verts: list[str] = []
    arrows = []
    seen = set()

    def note(v):
        if v not in seen:
            seen.add(v)
            verts.append(v)

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "->" in line:
            parts = [t.strip() for t in line.split("->")]
            if len(parts) != 2 or not all(parts):
                raise ParseError(f"line {lineno}: expected 'a -> b'")
            note(parts[0])
            note(parts[1])
            arrows.append((parts[0], parts[1]))
        else:
            note(line)
    return Quiver(verts, arrows)


def format_quiver(q: Quiver) -> str:
    lines = [f"{a} -> {b}" for a, b in q.arrows]
    used = {x for ar in q.arrows for x in ar}
    lines += [v for v in q.vertices if v not in used]
    return "\n".join(lines) + "\n"


# --- Tits form -----------------------------------------------------------

def tits(q: Quiver, x: Sequence) -> Fraction | int:
    s = sum(v * v for v in x)
    for i, j in q.arrow_idx():
        s -= x[i] * x[j]
    return s


def tits_gram(q: Quiver) -> list[list[Fraction]]:
    """Symmetric G with x G x^T = q(x)."""
    n = q.n
    g = la.zeros(n, n)
    for i in range(n):
        g[i][i] = la.ONE
    half = Fraction(1, 2)
    for i, j in q.arrow_idx():
        g[i][j] -= half
        g[j][i] -= half
    return g


def form_type(q: Quiver) -> str:
    """'Dynkin' | 'Euclidean' | 'Wild' from the inertia of the Tits form (connected q)."""
    # Float eigenvalues decide when none is near zero: for an integer matrix the
    # nonzero eigenvalues are far larger than the rounding error at these sizes.
    g2 = 2 * np.eye(q.n)
    for i, j in q.arrow_idx():
        g2[i, j] -= 1
        g2[j, i] -= 1
    ev = np.linalg.eigvalsh(g2) if q.n else np.zeros(0)
    if ev.size and ev.min() < -1e-6:
        return "Wild"
    if q.n <= 24 and np.all(ev > 1e-6):
        return "Dynkin"
    pos, neg, zero = la.inertia(tits_gram(q))
    if neg:
        return "Wild"
    if zero == 0:
        return "Dynkin"
    if zero == 1:
        return "Euclidean"
    return "Wild"


@dataclass(frozen=True)
class GraphType:
    tag: str  # Dynkin | Euclidean | Wild
    family: str = ""  # A, D, E (with ~ for Euclidean)
    rank: int = 0

    def __str__(self):
        if self.tag == "Wild":
            return "Wild"
        return f"{self.tag}({self.family},{self.rank})"


def _arms(g: nx.Graph, center) -> list[int]:
    """Lengths of the paths hanging off a branch vertex (tree case)."""
    out = []
    for nb in g.neighbors(center):
        length, prev, cur = 1, center, nb
        while True:
            nxt = [w for w in g.neighbors(cur) if w != prev]
            if len(nxt) != 1:
                if nxt:
                    return []
                break
            prev, cur = cur, nxt[0]
            length += 1
        out.append(length)
    return sorted(out)


def pattern_type(q: Quiver) -> GraphType:
    """Graph type by shape recognition of the underlying multigraph (connected q)."""
    n = q.n
    mult = Counter(frozenset(a) for a in q.arrows)
    if n == 1:
        return GraphType("Dynkin", "A", 1)
    if max(mult.values()) >= 3:
        return GraphType("Wild")
    if max(mult.values()) == 2:
        if n == 2 and len(mult) == 1:
            return GraphType("Euclidean", "Ã", 1)
        return GraphType("Wild")
    g = nx.Graph()
    g.add_nodes_from(q.vertices)
    g.add_edges_from(q.arrows)
    e = g.number_of_edges()
    degs = sorted((d for _, d in g.degree()), reverse=True)
    if e == n:  # one cycle
        if all(d == 2 for d in degs):
            return GraphType("Euclidean", "Ã", n - 1)
        return GraphType("Wild")
    if e != n - 1:
        return GraphType("Wild")
    # trees
    if degs[0] <= 2:
        return GraphType("Dynkin", "A", n)
    branch = [v for v, d in g.degree() if d >= 3]
    if len(branch) == 1:
        c = branch[0]
        arms = _arms(g, c)
        if g.degree(c) == 4:
            return GraphType("Euclidean", "D̃", 4) if arms == [1, 1, 1, 1] else GraphType("Wild")
        if g.degree(c) > 4:
            return GraphType("Wild")
        a = arms
        if a[0] == 1 and a[1] == 1:
            return GraphType("Dynkin", "D", n)
        if a == [1, 2, 2]:
            return GraphType("Dynkin", "E", 6)
        if a == [1, 2, 3]:
            return GraphType("Dynkin", "E", 7)
        if a == [1, 2, 4]:
            return GraphType("Dynkin", "E", 8)
        if a == [2, 2, 2]:
            return GraphType("Euclidean", "Ẽ", 6)
        if a == [1, 3, 3]:
            return GraphType("Euclidean", "Ẽ", 7)
        if a == [1, 2, 5]:
            return GraphType("Euclidean", "Ẽ", 8)
        return GraphType("Wild")
    if len(branch) == 2 and all(g.degree(b) == 3 for b in branch):
        ok = all(sum(1 for w in g.neighbors(b) if g.degree(w) == 1) == 2 for b in branch)
        if ok:
            return GraphType("Euclidean", "D̃", n - 1)
    return GraphType("Wild")


def classify_graph(q: Quiver) -> list[GraphType]:
    """GraphType per connected component; pattern and form verdicts must agree."""
    out = []
    for comp in q.components():
        pt = pattern_type(comp)
        ft = form_type(comp)
        if pt.tag != ft:
            raise AssertionError(f"pattern {pt} disagrees with Tits form verdict {ft}")
        out.append(pt)
    return out


def graph_tag(q: Quiver) -> str:
    """Worst component tag: Wild > Euclidean > Dynkin."""
    tags = {t.tag for t in classify_graph(q)}
    for t in ("Wild", "Euclidean", "Dynkin"):
        if t in tags:
            return t
    return "Dynkin"


def is_wild(q: Quiver) -> bool:
    return any(form_type(c) == "Wild" for c in q.components())


# --- structure and hyperbolicity ----------------------------------------

def structure(q: Quiver) -> dict:
    g = q.graph()
    tips = [v for v in q.vertices if g.degree(v) == 1]
    is_tree = q.is_connected() and g.number_of_edges() == q.n - 1
    return {"tips": tips, "twice_edge_connected": not tips, "is_tree": is_tree}


def is_hyperbolic(q: Quiver) -> bool:
    if not q.is_connected():
        raise NotConnected("quiver must be connected")
    if form_type(q) != "Wild":
        return False
    for v in q.vertices:
        rest = q.delete([v])
        if any(form_type(c) == "Wild" for c in rest.components()):
            return False
    return True


def _connected_wild(q: Quiver) -> bool:
    return q.n > 0 and q.is_connected() and form_type(q) == "Wild"


def reduce_to_hyperbolic(q: Quiver) -> list[str]:
    """Vertices to delete, in order, ending at a hyperbolic quiver.

    A deletion that lands on a hyperbolic quiver at once is preferred.
    Otherwise trees and quivers with tips lose a tip when possible, and failing
    that (no tips, or the one-cycle-plus-pendant shape) a vertex as far as
    possible from the branch vertices goes.  Ties go to the smallest vertex name.
    """
    if not _connected_wild(q):
        raise NotWild("input must be connected and wild")
    out = []
    cur = q
    while not is_hyperbolic(cur):
        info = structure(cur)
        g = nx.Graph(cur.graph())
        branch = [v for v in cur.vertices if g.degree(v) >= 3]
        if branch:
            dist = {v: min(nx.shortest_path_length(g, v, b) for b in branch) for v in cur.vertices}
        else:
            dist = {v: 0 for v in cur.vertices}
        tips = sorted(info["tips"])
        others = sorted((v for v in cur.vertices if v not in info["tips"]), key=lambda v: (-dist[v], v))
        cands = tips + others
        valid = [v for v in cands if _connected_wild(cur.delete([v]))]
        direct = [v for v in valid if is_hyperbolic(cur.delete([v]))]
        choice = (direct or valid or [None])[0]
        if choice is None:
            raise AssertionError("no vertex keeps the quiver connected and wild")
        out.append(choice)
        cur = cur.delete([choice])
    return out


def replay_reduction(q: Quiver, steps: Sequence[str]) -> bool:
    cur = q
    for v in steps:
        cur = cur.delete([v])
        if not _connected_wild(cur):
            return False
    return is_hyperbolic(cur)


def negative_cone_contains(q: Quiver, x: Sequence) -> bool:
    return all(v > 0 for v in x) and tits(q, x) < 0


def find_negative_cone_vector(q: Quiver, box: int = 6) -> list[int] | None:
    """Positive integer x with q(x) < 0 and coordinates <= box, smallest max-coordinate first.

    Within one level the lexicographically first witness is returned.
    """
    n = q.n
    d = np.zeros((n, n), dtype=np.int64)
    for i, j in q.arrow_idx():
        d[i, j] += 1
    for m in range(1, box + 1):
        grid = np.array(list(itertools.product(range(1, m + 1), repeat=n)), dtype=np.int64)
        grid = grid[grid.max(axis=1) == m]
        vals = (grid * grid).sum(axis=1) - np.einsum("ki,ij,kj->k", grid, d, grid)
        hit = np.flatnonzero(vals < 0)
        if hit.size:
            return [int(v) for v in grid[hit[0]]]
    return None


def _excess_tuples(m: int, top: int, budget: int | None):
    """Tuples in 0..top of length m with sum <= budget (no bound if None)."""
    if budget is None:
        yield from itertools.product(range(top + 1), repeat=m)
        return
    if m == 0:
        yield ()
        return
    for k in range(min(top, budget) + 1):
        for rest in _excess_tuples(m - 1, top, budget - k):
            yield (k,) + rest


def multigraph_quivers(n: int, max_mult: int = 3, max_excess: int | None = None):
    """Connected quivers on n vertices, one per isomorphism class of underlying multigraph.

    Multiplicities lie in 1..max_mult; `max_excess` bounds the total number of
    arrows beyond the first on each edge.  Arrows point from lower to higher index.
    """
    from networkx.algorithms.isomorphism import GraphMatcher

    for g in nx.graph_atlas_g():
        if g.number_of_nodes() != n or (n and not nx.is_connected(g)):
            continue
        edges = sorted(tuple(sorted(e)) for e in g.edges())
        pos = {e: k for k, e in enumerate(edges)}
        perms = []
        for iso in GraphMatcher(g, g).isomorphisms_iter():
            perms.append([pos[tuple(sorted((iso[a], iso[b])))] for a, b in edges])
        for ex in _excess_tuples(len(edges), max_mult - 1, max_excess):
            # keep the lexicographically largest image as orbit representative
            if any(tuple(ex[p[k]] for k in range(len(edges))) > ex for p in perms):
                continue
            arrows = []
            for (a, b), k in zip(edges, ex):
                arrows += [(str(a), str(b))] * (k + 1)
            yield Quiver([str(v) for v in range(n)], arrows)


# --- named quivers ---------------------------------------------------------

def linear_a(n: int) -> Quiver:
    return Quiver([str(i) for i in range(1, n + 1)], [(str(i), str(i + 1)) for i in range(1, n)])


def kronecker(m: int = 2) -> Quiver:
    return Quiver(["1", "2"], [("1", "2")] * m)


def star(k: int) -> Quiver:
    """Centre c with k leaves, all arrows into the centre."""
    return Quiver(["c"] + [f"l{i}" for i in range(1, k + 1)], [(f"l{i}", "c") for i in range(1, k + 1)])


def a_tilde_tilde(p: int, q: int) -> Quiver:
    """Cycle with p + q arrows from a source s to b on two sides, plus b -> a.

    Vertex a is the unique tip (p + q + 1 vertices).
    """
    if p < 1 or q < 1:
        raise ValueError("p, q >= 1")
    verts = ["a", "b", "s"] + [f"x{i}" for i in range(1, p)] + [f"y{i}" for i in range(1, q)]
    side1 = ["s"] + [f"x{i}" for i in range(1, p)] + ["b"]
    side2 = ["s"] + [f"y{i}" for i in range(1, q)] + ["b"]
    arrows = [("b", "a")]
    for side in (side1, side2):
        arrows += list(zip(side, side[1:]))
    return Quiver(verts, arrows)


def tree_quiver(edges: Sequence[tuple[str, str]]) -> Quiver:
    verts = []
    for e in edges:
        for v in e:
            if v not in verts:
                verts.append(v)
    return Quiver(verts, edges)


def reorient(q: Quiver, flips: Iterable[int]) -> Quiver:
    flips = set(flips)
    return Quiver(q.vertices, [(b, a) if k in flips else (a, b) for k, (a, b) in enumerate(q.arrows)])


def orientations(q: Quiver, cap: int | None = None):
    """All re-orientations of the arrows (acyclic ones only), up to `cap`."""
    m = len(q.arrows)
    count = 0
    for bits in range(1 << m):
        try:
            r = reorient(q, [k for k in range(m) if bits >> k & 1])
        except ValueError:
            continue
        yield r
        count += 1
        if cap is not None and count >= cap:
            return


def quiver_canonical(q: Quiver) -> str:
    """Isomorphism label of a small quiver (brute force over refinement classes)."""
    n = q.n
    d = q.multiplicity()
    key = lambda v: (sum(d[v]), sum(d[u][v] for u in range(n)))
    groups = sorted(range(n), key=key)
    best = None
    cells: dict = {}
    for v in groups:
        cells.setdefault(key(v), []).append(v)
    ordered = [cells[k] for k in sorted(cells)]
    for perms in itertools.product(*(itertools.permutations(c) for c in ordered)):
        order = [v for p in perms for v in p]
        s = tuple(d[a][b] for a in order for b in order)
        if best is None or s < best:
            best = s
    return f"{n}:" + ",".join(map(str, best or ()))


def arms_tree(*arms: int) -> Quiver:
    """Star-shaped tree: centre c with arms of the given lengths, arrows towards c."""
    verts, arrows = ["c"], []
    for k, length in enumerate(arms):
        prev = "c"
        for i in range(1, length + 1):
            v = f"{chr(97 + k)}{i}"
            verts.append(v)
            arrows.append((v, prev))
            prev = v
    return Quiver(verts, arrows)


def d_tilde_tilde(n: int) -> Quiver:
    """n + 2 vertices: a path v1..v_{n-3}, two leaves at v1, arms of length 1 and 2 at the far end."""
    if n < 4:
        raise ValueError("n >= 4")
    path = [f"v{i}" for i in range(1, n - 2)]
    verts = path + ["l1", "l2", "r1", "s1", "s2"]
    arrows = list(zip(path, path[1:]))
    end = path[-1]
    arrows += [("l1", path[0]), ("l2", path[0]), (end, "r1"), (end, "s1"), ("s1", "s2")]
    return Quiver(verts, arrows)


def e_tilde_tilde(k: int) -> Quiver:
    return {6: lambda: arms_tree(2, 2, 3), 7: lambda: arms_tree(1, 3, 4), 8: lambda: arms_tree(1, 2, 6)}[k]()
