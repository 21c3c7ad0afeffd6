"""Finite posets stored by their Hasse quiver.

Elements are opaque strings.  Internally everything works on indices with
bitmask up/down sets, which keeps the reduction search cheap.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import networkx as nx
from networkx.algorithms import isomorphism as nxiso


class CycleDetected(ValueError):
    pass


class NotACover(ValueError):
    pass


class ParseError(ValueError):
    pass


NAME_RE = re.compile(r"^[A-Za-z0-9_+÷ωmp\-]+$")


def _bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Poset:
    """Immutable finite poset.

    ``up[i]`` is the bitmask of elements >= i, ``down[i]`` of elements <= i.
    """

    __slots__ = ("elements", "index", "up", "down", "_covers", "_canon")

    def __init__(self, elements: Sequence[str], up: Sequence[int]):
        self.elements = tuple(elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise ValueError("duplicate element names")
        self.up = tuple(up)
        n = len(self.elements)
        down = [0] * n
        for i in range(n):
            for j in _bits(self.up[i]):
                down[j] |= 1 << i
        self.down = tuple(down)
        self._covers = None
        self._canon = None

    # basic structure -------------------------------------------------
    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"Poset({len(self)} elements, {len(self.cover_pairs())} covers)"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        return set(self.elements) == set(other.elements) and self.covers == other.covers

    def __hash__(self):
        return hash((frozenset(self.elements), self.covers))

    def leq_idx(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    def leq(self, x: str, y: str) -> bool:
        return self.leq_idx(self.index[x], self.index[y])

    def lt_idx(self, i: int, j: int) -> bool:
        return i != j and self.leq_idx(i, j)

    def cover_pairs(self) -> list[tuple[int, int]]:
        """Index pairs (i, j) with j covering i."""
        if self._covers is None:
            out = []
            for i in range(len(self)):
                strict = self.up[i] & ~(1 << i)
                # j covers i iff j in strict and no k in strict with k < j
                for j in _bits(strict):
                    between = strict & self.down[j] & ~(1 << j)
                    if not between:
                        out.append((i, j))
            self._covers = out
        return self._covers

    @property
    def covers(self) -> frozenset:
        return frozenset((self.elements[i], self.elements[j]) for i, j in self.cover_pairs())

    def upper_covers(self, i: int) -> list[int]:
        return [b for a, b in self.cover_pairs() if a == i]

    def lower_covers(self, i: int) -> list[int]:
        return [a for a, b in self.cover_pairs() if b == i]

    def minimal(self) -> list[int]:
        return [i for i in range(len(self)) if self.down[i] == 1 << i]

    def maximal(self) -> list[int]:
        return [i for i in range(len(self)) if self.up[i] == 1 << i]

    def comparable(self, i: int, j: int) -> bool:
        return self.leq_idx(i, j) or self.leq_idx(j, i)

    def interval_count(self) -> int:
        return sum(bin(u).count("1") for u in self.up)

    def interval(self, i: int, j: int) -> int:
        return self.up[i] & self.down[j]

    def is_connected(self) -> bool:
        n = len(self)
        if n == 0:
            return True
        seen = 1
        stack = [0]
        while stack:
            i = stack.pop()
            nb = (self.up[i] | self.down[i]) & ~seen
            for j in _bits(nb):
                seen |= 1 << j
                stack.append(j)
        return seen == (1 << n) - 1

    def components(self) -> list[list[int]]:
        n = len(self)
        left = (1 << n) - 1
        out = []
        while left:
            start = (left & -left).bit_length() - 1
            comp = 1 << start
            stack = [start]
            while stack:
                i = stack.pop()
                nb = (self.up[i] | self.down[i]) & ~comp
                for j in _bits(nb):
                    comp |= 1 << j
                    stack.append(j)
            out.append(list(_bits(comp)))
            left &= ~comp
        return out

    def opposite(self) -> "Poset":
        return Poset(self.elements, self.down)

    def induced(self, idxs: Sequence[int]) -> "Poset":
        idxs = sorted(idxs)
        pos = {v: k for k, v in enumerate(idxs)}
        up = []
        for v in idxs:
            m = 0
            for w in _bits(self.up[v]):
                if w in pos:
                    m |= 1 << pos[w]
            up.append(m)
        return Poset([self.elements[v] for v in idxs], up)

    def subposet(self, names: Iterable[str]) -> "Poset":
        return self.induced([self.index[x] for x in names])

    def relabel(self, mapping: dict) -> "Poset":
        return Poset([mapping[e] for e in self.elements], self.up)

    def hasse_graph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(self.elements)
        g.add_edges_from((self.elements[i], self.elements[j]) for i, j in self.cover_pairs())
        return g

    def comparability_digraph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(range(len(self)))
        for i in range(len(self)):
            for j in _bits(self.up[i] & ~(1 << i)):
                g.add_edge(i, j)
        return g

    def has_parallel_paths(self) -> bool:
        """True iff some pair is joined by two distinct Hasse paths."""
        n = len(self)
        covs = self.cover_pairs()
        ups = [[] for _ in range(n)]
        for a, b in covs:
            ups[a].append(b)
        order = self.linear_extension()
        for s in range(n):
            count = [0] * n
            count[s] = 1
            for v in order:
                if count[v]:
                    for w in ups[v]:
                        count[w] += count[v]
                        if count[w] > 1:
                            return True
        return False

    def is_hereditary(self) -> bool:
        return not self.has_parallel_paths()

    def linear_extension(self) -> list[int]:
        return sorted(range(len(self)), key=lambda i: bin(self.down[i]).count("1"))

    def canonical_form(self) -> str:
        if self._canon is None:
            self._canon = _canonical(self)
        return self._canon


# ----------------------------------------------------------------------
@dataclass(frozen=True)
class SubposetWitness:
    parent: Poset
    members: frozenset

    @property
    def convex(self) -> bool:
        return is_convex(self.parent, self.members)

    def poset(self) -> Poset:
        return self.parent.subposet(self.members)


@dataclass(frozen=True)
class ContractionStep:
    kind: str  # "delete-element" | "contract-cover"
    datum: tuple | str

    def to_json(self):
        if self.kind == "delete-element":
            return {"kind": self.kind, "element": self.datum}
        return {"kind": self.kind, "cover": list(self.datum)}

    @staticmethod
    def from_json(d) -> "ContractionStep":
        if d["kind"] == "delete-element":
            return ContractionStep("delete-element", d["element"])
        return ContractionStep("contract-cover", tuple(d["cover"]))


def from_covers(pairs: Iterable[tuple], elements: Iterable[str] | None = None) -> Poset:
    """Poset generated by the given relations (transitively closed)."""
    pairs = [(str(a), str(b)) for a, b in pairs]
    names: list[str] = []
    seen = set()
    for e in list(elements or []) + [x for p in pairs for x in p]:
        e = str(e)
        if e not in seen:
            seen.add(e)
            names.append(e)
    idx = {e: i for i, e in enumerate(names)}
    n = len(names)
    g = nx.DiGraph()
    g.add_nodes_from(range(n))
    for a, b in pairs:
        if a == b:
            continue
        g.add_edge(idx[a], idx[b])
    if not nx.is_directed_acyclic_graph(g):
        raise CycleDetected("relation has a cycle; antisymmetry fails")
    up = [1 << i for i in range(n)]
    for v in reversed(list(nx.topological_sort(g))):
        for w in g.successors(v):
            up[v] |= up[w]
    return Poset(names, up)


def chain(n: int) -> Poset:
    return from_covers([(str(i), str(i + 1)) for i in range(1, n)], [str(i) for i in range(1, n + 1)])


def antichain(n: int) -> Poset:
    return Poset([str(i) for i in range(1, n + 1)], [1 << i for i in range(n)])


def product(p: Poset, q: Poset) -> Poset:
    names = [f"{a}_{b}" for a in p.elements for b in q.elements]
    nq = len(q)
    up = []
    for i in range(len(p)):
        for j in range(nq):
            m = 0
            for i2 in _bits(p.up[i]):
                for j2 in _bits(q.up[j]):
                    m |= 1 << (i2 * nq + j2)
            up.append(m)
    return Poset(names, up)


def product_of_chains(*sizes: int) -> Poset:
    p = chain(sizes[0])
    for s in sizes[1:]:
        p = product(p, chain(s))
    return p


def delete(p: Poset, x: str) -> Poset:
    return p.induced([i for i in range(len(p)) if p.elements[i] != x])


def contract_cover_idx(p: Poset, i: int, j: int) -> Poset:
    """Identify j with i (j covers i).  The merged element keeps i's name."""
    n = len(p)
    keep = [k for k in range(n) if k != j]
    pos = {v: t for t, v in enumerate(keep)}
    pos[j] = pos[i]
    # anything below the merged point now lies below everything above i
    up = []
    for v in keep:
        m = p.up[v]
        if p.leq_idx(v, j):
            m |= p.up[i]
        out = 0
        for w in _bits(m):
            out |= 1 << pos[w]
        up.append(out)
    # closure: the formula above is already transitive, but be safe
    changed = True
    while changed:
        changed = False
        for a in range(len(keep)):
            acc = up[a]
            for b in _bits(up[a]):
                acc |= up[b]
            if acc != up[a]:
                up[a] = acc
                changed = True
    return Poset([p.elements[v] for v in keep], up)


def contract(p: Poset, step: ContractionStep) -> Poset:
    if step.kind == "delete-element":
        if step.datum not in p.index:
            raise KeyError(step.datum)
        return delete(p, step.datum)
    if step.kind == "contract-cover":
        x, y = step.datum
        i, j = p.index.get(x), p.index.get(y)
        if i is None or j is None or (i, j) not in set(p.cover_pairs()):
            raise NotACover(f"{x} < {y} is not a cover")
        return contract_cover_idx(p, i, j)
    raise ValueError(f"unknown step kind {step.kind}")


def replay(p: Poset, steps: Sequence[ContractionStep]) -> Poset:
    for s in steps:
        p = contract(p, s)
    return p


def is_convex(p: Poset, members: Iterable[str]) -> bool:
    mask = 0
    for x in members:
        mask |= 1 << p.index[x]
    for i in _bits(mask):
        for j in _bits(mask & p.up[i]):
            if p.interval(i, j) & ~mask:
                return False
    return True


def convex_hull(w: SubposetWitness) -> SubposetWitness:
    p = w.parent
    mask = 0
    for x in w.members:
        mask |= 1 << p.index[x]
    hull = mask
    for i in _bits(mask):
        for j in _bits(mask & p.up[i]):
            hull |= p.interval(i, j)
    return SubposetWitness(p, frozenset(p.elements[i] for i in _bits(hull)))


def find_subposet_isomorphic(p: Poset, pattern: Poset, convex_only: bool = False) -> SubposetWitness | None:
    """Induced subposet of p isomorphic to pattern (first in VF2 order)."""
    if len(pattern) > len(p):
        return None
    for found in iter_subposets_isomorphic(p, pattern):
        w = SubposetWitness(p, frozenset(found.values()))
        if not convex_only or w.convex:
            return w
    return None


def iter_subposets_isomorphic(p: Poset, pattern: Poset):
    """Yield maps pattern-element -> p-element of induced embeddings."""
    G = p.comparability_digraph()
    H = pattern.comparability_digraph()
    gm = nxiso.DiGraphMatcher(G, H)
    for m in gm.subgraph_isomorphisms_iter():
        yield {pattern.elements[h]: p.elements[g] for g, h in m.items()}


def is_isomorphic(p: Poset, q: Poset) -> bool:
    return len(p) == len(q) and p.canonical_form() == q.canonical_form()


def canonical_form(p: Poset) -> str:
    return p.canonical_form()


# --- canonical labelling -------------------------------------------------

def _refine(n, ups, downs, colors):
    """Equitable refinement on the Hasse quiver; colors are ints."""
    while True:
        keys = [
            (colors[v], tuple(sorted(colors[w] for w in ups[v])), tuple(sorted(colors[w] for w in downs[v])))
            for v in range(n)
        ]
        ranks = {k: r for r, k in enumerate(sorted(set(keys)))}
        new = [ranks[k] for k in keys]
        if len(ranks) == len(set(colors)):
            return new
        colors = new


def _canonical(p: Poset) -> str:
    n = len(p)
    if n == 0:
        return "0:"
    covs = p.cover_pairs()
    ups = [[] for _ in range(n)]
    downs = [[] for _ in range(n)]
    for a, b in covs:
        ups[a].append(b)
        downs[b].append(a)
    init = [(bin(p.down[v]).count("1"), bin(p.up[v]).count("1"), len(downs[v]), len(ups[v])) for v in range(n)]
    r = {k: i for i, k in enumerate(sorted(set(init)))}
    colors = _refine(n, ups, downs, [r[k] for k in init])
    twin_key = [(frozenset(ups[v]), frozenset(downs[v])) for v in range(n)]
    best: list = [None]

    def leaf_string(cols):
        order = sorted(range(n), key=lambda v: cols[v])
        lab = {v: k for k, v in enumerate(order)}
        edges = sorted((lab[a], lab[b]) for a, b in covs)
        return f"{n}:" + ",".join(f"{a}-{b}" for a, b in edges)

    def search(cols):
        if len(set(cols)) == n:
            s = leaf_string(cols)
            if best[0] is None or s < best[0]:
                best[0] = s
            return
        cnt = {}
        for c in cols:
            cnt[c] = cnt.get(c, 0) + 1
        target = min(c for c, k in cnt.items() if k > 1)
        cell = [v for v in range(n) if cols[v] == target]
        tried = set()
        for v in cell:
            tk = twin_key[v]
            if tk in tried:
                continue
            tried.add(tk)
            # v goes first inside its cell; other colours keep their order
            new = [2 * c + 1 if (c == target and u != v) else 2 * c for u, c in enumerate(cols)]
            rr = {k: i for i, k in enumerate(sorted(set(new)))}
            search(_refine(n, ups, downs, [rr[c] for c in new]))

    search(colors)
    return best[0]


# --- named families ------------------------------------------------------

def c_ell_diamond(ell: int) -> Poset:
    """C_ell with a bottom 0 and top ω added (2 ell + 2 elements)."""
    if ell < 2:
        raise ValueError("ell >= 2 required")
    pairs = []
    for i in range(1, ell + 1):
        prev = ell if i == 1 else i - 1
        pairs.append((f"p÷{i}", f"p+{i}"))
        pairs.append((f"p÷{i}", f"p+{prev}"))
        pairs.append(("0", f"p÷{i}"))
        pairs.append((f"p+{i}", "ω"))
    return from_covers(pairs)


def c_ell(ell: int) -> Poset:
    return c_ell_diamond(ell).subposet(
        [f"p÷{i}" for i in range(1, ell + 1)] + [f"p+{i}" for i in range(1, ell + 1)]
    )


def figure8() -> Poset:
    return from_covers([
        ("0", "l1"), ("0", "r1"), ("l1", "m"), ("r1", "m"),
        ("m", "l2"), ("m", "r2"), ("l2", "ω"), ("r2", "ω"),
    ])


def a_tilde_cycle(word: str) -> Poset:
    """Cycle poset: letter k orients the edge v_k -- v_{k+1 mod m}; 'f' forward, 'b' backward."""
    m = len(word)
    if m < 2 or set(word) - {"f", "b"}:
        raise ValueError("orientation word over {f,b} of length >= 2")
    pairs = []
    for k, ch in enumerate(word):
        a, b = f"v{k}", f"v{(k + 1) % m}"
        pairs.append((a, b) if ch == "f" else (b, a))
    return from_covers(pairs)


def d_tilde(n: int) -> Poset:
    """D̃_n tree: chain v0<...<v_{n-2}; a,b below v0; c,d below v_{n-2}."""
    if n < 4:
        raise ValueError("n >= 4")
    pairs = [(f"v{i}", f"v{i + 1}") for i in range(n - 2)]
    top = f"v{n - 2}"
    pairs += [("a", "v0"), ("b", "v0"), ("c", top), ("d", top)]
    if n == 4:
        pairs = [("a", "v0"), ("b", "v0"), ("c", "v0"), ("d", "v0")]
    return from_covers(pairs)


def hyperbolic_example() -> Poset:
    """Seven-element multiply connected poset with a pd 2 / id 2 module."""
    return from_covers(
        [
            ("minL", "childL"), ("minL", "childR"), ("minL", "maxR"),
            ("minR", "maxR"), ("minR", "maxL"), ("childR", "maxL"),
            ("childL", "ccL"), ("ccL", "maxL"),
        ],
        ["minL", "minR", "childL", "childR", "ccL", "maxL", "maxR"],
    )


# --- text format ---------------------------------------------------------

def parse_poset(text: str) -> Poset:
    pairs = []
    names = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "<" in line:
            parts = [t.strip() for t in line.split("<")]
            if len(parts) != 2 or not all(parts):
                raise ParseError(f"line {lineno}: expected 'a < b'")
            for t in parts:
                if not NAME_RE.match(t):
                    raise ParseError(f"line {lineno}: bad element name {t!r}")
            pairs.append((parts[0], parts[1]))
        else:
            if not NAME_RE.match(line):
                raise ParseError(f"line {lineno}: bad element name {line!r}")
            names.append(line)
    return from_covers(pairs, names)


def format_poset(p: Poset) -> str:
    lines = [f"{p.elements[i]} < {p.elements[j]}" for i, j in sorted(p.cover_pairs())]
    touched = {x for i, j in p.cover_pairs() for x in (i, j)}
    lines += [p.elements[i] for i in range(len(p)) if i not in touched]
    return "\n".join(lines) + "\n"


def random_poset(n: int, density: float, rng) -> Poset:
    """Random poset from a random DAG on a shuffled order."""
    names = [f"x{i}" for i in range(n)]
    pairs = [(names[i], names[j]) for i, j in itertools.combinations(range(n), 2) if rng.random() < density]
    return from_covers(pairs, names)
