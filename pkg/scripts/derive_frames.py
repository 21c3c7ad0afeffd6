"""Re-derive the minimal representation-infinite posets and compare with the shipped frames.

Grows posets one maximal-ish element at a time (a new element placed above an
antichain), keeping those whose Tits form is positive definite.  A poset whose
form is positive semidefinite of corank one, with a sincere positive radical,
is a critical candidate.  Candidates that have no rep-infinite deletion or
cover contraction are minimal.  The script then checks that the minimal ones are
exactly the orientation variants in ``loupias_labels()``.

Independent of the package except for the final canonical-form comparison.
Takes a few minutes.

    python3 scripts/derive_frames.py [--max-size 9]
"""
from __future__ import annotations

import argparse
import itertools
import time
from collections import Counter
from fractions import Fraction

import networkx as nx
import sympy as sp


def closure(n, rel):
    leq = [[i == j for j in range(n)] for i in range(n)]
    for i, j in rel:
        leq[i][j] = True
    for k in range(n):
        for i in range(n):
            if leq[i][k]:
                for j in range(n):
                    if leq[k][j]:
                        leq[i][j] = True
    return leq


def covers(n, leq):
    return [(i, j) for i in range(n) for j in range(n)
            if i != j and leq[i][j] and not any(k not in (i, j) and leq[i][k] and leq[k][j] for k in range(n))]


def ncomp(elems, leq):
    elems = list(elems)
    g = nx.Graph()
    g.add_nodes_from(elems)
    g.add_edges_from((a, b) for a in elems for b in elems if a != b and leq[a][b])
    return nx.number_connected_components(g)


def gram(n, leq):
    """Twice the Tits form: -1 per cover, +(c - 1) for a non-cover pair whose open interval has c components."""
    G = [[Fraction(2 if i == j else 0) for j in range(n)] for i in range(n)]
    cv = set(covers(n, leq))
    for i in range(n):
        for j in range(n):
            if i == j or not leq[i][j]:
                continue
            if (i, j) in cv:
                G[i][j] -= 1
                G[j][i] -= 1
            else:
                inner = [k for k in range(n) if k not in (i, j) and leq[i][k] and leq[k][j]]
                r = ncomp(inner, leq) - 1
                G[i][j] += r
                G[j][i] += r
    return G


def inertia(G):
    """(pos, zero, neg) by symmetric elimination over the rationals."""
    A = [row[:] for row in G]
    n = len(A)
    pos = zero = neg = 0
    idx = list(range(n))
    while idx:
        piv = next((i for i in idx if A[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in idx for j in idx if i < j and A[i][j] != 0), None)
            if pair is None:
                zero += len(idx)
                break
            i, j = pair
            for k in range(n):
                A[i][k] += A[j][k]
            for k in range(n):
                A[k][i] += A[k][j]
            continue
        d = A[piv][piv]
        if d > 0:
            pos += 1
        else:
            neg += 1
        for i in idx:
            if i != piv and A[i][piv] != 0:
                f = A[i][piv] / d
                for k in idx:
                    A[i][k] -= f * A[piv][k]
        for i in idx:
            if i != piv:
                A[piv][i] = 0
        idx.remove(piv)
    return pos, zero, neg


def hasse(n, leq):
    g = nx.DiGraph()
    g.add_nodes_from(range(n))
    g.add_edges_from(covers(n, leq))
    return g


class IsoStore:
    """Isomorphism classes of Hasse digraphs, bucketed by WL hash."""

    def __init__(self):
        self.buckets = {}

    def find(self, g):
        h = nx.weisfeiler_lehman_graph_hash(g, iterations=4)
        for g2, val in self.buckets.get(h, []):
            if nx.is_isomorphic(g, g2):
                return h, val
        return h, None

    def add(self, g, val=True) -> bool:
        h, old = self.find(g)
        if old is not None:
            return False
        self.buckets.setdefault(h, []).append((g, val))
        return True


def antichains(n, leq):
    for k in range(n + 1):
        for A in itertools.combinations(range(n), k):
            if all(not leq[a][b] and not leq[b][a] for a in A for b in A if a != b):
                yield A


def grow(max_size):
    level, crit = [(0, [])], []
    t0 = time.time()
    for size in range(1, max_size + 1):
        store, new = IsoStore(), []
        for n, leq in level:
            for A in antichains(n, leq):
                m = n + 1
                L = [row[:] + [False] for row in leq] + [[False] * m]
                L[n][n] = True
                for i in range(n):
                    if any(leq[i][a] for a in A):
                        L[i][n] = True
                if not store.add(hasse(m, L)):
                    continue
                p, z, ng = inertia(gram(m, L))
                if p == m:
                    new.append((m, L))
                elif ng == 0 and z == 1:
                    crit.append((m, L))
        level = new
        print(f"size {size}: {len(level)} definite, {len(crit)} critical so far ({time.time() - t0:.0f}s)", flush=True)
    return crit


def sincere_radical(n, leq):
    ns = sp.Matrix(gram(n, leq)).nullspace()
    if len(ns) != 1:
        return None
    v = ns[0] / max(ns[0], key=abs)
    v = v * sp.ilcm(*[x.q for x in v])
    return [abs(x) for x in v] if all(x > 0 for x in v) or all(x < 0 for x in v) else None


def reductions(n, leq):
    for d in range(n):
        idx = [i for i in range(n) if i != d]
        yield len(idx), [[leq[a][b] for b in idx] for a in idx]
    for x, y in covers(n, leq):
        idx = [i for i in range(n) if i != y]
        pos = {v: k for k, v in enumerate(idx)}
        rel = {(pos[x if a == y else a], pos[x if b == y else b]) for a in range(n) for b in range(n) if leq[a][b]}
        yield len(idx), closure(len(idx), rel)


def minimal_frames(crit):
    known = IsoStore()
    kept = [(n, leq) for n, leq in crit if ncomp(range(n), leq) == 1 and sincere_radical(n, leq)]
    for n, leq in kept:
        known.add(hasse(n, leq), "critical")

    def infinite(n, leq):
        g = hasse(n, leq)
        _, val = known.find(g)
        if val is not None:
            return val is True or val == "critical"
        res = n > 3 and any(infinite(m, L) for m, L in reductions(n, leq))
        known.buckets.setdefault(nx.weisfeiler_lehman_graph_hash(g, iterations=4), []).append((g, res))
        return res

    return [(n, leq) for n, leq in kept if not any(infinite(m, L) for m, L in reductions(n, leq))]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-size", type=int, default=9)
    args = ap.parse_args()
    mins = minimal_frames(grow(args.max_size))
    print(f"minimal rep-infinite posets: {len(mins)}")
    print("by size:", dict(sorted(Counter(n for n, _ in mins).items())))

    from posetrep.frames import loupias_labels
    from posetrep.poset import Poset
    derived = {Poset([str(i) for i in range(n)],
                     [sum(1 << j for j in range(n) if leq[i][j]) for i in range(n)]).canonical_form()
               for n, leq in mins}
    shipped = set(loupias_labels())
    print(f"shipped labels: {len(shipped)}; derived only: {len(derived - shipped)}; "
          f"shipped only: {len(shipped - derived)}")
    ok = derived == shipped
    print("MATCH" if ok else "MISMATCH")
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
