"""Decision pipelines for incidence algebras of posets.

Every verdict is three-valued and carries a certificate that the originating
module can replay: a reduction sequence ending at a frame, a subposet witness,
a concealedness certificate, or a plain reason together with budget flags.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg as la
from . import linrep
from .algebra import incidence_algebra, path_algebra
from .frames import les_frame, les_ids, loupias_labels
from .poset import (ContractionStep, Poset, c_ell_diamond, contract_cover_idx, find_subposet_isomorphic,
                    figure8, iter_subposets_isomorphic, replay)
from .quiver import NotConnected, Quiver, classify_graph, is_wild

YES, NO, UNKNOWN = "yes", "no", "unknown"


class SizeCapExceeded(ValueError):
    pass


@dataclass
class Verdict:
    question: str
    answer: str
    certificate: dict = field(default_factory=dict)
    budget_flags: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"question": self.question, "answer": self.answer, "certificate": self.certificate,
                "budget_flags": list(self.budget_flags)}


def hasse_quiver(p: Poset) -> Quiver:
    return Quiver(p.elements, [(p.elements[i], p.elements[j]) for i, j in sorted(p.cover_pairs())])


def _dynkin_hereditary(p: Poset) -> bool:
    """Hereditary incidence algebra of Dynkin type (then rep-finite by Gabriel)."""
    if not p.is_hereditary():
        return False
    types = classify_graph(hasse_quiver(p))
    return all(t.tag == "Dynkin" for t in types)


# --- representation-finiteness -------------------------------------------------------

_FINITE: set = set()  # canonical forms known to be rep-finite


def _moves(p: Poset):
    """Deletions (extremal elements first) then cover contractions."""
    n = len(p)
    ext = set(p.minimal()) | set(p.maximal())
    order = sorted(range(n), key=lambda i: (i not in ext, i))
    for i in order:
        yield ContractionStep("delete-element", p.elements[i]), lambda i=i: p.induced([k for k in range(n) if k != i])
    for i, j in p.cover_pairs():
        yield (ContractionStep("contract-cover", (p.elements[i], p.elements[j])),
               lambda i=i, j=j: contract_cover_idx(p, i, j))


def _components(p: Poset) -> list[tuple[list, Poset]]:
    out = []
    for comp in p.components():
        cs = set(comp)
        dels = [ContractionStep("delete-element", p.elements[k]) for k in range(len(p)) if k not in cs]
        out.append((dels, p.induced(comp)))
    return out


def _search(p: Poset, labels: dict, stats: dict):
    """Steps from p to a frame, or None when every reduction is rep-finite."""
    stats["states"] = stats.get("states", 0) + 1
    key = p.canonical_form()
    if key in _FINITE:
        return None
    if key in labels:
        return [], labels[key]
    if len(p) <= 3 or _dynkin_hereditary(p):
        _FINITE.add(key)
        return None
    for step, make in _moves(p):
        q = make()
        parts = _components(q) if not q.is_connected() else [([], q)]
        for dels, comp in parts:
            res = _search(comp, labels, stats)
            if res is not None:
                return [step] + dels + res[0], res[1]
    _FINITE.add(key)
    return None


def decide_rep_finite(p: Poset, cap: int = 14) -> Verdict:
    if len(p) > cap:
        raise SizeCapExceeded(f"{len(p)} elements exceed the cap {cap}")
    labels = loupias_labels()
    stats: dict = {}
    for dels, comp in _components(p):
        res = _search(comp, labels, stats)
        if res is not None:
            steps = dels + res[0]
            end = replay(p, steps)
            return Verdict("rep_finite", NO, {
                "steps": [s.to_json() for s in steps], "frame": res[1],
                "frame_opposite": end.canonical_form() not in _direct_labels(),
                "states": stats["states"]})
    return Verdict("rep_finite", YES, {"reason": "every reduction sequence avoids the frames",
                                       "states": stats.get("states", 0)})


def _direct_labels() -> set:
    from .frames import LOUPIAS_IDS, loupias_variants
    return {v.canonical_form() for fid in LOUPIAS_IDS for v in loupias_variants(fid)}


def replay_certificate(p: Poset, v: Verdict) -> bool:
    """Independent check of a rep-infinite certificate."""
    steps = [ContractionStep.from_json(s) for s in v.certificate["steps"]]
    return replay(p, steps).canonical_form() in loupias_labels()


def minimality_check(p: Poset, cap: int = 14) -> Verdict:
    base = decide_rep_finite(p, cap)
    if base.answer != NO:
        return Verdict("minimal_rep_infinite", NO, {"reason": "representation-finite"})
    for step, make in _moves(p):
        q = make()
        if decide_rep_finite(q, cap).answer == NO:
            return Verdict("minimal_rep_infinite", NO, {"reason": "a reduction stays rep-infinite",
                                                        "step": step.to_json()})
    return Verdict("minimal_rep_infinite", YES, {"frame": base.certificate["frame"]})


def decide_tau_tilting_finite(p: Poset, cap: int = 14) -> Verdict:
    v = decide_rep_finite(p, cap)
    cert = dict(v.certificate)
    cert["reason"] = "for poset incidence algebras tau-tilting finiteness equals representation-finiteness"
    if v.answer == NO:
        cert["tame_concealed_frame"] = v.certificate["frame"]
        cert["consequence"] = "the frame is tame concealed, so it has infinitely many tau-rigid modules"
    return Verdict("tau_tilting_finite", v.answer, cert, v.budget_flags)


# --- simple connectedness -------------------------------------------------------------

def _remove_beat_points(p: Poset) -> Poset:
    changed = True
    while changed and len(p) > 1:
        changed = False
        for i in range(len(p)):
            if len(p.upper_covers(i)) == 1 or len(p.lower_covers(i)) == 1:
                p = p.induced([k for k in range(len(p)) if k != i])
                changed = True
                break
    return p


def _chains(p: Poset):
    n = len(p)
    edges = [(i, j) for i in range(n) for j in range(n) if p.lt_idx(i, j)]
    tris = [(i, j, k) for i, j in edges for k in range(n) if p.lt_idx(j, k)]
    return edges, tris


def first_homology(p: Poset) -> tuple[int, list]:
    """(free rank, torsion coefficients) of H_1 of the order complex."""
    n = len(p)
    edges, tris = _chains(p)
    eidx = {e: t for t, e in enumerate(edges)}
    d1 = [[0] * len(edges) for _ in range(n)]
    for t, (i, j) in enumerate(edges):
        d1[i][t] -= 1
        d1[j][t] += 1
    d2 = [[0] * len(tris) for _ in range(len(edges))]
    for t, (i, j, k) in enumerate(tris):
        d2[eidx[(j, k)]][t] += 1
        d2[eidx[(i, k)]][t] -= 1
        d2[eidx[(i, j)]][t] += 1
    r1 = la.rank([[Fraction(x) for x in row] for row in d1]) if edges else 0
    inv = la.smith_diagonal(d2) if tris else []
    free = len(edges) - r1 - len(inv)
    return free, [d for d in inv if d > 1]


def _reduce_word(w):
    out = []
    for g in w:
        if out and out[-1][0] == g[0] and out[-1][1] == -g[1]:
            out.pop()
        else:
            out.append(g)
    while len(out) >= 2 and out[0][0] == out[-1][0] and out[0][1] == -out[-1][1]:
        out = out[1:-1]
    return out


def _inverse(w):
    return [(g, -e) for g, e in reversed(w)]


def fundamental_group_trivial(p: Poset, max_len: int = 400) -> bool | None:
    """Tietze simplification of the edge-path presentation; True if it collapses, None if stuck."""
    import networkx as nx

    n = len(p)
    edges, tris = _chains(p)
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    tree = {frozenset(e) for e in nx.minimum_spanning_edges(g, data=False)}
    gens = {e for e in edges if frozenset(e) not in tree}

    def word(e):
        return [(e, 1)] if e in gens else []

    rels = []
    for i, j, k in tris:
        rels.append(_reduce_word(word((i, j)) + word((j, k)) + _inverse(word((i, k)))))
    rels = [r for r in rels if r]
    while gens:
        progress = False
        for r in rels:
            counts: dict = {}
            for x, _ in r:
                counts[x] = counts.get(x, 0) + 1
            single = next((x for x in r if counts[x[0]] == 1), None)
            if single is None:
                continue
            pos = r.index(single)
            s = r[pos + 1:] + r[:pos]  # r ~ g^e s
            value = _inverse(s) if single[1] == 1 else s
            gen = single[0]
            new = []
            for r2 in rels:
                if r2 is r:
                    continue
                out = []
                for x, e in r2:
                    if x == gen:
                        out.extend(value if e == 1 else _inverse(value))
                    else:
                        out.append((x, e))
                out = _reduce_word(out)
                if len(out) > max_len:
                    return None
                if out:
                    new.append(out)
            rels = new
            gens.discard(gen)
            progress = True
            break
        if not progress:
            return None
    return True


def simply_connected(p: Poset) -> Verdict:
    if not p.is_connected():
        raise NotConnected("poset is not connected")
    if len(p.minimal()) == 1 or len(p.maximal()) == 1:
        return Verdict("simply_connected", YES, {"reason": "unique minimal or maximal element"})
    core = _remove_beat_points(p)
    if len(core) == 1:
        return Verdict("simply_connected", YES, {"reason": "beat-point reduction collapses to a point"})
    if len(core.minimal()) == 1 or len(core.maximal()) == 1:
        return Verdict("simply_connected", YES, {"reason": "core has a unique extremal element"})
    free, tors = first_homology(core)
    if free or tors:
        return Verdict("simply_connected", NO, {"reason": "H_1 of the order complex is nonzero",
                                                "h1_rank": free, "h1_torsion": tors,
                                                "core_size": len(core)})
    if fundamental_group_trivial(core):
        return Verdict("simply_connected", YES, {"reason": "edge-path group presentation collapses"})
    return Verdict("simply_connected", UNKNOWN, {"reason": "H_1 vanishes but the presentation did not simplify"},
                   ["Tietze simplification budget"])


# --- global dimension -------------------------------------------------------------------

def gldim_le_2(p: Poset, cross_check: bool = True) -> Verdict:
    n = len(p)
    iz1 = None
    for ell in range(3, (n - 2) // 2 + 1):
        w = find_subposet_isomorphic(p, c_ell_diamond(ell))
        if w is not None:
            iz1 = (ell, sorted(w.members))
            break
    iz2 = None
    if iz1 is None and n >= 6:
        pat = c_ell_diamond(2)
        for emb in iter_subposets_isomorphic(p, pat):
            low = [p.index[emb["p÷1"]], p.index[emb["p÷2"]]]
            high = [p.index[emb["p+1"]], p.index[emb["p+2"]]]
            if not any(all(p.lt_idx(a, m) for a in low) and all(p.lt_idx(m, b) for b in high)
                       for m in range(n)):
                iz2 = sorted(emb.values())
                break
    answer = YES if iz1 is None and iz2 is None else NO
    cert: dict = {}
    if iz1:
        cert["iz1_violation"] = {"ell": iz1[0], "members": iz1[1]}
    if iz2:
        cert["iz2_violation"] = {"members": iz2}
    if cross_check:
        gd = linrep.global_dimension(incidence_algebra(p))
        cert["gldim"] = gd
        if (gd <= 2) != (answer == YES):
            raise AssertionError(f"IZ verdict {answer} disagrees with global dimension {gd}")
    return Verdict("gldim_le_2", answer, cert)


# --- tameness ---------------------------------------------------------------------------

def _convex_subsets(p: Poset, max_size: int | None = None):
    n = len(p)
    top = n if max_size is None else min(n, max_size)
    for k in range(2, top + 1):
        for comb in itertools.combinations(range(n), k):
            mask = 0
            for i in comb:
                mask |= 1 << i
            if all(not (p.interval(i, j) & ~mask) for i in comb for j in comb if p.leq_idx(i, j)):
                sub = p.induced(comb)
                if sub.is_connected():
                    yield comb, sub


def _euler_sym(cartan) -> list:
    C = [[Fraction(x) for x in row] for row in cartan]
    Ci = la.inverse(C)
    return [[Ci[i][j] + Ci[j][i] for j in range(len(C))] for i in range(len(C))]


def _euler_inertia(p: Poset) -> tuple:
    return la.inertia(_euler_sym(incidence_algebra(p).cartan))


@functools.lru_cache(maxsize=1)
def _les_types_by_size() -> dict:
    """size -> [(quiver, det of the symmetrised Tits form)]; the determinant is a congruence invariant."""
    out: dict = {}
    for fid in les_ids():
        q = les_frame(fid)
        out.setdefault(q.n, []).append((q, la.det(_euler_sym(path_algebra(q).cartan))))
    return out


def _les_name(q: Quiver) -> str | None:
    import networkx as nx
    for fid in les_ids():
        f = les_frame(fid)
        if f.n == q.n and nx.is_isomorphic(nx.MultiGraph(f.graph()), nx.MultiGraph(q.graph())):
            return fid
    return None


_TAME: dict = {}


def decide_tame(p: Poset, window: int = 6, cap: int = 14, orientation_cap: int = 512) -> Verdict:
    key = (p, window, cap, orientation_cap)
    if key not in _TAME:
        _TAME[key] = _decide_tame(p, window, cap, orientation_cap)
    return _TAME[key]


def _decide_tame(p: Poset, window: int, cap: int, orientation_cap: int) -> Verdict:
    from .concealed import certify_concealed

    try:
        sc = simply_connected(p)
    except NotConnected:
        return Verdict("tame", UNKNOWN, {"reason": "poset is not connected"})
    if sc.answer != YES:
        return Verdict("tame", UNKNOWN, {"reason": "covering theory out of scope (not known to be simply connected)"})
    rf = decide_rep_finite(p, cap)
    if rf.answer == YES:
        return Verdict("tame", YES, {"reason": "representation-finite"})
    types = _les_types_by_size()
    pending = []
    for comb, sub in _convex_subsets(p):
        members = [p.elements[i] for i in comb]
        if sub.is_hereditary():
            q = hasse_quiver(sub)
            if is_wild(q):
                return Verdict("tame", NO, {"reason": "convex subposet with wild hereditary incidence algebra",
                                            "members": members, "graph": classify_graph(q)[0].tag,
                                            "hyperbolic_type": _les_name(q)})
            continue
        if len(comb) not in types:
            continue
        sym = _euler_sym(incidence_algebra(sub).cartan)
        pos, neg, zero = la.inertia(sym)
        if (neg, zero) != (1, 0):
            continue
        d = la.det(sym)
        cands = [q for q, dq in types[len(comb)] if dq == d]
        if not cands or decide_rep_finite(sub, cap).answer == YES:
            continue
        if linrep.global_dimension(incidence_algebra(sub)) > 2:
            continue
        res = certify_concealed(incidence_algebra(sub), cands, window, orientation_cap)
        if res.found:
            return Verdict("tame", NO, {"reason": "convex subposet is concealed of hyperbolic type",
                                        "members": members, "certificate": res.certificate.to_json()})
        if res.refutation is None:
            pending.append(members)
    if pending:
        return Verdict("tame", YES, {"reason": "no wild convex subposet found", "uncertified_candidates": pending},
                       [f"concealedness search window {window}"])
    return Verdict("tame", YES, {"reason": "no convex subposet is hereditary wild or a concealed candidate"})


def decide_g_tame(p: Poset, window: int = 6, cap: int = 14) -> Verdict:
    rf = decide_rep_finite(p, cap)
    if rf.answer == YES:
        return Verdict("g_tame", YES, {"reason": "representation-finite: the g-vector fan is complete"})
    if not p.is_connected():
        return Verdict("g_tame", UNKNOWN, {"reason": "poset is not connected"})
    sc = simply_connected(p)
    if sc.answer == YES:
        t = decide_tame(p, window, cap)
        cert = {"reason": "simply connected: g-tame exactly when tame", "tame": t.to_json()}
        return Verdict("g_tame", t.answer, cert, t.budget_flags)
    n = len(p)
    for ell in range(5, (n - 2) // 2 + 1):
        w = find_subposet_isomorphic(p, c_ell_diamond(ell))
        if w is not None:
            return Verdict("g_tame", NO, {"reason": f"contains C_{ell} diamond; its convex hull is simply "
                                                    "connected and wild", "members": sorted(w.members)})
    if p.is_hereditary():
        q = hasse_quiver(p)
        if is_wild(q):
            return Verdict("g_tame", NO, {"reason": "hereditary and wild"})
        return Verdict("g_tame", YES, {"reason": "hereditary of tame type"})
    return Verdict("g_tame", UNKNOWN, {"reason": "multiply connected and not decided; open in general",
                                       "simply_connected": sc.answer})


def analyze(p: Poset, window: int = 6, cap: int = 14) -> dict:
    out = {"rep_finite": decide_rep_finite(p, cap), "tau_tilting_finite": decide_tau_tilting_finite(p, cap)}
    try:
        out["simply_connected"] = simply_connected(p)
    except NotConnected:
        out["simply_connected"] = Verdict("simply_connected", UNKNOWN, {"reason": "poset is not connected"})
    out["gldim_le_2"] = gldim_le_2(p)
    out["tame"] = decide_tame(p, window, cap)
    out["g_tame"] = decide_g_tame(p, window, cap)
    return out
