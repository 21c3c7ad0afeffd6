"""Reference examples and acceptance checks, replayed by ``posetrep selftest``.

Each check returns PASS, FAIL or SKIP.  SKIP is used only when the window or
budget is too small for the check to be meaningful; a check never turns a
budget shortfall into a verdict.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass

from . import classify as C
from . import concealed as cc
from . import frames as F
from . import linrep
from . import poset as P
from . import quiver as Qv
from .algebra import incidence_algebra, path_algebra


class Skip(Exception):
    pass


@dataclass
class Check:
    name: str
    fn: object
    min_window: int = 0
    quick: bool = True


def _need(cond, msg=""):
    if not cond:
        raise AssertionError(msg)


# --- poset-core -----------------------------------------------------------------

def ex_cube_is_c3():
    _need(P.is_isomorphic(P.product_of_chains(2, 2, 2), P.c_ell_diamond(3)))
    _need(P.find_subposet_isomorphic(P.product_of_chains(2, 2, 2), P.c_ell_diamond(3)) is not None)


def ex_cycle_contracts_to_a3():
    p = P.a_tilde_cycle("ffbbffbb")
    for a, b in [("v0", "v1"), ("v4", "v3"), ("v4", "v5"), ("v0", "v7")]:
        p = P.contract(p, P.ContractionStep("contract-cover", (a, b)))
    _need(P.is_isomorphic(p, F.loupias_frame("A3")), P.format_poset(p))


def ex_dtilde_contracts_to_d4():
    p = P.d_tilde(7)
    for k in range(5, 0, -1):
        p = P.contract(p, P.ContractionStep("contract-cover", (f"v{k - 1}", f"v{k}")))
    _need(P.is_isomorphic(p, P.d_tilde(4)), P.format_poset(p))


def ex_c5_image_convex():
    p = P.c_ell_diamond(5)
    w = P.find_subposet_isomorphic(p, P.c_ell_diamond(5))
    sub = w.poset()
    _need(w.convex and len(sub.minimal()) == 1 and len(sub.maximal()) == 1)


def ex_generators():
    c3 = P.c_ell_diamond(3)
    _need(len(c3) == 8 and [c3.elements[i] for i in c3.minimal()] == ["0"] and
          [c3.elements[i] for i in c3.maximal()] == ["ω"])
    f8 = P.figure8()
    _need(len(f8) == 7 and len(f8.cover_pairs()) == 8)
    a3 = F.loupias_frame("A3")
    _need(len(a3) == 4 and len(a3.minimal()) == 2 and len(a3.maximal()) == 2 and len(a3.cover_pairs()) == 4)


# --- quiver-core ----------------------------------------------------------------

def ex_unique_tip():
    for p, q in [(1, 1), (2, 3), (4, 2)]:
        _need(Qv.structure(Qv.a_tilde_tilde(p, q))["tips"] == ["a"])


def ex_reduction_11_vertices():
    q = Qv.a_tilde_tilde(5, 5)
    _need(q.n == 11)
    steps = Qv.reduce_to_hyperbolic(q)
    _need(Qv.replay_reduction(q, steps) and steps, steps)
    rest = q.delete([steps[0]])
    _need(steps[0] not in ("a", "b", "s") and rest.is_connected() and Qv.is_wild(rest), steps)


# --- linrep -----------------------------------------------------------------------

def ex_pd2_id2():
    a = incidence_algebra(P.hyperbolic_example())
    m = cc.thin_module(a, [a.vertices.index(x) for x in ("minL", "minR", "maxL", "maxR")])
    _need(m is not None and linrep.is_indecomposable(m))
    _need(linrep.pd(m) == 2 and linrep.idim(m) == 2, (linrep.pd(m), linrep.idim(m)))


# --- knitting ---------------------------------------------------------------------

# keyed by (p, q) with p <= q; the long side needs q >= 3 for these values
# (q <= 2 with p <= 2 gives larger homs, rigidity is unchanged)
LADDERS = {(3, 3): (0, 1, 1, 2), (3, 5): (0, 1, 1, 2), (2, 3): (0, 1, 2, 3), (2, 4): (0, 1, 2, 3),
           (1, 3): (0, 2, 3, 5), (1, 4): (0, 2, 3, 5)}


def ex_ladders(window):
    from .knitting import hom_profile, knit, rigid_pair
    for (p, q), want in LADDERS.items():
        Q = Qv.a_tilde_tilde(p, q)
        c = knit(Q, min(window, 4))
        a, b = Q.index["a"], Q.index["b"]
        prof = hom_profile(c, (a, 0))
        got = tuple(prof.values[n] for n in [(a, 1), (a, 2), (a, 3), (b, 2)])
        _need(got == want, (p, q, got))
        rig = [rigid_pair(c, (a, r), (a, 0)) for r in range(1, 4)]
        _need(rig == [False, True, False], (p, q, rig))
        _need(all(rigid_pair(c, nd, nd) for nd in c.nodes))
    for p, q in [(1, 1), (1, 2), (2, 2)]:
        Q = Qv.a_tilde_tilde(p, q)
        c = knit(Q, min(window, 5))
        a = Q.index["a"]
        rig = [rigid_pair(c, (a, r), (a, 0)) for r in range(1, min(window, 5) + 1)]
        _need(rig == [r == 2 for r in range(1, len(rig) + 1)], (p, q, rig))


def ex_atildetilde_orbits(window):
    from .knitting import enumerate_postprojective_tilting
    q = Qv.a_tilde_tilde(3, 2)
    for t in enumerate_postprojective_tilting(q, min(window, 4)):
        orbits = {v for v, _ in t}
        missing = set(range(q.n)) - orbits
        _need(missing <= {q.index["b"]}, (t, missing))


# --- grothendieck -------------------------------------------------------------------

def ex_transfer_perp():
    from .grothendieck import knitted_transfer
    from .knitting import enumerate_postprojective_tilting, knit
    q = Qv.kronecker(3)
    c = knit(q, 4)
    for t in enumerate_postprojective_tilting(q, 4, c)[:4]:
        rep = knitted_transfer(c, t)
        _need(rep.holds, rep)


# --- concealed ------------------------------------------------------------------------

def ex_hyperbolic_refuted():
    r = cc.certify_concealed(incidence_algebra(P.hyperbolic_example()), [])
    _need(not r.found and r.refutation and r.refutation["pd"] == 2 and r.refutation["id"] == 2, r.refutation)


def ex_r1_concealed(window):
    a = incidence_algebra(F.loupias_frame("R1"))
    r = cc.certify_concealed(a, [cc.euclidean_e(k) for k in (6, 7, 8)], window)
    _need(r.found, r.reason)
    return f"{r.certificate.iso_layer}, {r.candidates_checked} candidates"


def ex_bongartz_postprojective():
    for q, v in [(Qv.kronecker(3), "2"), (Qv.a_tilde_tilde(1, 1), "b")]:
        a = path_algebra(q)
        m = linrep.tau_inv(linrep.projective(a, q.index[v]))
        mp = cc.bongartz_completion(m)
        _need(len(mp) == q.n and linrep.is_tilting(mp).is_tilting)
        for x in mp:
            _need(cc.postprojective_in_window(q, x, 6)["postprojective"], x.dims)


def ex_reduction_at_vertex():
    p = P.c_ell_diamond(2)
    a = incidence_algebra(p)
    v = a.vertices.index("0")
    red = cc.tau_tilting_reduction(a, [linrep.projective(a, v)])
    _need(red.dim == a.dim - sum(linrep.projective(a, v).dims) - sum(linrep.injective(a, v).dims) + 1,
          (red.dim, a.dim))


def ex_appendix_guard():
    q4 = Qv.Quiver(["1", "2", "3", "4"], [("1", "2"), ("1", "3"), ("2", "3"), ("4", "3")])
    a = path_algebra(q4)
    m = linrep.Representation.make(a, (1, 0, 1, 0), [[], [[1]], [[]], [[]]])
    info = cc.postprojective_in_window(q4, m, 8)
    _need(not info["postprojective"], info)


# --- classify ---------------------------------------------------------------------------

def ex_classify_examples():
    two4 = P.product_of_chains(2, 4)
    _need(C.decide_rep_finite(two4).answer == C.YES)
    _need(C.decide_tau_tilting_finite(two4).answer == C.YES)
    two5 = P.product_of_chains(2, 5)
    v = C.decide_rep_finite(two5)
    _need(v.answer == C.NO and C.replay_certificate(two5, v), v.certificate)
    # some prefix of the certificate lands on the D-tilde_4 star with two arms below and two above
    star = P.from_covers([("a", "x"), ("b", "x"), ("x", "c"), ("x", "d")])
    q, hit = two5, False
    for s in v.certificate["steps"]:
        q = P.contract(q, P.ContractionStep.from_json(s))
        hit = hit or P.is_isomorphic(q, star)
    _need(hit, v.certificate)
    cube = P.product_of_chains(2, 2, 2)
    v = C.decide_rep_finite(cube)
    _need(v.answer == C.NO and v.certificate["frame"] == "A3", v.certificate)
    for fid in F.LOUPIAS_IDS:
        _need(C.decide_tau_tilting_finite(F.loupias_frame(fid)).answer == C.NO, fid)
    for ell in (2, 3, 4, 5):
        _need(C.simply_connected(P.c_ell_diamond(ell)).answer == C.YES)
    _need(C.simply_connected(P.hyperbolic_example()).answer == C.NO)
    _need(C.gldim_le_2(P.c_ell_diamond(4)).answer == C.NO)


def ex_tame_examples(window):
    _need(C.decide_tame(P.c_ell_diamond(4), window).answer == C.YES)
    v = C.decide_tame(P.c_ell_diamond(5), window)
    top = sorted(["ω"] + [f"p+{i}" for i in range(1, 6)])
    bottom = sorted(["0"] + [f"p÷{i}" for i in range(1, 6)])
    _need(v.answer == C.NO and sorted(v.certificate["members"]) in (top, bottom), v.certificate)
    _need(C.decide_tame(P.product_of_chains(2, 2, 2), window).answer == C.YES)
    _need(C.decide_g_tame(P.c_ell_diamond(5), window).answer == C.NO)
    _need(C.decide_g_tame(P.product_of_chains(2, 4), window).answer == C.YES)
    _need(C.decide_g_tame(P.hyperbolic_example(), window).answer == C.UNKNOWN)


def ex_frames_minimal():
    for fid in F.LOUPIAS_IDS:
        _need(C.minimality_check(F.loupias_frame(fid)).answer == C.YES, fid)


# --- acceptance (desk-scale forms) -------------------------------------------------------

def acc_products():
    for n in range(1, 7):
        for m in range(n, 7):
            p = P.product_of_chains(n, m)
            v = C.decide_rep_finite(p, cap=36)
            want = C.YES if 1 in (n, m) or {n, m} in ({2}, {2, 3}, {2, 4}) else C.NO
            _need(v.answer == want and (want == C.YES or C.replay_certificate(p, v)), (n, m, v.answer))


def acc_frames():
    for fid in F.LOUPIAS_IDS:
        for q in (F.loupias_frame(fid), F.loupias_frame(fid).opposite()):
            _need(C.decide_rep_finite(q).answer == C.NO and C.minimality_check(q).answer == C.YES, fid)


def acc_tau_tilting(count=200, seed=7):
    rng = random.Random(seed)
    for _ in range(count):
        p = P.random_poset(rng.randint(2, 10), rng.choice([0.2, 0.3, 0.45]), rng)
        a, b = C.decide_rep_finite(p), C.decide_tau_tilting_finite(p)
        _need(a.answer == b.answer, P.format_poset(p))
        if a.answer == C.NO:
            _need(C.replay_certificate(p, a))
    return f"{count} posets"


def acc_ladder(window):
    for ell in range(2, 7):
        p = P.c_ell_diamond(ell)
        _need(C.decide_rep_finite(p).answer == C.NO and C.simply_connected(p).answer == C.YES, ell)
        t = C.decide_tame(p, window)
        if ell <= 4:
            _need(t.answer == C.YES, (ell, t.certificate))
        else:
            _need(t.answer == C.NO and t.certificate.get("hyperbolic_type") == "T5", (ell, t.certificate))
            _need(C.decide_g_tame(p, window).answer == C.NO, ell)


def acc_tits(max_n=5):
    count = 0
    for n in range(1, max_n + 1):
        for q in Qv.multigraph_quivers(n, 3, None if n <= 4 else 2):
            count += 1
            tag = Qv.graph_tag(q)
            _need(Qv.pattern_type(q).tag == Qv.form_type(q) == tag, q.arrows)
            _need((Qv.find_negative_cone_vector(q, 6) is not None) == (tag == "Wild"), q.arrows)
    return f"{count} quivers"


def acc_reduction(max_n=5):
    count = 0
    for n in range(2, max_n + 1):
        for q in Qv.multigraph_quivers(n, 3, None if n <= 4 else 2):
            if Qv.form_type(q) != "Wild":
                continue
            count += 1
            _need(Qv.replay_reduction(q, Qv.reduce_to_hyperbolic(q)), q.arrows)
    return f"{count} wild quivers"


def acc_transfer():
    from .grothendieck import knitted_transfer
    from .knitting import enumerate_postprojective_tilting, knit
    total = 0
    for q in (Qv.linear_a(2), Qv.linear_a(3), Qv.kronecker(2), Qv.kronecker(3)):
        c = knit(q, 4)
        for t in enumerate_postprojective_tilting(q, 4, c):
            _need(knitted_transfer(c, t).holds, (q, t))
            total += 1
    return f"{total} tilting modules"


def acc_negative_cone():
    from .grothendieck import cone_samples, negative_cone_vs_postprojectives
    for q in (Qv.kronecker(3), Qv.Quiver(["1", "2", "3"], [("1", "2"), ("1", "2"), ("2", "3"), ("1", "3")])):
        _need(Qv.is_hyperbolic(q))
        samples = cone_samples(q, 20, 6)
        _need(len(samples) == 20)
        for x in samples:
            _need(negative_cone_vs_postprojectives(q, x, 5).all_negative, x)


def acc_fan():
    from .grothendieck import all_indecomposables_finite, brute_force_support_tilting, g_fan
    a2 = path_algebra(Qv.linear_a(2))
    fan = g_fan(a2)
    brute = set(brute_force_support_tilting(a2, all_indecomposables_finite(Qv.linear_a(2))))
    _need(fan.closed and fan.complete and len(fan.cones) == len(brute) == 5, (len(fan.cones), len(brute)))
    k = g_fan(path_algebra(Qv.kronecker()), 20)
    _need(not k.closed and not k.complete and k.exterior_witness is not None)


def acc_quasi_tilted(window):
    ex_pd2_id2()
    ex_hyperbolic_refuted()
    p = P.hyperbolic_example()
    _need(C.simply_connected(p).answer == C.NO and C.decide_g_tame(p, window).answer == C.UNKNOWN)


def acc_gldim(count=100, seed=3):
    rng = random.Random(seed)
    corpus = [P.c_ell_diamond(2), P.c_ell_diamond(3), P.c_ell_diamond(4), P.figure8()]
    while len(corpus) < count:
        corpus.append(P.random_poset(rng.randint(3, 10), rng.choice([0.2, 0.3, 0.5]), rng))
    for p in corpus:
        iz = C.gldim_le_2(p, cross_check=False).answer == C.YES
        _need(iz == (linrep.global_dimension(incidence_algebra(p)) <= 2), P.format_poset(p))
    return f"{len(corpus)} posets"


CHECKS = [
    Check("product of chains is C_3 diamond", ex_cube_is_c3),
    Check("A-tilde cycle contracts to the crown", ex_cycle_contracts_to_a3),
    Check("D-tilde contracts to D-tilde_4", ex_dtilde_contracts_to_d4),
    Check("C_5 diamond embedding is convex", ex_c5_image_convex),
    Check("named posets", ex_generators),
    Check("unique tip", ex_unique_tip),
    Check("11-vertex reduction", ex_reduction_11_vertices),
    Check("pd 2 and id 2 module", ex_pd2_id2),
    Check("knitting ladders", ex_ladders, min_window=4),
    Check("tilting summands per orbit", ex_atildetilde_orbits, min_window=4),
    Check("transfer on T-perp", ex_transfer_perp),
    Check("quasi-tilted refutation", ex_hyperbolic_refuted),
    Check("R1 frame concealed", ex_r1_concealed, min_window=4),
    Check("Bongartz completion stays postprojective", ex_bongartz_postprojective),
    Check("reduction at a primitive idempotent", ex_reduction_at_vertex),
    Check("appendix module not postprojective", ex_appendix_guard),
    Check("classification examples", ex_classify_examples),
    Check("tameness examples", ex_tame_examples, min_window=4),
    Check("frames minimal", ex_frames_minimal),
    Check("acceptance 1: products of chains", acc_products),
    Check("acceptance 2: frames and opposites", acc_frames),
    Check("acceptance 3: tau-tilting finiteness", acc_tau_tilting),
    Check("acceptance 4: C_ell diamond ladder", acc_ladder, min_window=4),
    Check("acceptance 6: Tits cross-check (<= 5 vertices)", acc_tits),
    Check("acceptance 7: hyperbolic reduction (<= 5 vertices)", acc_reduction),
    Check("acceptance 8: transfer identity", acc_transfer),
    Check("acceptance 9: negative cone", acc_negative_cone),
    Check("acceptance 10: fan completeness", acc_fan),
    Check("acceptance 11: quasi-tilted refutation", acc_quasi_tilted),
    Check("acceptance 13: global dimension", acc_gldim),
]


def run(window: int = 6, names=None) -> list[dict]:
    """Frame validation first, then every check; one result dict per check."""
    import inspect

    out = []
    problems = F.validate()
    out.append({"name": "frame data", "status": "FAIL" if problems else "PASS", "detail": "; ".join(problems)})
    for ch in CHECKS:
        if names and ch.name not in names:
            continue
        t0 = time.time()
        if window < ch.min_window:
            out.append({"name": ch.name, "status": "SKIP", "detail": f"budget: needs window >= {ch.min_window}"})
            continue
        try:
            kw = {"window": window} if "window" in inspect.signature(ch.fn).parameters else {}
            detail = ch.fn(**kw)
            status = "PASS"
        except Skip as exc:
            status, detail = "SKIP", str(exc)
        except Exception as exc:  # noqa: BLE001 - every failure is reported, not raised
            status, detail = "FAIL", f"{type(exc).__name__}: {exc}"
        d = f"{detail}; " if detail else ""
        out.append({"name": ch.name, "status": status, "detail": f"{d}{time.time() - t0:.1f}s"})
    return out
