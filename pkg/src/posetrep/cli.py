"""Command-line front end.

Exit codes: 0 definitive answer, 2 some requested verdict unknown (or budget
limited), 1 input or usage error.  JSON reports use sorted keys and embed the
tool version, the configuration and the seed.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from . import __version__
from . import poset as P
from . import quiver as Qv

EXIT_OK, EXIT_INPUT, EXIT_UNKNOWN = 0, 1, 2


@dataclass
class RunConfig:
    subcommand: str
    inputs: list = field(default_factory=list)
    window: int = 6
    budget: int = 50
    cone_box: int = 6
    cap: int = 14
    fmt: str = "text"
    seed: int = 0

    def __post_init__(self):
        for name in ("window", "budget", "cone_box", "cap"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")


class InputError(ValueError):
    pass


def _default(o):
    if isinstance(o, Fraction):
        return str(o)
    if isinstance(o, (set, frozenset)):
        return sorted(o)
    if hasattr(o, "to_json"):
        return o.to_json()
    raise TypeError(f"cannot serialise {type(o).__name__}")


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False, default=_default) + "\n"


def report(cfg: RunConfig, result) -> dict:
    return {"tool": "posetrep", "version": __version__, "config": asdict(cfg), "seed": cfg.seed, "result": result}


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(str(exc)) from exc


def load(path: str):
    """('poset', Poset) or ('quiver', Quiver), guessed from the relation symbol."""
    text = _read(path)
    body = [ln.split("#", 1)[0] for ln in text.splitlines()]
    try:
        if any("->" in ln for ln in body):
            return "quiver", Qv.parse_quiver(text)
        return "poset", P.parse_poset(text)
    except (P.ParseError, Qv.ParseError, P.CycleDetected, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _algebra(kind, obj):
    from .algebra import incidence_algebra, path_algebra
    return incidence_algebra(obj) if kind == "poset" else path_algebra(obj)


def _out(cfg: RunConfig, result, text: str):
    if cfg.fmt == "json":
        sys.stdout.write(dumps(report(cfg, result)))
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


# --- subcommands -------------------------------------------------------------------

def _analyze_one(path: str, window: int, cap: int) -> tuple:
    """(path, results) in a worker; input errors come back as a string."""
    from .classify import analyze
    try:
        kind, p = load(path)
    except InputError as exc:
        return path, str(exc)
    if kind != "poset":
        return path, f"{path}: analyze expects a poset"
    return path, analyze(p, window, cap)


def _analyze_text(res: dict) -> str:
    lines = []
    for key, v in res.items():
        ans = v.answer
        if key == "tame" and ans == "yes":
            ans = "tame*" if v.budget_flags else "tame"
        elif key == "tame" and ans == "no":
            ans = "wild"
        extra = ""
        if key == "rep_finite" and v.answer == "no":
            extra = f" (frame {v.certificate['frame']}, {len(v.certificate['steps'])} steps)"
        lines.append(f"{key}: {ans}{extra}")
    return "\n".join(lines)


def cmd_analyze(cfg: RunConfig, args) -> int:
    """Several inputs are analysed in a process pool; reports keep the input order."""
    from concurrent.futures import ProcessPoolExecutor

    from .classify import UNKNOWN
    if "-" in args.files and len(args.files) > 1:
        raise InputError("stdin can only be analysed on its own")
    if len(args.files) == 1 or args.jobs <= 1:
        outs = [_analyze_one(f, cfg.window, cfg.cap) for f in args.files]
    else:
        with ProcessPoolExecutor(args.jobs) as pool:
            outs = list(pool.map(_analyze_one, args.files, [cfg.window] * len(args.files),
                                 [cfg.cap] * len(args.files)))
    bad = [r for _, r in outs if isinstance(r, str)]
    if bad:
        raise InputError("; ".join(bad))
    as_json = {path: {k: v.to_json() for k, v in res.items()} for path, res in outs}
    if len(outs) == 1:
        _out(cfg, as_json[outs[0][0]], _analyze_text(outs[0][1]))
    else:
        _out(cfg, as_json, "\n\n".join(f"== {path}\n{_analyze_text(res)}" for path, res in outs))
    unknown = any(v.answer == UNKNOWN for _, res in outs for v in res.values())
    return EXIT_UNKNOWN if unknown else EXIT_OK


def cmd_reduce(cfg: RunConfig, args) -> int:
    kind, obj = load(args.file)
    if kind == "poset":
        from .classify import decide_rep_finite
        v = decide_rep_finite(obj, cfg.cap)
        if v.answer == "yes":
            _out(cfg, v.to_json(), "rep-finite: no reduction reaches a frame")
        else:
            steps = v.certificate["steps"]
            text = "\n".join(f"{s['kind']} {s.get('element') or ' < '.join(s['cover'])}" for s in steps)
            _out(cfg, v.to_json(), text + f"\nframe {v.certificate['frame']}")
        return EXIT_OK
    try:
        steps = Qv.reduce_to_hyperbolic(obj)
    except (Qv.NotWild, Qv.NotConnected) as exc:
        raise InputError(str(exc)) from exc
    ok = Qv.replay_reduction(obj, steps)
    _out(cfg, {"delete": steps, "replay": ok}, "delete: " + (" ".join(steps) if steps else "(already hyperbolic)"))
    return EXIT_OK


def cmd_knit(cfg: RunConfig, args) -> int:
    from .knitting import hom_profile, knit, ladder_table
    kind, q = load(args.file)
    if kind != "quiver":
        raise InputError("knit expects a quiver")
    try:
        c = knit(q, cfg.window)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if cfg.fmt == "dot":
        sys.stdout.write(c.to_dot())
        return EXIT_OK
    nodes = [{"node": c.label(nd), "vertex": q.vertices[nd[0]], "shift": nd[1], "dims": list(c.dims[nd])}
             for nd in c.nodes]
    result = {"nodes": nodes, "exhausted": c.exhausted, "window": cfg.window}
    text = "\n".join(f"{n['node']}: {' '.join(map(str, n['dims']))}" for n in nodes)
    if args.profile:
        if args.profile not in q.vertices:
            raise InputError(f"unknown vertex {args.profile}")
        prof = hom_profile(c, (q.vertices.index(args.profile), 0), exact=args.exact)
        result["profile"] = {c.label(nd): v for nd, v in prof.values.items()}
        text += "\n\ndim Hom(P(%s), -)\n" % args.profile + ladder_table(c, prof)
    _out(cfg, result, text)
    return EXIT_OK


def cmd_quiver(cfg: RunConfig, args) -> int:
    kind, q = load(args.file)
    if kind != "quiver":
        raise InputError("expected a quiver")
    if args.action != "classify":
        raise InputError(f"unknown quiver action {args.action}")
    if not q.is_connected():
        types = Qv.classify_graph(q)
        _out(cfg, {"components": [str(t) for t in types]}, "; ".join(str(t) for t in types))
        return EXIT_OK
    t = Qv.classify_graph(q)[0]
    parts = [str(t)]
    result = {"type": str(t), "form_type": Qv.form_type(q)}
    if t.tag == "Wild":
        hyp = Qv.is_hyperbolic(q)
        parts.append("hyperbolic" if hyp else "not hyperbolic")
        x = Qv.find_negative_cone_vector(q, cfg.cone_box)
        result["hyperbolic"] = hyp
        result["negative_cone_witness"] = x
        if x is not None:
            parts.append(f"q({','.join(map(str, x))})={Qv.tits(q, x)}")
    _out(cfg, result, "; ".join(parts))
    return EXIT_OK


def cmd_gfan(cfg: RunConfig, args) -> int:
    from .grothendieck import g_fan
    kind, obj = load(args.file)
    fan = g_fan(_algebra(kind, obj), cfg.budget)
    text = f"maximal cones: {len(fan.cones)}\nclosed: {fan.closed}\ncomplete: {fan.complete}"
    if fan.exterior_witness is not None:
        text += f"\nexterior witness: {list(fan.exterior_witness)}"
    _out(cfg, fan.to_json(), text)
    return EXIT_OK if fan.closed else EXIT_UNKNOWN


def _types(spec: str, n: int) -> list:
    from .concealed import euclidean_e, euclidean_types
    from .frames import les_frame, les_ids
    out = []
    for tok in spec.split(","):
        tok = tok.strip()
        if tok == "auto":
            out += euclidean_types(n) + [les_frame(f) for f in les_ids() if les_frame(f).n == n]
        elif tok == "euclidean":
            out += euclidean_types(n)
        elif tok == "les":
            out += [les_frame(f) for f in les_ids()]
        elif tok in ("E6", "E7", "E8"):
            out.append(euclidean_e(int(tok[1])))
        elif tok in les_ids():
            out.append(les_frame(tok))
        elif tok:
            raise InputError(f"unknown type {tok}")
    return out


def cmd_concealed(cfg: RunConfig, args) -> int:
    from .concealed import certify_concealed
    kind, obj = load(args.file)
    alg = _algebra(kind, obj)
    res = certify_concealed(alg, _types(args.types, alg.n), cfg.window)
    result = {"found": res.found, "reason": res.reason, "refutation": res.refutation,
              "certificate": res.certificate.to_json() if res.certificate else None,
              "budget_flags": res.budget_flags}
    if res.found:
        text = f"concealed: {res.certificate.iso_layer} certificate, window {cfg.window}\n{res.reason}"
    elif res.refutation:
        text = f"not concealed: {res.reason}\nwitness module {res.refutation['dims']}"
    else:
        text = res.reason
    _out(cfg, result, text)
    return EXIT_OK if (res.found or res.refutation) else EXIT_UNKNOWN


def cmd_notgtame(cfg: RunConfig, args) -> int:
    from .grothendieck import NotHyperbolic, cone_samples, verify_notgtame
    kind, q = load(args.file)
    if kind != "quiver":
        raise InputError("expected a quiver")
    samples = cone_samples(q, args.samples, cfg.cone_box)
    try:
        rep = verify_notgtame(q, None, samples, min(cfg.window, 4), seed=cfg.seed)
    except NotHyperbolic as exc:
        raise InputError(str(exc)) from exc
    text = f"samples: {len(rep.samples)}\npassed: {rep.passed}"
    _out(cfg, {"passed": rep.passed, "samples": rep.samples}, text)
    return EXIT_OK if rep.passed else EXIT_UNKNOWN


GENERATORS = {
    "C_ell_diamond": (P.c_ell_diamond, [int]),
    "C_ell": (P.c_ell, [int]),
    "chain": (P.chain, [int]),
    "antichain": (P.antichain, [int]),
    "figure8": (P.figure8, []),
    "hyperbolic_example": (P.hyperbolic_example, []),
    "d_tilde": (P.d_tilde, [int]),
    "a_tilde_cycle": (P.a_tilde_cycle, [str]),
    "kronecker": (Qv.kronecker, [int]),
    "linear_a": (Qv.linear_a, [int]),
    "a_tilde_tilde": (Qv.a_tilde_tilde, [int, int]),
    "d_tilde_tilde": (Qv.d_tilde_tilde, [int]),
    "e_tilde_tilde": (Qv.e_tilde_tilde, [int]),
    "star": (Qv.star, [int]),
}


def cmd_generate(cfg: RunConfig, args) -> int:
    fam, vals = args.family, args.args
    if fam == "product":
        obj = P.product_of_chains(*[int(v) for v in vals])
    elif fam == "random":
        n, dens = int(vals[0]), float(vals[1]) if len(vals) > 1 else 0.3
        obj = P.random_poset(n, dens, random.Random(cfg.seed))
    elif fam == "loupias":
        from .frames import loupias_frame
        obj = loupias_frame(vals[0])
    elif fam == "les":
        from .frames import les_frame
        obj = les_frame(vals[0])
    elif fam in GENERATORS:
        fn, types = GENERATORS[fam]
        if len(vals) != len(types):
            raise InputError(f"{fam} takes {len(types)} argument(s)")
        obj = fn(*[t(v) for t, v in zip(types, vals)])
    else:
        raise InputError(f"unknown family {fam}")
    sys.stdout.write(P.format_poset(obj) if isinstance(obj, P.Poset) else Qv.format_quiver(obj))
    return EXIT_OK


def cmd_selftest(cfg: RunConfig, args) -> int:
    from .selftest import run
    results = run(cfg.window)
    lines = [f"{r['status']:>5}  {r['name']}" + (f"  ({r['detail']})" if r.get("detail") else "") for r in results]
    _out(cfg, results, "\n".join(lines))
    return EXIT_INPUT if any(r["status"] == "FAIL" for r in results) else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--window", type=int, default=6, help="tau-shift window for knitting searches")
    common.add_argument("--budget", type=int, default=50, help="maximal cones before a fan search stops")
    common.add_argument("--cone-box", type=int, default=6, help="coordinate bound for negative cone vectors")
    common.add_argument("--cap", type=int, default=14, help="largest poset the reduction search accepts")
    common.add_argument("--seed", type=int, default=0)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_const", dest="fmt", const="json")
    fmt.add_argument("--dot", action="store_const", dest="fmt", const="dot")
    p = argparse.ArgumentParser(prog="posetrep", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="cmd", required=True)
    s = sub.add_parser("analyze", parents=[common], help="all verdicts for one or more posets")
    s.add_argument("files", nargs="+")
    s.add_argument("--jobs", type=int, default=4, help="worker processes for several inputs")
    for name, helptext in [("reduce", "frame or hyperbolic reduction"), ("gfan", "g-vector fan by mutation")]:
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("file")
    s = sub.add_parser("knit", parents=[common], help="postprojective component of a quiver")
    s.add_argument("file")
    s.add_argument("--profile", help="vertex a: print dim Hom(P(a), -) over the component")
    s.add_argument("--exact", action="store_true", help="compare with explicit modules")
    s = sub.add_parser("quiver", parents=[common], help="quiver utilities")
    s.add_argument("action", choices=["classify"])
    s.add_argument("file")
    s = sub.add_parser("concealed-check", parents=[common], help="search a concealedness certificate")
    s.add_argument("file")
    s.add_argument("--types", default="auto", help="comma list: auto, euclidean, les, E6, E7, E8 or a frame id")
    s = sub.add_parser("notgtame-check", parents=[common], help="not-g-tame pipeline on a hyperbolic quiver")
    s.add_argument("file")
    s.add_argument("--samples", type=int, default=3)
    s = sub.add_parser("generate", parents=[common], help="write a named poset or quiver")
    s.add_argument("family")
    s.add_argument("args", nargs="*")
    sub.add_parser("selftest", parents=[common], help="replay the reference examples")
    return p


COMMANDS = {"analyze": cmd_analyze, "reduce": cmd_reduce, "knit": cmd_knit, "quiver": cmd_quiver,
            "gfan": cmd_gfan, "concealed-check": cmd_concealed, "notgtame-check": cmd_notgtame,
            "generate": cmd_generate, "selftest": cmd_selftest}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        inputs = getattr(args, "files", None) or ([args.file] if getattr(args, "file", None) else [])
        cfg = RunConfig(args.cmd, list(inputs), args.window, args.budget, args.cone_box, args.cap,
                        args.fmt or "text", args.seed)
        return COMMANDS[args.cmd](cfg, args)
    except (InputError, ValueError, KeyError) as exc:
        sys.stderr.write(f"posetrep: error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
