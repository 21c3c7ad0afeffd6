"""Shipped frame shapes: minimal representation-infinite posets and hyperbolic quiver types.

A poset file may carry a `# free:` comment listing cover pairs (or `all`) whose
direction is arbitrary; the frame then stands for every re-orientation of those
edges.  Re-orientations that contain the crown as a proper subposet are dropped,
as such a poset is not minimal.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from importlib import resources

from ..poset import Poset, find_subposet_isomorphic, from_covers, parse_poset
from ..quiver import Quiver, parse_quiver

LOUPIAS_IDS = ("A3", "D4", "E6", "E7", "E8", "R1", "R2", "R3", "R4", "R5", "R6", "R7")
ALIASES = {"Ã_3": "A3", "D̃_4": "D4", "Ẽ_6": "E6", "Ẽ_7": "E7", "Ẽ_8": "E8",
           "A~3": "A3", "D~4": "D4", "E~6": "E6", "E~7": "E7", "E~8": "E8"}
HEREDITARY_IDS = ("A3", "D4", "E6", "E7", "E8")


class UnknownFrame(KeyError):
    pass


class FrameDataError(ValueError):
    pass


def _read(kind: str, name: str) -> str:
    path = resources.files(__package__).joinpath(kind, name)
    if not path.is_file():
        raise UnknownFrame(name)
    return path.read_text(encoding="utf-8")


def les_ids() -> list[str]:
    d = resources.files(__package__).joinpath("les")
    return sorted(p.name[: -len(".quiver")] for p in d.iterdir() if p.name.endswith(".quiver"))


def _free_edges(text: str, p: Poset) -> list[tuple[str, str]]:
    for line in text.splitlines():
        line = line.strip()
        if line.startswith("# free:"):
            spec = line[len("# free:"):].split()
            if spec == ["all"]:
                return sorted(p.covers)
            out = []
            for tok in spec:
                a, b = tok.split("<")
                if (a, b) not in p.covers:
                    raise FrameDataError(f"free edge {tok} is not a cover")
                out.append((a, b))
            return out
    return []


@lru_cache(maxsize=None)
def _loupias_raw(fid: str) -> tuple[Poset, tuple]:
    fid = ALIASES.get(fid, fid)
    if fid not in LOUPIAS_IDS:
        raise UnknownFrame(fid)
    text = _read("loupias", f"{fid}.poset")
    p = parse_poset(text)
    if not p.is_connected():
        raise FrameDataError(f"frame {fid} is not connected")
    return p, tuple(_free_edges(text, p))


def loupias_frame(fid: str) -> Poset:
    return _loupias_raw(fid)[0]


def crown() -> Poset:
    return from_covers([("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")])


@lru_cache(maxsize=None)
def loupias_variants(fid: str) -> tuple[Poset, ...]:
    """All re-orientations of the frame's free edges, one per isomorphism class."""
    p, free = _loupias_raw(fid)
    fixed = [c for c in p.covers if c not in set(free)]
    seen, out = set(), []
    cr = crown()
    for bits in itertools.product((0, 1), repeat=len(free)):
        pairs = fixed + [(b, a) if f else (a, b) for (a, b), f in zip(free, bits)]
        q = from_covers(pairs)
        if len(q) != len(p) or q.covers != frozenset(pairs):
            continue
        if len(q) > 4 and find_subposet_isomorphic(q, cr) is not None:
            continue
        k = q.canonical_form()
        if k not in seen:
            seen.add(k)
            out.append(q)
    return tuple(out)


@lru_cache(maxsize=None)
def loupias_labels() -> dict[str, str]:
    """Canonical label -> frame id, over all variants and their opposites."""
    out = {}
    for fid in LOUPIAS_IDS:
        for v in loupias_variants(fid):
            out.setdefault(v.canonical_form(), fid)
            out.setdefault(v.opposite().canonical_form(), fid)
    return out


@lru_cache(maxsize=None)
def les_frame(fid: str) -> Quiver:
    q = parse_quiver(_read("les", f"{fid}.quiver"))
    if not q.is_connected():
        raise FrameDataError(f"quiver frame {fid} is not connected")
    return q


def validate() -> list[str]:
    """Connectivity, sizes and hyperbolicity of the shipped data; returns problems found."""
    from ..quiver import is_hyperbolic

    problems = []
    for fid in LOUPIAS_IDS:
        try:
            p = loupias_frame(fid)
            if not loupias_variants(fid):
                problems.append(f"{fid}: no valid orientation")
            if fid.startswith("R") and len(p) not in (8, 9):
                problems.append(f"{fid}: unexpected size {len(p)}")
        except Exception as exc:  # noqa: BLE001 - report every broken file
            problems.append(f"{fid}: {exc}")
    for fid in les_ids():
        try:
            if not is_hyperbolic(les_frame(fid)):
                problems.append(f"{fid}: not hyperbolic")
        except Exception as exc:  # noqa: BLE001
            problems.append(f"{fid}: {exc}")
    return problems
