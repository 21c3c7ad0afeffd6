import random
import sys

from hypothesis import settings, strategies as st

from posetrep import poset as P
from posetrep import quiver as Qv

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


@st.composite
def posets(draw, min_size=1, max_size=8, connected=False):
    n = draw(st.integers(min_size, max_size))
    density = draw(st.sampled_from([0.15, 0.3, 0.5]))
    seed = draw(st.integers(0, 10**6))
    p = P.random_poset(n, density, random.Random(seed))
    if connected and not p.is_connected():
        comp = max(p.components(), key=len)
        p = p.induced(comp)
    return p


@st.composite
def quivers(draw, max_n=5, max_mult=2):
    """Random acyclic quivers: arrows only go from lower to higher index."""
    n = draw(st.integers(1, max_n))
    verts = [f"q{i}" for i in range(n)]
    arrows = []
    for i in range(n):
        for j in range(i + 1, n):
            arrows += [(verts[i], verts[j])] * draw(st.integers(0, max_mult))
    return Qv.Quiver(verts, arrows)


@st.composite
def connected_quivers(draw, max_n=5, max_mult=2):
    q = draw(quivers(max_n, max_mult))
    comps = q.components()
    return max(comps, key=lambda c: c.n)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
