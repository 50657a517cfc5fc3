"""Shared test helpers: the oracle peeler and point-set strategies.

oracle_peel is deliberately primitive: it classifies every point with
brute_force_is_extreme (exhaustive support enumeration over exact linear
solves) and never touches the LP engine or any production peeler, so it
can arbitrate between them.
"""

from typing import List

from hypothesis import strategies as st

from onionpeel import ExtremenessQuery, PointSet, brute_force_is_extreme

ACCEPTANCE_LINES: List[str] = []


def pytest_terminal_summary(terminalreporter):
    """Echo the one-line-per-criterion acceptance verdicts after the run."""
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def oracle_peel(s: PointSet) -> List[List[tuple]]:
    """Layers of s via the brute-force oracle only."""
    remaining = s
    layers = []
    while len(remaining):
        verts = [
            p
            for p in remaining
            if brute_force_is_extreme(ExtremenessQuery(p, remaining))
        ]
        layers.append(verts)
        remaining = remaining.difference(verts)
    return layers


def oracle_labels(s: PointSet) -> List[int]:
    """Layer index per point of s in lex order, via the oracle."""
    label = {}
    for i, layer in enumerate(oracle_peel(s), start=1):
        for p in layer:
            label[p] = i
    return [label[p] for p in s]


def point_sets(
    max_dim: int = 3, max_coord: int = 5, max_points: int = 24, min_dim: int = 1
):
    """Hypothesis strategy for small PointSets of one common dimension."""
    return st.integers(min_dim, max_dim).flatmap(
        lambda d: st.lists(
            st.tuples(*[st.integers(-max_coord, max_coord)] * d),
            min_size=1,
            max_size=max_points,
        ).map(lambda pts: PointSet(pts, d))
    )
