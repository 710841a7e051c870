"""Shared builders for the test suite.

Diagrams are assembled from component templates so each test spells
out only the structure it cares about.  All builders renumber from 0.
"""

from __future__ import annotations

from linkdyn import LinkableDynkinDiagram, validate_cartan

# rows of the component templates used throughout the tests
COMPONENT_ROWS = {
    "A1": ((2,),),
    "A2": ((2, -1), (-1, 2)),
    "A3": ((2, -1, 0), (-1, 2, -1), (0, -1, 2)),
    # arrow toward the second vertex
    "B2": ((2, -2), (-1, 2)),
    # arrow toward the first vertex
    "B2r": ((2, -1), (-2, 2)),
    "B3": ((2, -1, 0), (-1, 2, -2), (0, -1, 2)),
    "G2": ((2, -3), (-1, 2)),
    "G2r": ((2, -1), (-3, 2)),
    "A1(1)": ((2, -2), (-2, 2)),
    "A2(2)": ((2, -4), (-1, 2)),
}


def block_rows(labels):
    """Block-diagonal Cartan rows for a list of component labels."""
    blocks = [COMPONENT_ROWS[name] for name in labels]
    n = sum(len(b) for b in blocks)
    rows = [[0] * n for _ in range(n)]
    base = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, v in enumerate(row):
                rows[base + i][base + j] = v
        base += len(b)
    return tuple(tuple(r) for r in rows)


def diag(rows, pairs, linked=None, mode="finite"):
    """Diagram from Cartan rows plus dotted pairs (0-based, any order)."""
    ps = tuple(sorted(tuple(sorted(p)) for p in pairs))
    flagged = ps if linked is None else tuple(sorted(tuple(sorted(p)) for p in linked))
    return LinkableDynkinDiagram(
        validate_cartan(rows),
        ps,
        frozenset(flagged),
        mode,
    )


def component_diag(labels, pairs, linked=None, mode="finite"):
    return diag(block_rows(labels), pairs, linked, mode)


def circle(label, n, mode="finite"):
    """n copies of a path component joined end to start in a ring.

    The dotted edges run from the last vertex of each copy to the first
    vertex of the next, so the whole diagram carries exactly one cycle.
    """
    rows = block_rows([label] * n)
    size = len(COMPONENT_ROWS[label])
    pairs = [
        (k * size + size - 1, ((k + 1) % n) * size)
        for k in range(n)
    ]
    return diag(rows, pairs, mode=mode)
