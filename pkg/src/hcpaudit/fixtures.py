"""Small named digraphs used across tests, docs and the CLI."""

from __future__ import annotations

from .digraph import Digraph

D3 = Digraph(3, ((0, 1), (1, 2), (2, 0)))

# square with every arc also reversed
DBI4 = Digraph(4, ((0, 1), (1, 2), (2, 3), (3, 0), (1, 0), (2, 1), (3, 2), (0, 3)))

# two 2-cycles joined both ways through 1 <-> 2; the only cycle cover is the two 2-cycles
D2SQ = Digraph(4, ((0, 1), (1, 0), (2, 3), (3, 2), (1, 2), (2, 1)))

# 4-cycle plus the chord pair 0 <-> 2; exactly one cycle cover
D4C = Digraph(4, ((0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (2, 0)))

# two triangles sharing vertex 0
D5FIG8 = Digraph(5, ((0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)))

NAMED = {"D3": D3, "Dbi4": DBI4, "D2sq": D2SQ, "D4c": D4C, "D5fig8": D5FIG8}


def _ladder() -> Digraph:
    # Hand transcription of the 16-vertex ladder drawing.  Top row t1..t8 is
    # vertices 0..7, bottom row b1..b8 is 8..15.  Arc label a_k becomes arc
    # id k-1.  Labels a12 and a19 are taken exactly as drawn (b5->b4 and
    # b5->t5); with the other reading the example's starting matching would
    # not be a matching.
    t = {i: i - 1 for i in range(1, 9)}
    b = {i: 7 + i for i in range(1, 9)}
    arcs = {
        1: (t[1], t[2]), 2: (t[2], t[3]), 3: (t[3], t[4]), 4: (t[4], t[5]),
        5: (t[5], t[6]), 6: (t[6], t[7]), 7: (t[7], t[8]),
        8: (b[1], t[1]), 9: (t[2], b[2]), 10: (b[3], t[3]), 11: (t[4], b[4]),
        12: (b[5], b[4]), 13: (t[6], b[6]), 14: (b[7], t[7]), 15: (t[8], b[8]),
        16: (b[8], b[7]), 17: (b[7], b[6]), 18: (b[6], b[5]), 19: (b[5], t[5]),
        20: (b[4], b[3]), 21: (b[3], b[2]), 22: (b[2], b[1]),
    }
    return Digraph(16, tuple(arcs[k] for k in range(1, 23)))


LADDER16 = _ladder()

# starting matching of the worked example, as arc ids (labels minus one)
LADDER16_M0 = tuple(
    k - 1 for k in (1, 8, 22, 9, 10, 3, 20, 11, 19, 5, 18, 6, 17, 7, 15, 16)
)

NAMED["Ladder16"] = LADDER16
