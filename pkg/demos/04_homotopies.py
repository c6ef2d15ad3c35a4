"""
Pushing edges up and killing loops away from D
==============================================

A push homotopy stacks rows phi^k(a) above an edge; each strip is a row
of conjugation cells spanning one level, which is what makes it proper.
Diagrams kill loops by inserting cells, and replay checks them without
knowing how they were found.
"""
from hnnkit import (build_corner, build_push, build_string, fp_complement_trivialize, preset, replay,
                    trivialize_bounded, verify_levels)

P = preset("bs12")
H = build_push("", "a", 5, P)
cert = verify_levels(H, P)
print("push rows:", H.labels[:4], "cells per row", H.cell_counts())
print("row intervals", cert.intervals, "properness", cert.properness)

Q = preset("bs23")
H = build_string("aba", 3, Q, "t")
print("string aba from t:", H.labels, "cells per row", H.cell_counts())

H = build_corner("Tat", 3, P)
print("corner Tat:", len(H.stage1), "slide(s), then rows", H.labels)

r = str(Q.relators[0])
D = trivialize_bounded(str(Q.phi(r)), 0, Q)
rep = replay(D, Q)
print(f"phi(r) killed with {D.cell_counts()}, levels {rep.min_level}..{rep.max_level}")

for start in ["TT", "TTab", "t", "ttb"]:
    D = fp_complement_trivialize(r, 0, 1, Q, start=start)
    rep = replay(D, Q)
    print(f"relator at {start:>5}: {D.info['branch']:>14}, {len(D.moves)} moves, "
          f"levels {rep.min_level}..{rep.max_level}, replay {rep.message}")
