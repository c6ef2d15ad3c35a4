"""
The complement of D(N, M) in a Cayley complex ball
==================================================

D(N, M) = t^N A {1, t^-1, ..., t^-M}.  Removing it leaves one special
component above and many components hanging below.  classify predicts
which one a vertex lands in from its level and one coset test; the ball
confirms it.
"""
from collections import Counter

from hnnkit import build_ball, classify, components_minus, export, preset

P = preset("bs12")
ball = build_ball(P, 6)
print(f"ball of radius 6: {len(ball)} vertices, {len(ball.edges)} edges, {len(ball.cells)} cells")

N, M = 1, 1
labels = {v.id: classify(v.word, N, M, P).label for v in ball.vertices}
print(Counter(str(x) for x in labels.values()))

comps = components_minus(ball, lambda v: str(labels[v.id]) == "InD")
sizes = sorted((len(c) for c in comps), reverse=True)
print(f"{len(comps)} components after removing D({N},{M}); largest sizes {sizes[:5]}")

for w in ["t", "tt", "aT", "taTT", "TTT"]:
    print(f"{w:>5}: {classify(w, N, M, P)}")

# a small picture for graphviz
small = build_ball(P, 2)
dot = export(small, "dot", {v.id: str(classify(v.word, N, M, P).label) for v in small.vertices})
print(dot.decode().splitlines()[2])
