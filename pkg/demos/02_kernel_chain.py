"""
The kernel chain of BS(2,3) under a -> a^2
==========================================

phi kills [b^-n a b^n, a] after exactly n steps, so the chain
N_0 < N_1 < ... never stops growing: BS(2,3) has infinite depth for phi.
The Grigorchuk group is the other standing example; its oracle runs the
wreath recursion directly.
"""
from hnnkit import (chain_inclusion_probe, depth_scan, depth_witness_check, grigorchuk_oracle, parse_expression,
                    preset)
from hnnkit.oracles import GRIGORCHUK_SIGMA

P = preset("bs23")
print(P)

for n in range(1, 5):
    w = parse_expression(f"[b^-{n} a b^{n}, a]")
    wit = depth_witness_check(w, n, P)
    print(f"n={n} {str(w):>24} {wit.status}: {wit.reason}")

# the relator itself is already dead before phi acts
print("relator:", depth_witness_check("BaabAAA", 1, P).reason)

# exhaustive search for depth-1 witnesses among short words
found = depth_scan(P, 8, 1)
print(f"{len(found)} depth-1 witnesses of length <= 8, e.g. {[str(w.word) for w in found[:4]]}")

# phi keeps N_0 inside N_0: every sample comes back with a certificate
rep = chain_inclusion_probe(P, samples=20)
print(f"probe: {rep.confirmed} confirmed, {rep.unknown} unknown, {rep.refuted} refuted")

# Grigorchuk: relators and their sigma-images are trivial, ad has order 4
g = grigorchuk_oracle()
for w in ["aa", "adadadad", "adad", "ac", "ac" * 8]:
    print(f"{w:>18}: {g.is_identity(w).value}")
print("sigma^2(a) =", GRIGORCHUK_SIGMA("a", 2))
