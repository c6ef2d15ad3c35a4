"""
Canonical forms in <t, a | t^-1 a t = a^2>
==========================================

Every element is t^n w t^-m with no pinch left.  The level n - m is the
exponent sum of t and never changes under the relations.
"""
from hnnkit import canonical_form, envelope, equal_in_G, in_coset_tNA, preset

P = preset("bs12")
print(P)

# a few words and their forms
for w in ["taaT", "Tat", "taT", "TTa", "tTaaTtaA"]:
    print(f"{w:>10} -> {canonical_form(w, P)}")

# t a^2 t^-1 pinches back to a, t a t^-1 does not
print("taaT = a ?", equal_in_G("taaT", "a", P))
print("taT  = a ?", equal_in_G("taT", "a", P))

# which vertices lie in the coset A itself
for v in ["T", "taTT", "TTa"]:
    print(f"{v} t^(-level) in A ? {in_coset_tNA(v, 0, P)}")

# the smallest t^N A {1, ..., t^-M} holding a finite set
e = envelope(["taTT", "ttt"], P)
print(f"envelope: N={e.N} M={e.M}", {str(k): v for k, v in e.table.items()})
