"""Weyl modules of the simple algebra itself: dimensions and characters.

With trivial coefficients the highest-weight quotient is the classical Weyl
module.  Its dimension over any field matches the characteristic-zero Weyl
dimension formula, and the closure engine recovers that by pure linear algebra
over Q and over F_p, with no representation theory wired in.
"""
from hyperweyl import build_root_datum, character_check, weyl_module_g

for type_args, weights in [(("A", 1), [(1,), (2,), (3,), (4,)]),
                           (("A", 2), [(1, 0), (1, 1), (2, 0)])]:
    datum = build_root_datum(*type_args)
    print(f"== type {datum.type_string()} ==")
    for lam in weights:
        expect = datum.weyl_dimension(lam)
        dims = []
        for p in (0, 2, 3, 5):
            res = weyl_module_g(datum, lam, char=p)
            assert res.stabilized and character_check(res, datum)
            dims.append(res.dimension)
        marks = " ".join(f"p={p}:{d}" for p, d in zip((0, 2, 3, 5), dims))
        ok = "ok" if all(d == expect for d in dims) else "MISMATCH"
        print(f"lambda {lam}: formula {expect:3d}   {marks}   {ok}")
    print()

print("== character of the A2 adjoint module (dimension 8) ==")
datum = build_root_datum("A", 2)
res = weyl_module_g(datum, (1, 1))
for mu in sorted(res.character, reverse=True):
    print(f"  weight {mu}: multiplicity {res.character[mu]}")
print("the zero weight shows multiplicity 2, the six roots multiplicity 1")
