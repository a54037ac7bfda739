"""Straightening products of divided-power generators into the ordered basis.

Every product of generators rewrites as a Z-linear combination of ordered
monomials (lowering, then Cartan, then raising factors).  The integer
coefficients are the point: they certify that the products stay inside the
integral form, so the same expressions make sense over F_p.
"""
from hyperweyl import (
    CoeffAlgebra,
    build_root_datum,
    format_hyper,
    get_oracle,
    lower_dp,
    raise_dp,
    straighten,
)

datum = build_root_datum("A", 1)
algebra = CoeffAlgebra("poly", 1)
o = get_oracle(datum, algebra)

t = algebra.parse("t")
one = algebra.unit()

print("== A1 over F[t]: reordering a raising power past a lowering power ==")
for r, s in [(1, 1), (1, 2), (2, 2), (2, 3)]:
    word = (raise_dp(0, t, r), lower_dp(0, one, s))
    h = straighten(o, word)
    print(f"E(t)^({r}) F(1)^({s})  =  {format_hyper(o, h)}")

print()
print("== The coefficients are always integers ==")
word = (lower_dp(0, t, 3), raise_dp(0, t, 2), lower_dp(0, one, 2))
h = straighten(o, word)
print(f"F(t)^(3) E(t)^(2) F(1)^(2)  =  {format_hyper(o, h)}")
coeffs = sorted(h.values())
print(f"coefficient list: {coeffs}")
assert all(isinstance(c, int) for c in coeffs)

print()
print("== Divided powers along one root merge with a binomial weight ==")
word = (lower_dp(0, t, 2), lower_dp(0, t, 3))
h = straighten(o, word)
print(f"F(t)^(2) F(t)^(3)  =  {format_hyper(o, h)}   (binom(5,2) = 10)")
