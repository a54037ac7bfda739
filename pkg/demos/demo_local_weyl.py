"""Local Weyl modules over the current algebra of A1: graded and evaluation type.

Over F[t] the highest-weight quotient is cut out inside a finite window of
lowering monomials; the closure deepens the window until two consecutive
passes agree on the dimension.  Graded modules (all higher series scalars
zero) and evaluation modules at chosen points of the line come out of the
same engine, only the scalar table changes.
"""
from hyperweyl import (
    CoeffAlgebra,
    EvalData,
    build_root_datum,
    evaluation_table,
    relation_closure,
    spanning_set,
)
from hyperweyl.hyper import lower_dp

datum = build_root_datum("A", 1)
algebra = CoeffAlgebra("poly", 1)

print("== graded local modules, lambda = m omega ==")
for m in (1, 2, 3):
    bound = len(spanning_set(datum, (m,), algebra))
    res = relation_closure(datum, (m,), algebra, EvalData(lam=(m,)))
    tag = "agrees with 2^m" if res.dimension == 2 ** m else "differs from 2^m"
    print(f"m={m} char 0: dim {res.dimension:2d} of spanning bound {bound:3d}"
          f"  slack {res.window.slack}  ({tag})")

print()
print("== the same modules over small prime fields (m=2) ==")
for p in (2, 3, 5):
    res = relation_closure(datum, (2,), algebra, EvalData(lam=(2,), char=p))
    print(f"char {p}: dim {res.dimension}  stabilized {res.stabilized}")

print()
print("== the graded m=2 character ==")
res = relation_closure(datum, (2,), algebra, EvalData(lam=(2,)))
for mu in sorted(res.character, reverse=True):
    print(f"  weight {mu[0]:3d}: multiplicity {res.character[mu]}")

print()
print("== high loop modes reduce into the low ones ==")
state = res.state
for s in (2, 3):
    residue = state.reduce({(lower_dp(0, (s,), 1),): 1})
    print(f"  (x- ox t^{s}) w reduces to span of lower modes: "
          f"{'yes' if set(residue) <= {(lower_dp(0, (j,), 1),) for j in (0, 1)} else 'no'}")

print()
print("== evaluation module at the points 1 and 2 ==")
table = evaluation_table((2,), [[1, 2]], degree=64)
res = relation_closure(datum, (2,), algebra, EvalData(lam=(2,), c=table))
print(f"dim {res.dimension}, character "
      f"{{{', '.join(f'{mu[0]}: {k}' for mu, k in sorted(res.character.items(), reverse=True))}}}")
print("same dimension as the graded module; the grading is gone but the size is not")
