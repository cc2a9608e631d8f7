"""
Chen modules over infinite paths
================================

The algebra acts on formal combinations of infinite paths: a real edge is
prepended, a ghost edge strips a matching first edge or kills the path. Paths
are either eventually periodic or read off a built-in oracle word.
"""

# %%
# Eventually periodic paths are stored in a canonical form, so different
# spellings of the same path compare equal.
from leavitt import (
    Element, ModuleVector, act, annihilator_check, canonicalize_path, iso_test_irrational, iso_test_rational,
    oracle_path, parse_element, rose, rotations, tail_equivalent, twisted_act,
)
from leavitt.chenmod import phi_scalar
from leavitt.graph import Path

g = rose(2)
p = canonicalize_path(g, ("e1", "e2"), ("e1", "e2"))
q = canonicalize_path(g, (), ("e1", "e2", "e1", "e2"))
print(p, "|", q, "|", p == q)

# %%
# Acting on the module. ``e1'`` peels an ``e1`` off the front, ``e2'`` kills it.
m = ModuleVector.of(p)
for src in ("e1'", "e2'", "e2*e1'", "3*v - e1"):
    print(f"{src:>10} . {p} = {act(parse_element(src, g), m)}")

# %%
# Irrational paths come from oracles. Tail equivalence between two oracle
# paths is answered Yes/No, or Unknown when the search bound runs out.
tm = oracle_path(g, "thue-morse", ["e1", "e2"])
fib = oracle_path(g, "fibonacci-word", ["e1", "e2"])
print(tm.first(12))
print(tail_equivalent(tm, tm.shift(3)), tail_equivalent(tm, fib))

# %%
# A scalar matrix P twists the action through phi_P. For a cycle c, the element
# v - phi_P(c) annihilates the twisted vector c^inf.
P = [[2, 1], [1, 1]]
f = phi_scalar(g, P)
c = canonicalize_path(g, (), ("e1", "e2"))
cel = Element.path(g, "e1", "e2")
print(twisted_act(P, Element.one(g) - f(cel), ModuleVector.of(c)))
print("annihilators up to m=4:", annihilator_check(P, tm, 4))

# %%
# Isomorphism tests between twisted modules. Rational paths compare a rotation
# of the cycle; irrational ones need Q^-1 P monomial and matching tails.
c12 = rotations(Path.of(g, "e1", "e2"))
c21 = rotations(Path.of(g, "e2", "e1"))
S = [[0, 1], [1, 0]]
print(iso_test_rational(c12, P, c21, P), iso_test_rational(c12, S, c12, P))
U = [[1, 1], [0, 1]]
print(iso_test_irrational(tm, U, tm.shift(2), U))
print(iso_test_irrational(tm, U, fib, U))
