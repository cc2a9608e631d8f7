"""
Automorphisms from matrices and units
=====================================

An invertible 2x2 matrix over the corner algebra defines an endomorphism by
mixing the two loops. Certifying that it is an automorphism needs a second
matrix playing the role of its inverse.
"""

# %%
# Units of the algebra and the maps they induce. ``x`` is its own inverse.
from leavitt import (
    certify_automorphism, compose, compose_functional, extract_matrix, mk_fu, mk_invertible, parse_element, phi,
    try_fixed_point_shortcut,
)
from leavitt.catalog import catalog

c = catalog()
g = c.g
x, _ = c.unit("x")
print("x =", x)
print("x^2 =", x * x)

f_x = mk_fu(x, x)
for line in f_x.describe():
    print("  ", line)

# %%
# The matrix behind f_x is the swap. Its entries are fixed by f_x, which is
# enough to certify f_x without hunting for a witness.
print(extract_matrix(g, f_x).P)
aut = try_fixed_point_shortcut(f_x)
print("shortcut:", aut is not None)

# %%
# ``u`` is a unit whose map does not fix its own matrix. Here we certify with
# the matrix of ``w`` as witness; the inverse automorphism is then f_w.
u, u_inv = c.unit("u")
f_u = c.f_u
print("f_u(u) == u:", f_u(u) == u)
aut_u = certify_automorphism(f_u, c.f_w.matrix)
print("inverse agrees with f_w:", aut_u.inverse.agrees_with(c.f_w))
print("f_u(w) =", f_u(c.unit("w")[0]))
print("u^-1   =", u_inv)

# %%
# Composition through the twisted matrix product agrees with plain function
# composition, checked here on the generators.
P = mk_invertible(c.mat("[v, e1; 0, v]"), c.mat("[v, -e1; 0, v]"))
fP = phi(P)
both = compose(fP, f_x)
print(both.agrees_with(compose_functional(fP, f_x)))
print("e2 ->", both(parse_element("e2", g)))
