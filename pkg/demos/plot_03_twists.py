"""
Zhang twists and the map theta
==============================

A graded automorphism sigma turns the product into ``a * b = sum a_n sigma^n(b)``
over the homogeneous parts ``a_n`` of ``a``. The twisted algebra comes with a
map theta back into the original one, and a finite matrix test decides when
theta is onto.
"""

# %%
# Twisting by the swap f_x. With sigma = identity the twisted product is the
# ordinary one.
from leavitt import TwistContext, check_iso_criterion, image_membership, mk_theta, parse_element
from leavitt.catalog import catalog
from leavitt.matrix import iterate_Pm

c = catalog()
g = c.g
ctx = TwistContext(c.aut_x)
a = parse_element("e1 + e1'", g)
b = parse_element("e1", g)
print("a * b (twisted) =", ctx.mul(a, b))
print("a b   (plain)   =", a * b)
print("identity twist  =", TwistContext.identity(g).mul(a, b))

# %%
# The criterion looks at the matrices Q_m built from the inverse automorphism.
# For the swap and for f_y every entry is reached, so theta is certified.
for name, aut in (("x", c.aut_x), ("y", c.aut_y)):
    rep = check_iso_criterion(mk_theta(TwistContext(aut)), 2, 2)
    print(name, rep.verdict)

# %%
# For f_u the entry (1,2) of Q_2 is not found in the image of theta by
# elimination over monomials of length up to 4. That is a bounded negative,
# not a proof of absence.
Q2 = iterate_Pm(c.aut_u.inverse, 2)
print(Q2)
theta_u = mk_theta(TwistContext(c.aut_u))
print(image_membership(theta_u, Q2[0, 1], 4))
print(check_iso_criterion(theta_u, 2, 2).verdict)
