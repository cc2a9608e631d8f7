"""
Normal forms on a rose
======================

Build the algebra of the rose with two petals, reduce a few expressions
and look at the grading.
"""

# %%
# The rose ``rose(2)`` has one vertex ``v`` and loops ``e1``, ``e2``. The
# last declared loop is the special edge, so ``e2*e2'`` is always rewritten
# away in favour of ``v - e1*e1'``.
from leavitt import Element, parse_element, rose

g = rose(2)
print(g.render())

a = parse_element("e2*e2'", g)
print("e2 e2* =", a)

# %%
# Ghost edges against real edges of a different letter vanish; matching ones
# collapse to the vertex.
for src in ("e1'*e2", "e1'*e1", "e1*e2*e2'*e1'"):
    print(f"{src:>16} -> {parse_element(src, g)}")

# %%
# Elements are graded by (real length) - (ghost length); ``graded_parts``
# splits an element into homogeneous components.
b = parse_element("v + e1*e2' + e1^2 - 3*e2'", g)
for deg, piece in sorted(b.graded_parts().items()):
    print(deg, piece)

# %%
# Equality is equality of normal forms, so the Cuntz-Krieger relation at ``v``
# holds on the nose.
one = Element.one(g)
print(parse_element("e1*e1' + e2*e2'", g) == one)
