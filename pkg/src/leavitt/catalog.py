"""Named units and automorphisms of L(R_2) used throughout the checks and demos."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .algebra import Element
from .graph import Graph, rose
from .matrix import AlgMatrix, InvertiblePair, U
from .morphism import Automorphism, Endo, certify_automorphism, mk_fu, try_fixed_point_shortcut
from .parse import parse_element, parse_matrix

# units of L(R_2): (name, u, u^-1)
UNITS = {
    "x": ("e1*e2' + e2*e1'", "e1*e2' + e2*e1'"),
    "y": ("v + e1^2*e2'^2", "v - e1^2*e2'^2"),
    "u": ("e1*e2' + e2*e1' + e1^2*e2'*e1'", "e1*e2' + e2*e1' - e2*e1*e2'^2"),
    "w": ("e1*e2' + e2*e1' - e2^2*e1'*e2'", "e1*e2' + e2*e1' + e1*e2*e1'^2"),
}


@dataclass
class Catalog:
    """Parsed examples; build one per field mode (coefficients follow the active field)."""

    g: Graph

    def el(self, src: str) -> Element:
        return parse_element(src, self.g)

    def mat(self, src: str) -> AlgMatrix:
        return AlgMatrix(self.g, 0, parse_matrix(src, self.g))

    def unit(self, name: str) -> tuple:
        a, b = UNITS[name]
        return self.el(a), self.el(b)

    def fu(self, name: str) -> Endo:
        return mk_fu(*self.unit(name))

    @cached_property
    def f_x(self) -> Endo:
        return self.fu("x")

    @cached_property
    def f_y(self) -> Endo:
        return self.fu("y")

    @cached_property
    def f_u(self) -> Endo:
        return self.fu("u")

    @cached_property
    def f_w(self) -> Endo:
        return self.fu("w")

    @cached_property
    def aut_x(self) -> Automorphism:
        return try_fixed_point_shortcut(self.f_x)

    @cached_property
    def aut_y(self) -> Automorphism:
        return try_fixed_point_shortcut(self.f_y)

    @cached_property
    def aut_u(self) -> Automorphism:
        # witness Q = (e_i* w e_j), the matrix of f_w
        return certify_automorphism(self.f_u, self.f_w.matrix)

    @cached_property
    def U_p(self) -> InvertiblePair:
        return U(self.el("e1*e2'"))


def catalog() -> Catalog:
    return Catalog(rose(2))
