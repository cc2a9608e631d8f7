"""Finite directed multigraphs, finite paths and closed-path rotation classes."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property

NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class GraphError(ValueError):
    pass


class Graph:
    """A finite directed graph with ordered, named vertices and edges.

    Edge order is fixed at construction. The last declared edge leaving a
    regular vertex is its *special* edge; the normal form of algebra elements
    rewrites away the junction ``f f*`` for special ``f``.
    """

    def __init__(self, vertices, edges):
        vertices = tuple(vertices)
        edges = tuple((str(n), str(s), str(r)) for n, s, r in edges)
        if not vertices:
            raise GraphError("a graph needs at least one vertex")
        names = list(vertices) + [e[0] for e in edges]
        for n in names:
            if not NAME_RE.match(n):
                raise GraphError(f"invalid name {n!r}")
        seen = set()
        for n in names:
            if n in seen:
                raise GraphError(f"duplicate name {n!r}")
            seen.add(n)
        vindex = {v: i for i, v in enumerate(vertices)}
        for n, s, r in edges:
            for end in (s, r):
                if end not in vindex:
                    raise GraphError(f"edge {n!r} uses undeclared vertex {end!r}")

        self.vertices = vertices
        self.edges = edges
        self.vindex = vindex
        self.eindex = {e[0]: i for i, e in enumerate(edges)}
        self.src = tuple(vindex[s] for _, s, _ in edges)
        self.rng = tuple(vindex[r] for _, _, r in edges)
        out = [[] for _ in vertices]
        for i, s in enumerate(self.src):
            out[s].append(i)
        self.out = tuple(tuple(o) for o in out)
        self.special = tuple(o[-1] if o else None for o in self.out)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __repr__(self):
        return f"Graph(vertices={list(self.vertices)}, edges={[e[0] for e in self.edges]})"

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def vertex(self, name: str) -> int:
        try:
            return self.vindex[name]
        except KeyError:
            raise GraphError(f"unknown vertex {name!r}") from None

    def edge(self, name: str) -> int:
        try:
            return self.eindex[name]
        except KeyError:
            raise GraphError(f"unknown edge {name!r}") from None

    def vertex_name(self, i: int) -> str:
        return self.vertices[i]

    def edge_name(self, i: int) -> str:
        return self.edges[i][0]

    def is_regular(self, v: int) -> bool:
        return bool(self.out[v])

    def regular_vertices(self):
        return [v for v in range(self.num_vertices) if self.out[v]]

    @cached_property
    def rose_petals(self) -> int | None:
        """Number of petals if this is literally ``rose(n)``, else None."""
        n = self.num_edges
        if n >= 1 and self == rose(n):
            return n
        return None

    def render(self) -> str:
        lines = [f"vertex {v}" for v in self.vertices]
        lines += [f"edge {n} {s} {r}" for n, s, r in self.edges]
        return "\n".join(lines) + "\n"

    def paths_of_length(self, k: int, start: int | None = None):
        """All paths of length ``k`` (as edge-index tuples), in lexicographic order."""
        if k == 0:
            return [()]
        result = []

        def extend(prefix, at):
            if len(prefix) == k:
                result.append(tuple(prefix))
                return
            for e in self.out[at]:
                prefix.append(e)
                extend(prefix, self.rng[e])
                prefix.pop()

        starts = range(self.num_vertices) if start is None else [start]
        for s in starts:
            extend([], s)
        return result


def build_graph(spec: str) -> Graph:
    """Parse the line-oriented graph format (``vertex``/``edge`` lines, ``#`` comments)."""
    vertices, edges = [], []
    for lineno, raw in enumerate(spec.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "vertex" and len(parts) == 2:
            vertices.append(parts[1])
        elif parts[0] == "edge" and len(parts) == 4:
            edges.append(tuple(parts[1:]))
        else:
            raise GraphError(f"line {lineno}: cannot parse {raw.strip()!r}")
    return Graph(vertices, edges)


def load_graph(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return build_graph(fh.read())


_ROSES: dict[int, Graph] = {}


def rose(n: int) -> Graph:
    """The rose graph: one vertex ``v`` with loops ``e1..en``."""
    if n < 1:
        raise GraphError("a rose needs at least one petal")
    if n not in _ROSES:
        _ROSES[n] = Graph(["v"], [(f"e{i}", "v", "v") for i in range(1, n + 1)])
    return _ROSES[n]


def classify_vertex(g: Graph, v: str | int) -> str:
    i = g.vertex(v) if isinstance(v, str) else v
    if not 0 <= i < g.num_vertices:
        raise GraphError(f"unknown vertex {v!r}")
    return "regular" if g.out[i] else "sink"


@dataclass(frozen=True)
class Path:
    """A finite path; the empty path at a vertex has ``edges == ()``."""

    graph: Graph = field(compare=False, repr=False)
    base: int
    edges: tuple = ()

    def __post_init__(self):
        g = self.graph
        at = self.base
        for e in self.edges:
            if g.src[e] != at:
                raise GraphError("consecutive edges do not match")
            at = g.rng[e]

    @classmethod
    def of(cls, g: Graph, *names: str, base: str | None = None) -> "Path":
        edges = tuple(g.edge(n) for n in names)
        if edges:
            b = g.src[edges[0]]
        elif base is not None:
            b = g.vertex(base)
        else:
            raise GraphError("an empty path needs a base vertex")
        return cls(g, b, edges)

    @property
    def source(self) -> int:
        return self.base

    @property
    def range(self) -> int:
        return self.graph.rng[self.edges[-1]] if self.edges else self.base

    def __len__(self):
        return len(self.edges)

    @property
    def is_closed(self) -> bool:
        return len(self.edges) >= 1 and self.source == self.range

    def concat(self, other: "Path") -> "Path":
        if self.range != other.source:
            raise GraphError("paths do not compose")
        return Path(self.graph, self.base, self.edges + other.edges)

    def __str__(self):
        if not self.edges:
            return self.graph.vertex_name(self.base)
        return "".join(self.graph.edge_name(e) for e in self.edges)


def _period(word: tuple) -> int:
    t = len(word)
    for d in range(1, t + 1):
        if t % d == 0 and word[:d] * (t // d) == word:
            return d
    return t


@dataclass(frozen=True)
class ClosedPathClass:
    path: Path
    rotations: tuple
    primitive: bool
    period: int

    @property
    def distinct(self):
        seen = []
        for r in self.rotations:
            if r not in seen:
                seen.append(r)
        return seen


def rotations(c: Path) -> ClosedPathClass:
    """The rotation list ``c_1 = c, c_2 = e_2..e_t e_1, ...`` plus primitivity."""
    if not c.is_closed:
        raise GraphError("rotations need a closed path of positive length")
    w = c.edges
    g = c.graph
    rots = tuple(Path(g, g.src[w[i]], w[i:] + w[:i]) for i in range(len(w)))
    d = _period(w)
    return ClosedPathClass(c, rots, d == len(w), d)


def primitive_root(word: tuple) -> tuple:
    return word[: _period(word)]
