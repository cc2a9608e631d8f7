"""Word-level rewriting of the Cuntz-Krieger relations.

This is an independent route to normal forms: arbitrary words in vertices,
edges and ghost edges are reduced one redex at a time, in an order chosen by
a random generator. It is slow and exists to cross-check the closed-form
product in :mod:`leavitt.algebra` (confluence tests).
"""

from __future__ import annotations

import random

from .algebra import Element, accumulate
from .field import scalar
from .graph import Graph

# letters: ("v", i) vertex, ("e", i) edge, ("g", i) ghost edge


def _left(g: Graph, a) -> int:
    kind, i = a
    return i if kind == "v" else (g.src[i] if kind == "e" else g.rng[i])


def _right(g: Graph, a) -> int:
    kind, i = a
    return i if kind == "v" else (g.rng[i] if kind == "e" else g.src[i])


def _rewrite_pair(g: Graph, a, b):
    """Rewrite the adjacent letters ``a b``.

    Returns None when ``ab`` is not a redex, otherwise a list of
    ``(sign, replacement letters)``; an empty list means ``ab = 0``.
    """
    if _right(g, a) != _left(g, b):
        return []
    if a[0] == "v":
        return [(1, (b,))]
    if b[0] == "v":
        return [(1, (a,))]
    if a[0] == "g" and b[0] == "e":
        return [(1, (("v", g.rng[a[1]]),))] if a[1] == b[1] else []
    if a[0] == "e" and b[0] == "g" and a[1] == b[1]:
        f = a[1]
        u = g.src[f]
        if g.special[u] == f:
            out = [(1, (("v", u),))]
            out += [(-1, (("e", e), ("g", e))) for e in g.out[u] if e != f]
            return out
    return None


def _redexes(g: Graph, word: tuple) -> list:
    return [i for i in range(len(word) - 1) if _rewrite_pair(g, word[i], word[i + 1]) is not None]


def reduce_words(g: Graph, terms: dict, rng: random.Random | None = None, max_steps: int = 200_000) -> dict:
    """Reduce ``{word: coeff}`` until no redex remains, choosing redexes at random."""
    rng = rng or random.Random(0)
    terms = {w: scalar(c) for w, c in terms.items() if c}
    steps = 0
    while True:
        pending = [w for w in terms if _redexes(g, w)]
        if not pending:
            return terms
        steps += 1
        if steps > max_steps:
            raise RuntimeError("rewriting did not terminate within the step cap")
        w = rng.choice(sorted(pending))
        i = rng.choice(_redexes(g, w))
        c = terms.pop(w)
        for sign, rep in _rewrite_pair(g, w[i], w[i + 1]):
            accumulate(terms, w[:i] + rep + w[i + 2 :], c if sign == 1 else -c)


def word_to_key(g: Graph, word: tuple):
    if len(word) == 1 and word[0][0] == "v":
        return ((), (), word[0][1])
    p = tuple(i for k, i in word if k == "e")
    ghosts = [i for k, i in word if k == "g"]
    if len(p) + len(ghosts) != len(word) or word[: len(p)] != tuple(("e", i) for i in p):
        raise ValueError(f"irreducible word {word} is not of the form p q*")
    q = tuple(reversed(ghosts))
    v = g.rng[q[-1]] if q else g.rng[p[-1]]
    return (p, q, v)


def words_to_element(g: Graph, terms: dict) -> Element:
    out: dict = {}
    for w, c in terms.items():
        accumulate(out, word_to_key(g, w), c)
    return Element(g, out)


def key_to_word(k) -> tuple:
    p, q, v = k
    if not p and not q:
        return (("v", v),)
    return tuple(("e", i) for i in p) + tuple(("g", i) for i in reversed(q))


def element_words(a: Element) -> dict:
    return {key_to_word(k): c for k, c in a.terms.items()}


def rewrite_normalize(g: Graph, terms: dict, seed: int = 0) -> Element:
    return words_to_element(g, reduce_words(g, terms, random.Random(seed)))


def random_word(g: Graph, rng: random.Random, max_len: int = 5) -> tuple:
    """A random ``p q*`` word with ``r(p) = r(q)`` (``p``, ``q`` of length <= max_len)."""
    while True:
        v = rng.randrange(g.num_vertices)
        p = _random_path_to(g, v, rng.randint(0, max_len), rng)
        q = _random_path_to(g, v, rng.randint(0, max_len), rng)
        if p is not None and q is not None:
            if not p and not q:
                return (("v", v),)
            return tuple(("e", i) for i in p) + tuple(("g", i) for i in reversed(q))


def _random_path_to(g: Graph, v: int, k: int, rng: random.Random):
    """A random path of length ``k`` ending at ``v`` (None if there is none)."""
    incoming = [[] for _ in range(g.num_vertices)]
    for e in range(g.num_edges):
        incoming[g.rng[e]].append(e)
    path = []
    at = v
    for _ in range(k):
        if not incoming[at]:
            return None
        e = rng.choice(incoming[at])
        path.append(e)
        at = g.src[e]
    return tuple(reversed(path))
