import itertools
import random

import pytest
from hypothesis import given, strategies as st

from leavitt.algebra import Element
from leavitt.chenmod import (
    ORACLES, ModuleError, ModuleVector, No, OracleExhausted, Unknown, Yes, act,
    annihilator_check, canonicalize_path, epsilon, iso_test_irrational, iso_test_rational, module_basis,
    monomial_decompose, oracle_path, perm_compose, perm_inverse, sn_act_matrix, sn_act_path, tail_equivalent,
    twisted_act,
)
from leavitt.graph import Path, rose, rotations
from leavitt.parse import parse_element, parse_path_literal
from leavitt.chenmod import path_from_literal
from leavitt.sampling import random_element, random_unitriangular

# first 32 symbols, frozen from the substitution fixed points below
THUE_MORSE_32 = "01101001100101101001011001101001"
FIBONACCI_32 = "01001010010010100101001001010010"


def substitution_fixed_point(rules, start, n):
    w = start
    while len(w) < n:
        w = "".join(rules[c] for c in w)
    return w[:n]


def test_oracles_match_substitutions():
    tm = substitution_fixed_point({"0": "01", "1": "10"}, "0", 512)
    fib = substitution_fixed_point({"0": "01", "1": "0"}, "0", 512)
    assert tm[:32] == THUE_MORSE_32 and fib[:32] == FIBONACCI_32
    assert "".join(str(ORACLES["thue-morse"].fn(i)) for i in range(512)) == tm
    assert "".join(str(ORACLES["fibonacci-word"].fn(i)) for i in range(512)) == fib
    for name, word in (("thue-morse", tm), ("fibonacci-word", fib)):
        for f in ORACLES[name].forbidden:
            assert "".join(map(str, f)) not in word


def P(src):
    return parse_path_literal(src)


def path(src, g=None):
    return path_from_literal(parse_path_literal(src), g or rose(2))


# canonical forms

def test_canonicalize_examples(g2):
    p = canonicalize_path(g2, ["e2"], ["e1", "e2"])
    assert p.prefix == () and p.cycle == (1, 0)
    q = canonicalize_path(g2, [], ["e2", "e1"])
    assert p == q
    assert p.first(12) == path("e2 (e1 e2)^inf").first(12) == (1, 0) * 6
    assert canonicalize_path(g2, [], ["e1", "e1"]).cycle == (0,)
    r = canonicalize_path(g2, [], ["e1", "e2"])
    assert (r.prefix, r.cycle) == ((), (0, 1))


def test_canonical_equality_is_path_equality(g2):
    rng = random.Random(2)
    for _ in range(300):
        pre = tuple(rng.randrange(2) for _ in range(rng.randint(0, 4)))
        cyc = tuple(rng.randrange(2) for _ in range(rng.randint(1, 4)))
        pre2 = tuple(rng.randrange(2) for _ in range(rng.randint(0, 4)))
        cyc2 = tuple(rng.randrange(2) for _ in range(rng.randint(1, 4)))
        a, b = canonicalize_path(g2, pre, cyc), canonicalize_path(g2, pre2, cyc2)
        same = a.first(40) == b.first(40)
        assert (a == b) == same


def test_canonicalize_errors(sink_graph):
    g = sink_graph
    with pytest.raises(ModuleError):
        canonicalize_path(g, [], ["f"])
    with pytest.raises(ModuleError):
        canonicalize_path(g, ["f"], ["g"])
    with pytest.raises(ModuleError):
        canonicalize_path(g, [], [])
    p = canonicalize_path(g, ["g", "g"], ["g"])
    assert p.prefix == () and p.cycle == (g.edge("g"),)


# tail equivalence

def test_tail_examples(g2):
    assert isinstance(tail_equivalent(path("(e1 e2)^inf"), path("e2 (e1 e2)^inf")), Yes)
    assert isinstance(tail_equivalent(path("(e1)^inf"), path("(e2)^inf")), No)
    tm = path("oracle:thue-morse[e1,e2]")
    assert isinstance(tail_equivalent(tm, tm.shift(1)), Yes)


def test_tail_oracle_verdicts(g2):
    tm = path("oracle:thue-morse[e1,e2]")
    fib = path("oracle:fibonacci-word[e1,e2]")
    assert isinstance(tail_equivalent(tm, fib), No)
    assert isinstance(tail_equivalent(tm, path("(e1 e2)^inf")), No)
    flipped = sn_act_path((2, 1), tm)
    # the relabelled Thue-Morse word has the same forbidden cubes: nothing decisive
    assert isinstance(tail_equivalent(tm, flipped, 32), Unknown)
    assert tail_equivalent(tm, flipped, 32).bound == 32
    undeclared = oracle_path(g2, "thue-morse", ["e1", "e2"], irrational=False)
    assert isinstance(tail_equivalent(undeclared, path("(e1)^inf")), Unknown)


def test_tail_equivalence_relation(g2):
    rng = random.Random(4)
    sample = []
    for _ in range(25):
        pre = tuple(rng.randrange(2) for _ in range(rng.randint(0, 3)))
        cyc = tuple(rng.randrange(2) for _ in range(rng.randint(1, 3)))
        sample.append(canonicalize_path(g2, pre, cyc))
    eq = {(i, j): isinstance(tail_equivalent(a, b), Yes) for (i, a), (j, b) in
          itertools.product(enumerate(sample), repeat=2)}
    n = len(sample)
    for i in range(n):
        assert eq[i, i]
        for j in range(n):
            assert eq[i, j] == eq[j, i]
            for k in range(n):
                if eq[i, j] and eq[j, k]:
                    assert eq[i, k]


def test_oracle_exhaustion(g2):
    tm = oracle_path(g2, "thue-morse", ["e1", "e2"], bound=8)
    with pytest.raises(OracleExhausted):
        epsilon(tm, 20)
    with pytest.raises(ModuleError):
        oracle_path(g2, "nope", ["e1", "e2"])


# actions

def test_act_examples(g2):
    base = ModuleVector.of(path("(e1 e2)^inf"))
    assert act(parse_element("e1'", g2), base) == ModuleVector.of(path("(e2 e1)^inf"))
    assert act(parse_element("e2'", g2), base) == 0
    c = parse_element("e1*e2", g2)
    assert act(Element.one(g2) - c, base) == 0


def test_twisted_examples(g2):
    swap = [[0, 1], [1, 0]]
    ident = [[1, 0], [0, 1]]
    rng = random.Random(8)
    m = ModuleVector.of(path("e2 (e1 e1 e2)^inf"))
    for _ in range(10):
        a = random_element(g2, rng)
        assert twisted_act(ident, a, m).terms == act(a, m).terms
    e1 = parse_element("e1", g2)
    assert twisted_act(swap, e1, ModuleVector.of(path("(e1)^inf"))) == ModuleVector.of(path("e2 (e1)^inf"))
    c = parse_element("e1*e2", g2)
    from leavitt.chenmod import phi_scalar

    r = Element.one(g2) - phi_scalar(g2, swap)(c)
    assert twisted_act(swap, r, ModuleVector.of(path("(e1 e2)^inf"))) == 0
    with pytest.raises(ModuleError):
        twisted_act([[1, 1], [1, 1]], e1, m)


def test_epsilon_examples(g2):
    a = path("(e1 e2)^inf")
    assert epsilon(a, 0) == Element.one(g2)
    assert epsilon(a, 2) == parse_element("e1*e1' - e1^2*e1'^2", g2)
    assert epsilon(a, 1) == parse_element("e1*e1'", g2)


def test_annihilator_examples(g2):
    tm = path("oracle:thue-morse[e1,e2]")
    assert annihilator_check([[1, 0], [0, 1]], tm, 5)
    for a in (tm, path("e2 (e1 e1 e2)^inf"), path("oracle:fibonacci-word[e2,e1]")):
        assert annihilator_check([[0, 1], [1, 0]], a, 4)

    def corrupted(alpha, m):
        e = epsilon(alpha, m)
        if m == 2:
            # swap in the wrong second edge
            p = (alpha.edge(0), 1 - alpha.edge(1))
            return Element.from_key(g2, p, p, 0)
        return e

    assert not annihilator_check([[1, 0], [0, 1]], tm, 3, eps=corrupted)


def _random_vectors(g, rng, count):
    bases = [path("(e1 e2)^inf", g), path("e2 (e1)^inf", g), path("e1 e2 (e2 e1 e1)^inf", g)]
    out = []
    for _ in range(count):
        base = rng.choice(bases)
        vec = ModuleVector(g, {})
        for _ in range(rng.randint(1, 3)):
            k = rng.randint(0, 3)
            p = tuple(rng.randrange(2) for _ in range(rng.randint(0, 2)))
            vec = vec + ModuleVector.of(base.shift(k).prepend(p), rng.choice([1, -2, 3]))
        out.append(vec)
    return out


def test_module_law(g2):
    rng = random.Random(12)
    Pm = [[2, 1], [1, 1]]
    for m in _random_vectors(g2, rng, 100):
        a, b = random_element(g2, rng, 3, 2), random_element(g2, rng, 3, 2)
        assert act(a * b, m) == act(a, act(b, m))
        assert twisted_act(Pm, a * b, m) == twisted_act(Pm, a, twisted_act(Pm, b, m))


def test_ck_compatibility(g2):
    rng = random.Random(13)
    for m in _random_vectors(g2, rng, 30):
        for e in range(2):
            ee = Element.ghost(g2, e) * Element.edge(g2, e)
            assert act(ee, m) == act(Element.vertex(g2, g2.rng[e]), m)
        s = Element.edge(g2, 0) * Element.ghost(g2, 0) + Element.edge(g2, 1) * Element.ghost(g2, 1)
        assert act(s, m) == act(Element.one(g2), m) == m


def test_cyclicity_probe(g2):
    start = ModuleVector.of(path("(e1 e2)^inf"))
    target = set(module_basis(g2, path("(e1 e2)^inf"), 4))
    reached = {next(iter(start.terms))}
    frontier = [start]
    gens = [Element.edge(g2, e) for e in range(2)] + [Element.ghost(g2, e) for e in range(2)]
    for _ in range(10):
        nxt = []
        for vec in frontier:
            for gen in gens:
                out = act(gen, vec)
                for x in out.terms:
                    if x not in reached and len(getattr(x, "prefix", ())) <= 6:
                        reached.add(x)
                        nxt.append(ModuleVector.of(x))
        frontier = nxt
    assert target <= reached


# symmetric groups and decisions

def test_sn_examples(g2):
    a = path("(e1 e2)^inf")
    assert sn_act_path((1, 2), a) == a
    assert sn_act_path((2, 1), a) == path("(e2 e1)^inf")
    assert sn_act_matrix((2, 1), [[1, 0], [0, 1]]) == [[0, 1], [1, 0]]
    with pytest.raises(ModuleError):
        sn_act_path((1, 3), a)


@given(st.permutations([1, 2, 3]), st.permutations([1, 2, 3]),
       st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=3, max_size=3))
def test_sn_actions_laws(s, t, A):
    s, t = tuple(s), tuple(t)
    # paths: a left action
    g = rose(3)
    x = canonicalize_path(g, [0], [1, 2, 2])
    assert sn_act_path(s, sn_act_path(t, x)) == sn_act_path(perm_compose(s, t), x)
    # matrices: column permutation composes the other way round
    assert sn_act_matrix(s, sn_act_matrix(t, A)) == sn_act_matrix(perm_compose(t, s), A)
    assert perm_compose(s, perm_inverse(s)) == (1, 2, 3)


def test_monomial_decompose_examples():
    d = monomial_decompose([[0, 1], [1, 0]])
    assert d.sigma == (2, 1) and d.diag == (1, 1)
    d = monomial_decompose([[2, 0], [0, 3]])
    assert d.sigma == (1, 2) and d.diag == (2, 3)
    assert monomial_decompose([[1, 1], [0, 1]]) is None
    d = monomial_decompose([[0, 0, 5], [7, 0, 0], [0, 2, 0]])
    assert d.matrix() == [[0, 0, 5], [7, 0, 0], [0, 2, 0]]


def test_iso_rational_examples(g2):
    c12, c21 = rotations(Path.of(g2, "e1", "e2")), rotations(Path.of(g2, "e2", "e1"))
    c1, c2 = rotations(Path.of(g2, "e1")), rotations(Path.of(g2, "e2"))
    I, S = [[1, 0], [0, 1]], [[0, 1], [1, 0]]
    assert iso_test_rational(c12, I, c21, I)
    assert not iso_test_rational(c1, I, c2, I)
    assert iso_test_rational(c1, S, c2, I)


def test_iso_irrational_examples(g2):
    tm = path("oracle:thue-morse[e1,e2]")
    I, S = [[1, 0], [0, 1]], [[0, 1], [1, 0]]
    assert isinstance(iso_test_irrational(tm, I, tm, I), Yes)
    assert isinstance(iso_test_irrational(tm, [[1, 1], [0, 1]], tm, [[1, 2], [0, 1]]), No)
    beta = sn_act_path((2, 1), tm)
    assert isinstance(iso_test_irrational(tm, S, beta, I), Yes)
    with pytest.raises(ModuleError):
        iso_test_irrational(path("(e1)^inf"), I, tm, I)


def test_iso_irrational_three_cycle():
    # sigma of order 3 tells beta ~ sigma.alpha apart from sigma.beta ~ alpha
    g = rose(3)
    alpha = oracle_path(g, "thue-morse", ["e1", "e2"])
    P = [[0, 0, 1], [1, 0, 0], [0, 1, 0]]
    I = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    sigma = monomial_decompose(P).sigma
    beta = sn_act_path(sigma, alpha)
    assert isinstance(iso_test_irrational(alpha, P, beta, I), Yes)


def test_unitriangular_pairs(g2):
    rng = random.Random(21)
    tm = path("oracle:thue-morse[e1,e2]")
    fib = path("oracle:fibonacci-word[e1,e2]")
    for _ in range(20):
        P = random_unitriangular(rng)
        Q = P if rng.random() < 0.5 else random_unitriangular(rng)
        beta = tm.shift(rng.randint(0, 5)) if rng.random() < 0.6 else fib
        res = iso_test_irrational(tm, P, beta, Q)
        expected = P == Q and beta is not fib
        assert isinstance(res, Yes if expected else No)
