import itertools
from fractions import Fraction

import pytest

import nilkit


def moebius(n):
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


def witt(r, n):
    return sum(moebius(d) * r ** (n // d) for d in range(1, n + 1) if n % d == 0) // n


def heis_mul(u, v):
    return (u[0] + v[0], u[1] + v[1], u[2] + v[2] + u[0] * v[1])



@pytest.mark.parametrize("rank", [2, 3])
@pytest.mark.parametrize("step", [1, 2, 3, 4])
def test_basic_counts_follow_witt(rank, step):
    expected = sum(witt(rank, n) for n in range(1, step + 1))
    assert len(nilkit.basic_commutators(rank, step)) == expected
    assert nilkit.witt_count(rank, step) == witt(rank, step)


def test_collect_swaps_letters():
    assert nilkit.collect("x2 x1", 2, 3) == [("x1", 1), ("x2", 1), ("[x2,x1]", 1)]
    assert nilkit.collected_exponents("x1^-1 x2^-1 x1 x2", 2, 3) == [0, 0, -1, 0, 0]


def test_syntax_error_is_a_value_error():
    with pytest.raises(nilkit.SyntaxError):
        nilkit.collect("[x1,x2", 2, 2)
    with pytest.raises(ValueError):
        nilkit.Group("nope:3")


def test_heisenberg_multiplication_matches_triples():
    g = nilkit.Group("ut:3")
    triples = list(itertools.product(range(-2, 3), repeat=3))[::7]
    for u in triples:
        for v in triples:
            # strictly upper entries row by row: (a, c, b) for [[1,a,c],[0,1,b],[0,0,1]]
            got = g.multiply([u[0], u[2], u[1]], [v[0], v[2], v[1]])
            w = heis_mul(u, v)
            assert got == [w[0], w[2], w[1]]


def test_big_integers_round_trip():
    g = nilkit.Group("cyclic:0")
    big = 10**40 + 7
    assert g.multiply([big], [big]) == [2 * big]
    assert g.invert([big]) == [-big]


def test_doubling_of_interval_and_heisenberg_ball():
    z = nilkit.Group("cyclic:0")
    assert nilkit.doubling_constant(z, [[i] for i in range(-2, 3)]) == Fraction(9, 5)

    g = nilkit.Group("ut:3")
    gens = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 0)]
    a = [[t[0], t[2], t[1]] for t in gens]
    square = {heis_mul(u, v) for u in gens for v in gens}
    assert nilkit.doubling_constant(g, a) == Fraction(len(square), len(gens))


def test_witness_for_interval():
    z = nilkit.Group("cyclic:0")
    w = nilkit.minimal_witness(z, [[i] for i in range(-2, 3)])
    assert w["verified"] and w["optimal"]
    assert w["k"] == len(w["x"]) == 2


def test_chain_sizes_in_heisenberg():
    g = nilkit.Group("ut:3")
    report = nilkit.check_chain(g, ["x1", "x2"], [1, 1])
    assert (report["ordered_size"], report["star_size"], report["nilpotent_size"]) == (9, 13, 27)
    assert report["ordered_in_star"] and report["star_in_nilpotent"]
    assert len(nilkit.progression(g, ["x1", "x2"], [1, 1], "ordered")) == 9


def test_p_group_structure():
    assert nilkit.invariant_factors(nilkit.Group("product:cyclic:4,cyclic:2")) == [2, 4]
    assert nilkit.abelian_rank(nilkit.Group("cyclic:8")) == 1
    assert sorted(nilkit.frattini(nilkit.Group("cyclic:8"))) == [[0], [2], [4], [6]]
    sizes, step = nilkit.lower_central_series(nilkit.Group("ut:4:mod=2"))
    assert sizes == [64, 8, 2, 1] and step == 3


def test_acceptance_basics_suite():
    results = nilkit.run_acceptance("basics")
    assert [r["id"] for r in results] == [3]
    assert all(r["passed"] for r in results)
