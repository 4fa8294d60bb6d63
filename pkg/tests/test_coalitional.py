import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from unionvals import (
    CoalitionalValueId,
    UnionGame,
    banzhaf,
    banzhaf_owen,
    ed,
    ed_u,
    esd,
    esd1_u,
    esd2_u,
    esd3_u,
    esd4_correction,
    esd4_u,
    esd5_correction,
    esd5_u,
    esd5_weight,
    modified_game,
    owen,
    owen_procedure,
    quotient_game,
    quotient_star_game,
    reduced_game,
    shapley,
    trivial_partition,
    zero_normalized,
)
from unionvals.coalitional import BASE_OF
from unionvals.errors import CoalitionOutsideBlock, WeightUndefined
from unionvals.game import Game, bits, game_from_function, popcount
from unionvals.randgames import blocks_from_sizes, random_game, random_union_game

import oracles
from conftest import g1, g1_game, union_games

V = CoalitionalValueId

G1_EXPECTED = {
    V.ED_U: (3, 3, 6),
    V.ESD1_U: (F(7, 2), F(7, 2), 5),
    V.ESD2_U: (F(5, 2), F(9, 2), 5),
    V.ESD3_U: (2, 4, 6),
    V.ESD4_U: (F(5, 2), F(9, 2), 5),
    V.ESD5_U: (F(5, 2), F(9, 2), 5),
    V.OWEN: (F(5, 2), F(9, 2), 5),
    V.BANZHAF_OWEN: (F(5, 2), F(9, 2), 5),
}


def _direct(ug, value):
    """Oracle evaluation of ``value`` on ``ug`` from its defining formula."""
    g = ug.game
    v = oracles.as_dict(g)
    part = [tuple(g.members(b)) for b in ug.blocks]
    if value is V.ED_U:
        return oracles.edu_direct(g.players, v, part)
    if value is V.ESD1_U:
        return oracles.esd1u_direct(g.players, v, part)
    if value is V.ESD2_U:
        return oracles.esd2u_direct(g.players, v, part)
    if value is V.ESD3_U:
        return oracles.esd3u_direct(g.players, v, part)
    if value is V.ESD4_U:
        return oracles.esd4u_direct(g.players, v, part)
    if value is V.ESD5_U:
        return oracles.unique_qgp_bcu_cesd(g.players, v, part)
    if value is V.OWEN:
        return oracles.owen_two_step(g.players, v, part, oracles.shapley_by_orders)
    if value is V.BANZHAF_OWEN:
        return oracles.owen_two_step(g.players, v, part, oracles.banzhaf_direct)
    raise AssertionError(value)


@pytest.mark.parametrize("value", list(V), ids=lambda v: v.value)
def test_g1_pinned_constants_match_oracle(value):
    ug = g1()
    expected = [F(x) for x in G1_EXPECTED[value]]
    assert list(_direct(ug, value).values()) == expected
    assert list(value(ug).values()) == expected


@settings(max_examples=60, deadline=None)
@given(union_games(max_n=5))
def test_closed_forms_match_oracles(ug):
    for value in V:
        assert value(ug) == _direct(ug, value), value


# -- two-step procedure ----------------------------------------------------------------


def test_modified_game_g1():
    ug = g1()
    u = modified_game(ug, 0, ug.game.mask("1"))
    assert (u.worth("1"), u.worth("2"), u.worth("1,2")) == (0, 2, 3)
    u0 = modified_game(ug, 0, 0)
    assert (u0.worth("1"), u0.worth("1,2")) == (0, 2)
    assert modified_game(ug, 0, ug.blocks[0]) == quotient_game(ug)
    with pytest.raises(CoalitionOutsideBlock):
        modified_game(ug, 0, ug.game.mask("3"))


def test_reduced_game_g1_esd():
    w = reduced_game(g1(), 0, esd)
    assert w.players == ("1", "2")
    assert (w.worth("1"), w.worth("2"), w.worth("1,2")) == (F(1, 2), F(5, 2), 7)
    assert w.v(0) == 0


def test_reduced_game_singleton_union():
    ug = g1()
    for f in (ed, esd, shapley):
        w = reduced_game(ug, 1, f)
        assert w.worth("3") == f(quotient_game(ug))["2"]


@given(union_games())
def test_reduced_game_with_ed(ug):
    g = ug.game
    for r, block in enumerate(ug.blocks):
        w = reduced_game(ug, r, ed)
        outside = g.grand & ~block
        for sub in range(1, 1 << w.n):
            s = g.mask([w.players[j] for j in range(w.n) if sub >> j & 1])
            assert w.v(sub) == g.v(outside | s) / ug.m


def test_owen_procedure_g1():
    ug = g1()
    assert list(owen_procedure(ug, shapley).values()) == [F(5, 2), F(9, 2), 5]
    assert list(owen_procedure(ug, ed).values()) == [3, 3, 6]
    assert list(owen_procedure(ug, esd).values()) == [F(5, 2), F(9, 2), 5]


@settings(max_examples=80, deadline=None)
@given(union_games(max_n=5))
def test_two_step_equivalences(ug):
    assert owen_procedure(ug, ed) == ed_u(ug)
    assert owen_procedure(ug, esd) == esd4_u(ug)


# -- closed forms ------------------------------------------------------------------


def test_esd1_with_zero_union_worths_is_edu():
    g = game_from_function("abcd", lambda m: 0 if m in (0b0011, 0b1100) else m)
    ug = UnionGame.from_names(g, [["a", "b"], ["c", "d"]])
    assert esd1_u(ug) == ed_u(ug)


@given(union_games())
def test_esd2_zero_normalized_is_esd1(ug):
    z = UnionGame(zero_normalized(ug.game), ug.blocks)
    assert esd2_u(z) == esd1_u(z)


@given(union_games())
def test_esd3_additive_game(ug):
    g = ug.game
    add = game_from_function(g.players, lambda m: sum((g.singleton(i) for i in bits(m)), F(0)))
    a = UnionGame(add, ug.blocks)
    assert esd3_u(a) == {p: g.singleton(i) for i, p in enumerate(g.players)}


@given(union_games())
def test_remark_identities(ug):
    e2, e4, c4 = esd2_u(ug), esd4_u(ug), esd4_correction(ug)
    assert {p: e4[p] - e2[p] for p in e4} == c4
    e1, e5, c5 = esd1_u(ug), esd5_u(ug), esd5_correction(ug)
    assert {p: e5[p] - e1[p] for p in e5} == c5


@given(union_games())
def test_singleton_unions_have_no_corrections(ug):
    c4, c5 = esd4_correction(ug), esd5_correction(ug)
    for b in ug.blocks:
        if popcount(b) == 1:
            p = ug.game.players[bits(b)[0]]
            assert c4[p] == 0 and c5[p] == 0


def test_esd5_without_inner_worths_is_esd1():
    blocks = blocks_from_sizes([3, 2])

    def worth(m):
        inside = any(m & b == m and m != b for b in blocks)
        return 0 if inside else m % 7 - 3

    ug = UnionGame(game_from_function("abcde", worth), blocks)
    assert esd5_u(ug) == esd1_u(ug)


def test_esd4_differs_from_esd2_somewhere():
    rng = random.Random(4)
    for _ in range(50):
        ug = random_union_game(rng, 4, 2)
        if esd4_u(ug) != esd2_u(ug):
            return
    pytest.fail("no game separating esd4_u from esd2_u")


def test_banzhaf_owen_equals_owen_with_two_pairs():
    # two unions of two players: every game in the procedure has two players,
    # where the Banzhaf and Shapley values coincide
    rng = random.Random(5)
    for _ in range(30):
        ug = UnionGame.from_names(random_game(rng, 4), [["1", "2"], ["3", "4"]])
        assert banzhaf_owen(ug) == owen(ug)


def test_banzhaf_owen_differs_from_owen_somewhere():
    rng = random.Random(5)
    for _ in range(50):
        ug = UnionGame.from_names(random_game(rng, 4), [["1", "2"], ["3"], ["4"]])
        if banzhaf_owen(ug) != owen(ug):
            return
    pytest.fail("no game separating banzhaf_owen from owen")


def test_banzhaf_owen_equals_owen_on_g1():
    assert banzhaf_owen(g1()) == owen(g1())


# -- weights -----------------------------------------------------------------------


@pytest.mark.parametrize(
    "m, pk, t, expected",
    [
        (2, 2, 1, F(1, 2)),
        (2, 3, 1, F(4, 9)),
        (2, 3, 2, F(2, 9)),
        (3, 4, 2, F(2, 15)),
    ],
)
def test_esd5_weight_examples(m, pk, t, expected):
    assert esd5_weight(m, pk, t) == expected


@pytest.mark.parametrize("args", [(0, 3, 1), (2, 1, 1), (2, 3, 0), (2, 3, 3)])
def test_esd5_weight_out_of_range(args):
    with pytest.raises(WeightUndefined):
        esd5_weight(*args)


def _cases_matching(m, pk, t):
    z = pk - t
    return [
        pk == 2 and t == 1,
        pk > 2 and t == 1,
        pk > 2 and t == pk - 1,
        pk > 3 and 2 <= z <= pk - 2,
    ]


def test_weight_case_coverage():
    for pk in range(2, 13):
        for m in range(1, 9):
            for t in range(1, pk):
                assert sum(_cases_matching(m, pk, t)) == 1, (m, pk, t)
                esd5_weight(m, pk, t)


def test_weight_case_iii_cross_check():
    for pk in range(4, 13):
        for m in range(1, 9):
            expected = F(m + 1, m + 2) * F(1, pk - 1) * F(2, pk)
            assert esd5_weight(m, pk, pk - 2) == expected


def test_three_member_union_uses_first_member_case():
    for m in range(1, 9):
        assert esd5_weight(m, 3, 1) == F(m + 2, 3 * (m + 1))
        assert F(m + 2, 3 * (m + 1)) != F(m + 1, 3 * (m + 2))


def _weight_from_unique_value(m, pk, t):
    """Recover the weight of a size-t coalition from the recursive characterization.

    Take the game worth 1 on one size-t coalition T inside a union of size pk
    (plus m-1 singleton unions) and 0 elsewhere; a member of T then receives
    exactly weight/t.
    """
    n = pk + m - 1
    players = [str(i) for i in range(n)]
    T = frozenset(players[:t])
    v = {S: F(1 if S == T else 0) for S in oracles.subsets(players)}
    part = [tuple(players[:pk])] + [(p,) for p in players[pk:]]
    return t * oracles.unique_qgp_bcu_cesd(players, v, part)[players[0]]


@pytest.mark.parametrize("pk", [2, 3, 4, 5, 6])
def test_weights_match_recursive_characterization(pk):
    for m in (1, 2, 3):
        for t in range(1, pk):
            assert esd5_weight(m, pk, t) == _weight_from_unique_value(m, pk, t), (m, pk, t)


def test_esd5_matches_recursive_value_on_large_unions():
    rng = random.Random(55)
    for sizes in ([5], [5, 1], [6], [4, 2], [3, 3], [5, 2]):
        n = sum(sizes)
        g = random_game(rng, n)
        ug = UnionGame(g, blocks_from_sizes(sizes))
        part = [tuple(g.members(b)) for b in ug.blocks]
        assert esd5_u(ug) == oracles.unique_qgp_bcu_cesd(g.players, oracles.as_dict(g), part), sizes


# -- cross-value invariants --------------------------------------------------------


@given(union_games())
def test_coalitional_consistency(ug):
    g = ug.game
    t = trivial_partition(g)
    for value in V:
        assert value(t) == BASE_OF[value](g), value


@given(union_games())
def test_owen_with_grand_union_is_shapley(ug):
    g = ug.game
    assert owen(UnionGame(g, (g.grand,))) == shapley(g)


@given(union_games())
def test_efficiency(ug):
    total = ug.game.v(ug.game.grand)
    for value in V:
        if value is not V.BANZHAF_OWEN:
            assert sum(value(ug).values()) == total, value


@given(union_games())
def test_quotient_sum_identities(ug):
    g = ug.game
    q_esd = esd(quotient_game(ug))
    q_ed = ed(quotient_game(ug))
    qs_esd = esd(quotient_star_game(ug))
    allocs = {v: v(ug) for v in V}
    for k, b in enumerate(ug.blocks):
        name = str(k + 1)

        def block_sum(v):
            return sum((allocs[v][g.players[i]] for i in bits(b)), F(0))

        for v in (V.ESD1_U, V.ESD2_U, V.ESD4_U, V.ESD5_U):
            assert block_sum(v) == q_esd[name], v
        assert block_sum(V.ED_U) == q_ed[name]
        assert block_sum(V.ESD3_U) == qs_esd[name]


@settings(max_examples=40, deadline=None)
@given(union_games(max_n=5))
def test_block_order_invariance(ug):
    rev = UnionGame(ug.game, tuple(reversed(ug.blocks)))
    for v in V:
        assert v(rev) == v(ug), v


def test_value_id_parsing():
    assert V.parse("ESD5_U") is V.ESD5_U
    assert V.parse("esd5u") is V.ESD5_U
    assert V.parse("banzhaf-owen") is V.BANZHAF_OWEN
    with pytest.raises(ValueError):
        V.parse("nope")


def test_user_supplied_base_value_sees_pinned_empty_worth():
    seen = []

    def spy(g: Game):
        seen.append(g.v(0))
        return esd(g)

    owen_procedure(g1(), spy)
    assert set(seen) == {0}
