import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from autzlab.errors import NotAbelian, NotApplicable, NotRegular, ScopeExceeded
from autzlab.groups import center, whole_group
from autzlab.invariants import (
    PurelyNonabelian,
    abelian_type,
    agemo1,
    derived_subgroup,
    frattini,
    frattini_by_maximal_subgroups,
    has_abelian_direct_factor,
    is_purely_nonabelian,
    is_regular,
    lower_central_series,
    nilpotency_class,
    omega1,
    rank,
    regular_power_lemma_check,
    upper_central_series,
)
from autzlab.pcp import abelian_presentation, cyclic_presentation, load_presentation, realize

from .conftest import DATA, bf_closure, bf_comm, cayley

EXPECTED_CLASS = {
    "c3": 1, "c27": 1, "c3xc3": 1, "c9xc3": 1, "heis27": 2, "ext27_exp9": 2,
    "c3_x_heis27": 2, "c9_sd_c9": 2, "maxclass81": 3, "phi8_32": 3, "phi7_243": 3,
    "meta729": 3, "order729_gamma2_p4": 4, "c3_x_phi8_32": 3,
}


def test_lower_central_series_examples(groups):
    for name, cl in EXPECTED_CLASS.items():
        assert nilpotency_class(groups[name]) == cl, name
    assert lower_central_series(groups["heis27"]).orders == (27, 3, 1)
    assert lower_central_series(groups["order729_gamma2_p4"]).orders == (729, 81, 27, 3, 1)


def test_upper_central_series_examples(groups):
    assert upper_central_series(groups["c27"]).orders == (1, 27)
    assert upper_central_series(groups["heis27"]).orders == (1, 3, 27)
    u = upper_central_series(groups["maxclass81"]).orders
    assert u[2] // u[1] == 3


def test_series_consistency(groups):
    for name, G in groups.items():
        lo, up = lower_central_series(G), upper_central_series(G)
        cl = lo.nilpotency_class
        assert len(up) - 1 == cl, name
        assert lo[cl].is_trivial() and (cl == 0 or not lo[cl - 1].is_trivial())
        assert up[cl].order == G.order
        assert all(a > b for a, b in zip(lo.orders, lo.orders[1:]))
        assert all(a < b for a, b in zip(up.orders, up.orders[1:]))
        # gamma_{i+1} <= Z_{cl-i}
        for i in range(cl + 1):
            assert lo[i] <= up[cl - i]


def test_upper_series_by_bruteforce(groups):
    """Z_{i+1} = {x : [x, g] in Z_i for all g}, straight from the definition."""
    for name in ("maxclass81", "phi8_32", "phi7_243"):
        G = groups[name]
        T = cayley(G)
        prev = {0}
        for term in upper_central_series(G).terms[1:]:
            nxt = {x for x in range(G.order) if all(bf_comm(T, x, g) in prev for g in range(G.order))}
            assert nxt == set(term.elements.tolist()), name
            prev = nxt


def test_frattini_and_rank_examples(groups):
    E = groups["c3xc3"]
    assert frattini(E).is_trivial() and rank(E) == 2
    assert rank(groups["phi8_32"]) == 2
    H = groups["heis27"]
    assert frattini(H) == center(H) and rank(H) == 2
    assert rank(groups["phi7_243"]) == 3


def test_frattini_oracle_small_groups(groups):
    for G in groups.values():
        if G.order <= 81:
            assert frattini(G) == frattini_by_maximal_subgroups(G)


def test_frattini_oracle_beyond_default_scope(groups):
    # the oracle is cheap enough to run on the order-243 entries too
    for name in ("phi8_32", "phi7_243"):
        G = groups[name]
        assert frattini(G) == frattini_by_maximal_subgroups(G)


def test_omega_and_agemo():
    E = realize(abelian_presentation(3, [3, 3]))
    assert omega1(E) == whole_group(E) and agemo1(E).is_trivial()
    C9 = realize(cyclic_presentation(3, 2))
    assert omega1(C9).order == 3 and agemo1(C9).order == 3


def test_omega_agemo_bruteforce(groups):
    for name in ("phi8_32", "meta729", "c9_sd_c9"):
        G = groups[name]
        T = cayley(G)
        p = G.p
        pth = [_pow(T, x, p) for x in range(G.order)]
        assert set(omega1(G).elements.tolist()) == bf_closure(T, [x for x in range(G.order) if pth[x] == 0])
        assert set(agemo1(G).elements.tolist()) == bf_closure(T, set(pth))


def test_metacyclic_agemo_not_in_derived(groups):
    G = groups["meta729"]
    assert not agemo1(G) <= derived_subgroup(G)


def test_abelian_type_examples(groups):
    assert abelian_type(realize(cyclic_presentation(3, 1))) == (3,)
    assert abelian_type(groups["c9xc3"]) == (9, 3)
    with pytest.raises(NotAbelian):
        abelian_type(groups["heis27"])


@settings(max_examples=20, deadline=None)
@given(t=st.lists(st.sampled_from([3, 9, 27]), min_size=1, max_size=3))
def test_abelian_type_round_trip(t):
    t = sorted(t, reverse=True)
    assume(sum({3: 1, 9: 2, 27: 3}[m] for m in t) <= 7)
    assert abelian_type(realize(abelian_presentation(3, t))) == tuple(t)


@settings(max_examples=15, deadline=None)
@given(t=st.lists(st.sampled_from([2, 4, 8]), min_size=1, max_size=3))
def test_abelian_type_round_trip_p2(t):
    t = sorted(t, reverse=True)
    assume(sum({2: 1, 4: 2, 8: 3}[m] for m in t) <= 7)
    assert abelian_type(realize(abelian_presentation(2, t))) == tuple(t)


def test_regularity(groups):
    assert is_regular(groups["c9xc3"])
    assert is_regular(groups["heis27"])
    assert is_regular(groups["phi8_32"])
    # class 3 = p at order 3^4: C3 wr C3 is the standard irregular 3-group
    assert not is_regular(groups["maxclass81"])


def test_regularity_bruteforce(groups):
    """Direct definition: some z in gamma_2(<x,y>) with x^p y^p = (xy)^p z^p."""
    for name in ("heis27", "ext27_exp9", "maxclass81", "c9_sd_c9"):
        G = groups[name]
        T = cayley(G)
        p = G.p
        ok = True
        derived = {}
        for x in range(G.order):
            for y in range(G.order):
                H = frozenset(bf_closure(T, [x, y]))
                if H not in derived:
                    derived[H] = bf_closure(T, {bf_comm(T, u, v) for u in H for v in H})
                D = derived[H]
                lhs = T[_pow(T, x, p)][_pow(T, y, p)]
                if not any(T[_pow(T, T[x][y], p)][_pow(T, z, p)] == lhs for z in D):
                    ok = False
                    break
            if not ok:
                break
        assert is_regular(G) == ok, name


def test_regularity_scope(groups):
    with pytest.raises(ScopeExceeded):
        is_regular(realize(abelian_presentation(3, [27, 27, 3])))


def test_power_lemma(groups):
    for G in groups.values():
        if G.order <= 243 and is_regular(G):
            assert regular_power_lemma_check(G)
    with pytest.raises(NotRegular):
        regular_power_lemma_check(groups["maxclass81"])


def test_power_lemma_abelian_vacuous():
    assert regular_power_lemma_check(realize(abelian_presentation(3, [9, 3])))


def test_purely_nonabelian(groups):
    assert is_purely_nonabelian(groups["heis27"]) is PurelyNonabelian.TRUE_BY_SUFFICIENT_CONDITION
    assert is_purely_nonabelian(groups["phi8_32"])
    assert is_purely_nonabelian(groups["c3_x_heis27"]) is PurelyNonabelian.FALSE
    assert not is_purely_nonabelian(groups["c3_x_heis27"])
    with pytest.raises(NotApplicable):
        is_purely_nonabelian(groups["c27"])
    with pytest.raises(ScopeExceeded):
        is_purely_nonabelian(groups["c3_x_phi8_32"])


def test_sufficient_condition_agrees_with_search(groups):
    for G in groups.values():
        if G.is_abelian() or G.order > 81:
            continue
        if center(G) <= frattini(G):
            assert not has_abelian_direct_factor(G)


def test_rank_two_order_p4_center_is_frattini(groups):
    hits = 0
    for G in groups.values():
        p = G.p
        if G.order == p**4 and rank(G) == 2 and derived_subgroup(G).order == p:
            hits += 1
            assert center(G) == frattini(G) and center(G).order == p**2
    assert hits >= 1


def test_upper_and_lower_series_on_p2_group():
    G = realize(load_presentation(DATA / "p2" / "c2xd32.pc"))
    assert nilpotency_class(G) == 4 and center(G).order == 4
    assert len(upper_central_series(G)) == 5


def _pow(T, x, k):
    y = 0
    for _ in range(k):
        y = T[y][x]
    return y
