import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from autzlab.errors import NotNormal
from autzlab.groups import (
    RealizedGroup,
    center,
    centralizer,
    commutator_subgroup,
    commutator_subgroup_bruteforce,
    element_order,
    is_normal,
    quotient,
    subgroup_closure,
    trivial_subgroup,
    whole_group,
)
from autzlab.invariants import abelian_type, derived_subgroup

from .conftest import (
    bf_center,
    bf_closure,
    bf_commutator_subgroup,
    bf_order,
    cayley,
    entry_group,
)


def test_closure_examples(heis):
    assert subgroup_closure(heis, []).order == 1
    c = heis.element((0, 0, 1))
    assert subgroup_closure(heis, [c]).order == 3
    a, b = heis.element((1, 0, 0)), heis.element((0, 1, 0))
    assert subgroup_closure(heis, [a, b]).order == 27


@settings(max_examples=60, deadline=None)
@given(gens=st.lists(st.integers(0, 242), max_size=3))
def test_closure_matches_bruteforce(phi8, gens):
    T = _table(phi8)
    H = subgroup_closure(phi8, gens)
    assert set(H.elements.tolist()) == bf_closure(T, gens)
    assert phi8.order % H.order == 0


def test_commutator_examples(heis, phi8):
    G = whole_group(heis)
    assert commutator_subgroup(heis, G, trivial_subgroup(heis)).is_trivial()
    D = commutator_subgroup(heis, G, G)
    assert D.order == 3 and heis.element((0, 0, 1)) in D
    P = whole_group(phi8)
    assert commutator_subgroup(phi8, P, P).order == 9


def test_commutator_matches_bruteforce_on_catalog(groups):
    for name, G in groups.items():
        if G.order > 243:
            continue
        T = _table(G)
        Gs = whole_group(G)
        Z = center(G)
        for H, K in [(Gs, Gs), (Gs, Z), (derived_subgroup(G), Gs)]:
            got = commutator_subgroup(G, H, K)
            assert set(got.elements.tolist()) == bf_commutator_subgroup(
                T, H.elements.tolist(), K.elements.tolist()), name
            assert got == commutator_subgroup_bruteforce(G, H, K)


@settings(max_examples=40, deadline=None)
@given(h=st.lists(st.integers(0, 242), min_size=1, max_size=2),
       k=st.lists(st.integers(0, 242), min_size=1, max_size=2))
def test_commutator_is_symmetric(phi8, h, k):
    H, K = subgroup_closure(phi8, h), subgroup_closure(phi8, k)
    assert commutator_subgroup(phi8, H, K) == commutator_subgroup(phi8, K, H)


def test_center_matches_bruteforce(groups):
    expected = {"heis27": 3, "phi8_32": 3, "phi7_243": 3, "c27": 27, "c9_sd_c9": 9}
    for name, G in groups.items():
        Z = center(G)
        if G.order <= 243:
            assert set(Z.elements.tolist()) == bf_center(_table(G)), name
        if name in expected:
            assert Z.order == expected[name]
        assert is_normal(G, Z)
        assert subgroup_closure(G, Z.gens) == Z
        z = Z.elements
        assert (G.mul(z[:, None], z[None, :]) == G.mul(z[None, :], z[:, None])).all()


@settings(max_examples=30, deadline=None)
@given(s=st.lists(st.integers(0, 242), max_size=3))
def test_centralizer_contains_center(phi8, s):
    C = centralizer(phi8, s)
    assert center(phi8) <= C
    T = _table(phi8)
    assert set(C.elements.tolist()) == {g for g in range(243) if all(T[g][x] == T[x][g] for x in s)}


def test_abelian_center_is_everything(groups):
    G = groups["c9xc3"]
    assert center(G) == whole_group(G)


def test_quotient_examples(heis, phi8):
    assert quotient(heis, whole_group(heis)).order == 1
    Q = quotient(heis, center(heis))
    assert Q.order == 9 and Q.group.is_abelian()
    assert abelian_type(Q) == (3, 3)
    Q8 = quotient(phi8, derived_subgroup(phi8))
    assert Q8.order == 27 and abelian_type(Q8) == (9, 3)


def test_quotient_projection_is_homomorphism(groups):
    for G in groups.values():
        for N in (center(G), derived_subgroup(G)):
            Q = quotient(G, N)
            assert G.order == N.order * Q.order
            pi = Q.projection
            assert sorted(set(pi.tolist())) == list(range(Q.order))
            if G.order <= 243:
                x, y = np.meshgrid(G.elements, G.elements, indexing="ij")
            else:
                rng = np.random.default_rng(7)
                x, y = rng.integers(0, G.order, (2, 100_000))
            assert (pi[G.mul(x, y)] == Q.group.mul(pi[x], pi[y])).all()
            # representatives are minimal indices of their cosets
            assert (Q.representatives == np.array([np.flatnonzero(pi == k).min() for k in range(Q.order)])).all()


def test_quotient_requires_normal(heis):
    a = heis.element((1, 0, 0))
    H = subgroup_closure(heis, [a])
    assert not is_normal(heis, H)
    with pytest.raises(NotNormal):
        quotient(heis, H)


def test_element_orders(heis, groups):
    assert element_order(heis, 0) == 1
    assert element_order(heis, heis.element((1, 0, 0))) == 3
    for G in groups.values():
        if G.order > 243:
            continue
        T = _table(G)
        orders = G.element_orders()
        assert [bf_order(T, x) for x in range(G.order)] == orders.tolist()


def test_metacyclic_generator_order():
    G = entry_group("meta729")
    a = G.element((1, 0, 0, 0, 0, 0))
    assert element_order(G, a) == 27
    assert G.order % element_order(G, a) == 0


def test_metacyclic_with_b_order_nine_is_impossible():
    """<a, b | a^81, b^9, a^b = a^4>: b^9 must act trivially, but x -> 4x on Z/81 has order 27."""
    k, m = 1, 4
    while m != 1:
        m = (m * 4) % 81
        k += 1
    assert k == 27 and 9 % k != 0


def test_from_table_round_trip(heis):
    T = np.asarray(heis.mul(heis.elements[:, None], heis.elements[None, :]))
    H = RealizedGroup.from_table(T, p=3, name="copy")
    assert H.order == 27 and center(H).order == 3


_TABLES = {}


def _table(G):
    if id(G) not in _TABLES:
        _TABLES[id(G)] = cayley(G)
    return _TABLES[id(G)]
