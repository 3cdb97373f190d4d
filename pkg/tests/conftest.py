from pathlib import Path

import numpy as np
import pytest

from autzlab.catalog import default_catalog_dir, load_catalog, load_entry

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"
CATALOG = default_catalog_dir()


@pytest.fixture(scope="session")
def catalog():
    cat = load_catalog()
    assert not cat.errors
    return cat


@pytest.fixture(scope="session")
def groups(catalog):
    return {e.name: e.group for e in catalog}


@pytest.fixture(scope="session")
def heis(groups):
    return groups["heis27"]


@pytest.fixture(scope="session")
def phi8(groups):
    return groups["phi8_32"]


@pytest.fixture(scope="session")
def phi7(groups):
    return groups["phi7_243"]


def entry_group(name):
    return load_entry(CATALOG / f"{name}.pc").group


# -- brute-force oracles: plain Python over the Cayley table ------------------


def cayley(G):
    """Full multiplication table as nested lists."""
    ar = np.arange(G.order)
    return np.asarray(G.mul(ar[:, None], ar[None, :])).tolist()


def bf_closure(T, gens):
    elems = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = T[x][g]
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return elems


def bf_inverse(T, x):
    return T[x].index(0)


def bf_comm(T, x, y):
    return T[T[bf_inverse(T, x)][bf_inverse(T, y)]][T[x][y]]


def bf_center(T):
    n = len(T)
    return {z for z in range(n) if all(T[z][x] == T[x][z] for x in range(n))}


def bf_order(T, x):
    k, y = 1, x
    while y != 0:
        y = T[y][x]
        k += 1
    return k


def bf_commutator_subgroup(T, H, K):
    return bf_closure(T, {bf_comm(T, h, k) for h in H for k in K})


def bf_hom_count_abelian(a_type, B_table):
    """|Hom(prod C_a, B)| for abelian B: tuples (b_i) with b_i^(a_i) = 1."""
    n = len(B_table)
    count = 1
    for a in a_type:
        count *= sum(1 for b in range(n) if _bf_pow(B_table, b, a) == 0)
    return count


def _bf_pow(T, x, k):
    y = 0
    for _ in range(k):
        y = T[y][x]
    return y


def bf_central_automorphism_count(G):
    """Count f in Hom(G, Z(G)) with x -> x f(x) bijective.

    f is fixed by the images of all pc generators (Z abelian), then checked
    against every pair.  Independent of the generating-sequence enumeration.
    """
    import itertools

    T = np.asarray(G.mul(G.elements[:, None], G.elements[None, :]))
    Z = sorted(bf_center(T.tolist()))
    exps = G.exps
    n = exps.shape[1]
    count = 0
    for imgs in itertools.product(Z, repeat=n):
        f = np.zeros(G.order, dtype=np.int64)
        for k in range(n):
            step = imgs[k]
            for t in range(1, G.p):
                f = np.where(exps[:, k] >= t, T[f, step], f)
        if not (f[T] == T[f[:, None], f[None, :]]).all():
            continue
        alpha = T[G.elements, f]
        if np.unique(alpha).size == G.order:
            count += 1
    return count


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(line)
