"""Structural invariants of realized p-groups."""
from __future__ import annotations

import enum
import functools
import itertools
from dataclasses import dataclass

import numpy as np

from .errors import NotAbelian, NotApplicable, NotRegular, ScopeExceeded
from .groups import (
    QuotientGroup,
    RealizedGroup,
    Subgroup,
    center,
    closure_mask,
    cyclic_elements,
    normal_closure_mask,
    commutator_subgroup,
    join,
    quotient,
    subgroup_closure,
    subgroup_from_mask,
    trivial_subgroup,
    whole_group,
)


def memoized(fn):
    """Cache a one-argument invariant on the group object itself."""

    @functools.wraps(fn)
    def wrapper(G):
        key = fn.__name__
        if key not in G._memo:
            G._memo[key] = fn(G)
        return G._memo[key]

    return wrapper


@dataclass(frozen=True)
class SeriesData:
    """A central series; ``terms[0]`` is G (lower) or the trivial group (upper)."""

    terms: tuple[Subgroup, ...]
    nilpotency_class: int

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(t.order for t in self.terms)

    def __getitem__(self, i):
        return self.terms[i]

    def __len__(self):
        return len(self.terms)


@memoized
def lower_central_series(G: RealizedGroup) -> SeriesData:
    """gamma_1 = G, gamma_{i+1} = [gamma_i, G], stopping at the trivial group.

    ``terms[i]`` is gamma_{i+1}; the last term is trivial.
    """
    Gs = whole_group(G)
    terms = [Gs]
    while not terms[-1].is_trivial():
        nxt = commutator_subgroup(G, terms[-1], Gs)
        if nxt == terms[-1]:
            raise AssertionError(f"{G.name}: lower central series stalls, group not nilpotent")
        terms.append(nxt)
    return SeriesData(tuple(terms), len(terms) - 1 if G.order > 1 else 0)


@memoized
def upper_central_series(G: RealizedGroup) -> SeriesData:
    """Z_0 = 1, Z_{i+1} = preimage of Z(G/Z_i); ``terms[i]`` is Z_i."""
    terms = [trivial_subgroup(G)]
    while terms[-1].order < G.order:
        Q = quotient(G, terms[-1])
        nxt = Q.preimage(center(Q.group))
        if nxt.order == terms[-1].order:
            raise AssertionError(f"{G.name}: upper central series stalls, group not nilpotent")
        terms.append(nxt)
    return SeriesData(tuple(terms), len(terms) - 1)


def nilpotency_class(G: RealizedGroup) -> int:
    return lower_central_series(G).nilpotency_class


def derived_subgroup(G: RealizedGroup) -> Subgroup:
    return lower_central_series(G)[1] if G.order > 1 else trivial_subgroup(G)


def second_center(G: RealizedGroup) -> Subgroup:
    upper = upper_central_series(G)
    return upper[min(2, len(upper) - 1)]


@memoized
def omega1(G: RealizedGroup) -> Subgroup:
    """Subgroup generated by the elements x with x^p = 1."""
    xp = G.power(G.elements, G.p)
    return subgroup_closure(G, np.flatnonzero(xp == 0).tolist())


@memoized
def agemo1(G: RealizedGroup) -> Subgroup:
    """Subgroup generated by all p-th powers."""
    return subgroup_closure(G, np.unique(G.power(G.elements, G.p)).tolist())


@memoized
def frattini(G: RealizedGroup) -> Subgroup:
    phi = join(G, agemo1(G), derived_subgroup(G))
    if G.exps is not None and G.order <= G.p**4:
        oracle = frattini_by_maximal_subgroups(G)
        if oracle != phi:
            raise AssertionError(f"{G.name}: Frattini subgroup disagrees with maximal-subgroup intersection")
    return phi


def frattini_by_maximal_subgroups(G: RealizedGroup) -> Subgroup:
    """Intersection of the kernels of all epimorphisms G -> C_p.

    A map G -> C_p is determined by the images c_k of the pc generators and
    sends x to sum(e_k c_k) mod p; it is a homomorphism iff it is compatible
    with right multiplication by every generator.
    """
    if G.exps is None:
        raise NotApplicable("needs a pc-realized group")
    p, n = G.p, G.exps.shape[1]
    mask = np.ones(G.order, dtype=bool)
    for c in itertools.product(range(p), repeat=n):
        if not any(c):
            continue
        c = np.asarray(c, dtype=np.int64)
        f = (G.exps @ c) % p
        if all(((f[G.gen_right_maps[k]] - f - c[k]) % p == 0).all() for k in range(n)):
            mask &= f == 0
    return subgroup_from_mask(G, mask)


def rank(G: RealizedGroup) -> int:
    """Minimal number of generators, log_p |G / Phi(G)|."""
    return G.log_order - _log_p(frattini(G).order, G.p)


def _log_p(m: int, p: int) -> int:
    k = 0
    while p**k < m:
        k += 1
    if p**k != m:
        raise ValueError(f"{m} is not a power of {p}")
    return k


def is_cyclic(G: RealizedGroup) -> bool:
    return int(G.element_orders().max()) == G.order


def subgroup_is_cyclic(G: RealizedGroup, H: Subgroup) -> bool:
    return int(G.element_orders()[H.elements].max()) == H.order


def _type_from_orders(orders: np.ndarray, p: int, total: int) -> tuple[int, ...]:
    # logs[k] = log_p |{x : x^(p^k) = 1}|; its differences count factors >= p^k
    logs = [0]
    k = 1
    while logs[-1] < total:
        logs.append(_log_p(int((orders <= p**k).sum()), p))
        k += 1
    at_least = [logs[k] - logs[k - 1] for k in range(1, len(logs))] + [0]
    factors = []
    for k in range(len(at_least) - 1, 0, -1):
        factors.extend([p**k] * (at_least[k - 1] - at_least[k]))
    return tuple(factors)


def abelian_type(A) -> tuple[int, ...]:
    """Orders of the cyclic factors of an abelian p-group, largest first.

    Computed from the order-counting profile c_k = |{x : x^(p^k) = 1}|,
    which equals p^(sum_i min(lambda_i, k)) for type (p^lambda_1, ...).
    """
    if isinstance(A, QuotientGroup):
        A = A.group
    if not A.is_abelian():
        raise NotAbelian(f"{A.name} is not abelian")
    return _type_from_orders(A.element_orders(), A.p, A.log_order)


def subgroup_abelian_type(G: RealizedGroup, H: Subgroup) -> tuple[int, ...]:
    """abelian_type of an abelian subgroup, counted inside G."""
    g = np.asarray(H.gens, dtype=np.int64)
    if g.size > 1 and (G.mul(g[:, None], g[None, :]) != G.mul(g[None, :], g[:, None])).any():
        raise NotAbelian("subgroup is not abelian")
    return _type_from_orders(G.element_orders()[H.elements], G.p, _log_p(H.order, G.p))


# ---------------------------------------------------------------------------
# regularity


def _check_regular_scope(G: RealizedGroup):
    if G.order <= 3**6 or (G.p == 5 and G.order <= 5**5):
        return
    raise ScopeExceeded(f"regularity check limited to |G| <= 3^6 or 5^5 (got {G.order})")


@memoized
def is_regular(G: RealizedGroup) -> bool:
    """For all x, y: x^p y^p = (xy)^p z^p for some z in [H, H], H = <x, y>."""
    _check_regular_scope(G)
    p = G.p
    ar = G.elements
    xp = G.power(ar, p)
    pth_powers_of_derived: dict[bytes, np.ndarray] = {}
    for x in range(1, G.order):
        xy = G.mul(x, ar)
        # z^p must equal (xy)^-p x^p y^p
        target = G.mul(G.inv(G.power(xy, p)), G.mul(xp[x], xp))
        ys = np.flatnonzero(target != 0)
        if not ys.size:
            continue
        # <x, y> = <x, y x^k>: one closure per coset y<x>
        cyc = np.asarray(cyclic_elements(G, x))
        labels = G.mul(ys[:, None], cyc[None, :]).min(axis=1)
        for label in np.unique(labels):
            members = ys[labels == label]
            H = closure_mask(G, [x, int(label)])
            key = H.tobytes()
            allowed = pth_powers_of_derived.get(key)
            if allowed is None:
                D = normal_closure_mask(G, [int(G.comm(x, int(label)))], [x, int(label)])
                allowed = np.zeros(G.order, dtype=bool)
                allowed[G.power(np.flatnonzero(D), p)] = True
                pth_powers_of_derived[key] = allowed
            if not allowed[target[members]].all():
                return False
    return True


def regular_power_lemma_check(G: RealizedGroup, max_exponent: int = 2) -> bool:
    """[x^(p^i), y^(p^j)] = 1  iff  [x, y]^(p^(i+j)) = 1 for all x, y and i, j <= 2."""
    if not is_regular(G):
        raise NotRegular(f"{G.name} is not regular")
    p = G.p
    ar = G.elements
    powers = [G.power(ar, p**i) for i in range(max_exponent + 1)]
    comms = G.comm(ar[:, None], ar[None, :])
    for i, j in itertools.product(range(max_exponent + 1), repeat=2):
        if p ** (i + j) > G.order:
            continue
        lhs = G.comm(powers[i][:, None], powers[j][None, :]) == 0
        rhs = G.power(comms, p ** (i + j)) == 0
        if not (lhs == rhs).all():
            return False
    return True


# ---------------------------------------------------------------------------
# purely non-abelian


class PurelyNonabelian(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    TRUE_BY_SUFFICIENT_CONDITION = "true_by_sufficient_condition"

    def __bool__(self):
        return self is not PurelyNonabelian.FALSE

    def __str__(self):
        return self.value


def has_abelian_direct_factor(G: RealizedGroup) -> bool:
    """Search for G = C x B with C = <z> nontrivial central cyclic.

    Any abelian direct factor contains a cyclic one, a complement B of a
    central C is automatically normal, and G/B abelian forces B >= [G, G];
    so it suffices to scan subgroups B >= [G, G] of index |C| meeting C
    trivially.
    """
    Z = center(G)
    D = derived_subgroup(G)
    Q = quotient(G, D)
    complements = _subgroups_of_abelian(Q.group)
    pre = {}
    for sub in complements:
        B = Q.preimage(sub)
        pre.setdefault(B.order, []).append(B)
    seen = set()
    for z in Z.elements[1:]:
        C = subgroup_closure(G, [int(z)])
        key = C.mask.tobytes()
        if key in seen:
            continue
        seen.add(key)
        for B in pre.get(G.order // C.order, []):
            if (B.mask & C.mask).sum() == 1:
                return True
    return False


def _subgroups_of_abelian(A: RealizedGroup) -> list[Subgroup]:
    """All subgroups, by joining cyclic subgroups until nothing new appears."""
    cyclic = {}
    for x in range(A.order):
        c = subgroup_closure(A, [x])
        cyclic.setdefault(c.mask.tobytes(), c)
    found = dict(cyclic)
    frontier = list(cyclic.values())
    while frontier:
        nxt = []
        for H in frontier:
            for C in cyclic.values():
                if C <= H:
                    continue
                J = subgroup_closure(A, list(H.gens) + list(C.gens))
                key = J.mask.tobytes()
                if key not in found:
                    found[key] = J
                    nxt.append(J)
        frontier = nxt
    return [found[k] for k in sorted(found)]


def is_purely_nonabelian(G: RealizedGroup) -> PurelyNonabelian:
    if G.is_abelian():
        raise NotApplicable(f"{G.name} is abelian")
    if "purely_nonabelian" in G._memo:
        return G._memo["purely_nonabelian"]
    if center(G) <= frattini(G):
        result = PurelyNonabelian.TRUE_BY_SUFFICIENT_CONDITION
    elif G.order > G.p**4:
        raise ScopeExceeded(
            f"{G.name}: Z(G) is not inside Phi(G) and the exhaustive direct-factor search "
            f"is limited to |G| <= p^4"
        )
    else:
        result = PurelyNonabelian.FALSE if has_abelian_direct_factor(G) else PurelyNonabelian.TRUE
    G._memo["purely_nonabelian"] = result
    return result
