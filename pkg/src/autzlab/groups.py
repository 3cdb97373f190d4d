"""Fully enumerated groups and explicit subgroup machinery.

Elements of a realized pc group are integers: the exponent vector
``(e_1, ..., e_n)`` is read as a base-p number with ``e_1`` most significant,
so the identity is 0 and "minimal index" is a deterministic canonical choice.
Subgroups are boolean masks over that index space.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import InconsistentPresentation, NotNormal

# Cayley tables are kept up to this order (5^5: ~40 MB as int32).
TABLE_LIMIT = 3125
EXHAUSTIVE_LIMIT = 3**5
SAMPLE_SIZE = 100_000
SAMPLE_SEED = 20240613


class RealizedGroup:
    """A finite group on ``range(order)`` with vectorised multiplication.

    Built either from a pc presentation (``from_presentation``) or directly
    from a Cayley table (quotients).  Multiplication uses the table when one
    is held and otherwise applies right-multiplication-by-generator maps
    letter by letter along the exponent vector of the right operand.
    """

    def __init__(self, *, name, p, order, gens, table=None, exps=None,
                 gen_right_maps=None, inverses=None, presentation=None):
        self.name = name
        self.p = p
        self.order = int(order)
        self.gens = tuple(int(g) for g in gens)
        self.table = table
        self.exps = exps
        self.gen_right_maps = gen_right_maps
        self.presentation = presentation
        self.elements = np.arange(self.order, dtype=np.int64)
        self._memo = {}
        if inverses is None:
            inverses = self._inverses_from_table()
        self.inverses = inverses
        self.log_order = _log(self.order, p)

    # -- construction -----------------------------------------------------

    @classmethod
    def from_presentation(cls, pres, *, check=True):
        from .pcp import Collector

        p, n = pres.p, pres.n
        order = p**n
        exps = np.array(list(itertools.product(range(p), repeat=n)), dtype=np.int64)
        if n == 0:
            exps = exps.reshape(1, 0)
        weights = p ** np.arange(n - 1, -1, -1, dtype=np.int64)
        coll = Collector(pres)

        right = np.empty((n, order), dtype=np.int64)
        for k in range(n):
            for x in range(order):
                right[k, x] = int(np.dot(coll.mul_letters(exps[x], [k]), weights))

        table = None
        if order <= TABLE_LIMIT:
            table = _table_from_generator_maps(right, exps, p, order)
            inverses = None
        else:
            inverses = np.array(
                [int(np.dot(coll.inverse(exps[x]), weights)) for x in range(order)],
                dtype=np.int64,
            )
        gens = [int(weights[k]) for k in range(n)]
        G = cls(name=pres.name, p=p, order=order, gens=gens, table=table, exps=exps,
                gen_right_maps=right, inverses=inverses, presentation=pres)
        G._weights = weights
        G._collector = coll
        if check:
            G._verify_presentation()
        return G

    @classmethod
    def from_table(cls, table, *, p, name, gens=None):
        table = np.asarray(table)
        order = table.shape[0]
        if gens is None:
            gens = _greedy_generators_from_table(table)
        return cls(name=name, p=p, order=order, gens=gens, table=table)

    # -- element arithmetic ----------------------------------------------

    @property
    def identity(self) -> int:
        return 0

    def element(self, exps: Sequence[int]) -> int:
        return int(np.dot(np.asarray(exps, dtype=np.int64), self._weights))

    def exponent_vector(self, x: int) -> tuple[int, ...]:
        return tuple(int(v) for v in self.exps[x])

    def mul(self, xs, ys):
        """Elementwise product of (broadcastable) index arrays or ints."""
        if self.table is not None:
            return self.table[xs, ys]
        xs, ys = np.broadcast_arrays(np.asarray(xs, dtype=np.int64),
                                     np.asarray(ys, dtype=np.int64))
        out = xs.copy()
        ey = self.exps[ys]
        for k in range(self.gen_right_maps.shape[0]):
            rk = self.gen_right_maps[k]
            col = ey[..., k]
            for t in range(1, self.p):
                m = col >= t
                if m.any():
                    out[m] = rk[out[m]]
        return out if out.ndim else int(out)

    def inv(self, xs):
        return self.inverses[xs]

    def power(self, xs, k: int):
        xs = np.asarray(xs, dtype=np.int64)
        result = np.zeros_like(xs)
        base = xs
        while k:
            if k & 1:
                result = self.mul(result, base)
            k >>= 1
            if k:
                base = self.mul(base, base)
        return result

    def comm(self, xs, ys):
        """[x, y] = x^-1 y^-1 x y."""
        return self.mul(self.mul(self.inv(xs), self.inv(ys)), self.mul(xs, ys))

    def conj(self, xs, g):
        """x^g = g^-1 x g."""
        return self.mul(self.mul(self.inv(g), xs), g)

    def right_map(self, y):
        return np.asarray(self.mul(self.elements, y), dtype=np.int64)

    def left_map(self, y):
        return np.asarray(self.mul(y, self.elements), dtype=np.int64)

    def is_abelian(self) -> bool:
        gens = self.gens
        for a, b in itertools.combinations(gens, 2):
            if self.mul(a, b) != self.mul(b, a):
                return False
        return True

    def element_orders(self):
        """Order of every element (all orders are powers of p)."""
        if "orders" not in self._memo:
            orders = np.ones(self.order, dtype=np.int64)
            cur = self.elements.copy()
            while (cur != 0).any():
                nz = cur != 0
                orders[nz] *= self.p
                cur = self.power(cur, self.p)
            self._memo["orders"] = orders
        return self._memo["orders"]

    # -- checks --------------------------------------------------------------

    def _inverses_from_table(self):
        hits = self.table == 0
        inv = np.argmax(hits, axis=1).astype(np.int64)
        if not hits[self.elements, inv].all():
            raise InconsistentPresentation(f"{self.name}: some element has no inverse")
        return inv

    def _verify_presentation(self):
        pres = self.presentation
        order = self.order
        p = self.p
        # closure of the generators from the identity
        seen = np.zeros(order, dtype=bool)
        seen[0] = True
        frontier = np.array([0])
        while frontier.size:
            nxt = np.unique(self.gen_right_maps[:, frontier].ravel())
            nxt = nxt[~seen[nxt]]
            seen[nxt] = True
            frontier = nxt
        if not seen.all():
            raise InconsistentPresentation(
                f"{self.name}: generators close on {int(seen.sum())} elements, expected {order}"
            )
        for k in range(self.gen_right_maps.shape[0]):
            if np.unique(self.gen_right_maps[k]).size != order:
                raise InconsistentPresentation(f"{self.name}: right multiplication by g{k+1} not bijective")

        if self.table is not None:
            t = self.table
            if not (np.sort(t, axis=1) == self.elements).all() or not (np.sort(t, axis=0) == self.elements[:, None]).all():
                raise InconsistentPresentation(f"{self.name}: Cayley table is not a Latin square")
            # (xy)g = x(yg) for all x, y and generators g implies full associativity
            for k in range(self.gen_right_maps.shape[0]):
                rk = self.gen_right_maps[k]
                if not (rk[t] == t[:, rk]).all():
                    raise InconsistentPresentation(f"{self.name}: associativity fails at generator g{k+1}")
        if (self.mul(self.elements, self.inverses) != 0).any() or (self.mul(0, self.elements) != self.elements).any():
            raise InconsistentPresentation(f"{self.name}: identity or inverse law fails")

        if order <= EXHAUSTIVE_LIMIT:
            for a in range(order):
                ab = self.table[a]
                lhs = self.table[ab]                             # (ab)c
                rhs = self.table[a][self.table]                  # a(bc)
                if not (lhs == rhs).all():
                    raise InconsistentPresentation(f"{self.name}: associativity fails")
        else:
            rng = np.random.default_rng(SAMPLE_SEED)
            a, b, c = rng.integers(0, order, size=(3, SAMPLE_SIZE))
            if (self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c))).any():
                raise InconsistentPresentation(f"{self.name}: associativity fails on sampled triple")

        for i in range(1, pres.n + 1):
            g = self.gens[i - 1]
            if self.power(g, p) != self._word_element(pres.power_word(i)):
                raise InconsistentPresentation(f"{self.name}: power relation of g{i} fails")
        for j in range(1, pres.n + 1):
            for i in range(1, j):
                lhs = self.comm(self.gens[j - 1], self.gens[i - 1])
                if lhs != self._word_element(pres.comm_word(j, i)):
                    raise InconsistentPresentation(f"{self.name}: commutator relation [g{j},g{i}] fails")

    def _word_element(self, word) -> int:
        x = 0
        for idx, e in word:
            x = self.mul(x, self.power(self.gens[idx - 1], e))
        return int(x)

    def __repr__(self):
        return f"RealizedGroup({self.name!r}, order={self.order})"


def _log(order, p):
    k = 0
    while p**k < order:
        k += 1
    if p**k != order:
        raise ValueError(f"{order} is not a power of {p}")
    return k


def _table_from_generator_maps(right, exps, p, order):
    """table[x, y] = x * y, built column by column by appending y's letters."""
    table = np.empty((order, order), dtype=np.int32)
    table[:, 0] = np.arange(order)
    n = right.shape[0]
    for y in range(1, order):
        k = int(np.flatnonzero(exps[y])[-1])
        # y = y' * g_k where y' has exponent e_k - 1 and no letters above k
        prev = y - p ** (n - 1 - k)
        table[:, y] = right[k][table[:, prev]]
    return table


def _greedy_generators_from_table(table):
    order = table.shape[0]
    mask = np.zeros(order, dtype=bool)
    mask[0] = True
    gens = []
    for x in range(order):
        if not mask[x]:
            gens.append(x)
            mask = _closure_mask_table(table, gens)
    return gens


def _closure_mask_table(table, gens):
    mask = np.zeros(table.shape[0], dtype=bool)
    mask[0] = True
    frontier = np.array([0])
    g = np.asarray(gens, dtype=np.int64)
    while frontier.size and g.size:
        nxt = np.unique(table[np.ix_(frontier, g)].ravel())
        nxt = nxt[~mask[nxt]]
        mask[nxt] = True
        frontier = nxt
    return mask


# ---------------------------------------------------------------------------
# subgroups


@dataclass(frozen=True, eq=False)
class Subgroup:
    group: RealizedGroup = field(repr=False)
    mask: np.ndarray = field(repr=False)
    gens: tuple[int, ...]

    @property
    def order(self) -> int:
        return int(self.mask.sum())

    @property
    def elements(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    def __contains__(self, x) -> bool:
        return bool(self.mask[x])

    def __eq__(self, other):
        return isinstance(other, Subgroup) and other.group is self.group and bool((other.mask == self.mask).all())

    def __le__(self, other):
        return bool((~self.mask | other.mask).all())

    def __lt__(self, other):
        return self <= other and self.order < other.order

    def __hash__(self):
        return hash(self.mask.tobytes())

    def is_trivial(self) -> bool:
        return self.order == 1

    def __repr__(self):
        return f"Subgroup(order={self.order}, gens={self.gens})"


def closure_mask(G: RealizedGroup, gens) -> np.ndarray:
    """Boolean mask of the subgroup generated by ``gens``."""
    if G.table is not None:
        return _closure_mask_table(G.table, gens)
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    g = np.asarray(list(gens), dtype=np.int64)
    frontier = np.array([0], dtype=np.int64)
    while frontier.size and g.size:
        nxt = np.unique(G.mul(frontier[:, None], g[None, :]).ravel())
        nxt = nxt[~mask[nxt]]
        mask[nxt] = True
        frontier = nxt
    return mask


def normal_closure_mask(G: RealizedGroup, seeds, conj_by) -> np.ndarray:
    """Mask of the smallest subgroup containing ``seeds`` normalised by ``conj_by``."""
    mask = closure_mask(G, seeds)
    while True:
        elems = np.flatnonzero(mask)
        new = np.unique(np.concatenate([G.conj(elems, g) for g in conj_by]))
        new = new[~mask[new]]
        if not new.size:
            return mask
        mask = closure_mask(G, np.concatenate([elems, new]))


def _reduce_generators(G, mask, candidates=None):
    """Greedy generating set of the subgroup ``mask`` (smallest indices first)."""
    cur = np.zeros(G.order, dtype=bool)
    cur[0] = True
    gens = []
    pool = np.flatnonzero(mask) if candidates is None else candidates
    for x in pool:
        x = int(x)
        if not cur[x]:
            gens.append(x)
            cur = closure_mask(G, gens)
            if cur.sum() == mask.sum():
                break
    return tuple(gens)


def subgroup_from_mask(G: RealizedGroup, mask, gens=None) -> Subgroup:
    mask = np.asarray(mask, dtype=bool)
    if gens is None:
        gens = _reduce_generators(G, mask)
    sub = Subgroup(G, mask, tuple(int(g) for g in gens))
    if G.order % sub.order:
        raise AssertionError(f"Lagrange violated: {sub.order} does not divide {G.order}")
    return sub


def subgroup_closure(G: RealizedGroup, gens: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing ``gens``."""
    gens = sorted({int(g) for g in gens} - {0})
    mask = closure_mask(G, gens)
    return subgroup_from_mask(G, mask, _reduce_generators(G, mask, gens) if gens else ())


def whole_group(G: RealizedGroup) -> Subgroup:
    return Subgroup(G, np.ones(G.order, dtype=bool), G.gens)


def trivial_subgroup(G: RealizedGroup) -> Subgroup:
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    return Subgroup(G, mask, ())


def join(G: RealizedGroup, *subs: Subgroup) -> Subgroup:
    return subgroup_closure(G, itertools.chain.from_iterable(s.gens for s in subs))


def intersection(G: RealizedGroup, a: Subgroup, b: Subgroup) -> Subgroup:
    return subgroup_from_mask(G, a.mask & b.mask)


def normal_closure(G: RealizedGroup, gens: Iterable[int], within: Sequence[int] | None = None) -> Subgroup:
    """Smallest subgroup containing ``gens`` and normalised by ``within`` (default G)."""
    conj_by = list(G.gens if within is None else within)
    sub = subgroup_closure(G, gens)
    while True:
        new = []
        for g in conj_by:
            images = np.unique(G.conj(np.asarray(sub.gens, dtype=np.int64), g)) if sub.gens else []
            new.extend(int(x) for x in images if not sub.mask[x])
        if not new:
            return sub
        sub = subgroup_closure(G, list(sub.gens) + new)


def commutator_subgroup(G: RealizedGroup, H: Subgroup, K: Subgroup) -> Subgroup:
    """[H, K]: normal closure in <H, K> of the commutators of generators."""
    if not H.gens or not K.gens:
        return trivial_subgroup(G)
    h = np.asarray(H.gens, dtype=np.int64)
    k = np.asarray(K.gens, dtype=np.int64)
    comms = np.unique(G.comm(h[:, None], k[None, :]).ravel())
    return normal_closure(G, comms.tolist(), within=list(H.gens) + list(K.gens))


def commutator_subgroup_bruteforce(G: RealizedGroup, H: Subgroup, K: Subgroup) -> Subgroup:
    """<[h, k] : h in H, k in K> from all pairs; reference for small groups."""
    h, k = H.elements, K.elements
    comms = np.unique(G.comm(h[:, None], k[None, :]).ravel())
    return subgroup_closure(G, comms.tolist())


def centralizer(G: RealizedGroup, S: Iterable[int]) -> Subgroup:
    S = sorted({int(s) for s in S})
    if len(S) > 16:
        S = list(subgroup_closure(G, S).gens)
    mask = np.ones(G.order, dtype=bool)
    for s in S:
        mask &= G.right_map(s) == G.left_map(s)
    return subgroup_from_mask(G, mask)


def center(G: RealizedGroup) -> Subgroup:
    if "center" not in G._memo:
        G._memo["center"] = centralizer(G, G.gens)
    return G._memo["center"]


def is_normal(G: RealizedGroup, N: Subgroup) -> bool:
    if not N.gens:
        return True
    ngens = np.asarray(N.gens, dtype=np.int64)
    return all(N.mask[G.conj(ngens, g)].all() for g in G.gens)


def cyclic_elements(G: RealizedGroup, x: int) -> list[int]:
    """[1, x, x^2, ...] up to (excluding) the return to the identity."""
    out = [0]
    y = int(x)
    while y != 0:
        out.append(y)
        y = int(G.mul(y, x))
    return out


def element_order(G: RealizedGroup, x: int) -> int:
    k, y = 1, int(x)
    while y != 0:
        y = int(G.mul(y, x))
        k += 1
    return k


# ---------------------------------------------------------------------------
# quotients


@dataclass(frozen=True, eq=False)
class QuotientGroup:
    parent: RealizedGroup = field(repr=False)
    normal: Subgroup = field(repr=False)
    representatives: np.ndarray = field(repr=False)
    projection: np.ndarray = field(repr=False)
    group: RealizedGroup = field(repr=False)

    @property
    def order(self) -> int:
        return self.group.order

    def project(self, xs):
        return self.projection[xs]

    def preimage(self, sub: Subgroup) -> Subgroup:
        return subgroup_from_mask(self.parent, sub.mask[self.projection])

    def __repr__(self):
        return f"QuotientGroup({self.parent.name}/N, order={self.order})"


def coset_labels(G: RealizedGroup, N: Subgroup) -> np.ndarray:
    """Minimal element index of each left coset xN."""
    if G.table is not None:
        return G.table[:, N.elements].min(axis=1).astype(np.int64)
    rep = G.elements.copy()
    maps = [G.right_map(s) for s in N.gens]
    while True:
        new = rep.copy()
        for r in maps:
            np.minimum(new, rep[r], out=new)
            np.minimum.at(new, r, rep)
        if (new == rep).all():
            return rep
        rep = new


def quotient(G: RealizedGroup, N: Subgroup, name: str | None = None) -> QuotientGroup:
    if not is_normal(G, N):
        raise NotNormal(f"subgroup of order {N.order} is not normal in {G.name}")
    labels = coset_labels(G, N)
    reps = np.unique(labels)
    lookup = np.full(G.order, -1, dtype=np.int64)
    lookup[reps] = np.arange(reps.size)
    proj = lookup[labels]
    q = reps.size
    if q * N.order != G.order:
        raise AssertionError("coset count inconsistent with Lagrange")
    table = proj[G.mul(reps[:, None], reps[None, :])]
    qgens = sorted({int(proj[g]) for g in G.gens} - {0})
    Q = RealizedGroup.from_table(table, p=G.p, name=name or f"{G.name}/N", gens=qgens or ())
    return QuotientGroup(G, N, reps, proj, Q)
