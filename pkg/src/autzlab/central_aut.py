"""Central automorphisms: exhaustive enumeration, counting formula, comparison."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import NotApplicable, NotPurelyNonabelian, ScopeExceeded
from .groups import RealizedGroup, center, closure_mask, quotient
from .invariants import (
    abelian_type,
    derived_subgroup,
    frattini,
    is_purely_nonabelian,
    second_center,
    subgroup_abelian_type,
)

ENUMERATION_LIMIT = 10**7


def hom_order(a: tuple[int, ...], b: tuple[int, ...]) -> int:
    """|Hom(A, B)| for abelian groups of cyclic types a and b: prod gcd(a_i, b_j)."""
    return math.prod(math.gcd(x, y) for x in a for y in b)


def adney_yen_order(G: RealizedGroup) -> int:
    """|Hom(G/[G,G], Z(G))|, the central automorphism count for purely non-abelian G."""
    if G.is_abelian() or not is_purely_nonabelian(G):
        raise NotPurelyNonabelian(f"{G.name} is not purely non-abelian")
    ab = abelian_type(quotient(G, derived_subgroup(G)))
    return hom_order(ab, subgroup_abelian_type(G, center(G)))


def minimal_generating_sequence(G: RealizedGroup) -> tuple[int, ...]:
    """Lexicographically least generators (among G.gens) whose images span G/Phi(G)."""
    phi = frattini(G)
    chosen: list[int] = []
    mask = phi.mask
    for g in G.gens:
        if not mask[g]:
            chosen.append(g)
            mask = closure_mask(G, list(phi.gens) + chosen)
    assert mask.all()
    return tuple(chosen)


def _spanning_tree(G: RealizedGroup, gens):
    """BFS layers over the Cayley graph: each x = parent[x] * gens[label[x]]."""
    seen = np.zeros(G.order, dtype=bool)
    seen[0] = True
    layers = []
    frontier = np.array([0], dtype=np.int64)
    while frontier.size:
        layer_x, layer_par, layer_lab = [], [], []
        for s_idx, s in enumerate(gens):
            img = np.asarray(G.mul(frontier, s), dtype=np.int64)
            fresh = ~seen[img]
            img, par = img[fresh], frontier[fresh]
            img, first = np.unique(img, return_index=True)
            seen[img] = True
            layer_x.append(img)
            layer_par.append(par[first])
            layer_lab.append(np.full(img.size, s_idx))
        xs = np.concatenate(layer_x)
        if xs.size:
            layers.append((xs, np.concatenate(layer_par), np.concatenate(layer_lab)))
        frontier = xs
    return layers


def _extend_to_homomorphisms(A: RealizedGroup, gens, gen_images, B: RealizedGroup):
    """Yield (candidate indices, image arrays) of the candidates that extend to homomorphisms A -> B.

    Candidate k sends gens[i] to gen_images[k, i].  Each candidate is extended
    along a BFS spanning tree of A's Cayley graph and kept iff it respects every
    edge, f(x s) = f(x) f(s).
    """
    layers = _spanning_tree(A, gens)
    rights = [A.right_map(s) for s in gens]
    chunk = max(1, 2_000_000 // A.order)
    for start in range(0, len(gen_images), chunk):
        imgs = gen_images[start:start + chunk]
        f = np.zeros((imgs.shape[0], A.order), dtype=np.int64)
        for xs, par, lab in layers:
            f[:, xs] = B.mul(f[:, par], imgs[:, lab])
        ok = np.ones(imgs.shape[0], dtype=bool)
        for s_idx, r in enumerate(rights):
            ok &= (f[:, r] == B.mul(f, imgs[:, s_idx][:, None])).all(axis=1)
        rows = np.flatnonzero(ok)
        if rows.size:
            yield rows + start, f[rows]


@dataclass(frozen=True, eq=False)
class CentralAutomorphismSet:
    """Central automorphisms g_i -> g_i z_i on a fixed minimal generating sequence.

    ``images[k]`` is the full permutation of the k-th automorphism; rows are in
    lexicographic order of ``offsets``.
    """

    group: RealizedGroup
    generators: tuple[int, ...]
    offsets: tuple[tuple[int, ...], ...]
    images: np.ndarray

    @property
    def order(self) -> int:
        return len(self.offsets)

    def index_of(self, perm) -> int | None:
        key = np.asarray(perm, dtype=self.images.dtype).tobytes()
        return self._lookup().get(key)

    def _lookup(self):
        if not hasattr(self, "_by_bytes"):
            object.__setattr__(self, "_by_bytes", {row.tobytes(): k for k, row in enumerate(self.images)})
        return self._by_bytes

    def composition_table(self) -> np.ndarray:
        """table[a, b] = index of (a after b)."""
        n = self.order
        table = np.empty((n, n), dtype=np.int64)
        for a in range(n):
            for b in range(n):
                k = self.index_of(self.images[a][self.images[b]])
                if k is None:
                    raise AssertionError("central automorphisms not closed under composition")
                table[a, b] = k
        return table


def autz_enumerate(G: RealizedGroup) -> CentralAutomorphismSet:
    """All automorphisms of the form g_i -> g_i z_i, z_i in Z(G)."""
    if "autz" in G._memo:
        return G._memo["autz"]
    if G.is_abelian():
        raise NotApplicable(f"{G.name} is abelian; every endomorphism offset is central")
    gens = minimal_generating_sequence(G)
    Z = center(G).elements
    space = Z.size ** len(gens)
    if space > ENUMERATION_LIMIT:
        raise ScopeExceeded(f"{G.name}: {space} candidate maps exceed {ENUMERATION_LIMIT}")
    g_arr = np.asarray(gens, dtype=np.int64)
    offsets = np.array(list(itertools.product(Z, repeat=len(gens))), dtype=np.int64)
    gen_images = np.asarray(G.mul(g_arr[None, :], offsets), dtype=np.int64)  # (C, d)

    keep_offsets, keep_images = [], []
    for rows, f in _extend_to_homomorphisms(G, gens, gen_images, G):
        for c, row in zip(rows, f):
            if np.unique(row).size == G.order:
                keep_offsets.append(tuple(int(z) for z in offsets[c]))
                keep_images.append(row)
    result = CentralAutomorphismSet(
        G, gens, tuple(keep_offsets),
        np.array(keep_images, dtype=np.int64).reshape(len(keep_images), G.order),
    )
    G._memo["autz"] = result
    return result


def z_inn_order(G: RealizedGroup) -> int:
    """|Z(Inn(G))| = |Z_2(G) / Z(G)|."""
    if G.is_abelian():
        raise NotApplicable(f"{G.name} is abelian")
    return second_center(G).order // center(G).order


def inner_automorphism(G: RealizedGroup, x: int) -> np.ndarray:
    """The permutation y -> x^-1 y x."""
    return np.asarray(G.conj(G.elements, int(x)), dtype=np.int64)


@dataclass(frozen=True)
class EqualityVerdict:
    autz_enumerated: int
    autz_formula: int | None
    z_inn: int
    equal: bool
    containment_witness: bool

    @property
    def formula_agrees(self) -> bool | None:
        if self.autz_formula is None:
            return None
        return self.autz_formula == self.autz_enumerated


def containment_witness(G: RealizedGroup, autz: CentralAutomorphismSet) -> bool:
    """Every conjugation by an element of Z_2(G) lies in the enumerated set."""
    for x in second_center(G).elements:
        if autz.index_of(inner_automorphism(G, x)) is None:
            return False
    return True


def autz_equals_zinn(G: RealizedGroup) -> EqualityVerdict:
    autz = autz_enumerate(G)
    zinn = z_inn_order(G)
    try:
        formula = adney_yen_order(G)
    except (NotPurelyNonabelian, ScopeExceeded):
        formula = None
    witness = containment_witness(G, autz)
    if autz.order % zinn:
        raise AssertionError(f"{G.name}: |Z(Inn)| = {zinn} does not divide |Aut_z| = {autz.order}")
    return EqualityVerdict(autz.order, formula, zinn, autz.order == zinn, witness)


def count_homomorphisms(A: RealizedGroup, B: RealizedGroup) -> int:
    """Brute-force |Hom(A, B)| by extending every generator assignment.

    Only images whose order divides that of the generator are tried.
    """
    gens = minimal_generating_sequence(A)
    if not gens:
        return 1
    a_orders = A.element_orders()
    b_orders = B.element_orders()
    choices = [np.flatnonzero(a_orders[g] % b_orders == 0) for g in gens]
    images = np.array(list(itertools.product(*choices)), dtype=np.int64)
    return sum(rows.size for rows, _ in _extend_to_homomorphisms(A, gens, images, B))
