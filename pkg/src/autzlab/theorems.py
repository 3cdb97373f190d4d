"""Executable checks of the equality criteria, returning verdicts as data.

Each check filters on its hypotheses first; a group that does not meet them
gets an inapplicable verdict naming the failed hypothesis instead of an
exception.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .central_aut import autz_enumerate, autz_equals_zinn, inner_automorphism, z_inn_order
from .errors import UnknownTheoremId
from .groups import RealizedGroup, center, quotient, subgroup_from_mask
from .invariants import (
    derived_subgroup,
    frattini,
    nilpotency_class,
    rank,
    second_center,
    subgroup_is_cyclic,
)


@dataclass(frozen=True)
class TheoremVerdict:
    theorem_id: str
    applicable: bool
    left: bool | None = None
    right: bool | None = None
    passed: bool | None = None
    notes: tuple[str, ...] = field(default_factory=tuple)

    @classmethod
    def inapplicable(cls, theorem_id, reason):
        return cls(theorem_id, False, notes=(reason,))

    @classmethod
    def biconditional(cls, theorem_id, left, right, notes=()):
        return cls(theorem_id, True, left, right, left == right, tuple(notes))

    @classmethod
    def implication(cls, theorem_id, conclusion, notes=()):
        return cls(theorem_id, True, True, conclusion, conclusion, tuple(notes))

    @property
    def status(self) -> str:
        if not self.applicable:
            return "inapplicable"
        return "pass" if self.passed else "FAIL"


def _fmt(flag):
    return "-" if flag is None else str(flag).lower()


def _rhs_rank2_small_center(G):
    d, z = rank(G), center(G).order
    return d == 2 and z == G.p, [f"d={d}", f"|Z|={z}"]


def _equality_notes(v):
    return [f"|Aut_z|={v.autz_enumerated}", f"|Z(Inn)|={v.z_inn}"]


def check_order_p5_class3(G: RealizedGroup) -> TheoremVerdict:
    """|G| = p^5, class 3: equality iff d(G) = 2 and |Z(G)| = p."""
    tid = "thm3.2"
    if G.order != G.p**5:
        return TheoremVerdict.inapplicable(tid, f"|G|={G.order} is not p^5")
    cl = nilpotency_class(G)
    if cl != 3:
        return TheoremVerdict.inapplicable(tid, f"class {cl} is not 3")
    v = autz_equals_zinn(G)
    right, notes = _rhs_rank2_small_center(G)
    return TheoremVerdict.biconditional(tid, v.equal, right, _equality_notes(v) + notes)


def check_order_p6_class3_or_4(G: RealizedGroup) -> TheoremVerdict:
    """p odd, |G| = p^6, class 3 or 4: equality iff d(G) = 2 and |Z(G)| = p."""
    tid = "thm3.3"
    if G.p == 2:
        return TheoremVerdict.inapplicable(tid, "p must be odd")
    if G.order != G.p**6:
        return TheoremVerdict.inapplicable(tid, f"|G|={G.order} is not p^6")
    cl = nilpotency_class(G)
    if cl not in (3, 4):
        return TheoremVerdict.inapplicable(tid, f"class {cl} is not 3 or 4")
    v = autz_equals_zinn(G)
    right, notes = _rhs_rank2_small_center(G)
    return TheoremVerdict.biconditional(tid, v.equal, right, _equality_notes(v) + notes + [f"cl={cl}"])


def check_rank2_order_p4(G: RealizedGroup) -> TheoremVerdict:
    """|G| = p^4, d = 2, |[G,G]| = p implies Z(G) = Phi(G) of order p^2."""
    tid = "lemma3.1"
    p = G.p
    if G.order != p**4:
        return TheoremVerdict.inapplicable(tid, f"|G|={G.order} is not p^4")
    d = rank(G)
    if d != 2:
        return TheoremVerdict.inapplicable(tid, f"d={d} is not 2")
    g2 = derived_subgroup(G).order
    if g2 != p:
        return TheoremVerdict.inapplicable(tid, f"|gamma2|={g2} is not p")
    Z, phi = center(G), frattini(G)
    ok = Z == phi and Z.order == p**2
    return TheoremVerdict.implication(tid, ok, [f"|Z|={Z.order}", f"|Phi|={phi.order}", f"Z=Phi:{_fmt(Z == phi)}"])


def inner_automorphism_set(G: RealizedGroup) -> set[bytes]:
    return {inner_automorphism(G, x).tobytes() for x in G.elements}


def check_inn_criterion(G: RealizedGroup) -> TheoremVerdict:
    """Aut_z(G) = Inn(G) iff [G,G] = Z(G) and Z(G) is cyclic (compared as action sets)."""
    tid = "curran-mccaughan"
    if G.is_abelian():
        return TheoremVerdict.inapplicable(tid, "G is abelian")
    autz = autz_enumerate(G)
    autz_set = {row.tobytes() for row in autz.images}
    inn = inner_automorphism_set(G)
    left = autz_set == inn
    Z, D = center(G), derived_subgroup(G)
    right = D == Z and subgroup_is_cyclic(G, Z)
    return TheoremVerdict.biconditional(
        tid, left, right, [f"|Aut_z|={autz.order}", f"|Inn|={len(inn)}", f"gamma2=Z:{_fmt(D == Z)}"]
    )


def check_class2_and_maximal_class(G: RealizedGroup) -> TheoremVerdict:
    """Class 2: Z_2(G) = G.  Maximal class (|G| >= p^4): |Z(Inn)| = p < |Aut_z|."""
    tid = "observations"
    if G.is_abelian():
        return TheoremVerdict.inapplicable(tid, "G is abelian")
    cl = nilpotency_class(G)
    n = G.log_order
    if cl == 2:
        ok = second_center(G).order == G.order
        return TheoremVerdict.implication(tid, ok, ["branch=class2", f"|Z2|={second_center(G).order}"])
    if cl == n - 1 and n >= 4:
        zinn = z_inn_order(G)
        autz = autz_enumerate(G).order
        ok = zinn == G.p and autz > G.p
        return TheoremVerdict.implication(tid, ok, ["branch=maximal-class", f"|Z(Inn)|={zinn}", f"|Aut_z|={autz}"])
    return TheoremVerdict.inapplicable(tid, f"class {cl} is neither 2 nor maximal ({n - 1})")


def center_of_inner_is_cyclic(G: RealizedGroup) -> bool:
    Q = quotient(G, center(G))
    mask = np.zeros(Q.order, dtype=bool)
    mask[Q.projection[second_center(G).elements]] = True
    return subgroup_is_cyclic(Q.group, subgroup_from_mask(Q.group, mask))


def check_equality_necessary_conditions(G: RealizedGroup) -> TheoremVerdict:
    """Equality forces Z(G) <= [G,G] and a non-cyclic Z(Inn(G))."""
    tid = "lemma2.1"
    if G.is_abelian():
        return TheoremVerdict.inapplicable(tid, "G is abelian")
    v = autz_equals_zinn(G)
    if not v.equal:
        return TheoremVerdict.inapplicable(tid, "Aut_z(G) != Z(Inn(G))")
    inside = center(G) <= derived_subgroup(G)
    cyclic = center_of_inner_is_cyclic(G)
    return TheoremVerdict.implication(
        tid, inside and not cyclic, [f"Z<=gamma2:{_fmt(inside)}", f"Z(Inn) cyclic:{_fmt(cyclic)}"]
    )


CHECKS = {
    "lemma2.1": check_equality_necessary_conditions,
    "lemma3.1": check_rank2_order_p4,
    "thm3.2": check_order_p5_class3,
    "thm3.3": check_order_p6_class3_or_4,
    "curran-mccaughan": check_inn_criterion,
    "observations": check_class2_and_maximal_class,
}
THEOREM_IDS = tuple(CHECKS) + ("all",)


def resolve_ids(theorem_id: str) -> tuple[str, ...]:
    if theorem_id == "all":
        return tuple(CHECKS)
    if theorem_id not in CHECKS:
        raise UnknownTheoremId(f"unknown theorem id {theorem_id!r}; choose from {', '.join(THEOREM_IDS)}")
    return (theorem_id,)


def run_check(theorem_id: str, G: RealizedGroup) -> TheoremVerdict:
    (tid,) = resolve_ids(theorem_id)
    return CHECKS[tid](G)


def necessary_not_sufficient_witness(G: RealizedGroup) -> bool:
    """True when Z <= [G,G] or Z(Inn) is non-cyclic, yet Aut_z(G) != Z(Inn(G))."""
    if G.is_abelian():
        return False
    v = autz_equals_zinn(G)
    cond = center(G) <= derived_subgroup(G) or not center_of_inner_is_cyclic(G)
    return cond and not v.equal
