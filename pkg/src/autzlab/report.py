"""Per-group invariant reports and the verification summary table.

Text reports are ``key: value`` lines in the fixed order of REPORT_KEYS, so
identical input gives byte-identical output.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

from .central_aut import adney_yen_order, autz_equals_zinn
from .errors import AutzLabError, ScopeExceeded
from .groups import RealizedGroup, center, quotient
from .invariants import (
    abelian_type,
    derived_subgroup,
    frattini,
    is_purely_nonabelian,
    is_regular,
    lower_central_series,
    rank,
    subgroup_abelian_type,
    upper_central_series,
)
from .theorems import CHECKS, TheoremVerdict

NA = "n/a"

REPORT_KEYS = (
    "name", "p", "n", "order", "abelian", "class", "rank", "center_order",
    "lower_central_orders", "upper_central_orders", "frattini_order",
    "abelianization_type", "center_type", "regular", "purely_nonabelian",
    "autz_enumerated", "autz_formula", "z_inn_order", "autz_equals_zinn",
    "containment_witness",
)


@dataclass
class InvariantReport:
    values: dict
    verdicts: list[TheoremVerdict] = field(default_factory=list)

    def __getitem__(self, key):
        return self.values[key]

    def to_text(self) -> str:
        lines = [f"{k}: {format_value(self.values[k])}" for k in REPORT_KEYS]
        for v in self.verdicts:
            lines.append(f"verdict.{v.theorem_id}: {format_verdict(v)}")
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        """The verdict table only; the invariants live in the text report."""
        rows = [SummaryRow(v.theorem_id, self.values["name"], v) for v in self.verdicts]
        return VerificationSummary(rows, []).to_csv()


def format_value(v) -> str:
    if v is None:
        return NA
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (tuple, list)):
        return ",".join(str(x) for x in v) if v else "1"
    return str(v)


def format_verdict(v: TheoremVerdict) -> str:
    if not v.applicable:
        return f"inapplicable ({'; '.join(v.notes)})"
    return (f"{v.status} left={format_value(v.left)} right={format_value(v.right)} "
            f"({'; '.join(v.notes)})")


def _guard(fn, *errors):
    try:
        return fn()
    except errors as exc:
        return f"undecided ({type(exc).__name__})"


def analyze_group(G: RealizedGroup, *, include_regular: bool = True) -> InvariantReport:
    lower = lower_central_series(G)
    upper = upper_central_series(G)
    Z = center(G)
    abelian = G.is_abelian()
    vals = {
        "name": G.name,
        "p": G.p,
        "n": G.log_order,
        "order": G.order,
        "abelian": abelian,
        "class": lower.nilpotency_class,
        "rank": rank(G),
        "center_order": Z.order,
        "lower_central_orders": list(lower.orders),
        "upper_central_orders": list(upper.orders),
        "frattini_order": frattini(G).order,
        "abelianization_type": list(abelian_type(quotient(G, derived_subgroup(G)))),
        "center_type": list(subgroup_abelian_type(G, Z)),
        "regular": _guard(lambda: is_regular(G), ScopeExceeded) if include_regular else "skipped",
    }
    verdicts = []
    if abelian:
        vals.update({k: None for k in (
            "purely_nonabelian", "autz_enumerated", "autz_formula", "z_inn_order",
            "autz_equals_zinn", "containment_witness")})
    else:
        vals["purely_nonabelian"] = _guard(lambda: str(is_purely_nonabelian(G)), ScopeExceeded)
        try:
            v = autz_equals_zinn(G)
        except ScopeExceeded as exc:
            vals.update({"autz_enumerated": f"undecided ({exc})", "autz_formula": None,
                         "z_inn_order": None, "autz_equals_zinn": None, "containment_witness": None})
        else:
            vals.update({
                "autz_enumerated": v.autz_enumerated,
                "autz_formula": v.autz_formula,
                "z_inn_order": v.z_inn,
                "autz_equals_zinn": v.equal,
                "containment_witness": v.containment_witness,
            })
    for tid, check in CHECKS.items():
        try:
            verdicts.append(check(G))
        except ScopeExceeded as exc:
            verdicts.append(TheoremVerdict.inapplicable(tid, f"scope exceeded: {exc}"))
    return InvariantReport(vals, verdicts)


# ---------------------------------------------------------------------------
# oracle comparison


@dataclass
class OracleComparison:
    name: str
    enumerated: int
    formula: int
    hom_formula: int
    hom_bruteforce: int | None

    @property
    def passed(self) -> bool:
        return self.enumerated == self.formula and (
            self.hom_bruteforce is None or self.hom_bruteforce == self.hom_formula)

    def to_text(self) -> str:
        lines = [
            f"name: {self.name}",
            f"autz_enumerated: {self.enumerated}",
            f"autz_formula: {self.formula}",
            f"hom_formula: {self.hom_formula}",
            f"hom_bruteforce: {format_value(self.hom_bruteforce)}",
            f"result: {'PASS' if self.passed else 'FAIL'}",
        ]
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["name", "autz_enumerated", "autz_formula", "hom_formula", "hom_bruteforce", "result"])
        w.writerow([self.name, self.enumerated, self.formula, self.hom_formula,
                    format_value(self.hom_bruteforce), "PASS" if self.passed else "FAIL"])
        return buf.getvalue()


BRUTE_HOM_LIMIT = 81


def oracle_compare(G: RealizedGroup) -> OracleComparison:
    """Adney-Yen count against enumeration, and the gcd formula against hom counting."""
    from .central_aut import autz_enumerate, count_homomorphisms, hom_order

    formula = adney_yen_order(G)  # raises NotPurelyNonabelian
    enumerated = autz_enumerate(G).order
    Q = quotient(G, derived_subgroup(G))
    Z = center(G)
    hom_formula = hom_order(abelian_type(Q), subgroup_abelian_type(G, Z))
    brute = None
    if Q.order <= BRUTE_HOM_LIMIT and Z.order <= BRUTE_HOM_LIMIT:
        brute = count_homomorphisms(Q.group, _restrict(G, Z))
    return OracleComparison(G.name, enumerated, formula, hom_formula, brute)


def _restrict(G: RealizedGroup, H) -> RealizedGroup:
    """H as a standalone group (relabelled 0..|H|-1 in index order)."""
    import numpy as np

    elems = H.elements
    pos = np.full(G.order, -1, dtype=np.int64)
    pos[elems] = np.arange(elems.size)
    table = pos[G.mul(elems[:, None], elems[None, :])]
    return RealizedGroup.from_table(table, p=G.p, name=f"{G.name}.sub")


# ---------------------------------------------------------------------------
# verification summary


@dataclass
class SummaryRow:
    theorem_id: str
    entry: str
    verdict: TheoremVerdict | None
    error: str | None = None


@dataclass
class VerificationSummary:
    rows: list[SummaryRow]
    load_errors: list[tuple[str, str]]
    skipped: list[str] = field(default_factory=list)

    @property
    def applicable(self):
        return [r for r in self.rows if r.verdict is not None and r.verdict.applicable]

    @property
    def inapplicable(self):
        return [r for r in self.rows if r.verdict is not None and not r.verdict.applicable]

    @property
    def errors(self):
        return [r for r in self.rows if r.error is not None]

    def exit_code(self) -> int:
        if self.load_errors:
            return 2
        if self.errors or any(not r.verdict.passed for r in self.applicable):
            return 1
        return 0

    def warnings(self) -> list[str]:
        out = []
        ids = sorted({r.theorem_id for r in self.rows})
        for tid in ids:
            if not any(r.theorem_id == tid for r in self.applicable):
                out.append(f"warning: no applicable entries for {tid}")
        return out

    def to_text(self) -> str:
        lines = ["# applicable", f"{'theorem':<18} {'entry':<22} {'left':<6} {'right':<6} pass"]
        for r in self.applicable:
            v = r.verdict
            lines.append(f"{r.theorem_id:<18} {r.entry:<22} {format_value(v.left):<6} "
                         f"{format_value(v.right):<6} {format_value(v.passed)}")
        lines.append("# inapplicable")
        for r in self.inapplicable:
            lines.append(f"{r.theorem_id:<18} {r.entry:<22} {'; '.join(r.verdict.notes)}")
        if self.errors:
            lines.append("# errors")
            for r in self.errors:
                lines.append(f"{r.theorem_id:<18} {r.entry:<22} {r.error}")
        if self.load_errors:
            lines.append("# load errors")
            for path, msg in self.load_errors:
                lines.append(f"{path}: {msg}")
        if self.skipped:
            lines.append("# skipped (p=5, use --include-p5)")
            lines.extend(self.skipped)
        lines.extend(self.warnings())
        n_app = len(self.applicable)
        n_pass = sum(1 for r in self.applicable if r.verdict.passed)
        lines.append(f"# summary: {n_pass}/{n_app} applicable passed, "
                     f"{len(self.inapplicable)} inapplicable, {len(self.errors)} errors, "
                     f"{len(self.load_errors)} load errors")
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["theorem", "entry", "applicable", "left", "right", "pass", "notes"])
        for r in self.rows:
            if r.error is not None:
                w.writerow([r.theorem_id, r.entry, "error", "", "", "", r.error])
                continue
            v = r.verdict
            w.writerow([r.theorem_id, r.entry, format_value(v.applicable), format_value(v.left),
                        format_value(v.right), format_value(v.passed), "; ".join(v.notes)])
        for path, msg in self.load_errors:
            w.writerow(["load", path, "error", "", "", "", msg])
        return buf.getvalue()


def verify_group(theorem_ids, G: RealizedGroup, name: str) -> list[SummaryRow]:
    rows = []
    for tid in theorem_ids:
        try:
            rows.append(SummaryRow(tid, name, CHECKS[tid](G)))
        except AutzLabError as exc:
            rows.append(SummaryRow(tid, name, None, f"{type(exc).__name__}: {exc}"))
    return rows
