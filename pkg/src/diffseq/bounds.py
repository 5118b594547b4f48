"""Lower- and upper-bound bookkeeping for power-of-two diffsequence thresholds.

For a target length k, the construction level l is the largest integer whose
tolerance (3l^2 - 3l + 2)/2 stays below k; the construction then certifies a
threshold of at least l * 4^(l-1). The closed form obtained by substituting
the floor-free level, and the previously known closed form with a sqrt(2k)
exponent, are evaluated in floating point; the integer quantities are exact.

Closed-form values overflow IEEE doubles near k ~ 4*10^5, so each has a
log2-space twin that never overflows; exactness-sensitive comparisons (all
the invariants in this module) go through those.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass

from .colorings import DEFAULT_MAX_BITS, GapSet, expanded_alternating
from .engine import longest_mono

_LOG10_2 = math.log10(2.0)


def budget(level: int) -> int:
    """Tolerance (3l^2 - 3l + 2)/2 of the level-l construction, exact."""
    if level < 1:
        raise ValueError("level must be >= 1")
    return (3 * level * level - 3 * level + 2) // 2


def choose_level(k: int) -> int:
    """Largest level whose budget is strictly below k.

    The float seed is corrected by exact integer checks, so boundary k
    (where the square root is exact) cannot round the wrong way.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    level = int(math.sqrt(2 * (k - 1) / 3 + 0.25) + 0.5)
    level = max(level, 1)
    while budget(level + 1) < k:
        level += 1
    while level > 1 and budget(level) >= k:
        level -= 1
    return level


def construction_bound(level: int) -> int:
    """Threshold certified by the level-l construction: l * 4^(l-1)."""
    if level < 1:
        raise ValueError("level must be >= 1")
    return level * 4 ** (level - 1)


def closed_form_log2(k: int) -> float:
    """log2 of the new closed-form lower bound.

    The exponent is formed before the addition: at boundary k (where the
    closed form coincides with the construction bound exactly) both terms
    are then exact floats, and the construction comparison cannot lose to
    rounding.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    factor = math.sqrt((8 * k - 5) / 12) - 0.5
    return math.log2(factor) + (math.sqrt((8 * k - 5) / 3) - 3)


def closed_form_bound(k: int) -> float:
    """New closed-form lower bound; inf where a double overflows."""
    if k < 2:
        raise ValueError("k must be >= 2")
    factor = math.sqrt((8 * k - 5) / 12) - 0.5
    exponent = math.sqrt((8 * k - 5) / 3) - 3
    try:
        return factor * math.pow(2.0, exponent)
    except OverflowError:
        return math.inf


def prior_lower_bound(k: int) -> float:
    """Previously known closed-form lower bound (sqrt(2k) exponent);
    inf where a double overflows."""
    if k < 1:
        raise ValueError("k must be >= 1")
    sk = math.sqrt(k)
    try:
        lead = math.pow(2.0, math.sqrt(2 * k))
    except OverflowError:
        return math.inf
    return lead * ((math.sqrt(2) - 1) * k / 8 - sk / 8) + sk / 2


def prior_lower_bound_log2(k: int) -> float:
    """log2 of the prior bound; -inf where the bound is not positive."""
    if k < 1:
        raise ValueError("k must be >= 1")
    sk = math.sqrt(k)
    factor = (math.sqrt(2) - 1) * k / 8 - sk / 8
    exponent = math.sqrt(2 * k)
    if factor <= 0:
        v = prior_lower_bound(k)
        return math.log2(v) if v > 0 else -math.inf
    # additive sqrt(k)/2 term folded in without forming 2^exponent
    try:
        tail = (sk / 2) * math.pow(2.0, -exponent) / factor
    except OverflowError:
        tail = 0.0
    return exponent + math.log2(factor) + math.log1p(tail) / math.log(2)


def construction_bound_log2(k: int) -> float:
    """log2 of l * 4^(l-1) for l = choose_level(k).

    Uses the same log2 call as closed_form_log2 does at the boundary k
    where the two bounds coincide exactly, so the comparison
    construction >= closed form never fails by rounding there.
    """
    level = choose_level(k)
    return math.log2(float(level)) + 2 * (level - 1)


@dataclass(frozen=True)
class BoundReport:
    """All bound ingredients for one target length k."""

    k: int
    level: int
    construction_bound: int
    closed_form: float
    closed_form_log2: float
    prior_bound: float
    upper_bound: int
    budget: int

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "level": self.level,
            "construction_bound": self.construction_bound,
            "closed_form": _float_to_json(self.closed_form),
            "closed_form_log2": self.closed_form_log2,
            "prior_bound": _float_to_json(self.prior_bound),
            "upper_bound": self.upper_bound,
            "budget": self.budget,
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> BoundReport:
        return cls(
            k=d["k"],
            level=d["level"],
            construction_bound=d["construction_bound"],
            closed_form=_float_from_json(d["closed_form"]),
            closed_form_log2=d["closed_form_log2"],
            prior_bound=_float_from_json(d["prior_bound"]),
            upper_bound=d["upper_bound"],
            budget=d["budget"],
        )


def _float_to_json(v: float):
    # keep emitted JSON strictly standard: non-finite floats become null
    return v if math.isfinite(v) else None


def _float_from_json(v) -> float:
    return math.inf if v is None else v


def bound_report(k: int) -> BoundReport:
    if k < 2:
        raise ValueError("k must be >= 2")
    level = choose_level(k)
    return BoundReport(
        k=k,
        level=level,
        construction_bound=construction_bound(level),
        closed_form=closed_form_bound(k),
        closed_form_log2=closed_form_log2(k),
        prior_bound=prior_lower_bound(k),
        upper_bound=2**k - 1,
        budget=budget(level),
    )


@dataclass(frozen=True)
class ConstructionCheck:
    """Longest monochromatic diffsequence of the level-l construction
    against its budget."""

    level: int
    length: int
    longest: int
    budget: int
    holds: bool
    implied_k: int


def verify_construction(level: int, max_bits: int = DEFAULT_MAX_BITS) -> ConstructionCheck:
    """Build the level-l coloring, measure its longest monochromatic
    diffsequence and compare against the budget. `implied_k` is the least
    target length the construction certifies a threshold for."""
    coloring = expanded_alternating(level, max_bits=max_bits)
    b = budget(level)
    longest = longest_mono(coloring, GapSet.powers_of(2)).length
    return ConstructionCheck(
        level=level,
        length=len(coloring),
        longest=longest,
        budget=b,
        holds=longest <= b,
        implied_k=b + 1,
    )


# -- table rendering ---------------------------------------------------------

TABLE_COLUMNS = (
    "k",
    "level",
    "construction_bound",
    "closed_form",
    "prior_bound",
    "upper_bound",
    "exact",
)


def format_sig4(value: float, log2value: float | None = None) -> str:
    """4 significant figures; falls back to the log2 twin past double range."""
    if math.isfinite(value):
        return f"{value:.4g}"
    if log2value is not None and math.isfinite(log2value):
        l10 = log2value * _LOG10_2
        exp10 = math.floor(l10)
        mantissa = 10.0 ** (l10 - exp10)
        return f"{mantissa:.3f}e+{exp10:02d}"
    return "inf" if value > 0 else "-inf"


def _table_cells(report: BoundReport, exact: int | None) -> list[str]:
    return [
        str(report.k),
        str(report.level),
        str(report.construction_bound),
        format_sig4(report.closed_form, report.closed_form_log2),
        format_sig4(report.prior_bound, prior_lower_bound_log2(report.k)),
        str(report.upper_bound),
        "" if exact is None else str(exact),
    ]


def render_table(
    reports: list[BoundReport],
    fmt: str = "text",
    exact: dict[int, int] | None = None,
) -> str:
    """Bound table in text (aligned columns), csv, or json."""
    exact = exact or {}
    if fmt == "json":
        rows = []
        for rep in reports:
            row = rep.to_json_dict()
            row["exact"] = exact.get(rep.k)
            rows.append(row)
        return json.dumps(rows, indent=2) + "\n"

    rows = [_table_cells(rep, exact.get(rep.k)) for rep in reports]
    if fmt == "csv":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(TABLE_COLUMNS)
        writer.writerows(rows)
        return out.getvalue()
    if fmt == "text":
        widths = [
            max(len(TABLE_COLUMNS[i]), max((len(r[i]) for r in rows), default=0))
            for i in range(len(TABLE_COLUMNS))
        ]
        lines = ["  ".join(h.rjust(w) for h, w in zip(TABLE_COLUMNS, widths))]
        for r in rows:
            lines.append("  ".join(c.rjust(w) for c, w in zip(r, widths)))
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown table format {fmt!r}")
