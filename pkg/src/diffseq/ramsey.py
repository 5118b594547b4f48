"""Exact Ramsey-type thresholds for diffsequences.

For a gap set D, target length k and r colors, the threshold is the least n
such that every r-coloring of {1..n} contains a monochromatic length-k
diffsequence. `ramsey_number` finds it by depth-first extension of partial
colorings: each node keeps, per position, the length of the longest
monochromatic diffsequence ending there, a branch is cut as soon as that
value reaches k, and the threshold is one past the deepest avoiding
coloring found. Colors are tried in ascending order with position 1 pinned
to color 0, so the first coloring reaching the record depth is also the
lexicographically smallest certificate.

`ramsey_table` wraps the solver with a JSON-lines certificate cache whose
entries are re-validated before being trusted.
"""

from __future__ import annotations

import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from collections.abc import Iterable, Sequence

from .colorings import CapacityError, Coloring, GapSet

log = logging.getLogger(__name__)

DEFAULT_MAX_POSITIONS = 1 << 20
DEFAULT_SPLIT_DEPTH = 12
MAX_COLORS = 10  # certificates are digit strings


@dataclass(frozen=True)
class RamseyResult:
    """Threshold value (None when the search hit n_max without forcing),
    the avoiding certificate coloring, and search statistics."""

    gaps: str
    k: int
    r: int
    value: int | None
    n_max: int
    certificate: str
    nodes: int
    max_depth: int

    @property
    def exceeded(self) -> bool:
        return self.value is None

    def to_json_dict(self) -> dict:
        return {
            "gaps": self.gaps,
            "k": self.k,
            "r": self.r,
            "value": self.value,
            "n_max": self.n_max,
            "certificate": self.certificate,
            "nodes": self.nodes,
            "max_depth": self.max_depth,
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> RamseyResult:
        return cls(
            gaps=d["gaps"],
            k=d["k"],
            r=d["r"],
            value=d["value"],
            n_max=d["n_max"],
            certificate=d["certificate"],
            nodes=d["nodes"],
            max_depth=d["max_depth"],
        )


def _as_color_list(coloring: Coloring | str | Sequence[int]) -> list[int]:
    # 1-based list, index 0 unused
    if isinstance(coloring, Coloring):
        return coloring.padded()
    if isinstance(coloring, str):
        return [0] + [int(ch) for ch in coloring]
    return [0] + list(coloring)


def avoids(coloring: Coloring | str | Sequence[int], gaps: GapSet, k: int) -> bool:
    """True iff the coloring has no monochromatic length-k diffsequence."""
    if k < 1:
        raise ValueError("k must be >= 1")
    colors = _as_color_list(coloring)
    n = len(colors) - 1
    if k == 1:
        return n == 0
    glist = gaps.members_upto(n - 1) if n > 1 else []
    best = [0] * (n + 1)
    for i in range(1, n + 1):
        c = colors[i]
        m = 0
        for g in glist:
            if g >= i:
                break
            j = i - g
            if colors[j] == c and best[j] > m:
                m = best[j]
        m += 1
        if m >= k:
            return False
        best[i] = m
    return True


def _search(
    gaps: GapSet,
    k: int,
    r: int,
    n_max: int,
    prefix: str = "",
    stop_depth: int | None = None,
) -> tuple[int, str, int, list[str]]:
    """Iterative DFS over avoiding colorings extending `prefix`.

    Returns (max_depth, first coloring reaching it, nodes placed, frontier).
    With `stop_depth`, avoiding colorings of that length are collected into
    the frontier instead of being extended.
    """
    colors = [0] * (n_max + 1)
    best = [0] * (n_max + 1)
    glist = gaps.members_upto(n_max - 1) if n_max > 1 else []

    def extension_value(d: int, col: int) -> int:
        m = 0
        for g in glist:
            if g >= d:
                break
            j = d - g
            if colors[j] == col and best[j] > m:
                m = best[j]
        return m + 1

    depth0 = len(prefix)
    for d, ch in enumerate(prefix, start=1):
        col = int(ch)
        b = extension_value(d, col)
        if b >= k:
            raise ValueError(f"prefix {prefix!r} is not avoiding")
        colors[d] = col
        best[d] = b

    max_depth = depth0
    deepest = prefix
    nodes = 0
    frontier: list[str] = []

    if stop_depth is not None and depth0 >= stop_depth:
        raise ValueError("prefix already at or past stop_depth")
    if depth0 >= n_max:
        return max_depth, deepest, nodes, frontier

    # entries (depth, color); ancestors of a popped entry are still in place
    # because only deeper positions were overwritten in between
    first_cols = range(1) if depth0 == 0 else range(r)
    stack = [(depth0 + 1, col) for col in reversed(first_cols)]
    while stack:
        d, col = stack.pop()
        b = extension_value(d, col)
        if b >= k:
            continue
        colors[d] = col
        best[d] = b
        nodes += 1
        if stop_depth is not None and d == stop_depth:
            frontier.append("".join(map(str, colors[1 : d + 1])))
            continue
        if d > max_depth:
            max_depth = d
            deepest = "".join(map(str, colors[1 : d + 1]))
        if d < n_max:
            for c2 in range(r - 1, -1, -1):
                stack.append((d + 1, c2))
    return max_depth, deepest, nodes, frontier


def _search_task(args: tuple) -> tuple[int, str, int]:
    gaps_desc, k, r, n_max, prefix = args
    gs = gapset_from_description(gaps_desc)
    max_depth, deepest, nodes, _ = _search(gs, k, r, n_max, prefix=prefix)
    return max_depth, deepest, nodes


def gapset_from_description(desc: str) -> GapSet:
    """Inverse of GapSet.describe()."""
    if desc.startswith("powers-of-"):
        return GapSet.powers_of(int(desc[len("powers-of-") :]))
    if desc.startswith("explicit:"):
        return GapSet.explicit(int(x) for x in desc[len("explicit:") :].split(","))
    raise ValueError(f"unrecognized gap set description {desc!r}")


def _default_n_max(gaps: GapSet, k: int) -> int:
    if gaps.is_powers_of(2):
        return 2**k - 1
    raise ValueError("n_max is required for gap sets other than powers of 2")


def ramsey_number(
    gaps: GapSet,
    k: int,
    r: int = 2,
    n_max: int | None = None,
    jobs: int = 1,
    split_depth: int = DEFAULT_SPLIT_DEPTH,
    max_positions: int = DEFAULT_MAX_POSITIONS,
) -> RamseyResult:
    """Exact threshold by pruned exhaustive search up to n_max positions.

    Every avoiding partial coloring is visited, so a determined value is
    minimal; when an avoiding coloring of the full n_max survives, the
    result reports value None ("exceeds n_max") with that certificate.
    With jobs > 1 the avoiding prefixes at `split_depth` become independent
    subtree tasks; the merged result is identical to the sequential one.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if r < 2:
        raise ValueError("r must be >= 2")
    if r > MAX_COLORS:
        raise ValueError(f"at most {MAX_COLORS} colors supported")
    if n_max is None:
        n_max = _default_n_max(gaps, k)
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if n_max > max_positions:
        raise CapacityError(f"n_max {n_max} exceeds position limit {max_positions}")

    if jobs > 1 and n_max > split_depth > 0:
        max_depth, deepest, nodes, frontier = _search(
            gaps, k, r, n_max, stop_depth=split_depth
        )
        if frontier:
            task_args = [(gaps.describe(), k, r, n_max, p) for p in frontier]
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(_search_task, task_args, chunksize=8))
            for sub_depth, sub_deepest, sub_nodes in results:
                nodes += sub_nodes
                # frontier is in lex order, so the first task attaining the
                # record supplies the lexicographically smallest certificate
                if sub_depth > max_depth:
                    max_depth = sub_depth
                    deepest = sub_deepest
    else:
        max_depth, deepest, nodes, _ = _search(gaps, k, r, n_max)

    value = max_depth + 1 if max_depth < n_max else None
    return RamseyResult(
        gaps=gaps.describe(),
        k=k,
        r=r,
        value=value,
        n_max=n_max,
        certificate=deepest,
        nodes=nodes,
        max_depth=max_depth,
    )


# -- certificate cache -------------------------------------------------------


def _validate_record(rec: dict, gaps: GapSet, k: int, r: int, n_max: int) -> RamseyResult | None:
    """Turn a cached record into a result for (gaps, k, r, n_max), or None
    if the record does not apply or fails validation."""
    if rec.get("D") != gaps.describe() or rec.get("k") != k or rec.get("r") != r:
        return None
    value = rec.get("value")
    cert = rec.get("certificate")
    if not isinstance(cert, str) or any(ch not in "0123456789"[:r] for ch in cert):
        log.warning("cache record for k=%d has a malformed certificate; recomputing", k)
        return None

    if value is not None:
        if not isinstance(value, int) or len(cert) != value - 1:
            log.warning("cache record for k=%d is inconsistent; recomputing", k)
            return None
        if not avoids(cert, gaps, k):
            log.warning("cache certificate for k=%d fails avoidance; recomputing", k)
            return None
        if value <= n_max:
            return RamseyResult(gaps.describe(), k, r, value, n_max, cert, 0, len(cert))
        # value known but past the requested horizon: report only the horizon
        trimmed = cert[:n_max]
        return RamseyResult(gaps.describe(), k, r, None, n_max, trimmed, 0, n_max)

    rec_n_max = rec.get("n_max")
    if not isinstance(rec_n_max, int) or len(cert) != rec_n_max:
        log.warning("cache record for k=%d is inconsistent; recomputing", k)
        return None
    if rec_n_max < n_max:
        return None  # searched less far than requested
    trimmed = cert[:n_max]
    if not avoids(trimmed, gaps, k):
        log.warning("cache certificate for k=%d fails avoidance; recomputing", k)
        return None
    return RamseyResult(gaps.describe(), k, r, None, n_max, trimmed, 0, n_max)


def _record_for(result: RamseyResult) -> dict:
    rec = {
        "D": result.gaps,
        "k": result.k,
        "r": result.r,
        "value": result.value,
        "certificate": result.certificate,
    }
    if result.value is None:
        rec["n_max"] = result.n_max
    return rec


def _load_cache_lines(path: Path) -> list[dict]:
    records = []
    try:
        text = path.read_text()
    except OSError as exc:
        log.warning("cache %s unreadable (%s); recomputing", path, exc)
        return []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
            if not isinstance(rec, dict):
                raise ValueError("record is not an object")
        except ValueError as exc:
            log.warning("cache %s line %d corrupt (%s); dropping it", path, lineno, exc)
            continue
        records.append(rec)
    return records


def load_cached_values(path: Path | str, gaps: GapSet, r: int = 2) -> dict[int, int]:
    """Validated determined values from a cache file, keyed by k."""
    path = Path(path)
    if not path.exists():
        return {}
    out: dict[int, int] = {}
    for rec in _load_cache_lines(path):
        k = rec.get("k")
        value = rec.get("value")
        if not isinstance(k, int) or not isinstance(value, int):
            continue
        res = _validate_record(rec, gaps, k, r, n_max=value)
        if res is not None and res.value is not None:
            out[k] = res.value
    return out


def ramsey_table(
    gaps: GapSet,
    ks: Iterable[int],
    r: int = 2,
    n_max: int | None = None,
    cache_path: Path | str | None = None,
    jobs: int = 1,
) -> list[RamseyResult]:
    """Thresholds for several k, backed by an optional JSON-lines cache.

    Cached certificates are re-validated before being trusted; invalid or
    corrupt entries are reported, recomputed and rewritten. `n_max=None`
    picks the per-k default.
    """
    ks = list(ks)
    if not ks:
        raise ValueError("ks must be nonempty")

    records: list[dict] = []
    if cache_path is not None:
        cache_path = Path(cache_path)
        if cache_path.exists():
            records = _load_cache_lines(cache_path)

    results = []
    fresh = False
    for k in ks:
        horizon = n_max if n_max is not None else _default_n_max(gaps, k)
        hit = None
        for rec in records:
            hit = _validate_record(rec, gaps, k, r, horizon)
            if hit is not None:
                break
        if hit is None:
            hit = ramsey_number(gaps, k, r, n_max=horizon, jobs=jobs)
            fresh = True
            key = (gaps.describe(), k, r)
            records = [
                rec
                for rec in records
                if (rec.get("D"), rec.get("k"), rec.get("r")) != key
            ]
            records.append(_record_for(hit))
        results.append(hit)

    if cache_path is not None and (fresh or not cache_path.exists()):
        cache_path.parent.mkdir(parents=True, exist_ok=True)
        with cache_path.open("w") as fh:
            for rec in records:
                fh.write(json.dumps(rec) + "\n")
    return results
