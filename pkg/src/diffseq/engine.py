"""Longest-diffsequence search over binary colorings.

A diffsequence steps through positions by gaps drawn from a gap set. Here a
color change is admissible only across a unit gap (a "hop"), and searches
bound the number of hops; with zero hops allowed the admissible sequences
are exactly the monochromatic ones.

The workhorse is a suffix DP over (position, hops-used) states: O(n log n)
time per hop layer for power-of-two gaps, with witnesses reconstructed
greedily so that the reported witness is the lexicographically smallest
maximum-length position sequence. `brute_longest` is an independent
exhaustive enumeration used to validate the DP on small inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from collections.abc import Sequence

from .colorings import CapacityError, Coloring, GapSet, block_index, expand

DEFAULT_ORACLE_LIMIT = 24


@dataclass(frozen=True)
class DiffSeq:
    """A strictly increasing sequence of positive positions."""

    positions: tuple[int, ...]

    def __post_init__(self) -> None:
        ps = self.positions
        if not ps:
            raise ValueError("a diffsequence needs at least one position")
        if ps[0] < 1 or any(b <= a for a, b in zip(ps, ps[1:])):
            raise ValueError("positions must be strictly increasing positive integers")

    def __len__(self) -> int:
        return len(self.positions)

    def gaps(self) -> tuple[int, ...]:
        return tuple(b - a for a, b in zip(self.positions, self.positions[1:]))


@dataclass(frozen=True)
class LongestResult:
    """Maximum admissible length, a witness, and the hops the witness uses."""

    length: int
    witness: DiffSeq | None
    hops_used: int

    def to_json_dict(self) -> dict:
        wit = list(self.witness.positions) if self.witness else []
        return {"length": self.length, "hops": self.hops_used, "witness": wit}

    @classmethod
    def from_json_dict(cls, d: dict) -> LongestResult:
        wit = DiffSeq(tuple(d["witness"])) if d["witness"] else None
        return cls(length=d["length"], witness=wit, hops_used=d["hops"])


@dataclass(frozen=True)
class ValidationResult:
    """Outcome of an admissibility check: accepted with its hop set, or a
    rejection reason."""

    admissible: bool
    hops: frozenset[int] | None
    reason: str | None


@dataclass(frozen=True)
class BlockReduction:
    """Block-index reduction of a monochromatic witness in an expanded string.

    `split_index` is the length of the leading run of block colors opposite
    to the witness color. The three flags check, in order: the block colors
    form one opposite-color run followed by one same-color run; a witness
    whose block colors are constant visits at least k-1 distinct blocks; and
    adjacent witness entries whose block colors differ sit in consecutive
    blocks colored (opposite, same).
    """

    pos_seq: tuple[int, ...]
    pos_colors: tuple[int, ...]
    split_index: int
    distinct_count: int
    split_ok: bool
    count_ok: bool
    adjacency_ok: bool

    @property
    def passed(self) -> bool:
        return self.split_ok and self.count_ok and self.adjacency_ok


@dataclass(frozen=True)
class ExpansionBoundCheck:
    lhs: int
    rhs: int
    holds: bool


def validate_diffseq(
    s: Coloring, gaps: GapSet, positions: Sequence[int], max_hops: int
) -> ValidationResult:
    """Check positions for admissibility in s under a hop budget.

    Malformed input (non-increasing or out-of-range positions) raises
    ValueError; an inadmissible but well-formed sequence is reported as a
    rejection with a reason.
    """
    if max_hops < 0:
        raise ValueError("max_hops must be >= 0")
    n = len(s)
    prev = 0
    for p in positions:
        if p <= prev:
            raise ValueError("positions must be strictly increasing")
        if p < 1 or p > n:
            raise ValueError(f"position {p} out of range 1..{n}")
        prev = p

    hops = set()
    for j in range(len(positions) - 1):
        a, b = positions[j], positions[j + 1]
        g = b - a
        if g not in gaps:
            return ValidationResult(False, None, f"gap {g} at index {j + 1} not in gap set")
        if s.bit(a) != s.bit(b):
            if g != 1:
                return ValidationResult(
                    False, None, f"color change across gap {g} at index {j + 1}"
                )
            hops.add(j + 1)
    if len(hops) > max_hops:
        return ValidationResult(
            False, None, f"{len(hops)} hops exceed budget {max_hops}"
        )
    return ValidationResult(True, frozenset(hops), None)


def longest_mono(s: Coloring, gaps: GapSet) -> LongestResult:
    """Longest monochromatic diffsequence, with the lexicographically
    smallest maximum-length witness."""
    n = len(s)
    if n == 0:
        return LongestResult(0, None, 0)
    bits = s.padded()
    glist = gaps.members_upto(n - 1)

    # suffix DP: S[i] = longest monochromatic diffsequence starting at i
    S = [0] * (n + 1)
    best_len = 0
    best_start = 1
    for i in range(n, 0, -1):
        b = bits[i]
        m = 0
        for g in glist:
            j = i + g
            if j > n:
                break
            if bits[j] == b and S[j] > m:
                m = S[j]
        m += 1
        S[i] = m
        if m >= best_len:
            best_len = m
            best_start = i

    wit = [best_start]
    cur = best_start
    for rem in range(best_len - 1, 0, -1):
        b = bits[cur]
        for g in glist:
            j = cur + g
            if j > n:
                break
            if bits[j] == b and S[j] == rem:
                cur = j
                break
        wit.append(cur)
    return LongestResult(best_len, DiffSeq(tuple(wit)), 0)


def longest_with_hops(s: Coloring, gaps: GapSet, max_hops: int) -> LongestResult:
    """Longest admissible diffsequence using at most `max_hops` hops.

    DP over (position, hops used); the witness is the lexicographically
    smallest among the maximum-length admissible sequences.
    """
    if max_hops < 0:
        raise ValueError("max_hops must be >= 0")
    n = len(s)
    if n == 0:
        return LongestResult(0, None, 0)
    h = min(max_hops, n - 1)
    bits = s.padded()
    glist = gaps.members_upto(n - 1)
    unit = 1 in gaps

    # layers[t][i] = longest sequence starting at i with at most t hops
    layers: list[list[int]] = []
    best_len = 0
    best_start = 1
    for t in range(h + 1):
        S = [0] * (n + 2)
        prev = layers[t - 1] if t else None
        for i in range(n, 0, -1):
            b = bits[i]
            m = 0
            for g in glist:
                j = i + g
                if j > n:
                    break
                if bits[j] == b and S[j] > m:
                    m = S[j]
            if prev is not None and unit and i < n and bits[i + 1] != b:
                v = prev[i + 1]
                if v > m:
                    m = v
            S[i] = m + 1
        layers.append(S)
    final = layers[h]
    for i in range(n, 0, -1):
        if final[i] >= best_len:
            best_len = final[i]
            best_start = i

    wit = [best_start]
    cur = best_start
    budget = h
    hops_used = 0
    for rem in range(best_len - 1, 0, -1):
        b = bits[cur]
        nxt = 0
        for g in glist:
            j = cur + g
            if j > n:
                break
            if bits[j] == b and layers[budget][j] == rem:
                nxt = j
                break
        hop = cur + 1
        if (
            budget > 0
            and unit
            and hop <= n
            and bits[hop] != b
            and (nxt == 0 or hop < nxt)
            and layers[budget - 1][hop] == rem
        ):
            nxt = hop
            budget -= 1
            hops_used += 1
        wit.append(nxt)
        cur = nxt
    return LongestResult(best_len, DiffSeq(tuple(wit)), hops_used)


def _longest_len(s: Coloring, gaps: GapSet, max_hops: int) -> int:
    # length-only twin of longest_with_hops; keeps two DP layers
    n = len(s)
    if n == 0:
        return 0
    h = min(max_hops, n - 1)
    bits = s.padded()
    glist = gaps.members_upto(n - 1)
    unit = 1 in gaps

    prev: list[int] | None = None
    S: list[int] = []
    for t in range(h + 1):
        S = [0] * (n + 2)
        for i in range(n, 0, -1):
            b = bits[i]
            m = 0
            for g in glist:
                j = i + g
                if j > n:
                    break
                if bits[j] == b and S[j] > m:
                    m = S[j]
            if t and unit and i < n and bits[i + 1] != b:
                v = prev[i + 1]
                if v > m:
                    m = v
            S[i] = m + 1
        prev = S
    return max(S)


def brute_longest(
    s: Coloring, gaps: GapSet, max_hops: int, limit: int = DEFAULT_ORACLE_LIMIT
) -> LongestResult:
    """Exhaustive enumeration of every admissible sequence.

    Independent of the DP: extends sequences position by position straight
    from the admissibility definition. Intended as a test oracle; refuses
    strings longer than `limit`.
    """
    if max_hops < 0:
        raise ValueError("max_hops must be >= 0")
    n = len(s)
    if n > limit:
        raise CapacityError(f"oracle limited to {limit} bits, got {n}")
    if n == 0:
        return LongestResult(0, None, 0)
    bits = s.padded()
    glist = gaps.members_upto(n - 1)
    unit = 1 in gaps

    # successors[i]: ascending (j, is_hop) pairs admissible from i
    successors: list[list[tuple[int, bool]]] = [[] for _ in range(n + 1)]
    for i in range(1, n + 1):
        for g in glist:
            j = i + g
            if j > n:
                break
            if bits[j] == bits[i]:
                successors[i].append((j, False))
            elif g == 1 and unit:
                successors[i].append((j, True))

    best_len = 0
    best_wit: tuple[int, ...] = ()
    path: list[int] = []

    def visit(i: int, budget: int) -> None:
        nonlocal best_len, best_wit
        path.append(i)
        if len(path) > best_len:
            best_len = len(path)
            best_wit = tuple(path)
        for j, is_hop in successors[i]:
            if is_hop:
                if budget:
                    visit(j, budget - 1)
            else:
                visit(j, budget)
        path.pop()

    for start in range(1, n + 1):
        visit(start, max_hops)

    hops_used = sum(
        1 for a, b in zip(best_wit, best_wit[1:]) if bits[a] != bits[b]
    )
    return LongestResult(best_len, DiffSeq(best_wit), hops_used)


def reduce_positions(
    s: Coloring, s1: Coloring, seq: DiffSeq | Sequence[int]
) -> BlockReduction:
    """Map a monochromatic witness in the expansion s1 of s down to its
    block indices in s and check the structural facts the expansion
    guarantees (see BlockReduction)."""
    positions = tuple(seq.positions if isinstance(seq, DiffSeq) else seq)
    if not positions:
        raise ValueError("witness must contain at least one position")
    if expand(s) != s1:
        raise ValueError("s1 is not the expansion of s")
    check = validate_diffseq(s1, GapSet.powers_of(2), positions, 0)
    if not check.admissible:
        raise ValueError(f"sequence is not a monochromatic diffsequence: {check.reason}")

    c = s1.bit(positions[0])
    pos_seq = tuple(block_index(p) for p in positions)
    pos_colors = tuple(s.bit(p) for p in pos_seq)

    m = 0
    while m < len(pos_colors) and pos_colors[m] == 1 - c:
        m += 1
    split_ok = all(col == c for col in pos_colors[m:])

    distinct = len(set(pos_seq))
    all_equal = len(set(pos_colors)) == 1
    count_ok = (not all_equal) or distinct >= len(positions) - 1

    adjacency_ok = True
    for j in range(len(positions) - 1):
        ca, cb = pos_colors[j], pos_colors[j + 1]
        if ca != cb:
            if pos_seq[j + 1] - pos_seq[j] != 1 or ca != 1 - c or cb != c:
                adjacency_ok = False
                break

    return BlockReduction(
        pos_seq=pos_seq,
        pos_colors=pos_colors,
        split_index=m,
        distinct_count=distinct,
        split_ok=split_ok,
        count_ok=count_ok,
        adjacency_ok=adjacency_ok,
    )


def check_expansion_bound(s: Coloring, gaps: GapSet, hops: int) -> ExpansionBoundCheck:
    """Compare the longest h-hop sequence of the expansion of s with the
    longest (h+1)-hop sequence of s plus 3h + 2.

    Only defined for the power-of-two gap set.
    """
    if not gaps.is_powers_of(2):
        raise ValueError("expansion bound is defined for powers-of-2 gaps only")
    if hops < 0:
        raise ValueError("hops must be >= 0")
    lhs = _longest_len(expand(s), gaps, hops)
    rhs = _longest_len(s, gaps, hops + 1) + 3 * hops + 2
    return ExpansionBoundCheck(lhs=lhs, rhs=rhs, holds=lhs <= rhs)
