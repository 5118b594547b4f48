"""Naive reference implementations used only to check the real ones.

Everything here favors directness over speed: string concatenation for the
expansion, recursive enumeration for longest sequences, full enumeration
for thresholds.
"""

import itertools


def naive_expand(s: str) -> str:
    return "".join("1100" if ch == "1" else "0011" for ch in s)


def pow2_gaps(limit: int) -> list[int]:
    out, g = [], 1
    while g <= limit:
        out.append(g)
        g *= 2
    return out


def naive_longest(s: str, max_hops: int) -> tuple[int, tuple[int, ...]]:
    """Max admissible length and the lexicographically smallest witness,
    by plain recursive enumeration (powers-of-two gaps)."""
    n = len(s)
    best = [0, ()]
    gaps = pow2_gaps(n)

    def rec(seq, budget):
        if len(seq) > best[0]:
            best[0] = len(seq)
            best[1] = tuple(seq)
        i = seq[-1]
        for g in gaps:
            j = i + g
            if j > n:
                break
            if s[j - 1] == s[i - 1]:
                seq.append(j)
                rec(seq, budget)
                seq.pop()
            elif g == 1 and budget > 0:
                seq.append(j)
                rec(seq, budget - 1)
                seq.pop()

    for start in range(1, n + 1):
        rec([start], max_hops)
    return best[0], best[1]


def contains_mono(colors: tuple[int, ...], k: int) -> bool:
    """Monochromatic length-k diffsequence present? (powers-of-two gaps)"""
    n = len(colors)
    best = [0] * (n + 1)
    for i in range(1, n + 1):
        m = 1
        for g in pow2_gaps(i - 1):
            j = i - g
            if colors[j - 1] == colors[i - 1] and best[j] + 1 > m:
                m = best[j] + 1
        if m >= k:
            return True
        best[i] = m
    return False


def enumerate_threshold(k: int, n_max: int, r: int = 2) -> int | None:
    """Least n <= n_max forcing a monochromatic length-k diffsequence in
    every r-coloring, by enumerating all r^n colorings."""
    for n in range(1, n_max + 1):
        if all(
            contains_mono(c, k) for c in itertools.product(range(r), repeat=n)
        ):
            return n
    return None
