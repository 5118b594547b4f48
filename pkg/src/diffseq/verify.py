"""Seeded property suites behind the `verify` command.

Each suite draws its cases from SplitMix64, so a (trials, seed) pair pins
the exact inputs checked. A failing case would indicate an implementation
bug; it is reduced by halving-based shrinking before being reported.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from collections.abc import Callable

from .bounds import verify_construction
from .colorings import DEFAULT_MAX_BITS, Coloring, POWERS_OF_TWO, expand
from .engine import check_expansion_bound, longest_mono, reduce_positions
from .rng import SplitMix64


@dataclass
class SuiteReport:
    name: str
    trials: int
    passed: bool
    counterexample: str | None = None
    details: list[str] = field(default_factory=list)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"{self.name}: {status} ({self.trials} trials)"
        if self.counterexample:
            line += f"\n  minimal counterexample: {self.counterexample}"
        return line


def shrink_case(
    fails: Callable[[str, int], bool], bits: str, aux: int
) -> tuple[str, int]:
    """Reduce a failing (bit string, small integer) case by halving.

    Repeatedly tries each half of the string and a halved integer, keeping
    any variant that still fails, until no halving step helps.
    """
    improved = True
    while improved:
        improved = False
        half = len(bits) // 2
        for cand in (bits[:half], bits[half:]):
            if cand and cand != bits and fails(cand, aux):
                bits = cand
                improved = True
                break
        if not improved and aux > 0 and fails(bits, aux // 2):
            aux //= 2
            improved = True
    return bits, aux


def _random_bits(rng: SplitMix64, max_len: int) -> str:
    length = 1 + rng.below(max_len)
    return "".join(map(str, rng.bits(length)))


def expansion_bound_suite(
    trials: int, seed: int, max_len: int = 64, max_hops: int = 3
) -> SuiteReport:
    """Random strings must satisfy the expansion inequality
    longest(expansion, h) <= longest(original, h+1) + 3h + 2."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = SplitMix64(seed)

    def fails(bits: str, h: int) -> bool:
        return not check_expansion_bound(Coloring(bits), POWERS_OF_TWO, h).holds

    for _ in range(trials):
        bits = _random_bits(rng, max_len)
        h = rng.below(max_hops + 1)
        if fails(bits, h):
            s, h = shrink_case(fails, bits, h)
            return SuiteReport(
                name="expansion-bound",
                trials=trials,
                passed=False,
                counterexample=f"s={s} h={h}",
            )
    return SuiteReport(name="expansion-bound", trials=trials, passed=True)


def construction_suite(
    max_level: int = 6, max_bits: int = DEFAULT_MAX_BITS
) -> SuiteReport:
    """Longest monochromatic diffsequence of each construction level must
    stay within its budget."""
    if max_level < 1:
        raise ValueError("max_level must be >= 1")
    details = []
    counterexample = None
    passed = True
    for level in range(1, max_level + 1):
        chk = verify_construction(level, max_bits=max_bits)
        details.append(
            f"level {level}: longest {chk.longest}  budget {chk.budget}  "
            f"length {chk.length}"
        )
        if not chk.holds:
            passed = False
            counterexample = f"level={level} longest={chk.longest} budget={chk.budget}"
            break
    return SuiteReport(
        name="construction-budget",
        trials=max_level,
        passed=passed,
        counterexample=counterexample,
        details=details,
    )


def _random_mono_witness(rng: SplitMix64, s1: Coloring) -> list[int]:
    # random-walk a same-color diffsequence: random start, then random
    # admissible same-color steps with an early-stop chance
    n = len(s1)
    bits = s1.padded()
    gaps = POWERS_OF_TWO.members_upto(n - 1) if n > 1 else []
    cur = 1 + rng.below(n)
    out = [cur]
    while True:
        if rng.below(4) == 0:
            break
        succ = [cur + g for g in gaps if cur + g <= n and bits[cur + g] == bits[cur]]
        if not succ:
            break
        cur = succ[rng.below(len(succ))]
        out.append(cur)
    return out


def reduction_suite(trials: int, seed: int, max_len: int = 32) -> SuiteReport:
    """Block reduction of monochromatic witnesses in expanded strings must
    pass all three structural checks."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = SplitMix64(seed)

    def fails(bits: str, variant: int) -> bool:
        # variant 0: longest witness; otherwise: walk seeded by the variant
        s = Coloring(bits)
        s1 = expand(s)
        if variant == 0:
            wit = list(longest_mono(s1, POWERS_OF_TWO).witness.positions)
        else:
            wit = _random_mono_witness(SplitMix64(variant), s1)
        return not reduce_positions(s, s1, wit).passed

    for trial in range(trials):
        bits = _random_bits(rng, max_len)
        variant = 0 if trial % 2 == 0 else 1 + rng.below(1 << 32)
        if fails(bits, variant):
            s, v = shrink_case(fails, bits, variant)
            return SuiteReport(
                name="block-reduction",
                trials=trials,
                passed=False,
                counterexample=f"s={s} variant={v}",
            )
    return SuiteReport(name="block-reduction", trials=trials, passed=True)
