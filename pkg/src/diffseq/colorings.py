"""Binary colorings of {1..n} and the block-substitution expansion.

A coloring is an immutable packed bit string, 1-indexed in the public API:
position i carries the color of the integer i. The expansion rewrites each
0 as the four-bit block 0011 and each 1 as 1100, quadrupling the length;
iterating it on an alternating seed of length l produces the coloring of
l * 4^(l-1) integers whose longest monochromatic power-of-two diffsequence
the rest of the package analyses.

Gap sets (the allowed step sizes of a diffsequence) live here too, either
as all powers of a fixed base or as an explicit finite set.
"""

from __future__ import annotations

import struct
from collections.abc import Iterable, Iterator

DEFAULT_MAX_BITS = 1 << 28


class CapacityError(Exception):
    """A requested construction exceeds the configured size limit."""


class ColoringFormatError(ValueError):
    """A serialized coloring could not be parsed."""


def _mask_tail(buf: bytearray, nbits: int) -> None:
    # zero the padding bits of the last byte
    rem = nbits & 7
    if rem and buf:
        buf[-1] &= (1 << rem) - 1


# One input byte (8 bits, LSB first) -> 4 output bytes (32 bits, LSB first).
# Input bit b becomes the nibble (b, b, 1-b, 1-b), i.e. 0 -> 0011, 1 -> 1100
# when read as positions 4i-3 .. 4i.
def _build_expand_table() -> list[bytes]:
    table = []
    for v in range(256):
        out = 0
        for p in range(8):
            nibble = 0b0011 if (v >> p) & 1 else 0b1100
            out |= nibble << (4 * p)
        table.append(out.to_bytes(4, "little"))
    return table


_EXPAND_TABLE = _build_expand_table()

_BYTE_BITS = [tuple((v >> p) & 1 for p in range(8)) for v in range(256)]


class Coloring:
    """An immutable 2-coloring of {1..n}, packed little-endian."""

    __slots__ = ("_n", "_buf")

    def __init__(self, bits: Iterable[int] | str = ()):
        if isinstance(bits, str):
            vals = []
            for ch in bits:
                if ch not in "01":
                    raise ValueError(f"coloring characters must be 0/1, got {ch!r}")
                vals.append(ch == "1")
        else:
            vals = []
            for b in bits:
                if b not in (0, 1):
                    raise ValueError(f"coloring bits must be 0 or 1, got {b!r}")
                vals.append(b == 1)
        n = len(vals)
        buf = bytearray((n + 7) // 8)
        for idx, b in enumerate(vals):
            if b:
                buf[idx >> 3] |= 1 << (idx & 7)
        self._n = n
        self._buf = bytes(buf)

    @classmethod
    def _from_packed(cls, n: int, buf: bytes) -> Coloring:
        self = object.__new__(cls)
        self._n = n
        self._buf = buf
        return self

    def __len__(self) -> int:
        return self._n

    def bit(self, i: int) -> int:
        """Color of the integer i (1-indexed)."""
        if not 1 <= i <= self._n:
            raise ValueError(f"position {i} out of range 1..{self._n}")
        idx = i - 1
        return (self._buf[idx >> 3] >> (idx & 7)) & 1

    def padded(self) -> list[int]:
        """Bits as a list indexable by 1-based position (index 0 unused)."""
        out = [0] * (self._n + 1)
        pos = 1
        n = self._n
        for byte in self._buf:
            for b in _BYTE_BITS[byte]:
                if pos > n:
                    break
                out[pos] = b
                pos += 1
        return out

    def __iter__(self) -> Iterator[int]:
        return iter(self.padded()[1:])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Coloring):
            return NotImplemented
        return self._n == other._n and self._buf == other._buf

    def __hash__(self) -> int:
        return hash((self._n, self._buf))

    def __str__(self) -> str:
        return "".join("1" if b else "0" for b in self)

    def __repr__(self) -> str:
        s = str(self)
        if len(s) > 32:
            s = s[:32] + "..."
        return f"Coloring({s!r}, n={self._n})"

    # -- serialization ------------------------------------------------------

    def to_text(self) -> str:
        """ASCII 0/1 string, newline-terminated."""
        return str(self) + "\n"

    @classmethod
    def from_text(cls, text: str) -> Coloring:
        body = text[:-1] if text.endswith("\n") else text
        if any(ch not in "01" for ch in body):
            raise ColoringFormatError("coloring text may contain only 0/1 characters")
        return cls(body)

    def to_binary(self) -> bytes:
        """8-byte little-endian length, then packed bits (bit i of the
        coloring at byte (i-1)//8, bit position (i-1)%8)."""
        return struct.pack("<Q", self._n) + self._buf

    @classmethod
    def from_binary(cls, data: bytes) -> Coloring:
        if len(data) < 8:
            raise ColoringFormatError("binary coloring shorter than its length header")
        (n,) = struct.unpack_from("<Q", data)
        nbytes = (n + 7) // 8
        if len(data) != 8 + nbytes:
            raise ColoringFormatError(
                f"binary coloring length mismatch: header says {n} bits "
                f"({nbytes} bytes), got {len(data) - 8} bytes"
            )
        buf = data[8:]
        rem = n & 7
        if rem and buf and buf[-1] >> rem:
            raise ColoringFormatError("nonzero padding bits in binary coloring")
        return cls._from_packed(n, bytes(buf))


def make_alternating(length: int) -> Coloring:
    """The coloring 1010... (position i gets i mod 2)."""
    if length < 1:
        raise ValueError("length must be >= 1")
    buf = bytearray(b"\x55" * ((length + 7) // 8))
    _mask_tail(buf, length)
    return Coloring._from_packed(length, bytes(buf))


def expand(s: Coloring) -> Coloring:
    """Replace every 0 by the block 0011 and every 1 by 1100."""
    n = len(s)
    if n == 0:
        raise ValueError("cannot expand an empty coloring")
    table = _EXPAND_TABLE
    out = bytearray(b"".join(table[b] for b in s._buf))
    nbits = 4 * n
    del out[(nbits + 7) // 8 :]
    _mask_tail(out, nbits)
    return Coloring._from_packed(nbits, bytes(out))


def expand_iter(s: Coloring, rounds: int) -> Coloring:
    """Apply `expand` the given number of times (0 returns s unchanged)."""
    if rounds < 0:
        raise ValueError("rounds must be >= 0")
    for _ in range(rounds):
        s = expand(s)
    return s


def expanded_alternating(level: int, max_bits: int = DEFAULT_MAX_BITS) -> Coloring:
    """The alternating seed of the given length, expanded level-1 times.

    The result colors exactly level * 4^(level-1) integers; anything past
    `max_bits` is refused rather than silently allocated.
    """
    if level < 1:
        raise ValueError("level must be >= 1")
    total = level * 4 ** (level - 1)
    if total > max_bits:
        raise CapacityError(
            f"construction for level {level} needs {total} bits, "
            f"limit is {max_bits}"
        )
    return expand_iter(make_alternating(level), level - 1)


def block_index(i: int) -> int:
    """Index of the 4-bit expansion block containing bit i, ceil(i/4)."""
    if i < 1:
        raise ValueError("position must be >= 1")
    return (i + 3) // 4


def periodic_coloring(n: int, modulus: int) -> list[int]:
    """m-ary coloring where integer i gets color i mod m."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if modulus < 2:
        raise ValueError("modulus must be >= 2")
    return [i % modulus for i in range(1, n + 1)]


class GapSet:
    """Allowed step sizes for a diffsequence.

    Either all powers of a fixed base >= 2, or an explicit finite set of
    positive integers.
    """

    __slots__ = ("_base", "_members")

    def __init__(self) -> None:
        raise TypeError("use GapSet.powers_of or GapSet.explicit")

    @classmethod
    def powers_of(cls, base: int) -> GapSet:
        if base < 2:
            raise ValueError("base must be >= 2")
        self = object.__new__(cls)
        self._base = base
        self._members = None
        return self

    @classmethod
    def explicit(cls, members: Iterable[int]) -> GapSet:
        ms = frozenset(members)
        if any(not isinstance(m, int) or m < 1 for m in ms):
            raise ValueError("gap members must be positive integers")
        self = object.__new__(cls)
        self._base = None
        self._members = tuple(sorted(ms))
        return self

    def is_powers_of(self, base: int) -> bool:
        return self._base == base

    def __contains__(self, g: int) -> bool:
        if g < 1:
            return False
        if self._base is None:
            return g in self._members
        while g % self._base == 0:
            g //= self._base
        return g == 1

    def members_upto(self, limit: int) -> list[int]:
        """All members <= limit, strictly increasing."""
        if self._base is None:
            return [m for m in self._members if m <= limit]
        out = []
        g = 1
        while g <= limit:
            out.append(g)
            g *= self._base
        return out

    def describe(self) -> str:
        if self._base is not None:
            return f"powers-of-{self._base}"
        return "explicit:" + ",".join(str(m) for m in self._members)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GapSet):
            return NotImplemented
        return self._base == other._base and self._members == other._members

    def __hash__(self) -> int:
        return hash((self._base, self._members))

    def __repr__(self) -> str:
        return f"GapSet({self.describe()})"


POWERS_OF_TWO = GapSet.powers_of(2)
