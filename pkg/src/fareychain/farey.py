"""Exact integer machinery: Farey levels, two-letter matrix words, traces.

Everything in this module runs on Python integers, so results stay exact at
any chain length (the fixed-width compiled kernels in
:mod:`fareychain.kernels` carry their own capacity guard instead).

Conventions shared by the whole package: spin bit 0 maps to the matrix A,
bit 1 to B, and the leftmost bit is the first (leftmost) factor of the
matrix product.

All types are immutable values and all functions are pure; the streaming
generators hold no shared state, so if a caller folds one generator into a
shared accumulator from several threads, the caller owns the locking.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple


class Matrix2(NamedTuple):
    """2x2 integer matrix laid out as ((m1, m2), (m3, m4))."""

    m1: int
    m2: int
    m3: int
    m4: int

    def __matmul__(self, other):
        a1, a2, a3, a4 = self
        b1, b2, b3, b4 = other
        return Matrix2(
            a1 * b1 + a2 * b3,
            a1 * b2 + a2 * b4,
            a3 * b1 + a4 * b3,
            a3 * b2 + a4 * b4,
        )

    @property
    def trace(self):
        return self.m1 + self.m4

    @property
    def det(self):
        return self.m1 * self.m4 - self.m2 * self.m3


IDENTITY = Matrix2(1, 0, 0, 1)
MATRIX_A = Matrix2(1, 0, 1, 1)
MATRIX_B = Matrix2(1, 1, 0, 1)


def tilde(m: Matrix2) -> Matrix2:
    """Entry swap ((m1,m2),(m3,m4)) -> ((m4,m3),(m2,m1)).

    An involution; on two-letter words it exchanges the roles of A and B,
    i.e. tilde(word_matrix(bits)) == word_matrix(complement(bits)).
    """
    return Matrix2(m.m4, m.m3, m.m2, m.m1)


def parse_config(config) -> tuple[int, ...]:
    """Normalize a spin configuration to a tuple of 0/1 ints.

    Accepts a string like "0110" or any iterable of 0/1 values.
    """
    if isinstance(config, str):
        bits = tuple(int(ch) for ch in config)
    else:
        bits = tuple(int(b) for b in config)
    if len(bits) < 1:
        raise ValueError("spin configuration must have length >= 1")
    if any(b not in (0, 1) for b in bits):
        raise ValueError("spin configuration bits must be 0 or 1")
    return bits


def complement(config) -> tuple[int, ...]:
    return tuple(1 - b for b in parse_config(config))


def word_matrix(config) -> Matrix2:
    """Left-to-right product of A (bit 0) and B (bit 1) over the word."""
    m = IDENTITY
    for bit in parse_config(config):
        m = m @ (MATRIX_B if bit else MATRIX_A)
    return m


@dataclass(frozen=True)
class FareyLevel:
    """Level ``index`` of the mediant construction: 2^index + 1 fractions."""

    index: int
    entries: tuple[Fraction, ...]

    def __len__(self):
        return len(self.entries)


def level_zero() -> FareyLevel:
    return FareyLevel(0, (Fraction(0, 1), Fraction(1, 1)))


def next_level(level: FareyLevel) -> FareyLevel:
    """Insert the mediant between every adjacent pair; the input is unchanged.

    Mediants of unimodular neighbors are already reduced, and Python integers
    never overflow, so this is exact for any level (memory permitting).
    """
    entries = level.entries
    out = []
    for left, right in zip(entries, entries[1:]):
        out.append(left)
        out.append(
            Fraction(left.numerator + right.numerator, left.denominator + right.denominator)
        )
    out.append(entries[-1])
    return FareyLevel(level.index + 1, tuple(out))


def farey_level(n: int) -> FareyLevel:
    """Materialize level n from level 0 (costs 2^n + 1 fractions)."""
    if n < 0:
        raise ValueError("level index must be >= 0")
    level = level_zero()
    for _ in range(n):
        level = next_level(level)
    return level


def validate_level(level: FareyLevel) -> None:
    """Raise ValueError unless the level satisfies all construction invariants."""
    entries = level.entries
    if len(entries) != 2**level.index + 1:
        raise ValueError(f"level {level.index} has {len(entries)} entries")
    if entries[0] != 0 or entries[-1] != 1:
        raise ValueError("level endpoints must be 0/1 and 1/1")
    for left, right in zip(entries, entries[1:]):
        if not left < right:
            raise ValueError(f"entries not increasing at {left} >= {right}")
        uni = right.numerator * left.denominator - left.numerator * right.denominator
        if uni != 1:
            raise ValueError(f"neighbors {left}, {right} not unimodular")


def iter_level_pairs(n: int) -> Iterator[tuple[int, int, int, int]]:
    """Stream the adjacent fraction pairs of level n as (n_l, d_l, n_r, d_r).

    Depth-first, left to right, without materializing the level: memory is
    O(n), not O(2^n).  Each pair splits into (left, mediant) and
    (mediant, right) one level down.
    """
    if n < 0:
        raise ValueError("level index must be >= 0")
    stack = [(0, 1, 1, 1, n)]
    while stack:
        nl, dl, nr, dr, depth = stack.pop()
        if depth == 0:
            yield nl, dl, nr, dr
            continue
        # push right child first so the left child is emitted first
        stack.append((nl + nr, dl + dr, nr, dr, depth - 1))
        stack.append((nl, dl, nl + nr, dl + dr, depth - 1))


def chain_traces_via_farey(n: int) -> Iterator[tuple[int, int]]:
    """Stream (trace, b_count) for the 2^(n-1) chains of length n starting with A.

    Chains of length n correspond one-to-one to the adjacent fraction pairs
    of level n-1 (the level-0 pair is the chain "A" itself, trace
    d_left + n_right = 2).  Appending A keeps the left fraction and moves the
    right one to the mediant, so the trace becomes d_left + sum of numerators
    with b_count unchanged; appending B moves the left fraction to the
    mediant, so the trace becomes sum of denominators + n_right with
    b_count + 1.  Emission order is ascending appended-bit words: the k-th
    item belongs to the chain whose appended letters are the (n-1)-bit binary
    expansion of k (0=A, 1=B), matching the compiled kernels' leaf order.
    """
    if n < 1:
        raise ValueError("chain length must be >= 1")
    stack = [(0, 1, 1, 1, 0, n - 1)]
    while stack:
        nl, dl, nr, dr, b, depth = stack.pop()
        if depth == 0:
            yield dl + nr, b
            continue
        # push the B child first so the A child is emitted first
        stack.append((nl + nr, dl + dr, nr, dr, b + 1, depth - 1))
        stack.append((nl, dl, nl + nr, dl + dr, b, depth - 1))
