"""Decide solvability of a0 + sum(n_a * a_a) = a0' + sum(n_b' * a_b') over
non-negative integers.

The decision is split into five mutually exclusive cases on (mu, nu, c) with
c = a0 - a0'.  Only the cases with exactly one non-empty coefficient list can
require an explicit search; that search asks whether |c| is a non-negative
integer combination of the coefficients and is answered by a pseudo-polynomial
reachable-sums table, after a gcd test and a Frobenius-style shortcut that
often settles the question without any search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .summary_mwdg import ConeTuple


@dataclass(frozen=True)
class SolvabilityInstance:
    lhs: ConeTuple
    rhs: ConeTuple

    @property
    def c(self) -> int:
        return self.lhs.a0 - self.rhs.a0

    @cached_property
    def g_a(self) -> int:
        # gcd of the lhs coefficients; never read when the list is empty
        return math.gcd(*self.lhs.coeffs)

    @cached_property
    def g_a_prime(self) -> int:
        return math.gcd(*self.rhs.coeffs)

    @cached_property
    def g_aa_prime(self) -> int:
        return math.gcd(self.g_a, self.g_a_prime)


def case_number(inst: SolvabilityInstance) -> int:
    """Which of the five decision cases applies; 2 and 4 are the search cases."""
    mu, nu, c = len(inst.lhs.coeffs), len(inst.rhs.coeffs), inst.c
    if mu == 0 and nu == 0:
        return 1
    if mu == 0 and nu != 0:
        return 2 if c > 0 else 3
    if mu != 0 and nu == 0:
        return 3 if c >= 0 else 4
    return 5


def frobenius_upper_bound(coeffs: Sequence[int]) -> int:
    """(min - 1) * (max - 1): an upper bound, due to Schur and Brauer, on one
    plus the largest integer not representable by coprime positive ``coeffs``."""
    if not coeffs:
        raise ValueError("frobenius_upper_bound needs at least one coefficient")
    return (min(coeffs) - 1) * (max(coeffs) - 1)


def bounded_representable(c: int, coeffs: Sequence[int]) -> bool:
    """Whether c > 0 is a non-negative integer combination of positive ``coeffs``.

    Reachable sums in [0, c] are tracked as bits of an integer; adding a
    coefficient repeatedly is a shift-or until fixpoint.
    """
    if c <= 0 or not coeffs:
        raise ValueError("bounded_representable requires c > 0 and coefficients")
    mask = (1 << (c + 1)) - 1
    reach = 1  # bit k set <=> k is a reachable sum
    for a in coeffs:
        while True:
            grown = reach | ((reach << a) & mask)
            if grown == reach:
                break
            reach = grown
    return bool(reach >> c & 1)


def _representable(c: int, coeffs: Sequence[int]) -> bool:
    """Search branch shared by cases 2 and 4 (c > 0)."""
    g = math.gcd(*coeffs)
    if c % g != 0:
        return False
    reduced = [a // g for a in coeffs]
    if c // g >= frobenius_upper_bound(reduced):
        return True
    return bounded_representable(c, coeffs)


def has_nonneg_solution(inst: SolvabilityInstance) -> bool:
    case = case_number(inst)
    if case in (1, 3):
        return inst.c == 0
    if case == 2:
        return _representable(inst.c, inst.rhs.coeffs)
    if case == 4:
        return _representable(-inst.c, inst.lhs.coeffs)
    return inst.c % inst.g_aa_prime == 0


def cone_contains(t: ConeTuple, value: int) -> bool:
    """Membership of an integer in the affine cone indexed by ``t``."""
    if value == t.a0:
        return True
    if value < t.a0 or not t.coeffs:
        return False
    return bounded_representable(value - t.a0, t.coeffs)
