"""Hassett divisor labels of the surfaces cut on cubic fourfolds, and admissibility."""
from __future__ import annotations

from dataclasses import dataclass

from .invariants import Profile, delta_invariant
from .tables import table2


def _odd_prime_factors(m: int) -> set[int]:
    out = set()
    m = abs(m)
    while m % 2 == 0 and m:
        m //= 2
    p = 3
    while p * p <= m:
        while m % p == 0:
            out.add(p)
            m //= p
        p += 2
    if m > 1:
        out.add(m)
    return out


def kuznetsov_admissible(delta: int) -> bool:
    """Even, above 6, and divisible neither by 4, nor 9, nor any odd prime ``p = 2 mod 3``."""
    if delta <= 6 or delta % 2 or delta % 4 == 0 or delta % 9 == 0:
        return False
    return all(p % 3 != 2 for p in _odd_prime_factors(delta))


def admissible_values(start: int, count: int) -> list[int]:
    out, v = [], start
    while len(out) < count:
        if kuznetsov_admissible(v):
            out.append(v)
        v += 1
    return out


@dataclass(frozen=True)
class FourfoldRecord:
    source: str
    delta: int
    admissible: bool
    stored_delta: int
    reference_cohomology: tuple[int, int, int] | None = None

    @property
    def matches(self) -> bool:
        return self.delta == self.stored_delta


class DeltaMismatch(RuntimeError):
    pass


def table2_report(strict: bool = True) -> list[FourfoldRecord]:
    """Recompute the delta column from each row's profile.

    Raises :class:`DeltaMismatch` on the first disagreement when ``strict``.
    """
    out = []
    for row in table2():
        lam, g, Delta, d, a = row.profile
        dv = delta_invariant(Profile(lam, g, Delta, d, a))
        rec = FourfoldRecord(row.id, dv, kuznetsov_admissible(dv), row.delta, row.cohomology)
        if strict and not rec.matches:
            raise DeltaMismatch(f"{row.id}: computed delta {dv}, stored {row.delta}")
        out.append(rec)
    return out
