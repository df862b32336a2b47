"""Empirical counts over an enumerated census of cubic fields.

Field counts support arithmetic-progression and local-splitting filters.
3-torsion in quadratic class groups is counted without any class group
computation: summed over fundamental discriminants D, the torsion count
equals the number of discriminants plus twice the number of cubic fields
of discriminant D that are nowhere totally ramified.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .enumeration import CensusCache, CensusRecord, census_records, fundamental_discs
from .localdata import (
    Kind,
    LocalSpec,
    factorize,
    is_nowhere_totally_ramified,
    matches_spec,
)

MODES = ("fields", "nowhere_totally_ramified", "torsion")


class StaleCacheError(RuntimeError):
    """The loaded census does not cover the requested range."""


@dataclass(frozen=True)
class CensusQuery:
    X: int
    sign: int = 1
    m: int = 1
    a: int | None = None
    specs: tuple[LocalSpec, ...] = ()
    mode: str = "fields"

    def __post_init__(self):
        if self.X < 1:
            raise ValueError("X must be positive")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.m < 1:
            raise ValueError("modulus must be positive")
        if self.a is not None and not 0 <= self.a < self.m:
            raise ValueError("residue must satisfy 0 <= a < m")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        object.__setattr__(self, "specs", tuple(self.specs))


def is_fundamental_discriminant(D: int) -> bool:
    """D = 1 is excluded; otherwise squarefree 1 mod 4, or 4t with t
    squarefree and 2 or 3 mod 4."""
    if D == 1 or D == 0:
        return False
    if D % 4 == 1:
        return all(k == 1 for _, k in factorize(abs(D)))
    if D % 4 != 0:
        return False
    t = D // 4
    if t % 4 not in (2, 3):
        return False
    return all(k == 1 for _, k in factorize(abs(t)))


def _quadratic_residue_classes(spec: LocalSpec) -> frozenset[int]:
    """Kronecker symbol values of D at p permitted by a splitting spec.

    Unramified cubic splittings pair with the quadratic resolvent: split
    quadratic (symbol +1) goes with totally split or inert cubic, inert
    quadratic (-1) with partially split, ramified (0) with partially
    ramified.  Totally split and inert cubics share a symbol value, so a
    spec usable on the quadratic side must include both or neither.
    """
    kinds = {s.kind for s in spec.allowed}
    if any(s.subtype for s in spec.allowed):
        raise ValueError("torsion specs cannot resolve subtypes")
    if Kind.TOTALLY_RAMIFIED in kinds:
        raise ValueError("totally ramified specs have no quadratic counterpart")
    if (Kind.TOTALLY_SPLIT in kinds) != (Kind.INERT in kinds):
        raise ValueError(
            "totally split and inert share a quadratic symbol; include both or neither"
        )
    out = set()
    if Kind.TOTALLY_SPLIT in kinds:
        out.add(1)
    if Kind.PARTIALLY_SPLIT in kinds:
        out.add(-1)
    if Kind.PARTIALLY_RAMIFIED in kinds:
        out.add(0)
    return frozenset(out)


def _kronecker_mask(ds: np.ndarray, p: int, allowed: frozenset[int]) -> np.ndarray:
    if p == 2:
        sym = np.zeros(len(ds), dtype=np.int64)
        r8 = ds % 8
        sym[r8 == 1] = 1
        sym[r8 == 5] = -1
    else:
        r = ds % p
        sym = np.ones(len(ds), dtype=np.int64)
        sym[r == 0] = 0
        nonres = np.array([pow(int(v), (p - 1) // 2, p) == p - 1 for v in r])
        sym[nonres] = -1
    mask = np.zeros(len(ds), dtype=bool)
    for v in allowed:
        mask |= sym == v
    return mask


class Census:
    """Query layer over enumerated maximal classes of one sign."""

    def __init__(self, records: list[CensusRecord], X: int, sign: int):
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        self.records = records
        self.X = X
        self.sign = sign

    @classmethod
    def build(cls, X: int, sign: int = 1, cache_dir: str | None = None) -> "Census":
        if cache_dir is not None:
            records = CensusCache(cache_dir).get(X, sign)
        else:
            records = census_records(X, sign)
        return cls(records, X, sign)

    def _check(self, q: CensusQuery):
        if q.sign != self.sign:
            raise StaleCacheError(
                f"census holds sign {self.sign:+d}, query wants {q.sign:+d}"
            )
        if q.X > self.X:
            raise StaleCacheError(f"census covers |disc| <= {self.X}, query wants {q.X}")

    def _field_records(self, q: CensusQuery):
        for r in self.records:
            if not r.irreducible or abs(r.disc) > q.X:
                continue
            if q.a is not None and r.disc % q.m != q.a:
                continue
            if all(matches_spec(r.form, s) for s in q.specs):
                yield r

    def count_fields(self, q: CensusQuery) -> int:
        self._check(q)
        return sum(1 for _ in self._field_records(q))

    def count_nowhere_totally_ramified(self, q: CensusQuery) -> int:
        self._check(q)
        n = 0
        for r in self._field_records(q):
            ntr = is_nowhere_totally_ramified(r.form)
            # the two fundamental-discriminant routes must agree on every record
            assert ntr == is_fundamental_discriminant(r.disc), r
            n += ntr
        return n

    def torsion_sum(self, q: CensusQuery) -> int:
        """Sum of 3-torsion subgroup sizes (trivial class included) over the
        fundamental discriminants meeting the filters."""
        self._check(q)
        ds = fundamental_discs(q.X, q.sign)
        mask = np.ones(len(ds), dtype=bool)
        if q.a is not None:
            mask &= ds % q.m == q.a
        for spec in q.specs:
            mask &= _kronecker_mask(ds, spec.p, _quadratic_residue_classes(spec))
        n_discs = int(np.count_nonzero(mask))
        # same filters on the cubic side, restricted to fundamental Disc
        fq = CensusQuery(q.X, q.sign, q.m, q.a, q.specs, "nowhere_totally_ramified")
        return n_discs + 2 * self.count_nowhere_totally_ramified(fq)

    def count(self, q: CensusQuery) -> int:
        if q.mode == "fields":
            return self.count_fields(q)
        if q.mode == "nowhere_totally_ramified":
            return self.count_nowhere_totally_ramified(q)
        return self.torsion_sum(q)
