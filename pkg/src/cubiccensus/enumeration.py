"""Complete enumeration of cubic form classes ordered by discriminant.

Produces exactly one canonical representative per GL2(Z)-class of
nondegenerate integral binary cubic forms with 0 < +-disc <= X.  The
loops run over the reduction domain of ``forms.reduce`` directly:

* disc > 0, a > 0: the Hessian (P, Q, R) satisfies 0 < P <= sqrt(disc),
  |Q| <= P <= R, which pins a <= (2/3)^(3/2) X^(1/4),
  b <= 3a/2 + X^(1/4), 1 <= P <= sqrt(X) (the c-window) and a d-window
  of width 2P/(9a).
* disc < 0, a > 0: the real root theta of f(x, 1) and the quadratic
  factor x^2 + px + q obey |p| <= 1, q >= 1, giving
  a <= (16X/27)^(1/4), q <= (16X/(27 a^4))^(1/3),
  |theta| <= 1/2 + (X/(3a^4))^(1/4) and a quadratic d-window from
  disc(f) >= -X.
* a = 0 (the class of forms with a root at infinity): |c| <= b <= X^(1/4)
  with R >= P = b^2 (disc > 0) resp. b <= d (disc < 0).

Interior points of the domain admit exactly one other domain
representative (the mirror (a, -b, c, -d), or (0, b, -c, d) when a = 0),
so a sign rule on (b, d) resp. c accepts each interior class once with
no reduction step at all.  Boundary points are funnelled through
``forms.reduce`` and deduplicated.

The derivations of all loop bounds are written out in
docs/enumeration-bounds.md.
"""

from __future__ import annotations

import csv
import gzip
import math
import os
import re
from dataclasses import dataclass

import numpy as np

from . import forms, localdata
from .forms import CubicForm


def _cdiv(n: int, m: int) -> int:
    """ceil(n / m) for m > 0."""
    return -((-n) // m)


def primes_up_to(n: int) -> np.ndarray:
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for q in range(2, math.isqrt(n) + 1):
        if sieve[q]:
            sieve[q * q :: q] = False
    return np.nonzero(sieve)[0]


def squarefree_mask(n: int) -> np.ndarray:
    mask = np.ones(n + 1, dtype=bool)
    mask[0] = False
    for q in range(2, math.isqrt(n) + 1):
        mask[q * q :: q * q] = False
    return mask


# ---------------------------------------------------------------------------
# Class enumeration.


def _emit(a, b, c, d_arr, acc, bnd, interior, boundary):
    for dv in d_arr[acc]:
        interior.append(CubicForm(a, b, c, int(dv)))
    for dv in d_arr[bnd]:
        boundary.append(CubicForm(a, b, c, int(dv)))


def _classes_pos(X, interior, boundary):
    sX = math.isqrt(X)
    xq = X**0.25
    amax = int((2.0 / 3.0) ** 1.5 * xq) + 1
    for a in range(1, amax + 1):
        bmax = int(1.5 * a + xq) + 1
        a3, a9 = 3 * a, 9 * a
        for b in range(0, bmax + 1):
            cmin = _cdiv(b * b - sX, a3)
            cmax = (b * b - 1) // a3
            for c in range(cmin, cmax + 1):
                P = b * b - a3 * c
                lo = _cdiv(b * c - P, a9)
                hi = (b * c + P) // a9
                if b > 0:
                    hi = min(hi, (c * c - P) // (3 * b))
                elif c * c < P:  # b = 0: R = c^2 must still dominate P
                    continue
                if lo > hi:
                    continue
                d = np.arange(lo, hi + 1, dtype=np.int64)
                D = (
                    18 * a * b * c * d
                    + b * b * c * c
                    - 4 * a * c**3
                    - 4 * b**3 * d
                    - 27 * a * a * d * d
                )
                Q = b * c - a9 * d
                R = c * c - 3 * b * d
                ok = (D >= 1) & (D <= X) & (np.abs(Q) <= P) & (R >= P)
                if not ok.any():
                    continue
                inner = ok & (np.abs(Q) < P) & (R > P)
                acc = inner if b > 0 else inner & (d >= 0)
                _emit(a, b, c, d, acc, ok & ~inner, interior, boundary)
    # a = 0: disc = b^2 (c^2 - 4bd), Hessian (b^2, bc, c^2 - 3bd).  The
    # |c| = b boundary only identifies c with -c at the same d, so the
    # c <= 0 rule already picks one representative; only R = P forms can
    # carry extra identifications and go through the generic reduction.
    for b in range(1, int(xq) + 2):
        b3 = 4 * b**3
        for c in range(-b, b + 1):
            hi = min((c * c - b * b) // (3 * b), (b * b * c * c - 1) // b3)
            lo = _cdiv(b * b * c * c - X, b3)
            if lo > hi:
                continue
            d = np.arange(lo, hi + 1, dtype=np.int64)
            D = b * b * c * c - b3 * d
            R = c * c - 3 * b * d
            ok = (D >= 1) & (D <= X) & (R >= b * b)
            if not ok.any():
                continue
            edge = ok & (R == b * b)
            acc = (ok & ~edge) if c <= 0 else np.zeros_like(ok)
            _emit(0, b, c, d, acc, edge, interior, boundary)


def _classes_neg(X, interior, boundary):
    x4 = (X / 3.0) ** 0.25
    amax = int((16.0 * X / 27.0) ** 0.25) + 1
    for a in range(1, amax + 1):
        bmax = int(1.5 * a + x4) + 1
        for b in range(0, bmax + 1):
            cmin = math.floor(a / 2.0 - x4) - 1
            cmax = int((16.0 * X / (27.0 * a)) ** (1.0 / 3.0) + a / 2.0 + x4) + 1
            for c in range(cmin, cmax + 1):
                beta = 18 * a * b * c - 4 * b**3
                gamma = b * b * c * c - 4 * a * c**3
                disc_d = beta * beta + 108 * a * a * (gamma + X)
                if disc_d < 0:
                    continue
                s = math.isqrt(disc_d)
                lo = (beta - s) // (54 * a * a) - 1
                hi = (beta + s) // (54 * a * a) + 2
                d = np.arange(lo, hi + 1, dtype=np.int64)
                D = -27 * a * a * d * d + beta * d + gamma
                ok = (D <= -1) & (D >= -X)
                if not ok.any():
                    continue
                am, ap = a - b, -(a + b)
                F1 = a * am**3 + b * am * am * a + c * am * a * a + d * a**3
                F2 = a * ap**3 + b * ap * ap * a + c * ap * a * a + d * a**3
                delta = b * b - 4 * a * (c - a)
                t = 2 * d - b
                if delta < 0:
                    okq = np.ones_like(ok)
                    eqq = np.zeros_like(ok)
                else:
                    okq = t * t >= delta
                    eqq = t * t == delta
                ok &= (F1 >= 0) & (F2 <= 0) & okq
                if not ok.any():
                    continue
                inner = ok & (F1 > 0) & (F2 < 0) & ~eqq
                acc = inner if b > 0 else inner & (d >= 0)
                _emit(a, b, c, d, acc, ok & ~inner, interior, boundary)
    # a = 0: disc = b^2 (c^2 - 4bd) < 0, domain |c| <= b <= d.  These are
    # Gauss-reduced definite quadratics times v; every boundary
    # identification (|c| = b via translation, d = b via inversion) only
    # flips the sign of c, so c <= 0 selects the canonical form outright.
    for b in range(1, int(x4) + 2):
        b3 = 4 * b**3
        for c in range(-b, 1):
            lo = max(b, _cdiv(b * b * c * c + 1, b3))
            hi = (b * b * c * c + X) // b3
            if lo > hi:
                continue
            d = np.arange(lo, hi + 1, dtype=np.int64)
            D = b * b * c * c - b3 * d
            ok = (D <= -1) & (D >= -X)
            _emit(0, b, c, d, ok, np.zeros_like(ok), interior, boundary)


def enumerate_forms(X: int, sign: int = 1) -> list[CubicForm]:
    """Canonical representatives of all classes with 0 < sign*disc <= X.

    Sorted by (|disc|, a, b, c, d); includes reducible and nonmaximal
    classes.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if not 1 <= X <= forms.DISC_BOUND:
        raise ValueError(f"X must be in [1, {forms.DISC_BOUND}]")
    interior: list[CubicForm] = []
    boundary: list[CubicForm] = []
    if sign == 1:
        _classes_pos(X, interior, boundary)
    else:
        _classes_neg(X, interior, boundary)
    out = set(interior)
    assert len(out) == len(interior), "interior representative appeared twice"
    for f in boundary:
        out.add(forms.reduce(f))
    return sorted(out, key=lambda f: (abs(forms.discriminant(f)),) + tuple(f))


def bruteforce_classes(X: int, sign: int = 1) -> set[CubicForm]:
    """Oracle: reduce every form in a coefficient box covering the domain.

    The box is padded past the documented bounds so that a bound error
    would show up as a class the main enumeration misses.
    """
    sX = math.isqrt(X)
    xq = X**0.25
    amax = int((16.0 * X / 27.0) ** 0.25) + 2
    bmax = int(1.5 * amax + xq) + 3
    cmax = max(int((bmax * bmax + sX) / 3) + 3, int((16.0 * X / 27.0) ** (1.0 / 3.0)) + bmax + 3)
    dmax = max(
        (bmax * cmax + sX) // 9 + 3,
        int(((16.0 * X / 27.0) ** (1.0 / 3.0) / 1.0) * (0.5 + (X / 3.0) ** 0.25)) + 3,
        (X + 1) // 4 + bmax + 3,
    )
    found: set[CubicForm] = set()
    d = np.arange(-dmax, dmax + 1, dtype=np.int64)
    for a in range(0, amax + 1):
        for b in range(-bmax, bmax + 1):
            for c in range(-cmax, cmax + 1):
                D = (
                    18 * a * b * c * d
                    + b * b * c * c
                    - 4 * a * c**3
                    - 4 * b**3 * d
                    - 27 * a * a * d * d
                )
                ok = (D * sign >= 1) & (D * sign <= X)
                for dv in d[ok]:
                    found.add(forms.reduce(CubicForm(a, b, c, int(dv))))
    return found


# ---------------------------------------------------------------------------
# Census records: the maximal classes, flagged.


@dataclass(frozen=True)
class CensusRecord:
    disc: int
    form: CubicForm
    irreducible: bool
    galois: bool

    @property
    def sign(self) -> int:
        return 1 if self.disc > 0 else -1


def _maximal_mask(cols: np.ndarray, discs: np.ndarray, X: int) -> np.ndarray:
    """Vectorised maximality: only p with p^2 | disc can obstruct."""
    mask = np.ones(len(discs), dtype=bool)
    for p in primes_up_to(math.isqrt(X)):
        p2 = int(p) * int(p)
        rows = np.nonzero(mask & (discs % p2 == 0))[0]
        for i in rows:
            f = CubicForm(*(int(t) for t in cols[i]))
            if not localdata.is_maximal_at(f, int(p)):
                mask[i] = False
    return mask


def census_records(X: int, sign: int = 1) -> list[CensusRecord]:
    """All maximal classes with 0 < sign*disc <= X, flagged and sorted."""
    reps = enumerate_forms(X, sign)
    if not reps:
        return []
    cols = np.array(reps, dtype=np.int64)
    a, b, c, d = cols.T
    discs = (
        18 * a * b * c * d + b * b * c * c - 4 * a * c**3 - 4 * b**3 * d - 27 * a * a * d * d
    )
    keep = _maximal_mask(cols, discs, X)
    out = []
    for i in np.nonzero(keep)[0]:
        f = reps[i]
        disc = int(discs[i])
        irr = forms.is_irreducible(f)
        gal = irr and sign == 1 and math.isqrt(disc) ** 2 == disc
        out.append(CensusRecord(disc, f, irr, gal))
    return out


# ---------------------------------------------------------------------------
# CSV cache of census records.


class CensusCache:
    """gzip CSV store of census records, reusable for any smaller cutoff."""

    def __init__(self, directory: str):
        self.directory = directory
        os.makedirs(directory, exist_ok=True)

    def _path(self, X: int, sign: int) -> str:
        tag = "p" if sign == 1 else "m"
        return os.path.join(self.directory, f"census_{tag}_{X}.csv.gz")

    def _cached_cutoffs(self, sign: int) -> list[int]:
        tag = "p" if sign == 1 else "m"
        pat = re.compile(rf"census_{tag}_(\d+)\.csv\.gz$")
        out = []
        for name in os.listdir(self.directory):
            m = pat.match(name)
            if m:
                out.append(int(m.group(1)))
        return sorted(out)

    def save(self, records: list[CensusRecord], X: int, sign: int) -> str:
        path = self._path(X, sign)
        with gzip.open(path, "wt", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["sign", "disc", "a", "b", "c", "d", "galois", "irreducible"])
            for r in records:
                w.writerow(
                    [r.sign, r.disc, r.form.a, r.form.b, r.form.c, r.form.d,
                     int(r.galois), int(r.irreducible)]
                )
        return path

    def load(self, X: int, sign: int) -> list[CensusRecord] | None:
        for cutoff in self._cached_cutoffs(sign):
            if cutoff < X:
                continue
            out = []
            with gzip.open(self._path(cutoff, sign), "rt") as fh:
                r = csv.reader(fh)
                next(r)
                for row in r:
                    disc = int(row[1])
                    if abs(disc) > X:
                        break  # rows are sorted by |disc|
                    f = CubicForm(int(row[2]), int(row[3]), int(row[4]), int(row[5]))
                    out.append(CensusRecord(disc, f, bool(int(row[7])), bool(int(row[6]))))
            return out
        return None

    def get(self, X: int, sign: int) -> list[CensusRecord]:
        cached = self.load(X, sign)
        if cached is not None:
            return cached
        records = census_records(X, sign)
        self.save(records, X, sign)
        return records


# ---------------------------------------------------------------------------
# Fundamental discriminants of quadratic fields.


def fundamental_discs(X: int, sign: int = 1) -> np.ndarray:
    """Signed fundamental discriminants D with 0 < sign*D <= X (D != 1)."""
    sf = squarefree_mask(X)
    n = np.arange(X + 1)
    if sign == 1:
        one = n[(n % 4 == 1) & sf & (n > 1)]
        k = np.arange(X // 4 + 1)
        four = 4 * k[(sf[: X // 4 + 1]) & ((k % 4 == 2) | (k % 4 == 3))]
        return np.sort(np.concatenate([one, four]))
    one = n[(n % 4 == 3) & sf]
    k = np.arange(X // 4 + 1)
    four = 4 * k[(sf[: X // 4 + 1]) & ((k % 4 == 1) | (k % 4 == 2))]
    return -np.sort(np.concatenate([one, four]))[::-1]


def count_fundamental_discs(X: int, sign: int = 1, m: int = 1, a: int = 0) -> int:
    ds = fundamental_discs(X, sign)
    if m == 1:
        return len(ds)
    return int(np.count_nonzero(ds % m == a % m))


def _e_odd(a: int, p: int, k: int) -> float:
    if a % p:
        return 1.0
    if k >= 2:
        return 1.0 if a % (p * p) else 0.0
    return 1.0 - 1.0 / p


def _e_two(a: int) -> float:
    if a % 4 == 1:
        return 1.0
    if a % 16 in (8, 12):
        return 1.0
    return 0.0


def fundamental_ap_density(m: int, a: int) -> float:
    """lambda with #{0 < sign*D <= X fundamental, D = a mod m} ~ lambda X.

    The same constant applies to either sign.  Computed by summing the
    squarefree-progression count over residues mod lcm(m, 64), where the
    local factor at an odd prime p^k || m is e(a, p^k)/(1 - p^-2) and at
    2 selects the residues 1 mod 4 and 8, 12 mod 16.
    """
    M = m * 64 // math.gcd(m, 64)
    odd = [(p, k) for p, k in localdata.factorize(M) if p > 2]
    total = 0.0
    for A in range(a % m, M, m):
        term = _e_two(A)
        for p, k in odd:
            term *= _e_odd(A, p, k) / (1.0 - p**-2)
        total += term
    return 8.0 / (math.pi**2 * M) * total
