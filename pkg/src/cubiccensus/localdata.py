"""Local behaviour of cubic rings: maximality, splitting types, orbit tables.

A nondegenerate integral form f corresponds to a cubic ring R(f); this
module answers local questions about R(f) at a prime p.  A ring is
nonmaximal at p iff p divides the content or some GL2(Z)-translate has
p^2 | a and p | b; the translate test only ever has to be run at
multiple roots of f mod p, where the leading value mod p^2 is
independent of the chosen lift.

Splitting symbols name how p behaves in R(f) when R(f) is maximal at p:
the unramified kinds (totally split / partially split / inert), the
partially ramified kind (p || disc for p > 3) and the totally ramified
kind (p^2 | disc for p > 3).  Subtypes number the finitely many local
isomorphism classes inside the ramified kinds; at p = 2 and 3 the wildly
ramified subtypes are looked up in precomputed GL2(Z/p^e)-orbit tables.
"""

from __future__ import annotations

import csv
import gzip
import json
import math
import os
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from . import forms

_DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


class Kind(Enum):
    TOTALLY_SPLIT = "totally_split"
    PARTIALLY_SPLIT = "partially_split"
    INERT = "inert"
    PARTIALLY_RAMIFIED = "partially_ramified"
    TOTALLY_RAMIFIED = "totally_ramified"


@dataclass(frozen=True)
class SplittingSymbol:
    kind: Kind
    subtype: int = 0  # 0 means "any / not resolved further"

    def __repr__(self):
        if self.subtype:
            return f"{self.kind.value}[{self.subtype}]"
        return self.kind.value


@dataclass(frozen=True)
class LocalSpec:
    """Allowed splitting symbols at one prime."""

    p: int
    allowed: tuple[SplittingSymbol, ...]

    def permits(self, symbol: SplittingSymbol) -> bool:
        for s in self.allowed:
            if s.kind is symbol.kind and s.subtype in (0, symbol.subtype):
                return True
        return False


# ---------------------------------------------------------------------------
# Polynomial helpers mod p (degree <= 3).


def _poly_mod(coeffs, p):
    """Strip leading zeros of coeffs (highest degree first) mod p."""
    cs = [c % p for c in coeffs]
    while cs and cs[0] == 0:
        cs.pop(0)
    return cs


def _poly_divmod(f, g, p):
    f = list(f)
    inv = pow(g[0], -1, p)
    q = []
    while len(f) >= len(g):
        coef = f[0] * inv % p
        q.append(coef)
        for i in range(len(g)):
            f[i] = (f[i] - coef * g[i]) % p
        f.pop(0)
    while f and f[0] == 0:
        f.pop(0)
    return q, f


def _poly_gcd(f, g, p):
    f, g = _poly_mod(f, p), _poly_mod(g, p)
    while g:
        f, g = g, _poly_divmod(f, g, p)[1]
    if f:
        inv = pow(f[0], -1, p)
        f = [c * inv % p for c in f]
    return f


def _poly_mulmod(f, g, h, p):
    """f*g mod (h, p); coefficients highest-first, deg h >= 1."""
    prod = [0] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        if x:
            for j, y in enumerate(g):
                prod[i + j] = (prod[i + j] + x * y) % p
    return _poly_divmod(prod, h, p)[1]


def _xp_mod(h, p):
    """x^p mod (h, p)."""
    result = [1]
    base = [1, 0]
    e = p
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, h, p)
        base = _poly_mulmod(base, base, h, p)
        e >>= 1
    return result


def sqrt_mod(n, p):
    """A square root of n mod odd prime p, or None (Tonelli-Shanks)."""
    n %= p
    if n == 0:
        return 0
    if pow(n, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(n, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) == 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(n, q, p), pow(n, (q + 1) // 2, p)
    while t != 1:
        t2, i = t, 0
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def _root_count(f, p):
    """Number of roots in P^1(F_p) of the form f mod p, ignoring multiplicity."""
    a, b, c, d = (t % p for t in f)
    F = _poly_mod([a, b, c, d], p)
    n = 1 if a == 0 else 0  # root at infinity
    if not F:
        raise ValueError("form vanishes mod p")
    if len(F) == 1:
        return n
    xp = _xp_mod(F, p)
    xp_minus_x = [x for x in xp]
    # subtract x
    while len(xp_minus_x) < 2:
        xp_minus_x.insert(0, 0)
    xp_minus_x[-2] = (xp_minus_x[-2] - 1) % p
    g = _poly_gcd(F, xp_minus_x, p)
    return n + (len(g) - 1 if g else len(F) - 1)


def _multiple_roots(f, p):
    """Multiple roots of f mod p in P^1(F_p) as (root, is_triple) pairs.

    Finite roots are returned as integers, infinity as the string 'inf'.
    """
    a, b, c, d = (t % p for t in f)
    out = []
    if a == 0 and b == 0:
        # infinity has multiplicity >= 2 ... possibly 3
        out.append(("inf", c == 0))
    F = _poly_mod([a, b, c, d], p)
    if not F:
        raise ValueError("form vanishes mod p")
    if len(F) == 1:
        return out
    if p <= 3:
        deg = len(F) - 1
        for r in range(p):
            val = sum(cf * pow(r, deg - i, p) for i, cf in enumerate(F)) % p
            if val:
                continue
            # count multiplicity by synthetic division
            cs, mult = F, 0
            while cs and sum(cf * pow(r, len(cs) - 1 - i, p) for i, cf in enumerate(cs)) % p == 0:
                q, rem = _poly_divmod(cs, [1, (-r) % p], p)
                assert not rem
                cs, mult = q, mult + 1
            if mult >= 2:
                out.append((r, mult == 3))
        return out
    # p >= 5: multiplicity drops by exactly one under d/dx, so gcd(F, F')
    # is (x-r) for a double root and (x-r)^2 for a triple root
    dF = [(len(F) - 1 - i) * F[i] % p for i in range(len(F) - 1)]
    g = _poly_gcd(F, dF, p)
    if len(g) == 2:
        out.append(((-g[1]) % p, False))
    elif len(g) == 3:
        assert (g[1] * g[1] - 4 * g[2]) % p == 0, (f, p)
        r = (-g[1]) * pow(2, -1, p) % p
        out.append((r, True))
    return out


def _translate_to_zero(f, r, p):
    """Coefficients of f(x + r, 1) as a form (root r moved to 0)."""
    a, b, c, d = f
    if r == "inf":
        return forms.CubicForm(d, c, b, a)
    a2 = a
    b2 = 3 * a * r + b
    c2 = 3 * a * r * r + 2 * b * r + c
    d2 = a * r**3 + b * r * r + c * r + d
    return forms.CubicForm(a2, b2, c2, d2)


# ---------------------------------------------------------------------------
# Maximality.


def is_maximal_at(f, p: int) -> bool:
    """True iff the cubic ring of f is maximal at p (decidable mod p^2)."""
    disc = forms.discriminant(f)
    if disc == 0:
        raise forms.DegenerateFormError(f"degenerate form {f}")
    if forms.content(f) % p == 0:
        return False
    if disc % p:
        return True
    for r, _triple in _multiple_roots(f, p):
        g = _translate_to_zero(f, r if r == "inf" else int(r), p)
        # root sits at u = 0 now: value d_g mod p^2 is lift-independent
        if g.d % (p * p) == 0:
            return False
    return True


def is_maximal(f, primes=None) -> bool:
    """Maximal at every prime (only p with p^2 | disc can fail)."""
    disc = forms.discriminant(f)
    if primes is None:
        primes = [p for p, e in factorize(abs(disc)) if e >= 2]
    return all(is_maximal_at(f, p) for p in primes)


def factorize(n: int) -> list[tuple[int, int]]:
    """Trial-division factorisation, fine for |disc| <= 1e8."""
    n = abs(n)
    out = []
    for p in (2, 3):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
    q = 5
    step = 2
    while q * q <= n:
        e = 0
        while n % q == 0:
            n //= q
            e += 1
        if e:
            out.append((q, e))
        q += step
        step = 6 - step
    if n > 1:
        out.append((n, 1))
    return out


# ---------------------------------------------------------------------------
# Splitting types.


def _cubic_class_index(val: int, p: int) -> int:
    """Index 0..2 of the cubic residue class of val mod p (p = 1 mod 3)."""
    g = _primitive_root(p)
    w = pow(g, (p - 1) // 3, p)
    t = pow(val, (p - 1) // 3, p)
    if t == 1:
        return 0
    if t == w:
        return 1
    return 2


@lru_cache(maxsize=None)
def _primitive_root(p: int) -> int:
    fac = [q for q, _ in factorize(p - 1)]
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in fac):
            return g
    raise ValueError(p)


def splitting_type(f, p: int) -> SplittingSymbol:
    """Splitting symbol of the maximal ring R(f) at p."""
    if not is_maximal_at(f, p):
        raise ValueError(f"{tuple(f)} is not maximal at {p}")
    mult = _multiple_roots(f, p)
    if not mult:
        n = _root_count(f, p)
        if n == 3:
            return SplittingSymbol(Kind.TOTALLY_SPLIT)
        if n == 1:
            return SplittingSymbol(Kind.PARTIALLY_SPLIT)
        assert n == 0
        return SplittingSymbol(Kind.INERT)
    triple = any(t for _, t in mult)
    disc = forms.discriminant(f)
    if p in (2, 3):
        kind = Kind.TOTALLY_RAMIFIED if triple else Kind.PARTIALLY_RAMIFIED
        return SplittingSymbol(kind, _wild_subtype(f, p, kind))
    if not triple:
        # p || disc; the two subtypes are the quadratic classes of disc/p
        unit = disc // p % p
        sub = 1 if pow(unit, (p - 1) // 2, p) == 1 else 2
        return SplittingSymbol(Kind.PARTIALLY_RAMIFIED, sub)
    if p % 3 == 2:
        return SplittingSymbol(Kind.TOTALLY_RAMIFIED, 1)
    # p = 1 mod 3: three classes Z_p[x]/(x^3 + ap), indexed by the cubic
    # class of a; moving the triple root to u = 0 realises a = a_g^2 d_g / p
    r = [r for r, t in mult if t][0]
    g = _translate_to_zero(f, r if r == "inf" else int(r), p)
    # local ring is Z_p[x]/(x^3 + ap) with a = a_g^2 d_g / p  (p || d_g here)
    val = g.a * g.a * (g.d // p) % p
    assert val, (tuple(f), p)
    return SplittingSymbol(Kind.TOTALLY_RAMIFIED, 1 + _cubic_class_index(val, p))


def is_in_vp(f, p: int) -> bool:
    """Maximal at p and not totally ramified at p."""
    if not is_maximal_at(f, p):
        return False
    return splitting_type(f, p).kind is not Kind.TOTALLY_RAMIFIED


def is_nowhere_totally_ramified(f) -> bool:
    disc = forms.discriminant(f)
    return all(is_in_vp(f, p) for p, _ in factorize(abs(disc)))


def matches_spec(f, spec: LocalSpec) -> bool:
    return spec.permits(splitting_type(f, spec.p))


# ---------------------------------------------------------------------------
# Wild subtypes at p = 2, 3 via orbit tables mod p^e.

ORBIT_LEVELS = {2: 4, 3: 3}

# stable numbering of the wild ramified local rings
WILD_ROWS = {
    2: {
        # partially ramified: Z_2 x (quadratic of disc D); key (v2(D), unit mod 8)
        (Kind.PARTIALLY_RAMIFIED, 2, 7): 1,  # x^2 + 2x + 2, D = -4
        (Kind.PARTIALLY_RAMIFIED, 2, 3): 2,  # x^2 + 2x - 2, D = 12
        (Kind.PARTIALLY_RAMIFIED, 3, 1): 3,  # x^2 - 2,      D = 8
        (Kind.PARTIALLY_RAMIFIED, 3, 3): 4,  # x^2 - 6,      D = 24
        (Kind.PARTIALLY_RAMIFIED, 3, 7): 5,  # x^2 + 2,      D = -8
        (Kind.PARTIALLY_RAMIFIED, 3, 5): 6,  # x^2 + 6,      D = -24
        (Kind.TOTALLY_RAMIFIED,): 1,
    },
}


def _residue_index(f, p: int, e: int) -> int:
    m = p**e
    a, b, c, d = (t % m for t in f)
    return ((a * m + b) * m + c) * m + d


@dataclass
class OrbitTable:
    """Per-residue local data mod p^e: maximality, kind and subtype."""

    p: int
    e: int
    maximal: "object"  # numpy uint8 arrays indexed by residue code
    kind: "object"
    subtype: "object"
    orbit_sizes: dict

    def lookup(self, f) -> tuple[bool, Kind | None, int]:
        i = _residue_index(f, self.p, self.e)
        m = bool(self.maximal[i])
        k = _KIND_CODES_INV[int(self.kind[i])] if m else None
        return m, k, int(self.subtype[i])


_KIND_CODES = {
    Kind.TOTALLY_SPLIT: 1,
    Kind.PARTIALLY_SPLIT: 2,
    Kind.INERT: 3,
    Kind.PARTIALLY_RAMIFIED: 4,
    Kind.TOTALLY_RAMIFIED: 5,
}
_KIND_CODES_INV = {v: k for k, v in _KIND_CODES.items()}


def _v(n: int, p: int) -> int:
    e = 0
    while n % p == 0 and n != 0:
        n //= p
        e += 1
    return e


def _wild_subtype_from_invariants(f, p: int):
    """Subtype of a wild maximal ramified ring from exact invariants.

    Returns the subtype, or None when the invariants do not separate the
    classes (the two v3-in-{4,5} triples at p=3, where the residue mod 27
    itself is needed).
    """
    disc = forms.discriminant(f)
    v = _v(disc, p)
    unit = disc // p**v
    if p == 2:
        mult = _multiple_roots(f, 2)
        triple = any(t for _, t in mult)
        if triple:
            return 1
        return WILD_ROWS[2][(Kind.PARTIALLY_RAMIFIED, v, unit % 8)]
    # p = 3
    mult = _multiple_roots(f, 3)
    triple = any(t for _, t in mult)
    if not triple:
        # Z_3 x quadratic of disc +-12: subtype by the square class of disc/3
        return 1 if unit % 3 == 1 else 2
    if v == 3:
        # x^3 + 3x + 3 (disc -27*13) vs x^3 - 3x + 3 (disc -27*5)
        return 1 if (-unit) % 3 == 1 else 2
    if v == 4 and (unit % 3) != 1:
        return 3  # x^3 + 3x^2 + 3
    return None


def _wild_subtype(f, p: int, kind: Kind) -> int:
    sub = _wild_subtype_from_invariants(f, p)
    if sub is not None:
        return sub
    table = load_orbit_table(p)
    m, k, s = table.lookup(f)
    assert m and k is kind, (tuple(f), p, kind, k)
    return s


# seed forms pinning the two p = 3 triples; rings Z_3[x]/(seed)
_P3_TRIPLE_SEEDS = {
    # x^3 - 3x^2 + 3u: cyclic cubic rings, subtype 4, 5, 6 for u = 1, 4, 7
    (1, -3, 0, 3): 4,
    (1, -3, 0, 12): 5,
    (1, -3, 0, 21): 6,
    # x^3 + 3u: subtype 7, 8, 9 for u = 1, 4, 7
    (1, 0, 0, 3): 7,
    (1, 0, 0, 12): 8,
    (1, 0, 0, 21): 9,
}


def build_orbit_table(p: int, e: int) -> OrbitTable:
    """Compute the GL2(Z/p^e)-orbit table of forms mod p^e with labels."""
    import numpy as np

    m = p**e
    n = m**4
    idx = np.arange(n, dtype=np.int64)
    d = idx % m
    c = idx // m % m
    b = idx // (m * m) % m
    a = idx // (m * m * m) % m

    def act_perm(r, s, t, u):
        det = (r * u - s * t) % m
        inv = pow(int(det), -1, m)
        a2 = (a * r**3 + b * r * r * s + c * r * s * s + d * s**3) % m
        b2 = (
            3 * a * r * r * t
            + b * (r * r * u + 2 * r * s * t)
            + c * (2 * r * s * u + s * s * t)
            + 3 * d * s * s * u
        ) % m
        c2 = (
            3 * a * r * t * t
            + b * (s * t * t + 2 * r * t * u)
            + c * (r * u * u + 2 * s * t * u)
            + 3 * d * s * u * u
        ) % m
        d2 = (a * t**3 + b * t * t * u + c * t * u * u + d * u**3) % m
        return (
            ((a2 * inv % m) * m**3 + (b2 * inv % m) * m * m + (c2 * inv % m) * m + (d2 * inv % m))
        ).astype(np.int64)

    gens = [act_perm(0, 1, -1, 0), act_perm(1, 0, 1, 1)]
    if p == 2:
        gens.append(act_perm(m - 1, 0, 0, 1))
        gens.append(act_perm(5, 0, 0, 1))
    else:
        gens.append(act_perm(2, 0, 0, 1))  # 2 generates (Z/3^e)*

    label = idx.copy()
    changed = True
    while changed:
        changed = False
        for perm in gens:
            np.minimum.at(label, perm, label)
            pulled = label[perm]
            mask = pulled < label
            if mask.any():
                label[mask] = pulled[mask]
                changed = True

    seed_subtype = {}
    if p == 3:
        for seed, sub in _P3_TRIPLE_SEEDS.items():
            seed_subtype[int(label[_residue_index(seed, p, e)])] = sub

    reps, inverse, counts = np.unique(label, return_inverse=True, return_counts=True)
    orbit_sizes = {}
    rep_max = np.zeros(len(reps), dtype=np.uint8)
    rep_kind = np.zeros(len(reps), dtype=np.uint8)
    rep_sub = np.zeros(len(reps), dtype=np.uint8)
    for j, rep in enumerate(reps):
        ridx = int(rep)
        fa, fb, fc, fd = (
            ridx // m**3 % m,
            ridx // (m * m) % m,
            ridx // m % m,
            ridx % m,
        )
        lab = _label_orbit(forms.CubicForm(fa, fb, fc, fd), p, e, seed_subtype.get(ridx))
        if lab is None:
            continue
        k, s = lab
        rep_max[j] = 1
        rep_kind[j] = _KIND_CODES[k]
        rep_sub[j] = s
        key = (k.value, s)
        orbit_sizes[key] = orbit_sizes.get(key, 0) + int(counts[j])
    return OrbitTable(p, e, rep_max[inverse], rep_kind[inverse], rep_sub[inverse], orbit_sizes)


def _label_orbit(f, p: int, e: int, trio_sub=None):
    """Label one orbit representative mod p^e; None if nonmaximal/degenerate.

    trio_sub resolves the p=3 totally ramified triples whose members share
    all integral invariants; it is matched by component against the seeds.
    """
    m = p**e
    lift = _nondegenerate_lift(f, m)
    if lift is None or not is_maximal_at(lift, p):
        return None
    mult = _multiple_roots(lift, p)
    if not mult:
        n = _root_count(lift, p)
        kind = {3: Kind.TOTALLY_SPLIT, 1: Kind.PARTIALLY_SPLIT, 0: Kind.INERT}[n]
        return kind, 0
    triple = any(t for _, t in mult)
    kind = Kind.TOTALLY_RAMIFIED if triple else Kind.PARTIALLY_RAMIFIED
    sub = _wild_subtype_from_invariants(lift, p)
    if sub is None:
        assert trio_sub is not None, (tuple(f), p)
        sub = trio_sub
    # stability: several lifts must agree on the invariants
    for k in (1, 2, 3):
        other = forms.CubicForm(lift.a + k * m, lift.b, lift.c - k * m, lift.d)
        if forms.discriminant(other) == 0:
            continue
        assert is_maximal_at(other, p)
        assert _wild_subtype_from_invariants(other, p) == _wild_subtype_from_invariants(lift, p)
    return kind, sub


def _nondegenerate_lift(f, m):
    a, b, c, d = f
    for da in (0, m, 2 * m):
        for dd in (0, m, 2 * m):
            g = forms.CubicForm(a + da, b, c, d + dd)
            if forms.discriminant(g) != 0:
                return g
    return None


def _table_path(p: int) -> str:
    return os.path.join(_DATA_DIR, f"orbits_p{p}_e{ORBIT_LEVELS[p]}.csv.gz")


def save_orbit_table(table: OrbitTable) -> None:
    os.makedirs(_DATA_DIR, exist_ok=True)
    path = _table_path(table.p)
    with gzip.open(path, "wt", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["maximal", "kind", "subtype"])
        for i in range(len(table.maximal)):
            w.writerow([int(table.maximal[i]), int(table.kind[i]), int(table.subtype[i])])
    meta = {
        "p": table.p,
        "e": table.e,
        "orbit_sizes": {f"{k[0]}:{k[1]}": v for k, v in table.orbit_sizes.items()},
    }
    with open(os.path.join(_DATA_DIR, f"orbits_p{table.p}_meta.json"), "w") as fh:
        json.dump(meta, fh, indent=1, sort_keys=True)


@lru_cache(maxsize=None)
def load_orbit_table(p: int) -> OrbitTable:
    import numpy as np

    e = ORBIT_LEVELS[p]
    path = _table_path(p)
    if not os.path.exists(path):
        table = build_orbit_table(p, e)
        save_orbit_table(table)
        return table
    n = (p**e) ** 4
    maximal = np.zeros(n, dtype=np.uint8)
    kind = np.zeros(n, dtype=np.uint8)
    subtype = np.zeros(n, dtype=np.uint8)
    with gzip.open(path, "rt") as fh:
        r = csv.reader(fh)
        next(r)
        for i, row in enumerate(r):
            maximal[i] = int(row[0])
            kind[i] = int(row[1])
            subtype[i] = int(row[2])
    with open(os.path.join(_DATA_DIR, f"orbits_p{p}_meta.json")) as fh:
        meta = json.load(fh)
    sizes = {}
    for k, v in meta["orbit_sizes"].items():
        kindname, sub = k.rsplit(":", 1)
        sizes[(kindname, int(sub))] = v
    return OrbitTable(p, e, maximal, kind, subtype, sizes)
