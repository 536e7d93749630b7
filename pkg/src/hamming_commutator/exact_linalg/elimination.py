"""Reduced row echelon forms of integer matrices, computed exactly.

Two engines produce the same :class:`Echelon`:

* :func:`rref_bareiss` is fraction-free Gauss-Jordan elimination on Python
  ints, pivoting on the first nonzero entry of each column.
* :func:`rref_modular` eliminates modulo word-sized primes with int64 numpy
  arithmetic, lifts the echelon form by CRT plus rational reconstruction, and
  then certifies the lift by checking ``M @ K == 0`` exactly for the kernel
  basis ``K`` read off the candidate form. Pivot columns found mod p are
  independent over Q, so a certified kernel of size ``n - rank_p`` pins the
  rational rank and makes the candidate the unique RREF.

:func:`rref` picks an engine by size. Both return identical results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .matrix import int_matmul

# Bareiss is used at or below this many entries; the modular engine above it
BAREISS_MAX_ENTRIES = 1600
MAX_PRIMES = 40


@dataclass(frozen=True)
class Echelon:
    """Nonzero rows of an RREF, stored as ``num / den``.

    ``num[k, pivots[k]] == den`` for every pivot row ``k``.
    """

    num: np.ndarray
    den: int
    pivots: tuple[int, ...]
    ncols: int

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def free_columns(self) -> list[int]:
        piv = set(self.pivots)
        return [c for c in range(self.ncols) if c not in piv]

    def kernel_basis(self) -> np.ndarray:
        """Integer null-space basis, one primitive column per free column."""
        free = self.free_columns
        k = np.zeros((self.ncols, len(free)), dtype=object)
        for t, f in enumerate(free):
            k[f, t] = self.den
            for row, p in enumerate(self.pivots):
                k[p, t] = -self.num[row, f]
            g = math.gcd(*(int(v) for v in k[:, t]))
            if g > 1:
                k[:, t] //= g
        return k


def _normalized(num: np.ndarray, den: int, pivots, ncols: int) -> Echelon:
    if den < 0:
        num, den = -num, -den
    g = math.gcd(den, *(int(v) for v in num.flat)) if num.size else den
    if g > 1:
        num = num // g
        den //= g
    return Echelon(num, den, tuple(pivots), ncols)


def _empty(ncols: int) -> Echelon:
    return Echelon(np.zeros((0, ncols), dtype=object), 1, (), ncols)


def rref_bareiss(m: np.ndarray) -> Echelon:
    m = np.array(m, dtype=object)
    nrows, ncols = m.shape
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(m[r:, c] != 0)
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            m[[r, p]] = m[[p, r]]
        piv = m[r, c]
        row = m[r].copy()
        col = m[:, c].copy()
        col[r] = 0
        # fraction-free update: every entry stays an integer minor
        m = (piv * m - np.outer(col, row)) // prev
        m[r] = row
        prev = piv
        pivots.append(c)
        r += 1
    if not pivots:
        return _empty(ncols)
    return _normalized(m[:r], int(prev), pivots, ncols)


# -- modular engine -----------------------------------------------------------

def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@lru_cache(maxsize=1)
def _primes() -> tuple[int, ...]:
    out = []
    n = 2**31 - 1
    while len(out) < MAX_PRIMES:
        if _is_prime(n):
            out.append(n)
        n -= 2
    return tuple(out)


def _rref_mod(m: np.ndarray, p: int) -> tuple[np.ndarray, tuple[int, ...]]:
    """RREF over GF(p) of an int64 array with entries in [0, p)."""
    m = m.copy()
    nrows, ncols = m.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        p_row = r + int(nz[0])
        if p_row != r:
            m[[r, p_row]] = m[[p_row, r]]
        inv = pow(int(m[r, c]), -1, p)
        m[r] = (m[r] * inv) % p
        col = m[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            m[hit] = (m[hit] - (np.outer(col[hit], m[r]) % p)) % p
        pivots.append(c)
        r += 1
    return m[:r], tuple(pivots)


def _reconstruct(a: int, mod: int, bound: int):
    """Rational x/y with |x|, y <= bound and x = a*y mod `mod`, else None."""
    r0, r1 = mod, a % mod
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if s1 < 0:
        r1, s1 = -r1, -s1
    if math.gcd(r1, s1) != 1:
        return None
    return r1, s1


def _lift(residues: np.ndarray, mod: int, free: list[int]):
    """Lift the free-column entries of an RREF mod `mod` to rationals.

    Returns (num, den) with a common denominator, or None if some entry has
    no reconstruction within the current modulus.
    """
    bound = math.isqrt(mod // 2)
    nrows = residues.shape[0]
    fracs = {}
    den = 1
    for i in range(nrows):
        for f in free:
            a = int(residues[i, f])
            if a == 0:
                continue
            # cheap path: the running denominator often already works
            x = (a * den) % mod
            if x > mod // 2:
                x -= mod
            if abs(x) <= bound:
                fracs[i, f] = (x, den)
                continue
            rec = _reconstruct(a, mod, bound)
            if rec is None:
                return None
            fracs[i, f] = rec
            den = math.lcm(den, rec[1])
            if den > bound:
                return None
    return fracs, den


def rref_modular(m: np.ndarray) -> Echelon:
    m = np.asarray(m, dtype=object)
    nrows, ncols = m.shape
    if m.size == 0 or not np.any(m != 0):
        return _empty(ncols)
    ref_pivots = None
    acc = None
    mod = 1
    for p in _primes():
        red, piv = _rref_mod((m % p).astype(np.int64), p)
        if ref_pivots is not None and piv != ref_pivots:
            # unlucky primes lose rank or push a pivot to the right
            better = len(piv) > len(ref_pivots) or (
                len(piv) == len(ref_pivots) and piv < ref_pivots)
            if not better:
                continue
            ref_pivots = None
        if ref_pivots is None:
            ref_pivots, acc, mod = piv, red.astype(object), p
        else:
            # CRT: acc mod `mod` and red mod p -> mod * p
            t = ((red.astype(object) - acc) * pow(mod, -1, p)) % p
            acc = acc + mod * t
            mod *= p
        free = [c for c in range(ncols) if c not in set(ref_pivots)]
        if not free:
            num = np.zeros((len(ref_pivots), ncols), dtype=object)
            for k, c in enumerate(ref_pivots):
                num[k, c] = 1
            return Echelon(num, 1, ref_pivots, ncols)
        lifted = _lift(acc, mod, free)
        if lifted is None:
            continue
        fracs, den = lifted
        num = np.zeros((len(ref_pivots), ncols), dtype=object)
        for k, c in enumerate(ref_pivots):
            num[k, c] = den
        for (i, f), (x, y) in fracs.items():
            num[i, f] = x * (den // y)
        cand = _normalized(num, den, ref_pivots, ncols)
        if not np.any(int_matmul(m, cand.kernel_basis()) != 0):
            return cand
    return rref_bareiss(m)


def rref(m: np.ndarray) -> Echelon:
    """Exact RREF of an integer (object or int) matrix."""
    m = np.asarray(m, dtype=object)
    if m.shape[0] * m.shape[1] <= BAREISS_MAX_ENTRIES:
        return rref_bareiss(m)
    return rref_modular(m)


def det_bareiss(m: np.ndarray) -> int:
    """Determinant of a square integer matrix by Bareiss elimination."""
    m = np.array(m, dtype=object)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError(f"determinant of non-square {m.shape}")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for c in range(n):
        nz = np.flatnonzero(m[c:, c] != 0)
        if nz.size == 0:
            return 0
        p = c + int(nz[0])
        if p != c:
            m[[c, p]] = m[[p, c]]
            sign = -sign
        piv = m[c, c]
        below = m[c + 1:, c:]
        below[...] = (piv * below - np.outer(below[:, 0], m[c, c:])) // prev
        prev = piv
    return sign * int(m[n - 1, n - 1])
