"""Compiled (numba) inner loops for prime-field work: gcd profiles against
all Hasse derivatives and the brute-force coefficient-space scan.

Everything here is a pure speed path; the pure-Python routes in `unipoly`
and `casas` compute the same answers and are used to re-validate every hit.
The kernels release the GIL so scans can be partitioned across threads.

Restricted to prime fields with p below `KERNEL_MAX_P` (an inverse table of
size p is precomputed); callers fall back to Python past that.
"""

from __future__ import annotations

import math

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn
        if args and callable(args[0]):
            return args[0]
        return wrap


KERNEL_MAX_P = 1 << 20


def binomial_table(d: int, p: int) -> np.ndarray:
    """(d+1) x (d+1) table of binomial(e, i) mod p."""
    t = np.zeros((d + 1, d + 1), dtype=np.int64)
    for e in range(d + 1):
        for i in range(e + 1):
            t[e, i] = math.comb(e, i) % p
    return t


def inverse_table(p: int) -> np.ndarray:
    """inv[a] = a^-1 mod p for a in [1, p); inv[0] unused."""
    inv = np.zeros(p, dtype=np.int64)
    if p > 1:
        inv[1] = 1
    for a in range(2, p):
        # p = (p // a) * a + p % a  =>  inv[a] = -(p // a) * inv[p % a]
        inv[a] = (p - p // a) * inv[p % a] % p
    return inv


@njit(cache=True, nogil=True)
def _gcd_degree(A, da, B, db, p, inv):
    """Degree of gcd of the polynomials in A[0..da], B[0..db] (ascending,
    destroyed); both nonzero on entry."""
    while True:
        if db < 0:
            return da
        if da < db:
            A, B = B, A
            da, db = db, da
        if db == 0:
            return 0  # nonzero constant
        lead_inv = inv[B[db]]
        dd = da
        while dd >= db:
            c = A[dd]
            if c != 0:
                f = c * lead_inv % p
                off = dd - db
                for t in range(db):
                    A[off + t] = (A[off + t] - f * B[t]) % p
                A[dd] = 0
            dd -= 1
        da = db - 1
        while da >= 0 and A[da] == 0:
            da -= 1
        A, B = B, A
        da, db = db, da


@njit(cache=True, nogil=True)
def gcd_profile_kernel(asc, p, binom, inv, out):
    """out[i-1] = deg gcd(P, P_i) for i = 1..d-1, with gcd(P, 0) = P.

    asc: coefficients of P ascending, length d+1, values in [0, p).
    """
    d = asc.shape[0] - 1
    A = np.empty(d + 1, np.int64)
    B = np.empty(d + 1, np.int64)
    for i in range(1, d):
        db = -1
        for e in range(i, d + 1):
            c = binom[e, i] * asc[e] % p
            B[e - i] = c
            if c != 0:
                db = e - i
        if db < 0:
            out[i - 1] = d  # P_i identically zero: gcd is P itself
            continue
        for t in range(d + 1):
            A[t] = asc[t]
        out[i - 1] = _gcd_degree(A, d, B, db, p, inv)


@njit(cache=True, nogil=True)
def scan_range_kernel(d, p, binom, inv, start, stop, hits):
    """Scan candidate indices [start, stop) of the normalized slice
    X^d + a_1 X^(d-1) + ... + a_{d-1} X over F_p and record those whose gcd
    with every Hasse derivative P_i (i = 1..d-1) is nontrivial.

    Index encoding: base-p digits of the index are (a_1, ..., a_{d-1}) with
    a_1 most significant.  Index 0 (the excluded zero vector) is skipped.
    In this slice the only d-th power of a linear polynomial is X^d itself,
    which is exactly the zero vector, so every recorded index is a genuine
    counterexample candidate (still re-validated in Python afterwards).

    Returns the number of hits found; indices beyond the capacity of `hits`
    are counted but not stored (the caller treats overflow as an error).
    """
    nv = d - 1
    asc = np.empty(d + 1, np.int64)
    A = np.empty(d + 1, np.int64)
    B = np.empty(d + 1, np.int64)
    nhits = 0
    for idx in range(start, stop):
        if idx == 0:
            continue
        t = idx
        asc[0] = 0
        asc[d] = 1
        for j in range(nv, 0, -1):
            asc[d - j] = t % p
            t //= p
        ok = True
        # cheapest filters first: large i means a low-degree derivative
        for i in range(d - 1, 0, -1):
            db = -1
            for e in range(i, d + 1):
                c = binom[e, i] * asc[e] % p
                B[e - i] = c
                if c != 0:
                    db = e - i
            if db < 0:
                continue  # P_i == 0: trivially shares every factor
            for u in range(d + 1):
                A[u] = asc[u]
            if _gcd_degree(A, d, B, db, p, inv) == 0:
                ok = False
                break
        if ok:
            if nhits < hits.shape[0]:
                hits[nhits] = idx
            nhits += 1
    return nhits


def warmup():
    """Trigger JIT compilation on a tiny input (no-op without numba)."""
    p = 3
    binom = binomial_table(3, p)
    inv = inverse_table(p)
    out = np.zeros(2, dtype=np.int64)
    gcd_profile_kernel(np.array([0, 1, 1, 1], dtype=np.int64), p, binom, inv, out)
    hits = np.zeros(4, dtype=np.int64)
    scan_range_kernel(3, p, binom, inv, 0, 9, hits)
