"""The Casas-Alvero layer: the counterexample predicate, normalization,
exhaustive coefficient-space searches over finite fields, the elimination
cascade for degrees divisible by a prime power, theorem-coverage queries,
the X^(p+1) - X^p counterexample family, and the degree-6 quadrinomial
family with its giant integer M.

A monic P of degree d is a counterexample when gcd(P, P_i) is nontrivial
for every Hasse derivative P_i, i = 1..d-1 (with the convention that an
identically-zero P_i trivially shares every factor), and P is not the d-th
power of a linear polynomial.
"""

from __future__ import annotations

import math
import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import _kernels, multipoly, unipoly
from .arith import (ExtField, FieldDescriptor, IntegerRing, PrimeField,
                    Rationals, binom_mod_p, is_prime, v_p)
from .errors import BudgetExceededError, DomainError, NormalizationError
from .unipoly import UniPoly, GcdProfile, hasse_derivative, is_linear_power, taylor_shift

DEFAULT_SEARCH_BUDGET = 10**8

# The integer M from the quadrinomial family X^6 + a X^4 + X^3 + b X^2:
# its prime factors are exactly the characteristics in which some member
# of the family violates the conjecture.
M_FACTORIZATION = ((13, 3), (19, 7), (67, 2), (20771, 2), (21379, 1),
                   (23993, 3), (7783207, 1), (40362599, 1),
                   (7390044713023799, 1))

GIANT_PRIME = 7390044713023799
GIANT_QUAD_A = 3144481702696843
GIANT_QUAD_B = 2707944513497181


# ---------------------------------------------------------------------------
# Element <-> JSON encoding
# ---------------------------------------------------------------------------

def encode_elt(field, x):
    if isinstance(field, Rationals):
        return str(x)
    if isinstance(field, ExtField):
        return list(x)
    return int(x)


def decode_elt(field, v):
    if isinstance(field, Rationals):
        return Fraction(v)
    if isinstance(field, ExtField):
        return tuple(v)
    return int(v)


# ---------------------------------------------------------------------------
# Instances and verdicts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CAInstance:
    field: object
    poly: UniPoly

    def __post_init__(self):
        if not self.poly.is_monic:
            raise DomainError("instance polynomial must be monic")

    @property
    def degree(self):
        return self.poly.degree

    @property
    def descriptor(self):
        return self.field.descriptor()


@dataclass(frozen=True)
class CAVerdict:
    gcd_profile: GcdProfile
    linear_power_root: object | None  # field element, or None
    is_counterexample: bool

    def to_json(self, field=None):
        root = self.linear_power_root
        return {
            "gcd_profile": self.gcd_profile.to_json(),
            "linear_power_root": (None if root is None
                                  else encode_elt(field, root) if field is not None
                                  else root),
            "is_counterexample": self.is_counterexample,
        }

    @classmethod
    def from_json(cls, obj, field=None):
        root = obj["linear_power_root"]
        if root is not None and field is not None:
            root = decode_elt(field, root)
        return cls(GcdProfile.from_json(obj["gcd_profile"]), root,
                   obj["is_counterexample"])


def check_ca(inst: CAInstance) -> CAVerdict:
    """Full verdict: gcd degrees against every proper Hasse derivative,
    linear-power detection, and the counterexample flag."""
    P = inst.poly
    F = inst.field
    if not P.is_monic or P.degree < 1:
        raise DomainError("check_ca needs a monic polynomial of degree >= 1")
    profile = _gcd_profile_fast(F, P)
    root = is_linear_power(P)
    return CAVerdict(profile, root,
                     profile.all_nontrivial and root is None)


def _gcd_profile_fast(F, P: UniPoly) -> GcdProfile:
    d = P.degree
    if (_kernels.HAVE_NUMBA and isinstance(F, PrimeField)
            and F.p < _kernels.KERNEL_MAX_P and d >= 2):
        asc = np.array([P.coeff(e) for e in range(d + 1)], dtype=np.int64)
        out = np.zeros(d - 1, dtype=np.int64)
        _kernels.gcd_profile_kernel(asc, F.p, _binom_table_np(d, F.p),
                                    _inv_table_np(F.p), out)
        degrees = tuple(int(g) for g in out)
        return GcdProfile(degrees, tuple(g == d for g in degrees))
    return unipoly.gcd_profile(P)


@lru_cache(maxsize=64)
def _binom_table_np(d, p):
    return _kernels.binomial_table(d, p)


@lru_cache(maxsize=64)
def _inv_table_np(p):
    return _kernels.inverse_table(p)


# ---------------------------------------------------------------------------
# Normalization to a_0 = 1, a_d = 0
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NormalizedForm:
    original: UniPoly
    shift: object    # c: normalized(X) = monic-original(X + c)
    scale: object    # lambda: original was divided by lambda
    normalized: UniPoly


def normalize(P: UniPoly, root_search_limit: int = 10**6) -> NormalizedForm:
    """Monic, zero-constant-term representative of P with the transform
    recorded.  A root of P in the coefficient field is translated to the
    origin; if no root exists the normalization fails explicitly."""
    if P.is_zero:
        raise NormalizationError("cannot normalize the zero polynomial")
    F = P.ring
    scale = P.lc
    Q = P.monic()
    root = _find_root(Q, F, root_search_limit)
    if root is None:
        raise NormalizationError(
            f"cannot normalize over this field: {unipoly.format_poly(Q)} "
            f"has no root in {F!r}")
    return NormalizedForm(P, root, scale, taylor_shift(Q, root))


def _find_root(Q: UniPoly, F, limit):
    if F.is_zero(Q.coeff(0)):
        return F.zero
    d = Q.degree
    # the (d-1)st Hasse derivative is linear whenever d is nonzero in F;
    # if it shares a factor with Q its root is a root of Q
    lin = hasse_derivative(Q, d - 1) if d >= 1 else None
    if lin is not None and lin.degree == 1:
        r = F.neg(F.div(lin.coeff(0), lin.coeff(1)))
        if F.is_zero(Q.evaluate(r)):
            return r
    order = getattr(F, "order", None)
    if order is not None and order <= limit:
        for x in F.elements():
            if F.is_zero(Q.evaluate(x)):
                return x
    return None


# ---------------------------------------------------------------------------
# The counterexample family X^(p+1) - X^p over F_p
# ---------------------------------------------------------------------------

def family_counterexample(p: int) -> CAInstance:
    """The degree-(p+1) polynomial X^(p+1) - X^p = X^p (X - 1) over F_p.

    Shares the factor X with P_i for i <= p-1 and the factor X-1 with the
    linear P_p, yet is not a (p+1)-st power."""
    F = PrimeField(p)
    coeffs = [F.zero] * p + [F.neg(F.one), F.one]
    return CAInstance(F, UniPoly(F, coeffs))


# ---------------------------------------------------------------------------
# Elimination cascade: forcing a_i = 0 when p^k does not divide i
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CascadeStep:
    forced_index: int
    derivative_index: int
    vanishing_binomials: tuple  # ((n, k) pairs, each with binom(n,k) = 0 mod p)


@dataclass(frozen=True)
class CascadeTrace:
    degree: int
    p: int
    k: int
    n: int  # degree = n * p^k with p not dividing n
    steps: tuple  # CascadeStep for each forced index, in forcing order
    residual_indices: tuple  # surviving coefficient indices (multiples of p^k)
    complete_certificate: bool  # n == 1: all coefficients forced to zero
    reduces_to_quadratic: bool  # n == 2: settled by the degree-2 base case

    @property
    def forced_indices(self):
        return tuple(s.forced_index for s in self.steps)

    def to_json(self):
        return {
            "degree": self.degree, "p": self.p, "k": self.k, "n": self.n,
            "steps": [{"forced_index": s.forced_index,
                       "derivative_index": s.derivative_index,
                       "vanishing_binomials": [list(b) for b in s.vanishing_binomials]}
                      for s in self.steps],
            "residual_indices": list(self.residual_indices),
            "complete_certificate": self.complete_certificate,
            "reduces_to_quadratic": self.reduces_to_quadratic,
        }


def elimination_cascade(d: int, p: int) -> CascadeTrace:
    """Trace of the coefficient-elimination argument over F_p-bar.

    Writing d = n p^k with p not dividing n, each index i with p^k not
    dividing i is forced to zero in ascending order: by then all smaller
    non-surviving coefficients vanish, and in the (d-i)-th Hasse derivative
    every term above the constant a_i carries a binomial coefficient that
    is divisible by p, so the derivative collapses to the constant a_i and
    a common factor with P forces a_i = 0.  What survives is supported on
    multiples of p^k and descends to a degree-n polynomial.
    """
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if d < 1 or d % p:
        raise DomainError(f"cascade needs p | d, got d={d}, p={p}")
    k = 0
    n = d
    while n % p == 0:
        n //= p
        k += 1
    pk = p**k
    steps = []
    for i in range(1, d):
        if i % pk == 0:
            continue
        witnesses = [(d, i)]
        for j in range(pk, i, pk):
            witnesses.append((d - j, i - j))
        for (nn, kk) in witnesses:
            if binom_mod_p(nn, kk, p) != 0:  # sanity: the argument is sound
                raise AssertionError(f"binomial ({nn} choose {kk}) nonzero mod {p}")
        steps.append(CascadeStep(i, d - i, tuple(witnesses)))
    return CascadeTrace(
        degree=d, p=p, k=k, n=n, steps=tuple(steps),
        residual_indices=tuple(range(pk, d, pk)),
        complete_certificate=(n == 1),
        reduces_to_quadratic=(n == 2),
    )


# ---------------------------------------------------------------------------
# Theorem coverage: degrees of the form p^k, 2 p^k, and 3 p^k (p odd)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoverageVerdict:
    degree: int
    covered: bool
    n: int | None = None
    p: int | None = None
    k: int | None = None
    rule: str | None = None

    @property
    def status(self):
        return "covered" if self.covered else "open"

    def to_json(self):
        return {"degree": self.degree, "status": self.status,
                "n": self.n, "p": self.p, "k": self.k, "rule": self.rule}


_COVERAGE_RULES = {1: "prime_power", 2: "twice_prime_power",
                   3: "three_times_odd_prime_power"}


def _prime_power(q: int):
    """(p, k) if q = p^k with k >= 1, else None."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if q % p == 0:
            k = 0
            while q % p == 0:
                q //= p
                k += 1
            return (p, k) if q == 1 else None
    return None


def theorem_coverage(d: int) -> CoverageVerdict:
    """Whether degree d falls under a proved case, with a witnessing
    decomposition d = n p^k (smallest p among the valid ones).

    Base cases: n = 1 (any prime), n = 2 (any prime), and n = 3 with p odd
    (degree 3 holds in every characteristic except 2)."""
    if d < 1:
        raise DomainError(f"degree must be >= 1, got {d}")
    if d == 1:
        return CoverageVerdict(d, True, n=1, p=None, k=0, rule="linear")
    candidates = []
    for n in (1, 2, 3):
        if d % n:
            continue
        pw = _prime_power(d // n)
        if pw is None:
            continue
        p, k = pw
        if n == 3 and p == 2:
            continue
        candidates.append((p, n, k))
    if not candidates:
        return CoverageVerdict(d, False)
    p, n, k = min(candidates)
    return CoverageVerdict(d, True, n=n, p=p, k=k, rule=_COVERAGE_RULES[n])


# ---------------------------------------------------------------------------
# Exhaustive search over the normalized coefficient slice
# ---------------------------------------------------------------------------

@dataclass
class SearchOptions:
    budget: int = DEFAULT_SEARCH_BUDGET
    threads: int | None = None
    block_size: int = 1 << 18
    subrange: tuple[int, int] | None = None
    checkpoint_path: str | None = None
    checkpoint_every: int = 16  # blocks between checkpoint writes
    use_kernel: bool = True


@dataclass(frozen=True)
class SearchHit:
    index: int
    coeffs: tuple  # (a_1, ..., a_{d-1}) as field elements
    verdict: CAVerdict


@dataclass
class SearchReport:
    degree: int
    field_descriptor: FieldDescriptor
    enumeration_size: int
    candidates_tested: int
    hits: list
    wall_time: float
    partition: dict

    @property
    def is_empty(self):
        return not self.hits

    def to_json(self):
        field = self.field_descriptor.build()
        return {
            "degree": self.degree,
            "field": self.field_descriptor.to_json(),
            "enumeration_size": self.enumeration_size,
            "candidates_tested": self.candidates_tested,
            "hits": [{"index": h.index,
                      "coeffs": [encode_elt(field, c) for c in h.coeffs],
                      "verdict": h.verdict.to_json(field)} for h in self.hits],
            "wall_time": self.wall_time,
            "partition": self.partition,
        }

    @classmethod
    def from_json(cls, obj):
        desc = FieldDescriptor.from_json(obj["field"])
        field = desc.build()
        hits = [SearchHit(h["index"],
                          tuple(decode_elt(field, c) for c in h["coeffs"]),
                          CAVerdict.from_json(h["verdict"], field))
                for h in obj["hits"]]
        return cls(obj["degree"], desc, obj["enumeration_size"],
                   obj["candidates_tested"], hits, obj["wall_time"],
                   obj["partition"])


def _index_to_vector(idx: int, d: int, F):
    """Base-q digits of idx as (a_1, ..., a_{d-1}), a_1 most significant."""
    q = F.order
    digits = []
    for _ in range(d - 1):
        digits.append(idx % q)
        idx //= q
    digits.reverse()
    if isinstance(F, ExtField):
        return tuple(F.element_from_index(t) for t in digits)
    return tuple(digits)


def vector_to_poly(vec, d: int, F) -> UniPoly:
    coeffs = [F.zero] * (d + 1)
    coeffs[d] = F.one
    for j, a in enumerate(vec, start=1):  # a_j is the coefficient of X^(d-j)
        coeffs[d - j] = a
    return UniPoly(F, coeffs)


def _passes_python(F, asc, binom_f):
    """Early-exit pure-Python version of the per-candidate gcd filter."""
    d = len(asc) - 1
    P = UniPoly(F, asc)
    for i in range(d - 1, 0, -1):
        row = binom_f[i]
        pi = [F.mul(row[e], asc[e]) for e in range(i, d + 1)]
        Pi = UniPoly(F, pi)
        if Pi.is_zero:
            continue
        if unipoly.gcd(P, Pi).degree == 0:
            return False
    return True


def _scan_block_python(d, F, start, stop, binom_f):
    hits = []
    q = F.order
    for idx in range(start, stop):
        if idx == 0:
            continue
        t = idx
        asc = [F.zero] * (d + 1)
        asc[d] = F.one
        for j in range(d - 1, 0, -1):
            digit = t % q
            t //= q
            asc[d - j] = F.element_from_index(digit) if isinstance(F, ExtField) \
                else digit
        if _passes_python(F, asc, binom_f):
            hits.append(idx)
    return hits


def exhaustive_search(d: int, F, options: SearchOptions | None = None) -> SearchReport:
    """Enumerate every monic X^d + a_1 X^(d-1) + ... + a_{d-1} X with a
    nonzero coefficient vector over the finite field F and return all
    counterexamples.  An empty hit list certifies that the normalized
    counterexample locus has no F-rational points in degree d.

    Hits stream out of the scan as candidate indices and are re-validated
    by check_ca before the report is finalized (defense against scan
    bugs).  With a checkpoint path, completed block ranges and hits found
    so far are persisted periodically and the search resumes from them.
    """
    opts = options or SearchOptions()
    if d < 1:
        raise DomainError(f"degree must be >= 1, got {d}")
    q = getattr(F, "order", None)
    if q is None:
        raise DomainError("exhaustive search needs a finite field")
    total = q ** (d - 1)
    enum_size = total - 1
    if opts.subrange is None and enum_size > opts.budget:
        raise BudgetExceededError(
            f"search space of {enum_size} candidates exceeds the budget "
            f"{opts.budget}; raise SearchOptions.budget (or --budget) to "
            f"at least {enum_size} to run anyway",
            required=enum_size, budget=opts.budget)
    start, stop = opts.subrange if opts.subrange is not None else (0, total)
    t0 = time.perf_counter()

    blocks = [(s, min(s + opts.block_size, stop))
              for s in range(start, stop, opts.block_size)]
    done_blocks, known_hits = _load_checkpoint(opts, d, F, q)
    pending = [b for ib, b in enumerate(blocks) if ib not in done_blocks]

    use_kernel = (opts.use_kernel and _kernels.HAVE_NUMBA
                  and isinstance(F, PrimeField) and F.p < _kernels.KERNEL_MAX_P
                  and d >= 2)
    hit_indices = set(known_hits)
    if use_kernel:
        threads = opts.threads or os.cpu_count() or 1
        _kernels.warmup()
        binom = _binom_table_np(d, F.p)
        inv = _inv_table_np(F.p)

        def run(block):
            cap = 4096
            while True:
                buf = np.zeros(cap, dtype=np.int64)
                n = _kernels.scan_range_kernel(d, F.p, binom, inv,
                                               block[0], block[1], buf)
                if n <= cap:
                    return [int(x) for x in buf[:n]]
                cap = int(n)

        completed = set(done_blocks)
        for batch_start in range(0, len(pending), opts.checkpoint_every):
            batch = pending[batch_start:batch_start + opts.checkpoint_every]
            if threads > 1 and len(batch) > 1:
                with ThreadPoolExecutor(max_workers=threads) as pool:
                    for block, found in zip(batch, pool.map(run, batch)):
                        hit_indices.update(found)
            else:
                for block in batch:
                    hit_indices.update(run(block))
            completed.update(blocks.index(b) for b in batch)
            _save_checkpoint(opts, d, F, q, completed, hit_indices)
    else:
        binom_f = _field_binom_rows(d, F)
        completed = set(done_blocks)
        for ib, block in enumerate(blocks):
            if ib in done_blocks:
                continue
            hit_indices.update(_scan_block_python(d, F, block[0], block[1], binom_f))
            completed.add(ib)
            if opts.checkpoint_path and (len(completed) % opts.checkpoint_every == 0):
                _save_checkpoint(opts, d, F, q, completed, hit_indices)
        _save_checkpoint(opts, d, F, q, completed, hit_indices)

    # second pass: re-validate every streamed hit through the full verdict
    hits = []
    for idx in sorted(hit_indices):
        vec = _index_to_vector(idx, d, F)
        inst = CAInstance(F, vector_to_poly(vec, d, F))
        verdict = check_ca(inst)
        if not verdict.is_counterexample:
            raise AssertionError(
                f"scan produced index {idx} but re-validation rejects it")
        hits.append(SearchHit(idx, vec, verdict))

    tested = stop - start - (1 if start == 0 else 0)
    return SearchReport(
        degree=d, field_descriptor=F.descriptor(),
        enumeration_size=enum_size, candidates_tested=tested,
        hits=hits, wall_time=time.perf_counter() - t0,
        partition={"block_size": opts.block_size, "blocks": len(blocks),
                   "threads": opts.threads or (os.cpu_count() or 1)
                   if use_kernel else 1,
                   "kernel": use_kernel},
    )


def _field_binom_rows(d, F):
    """binom_f[i][e] = binomial(e, i) as a field element (e <= d)."""
    return [[F.from_int(math.comb(e, i)) for e in range(d + 1)]
            for i in range(d + 1)]


# -- checkpointing ----------------------------------------------------------

CHECKPOINT_VERSION = 1


def _checkpoint_header(d, F, q, block_size):
    return {"version": CHECKPOINT_VERSION, "degree": d,
            "field": F.descriptor().to_json(), "order": q,
            "block_size": block_size}


def _load_checkpoint(opts, d, F, q):
    path = opts.checkpoint_path
    if not path or not os.path.exists(path):
        return set(), set()
    import json
    with open(path) as fh:
        obj = json.load(fh)
    if obj["header"] != _checkpoint_header(d, F, q, opts.block_size):
        raise DomainError(f"checkpoint {path} does not match this search")
    bitmap = bytes.fromhex(obj["completed_bitmap"])
    done = {i for i in range(obj["n_blocks"])
            if bitmap[i // 8] & (1 << (i % 8))}
    return done, set(obj["hits"])


def _save_checkpoint(opts, d, F, q, completed, hit_indices):
    path = opts.checkpoint_path
    if not path:
        return
    import json
    total = q ** (d - 1)
    start, stop = opts.subrange if opts.subrange is not None else (0, total)
    n_blocks = len(range(start, stop, opts.block_size))
    bitmap = bytearray((n_blocks + 7) // 8)
    for i in completed:
        bitmap[i // 8] |= 1 << (i % 8)
    obj = {"header": _checkpoint_header(d, F, q, opts.block_size),
           "n_blocks": n_blocks,
           "completed_bitmap": bytes(bitmap).hex(),
           "hits": sorted(hit_indices)}
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        json.dump(obj, fh)
    os.replace(tmp, path)


# ---------------------------------------------------------------------------
# The quadrinomial family X^6 + a X^4 + X^3 + b X^2
# ---------------------------------------------------------------------------

def quad_poly(F, a, b) -> UniPoly:
    return UniPoly(F, [F.zero, F.zero, b, F.one, a, F.zero, F.one])


def verify_quad_point(p: int, a: int, b: int) -> CAVerdict:
    """check_ca verdict for X^6 + a X^4 + X^3 + b X^2 over F_p."""
    F = PrimeField(p)
    return check_ca(CAInstance(F, quad_poly(F, F.from_int(a), F.from_int(b))))


@dataclass(frozen=True)
class QuadResultants:
    """The five symbolic resultants of the quadrinomial against its Hasse
    derivatives, as integer polynomials in (a, b) (variables a=a1, b=a2)."""

    resultants: tuple  # index i-1 -> MultiPoly in Z[a, b]
    zero_indices: tuple
    nonzero_indices: tuple


@lru_cache(maxsize=1)
def identically_zero_resultants() -> QuadResultants:
    """Res_X(P, P_i) for the symbolic quadrinomial, i = 1..5, over Z[a, b];
    exactly two are the zero polynomial (P and those P_i share the factor
    X identically) and three survive as genuine equations."""
    ring = multipoly.PolyRing(2, 0)
    a = ring.variable(0)
    b = ring.variable(1)
    P = UniPoly(ring, [ring.zero, ring.zero, b, ring.one, a, ring.zero, ring.one])
    res = []
    for i in range(1, 6):
        Pi = hasse_derivative(P, i)
        res.append(unipoly.resultant(P, Pi, nominal=(6, 6 - i)))
    zero = tuple(i + 1 for i, r in enumerate(res) if r.is_zero)
    nonzero = tuple(i + 1 for i, r in enumerate(res) if not r.is_zero)
    if len(zero) != 2 or len(nonzero) != 3:
        raise AssertionError(f"expected 2 zero / 3 nonzero resultants, "
                             f"got {zero} / {nonzero}")
    return QuadResultants(tuple(res), zero, nonzero)


def _quad_b_coefficients():
    """For each surviving resultant: dense integer coefficient lists in a,
    indexed by the power of b: R_i(a, b) = sum_e c_{i,e}(a) b^e."""
    qr = identically_zero_resultants()
    out = []
    for i in qr.nonzero_indices:
        R = qr.resultants[i - 1]
        by_b = R.coefficients_in(1)
        per_b = {}
        for e_b, poly_a in by_b.items():
            dense = [0] * (max((e[0] for e in poly_a.terms), default=0) + 1)
            for exps, c in poly_a.terms.items():
                dense[exps[0]] = c
            per_b[e_b] = dense
        out.append(per_b)
    return out


def _specialize_in_b(per_b, a0, F):
    """One resultant specialized at a = a0: a UniPoly in b over F."""
    if not per_b:
        return UniPoly.zero(F)
    maxe = max(per_b)
    coeffs = [F.zero] * (maxe + 1)
    for e_b, dense in per_b.items():
        acc = 0
        for c in reversed(dense):
            acc = (acc * a0 + c) % F.p
        coeffs[e_b] = acc
    return UniPoly(F, coeffs)


def _poly_powmod(base: UniPoly, e: int, mod: UniPoly) -> UniPoly:
    out = UniPoly.one(base.ring)
    base = base % mod
    while e:
        if e & 1:
            out = (out * base) % mod
        base = (base * base) % mod
        e >>= 1
    return out


def poly_roots(g: UniPoly) -> list:
    """All roots of g in its prime field, deterministic ordering.

    Brute force for small p; for large p the distinct linear factors are
    extracted via gcd with X^p - X and split by seeded Cantor-Zassenhaus.
    """
    F = g.ring
    p = F.p
    if g.is_zero:
        raise DomainError("every element is a root of the zero polynomial")
    g = g.monic()
    if g.degree == 0:
        return []
    if p <= 4096:
        return [x for x in range(p) if F.is_zero(g.evaluate(x))]
    x = UniPoly.x(F)
    xp = _poly_powmod(x, p, g)
    h = unipoly.gcd(xp - x, g)
    roots = []
    rng = random.Random(0xCA5A5 ^ p)

    def split(h):
        if h.degree <= 0:
            return
        if h.degree == 1:
            roots.append(F.neg(h.coeff(0)))
            return
        while True:
            c = rng.randrange(p)
            w = _poly_powmod(x + UniPoly.constant(F, c), (p - 1) // 2, h) \
                - UniPoly.one(F)
            g1 = unipoly.gcd(w, h)
            if 0 < g1.degree < h.degree:
                split(g1)
                split(h.divmod(g1)[0])
                return

    split(h)
    return sorted(roots)


def quad_scan(p: int, budget: int = DEFAULT_SEARCH_BUDGET,
              progress=None) -> SearchReport:
    """All (a, b) in F_p^2 making X^6 + a X^4 + X^3 + b X^2 a
    counterexample.

    Sweeps a (O(p)) and solves the three surviving resultant conditions as
    univariate gcd conditions in b, instead of scanning the full p^2 grid.
    For large p the sweep itself is vectorized: a necessary condition (the
    b-resultant of two of the equations, or a leading-coefficient
    degeneracy) is evaluated for all a at once and only the few survivors
    get the exact treatment.
    """
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if p > budget:
        raise BudgetExceededError(
            f"sweep of {p} values of a exceeds the budget {budget}",
            required=p, budget=budget)
    t0 = time.perf_counter()
    F = PrimeField(p)
    per_b_all = _quad_b_coefficients()

    if p > 100_000:
        candidates = _quad_sweep_vectorized(p)
    else:
        candidates = range(p)

    hits = []
    for a0 in candidates:
        polys = [_specialize_in_b(per_b, a0, F) for per_b in per_b_all]
        g = UniPoly.zero(F)
        for r in polys:
            g = unipoly.gcd(g, r)
        if g.degree == 0 and not g.is_zero:
            continue
        if g.is_zero:
            # all three resultants vanish identically in b: fall back to
            # checking every b (not observed for any prime of interest)
            b_candidates = range(p) if p <= 10**4 else None
            if b_candidates is None:
                raise AssertionError(
                    f"degenerate a={a0}: all resultants vanish in b")
        else:
            b_candidates = poly_roots(g)
        for b0 in b_candidates:
            verdict = verify_quad_point(p, a0, b0)
            if verdict.is_counterexample:
                idx = _quad_index(p, a0, b0)
                hits.append(SearchHit(idx, (0, a0, 1, b0, 0), verdict))
        if progress is not None:
            progress(a0)

    hits.sort(key=lambda h: h.index)
    return SearchReport(
        degree=6, field_descriptor=F.descriptor(),
        enumeration_size=p, candidates_tested=p,
        hits=hits, wall_time=time.perf_counter() - t0,
        partition={"sweep": "a", "vectorized": p > 100_000},
    )


def _quad_index(p, a0, b0):
    """Index of the vector (0, a, 1, b, 0) in the degree-6 slice encoding."""
    # digits (a_1..a_5) = (0, a, 1, b, 0), a_1 most significant
    return ((a0 * p + 1) * p + b0) * p


def _quad_sweep_vectorized(p: int):
    """Candidate values of a that can possibly admit a common b-root of
    the surviving resultant equations, for all a in F_p at once.

    Uses the resultant in b of the two lowest-b-degree equations as a
    necessary condition, together with the loci where either leading
    b-coefficient vanishes (there specialization and resultant need not
    commute, so those a are kept conservatively).
    """
    s_coeffs, lc_coeffs = _quad_prefilter_polys()
    survivors = []
    block = 1 << 20
    arrs = [np.array([c % p for c in cs], dtype=np.int64)
            for cs in (s_coeffs, *lc_coeffs)]
    for start in range(0, p, block):
        a_vals = np.arange(start, min(start + block, p), dtype=np.int64)
        keep = np.zeros(a_vals.shape, dtype=bool)
        for cs in arrs:
            acc = np.zeros(a_vals.shape, dtype=np.int64)
            for c in cs[::-1]:
                acc = (acc * a_vals + c) % p
            keep |= acc == 0
        survivors.extend(int(v) for v in a_vals[keep])
    return survivors


def _dense_in_a(mpoly):
    """Ascending integer coefficient list of a univariate MultiPoly in a."""
    out = [0] * (max((e[0] for e in mpoly.terms), default=0) + 1)
    for exps, c in mpoly.terms.items():
        out[exps[0]] = c
    return out


@lru_cache(maxsize=1)
def _quad_b_polys():
    """The three surviving quadrinomial resultants as UniPolys in b over
    Z[a], sorted by ascending b-degree."""
    qr = identically_zero_resultants()
    ring = multipoly.PolyRing(1, 0)  # Z[a]

    def as_b_poly(R):
        by_b = R.coefficients_in(1)
        maxe = max(by_b)
        coeffs = []
        for e in range(maxe + 1):
            poly_a = by_b.get(e)
            if poly_a is None:
                coeffs.append(ring.zero)
            else:
                coeffs.append(multipoly.MultiPoly(
                    1, 0, {(exps[0],): c for exps, c in poly_a.terms.items()}))
        return UniPoly(ring, coeffs)

    return tuple(sorted((as_b_poly(qr.resultants[i - 1])
                         for i in qr.nonzero_indices),
                        key=lambda f: f.degree))


@lru_cache(maxsize=1)
def _quad_prefilter_polys():
    """Integer coefficient lists (ascending in a) of: the b-resultant of
    the two surviving quadrinomial equations of smallest b-degree, and the
    leading b-coefficients of those two equations."""
    f1, f2, _ = _quad_b_polys()
    s = unipoly.resultant(f1, f2)
    return tuple(_dense_in_a(s)), (tuple(_dense_in_a(f1.lc)),
                                   tuple(_dense_in_a(f2.lc)))


# ---------------------------------------------------------------------------
# Closure points of the quadrinomial family
# ---------------------------------------------------------------------------

def _equal_degree_split(h: UniPoly, e: int) -> list:
    """Split a product of distinct monic degree-e irreducibles over F_p
    into its factors (seeded Cantor-Zassenhaus; trace splitting for p=2)."""
    F = h.ring
    p = F.p
    rng = random.Random(0xEDF ^ p ^ h.degree)
    out = []
    stack = [h.monic()]
    while stack:
        f = stack.pop()
        if f.degree == e:
            out.append(f)
            continue
        while True:
            r = UniPoly(F, [rng.randrange(p) for _ in range(f.degree)])
            if r.is_zero:
                continue
            if p == 2:
                w = UniPoly.zero(F)
                s = r % f
                for _ in range(e):
                    w = w + s
                    s = (s * s) % f
            else:
                w = _poly_powmod(r, (p**e - 1) // 2, f) - UniPoly.one(F)
            g1 = unipoly.gcd(w, f)
            if 0 < g1.degree < f.degree:
                stack.append(g1.monic())
                stack.append(f.divmod(g1)[0].monic())
                break
    return out


def irreducible_factors(g: UniPoly) -> list:
    """Distinct monic irreducible factors of g over its prime field,
    multiplicities discarded, sorted by (degree, coefficients).

    Squarefree reduction, then distinct-degree splitting with X^{p^e} - X,
    then seeded equal-degree splitting."""
    F = g.ring
    p = F.p
    if g.is_zero:
        raise DomainError("cannot factor the zero polynomial")
    g = g.monic()
    if g.degree == 0:
        return []
    gp = unipoly.classical_derivative(g)
    if gp.is_zero:
        # g is a p-th power of a lower-degree polynomial: same factors
        return irreducible_factors(unipoly.descend(g, p, 1))
    v = g.divmod(unipoly.gcd(g, gp))[0].monic()
    x = UniPoly.x(F)
    w = x
    factors = []
    e = 0
    while v.degree > 0:
        e += 1
        if 2 * e > v.degree:
            factors.append(v)
            break
        w = _poly_powmod(w, p, v)
        ge = unipoly.gcd(w - x, v)
        if ge.degree > 0:
            factors.extend(_equal_degree_split(ge, e))
            v = v.divmod(ge)[0].monic()
            w = w % v
    # factors of g lost to the squarefree reduction reappear here only if
    # g had repeated factors; gcd with g/v recovers nothing new because
    # every irreducible factor of g divides its squarefree part.
    return sorted(factors, key=lambda f: (f.degree, f.coeffs))


def field_roots(g: UniPoly) -> list:
    """All roots of g in its finite coefficient field (prime or extension),
    deterministic ordering."""
    K = g.ring
    if isinstance(K, PrimeField):
        return poly_roots(g)
    q = K.order
    if g.is_zero:
        raise DomainError("every element is a root of the zero polynomial")
    g = g.monic()
    if g.degree == 0:
        return []
    if q <= 4096:
        return sorted((x for x in K.elements()
                       if K.is_zero(g.evaluate(x))),
                      key=K.element_index)
    p = K.p
    x = UniPoly.x(K)
    xq = _poly_powmod(x, q, g)
    h = unipoly.gcd(xq - x, g)
    roots = []
    rng = random.Random(0xCA5A5 ^ q)

    def split(h):
        if h.degree <= 0:
            return
        if h.degree == 1:
            roots.append(K.neg(h.coeff(0)))
            return
        while True:
            c = K.element_from_index(rng.randrange(q))
            w = _poly_powmod(x + UniPoly.constant(K, c), (q - 1) // 2, h) \
                - UniPoly.one(K)
            g1 = unipoly.gcd(w, h)
            if 0 < g1.degree < h.degree:
                split(g1)
                split(h.divmod(g1)[0])
                return

    if p == 2:
        # roots of a product of linear factors over F_{2^m}: brute is not
        # available for large q, so peel linear factors by trace splitting
        roots.extend(K.neg(f.coeff(0)) for f in _equal_degree_split(h, 1))
    else:
        split(h)
    return sorted(roots, key=K.element_index)


def _specialize_in_b_field(per_b, a0, K):
    """One resultant specialized at a = a0 in an arbitrary finite field K:
    a UniPoly in b over K."""
    maxe = max(per_b)
    coeffs = [K.zero] * (maxe + 1)
    for e_b, dense in per_b.items():
        acc = K.zero
        for c in reversed(dense):
            acc = K.add(K.mul(acc, a0), K.from_int(c))
        coeffs[e_b] = acc
    return UniPoly(K, coeffs)


@lru_cache(maxsize=1)
def _quad_eliminants():
    """Ascending integer coefficient lists in a of the two b-eliminants
    Res_b(f1, f2), Res_b(f1, f3) of the surviving quadrinomial equations
    (sorted by b-degree) and of the three leading b-coefficients."""
    f1, f2, f3 = _quad_b_polys()
    elim = (unipoly.resultant(f1, f2), unipoly.resultant(f1, f3))
    lcs = (f1.lc, f2.lc, f3.lc)
    return (tuple(tuple(_dense_in_a(s)) for s in elim),
            tuple(tuple(_dense_in_a(c)) for c in lcs))


@dataclass(frozen=True)
class ClosureHit:
    """One representative counterexample point of the quadrinomial family
    with coordinates in an explicit finite extension of F_p."""

    field: FieldDescriptor
    a: object
    b: object
    verdict: CAVerdict

    def to_json(self):
        K = self.field.build()
        return {"field": self.field.to_json(),
                "a": encode_elt(K, self.a),
                "b": encode_elt(K, self.b),
                "verdict": self.verdict.to_json()}


@dataclass(frozen=True)
class QuadClosureReport:
    """Closure-level census of the quadrinomial family in characteristic p:
    one representative point per Galois conjugacy class, each inside the
    smallest extension field that contains it."""

    p: int
    a_locus_degree: int
    hits: tuple
    unresolved: tuple  # (a_factor_degree, b_gcd_degree) needing a tower
    wall_time: float = 0.0

    @property
    def rational_hits(self):
        return tuple(h for h in self.hits if (h.field.m or 1) == 1)

    def to_json(self):
        return {"p": self.p,
                "a_locus_degree": self.a_locus_degree,
                "hits": [h.to_json() for h in self.hits],
                "unresolved": [list(u) for u in self.unresolved],
                "wall_time": self.wall_time}


def quad_closure_scan(p: int) -> QuadClosureReport:
    """Counterexample points of the quadrinomial family X^6+aX^4+X^3+bX^2
    over the algebraic closure of F_p, located in explicit finite
    extensions.

    Eliminates b between the surviving resultant equations; each
    irreducible factor of the a-locus mod p (together with the
    leading-coefficient degeneracy loci, kept conservatively) names a
    residue field F_{p^m} for a.  In that field the b-conditions collapse
    to a univariate gcd whose roots are extracted there; when a is
    rational but b is not, the irreducible b-factors over F_p name the
    extension instead.  Every reported point is re-verified with check_ca
    in its own field.  Points whose coordinates would need a proper tower
    (a irrational and b outside F_p(a)) are counted, not constructed."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    t0 = time.perf_counter()
    F = PrimeField(p)
    (s12, s13), lcs = _quad_eliminants()
    g = unipoly.gcd(UniPoly(F, [c % p for c in s12]),
                    UniPoly(F, [c % p for c in s13]))
    a_locus_degree = max(g.degree, 0)
    # candidate minimal polynomials for a: factors of the eliminant gcd
    # plus the loci where a leading b-coefficient vanishes (there the
    # specialized resultant need not agree with the specialization)
    candidate = g
    for lc in lcs:
        candidate = candidate * UniPoly(F, [c % p for c in lc])
    if candidate.is_zero or candidate.degree == 0:
        return QuadClosureReport(p, a_locus_degree, (), (),
                                 time.perf_counter() - t0)
    per_b_all = _quad_b_coefficients()
    hits = []
    unresolved = []
    for h in irreducible_factors(candidate):
        m = h.degree
        if m == 1:
            K = F
            a0 = F.neg(h.coeff(0))
        else:
            K = ExtField(p, m, tuple(h.coeffs))
            a0 = K.lift([0, 1])
        polys = [_specialize_in_b_field(per_b, a0, K) for per_b in per_b_all]
        gb = UniPoly.zero(K)
        for r in polys:
            gb = unipoly.gcd(gb, r)
        if gb.is_zero:
            raise AssertionError(
                f"degenerate a-factor {unipoly.format_poly(h)} mod {p}: "
                f"all resultants vanish in b")
        if gb.degree == 0:
            continue
        roots = field_roots(gb)
        for b0 in roots:
            verdict = check_ca(CAInstance(K, quad_poly(K, a0, b0)))
            hits.append(ClosureHit(K.descriptor(), a0, b0, verdict))
        if not roots and m == 1:
            # a is rational, b is not: each irreducible b-factor names the
            # extension containing its roots
            for hb in irreducible_factors(gb):
                if hb.degree == 1:
                    continue  # already covered by field_roots
                K2 = ExtField(p, hb.degree, tuple(hb.coeffs))
                a2 = K2.from_int(a0)
                b2 = K2.lift([0, 1])
                verdict = check_ca(CAInstance(K2, quad_poly(K2, a2, b2)))
                hits.append(ClosureHit(K2.descriptor(), a2, b2, verdict))
        elif not roots:
            unresolved.append((m, gb.degree))
    hits.sort(key=lambda h: (h.field.m or 1, str(h.to_json())))
    return QuadClosureReport(p, a_locus_degree, tuple(hits),
                             tuple(unresolved), time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# The integer M
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MReport:
    factorization: tuple  # ((prime, exponent), ...)
    value: int
    all_factors_prime: bool

    @property
    def decimal(self):
        return str(self.value)

    def valuation(self, p):
        return v_p(self.value, p)

    def to_json(self):
        return {"factorization": [list(f) for f in self.factorization],
                "decimal": self.decimal,
                "all_factors_prime": self.all_factors_prime}


def verify_m() -> MReport:
    """Reconstruct M from its published prime factorization, confirm each
    factor's primality, and expose the product.  The Groebner basis over Z
    that produced M is not recomputed (out of reach); membership of each
    prime is exercised instead through quad_scan."""
    value = 1
    all_prime = True
    for p, e in M_FACTORIZATION:
        all_prime = all_prime and is_prime(p)
        value *= p**e
    return MReport(M_FACTORIZATION, value, all_prime)
