"""Sparse multivariate polynomials in a_1, ..., a_n with the weighted
grading (a_j has weight j), the weighted degrevlex order, symbolic
resultants of the generic monic polynomial against its Hasse derivatives,
determinants over polynomial rings, and a small Buchberger engine.

Monomials are plain exponent tuples; coefficients are Python ints, reduced
into [0, p) when the ring has characteristic p > 0 and arbitrary integers
in characteristic 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import linalg, unipoly
from .errors import BudgetExceededError, DomainError, UnsupportedFieldError

# Default ceilings for symbolic generic resultants.  Past these the term
# explosion makes the computation hopeless on a desk machine (d = 12 is
# already out of reach even for heavyweight computer algebra systems).
DEFAULT_CEILING_CHAR0 = 6
DEFAULT_CEILING_CHARP = 9


def weighted_degree(exps: tuple[int, ...]) -> int:
    """Weight of a monomial: a_j counts with weight j."""
    return sum((j + 1) * e for j, e in enumerate(exps))


@dataclass(frozen=True)
class WeightedOrder:
    """Weighted degree reverse lexicographic order with a_1 < a_2 < ...

    Ties in weighted degree are broken reverse-lexicographically: of two
    monomials of the same weight, the larger is the one with the SMALLER
    exponent at the smallest variable index where they differ.  This is the
    convention under which the generic resultant of the degree-d polynomial
    with its i-th Hasse derivative has leading monomial a_{d-i}^d mod p.
    """

    nvars: int

    def key(self, exps: tuple[int, ...]):
        return (weighted_degree(exps), tuple(-e for e in exps))

    def compare(self, u: tuple[int, ...], v: tuple[int, ...]) -> int:
        if len(u) != self.nvars or len(v) != self.nvars:
            raise DomainError("monomials from a different ambient ring")
        ku, kv = self.key(u), self.key(v)
        return (ku > kv) - (ku < kv)


class MultiPoly:
    __slots__ = ("nvars", "char", "terms")

    def __init__(self, nvars: int, char: int, terms=None):
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "char", char)
        clean = {}
        if terms:
            for exps, c in (terms.items() if isinstance(terms, dict) else terms):
                if char:
                    c %= char
                if c:
                    exps = tuple(exps)
                    if len(exps) != nvars:
                        raise DomainError("exponent vector of wrong length")
                    prev = clean.get(exps, 0)
                    c = prev + c
                    if char:
                        c %= char
                    if c:
                        clean[exps] = c
                    elif exps in clean:
                        del clean[exps]
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *_):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, nvars, char=0):
        return cls(nvars, char)

    @classmethod
    def constant(cls, nvars, c, char=0):
        return cls(nvars, char, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars, j, char=0):
        """The variable a_{j+1} (0-based index j)."""
        exps = tuple(1 if t == j else 0 for t in range(nvars))
        return cls(nvars, char, {exps: 1})

    # -- structure ----------------------------------------------------------

    @property
    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, MultiPoly) and other.nvars == self.nvars
                and other.char == self.char and other.terms == self.terms)

    def __hash__(self):
        return hash((self.nvars, self.char, frozenset(self.terms.items())))

    def _check_compat(self, other):
        if other.nvars != self.nvars or other.char != self.char:
            raise DomainError("operands from different rings")

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        self._check_compat(other)
        out = dict(self.terms)
        p = self.char
        for exps, c in other.terms.items():
            v = out.get(exps, 0) + c
            if p:
                v %= p
            if v:
                out[exps] = v
            elif exps in out:
                del out[exps]
        return MultiPoly(self.nvars, p, out)

    def __neg__(self):
        p = self.char
        return MultiPoly(self.nvars, p,
                         {e: (-c % p if p else -c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check_compat(other)
        p = self.char
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if p:
                    v %= p
                out[e] = v
        return MultiPoly(self.nvars, p, {e: c for e, c in out.items() if c})

    def scale(self, k: int):
        p = self.char
        return MultiPoly(self.nvars, p,
                         {e: c * k for e, c in self.terms.items()})

    def __pow__(self, n):
        out = MultiPoly.constant(self.nvars, 1, self.char)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- grading and orders -------------------------------------------------

    def weighted_degree(self):
        if not self.terms:
            return -1
        return max(weighted_degree(e) for e in self.terms)

    def leading_monomial(self, order: WeightedOrder | None = None):
        if not self.terms:
            raise DomainError("zero polynomial has no leading monomial")
        order = order or WeightedOrder(self.nvars)
        return max(self.terms, key=order.key)

    def leading_coeff(self, order: WeightedOrder | None = None):
        return self.terms[self.leading_monomial(order)]

    def sorted_terms(self, order: WeightedOrder | None = None):
        """Terms in descending order, materialized on demand."""
        order = order or WeightedOrder(self.nvars)
        return [(e, self.terms[e])
                for e in sorted(self.terms, key=order.key, reverse=True)]

    # -- substitution -------------------------------------------------------

    def substitute(self, values: list, ring):
        """Full evaluation: values[j] is the ring element for a_{j+1}."""
        acc = ring.zero
        for exps, c in self.terms.items():
            t = ring.from_int(c)
            for j, e in enumerate(exps):
                if e:
                    t = ring.mul(t, _ring_pow(ring, values[j], e))
            acc = ring.add(acc, t)
        return acc

    def coefficients_in(self, var: int) -> dict[int, "MultiPoly"]:
        """Collect by the power of one variable; values keep the ambient
        ring with that variable's exponent zeroed."""
        out: dict[int, dict] = {}
        for exps, c in self.terms.items():
            e = exps[var]
            rest = tuple(0 if j == var else x for j, x in enumerate(exps))
            bucket = out.setdefault(e, {})
            bucket[rest] = bucket.get(rest, 0) + c
        return {e: MultiPoly(self.nvars, self.char, b) for e, b in out.items()}

    def reduce_mod(self, p: int) -> "MultiPoly":
        if self.char:
            raise DomainError("already in positive characteristic")
        return MultiPoly(self.nvars, p, self.terms)

    # -- division -----------------------------------------------------------

    def exact_div(self, other: "MultiPoly") -> "MultiPoly":
        """Exact quotient self / other; raises DomainError if not exact."""
        self._check_compat(other)
        if other.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        order = WeightedOrder(self.nvars)
        p = self.char
        lm_g = other.leading_monomial(order)
        lc_g = other.terms[lm_g]
        rem = self
        qterms = {}
        while not rem.is_zero:
            lm_f = rem.leading_monomial(order)
            lc_f = rem.terms[lm_f]
            qexps = tuple(a - b for a, b in zip(lm_f, lm_g))
            if any(e < 0 for e in qexps):
                raise DomainError("division not exact (monomial mismatch)")
            if p:
                qc = lc_f * pow(lc_g, p - 2, p) % p
            else:
                qc, r = divmod(lc_f, lc_g)
                if r:
                    raise DomainError("division not exact (coefficient mismatch)")
            qterms[qexps] = qc
            rem = rem - other * MultiPoly(self.nvars, p, {qexps: qc})
        return MultiPoly(self.nvars, p, qterms)

    # -- formatting ---------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.sorted_terms():
            vars_txt = "*".join(
                f"a{j + 1}" if e == 1 else f"a{j + 1}^{e}"
                for j, e in enumerate(exps) if e)
            if not vars_txt:
                parts.append(str(c))
            elif c == 1:
                parts.append(vars_txt)
            elif c == -1:
                parts.append(f"-{vars_txt}")
            else:
                parts.append(f"{c}*{vars_txt}")
        out = parts[0]
        for t in parts[1:]:
            out += t if t.startswith("-") else "+" + t
        return out

    def __repr__(self):
        ring = f"GF({self.char})" if self.char else "ZZ"
        return f"MultiPoly({ring}[a1..a{self.nvars}], {self})"


def _ring_pow(ring, a, e):
    out = ring.one
    while e:
        if e & 1:
            out = ring.mul(out, a)
        a = ring.mul(a, a)
        e >>= 1
    return out


# ---------------------------------------------------------------------------
# Weighted homogeneity
# ---------------------------------------------------------------------------

class _Vacuous:
    """Marker: the zero polynomial is homogeneous of every weighted degree."""

    def __repr__(self):
        return "VACUOUSLY_HOMOGENEOUS"


VACUOUSLY_HOMOGENEOUS = _Vacuous()


def is_weighted_homogeneous(f: MultiPoly):
    """The common weighted degree of all terms, None if mixed, and the
    dedicated vacuous marker for the zero polynomial."""
    if f.is_zero:
        return VACUOUSLY_HOMOGENEOUS
    degs = {weighted_degree(e) for e in f.terms}
    return degs.pop() if len(degs) == 1 else None


# ---------------------------------------------------------------------------
# Ring context adapter: MultiPoly as a coefficient ring
# ---------------------------------------------------------------------------

class PolyRing:
    """Z[a_1..a_n] or F_p[a_1..a_n] as a ring context whose elements are
    MultiPoly values.  Lets the univariate machinery (Sylvester matrices,
    Bareiss determinants) run with polynomial entries unchanged."""

    is_field = False

    def __init__(self, nvars: int, char: int = 0):
        self.nvars = nvars
        self.char = char
        self.characteristic = char
        self.zero = MultiPoly.zero(nvars, char)
        self.one = MultiPoly.constant(nvars, 1, char)

    def from_int(self, n):
        return MultiPoly.constant(self.nvars, n, self.char)

    def variable(self, j):
        return MultiPoly.variable(self.nvars, j, self.char)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_zero(self, a):
        return a.is_zero

    def exact_div(self, a, b):
        return a.exact_div(b)

    def format(self, a):
        return str(a)

    def __repr__(self):
        base = f"GF({self.char})" if self.char else "ZZ"
        return f"{base}[a1..a{self.nvars}]"

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and other.nvars == self.nvars
                and other.char == self.char)

    def __hash__(self):
        return hash(("PolyRing", self.nvars, self.char))


def poly_matrix_determinant(mat, nvars=None, char=None):
    """Exact determinant of a square matrix of MultiPoly entries."""
    if not mat:
        raise DomainError("empty matrix has no ambient ring; use a PolyRing")
    sample = mat[0][0]
    ring = PolyRing(nvars if nvars is not None else sample.nvars,
                    char if char is not None else sample.char)
    return linalg.det_bareiss(ring, mat)


# ---------------------------------------------------------------------------
# Generic resultants
# ---------------------------------------------------------------------------

def generic_poly(d: int, char: int = 0) -> unipoly.UniPoly:
    """X^d + a_1 X^(d-1) + ... + a_{d-1} X as a univariate polynomial with
    coefficients in Z[a_1..a_{d-1}] (or its mod-p reduction)."""
    ring = PolyRing(d - 1, char)
    coeffs = [ring.zero]  # constant term: a_d = 0
    for j in range(d - 1, 0, -1):  # coefficient of X^(d-j) is a_j
        coeffs.append(ring.variable(j - 1))
    coeffs.append(ring.one)
    return unipoly.UniPoly(ring, coeffs)


def generic_resultant(d: int, i: int, char: int = 0,
                      max_degree: int | None = None) -> MultiPoly:
    """Res_X of the generic monic degree-d polynomial (constant term 0)
    and its i-th Hasse derivative, at nominal degrees (d, d-i).

    Over F_p this equals the mod-p reduction of the integer result; the
    Sylvester matrix is always built at the nominal degrees so reduction
    commutes with the determinant and the weighted degree d(d-i) is kept.

    Refuses degrees above the ceiling (configurable via max_degree): the
    number of terms grows so fast that d = 12 is infeasible, and an
    uncontrolled attempt would just thrash.
    """
    if not 1 <= i <= d - 1:
        raise DomainError(f"need 1 <= i <= d-1, got i={i}, d={d}")
    ceiling = max_degree if max_degree is not None else (
        DEFAULT_CEILING_CHARP if char else DEFAULT_CEILING_CHAR0)
    if d > ceiling:
        raise BudgetExceededError(
            f"symbolic resultant at degree {d} exceeds the ceiling {ceiling} "
            f"(raise max_degree explicitly to override; the cost grows "
            f"exponentially and degree 12 is out of reach)",
            required=d, budget=ceiling)
    P = generic_poly(d, char)
    Pi = unipoly.hasse_derivative(P, i)
    return unipoly.resultant(P, Pi, nominal=(d, d - i))


# ---------------------------------------------------------------------------
# Buchberger machinery (field coefficients)
# ---------------------------------------------------------------------------

def _require_field(f: MultiPoly):
    if not f.char:
        raise UnsupportedFieldError("Groebner machinery needs field coefficients")


def _monomial_lcm(u, v):
    return tuple(max(a, b) for a, b in zip(u, v))


def _divides(u, v):
    return all(a <= b for a, b in zip(u, v))


def s_polynomial(f: MultiPoly, g: MultiPoly, order: WeightedOrder) -> MultiPoly:
    """lcm-cancellation combination of f and g with leading terms removed."""
    if f.is_zero or g.is_zero:
        raise DomainError("s_polynomial of the zero polynomial")
    _require_field(f)
    p = f.char
    lmf, lmg = f.leading_monomial(order), g.leading_monomial(order)
    lcf, lcg = f.terms[lmf], g.terms[lmg]
    lcm = _monomial_lcm(lmf, lmg)
    mf = MultiPoly(f.nvars, p, {tuple(l - a for l, a in zip(lcm, lmf)):
                                pow(lcf, p - 2, p)})
    mg = MultiPoly(f.nvars, p, {tuple(l - a for l, a in zip(lcm, lmg)):
                                pow(lcg, p - 2, p)})
    return f * mf - g * mg


def normal_form(f: MultiPoly, G, order: WeightedOrder) -> MultiPoly:
    """Remainder of f under multivariate division by the set G: no term of
    the result is divisible by any leading monomial of G."""
    G = [g for g in G if not g.is_zero]
    if not G:
        return f
    _require_field(G[0])
    p = f.char
    lead = [(g.leading_monomial(order), g) for g in G]
    rem_terms = {}
    work = f
    while not work.is_zero:
        lm = work.leading_monomial(order)
        lc = work.terms[lm]
        for lmg, g in lead:
            if _divides(lmg, lm):
                q = MultiPoly(f.nvars, p,
                              {tuple(a - b for a, b in zip(lm, lmg)):
                               lc * pow(g.terms[lmg], p - 2, p) % p})
                work = work - g * q
                break
        else:
            rem_terms[lm] = lc
            work = work - MultiPoly(f.nvars, p, {lm: lc})
    return MultiPoly(f.nvars, p, rem_terms)


@dataclass
class GroebnerCertificate:
    """Deterministic record of a Buchberger check: which generator pairs
    were reduced and which were skipped by the coprime-leading-monomial
    criterion (pairs are 0-based indices in the input order)."""

    is_groebner: bool
    pairs_reduced: list = field(default_factory=list)
    pairs_skipped: list = field(default_factory=list)
    failing_pair: tuple | None = None

    def to_json(self):
        return {"is_groebner": self.is_groebner,
                "pairs_reduced": [list(p) for p in self.pairs_reduced],
                "pairs_skipped": [list(p) for p in self.pairs_skipped],
                "failing_pair": list(self.failing_pair) if self.failing_pair else None}


def buchberger_is_gb(G, order: WeightedOrder,
                     max_pairs: int = 10000) -> GroebnerCertificate:
    """True iff every S-polynomial of the generating set reduces to zero.

    Pairs whose leading monomials are coprime are skipped (Buchberger's
    product criterion) and listed in the certificate.  Pairs are processed
    in canonical (i, j) order so the certificate is reproducible.
    """
    G = list(G)
    if any(g.is_zero for g in G):
        raise DomainError("generating set contains the zero polynomial")
    if G:
        _require_field(G[0])
    npairs = len(G) * (len(G) - 1) // 2
    if npairs > max_pairs:
        raise BudgetExceededError(
            f"{npairs} S-pairs exceed the budget of {max_pairs}",
            required=npairs, budget=max_pairs)
    cert = GroebnerCertificate(is_groebner=True)
    lms = [g.leading_monomial(order) for g in G]
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            lcm = _monomial_lcm(lms[i], lms[j])
            if all(a + b == l for a, b, l in zip(lms[i], lms[j], lcm)):
                cert.pairs_skipped.append((i, j))
                continue
            s = s_polynomial(G[i], G[j], order)
            if not normal_form(s, G, order).is_zero:
                cert.is_groebner = False
                cert.failing_pair = (i, j)
                return cert
            cert.pairs_reduced.append((i, j))
    return cert
