"""Dense univariate polynomials over a coefficient ring context.

Coefficients are stored constant-term first with no trailing zeros; the
zero polynomial is the empty tuple and reports degree -1.  All values are
immutable.

Provides Hasse and classical derivatives, monic gcd over fields, Taylor
shift, resultants (Sylvester determinant at nominal degrees, plus an
independent polynomial-remainder-sequence cross-check over fields),
p-power root descent over perfect fields, and linear-power detection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import linalg
from .arith import frobenius_root
from .errors import DomainError, PolyParseError, UnsupportedFieldError


class UniPoly:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        """coeffs: iterable of ring elements, constant term first."""
        coeffs = list(coeffs)
        while coeffs and ring.is_zero(coeffs[-1]):
            coeffs.pop()
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, *_):
        raise AttributeError("UniPoly is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, ring):
        return cls(ring, ())

    @classmethod
    def one(cls, ring):
        return cls(ring, (ring.one,))

    @classmethod
    def x(cls, ring):
        return cls(ring, (ring.zero, ring.one))

    @classmethod
    def constant(cls, ring, c):
        return cls(ring, (c,))

    @classmethod
    def monomial(cls, ring, e, c=None):
        c = ring.one if c is None else c
        return cls(ring, [ring.zero] * e + [c])

    @classmethod
    def from_desc(cls, ring, coeffs):
        """Highest-degree coefficient first, already ring elements."""
        return cls(ring, list(reversed(list(coeffs))))

    @classmethod
    def from_int_desc(cls, ring, ints):
        """Highest-degree coefficient first, plain integers."""
        return cls(ring, [ring.from_int(c) for c in reversed(list(ints))])

    # -- basic structure ----------------------------------------------------

    @property
    def degree(self):
        """Degree; the zero polynomial reports -1."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def lc(self):
        if not self.coeffs:
            raise DomainError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == self.ring.one

    def coeff(self, e):
        """Coefficient of X^e (zero beyond the degree)."""
        return self.coeffs[e] if 0 <= e < len(self.coeffs) else self.ring.zero

    def __eq__(self, other):
        return (isinstance(other, UniPoly) and other.ring == self.ring
                and other.coeffs == self.coeffs)

    def __hash__(self):
        return hash((self.ring, self.coeffs))

    def __repr__(self):
        return f"UniPoly({self.ring!r}, {format_poly(self)!r})"

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        R = self.ring
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = R.add(out[i], c)
        return UniPoly(R, out)

    def __neg__(self):
        R = self.ring
        return UniPoly(R, [R.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        R = self.ring
        if not isinstance(other, UniPoly):  # scalar
            return UniPoly(R, [R.mul(c, other) for c in self.coeffs])
        if self.is_zero or other.is_zero:
            return UniPoly.zero(R)
        out = [R.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if R.is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = R.add(out[i + j], R.mul(a, b))
        return UniPoly(R, out)

    def __pow__(self, e):
        result = UniPoly.one(self.ring)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, c):
        return self * c

    def evaluate(self, x):
        """Horner evaluation at a ring element."""
        R = self.ring
        acc = R.zero
        for c in reversed(self.coeffs):
            acc = R.add(R.mul(acc, x), c)
        return acc

    def map_coeffs(self, target_ring, fn):
        return UniPoly(target_ring, [fn(c) for c in self.coeffs])

    # -- division and gcd (fields) ------------------------------------------

    def divmod(self, other):
        R = self.ring
        if not R.is_field:
            raise UnsupportedFieldError(f"division needs a field, not {R!r}")
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        inv_lc = R.inv(other.lc)
        quot = [R.zero] * max(len(rem) - db, 0)
        while len(rem) - 1 >= db and rem:
            c = R.mul(rem[-1], inv_lc)
            off = len(rem) - 1 - db
            if not R.is_zero(c):
                quot[off] = c
                for j in range(db):
                    rem[off + j] = R.sub(rem[off + j], R.mul(c, other.coeffs[j]))
            rem.pop()
            while rem and R.is_zero(rem[-1]):
                rem.pop()
        return UniPoly(R, quot), UniPoly(R, rem)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self):
        if self.is_zero:
            return self
        R = self.ring
        if self.coeffs[-1] == R.one:
            return self
        if not R.is_field:
            raise UnsupportedFieldError(f"cannot make monic over {R!r}")
        return self * R.inv(self.lc)


def gcd(P: UniPoly, Q: UniPoly) -> UniPoly:
    """Monic gcd over a field; gcd(P, 0) = monic P, gcd(0, 0) = 0."""
    R = P.ring
    if not R.is_field:
        raise UnsupportedFieldError(
            f"gcd needs field coefficients, not {R!r}; use resultant instead")
    while not Q.is_zero:
        P, Q = Q, P % Q
    return P.monic()


# ---------------------------------------------------------------------------
# Derivatives
# ---------------------------------------------------------------------------

def hasse_derivative(P: UniPoly, i: int) -> UniPoly:
    """i-th Hasse derivative: X^e maps to binomial(e, i) * X^(e-i).

    Equivalently the i-th Taylor coefficient of P(X + t) in t.  Never
    identically zero on a generic polynomial in any characteristic, unlike
    the classical i-th derivative.
    """
    if i < 0:
        raise DomainError(f"derivative order must be >= 0, got {i}")
    if i == 0:
        return P
    R = P.ring
    out = [R.zero] * max(len(P.coeffs) - i, 0)
    for e in range(i, len(P.coeffs)):
        c = P.coeffs[e]
        if not R.is_zero(c):
            out[e - i] = R.mul(c, R.from_int(math.comb(e, i)))
    return UniPoly(R, out)


def classical_derivative(P: UniPoly, i: int = 1) -> UniPoly:
    """i-fold formal derivative (equals i! times the Hasse derivative)."""
    if i < 0:
        raise DomainError(f"derivative order must be >= 0, got {i}")
    R = P.ring
    for _ in range(i):
        out = [R.zero] * max(len(P.coeffs) - 1, 0)
        for e in range(1, len(P.coeffs)):
            out[e - 1] = R.mul(P.coeffs[e], R.from_int(e))
        P = UniPoly(R, out)
    return P


def taylor_shift(P: UniPoly, c) -> UniPoly:
    """P(X + c), by Horner re-expansion; O(d^2) ring operations."""
    R = P.ring
    x_plus_c = UniPoly(R, (c, R.one))
    acc = UniPoly.zero(R)
    for coeff in reversed(P.coeffs):
        acc = acc * x_plus_c + UniPoly.constant(R, coeff)
    return acc


# ---------------------------------------------------------------------------
# Resultants
# ---------------------------------------------------------------------------

def sylvester_matrix(P: UniPoly, Q: UniPoly, m: int, n: int):
    """Sylvester matrix at nominal degrees (m, n): first n rows from P's
    coefficients, then m rows from Q's, highest degree first."""
    R = P.ring
    if m < P.degree or n < Q.degree:
        raise DomainError("nominal degrees must be >= the true degrees")
    size = m + n
    pdesc = [P.coeff(m - j) for j in range(m + 1)]
    qdesc = [Q.coeff(n - j) for j in range(n + 1)]
    rows = []
    for r in range(n):
        rows.append([R.zero] * r + pdesc + [R.zero] * (size - r - m - 1))
    for r in range(m):
        rows.append([R.zero] * r + qdesc + [R.zero] * (size - r - n - 1))
    return rows


def resultant(P: UniPoly, Q: UniPoly, nominal: tuple[int, int] | None = None):
    """Resultant as the Sylvester determinant at nominal degrees.

    Defaults to the true degrees.  With P of nonvanishing leading
    coefficient the result is zero exactly when P and Q share a root in the
    algebraic closure, including the degenerate case Q identically zero.

    Sign convention (fixed here once and for all, since no canonical choice
    exists): the determinant is taken with Q's coefficient block on top,
    i.e. resultant(P, Q) = (-1)^(deg P * deg Q) times the variant with P's
    block on top.  resultant_prs follows the same normalization.
    """
    R = P.ring
    if nominal is None:
        m = max(P.degree, 0)
        n = max(Q.degree, 0)
    else:
        m, n = nominal
    if m == 0 and n == 0:
        return R.one
    mat = sylvester_matrix(Q, P, n, m)
    # With polynomial entries Bareiss suffers intermediate swell beyond
    # ~12x12, while the banded Sylvester shape keeps the memoized cofactor
    # state space small; switch engines there.
    if getattr(R, "nvars", 0) and len(mat) > 12:
        return linalg.det_cofactor(R, mat)
    return linalg.determinant(R, mat)


def resultant_prs(P: UniPoly, Q: UniPoly):
    """Resultant over a field via the Euclidean remainder sequence.

    Independent of the Sylvester-determinant route; always at true degrees,
    normalized to the same sign convention as `resultant`.
    """
    R = P.ring
    if not R.is_field:
        raise UnsupportedFieldError("PRS resultant needs a field")
    if P.is_zero or Q.is_zero:
        if P.degree <= 0 and Q.degree <= 0:
            return R.one
        return R.zero
    acc = R.one
    # the classical remainder-sequence value has P's block on top; flip to
    # the package convention (Q's block on top)
    sign = -1 if (P.degree * Q.degree) % 2 else 1
    if P.degree < Q.degree:
        if (P.degree * Q.degree) % 2:
            sign = -sign
        P, Q = Q, P
    while Q.degree > 0:
        Rm = P % Q
        dr = Rm.degree if not Rm.is_zero else -1
        if dr < 0:
            # common factor unless Q is a unit (it is not: degree > 0)
            return R.zero
        if (P.degree * Q.degree) % 2:
            sign = -sign
        # res(P, Q) = lc(Q)^(deg P - deg R) * (-1)^(dP dQ) * res(Q, R)
        e = P.degree - dr
        acc = R.mul(acc, _ring_pow(R, Q.lc, e))
        P, Q = Q, Rm
    # deg Q == 0: res(P, c) = c^deg P
    acc = R.mul(acc, _ring_pow(R, Q.lc, P.degree))
    return acc if sign == 1 else R.neg(acc)


def _ring_pow(R, a, e):
    out = R.one
    while e:
        if e & 1:
            out = R.mul(out, a)
        a = R.mul(a, a)
        e >>= 1
    return out


# ---------------------------------------------------------------------------
# p-power descent and linear-power detection
# ---------------------------------------------------------------------------

def descend(P: UniPoly, p: int, k: int) -> UniPoly:
    """The p^k-th root of P over a perfect field of characteristic p.

    Requires every exponent in the support to be divisible by p^k.  One
    descent step divides exponents by p and takes the Frobenius root of
    each coefficient; k steps are applied.
    """
    R = P.ring
    if R.characteristic != p:
        raise UnsupportedFieldError(
            f"descend needs characteristic {p}, ring is {R!r}")
    for _ in range(k):
        for e, c in enumerate(P.coeffs):
            if e % p and not R.is_zero(c):
                raise DomainError(
                    f"support not contained in {p}N: nonzero coefficient at X^{e}")
        out = [R.zero] * (len(P.coeffs) // p + 1)
        for e in range(0, len(P.coeffs), p):
            out[e // p] = frobenius_root(P.coeffs[e], R)
        P = UniPoly(R, out)
    return P


def is_linear_power(P: UniPoly):
    """The root alpha if P = (X - alpha)^d, else None.  P monic, d >= 1.

    In characteristic p the p-part of d is first stripped by descent (after
    a support check); the residual degree is then invertible and the
    candidate root is read off the subleading coefficient and verified by
    full expansion.
    """
    R = P.ring
    if not P.is_monic or P.degree < 1:
        raise DomainError("is_linear_power expects a monic polynomial of degree >= 1")
    d = P.degree
    p = R.characteristic
    e = 0
    if p:
        while d % p == 0:
            d //= p
            e += 1
        if e:
            pk = p**e
            if any(i % pk and not R.is_zero(c) for i, c in enumerate(P.coeffs)):
                return None
            P = descend(P, p, e)
    # deg P = d is now invertible in the field
    alpha = R.neg(R.div(P.coeff(d - 1), R.from_int(d)))
    linear = UniPoly(R, (R.neg(alpha), R.one))
    if linear**d != P:
        return None
    for _ in range(e):
        alpha = frobenius_root(alpha, R)
    return alpha


# ---------------------------------------------------------------------------
# Gcd profile against all proper Hasse derivatives
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GcdProfile:
    """deg gcd(P, P_i) for i = 1..d-1, with the convention gcd(P, 0) = P.

    `zero_derivative[i-1]` flags the degenerate case P_i identically zero
    (possible in characteristic p for special P, never for the generic
    polynomial)."""

    degrees: tuple[int, ...]
    zero_derivative: tuple[bool, ...]

    @property
    def all_nontrivial(self):
        return all(g >= 1 for g in self.degrees)

    def to_json(self):
        return {"degrees": list(self.degrees),
                "zero_derivative": list(self.zero_derivative)}

    @classmethod
    def from_json(cls, obj):
        return cls(tuple(obj["degrees"]), tuple(obj["zero_derivative"]))


def gcd_profile(P: UniPoly) -> GcdProfile:
    d = P.degree
    degrees = []
    zeros = []
    for i in range(1, d):
        Pi = hasse_derivative(P, i)
        if Pi.is_zero:
            degrees.append(d)
            zeros.append(True)
        else:
            degrees.append(gcd(P, Pi).degree)
            zeros.append(False)
    return GcdProfile(tuple(degrees), tuple(zeros))


# ---------------------------------------------------------------------------
# Text format (shared with the CLI)
# ---------------------------------------------------------------------------

def parse_poly(text: str, ring) -> UniPoly:
    """Parse either a comma-separated coefficient list (highest degree
    first) or an expression over the tokens X ^ * + - and integers."""
    if "," in text:
        parts = text.split(",")
        offset = 0
        ints = []
        for part in parts:
            stripped = part.strip()
            try:
                ints.append(int(stripped))
            except ValueError:
                raise PolyParseError(f"bad coefficient {stripped!r}",
                                     offset + part.index(stripped[0]) if stripped else offset)
            offset += len(part) + 1
        return UniPoly.from_int_desc(ring, ints)
    return _parse_expression(text, ring)


def _tokenize(text):
    tokens = []  # (kind, value, offset)
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j]), i))
            i = j
        elif ch in "Xx":
            tokens.append(("X", None, i))
            i += 1
        elif ch in "^*+-":
            tokens.append((ch, None, i))
            i += 1
        else:
            raise PolyParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", None, len(text)))
    return tokens


def _parse_expression(text, ring):
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos]

    def advance():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def parse_factor():
        kind, value, off = peek()
        if kind == "int":
            advance()
            return UniPoly.constant(ring, ring.from_int(value))
        if kind == "X":
            advance()
            e = 1
            if peek()[0] == "^":
                advance()
                kind2, value2, off2 = peek()
                if kind2 != "int":
                    raise PolyParseError("expected exponent after '^'", off2)
                advance()
                e = value2
            return UniPoly.monomial(ring, e)
        raise PolyParseError("expected integer or X", off)

    def parse_term():
        f = parse_factor()
        while peek()[0] == "*":
            advance()
            f = f * parse_factor()
        return f

    total = UniPoly.zero(ring)
    negate = False
    kind, _, _ = peek()
    if kind in "+-":
        negate = kind == "-"
        advance()
    total = total + (-parse_term() if negate else parse_term())
    while True:
        kind, _, off = peek()
        if kind == "end":
            return total
        if kind not in "+-":
            raise PolyParseError("expected '+' or '-'", off)
        advance()
        term = parse_term()
        total = total - term if kind == "-" else total + term


def format_poly(P: UniPoly) -> str:
    """Human-readable descending form, e.g. 'X^3+2*X+1'."""
    if P.is_zero:
        return "0"
    R = P.ring
    parts = []
    for e in range(P.degree, -1, -1):
        c = P.coeff(e)
        if R.is_zero(c):
            continue
        ctext = R.format(c)
        wrap = any(s in ctext for s in "+-*") and e > 0
        if wrap:
            ctext = f"({ctext})"
        if e == 0:
            term = ctext
        else:
            xpart = "X" if e == 1 else f"X^{e}"
            term = xpart if c == R.one else f"{ctext}*{xpart}"
        parts.append(term)
    out = parts[0]
    for term in parts[1:]:
        out += "-" + term[1:] if term.startswith("-") else "+" + term
    return out
