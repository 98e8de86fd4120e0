"""Exact arithmetic foundation: integers, rationals, prime fields F_p,
small extension fields F_{p^m}, primality testing, and the binomial
number theory (p-adic valuations, Kummer carries, Lucas reduction).

Big integers and rationals are Python's built-in `int` and
`fractions.Fraction`; both are arbitrary precision and canonical by
construction.  Field elements are plain values (int for F_p, tuple of
ints for F_{p^m}, Fraction for Q) manipulated through an immutable
context object, so everything is hashable and safe to share across
threads.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

from .errors import DomainError, UnsupportedFieldError


# ---------------------------------------------------------------------------
# Extended naturals: v_p(0) is infinite, and we keep that explicit rather
# than smuggling in a sentinel integer.
# ---------------------------------------------------------------------------

@total_ordering
class _Infinity:
    """The single point at infinity for p-adic valuations."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("casasalvero-infinity")

    def __repr__(self):
        return "INFINITY"


INFINITY = _Infinity()


def v_p(n: int, p: int) -> int | _Infinity:
    """p-adic valuation: the largest e with p^e | n; v_p(0) is INFINITY."""
    if not is_prime(p):
        raise DomainError(f"v_p needs a prime, got {p}")
    if n == 0:
        return INFINITY
    n = abs(n)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def kummer_carries(d: int, i: int, p: int) -> int:
    """Number of carries when i and d-i are added in base p.

    By Kummer's theorem this equals v_p(binomial(d, i)).
    """
    if i < 0 or i > d:
        raise DomainError(f"need 0 <= i <= d, got i={i}, d={d}")
    if not is_prime(p):
        raise DomainError(f"kummer_carries needs a prime, got {p}")
    a, b = i, d - i
    carries = 0
    carry = 0
    while a or b or carry:
        s = a % p + b % p + carry
        carry = 1 if s >= p else 0
        carries += carry
        a //= p
        b //= p
    return carries


def binom_mod_p(d: int, i: int, p: int) -> int:
    """binomial(d, i) mod p via Lucas' theorem (digitwise products)."""
    if i < 0 or i > d:
        raise DomainError(f"need 0 <= i <= d, got i={i}, d={d}")
    if not is_prime(p):
        raise DomainError(f"binom_mod_p needs a prime, got {p}")
    result = 1
    while d or i:
        dd, ii = d % p, i % p
        if ii > dd:
            return 0
        # small binomial of digits, exact then reduced
        num, den = 1, 1
        for t in range(ii):
            num *= dd - t
            den *= t + 1
        result = result * ((num // den) % p) % p
        d //= p
        i //= p
    return result


# ---------------------------------------------------------------------------
# Primality
# ---------------------------------------------------------------------------

# Sprp bases proven deterministic for all n < 3.3 * 10^24 (covers 2^64).
_MR_BASES_64 = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def _sprp(n: int, a: int) -> bool:
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(r - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int, rounds: int = 64) -> bool:
    """Primality test.

    Deterministic (fixed Miller-Rabin witness set) for n < 2^64; for larger n
    a seeded probabilistic Miller-Rabin with `rounds` random bases.
    """
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n == q:
            return True
        if n % q == 0:
            return False
    if n < 1 << 64:
        return all(_sprp(n, a) for a in _MR_BASES_64)
    rng = random.Random(n)  # seeded by the input: reproducible verdicts
    return all(_sprp(n, rng.randrange(2, n - 1)) for _ in range(rounds))


# ---------------------------------------------------------------------------
# Dense F_p[x] helpers on plain lists (ascending coefficients, no trailing
# zeros).  Only what the extension-field context and the irreducibility
# search need; the general-purpose polynomial type lives in unipoly.
# ---------------------------------------------------------------------------

def _fpx_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _fpx_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _fpx_trim(out)


def _fpx_mod(a, m, p):
    # m monic
    a = list(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        c = a[-1]
        if c:
            off = len(a) - 1 - dm
            for j in range(dm):
                a[off + j] = (a[off + j] - c * m[j]) % p
        a.pop()
    return _fpx_trim(a)


def _fpx_divmod(a, b, p):
    """Quotient and remainder in F_p[x]; b nonzero, lists ascending."""
    a = list(a)
    db = len(b) - 1
    inv_lc = pow(b[-1], p - 2, p)
    q = [0] * max(len(a) - db, 0)
    while len(a) - 1 >= db and a:
        c = a[-1] * inv_lc % p
        off = len(a) - 1 - db
        if c:
            q[off] = c
            for j in range(db):
                a[off + j] = (a[off + j] - c * b[j]) % p
        a.pop()
        _fpx_trim(a)
    return _fpx_trim(q), a


def _fpx_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        # make b monic for the reduction
        inv = pow(b[-1], p - 2, p)
        bm = [c * inv % p for c in b]
        a, b = b, _fpx_mod(a, bm, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a


def _fpx_powmod(base, e, m, p):
    result = [1]
    base = _fpx_mod(base, m, p)
    while e:
        if e & 1:
            result = _fpx_mod(_fpx_mul(result, base, p), m, p)
        base = _fpx_mod(_fpx_mul(base, base, p), m, p)
        e >>= 1
    return result


def _fpx_is_irreducible(f, p):
    """Rabin's test for a monic polynomial over F_p (ascending coeffs)."""
    m = len(f) - 1
    if m <= 0:
        return False
    if m == 1:
        return True
    x = [0, 1]
    # x^(p^m) == x mod f
    t = _fpx_powmod(x, p**m, f, p)
    if _fpx_trim([(a - b) % p for a, b in itertools.zip_longest(t, x, fillvalue=0)]):
        return False
    for ell in {q for q in range(2, m + 1) if m % q == 0 and is_prime(q)}:
        t = _fpx_powmod(x, p ** (m // ell), f, p)
        diff = _fpx_trim([(a - b) % p for a, b in itertools.zip_longest(t, x, fillvalue=0)])
        if len(_fpx_gcd(diff, f, p)) - 1 != 0:
            return False
    return True


def find_irreducible(p: int, m: int) -> tuple[int, ...]:
    """First monic irreducible of degree m over F_p in a fixed enumeration.

    Enumeration order: the lower coefficients (c_0, ..., c_{m-1}) are read as
    a base-p counter with c_0 least significant, counting up from zero.  The
    result is deterministic, so extension fields are reproducible.  Returned
    ascending, including the leading 1 (length m + 1).
    """
    if m < 1:
        raise DomainError(f"extension degree must be >= 1, got {m}")
    if not is_prime(p):
        raise DomainError(f"find_irreducible needs a prime, got {p}")
    for counter in range(p**m):
        t = counter
        coeffs = []
        for _ in range(m):
            coeffs.append(t % p)
            t //= p
        f = coeffs + [1]
        if _fpx_is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("unreachable: irreducibles of every degree exist")


# ---------------------------------------------------------------------------
# Coefficient ring contexts
# ---------------------------------------------------------------------------

class RingContext:
    """Duck-typed interface shared by all coefficient rings.

    Elements are plain immutable Python values; the context supplies the
    operations.  Contexts themselves are immutable after construction.
    """

    is_field = False
    characteristic = 0

    def is_zero(self, a):
        return a == self.zero

    def format(self, a) -> str:
        return str(a)


class IntegerRing(RingContext):
    """Z with Python ints."""

    zero = 0
    one = 1

    def from_int(self, n):
        return n

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def exact_div(self, a, b):
        q, r = divmod(a, b)
        if r:
            raise DomainError(f"inexact division {a} / {b} in Z")
        return q

    def descriptor(self):
        return FieldDescriptor(tag="integers")

    def __repr__(self):
        return "ZZ"

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash("ZZ")


class Rationals(RingContext):
    """Q with fractions.Fraction elements."""

    is_field = True
    zero = Fraction(0)
    one = Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in Q")
        return 1 / Fraction(a)

    def div(self, a, b):
        return Fraction(a) / b

    exact_div = div

    def descriptor(self):
        return FieldDescriptor(tag="rationals")

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")


class PrimeField(RingContext):
    """F_p with int elements in [0, p).

    Python ints are arbitrary precision, so one code path serves both small
    moduli and the 53-bit prime 7390044713023799; there is no separate
    overflow-prone fast path to maintain.  (Hot loops use the compiled
    kernels in `_kernels` instead.)
    """

    is_field = True
    zero = 0
    one = 1

    def __init__(self, p: int, check: bool = True):
        if check and not is_prime(p):
            raise DomainError(f"{p} is not prime")
        self.p = p
        self.characteristic = p

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of 0 in F_{self.p}")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    exact_div = div

    def pow(self, a, e):
        return pow(a, e, self.p)

    def frobenius_root(self, a):
        # Fermat: a^p = a, so a is its own p-th root.
        return a % self.p

    @property
    def order(self):
        return self.p

    def elements(self):
        return range(self.p)

    def descriptor(self):
        return FieldDescriptor(tag="prime", p=self.p)

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


class ExtField(RingContext):
    """F_{p^m} as residue polynomials modulo a monic irreducible of degree m.

    Elements are tuples of length m over [0, p), ascending in the generator.
    """

    is_field = True

    def __init__(self, p: int, m: int, modulus: tuple[int, ...] | None = None,
                 check: bool = True):
        self.base = PrimeField(p, check=check)
        if m < 1:
            raise DomainError(f"extension degree must be >= 1, got {m}")
        self.p = p
        self.m = m
        self.characteristic = p
        if modulus is None:
            modulus = find_irreducible(p, m)
        else:
            modulus = tuple(c % p for c in modulus)
            if len(modulus) != m + 1 or modulus[-1] != 1:
                raise DomainError("modulus must be monic of degree m")
            if check and not _fpx_is_irreducible(list(modulus), p):
                raise DomainError(f"modulus {modulus} is reducible over F_{p}")
        self.modulus = modulus
        self.zero = (0,) * m
        self.one = tuple([1] + [0] * (m - 1)) if m > 1 else (1,)

    def from_int(self, n):
        return tuple([n % self.p] + [0] * (self.m - 1))

    def lift(self, coeffs):
        """Element from an iterable of generator-power coefficients."""
        c = [x % self.p for x in coeffs][: self.m]
        c += [0] * (self.m - len(c))
        return tuple(c)

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x % self.p for x in a)

    def mul(self, a, b):
        prod = _fpx_mod(_fpx_mul(list(a), list(b), self.p), list(self.modulus), self.p)
        prod += [0] * (self.m - len(prod))
        return tuple(prod)

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError(f"inverse of 0 in {self!r}")
        # extended Euclid against the modulus
        p = self.p
        r0, r1 = list(self.modulus), _fpx_trim(list(a))
        s0, s1 = [], [1]
        while r1:
            q, rem = _fpx_divmod(r0, r1, p)
            qs1 = _fpx_mul(q, s1, p)
            s_next = _fpx_trim([(x - y) % p for x, y in
                                itertools.zip_longest(s0, qs1, fillvalue=0)])
            r0, r1 = r1, rem
            s0, s1 = s1, s_next
        # r0 is a nonzero constant (modulus irreducible, a nonzero)
        assert len(r0) == 1
        scale = pow(r0[0], p - 2, p)
        out = _fpx_mod([c * scale % p for c in s0], list(self.modulus), p)
        out += [0] * (self.m - len(out))
        return tuple(out)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    exact_div = div

    def pow(self, a, e):
        result = self.one
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def frobenius_root(self, a):
        # over a perfect field of order p^m the p-th root is a^(p^(m-1))
        return self.pow(a, self.p ** (self.m - 1))

    @property
    def order(self):
        return self.p ** self.m

    def elements(self):
        return (tuple(reversed(t))
                for t in itertools.product(range(self.p), repeat=self.m))

    def element_index(self, a):
        """Canonical integer encoding: sum a_i * p^i."""
        return sum(c * self.p**i for i, c in enumerate(a))

    def element_from_index(self, n):
        out = []
        for _ in range(self.m):
            out.append(n % self.p)
            n //= self.p
        return tuple(out)

    def format(self, a):
        if all(c == 0 for c in a[1:]):
            return str(a[0])
        parts = []
        for i, c in enumerate(a):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                g = "w" if i == 1 else f"w^{i}"
                parts.append(g if c == 1 else f"{c}*{g}")
        return "+".join(parts) if parts else "0"

    def descriptor(self):
        return FieldDescriptor(tag="extension", p=self.p, m=self.m,
                               modulus=self.modulus)

    def __repr__(self):
        return f"GF({self.p}^{self.m})"

    def __eq__(self, other):
        return (isinstance(other, ExtField) and other.p == self.p
                and other.m == self.m and other.modulus == self.modulus)

    def __hash__(self):
        return hash(("GF", self.p, self.m, self.modulus))


def frobenius_root(c, field):
    """The unique r with r^p = c over a finite field; errors over Q/Z."""
    fn = getattr(field, "frobenius_root", None)
    if fn is None:
        raise UnsupportedFieldError(f"no Frobenius root over {field!r}")
    return fn(c)


# ---------------------------------------------------------------------------
# Serializable field description
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldDescriptor:
    """Self-describing, JSON-serializable tag for a coefficient ring."""

    tag: str  # "rationals" | "integers" | "prime" | "extension"
    p: int | None = None
    m: int | None = None
    modulus: tuple[int, ...] | None = None

    def build(self) -> RingContext:
        if self.tag == "rationals":
            return Rationals()
        if self.tag == "integers":
            return IntegerRing()
        if self.tag == "prime":
            return PrimeField(self.p)
        if self.tag == "extension":
            return ExtField(self.p, self.m, self.modulus)
        raise DomainError(f"unknown field tag {self.tag!r}")

    def to_json(self):
        out = {"tag": self.tag}
        if self.p is not None:
            out["p"] = self.p
        if self.m is not None:
            out["m"] = self.m
        if self.modulus is not None:
            out["modulus"] = list(self.modulus)
        return out

    @classmethod
    def from_json(cls, obj):
        return cls(tag=obj["tag"], p=obj.get("p"), m=obj.get("m"),
                   modulus=tuple(obj["modulus"]) if obj.get("modulus") else None)

    def __str__(self):
        if self.tag == "rationals":
            return "Q"
        if self.tag == "integers":
            return "Z"
        if self.tag == "prime":
            return f"F_{self.p}"
        if self.tag == "extension":
            return f"F_{self.p}^{self.m}"
        return self.tag
