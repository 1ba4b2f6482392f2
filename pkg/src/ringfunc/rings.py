"""Finite commutative rings with explicit element enumeration.

Supported kinds: Z_m (modular residues, prime powers recorded as such), the
fields F_q = F_p[t]/(modulus) with a deterministically chosen modulus, and the
dual-number extension built in the dual module.  Element encodings are
canonical data, not symbols: residues are ints in [0, m-1], field elements of
degree m >= 2 are coefficient vectors of length m over [0, p-1], dual elements
are pairs.  Enumeration order is fixed and documented per kind because value
tables, serializations and test vectors all index into it.
"""

from __future__ import annotations

import itertools
import math
import os

from .poly import Polynomial

DEFAULT_RING_SIZE_CAP = 1 << 16
DEFAULT_ENUMERATION_CAP = 10_000_000

CAP_ENV_VAR = "RINGFUNC_CAP"


class SizeCapError(ValueError):
    """An operation would enumerate past its configured size cap."""


def enumeration_cap() -> int:
    """Default cap on enumeration sizes; RINGFUNC_CAP overrides it."""
    raw = os.environ.get(CAP_ENV_VAR)
    if raw is None:
        return DEFAULT_ENUMERATION_CAP
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{CAP_ENV_VAR} must be an integer, got {raw!r}") from None
    if value <= 0:
        raise ValueError(f"{CAP_ENV_VAR} must be positive, got {value}")
    return value


def resolve_cap(cap: int | None) -> int:
    return enumeration_cap() if cap is None else cap


def check_cap(count: int, cap: int | None, what: str) -> None:
    limit = resolve_cap(cap)
    if count > limit:
        raise SizeCapError(f"{what}: {count} exceeds cap {limit}")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power_decomposition(m: int) -> tuple[int, int] | None:
    """(p, n) with m = p**n for prime p, or None."""
    if m < 2:
        return None
    for p in range(2, m + 1):
        if p * p > m:
            return (m, 1) if m > 1 else None
        if m % p == 0:
            n = 0
            q = m
            while q % p == 0:
                q //= p
                n += 1
            return (p, n) if q == 1 else None
    return None


class RingElement:
    """A ring element bundled with its ring, for ergonomic arithmetic."""

    __slots__ = ("ring", "encoding")

    def __init__(self, ring: "Ring", encoding):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "encoding", encoding)

    def __setattr__(self, name, value):
        raise AttributeError("RingElement is immutable")

    def _enc(self, other):
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise ValueError("elements of different rings")
            return other.encoding
        if isinstance(other, int):
            return self.ring.from_int(other)
        return NotImplemented

    def __add__(self, other):
        enc = self._enc(other)
        if enc is NotImplemented:
            return NotImplemented
        return RingElement(self.ring, self.ring.add(self.encoding, enc))

    __radd__ = __add__

    def __mul__(self, other):
        enc = self._enc(other)
        if enc is NotImplemented:
            return NotImplemented
        return RingElement(self.ring, self.ring.mul(self.encoding, enc))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElement(self.ring, self.ring.neg(self.encoding))

    def __sub__(self, other):
        enc = self._enc(other)
        if enc is NotImplemented:
            return NotImplemented
        return RingElement(self.ring, self.ring.add(self.encoding, self.ring.neg(enc)))

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        acc = self.ring.one
        for _ in range(k):
            acc = self.ring.mul(acc, self.encoding)
        return RingElement(self.ring, acc)

    def __eq__(self, other):
        if isinstance(other, RingElement):
            return self.ring == other.ring and self.encoding == other.encoding
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, self.encoding))

    def __repr__(self):
        return f"RingElement({self.encoding!r} in {self.ring.descriptor})"

    def is_unit(self) -> bool:
        return self.ring.is_unit(self.encoding)

    def inverse(self) -> "RingElement":
        return RingElement(self.ring, self.ring.inverse(self.encoding))


class Ring:
    """Base class: a finite commutative ring with enumerated elements.

    Identity is the descriptor string, so two handles built from the same
    descriptor compare equal and can be mixed freely.
    """

    kind = "abstract"
    integer_encoded = False

    def __init__(self):
        self._tables = {}

    # subclasses set: size, elements, descriptor, zero, one

    def add(self, x, y):
        raise NotImplementedError

    def neg(self, x):
        raise NotImplementedError

    def mul(self, x, y):
        raise NotImplementedError

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def from_int(self, k: int):
        """The canonical image of the integer k."""
        raise NotImplementedError

    def index(self, x) -> int:
        """Position of the encoding x in the element enumeration."""
        raise NotImplementedError

    def is_unit(self, x) -> bool:
        raise NotImplementedError

    def inverse(self, x):
        """Multiplicative inverse by exhaustive search; subclasses add fast paths."""
        if not self.is_unit(x):
            raise ValueError(f"{x!r} is not a unit in {self.descriptor}")
        for y in self.elements:
            if self.mul(x, y) == self.one:
                return y
        raise AssertionError("unit without inverse in a finite ring")

    @property
    def is_field(self) -> bool:
        return False

    def units(self) -> tuple:
        """Unit encodings in enumeration order."""
        if "units" not in self._tables:
            self._tables["units"] = tuple(x for x in self.elements if self.is_unit(x))
        return self._tables["units"]

    def element(self, x) -> RingElement:
        """Wrap x as a RingElement.

        Bare ints are taken as enumeration indices for non-integer-encoded
        rings and as residues (reduced) for integer-encoded ones; canonical
        encodings pass through.
        """
        if isinstance(x, RingElement):
            if x.ring != self:
                raise ValueError("element of a different ring")
            return x
        if self.integer_encoded:
            if not isinstance(x, int):
                raise ValueError(f"expected an integer for {self.descriptor}")
            return RingElement(self, self.from_int(x))
        if isinstance(x, int):
            if not 0 <= x < self.size:
                raise ValueError(f"index {x} out of range for {self.descriptor}")
            return RingElement(self, self.elements[x])
        if x in self._element_set():
            return RingElement(self, x)
        raise ValueError(f"{x!r} is not an element of {self.descriptor}")

    def _element_set(self):
        if "eset" not in self._tables:
            self._tables["eset"] = frozenset(self.elements)
        return self._tables["eset"]

    # -- index-based tables for enumeration-heavy callers -------------

    def index_op_tables(self) -> tuple[list[list[int]], list[list[int]]]:
        """(add, mul) tables on element indices; cached."""
        if "ops" not in self._tables:
            idx = {e: i for i, e in enumerate(self.elements)}
            els = self.elements
            add_t = [[idx[self.add(a, b)] for b in els] for a in els]
            mul_t = [[idx[self.mul(a, b)] for b in els] for a in els]
            self._tables["ops"] = (add_t, mul_t)
        return self._tables["ops"]

    def unit_index_mask(self) -> list[bool]:
        if "umask" not in self._tables:
            self._tables["umask"] = [self.is_unit(e) for e in self.elements]
        return self._tables["umask"]

    def power_index_table(self, max_degree: int) -> list[list[int]]:
        """pw[d][i] = index of elements[i] ** d, for 0 <= d <= max_degree."""
        cached = self._tables.get("pw")
        if cached is not None and len(cached) > max_degree:
            return cached
        _, mul_t = self.index_op_tables()
        one_idx = self.index(self.one)
        pw = [[one_idx] * self.size]
        for d in range(1, max_degree + 1):
            prev = pw[-1]
            pw.append([mul_t[prev[i]][i] for i in range(self.size)])
        self._tables["pw"] = pw
        return pw

    # -- identity -----------------------------------------------------

    def __eq__(self, other):
        if self is other:
            return True
        if isinstance(other, Ring):
            return self.descriptor == other.descriptor
        return NotImplemented

    def __hash__(self):
        return hash(self.descriptor)

    def __repr__(self):
        return f"<ring {self.descriptor}, {self.size} elements>"


class ModularRing(Ring):
    """Z_m with canonical residues 0..m-1, enumerated in that order."""

    kind = "modular"
    integer_encoded = True

    def __init__(self, m: int, *, descriptor: str | None = None, size_cap: int | None = None):
        super().__init__()
        if m < 2:
            raise ValueError(f"modulus must be at least 2, got {m}")
        cap = DEFAULT_RING_SIZE_CAP if size_cap is None else size_cap
        if m > cap:
            raise SizeCapError(f"ring of size {m} exceeds size cap {cap}")
        self.m = m
        self.size = m
        self.elements = tuple(range(m))
        self.descriptor = descriptor or f"zm:{m}"
        self.zero = 0
        self.one = 1 % m
        self.prime_power = prime_power_decomposition(m)

    def add(self, x, y):
        return (x + y) % self.m

    def neg(self, x):
        return (-x) % self.m

    def mul(self, x, y):
        return (x * y) % self.m

    def from_int(self, k: int):
        return k % self.m

    def index(self, x) -> int:
        return x

    def is_unit(self, x) -> bool:
        return math.gcd(x, self.m) == 1

    def inverse(self, x):
        try:
            return pow(x, -1, self.m)
        except ValueError:
            raise ValueError(f"{x} is not a unit in {self.descriptor}") from None

    @property
    def is_field(self) -> bool:
        return is_prime(self.m)


class PrimePowerRing(ModularRing):
    """Z_{p^n}, the modular ring with the (p, n) structure recorded.

    The maximal ideal is exactly the multiples of p.
    """

    kind = "prime-power"

    def __init__(self, p: int, n: int, *, size_cap: int | None = None):
        if not is_prime(p):
            raise ValueError(f"p must be prime, got {p}")
        if n < 1:
            raise ValueError(f"exponent must be at least 1, got {n}")
        super().__init__(p ** n, descriptor=f"zpn:{p},{n}", size_cap=size_cap)
        self.p = p
        self.n = n

    def maximal_ideal(self) -> tuple:
        return tuple(x for x in self.elements if x % self.p == 0)


def _pp_normalize(coeffs: list[int], p: int) -> tuple[int, ...]:
    out = [c % p for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _pp_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] = (out[i + j] + ai * bj) % p
    return _pp_normalize(out, p)


def _pp_mod(a, b, p):
    """Remainder of a modulo monic b, coefficients over F_p."""
    a = list(a)
    db = len(b) - 1
    while len(a) - 1 >= db:
        lead = a[-1] % p
        if lead:
            shift = len(a) - 1 - db
            for i, bi in enumerate(b):
                a[shift + i] = (a[shift + i] - lead * bi) % p
        a.pop()
    return _pp_normalize(a, p)


def _pp_is_irreducible(f: tuple[int, ...], p: int) -> bool:
    d = len(f) - 1
    for e in range(1, d // 2 + 1):
        for tail in itertools.product(range(p), repeat=e):
            g = tail + (1,)
            if not _pp_mod(f, g, p):
                return False
    return True


def find_irreducible(p: int, m: int) -> Polynomial:
    """Lexicographically smallest monic irreducible of degree m over F_p.

    Candidates are compared by their coefficient vectors read from the
    constant term up; the search is exhaustive, so the choice is reproducible.
    """
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if m < 1:
        raise ValueError(f"degree must be at least 1, got {m}")
    for tail in itertools.product(range(p), repeat=m):
        candidate = tail + (1,)
        if _pp_is_irreducible(candidate, p):
            return Polynomial(candidate)
    raise AssertionError("no monic irreducible found, which cannot happen")


class FiniteField(Ring):
    """F_q with q = p**m.

    Degree 1 uses plain residues (so F_p and Z_p enumerate identically).  For
    m >= 2, elements are coefficient vectors (c_0, ..., c_{m-1}) meaning
    sum c_i t^i, enumerated by the integer value sum c_i p^i; the element at
    index k < p is then the image of the integer k.
    """

    kind = "finite-field"

    def __init__(self, p: int, m: int = 1, *, size_cap: int | None = None):
        super().__init__()
        if not is_prime(p):
            raise ValueError(f"p must be prime, got {p}")
        if m < 1:
            raise ValueError(f"extension degree must be at least 1, got {m}")
        q = p ** m
        cap = DEFAULT_RING_SIZE_CAP if size_cap is None else size_cap
        if q > cap:
            raise SizeCapError(f"ring of size {q} exceeds size cap {cap}")
        self.p = p
        self.extension_degree = m
        self.size = q
        self.descriptor = f"fq:{p}" if m == 1 else f"fq:{p},{m}"
        self.modulus = tuple(find_irreducible(p, m).coeffs)
        if m == 1:
            self.integer_encoded = True
            self.elements = tuple(range(p))
            self.zero = 0
            self.one = 1 % p
        else:
            self.elements = tuple(self._decode(k) for k in range(q))
            self.zero = (0,) * m
            self.one = (1,) + (0,) * (m - 1)
            # t^k reduced by the modulus, for k = m .. 2m-2
            self._red = self._high_power_reductions()

    def _decode(self, k: int) -> tuple[int, ...]:
        digits = []
        for _ in range(self.extension_degree):
            digits.append(k % self.p)
            k //= self.p
        return tuple(digits)

    def _high_power_reductions(self):
        """Vectors for t^k mod modulus, k = m .. 2m-2."""
        p, m = self.p, self.extension_degree
        red = []
        current = _pp_mod((0,) * m + (1,), self.modulus, p)
        for _ in range(m, 2 * m - 1):
            vec = tuple(current) + (0,) * (m - len(current))
            red.append(vec)
            shifted = (0,) + vec
            current = _pp_mod(shifted, self.modulus, p)
        return red

    def add(self, x, y):
        if self.extension_degree == 1:
            return (x + y) % self.p
        return tuple((a + b) % self.p for a, b in zip(x, y))

    def neg(self, x):
        if self.extension_degree == 1:
            return (-x) % self.p
        return tuple((-a) % self.p for a in x)

    def mul(self, x, y):
        p, m = self.p, self.extension_degree
        if m == 1:
            return (x * y) % p
        conv = [0] * (2 * m - 1)
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    conv[i + j] += a * b
        out = [c % p for c in conv[:m]]
        for k in range(m, 2 * m - 1):
            c = conv[k] % p
            if c:
                vec = self._red[k - m]
                for i in range(m):
                    out[i] = (out[i] + c * vec[i]) % p
        return tuple(out)

    def from_int(self, k: int):
        if self.extension_degree == 1:
            return k % self.p
        return ((k % self.p),) + (0,) * (self.extension_degree - 1)

    def index(self, x) -> int:
        if self.extension_degree == 1:
            return x
        acc = 0
        for c in reversed(x):
            acc = acc * self.p + c
        return acc

    def is_unit(self, x) -> bool:
        return x != self.zero

    def inverse(self, x):
        if x == self.zero:
            raise ValueError(f"0 is not a unit in {self.descriptor}")
        if self.extension_degree == 1:
            return pow(x, -1, self.p)
        acc = self.one
        k = self.size - 2
        base = x
        while k:
            if k & 1:
                acc = self.mul(acc, base)
            k >>= 1
            if k:
                base = self.mul(base, base)
        return acc

    @property
    def is_field(self) -> bool:
        return True

    def modulus_polynomial(self) -> Polynomial:
        return Polynomial(self.modulus)


def make_ring(spec: str, *, size_cap: int | None = None) -> Ring:
    """Build a ring from a descriptor.

    Grammar: ``zm:<m>``, ``zpn:<p>,<n>``, ``fq:<p>[,<m>]``,
    ``dual:<inner-descriptor>``.
    """
    if not isinstance(spec, str):
        raise ValueError(f"ring descriptor must be a string, got {spec!r}")
    head, sep, rest = spec.partition(":")
    if not sep:
        raise ValueError(f"malformed ring descriptor {spec!r}")
    if head == "dual":
        from .dual import dual_ring

        return dual_ring(make_ring(rest, size_cap=size_cap), size_cap=size_cap)
    try:
        params = [int(part) for part in rest.split(",")] if rest else []
    except ValueError:
        raise ValueError(f"malformed ring descriptor {spec!r}") from None
    if head == "zm":
        if len(params) != 1:
            raise ValueError(f"zm takes one parameter, got {spec!r}")
        return ModularRing(params[0], size_cap=size_cap)
    if head == "zpn":
        if len(params) != 2:
            raise ValueError(f"zpn takes two parameters, got {spec!r}")
        return PrimePowerRing(params[0], params[1], size_cap=size_cap)
    if head == "fq":
        if len(params) == 1:
            # one parameter is the order q, to be split as p^m
            pp = prime_power_decomposition(params[0])
            if pp is None:
                raise ValueError(f"field order must be a prime power, got {spec!r}")
            return FiniteField(pp[0], pp[1], size_cap=size_cap)
        if len(params) == 2:
            return FiniteField(params[0], params[1], size_cap=size_cap)
        raise ValueError(f"fq takes one or two parameters, got {spec!r}")
    raise ValueError(f"unknown ring kind {head!r} in {spec!r}")


def is_unit(r: RingElement) -> bool:
    """Unit test for a wrapped element; units are exactly the non-zero-divisors."""
    return r.ring.is_unit(r.encoding)


def units(ring: Ring) -> tuple:
    """Unit encodings of the ring, in enumeration order."""
    return ring.units()
