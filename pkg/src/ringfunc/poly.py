"""Dense univariate polynomials with formal derivative, composition and
ring-targeted evaluation.

Coefficients are arbitrary-precision Python integers by default.  A polynomial
may instead be tagged with a ring, in which case its coefficients are element
encodings of that ring (used for extension fields, where interpolation output
cannot be written with integer coefficients).  Integer-coefficient polynomials
are never reduced on construction: the same object can be read mod p, mod
p^(n-1) and mod p^n, which the canonical-form machinery relies on.
"""

from __future__ import annotations

from typing import Any, Iterable


class ParseError(ValueError):
    """Syntax error in polynomial text, with the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def _strip(coeffs: list, zero) -> tuple:
    while coeffs and coeffs[-1] == zero:
        coeffs.pop()
    return tuple(coeffs)


class Polynomial:
    """Immutable dense polynomial; index = degree, no trailing zeros."""

    __slots__ = ("coeffs", "ring")

    def __init__(self, coeffs: Iterable = (), ring=None):
        zero = 0 if ring is None else ring.zero
        lst = list(coeffs)
        if ring is None:
            for c in lst:
                if not isinstance(c, int):
                    raise TypeError(f"integer coefficient expected, got {c!r}")
        object.__setattr__(self, "coeffs", _strip(lst, zero))
        object.__setattr__(self, "ring", ring)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, ring=None) -> "Polynomial":
        return cls((), ring)

    @classmethod
    def constant(cls, c, ring=None) -> "Polynomial":
        return cls((c,), ring)

    @classmethod
    def x(cls) -> "Polynomial":
        return cls((0, 1))

    @classmethod
    def monomial(cls, c: int, degree: int) -> "Polynomial":
        return cls((0,) * degree + (c,))

    # -- basic queries ------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, k: int):
        zero = 0 if self.ring is None else self.ring.zero
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else zero

    # -- coefficient-domain plumbing ----------------------------------

    def _domain(self):
        ring = self.ring
        if ring is None:
            return 0, lambda a, b: a + b, lambda a, b: a * b
        return ring.zero, ring.add, ring.mul

    def _coerce_pair(self, other: "Polynomial"):
        """Unify the coefficient domains of self and other."""
        if self.ring is other.ring or self.ring == other.ring:
            return self, other
        if self.ring is None:
            return self._into(other.ring), other
        if other.ring is None:
            return self, other._into(self.ring)
        raise ValueError("polynomials over different rings")

    def _into(self, ring) -> "Polynomial":
        # integer coefficients map through the canonical Z -> ring homomorphism
        return Polynomial([ring.from_int(c) for c in self.coeffs], ring)

    def _wrap(self, other):
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, int):
            return Polynomial((other,))
        return NotImplemented

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        f, g = self._coerce_pair(other)
        add = f._domain()[1]
        a, b = f.coeffs, g.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = add(out[k], c)
        return Polynomial(out, f.ring)

    __radd__ = __add__

    def __neg__(self):
        if self.ring is None:
            return Polynomial([-c for c in self.coeffs])
        return Polynomial([self.ring.neg(c) for c in self.coeffs], self.ring)

    def __sub__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        f, g = self._coerce_pair(other)
        if f.is_zero() or g.is_zero():
            return Polynomial.zero(f.ring)
        zero, add, mul = f._domain()
        out = [zero] * (len(f.coeffs) + len(g.coeffs) - 1)
        for i, a in enumerate(f.coeffs):
            if a == zero:
                continue
            for j, b in enumerate(g.coeffs):
                out[i + j] = add(out[i + j], mul(a, b))
        return Polynomial(out, f.ring)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        if self.ring is None:
            result = Polynomial((1,))
        else:
            result = Polynomial((self.ring.one,), self.ring)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs and self.ring == other.ring

    def __hash__(self):
        return hash((self.coeffs, self.ring))

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"

    def __str__(self):
        return format_polynomial(self)

    # -- calculus and composition -------------------------------------

    def derive(self) -> "Polynomial":
        """Formal derivative: coefficient k of the result is (k+1)*c_{k+1}."""
        if self.degree < 1:
            return Polynomial.zero(self.ring)
        if self.ring is None:
            return Polynomial([k * c for k, c in enumerate(self.coeffs) if k])
        ring = self.ring
        out = [ring.mul(ring.from_int(k), c) for k, c in enumerate(self.coeffs) if k]
        return Polynomial(out, ring)

    def compose(self, inner: "Polynomial") -> "Polynomial":
        """f.compose(g) = f(g(x)), by Horner substitution."""
        f, g = self._coerce_pair(self._wrap(inner))
        result = Polynomial.zero(f.ring)
        for c in reversed(f.coeffs):
            result = result * g + Polynomial.constant(c, f.ring)
        return result

    # -- evaluation ---------------------------------------------------

    def eval(self, ring, point):
        """Horner evaluation in `ring`, reducing at every step.

        Integer coefficients are reduced through ring.from_int.  A polynomial
        tagged with ring K can be evaluated in K itself or in the dual
        extension of K (coefficients embed as alpha-part zero); anything else
        is a mismatch.
        """
        enc = getattr(point, "encoding", point)
        coeffs = self._coeffs_for(ring)
        acc = ring.zero
        for c in reversed(coeffs):
            acc = ring.add(ring.mul(acc, enc), c)
        return acc

    def _coeffs_for(self, ring):
        if self.ring is None or getattr(self.ring, "integer_encoded", False):
            # residue encodings are plain integers, so reuse the Z -> ring map
            return [ring.from_int(c) for c in self.coeffs]
        if self.ring == ring:
            return self.coeffs
        if getattr(ring, "base", None) == self.ring:
            return [ring.embed(c) for c in self.coeffs]
        raise ValueError(f"cannot evaluate {self.ring} coefficients in {ring}")

    def eval_int(self, k: int) -> int:
        """Plain integer evaluation; only for integer-coefficient polynomials."""
        if self.ring is not None:
            raise ValueError("eval_int requires integer coefficients")
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * k + c
        return acc

    # -- serialization ------------------------------------------------

    def coefficient_list(self) -> list:
        """JSON form: dense coefficient array, lowest degree first.

        Ring-tagged coefficients are rendered as canonical element indices.
        """
        if self.ring is None:
            return list(self.coeffs)
        return [self.ring.index(c) for c in self.coeffs]

    def reduced_mod(self, m: int) -> "Polynomial":
        """Coefficients reduced into [0, m-1]; integer polynomials only."""
        if self.ring is not None:
            raise ValueError("reduced_mod requires integer coefficients")
        return Polynomial([c % m for c in self.coeffs])


X = Polynomial.x()


def format_polynomial(f: Polynomial) -> str:
    """Canonical text form, highest degree first; parses back to f when the
    coefficients are integers."""
    if f.is_zero():
        return "0"
    ring = f.ring
    parts = []
    for k in range(f.degree, -1, -1):
        c = f.coefficient(k)
        if ring is None:
            if c == 0:
                continue
            mag, negative = abs(c), c < 0
        else:
            if c == ring.zero:
                continue
            mag, negative = ring.index(c), False
        if k == 0:
            body = str(mag)
        else:
            xpart = "x" if k == 1 else f"x^{k}"
            body = xpart if mag == 1 else f"{mag}*{xpart}"
        if not parts:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(parts)


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def expect(self, ch: str):
        if not self.take(ch):
            raise ParseError(f"expected {ch!r}", self.pos)

    def natural(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ParseError("expected a number", start)
        return int(self.text[start:self.pos])


def parse(text: str) -> Polynomial:
    """Parse polynomial text into an integer-coefficient Polynomial.

    Grammar: terms joined by + and -, each term a product of factors
    (juxtaposition or *), each factor an integer, x, or a parenthesized
    expression, optionally raised with ^ to a nonnegative integer power.
    Whitespace is insignificant.  Examples: "x^2 - x", "2x^3+2x",
    "(x^2-x)^2", "-3*x + 1".
    """
    sc = _Scanner(text)
    poly = _parse_expr(sc)
    sc.skip_ws()
    if sc.pos != len(sc.text):
        raise ParseError(f"unexpected {sc.text[sc.pos]!r}", sc.pos)
    return poly


def _parse_expr(sc: _Scanner) -> Polynomial:
    sign = -1 if sc.take("-") else 1
    if sign == 1:
        sc.take("+")
    acc = _parse_term(sc) * sign
    while True:
        if sc.take("+"):
            acc = acc + _parse_term(sc)
        elif sc.take("-"):
            acc = acc - _parse_term(sc)
        else:
            return acc


def _parse_term(sc: _Scanner) -> Polynomial:
    acc = _parse_factor(sc)
    while True:
        ch = sc.peek()
        if ch == "*":
            sc.take("*")
            acc = acc * _parse_factor(sc)
        elif ch.isdigit() or ch == "x" or ch == "(":
            acc = acc * _parse_factor(sc)
        else:
            return acc


def _parse_factor(sc: _Scanner) -> Polynomial:
    ch = sc.peek()
    if ch.isdigit():
        base = Polynomial.constant(sc.natural())
    elif ch == "x":
        sc.take("x")
        base = Polynomial.x()
    elif ch == "(":
        sc.take("(")
        base = _parse_expr(sc)
        sc.expect(")")
    else:
        raise ParseError("expected a coefficient, x or (", sc.pos)
    if sc.take("^"):
        return base ** sc.natural()
    return base
