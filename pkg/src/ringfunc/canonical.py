"""Canonical forms and exact counts for polynomial functions on Z_{p^n}.

Every function induced by a polynomial mod p^n is induced by a unique reduced
combination of the scaled falling factorials p^i * (x)_j.  This module builds
that basis, canonicalizes polynomials against it, counts the function spaces
in closed form, and extends the normal form to the unit-valued case, where a
leading mod-p unit table is refined layer by layer through the powers of p.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .funcspace import FunctionTable, induce, lagrange
from .poly import Polynomial, X
from .rings import PrimePowerRing, check_cap, is_prime


def vp_factorial(p: int, j: int) -> int:
    """p-adic valuation of j!, by Legendre's sum of floor(j / p^i)."""
    if j < 0:
        raise ValueError("factorial valuation needs j >= 0")
    total = 0
    q = p
    while q <= j:
        total += j // q
        q *= p
    return total


@lru_cache(maxsize=None)
def beta(p: int, n: int) -> int:
    """Least k with p^n | k!; the degree cutoff for functions mod p^n."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < 1:
        raise ValueError("need n >= 1")
    k = 1
    while vp_factorial(p, k) < n:
        k += 1
    return k


@lru_cache(maxsize=None)
def falling_factorial(j: int) -> Polynomial:
    """(x)_j = x(x-1)...(x-j+1), an integer polynomial; (x)_0 = 1."""
    if j < 0:
        raise ValueError("need j >= 0")
    if j == 0:
        return Polynomial((1,))
    return falling_factorial(j - 1) * (X - (j - 1))


def kernel_basis(p: int, n: int) -> list[tuple[int, int]]:
    """Exponent pairs (i, j) for the null-function kernel mod p^n.

    The pair (i, j) encodes p^i * (x)_j with i = n - 1 - v_p(j!), the least
    scaling that makes the term null mod p^{n-1}.  One pair per j below
    beta(p, n), where v_p(j!) < n keeps the scaling meaningful, so there are
    beta(p, n) pairs in all.
    """
    if n < 2:
        raise ValueError("kernel basis needs n >= 2")
    return [(n - 1 - vp_factorial(p, j), j) for j in range(beta(p, n))]


def kernel_count(p: int, n: int) -> int:
    """Number of kernel coefficient vectors: p to the number of basis pairs."""
    return p ** len(kernel_basis(p, n))


def enumerate_kernel(p: int, n: int, cap: int | None = None):
    """Yield every combination of the kernel basis with coefficients in [0, p).

    Each yielded polynomial induces the zero function mod p^{n-1}; the
    combinations are pairwise distinct as functions mod p^n.
    """
    basis = kernel_basis(p, n)
    check_cap(p ** len(basis), cap, "kernel enumeration")
    polys = [falling_factorial(j) * p**i for i, j in basis]
    m = p**n
    digits = [0] * len(basis)
    while True:
        f = Polynomial.zero()
        for c, g in zip(digits, polys):
            if c:
                f = f + g * c
        yield f.reduced_mod(m)
        pos = len(digits) - 1
        while pos >= 0 and digits[pos] == p - 1:
            digits[pos] = 0
            pos -= 1
        if pos < 0:
            return
        digits[pos] += 1


def _divide_linear(coeffs: list[int], s: int) -> tuple[list[int], int]:
    """Divide the integer polynomial sum c_k x^k by (x - s).

    Returns (quotient coefficients low to high, remainder), exactly.
    """
    acc = 0
    out = []
    for c in reversed(coeffs):
        acc = acc * s + c
        out.append(acc)
    r = out.pop()
    out.reverse()
    return out, r


def falling_factorial_coefficients(f: Polynomial, count: int) -> list[int]:
    """First `count` coefficients of f in the basis (x)_0, (x)_1, (x)_2, ...

    Synthetic division peels them off one at a time: f = b_0 + (x - 0) * q_0,
    then q_0 = b_1 + (x - 1) * q_1, and so on.  Exact integer arithmetic.
    """
    if f.ring is not None:
        raise ValueError("expected integer coefficients")
    coeffs = list(f.coeffs)
    out = []
    for shift in range(count):
        if not coeffs:
            out.append(0)
        else:
            coeffs, r = _divide_linear(coeffs, shift)
            out.append(r)
    return out


@dataclass(frozen=True)
class CanonicalForm:
    """Reduced falling-factorial form mod p^n.

    terms lists (i, j, a) for a * p^i * (x)_j with digit a in [1, p), one term
    per basis slot, sorted by (j, i), zero digits omitted.  The constraint
    i + v_p(j!) < n keeps every term nonzero as a function.
    """

    p: int
    n: int
    terms: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        p, n = self.p, self.n
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if n < 1:
            raise ValueError("need n >= 1")
        prev = None
        for i, j, a in self.terms:
            if i < 0 or j < 0:
                raise ValueError(f"bad exponents ({i}, {j})")
            if not 1 <= a < p:
                raise ValueError(f"digit {a} out of range for p = {p}")
            if i + vp_factorial(p, j) >= n:
                raise ValueError(f"term ({i}, {j}) is null mod {p}^{n}")
            if prev is not None and (j, i) <= prev:
                raise ValueError("terms must be strictly sorted by (j, i)")
            prev = (j, i)

    def to_polynomial(self) -> Polynomial:
        f = Polynomial.zero()
        for i, j, a in self.terms:
            f = f + falling_factorial(j) * (a * self.p**i)
        return f.reduced_mod(self.p**self.n)

    def to_json_dict(self) -> dict:
        return {"p": self.p, "n": self.n, "terms": [list(t) for t in self.terms]}


def _digit_terms(p: int, n: int, j: int, residual: int) -> list[tuple[int, int, int]]:
    """Base-p digits of the residual coefficient of (x)_j, as (i, j, a) terms."""
    v = vp_factorial(p, j)
    if v >= n:
        return []
    c = residual % p ** (n - v)
    out = []
    i = 0
    while c:
        c, a = divmod(c, p)
        if a:
            out.append((i, j, a))
        i += 1
    return out


def canonicalize(f: Polynomial, p: int, n: int) -> CanonicalForm:
    """Canonical form of the function [f] mod p^n.

    Expands f over falling factorials, reduces the coefficient of (x)_j mod
    p^{n - v_p(j!)}, and splits the survivors into base-p digit terms.  The
    result is re-induced and compared against f on all of Z_{p^n}; a mismatch
    raises rather than returning a wrong form.
    """
    if f.ring is not None:
        raise ValueError("expected integer coefficients")
    b = falling_factorial_coefficients(f, beta(p, n))
    terms = []
    for j, coeff in enumerate(b):
        terms.extend(_digit_terms(p, n, j, coeff))
    form = CanonicalForm(p, n, tuple(terms))
    ring = PrimePowerRing(p, n)
    if induce(form.to_polynomial(), ring) != induce(f, ring):
        raise RuntimeError("canonical form failed re-induction check")
    return form


def enumerate_canonical_forms(p: int, n: int, cap: int | None = None):
    """Yield the canonical forms of all polynomial functions mod p^n."""
    check_cap(count_polynomial_functions(p, n), cap, "canonical form enumeration")
    slots = [(j, n - vp_factorial(p, j)) for j in range(beta(p, n))]
    radices = [p**e for _, e in slots]
    digits = [0] * len(slots)
    while True:
        terms = []
        for (j, _), c in zip(slots, digits):
            terms.extend(_digit_terms(p, n, j, c))
        yield CanonicalForm(p, n, tuple(terms))
        pos = len(digits) - 1
        while pos >= 0 and digits[pos] == radices[pos] - 1:
            digits[pos] = 0
            pos -= 1
        if pos < 0:
            return
        digits[pos] += 1


def count_polynomial_functions(p: int, n: int) -> int:
    """Number of functions on Z_{p^n} induced by polynomials, in closed form."""
    beta(p, n)  # validates arguments
    return p ** sum(beta(p, k) for k in range(1, n + 1))


def count_unit_valued_functions(p: int, n: int) -> int:
    """Number of unit-valued polynomial functions on Z_{p^n}, in closed form."""
    beta(p, n)
    return (p - 1) ** p * p ** sum(beta(p, k) for k in range(2, n + 1))


def uv_table_count_prime(p: int) -> int:
    return (p - 1) ** p


def uv_table_index(values, p: int) -> int:
    """1-based rank of a unit-valued table on Z_p in lexicographic order."""
    values = tuple(values)
    if len(values) != p:
        raise ValueError(f"table must have {p} entries")
    rank = 0
    for v in values:
        if not 1 <= v < p:
            raise ValueError(f"value {v} is not a unit mod {p}")
        rank = rank * (p - 1) + (v - 1)
    return rank + 1


def uv_table_from_index(s: int, p: int) -> tuple[int, ...]:
    """Inverse of uv_table_index: the s-th unit-valued table on Z_p."""
    if not 1 <= s <= (p - 1) ** p:
        raise ValueError(f"index {s} out of range")
    rank = s - 1
    out = []
    for _ in range(p):
        rank, d = divmod(rank, p - 1)
        out.append(d + 1)
    out.reverse()
    return tuple(out)


def leading_representative(p: int, s: int) -> Polynomial:
    """Canonical integer polynomial inducing the s-th unit table mod p."""
    table = uv_table_from_index(s, p)
    interp = lagrange(FunctionTable(PrimePowerRing(p, 1), table))
    return canonicalize(interp, p, 1).to_polynomial()


@dataclass(frozen=True)
class UnitValuedCanonicalForm:
    """Layered normal form of a unit-valued polynomial function mod p^n.

    s ranks the induced unit table mod p; layer k = 2 .. n holds the digit
    terms with i + v_p(j!) = k - 1, which adjust the function mod p^k without
    disturbing it mod p^{k-1}.
    """

    p: int
    n: int
    s: int
    layers: tuple[tuple[int, tuple[tuple[int, int, int], ...]], ...]

    def __post_init__(self):
        p, n = self.p, self.n
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if n < 1:
            raise ValueError("need n >= 1")
        if not 1 <= self.s <= (p - 1) ** p:
            raise ValueError(f"leading index {self.s} out of range")
        if tuple(k for k, _ in self.layers) != tuple(range(2, n + 1)):
            raise ValueError("layers must cover k = 2 .. n in order")
        for k, terms in self.layers:
            prev = None
            for i, j, a in terms:
                if not 1 <= a < p:
                    raise ValueError(f"digit {a} out of range")
                if i + vp_factorial(p, j) != k - 1:
                    raise ValueError(f"term ({i}, {j}) does not belong to layer {k}")
                if prev is not None and (j, i) <= prev:
                    raise ValueError("layer terms must be strictly sorted by (j, i)")
                prev = (j, i)

    def to_polynomial(self) -> Polynomial:
        f = leading_representative(self.p, self.s)
        for _, terms in self.layers:
            for i, j, a in terms:
                f = f + falling_factorial(j) * (a * self.p**i)
        return f.reduced_mod(self.p**self.n)

    def to_json_dict(self) -> dict:
        # layers keyed by stringified level so the object round-trips as JSON
        return {
            "p": self.p,
            "n": self.n,
            "s": self.s,
            "layers": {str(k): [list(t) for t in terms] for k, terms in self.layers},
        }


def canonicalize_unit_valued(f: Polynomial, p: int, n: int) -> UnitValuedCanonicalForm:
    """Layered normal form of a unit-valued [f] mod p^n.

    The residue table mod p fixes the leading index; each subsequent layer is
    the canonical form of the deficit f - h mod p^k, whose terms all sit at
    depth i + v_p(j!) = k - 1 because the deficit is null mod p^{k-1}.
    """
    if f.ring is not None:
        raise ValueError("expected integer coefficients")
    ring = PrimePowerRing(p, n)
    if not induce(f, ring).is_unit_valued():
        raise ValueError(f"polynomial is not unit-valued mod {p}^{n}")
    table = induce(f, PrimePowerRing(p, 1)).values
    s = uv_table_index(table, p)
    h = leading_representative(p, s)
    layers = []
    for k in range(2, n + 1):
        form_k = canonicalize(f - h, p, k)
        for i, j, _ in form_k.terms:
            if i + vp_factorial(p, j) != k - 1:
                raise RuntimeError("deficit was not null at the previous level")
        layers.append((k, form_k.terms))
        # accumulate the raw terms, not the mod-p^k reduction: the layers must
        # add up to the function mod p^n, not just mod their own level
        for i, j, a in form_k.terms:
            h = h + falling_factorial(j) * (a * p**i)
    if induce(h, ring) != induce(f, ring):
        raise RuntimeError("layered form failed re-induction check")
    return UnitValuedCanonicalForm(p, n, s, tuple(layers))


def _layer_slots(p: int, k: int) -> list[tuple[int, int]]:
    """(i, j) positions with i + v_p(j!) = k - 1, sorted by j."""
    return [(k - 1 - vp_factorial(p, j), j) for j in range(beta(p, k))]


def enumerate_unit_valued_forms(p: int, n: int, cap: int | None = None):
    """Yield the normal forms of all unit-valued polynomial functions mod p^n."""
    check_cap(count_unit_valued_functions(p, n), cap, "unit-valued form enumeration")
    slot_lists = {k: _layer_slots(p, k) for k in range(2, n + 1)}
    width = sum(len(v) for v in slot_lists.values())
    for s in range(1, (p - 1) ** p + 1):
        digits = [0] * width
        while True:
            layers = []
            pos = 0
            for k in range(2, n + 1):
                terms = []
                for i, j in slot_lists[k]:
                    a = digits[pos]
                    pos += 1
                    if a:
                        terms.append((i, j, a))
                layers.append((k, tuple(terms)))
            yield UnitValuedCanonicalForm(p, n, s, tuple(layers))
            pos = width - 1
            while pos >= 0 and digits[pos] == p - 1:
                digits[pos] = 0
                pos -= 1
            if pos < 0:
                break
            digits[pos] += 1
