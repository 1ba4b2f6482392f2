"""Permutation groups of dual rings and the semidirect product they embed in.

A base-coefficient polynomial permutes R[al] exactly when it permutes R and
its derivative is unit-valued, so each dual permutation is pinned down by the
pair of base tables ([f], [f']).  Pairs multiply by the twisted law
(G1, F1) * (G2, F2) = (G1 o G2, (F1 o G2) . F2), which is the semidirect
product of the induced permutation group with the pointwise unit group acting
by precomposition.  This module enumerates the dual permutations, the
stabilizer of the base points, and the ambient product, and ships the
verification routines that check the group axioms and the embedding.

Group elements here hold index tables (tuples of element indices) rather than
raw encodings; composition is then pure integer indexing, which keeps the
exhaustive closure and associativity sweeps fast enough for the q = 4 cases.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product

from .dual import DualRing, dual_ring
from .funcspace import (
    FunctionTable,
    null_degree_bound,
    permutation_tables,
    unit_valued_tables,
)
from .poly import Polynomial
from .rings import Ring, check_cap


def _index_table(F: FunctionTable) -> tuple[int, ...]:
    ring = F.ring
    return tuple(ring.index(v) for v in F.values)


def _unit_inverse_row(ring: Ring) -> dict[int, int]:
    key = "unit_inverse_row"
    tables = ring._tables
    if key not in tables:
        tables[key] = {
            ring.index(u): ring.index(ring.inverse(u)) for u in ring.units()
        }
    return tables[key]


class SemidirectElement:
    """Pair (permutation, unit table) over one ring, in index form.

    perm maps element index to element index and must be a bijection; unit
    maps element index to the index of a unit.  The product twists the second
    unit table by precomposition with the first permutation's partner.
    """

    __slots__ = ("ring", "perm", "unit")

    def __init__(self, ring: Ring, perm, unit):
        perm = tuple(perm)
        unit = tuple(unit)
        size = ring.size
        if len(perm) != size or len(unit) != size:
            raise ValueError("tables must cover the whole ring")
        if set(perm) != set(range(size)):
            raise ValueError("first component is not a permutation")
        mask = ring.unit_index_mask()
        if not all(mask[i] for i in unit):
            raise ValueError("second component is not unit-valued")
        self.ring = ring
        self.perm = perm
        self.unit = unit

    @classmethod
    def _make(cls, ring, perm, unit):
        el = object.__new__(cls)
        el.ring = ring
        el.perm = perm
        el.unit = unit
        return el

    @classmethod
    def identity(cls, ring: Ring) -> "SemidirectElement":
        one = ring.index(ring.one)
        return cls._make(ring, tuple(range(ring.size)), (one,) * ring.size)

    @classmethod
    def from_tables(cls, G: FunctionTable, F: FunctionTable) -> "SemidirectElement":
        if G.ring != F.ring:
            raise ValueError("components live over different rings")
        return cls(G.ring, _index_table(G), _index_table(F))

    def __mul__(self, other: "SemidirectElement") -> "SemidirectElement":
        if self.ring != other.ring:
            raise ValueError("elements live over different rings")
        mul_t = self.ring.index_op_tables()[1]
        p1, p2 = self.perm, other.perm
        f1, f2 = self.unit, other.unit
        perm = tuple(p1[j] for j in p2)
        unit = tuple(mul_t[f1[j]][b] for j, b in zip(p2, f2))
        return SemidirectElement._make(self.ring, perm, unit)

    def inverse(self) -> "SemidirectElement":
        size = self.ring.size
        inv_perm = [0] * size
        for i, j in enumerate(self.perm):
            inv_perm[j] = i
        inv_row = _unit_inverse_row(self.ring)
        unit = tuple(inv_row[self.unit[inv_perm[a]]] for a in range(size))
        return SemidirectElement._make(self.ring, tuple(inv_perm), unit)

    def perm_table(self) -> FunctionTable:
        els = self.ring.elements
        return FunctionTable(self.ring, (els[i] for i in self.perm))

    def unit_table(self) -> FunctionTable:
        els = self.ring.elements
        return FunctionTable(self.ring, (els[i] for i in self.unit))

    def __eq__(self, other):
        if not isinstance(other, SemidirectElement):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.perm == other.perm
            and self.unit == other.unit
        )

    def __hash__(self):
        return hash((self.perm, self.unit))

    def __repr__(self):
        return f"SemidirectElement({self.ring.descriptor}, {self.perm}, {self.unit})"


def precompose_units(F: FunctionTable, G: FunctionTable) -> FunctionTable:
    """Action of a permutation G on a unit table F: the table F o G."""
    if not G.is_bijection():
        raise ValueError("action requires a bijection")
    return F.compose(G)


def semidirect_group(ring: Ring, *, cap: int | None = None) -> list[SemidirectElement]:
    """Every (induced permutation, induced unit table) pair over the ring."""
    perms = sorted(
        _index_table(FunctionTable(ring, t)) for t in permutation_tables(ring, cap=cap)
    )
    units = sorted(
        _index_table(FunctionTable(ring, t)) for t in unit_valued_tables(ring, cap=cap)
    )
    check_cap(len(perms) * len(units), cap, "semidirect product")
    return [
        SemidirectElement._make(ring, p, u) for p in perms for u in units
    ]


class DualPermutation:
    """A permutation of R[al] induced by a base-coefficient polynomial.

    table maps dual element index to dual element index.  witness is a
    polynomial inducing the permutation when one is known; products and
    inverses drop it since composition leaves the polynomial implicit.
    """

    __slots__ = ("dual", "table", "witness")

    def __init__(self, dual: DualRing, table, witness: Polynomial | None = None):
        table = tuple(table)
        if len(table) != dual.size or set(table) != set(range(dual.size)):
            raise ValueError("not a permutation table of the dual ring")
        self.dual = dual
        self.table = table
        self.witness = witness

    @classmethod
    def _make(cls, dual, table, witness):
        el = object.__new__(cls)
        el.dual = dual
        el.table = table
        el.witness = witness
        return el

    @classmethod
    def identity(cls, dual: DualRing) -> "DualPermutation":
        return cls._make(dual, tuple(range(dual.size)), Polynomial.x())

    def __mul__(self, other: "DualPermutation") -> "DualPermutation":
        if self.dual != other.dual:
            raise ValueError("permutations live over different dual rings")
        t1 = self.table
        return DualPermutation._make(self.dual, tuple(t1[j] for j in other.table), None)

    def inverse(self) -> "DualPermutation":
        out = [0] * len(self.table)
        for i, j in enumerate(self.table):
            out[j] = i
        return DualPermutation._make(self.dual, tuple(out), None)

    def base_pair(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Index tables of ([f], [f']) on the base, read off the dual table.

        The image of (a, 1) is (f(a), f'(a)), so one row recovers both.
        """
        base = self.dual.base
        nb = base.size
        ib1 = base.index(base.one)
        G = []
        F = []
        for ia in range(nb):
            va, vb = divmod(self.table[ia * nb + ib1], nb)
            G.append(va)
            F.append(vb)
        return tuple(G), tuple(F)

    def __eq__(self, other):
        if not isinstance(other, DualPermutation):
            return NotImplemented
        return self.dual == other.dual and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"DualPermutation({self.dual.descriptor}, {self.table})"


def embed_dual_permutation(dp: DualPermutation) -> SemidirectElement:
    """The pair ([f], [f']) of a dual permutation, as a semidirect element."""
    G, F = dp.base_pair()
    return SemidirectElement(dp.dual.base, G, F)


def _pair_to_dual_table(dual: DualRing, G, F) -> tuple[int, ...]:
    """Dual permutation table of the pair: (a, b) -> (G(a), F(a) * b)."""
    base = dual.base
    nb = base.size
    mul_t = base.index_op_tables()[1]
    out = []
    for ia in range(nb):
        row = mul_t[F[ia]]
        shift = G[ia] * nb
        for ib in range(nb):
            out.append(shift + row[ib])
    return tuple(out)


def pair_table_sweep(
    base: Ring,
    degree_bound: int,
    *,
    coeff_elements=None,
    cap: int | None = None,
):
    """Sweep coefficient vectors of degree < degree_bound over the base ring,
    yielding (f_table, derivative_table, coefficients) per candidate.

    Tables are index tuples over the base; coefficients come back as a tuple
    of base encodings, constant term first.  Both tables are maintained
    incrementally, so one candidate costs O(|base|) ring operations.
    """
    D = degree_bound
    domain = list(base.elements if coeff_elements is None else coeff_elements)
    if not domain:
        raise ValueError("empty coefficient domain")
    check_cap(len(domain) ** D, cap, "pair sweep")
    size = base.size
    zero_idx = base.index(base.zero)
    if D <= 0:
        yield (zero_idx,) * size, (zero_idx,) * size, ()
        return
    add_t, mul_t = base.index_op_tables()
    pw = base.power_index_table(D - 1)
    els = base.elements
    dom_idx = [base.index(e) for e in domain]
    ndom = len(dom_idx)

    def value_rows(d: int, from_idx: int, to_idx: int):
        delta = base.sub(els[to_idx], els[from_idx])
        drow = mul_t[base.index(delta)]
        frow = [drow[pw[d][pt]] for pt in range(size)]
        if d == 0:
            return frow, None
        scaled = base.mul(base.from_int(d), delta)
        srow = mul_t[base.index(scaled)]
        return frow, [srow[pw[d - 1][pt]] for pt in range(size)]

    step = [
        [value_rows(d, dom_idx[k], dom_idx[k + 1]) for k in range(ndom - 1)]
        for d in range(D)
    ]
    wrap = [value_rows(d, dom_idx[-1], dom_idx[0]) for d in range(D)]

    c0 = dom_idx[0]
    ftab = []
    dtab = []
    for pt in range(size):
        acc = zero_idx
        for d in range(D):
            acc = add_t[acc][mul_t[c0][pw[d][pt]]]
        ftab.append(acc)
        acc = zero_idx
        for d in range(1, D):
            scaled = base.mul(base.from_int(d), els[c0])
            acc = add_t[acc][mul_t[base.index(scaled)][pw[d - 1][pt]]]
        dtab.append(acc)

    digits = [0] * D
    points = range(size)
    while True:
        yield tuple(ftab), tuple(dtab), tuple(els[dom_idx[k]] for k in digits)
        pos = 0
        while pos < D:
            k = digits[pos]
            if k + 1 < ndom:
                frow, drow = step[pos][k]
                digits[pos] = k + 1
            else:
                frow, drow = wrap[pos]
                digits[pos] = 0
            for pt in points:
                ftab[pt] = add_t[ftab[pt]][frow[pt]]
            if drow is not None:
                for pt in points:
                    dtab[pt] = add_t[dtab[pt]][drow[pt]]
            if digits[pos]:
                break
            pos += 1
        else:
            return


_BOUND_CACHE: dict[str, int] = {}


def dual_degree_bound(base: Ring, *, cap: int | None = None) -> int:
    """Least degree of a monic base polynomial that is null on base[al].

    Such a polynomial has [g] = 0 and [g'] = 0 on the base, so reduction by
    it shows every dual permutation comes from a polynomial of smaller
    degree.  Fields give exactly 2q via (x^q - x)^2.  Modular bases are
    searched exhaustively (constant and linear coefficients are forced to
    zero by nullity at 0); the square of the least monic null polynomial
    caps the search at twice the plain null degree bound.
    """
    key = base.descriptor
    if key in _BOUND_CACHE:
        return _BOUND_CACHE[key]
    if base.is_field:
        bound = 2 * base.size
    else:
        m = base.size
        limit = 2 * null_degree_bound(base)
        total = sum(m ** max(D - 2, 0) for D in range(2, limit + 1))
        check_cap(total, cap, "monic null search")
        bound = limit
        found = False
        for D in range(2, limit + 1):
            for tail in product(range(m), repeat=D - 2):
                coeffs = (0, 0) + tail + (1,)
                if _is_null_pair(coeffs, m):
                    bound = D
                    found = True
                    break
            if found:
                break
    _BOUND_CACHE[key] = bound
    return bound


def _is_null_pair(coeffs, m: int) -> bool:
    """Whether the integer polynomial and its derivative both vanish mod m."""
    for a in range(m):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * a + c) % m
        if acc:
            return False
        dacc = 0
        top = len(coeffs) - 1
        for k in range(top, 0, -1):
            dacc = (dacc * a + k * coeffs[k]) % m
        if dacc:
            return False
    return True


def enumerate_dual_permutations(
    base: Ring, *, cap: int | None = None
) -> list[DualPermutation]:
    """All permutations of base[al] induced by base-coefficient polynomials.

    Sweeps every coefficient vector below the dual degree bound, keeps the
    ones whose base table is a bijection and whose derivative table is
    unit-valued, and dedups by the pair, recording the first witness for
    each.  Sorted by table for deterministic output.
    """
    D = dual_degree_bound(base, cap=cap)
    dual = dual_ring(base)
    size = base.size
    mask = base.unit_index_mask()
    seen: dict[tuple, tuple] = {}
    for ftab, dtab, coeffs in pair_table_sweep(base, D, cap=cap):
        if not all(mask[i] for i in dtab):
            continue
        if len(set(ftab)) != size:
            continue
        key = (ftab, dtab)
        if key not in seen:
            seen[key] = coeffs
    out = []
    for (ftab, dtab), coeffs in seen.items():
        table = _pair_to_dual_table(dual, ftab, dtab)
        witness = Polynomial(coeffs, None if base.integer_encoded else base)
        out.append(DualPermutation._make(dual, table, witness))
    out.sort(key=lambda dp: dp.table)
    return out


class StabilizerElement:
    """A dual permutation fixing every base point: x + g with [g] = 0.

    Determined by the unit table [1 + g']; null_part records the first null
    polynomial found inducing it.
    """

    __slots__ = ("ring", "unit", "null_part")

    def __init__(self, ring: Ring, unit, null_part: Polynomial):
        self.ring = ring
        self.unit = tuple(unit)
        self.null_part = null_part

    def unit_table(self) -> FunctionTable:
        els = self.ring.elements
        return FunctionTable(self.ring, (els[i] for i in self.unit))

    def as_semidirect(self) -> SemidirectElement:
        return SemidirectElement(self.ring, tuple(range(self.ring.size)), self.unit)

    def dual_permutation(self) -> DualPermutation:
        dual = dual_ring(self.ring)
        table = _pair_to_dual_table(dual, tuple(range(self.ring.size)), self.unit)
        return DualPermutation(dual, table, self.null_part + Polynomial.x())

    def __eq__(self, other):
        if not isinstance(other, StabilizerElement):
            return NotImplemented
        return self.ring == other.ring and self.unit == other.unit

    def __hash__(self):
        return hash(self.unit)

    def __repr__(self):
        return f"StabilizerElement({self.ring.descriptor}, {self.unit})"


def null_polynomials(
    base: Ring, degree_bound: int | None = None, *, cap: int | None = None
) -> list[Polynomial]:
    """Polynomials of degree < bound inducing the zero function on the base.

    The default bound is the dual degree bound, deep enough that the listed
    polynomials realize every derivative table a null polynomial can have.
    """
    D = dual_degree_bound(base, cap=cap) if degree_bound is None else degree_bound
    zero_idx = base.index(base.zero)
    zero_tab = (zero_idx,) * base.size
    out = []
    for ftab, _, coeffs in pair_table_sweep(base, D, cap=cap):
        if ftab == zero_tab:
            out.append(Polynomial(coeffs, None if base.integer_encoded else base))
    return out


def enumerate_stabilizer(base: Ring, *, cap: int | None = None) -> list[StabilizerElement]:
    """The pointwise stabilizer of the base inside the dual permutations.

    Elements come from x + g with g null on the base; the dual action scales
    the infinitesimal part by 1 + g'(a), so the element is the unit table
    [1 + g'] and only null parts with that table unit-valued qualify.
    """
    D = dual_degree_bound(base, cap=cap)
    size = base.size
    add_t = base.index_op_tables()[0]
    mask = base.unit_index_mask()
    one_idx = base.index(base.one)
    zero_idx = base.index(base.zero)
    zero_tab = (zero_idx,) * size
    seen: dict[tuple, tuple] = {}
    for ftab, dtab, coeffs in pair_table_sweep(base, D, cap=cap):
        if ftab != zero_tab:
            continue
        unit = tuple(add_t[one_idx][i] for i in dtab)
        if all(mask[i] for i in unit) and unit not in seen:
            seen[unit] = coeffs
    out = [
        StabilizerElement(base, unit, Polynomial(coeffs, None if base.integer_encoded else base))
        for unit, coeffs in seen.items()
    ]
    out.sort(key=lambda st: st.unit)
    return out


@dataclass(frozen=True)
class GroupAxiomsReport:
    size: int
    closed: bool
    has_identity: bool
    inverses_ok: bool
    associative: bool
    associativity_mode: str
    abelian: bool
    abelian_mode: str

    @property
    def passed(self) -> bool:
        return self.closed and self.has_identity and self.inverses_ok and self.associative


def verify_group_axioms(
    elements,
    *,
    seed: int = 0,
    exhaustive_limit: int = 64,
    samples: int = 10_000,
) -> GroupAxiomsReport:
    """Check the group axioms on a finite list of elements.

    Closure and the identity and inverse axioms are checked in full.
    Associativity is exhaustive up to exhaustive_limit elements and sampled
    on seeded random triples beyond that; commutativity is probed the same
    way and reported alongside.
    """
    els = list(elements)
    n = len(els)
    if n == 0:
        return GroupAxiomsReport(0, False, False, False, False, "exhaustive", True, "exhaustive")
    pool = set(els)

    closed = True
    for a in els:
        for b in els:
            if a * b not in pool:
                closed = False
                break
        if not closed:
            break

    identity = None
    probe = els[0]
    for e in els:
        if e * probe == probe and probe * e == probe:
            identity = e
            break
    has_identity = identity is not None and all(
        identity * x == x and x * identity == x for x in els
    )

    inverses_ok = has_identity and all(
        (inv := x.inverse()) in pool and x * inv == identity and inv * x == identity
        for x in els
    )

    rng = random.Random(seed)
    if n <= exhaustive_limit:
        associative = all(
            (a * b) * c == a * (b * c) for a in els for b in els for c in els
        )
        associativity_mode = "exhaustive"
    else:
        associative = True
        for _ in range(samples):
            a = els[rng.randrange(n)]
            b = els[rng.randrange(n)]
            c = els[rng.randrange(n)]
            if (a * b) * c != a * (b * c):
                associative = False
                break
        associativity_mode = f"sampled:{samples}"

    if n * n <= samples:
        abelian = all(a * b == b * a for a in els for b in els)
        abelian_mode = "exhaustive"
    else:
        abelian = True
        for _ in range(samples):
            a = els[rng.randrange(n)]
            b = els[rng.randrange(n)]
            if a * b != b * a:
                abelian = False
                break
        abelian_mode = f"sampled:{samples}"

    return GroupAxiomsReport(
        n, closed, has_identity, inverses_ok, associative, associativity_mode,
        abelian, abelian_mode,
    )


@dataclass(frozen=True)
class EmbeddingReport:
    base: str
    dual_perm_count: int
    image_size: int
    ambient_size: int
    perm_count: int
    unit_table_count: int
    stabilizer_size: int
    injective: bool
    homomorphism_ok: bool
    homomorphism_mode: str
    image_in_ambient: bool
    surjective: bool
    factorization_ok: bool

    @property
    def passed(self) -> bool:
        ok = self.injective and self.homomorphism_ok and self.image_in_ambient
        return ok and self.factorization_ok


def verify_embedding(
    base: Ring,
    *,
    seed: int = 0,
    full_limit: int = 4_200_000,
    samples: int = 10_000,
    cap: int | None = None,
) -> EmbeddingReport:
    """Check that reading off base pairs embeds the dual permutations into
    the semidirect product.

    Injectivity and membership of the image are exhaustive.  The
    homomorphism law embed(d1 * d2) = embed(d1) * embed(d2) is exhaustive
    when the number of pairs stays below full_limit, sampled otherwise.
    Surjectivity holds exactly over fields; otherwise the image size is
    compared against the stabilizer-permutation factorization.
    """
    perms = enumerate_dual_permutations(base, cap=cap)
    embedded = [embed_dual_permutation(dp) for dp in perms]
    image = set(embedded)
    injective = len(image) == len(perms)

    ambient = semidirect_group(base, cap=cap)
    ambient_set = set(ambient)
    image_in_ambient = image <= ambient_set

    n = len(perms)
    pairs = [dp.base_pair() for dp in perms]
    mul_t = base.index_op_tables()[1]

    def law_holds(i: int, j: int) -> bool:
        # compare the pair of the composed dual permutation against the
        # twisted product of the pairs, all on raw index tuples
        G1, F1 = pairs[i]
        G2, F2 = pairs[j]
        Gc, Fc = (perms[i] * perms[j]).base_pair()
        if Gc != tuple(G1[a] for a in G2):
            return False
        return Fc == tuple(mul_t[F1[a]][b] for a, b in zip(G2, F2))

    if n * n <= full_limit:
        homomorphism_ok = all(law_holds(i, j) for i in range(n) for j in range(n))
        homomorphism_mode = "exhaustive"
    else:
        rng = random.Random(seed)
        homomorphism_ok = all(
            law_holds(rng.randrange(n), rng.randrange(n)) for _ in range(samples)
        )
        homomorphism_mode = f"sampled:{samples}"

    stab = enumerate_stabilizer(base, cap=cap)
    perm_count = len(permutation_tables(base, cap=cap))
    unit_count = len(unit_valued_tables(base, cap=cap))
    surjective = image == ambient_set
    factorization_ok = (
        len(image) == len(stab) * perm_count
        and len(ambient) == unit_count * perm_count
    )

    return EmbeddingReport(
        base=base.descriptor,
        dual_perm_count=len(perms),
        image_size=len(image),
        ambient_size=len(ambient),
        perm_count=perm_count,
        unit_table_count=unit_count,
        stabilizer_size=len(stab),
        injective=injective,
        homomorphism_ok=homomorphism_ok,
        homomorphism_mode=homomorphism_mode,
        image_in_ambient=image_in_ambient,
        surjective=surjective,
        factorization_ok=factorization_ok,
    )
