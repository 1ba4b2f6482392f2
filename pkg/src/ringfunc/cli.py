"""Command line interface.

Verbs: test a predicate on one polynomial, count function classes by the
closed formulas, compute canonical forms, enumerate groups and forms, run
the verification suites, and export group data for other tools.  Output is
deterministic JSON (CSV for multiplication tables and listings on request);
exit codes are 0 for computed results (a false predicate is still a result),
1 for usage or input errors, 3 when a size cap refuses the work, 4 when a
verification suite finds a failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys

from . import canonical as canon
from . import funcspace as fs
from . import groups as gr
from .dual import DualRing, dual_ring, eval_dual, horner_dual
from .poly import ParseError, Polynomial, format_polynomial, parse
from .rings import (
    CAP_ENV_VAR,
    FiniteField,
    PrimePowerRing,
    Ring,
    SizeCapError,
    check_cap,
    make_ring,
)

_LARGE = 1 << 62


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; the contract here is 1
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _json_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(", ", ": "))


def _emit(args, text: str) -> None:
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _cap(args) -> int | None:
    return _LARGE if args.allow_large else None


def _ring(args) -> Ring:
    if not getattr(args, "ring", None):
        raise ValueError("--ring is required here")
    return make_ring(args.ring, size_cap=_cap(args))


def _base_of(ring: Ring) -> Ring:
    return ring.base if isinstance(ring, DualRing) else ring


def _require_prime_power(ring: Ring) -> tuple[int, int]:
    pp = getattr(ring, "prime_power", None)
    if pp is None and isinstance(ring, FiniteField) and ring.extension_degree == 1:
        pp = (ring.p, 1)
    if pp is None:
        raise ValueError(f"{ring.descriptor} is not a prime power ring")
    return pp


def _pn(args) -> tuple[int, int]:
    if args.p is None or args.n is None:
        raise ValueError("--p and --n are required here")
    return args.p, args.n


def _naive_values(f: Polynomial, ring: Ring) -> list:
    # termwise power accumulation; deliberately not the Horner path
    coeffs = f._coeffs_for(ring)
    out = []
    for r in ring.elements:
        acc = ring.zero
        xp = ring.one
        for c in coeffs:
            acc = ring.add(acc, ring.mul(c, xp))
            xp = ring.mul(xp, r)
        out.append(acc)
    return out


def cmd_test(args) -> int:
    ring = _ring(args)
    f = parse(args.poly)
    prop = args.prop
    oracle = None
    if prop == "null":
        result = fs.is_null(f, ring)
        if args.oracle:
            oracle = all(v == ring.zero for v in _naive_values(f, ring))
    elif prop == "unit-valued":
        result = fs.is_unit_valued(f, ring)
        if args.oracle:
            one = ring.one
            oracle = all(
                any(ring.mul(v, s) == one for s in ring.elements)
                for v in _naive_values(f, ring)
            )
    elif prop == "perm":
        result = fs.is_permutation(f, ring)
        if args.oracle:
            oracle = len(set(_naive_values(f, ring))) == ring.size
    else:  # perm-dual: the named ring (or its base) extended by al
        base = _base_of(ring)
        result = fs.permutes_dual(f, base)
        if args.oracle:
            dual = dual_ring(base, size_cap=_cap(args))
            seen = {
                horner_dual(f, dual, a, b)
                for a in base.elements
                for b in base.elements
            }
            oracle = len(seen) == dual.size
    doc: dict = {"result": result}
    if args.oracle:
        doc["oracle_agrees"] = oracle == result
    _emit(args, _json_dumps(doc))
    return 0


def _brute_beta(p: int, n: int) -> int:
    target = p**n
    fact = 1
    k = 0
    while fact % target:
        k += 1
        fact *= k
    return k


def _brute_count(what: str, p: int, n: int, cap) -> int:
    if what == "beta":
        return _brute_beta(p, n)
    ring = PrimePowerRing(p, n)
    if what == "polyfun":
        return len(fs.induced_tables(ring, cap=cap))
    if what == "uvpf":
        return len(fs.unit_valued_tables(ring, cap=cap))
    q = p ** (n - 1)
    return sum(
        1 for t in fs.induced_tables(ring, cap=cap) if all(v % q == 0 for v in t)
    )


def cmd_count(args) -> int:
    p, n = args.p, args.n
    what = args.what
    if what == "beta":
        formula = canon.beta(p, n)
    elif what == "polyfun":
        formula = canon.count_polynomial_functions(p, n)
    elif what == "uvpf":
        formula = canon.count_unit_valued_functions(p, n)
    else:
        if n < 2:
            raise ValueError("kernel counts need n >= 2")
        formula = canon.kernel_count(p, n)
    doc = {"formula": formula, "n": n, "p": p, "what": what}
    if args.brute_force:
        value = _brute_count(what, p, n, _cap(args))
        doc["brute_force"] = value
        doc["agreement"] = value == formula
    _emit(args, _json_dumps(doc))
    return 0


def _render_form_terms(p: int, terms) -> str:
    parts = []
    for i, j, a in terms:
        coeff = a * p**i
        parts.append(f"{coeff}*(x)_{j}" if j else str(coeff))
    return " + ".join(parts) if parts else "0"


def cmd_canonical(args) -> int:
    ring = _ring(args)
    p, n = _require_prime_power(ring)
    f = parse(args.poly)
    if args.unit_valued:
        form = canon.canonicalize_unit_valued(f, p, n)
        if args.json:
            doc = form.to_json_dict()
            doc["polynomial"] = format_polynomial(form.to_polynomial())
            _emit(args, _json_dumps(doc))
        else:
            lines = [f"leading index s = {form.s}"]
            for k, terms in form.layers:
                lines.append(f"layer {k}: {_render_form_terms(p, terms)}")
            lines.append(f"polynomial: {format_polynomial(form.to_polynomial())}")
            _emit(args, "\n".join(lines))
    else:
        form = canon.canonicalize(f, p, n)
        if args.json:
            doc = form.to_json_dict()
            doc["polynomial"] = format_polynomial(form.to_polynomial())
            _emit(args, _json_dumps(doc))
        else:
            _emit(args, f"{_render_form_terms(p, form.terms)}")
    return 0


def _group_elements(args, cap):
    """Resolve --what group/stabilizer into (base, elements, item dicts)."""
    base = _base_of(_ring(args))
    if args.what == "stabilizer":
        els = gr.enumerate_stabilizer(base, cap=cap)
        items = [
            {"null_part": format_polynomial(st.null_part), "unit": list(st.unit)}
            for st in els
        ]
        return base, els, items
    if args.dual:
        els = gr.enumerate_dual_permutations(base, cap=cap)
        items = []
        for dp in els:
            G, F = dp.base_pair()
            items.append({
                "perm": list(G),
                "unit": list(F),
                "witness": format_polynomial(dp.witness),
            })
        return base, els, items
    els = gr.semidirect_group(base, cap=cap)
    items = [{"perm": list(el.perm), "unit": list(el.unit)} for el in els]
    return base, els, items


def cmd_enumerate(args) -> int:
    cap = _cap(args)
    what = args.what
    if what in ("group", "stabilizer"):
        base, _, items = _group_elements(args, cap)
        doc = {"count": len(items), "ring": base.descriptor, "what": what}
        if what == "group":
            doc["dual"] = bool(args.dual)
    elif what == "kernel":
        p, n = _pn(args)
        items = [
            {"poly": format_polynomial(g)}
            for g in canon.enumerate_kernel(p, n, cap=cap)
        ]
        doc = {"count": len(items), "n": n, "p": p, "what": what}
    else:  # uvpf-forms
        p, n = _pn(args)
        items = [
            f.to_json_dict() for f in canon.enumerate_unit_valued_forms(p, n, cap=cap)
        ]
        doc = {"count": len(items), "n": n, "p": p, "what": what}
    doc["items"] = items if args.limit is None else items[: args.limit]
    _emit(args, _json_dumps(doc))
    return 0


def _multiplication_table(els) -> list[list[int]]:
    index = {el: i for i, el in enumerate(els)}
    return [[index[a * b] for b in els] for a in els]


def _csv_text(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in rows:
        writer.writerow(row)
    return buf.getvalue().rstrip("\n")


def cmd_export(args) -> int:
    cap = _cap(args)
    what = args.what
    if what in ("group", "stabilizer"):
        base, els, items = _group_elements(args, cap)
        # stabilizer elements multiply through their semidirect form
        prods = [st.as_semidirect() for st in els] if what == "stabilizer" else els
        if args.format == "csv":
            check_cap(len(prods) ** 2, cap, "multiplication table")
            table = _multiplication_table(prods)
            rows = [[""] + list(range(len(prods)))]
            rows += [[i] + row for i, row in enumerate(table)]
            _emit(args, _csv_text(rows))
            return 0
        doc = {"count": len(items), "elements": items, "ring": base.descriptor, "what": what}
        if what == "group":
            doc["dual"] = bool(args.dual)
        if args.table:
            check_cap(len(prods) ** 2, cap, "multiplication table")
            doc["table"] = _multiplication_table(prods)
        _emit(args, _json_dumps(doc))
        return 0
    p, n = _pn(args)
    if what == "kernel":
        polys = list(canon.enumerate_kernel(p, n, cap=cap))
        rows = [("index", "polynomial")]
        rows += [(i, format_polynomial(g)) for i, g in enumerate(polys)]
        doc = {
            "count": len(polys),
            "items": [{"poly": format_polynomial(g)} for g in polys],
            "n": n,
            "p": p,
            "what": what,
        }
    else:  # uvpf-forms
        forms = list(canon.enumerate_unit_valued_forms(p, n, cap=cap))
        rows = [("index", "s", "polynomial")]
        rows += [
            (i, f.s, format_polynomial(f.to_polynomial())) for i, f in enumerate(forms)
        ]
        doc = {
            "count": len(forms),
            "items": [f.to_json_dict() for f in forms],
            "n": n,
            "p": p,
            "what": what,
        }
    _emit(args, _csv_text(rows) if args.format == "csv" else _json_dumps(doc))
    return 0


def _grid_bases(args, cap) -> list[Ring]:
    if getattr(args, "ring", None):
        return [_base_of(_ring(args))]
    out = []
    for desc in ("fq:2", "fq:3", "zpn:2,2", "fq:4"):
        base = make_ring(desc, size_cap=cap)
        if base.size * base.size <= args.max_size:
            out.append(base)
    if not out:
        raise ValueError(f"no test rings fit under --max-size {args.max_size}")
    return out


def _random_poly(rng, base: Ring, max_degree: int) -> Polynomial:
    degree = rng.randrange(max_degree + 1)
    if base.integer_encoded:
        return Polynomial([rng.randrange(base.size) for _ in range(degree + 1)])
    return Polynomial([rng.choice(base.elements) for _ in range(degree + 1)], base)


def _check_dual_law(base: Ring, seed: int, cap) -> list[tuple[str, bool]]:
    dual = dual_ring(base, size_cap=cap)
    rng = random.Random(seed)
    ok = True
    for _ in range(30):
        f = _random_poly(rng, base, 2 * base.size)
        for a in base.elements:
            for b in base.elements:
                if horner_dual(f, dual, a, b) != eval_dual(f, base, a, b):
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            break
    return [(f"dual[law:{base.descriptor}]", ok)]


def _check_dual_criterion(base: Ring, seed: int, cap) -> list[tuple[str, bool]]:
    D = gr.dual_degree_bound(base, cap=cap)
    dual = dual_ring(base, size_cap=cap)
    mask = base.unit_index_mask()
    size = base.size
    candidates = []
    for ftab, dtab, coeffs in gr.pair_table_sweep(base, D, cap=cap):
        verdict = len(set(ftab)) == size and all(mask[i] for i in dtab)
        candidates.append((coeffs, verdict))
    rng = random.Random(seed)
    sample = candidates if len(candidates) <= 400 else rng.sample(candidates, 400)
    ok = True
    for coeffs, verdict in sample:
        f = Polynomial(coeffs, None if base.integer_encoded else base)
        seen = set()
        bijective = True
        for a in base.elements:
            for b in base.elements:
                v = horner_dual(f, dual, a, b)
                if v in seen:
                    bijective = False
                    break
                seen.add(v)
            if not bijective:
                break
        if bijective != verdict:
            ok = False
            break
    return [(f"dual[criterion:{base.descriptor}]", ok)]


def _check_local_criterion(p: int, n: int, cap) -> list[tuple[str, bool]]:
    ring = PrimePowerRing(p, n)
    D = fs.null_degree_bound(ring)
    residues = set(range(p))
    ok = True
    for ftab, dtab, _ in gr.pair_table_sweep(ring, D, cap=cap):
        brute = len(set(ftab)) == ring.size
        local = {v % p for v in ftab[:p]} == residues and (
            n == 1 or all(dtab[a] % p for a in range(p))
        )
        if brute != local:
            ok = False
            break
    return [(f"dual[local-criterion:zpn:{p},{n}]", ok)]


def _check_axioms(base: Ring, seed: int, cap) -> list[tuple[str, bool]]:
    group = gr.semidirect_group(base, cap=cap)
    report = gr.verify_group_axioms(group, seed=seed)
    return [(f"groups[axioms:{base.descriptor}]", report.passed)]


def _check_embedding(base: Ring, seed: int, cap) -> list[tuple[str, bool]]:
    report = gr.verify_embedding(base, seed=seed, cap=cap)
    ok = report.passed and (report.surjective == base.is_field)
    return [(f"groups[embedding:{base.descriptor}]", ok)]


def _check_canonical(seed: int, cap) -> list[tuple[str, bool]]:
    checks = []
    sizes_ok = all(
        len(canon.kernel_basis(p, n)) == canon.beta(p, n)
        for p in (2, 3, 5)
        for n in (2, 3, 4)
    )
    checks.append(("canonical[kernel-basis]", sizes_ok))
    rng = random.Random(seed)
    for p, n in ((2, 2), (2, 3), (3, 2), (3, 3)):
        ring = PrimePowerRing(p, n)
        good = True
        for _ in range(25):
            f = Polynomial([rng.randrange(p**n) for _ in range(rng.randrange(1, 9))])
            form = canon.canonicalize(f, p, n)
            g = form.to_polynomial()
            if fs.induce(g, ring) != fs.induce(f, ring):
                good = False
                break
            if canon.canonicalize(g, p, n) != form:
                good = False
                break
        checks.append((f"canonical[roundtrip:zpn:{p},{n}]", good))
    ring = PrimePowerRing(2, 2)
    forms = list(canon.enumerate_canonical_forms(2, 2, cap=cap))
    tables = {fs.induce(f.to_polynomial(), ring).values for f in forms}
    checks.append((
        "canonical[bijection:zpn:2,2]",
        len(forms) == 64 and tables == fs.induced_tables(ring, cap=cap),
    ))
    uv_forms = list(canon.enumerate_unit_valued_forms(2, 2, cap=cap))
    uv_tables = {fs.induce(f.to_polynomial(), ring).values for f in uv_forms}
    checks.append((
        "canonical[uv-bijection:zpn:2,2]",
        len(uv_forms) == 16 and uv_tables == fs.unit_valued_tables(ring, cap=cap),
    ))
    return checks


def _check_counting(p: int, n: int, cap) -> list[tuple[str, bool]]:
    ring = PrimePowerRing(p, n)
    tables = fs.induced_tables(ring, cap=cap)
    mask = ring.unit_index_mask()
    uv = sum(1 for t in tables if all(mask[v] for v in t))
    q = p ** (n - 1)
    kernel = sum(1 for t in tables if all(v % q == 0 for v in t))
    return [
        (f"counting[polyfun:{p},{n}]",
         len(tables) == canon.count_polynomial_functions(p, n)),
        (f"counting[uvpf:{p},{n}]", uv == canon.count_unit_valued_functions(p, n)),
        (f"counting[kernel:{p},{n}]", kernel == canon.kernel_count(p, n)),
    ]


def cmd_verify(args) -> int:
    cap = _cap(args)
    checks: list[tuple[str, bool]] = []
    suites = (
        ("dual", "groups", "canonical", "counting")
        if args.suite == "all"
        else (args.suite,)
    )
    for suite in suites:
        if suite == "dual":
            for base in _grid_bases(args, cap):
                checks.extend(_check_dual_law(base, args.seed, cap))
                checks.extend(_check_dual_criterion(base, args.seed, cap))
            if not args.ring:
                for p, n in ((2, 2), (2, 3), (3, 2)):
                    if p**n <= args.max_size:
                        checks.extend(_check_local_criterion(p, n, cap))
        elif suite == "groups":
            for base in _grid_bases(args, cap):
                checks.extend(_check_axioms(base, args.seed, cap))
                checks.extend(_check_embedding(base, args.seed, cap))
        elif suite == "canonical":
            checks.extend(_check_canonical(args.seed, cap))
        else:  # counting
            for p, n in ((2, 2), (2, 3), (3, 2)):
                checks.extend(_check_counting(p, n, cap))
    failed = [name for name, ok in checks if not ok]
    if args.json:
        _emit(args, _json_dumps({
            "checks": [{"name": name, "passed": ok} for name, ok in checks],
            "failed": len(failed),
        }))
    else:
        lines = [f"{name}: {'pass' if ok else 'FAIL'}" for name, ok in checks]
        lines.append(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
        _emit(args, "\n".join(lines))
    return 4 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="ringfunc",
        description="Polynomial functions over finite rings and their dual extensions.",
        epilog=f"Ring descriptors: zm:M, zpn:P,N, fq:Q, dual:DESC.  "
        f"Set {CAP_ENV_VAR} to adjust the enumeration cap.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--allow-large", action="store_true",
                        help="lift the size and enumeration caps")
        sp.add_argument("--jobs", type=int, default=1,
                        help="worker cap (evaluation is currently single process)")
        sp.add_argument("--out", help="write output to a file instead of stdout")

    sp = sub.add_parser("test", help="evaluate a predicate on one polynomial")
    common(sp)
    sp.add_argument("--ring", required=True, help="ring descriptor")
    sp.add_argument("--poly", required=True, help="polynomial in x")
    sp.add_argument("--prop", required=True,
                    choices=("null", "unit-valued", "perm", "perm-dual"))
    sp.add_argument("--oracle", action="store_true",
                    help="cross-check the result against brute-force evaluation")
    sp.set_defaults(func=cmd_test)

    sp = sub.add_parser("count", help="count function classes mod p^n")
    common(sp)
    sp.add_argument("--what", required=True,
                    choices=("polyfun", "uvpf", "kernel", "beta"))
    sp.add_argument("--p", type=int, required=True, help="prime")
    sp.add_argument("--n", type=int, required=True, help="exponent")
    sp.add_argument("--brute-force", action="store_true", dest="brute_force",
                    help="also count by enumeration and report agreement")
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("canonical", help="canonical form of a polynomial function")
    common(sp)
    sp.add_argument("--ring", required=True, help="prime power ring descriptor")
    sp.add_argument("--poly", required=True)
    sp.add_argument("--unit-valued", action="store_true",
                    help="layered form for unit-valued functions")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_canonical)

    for verb, helptext in (
        ("enumerate", "list group elements, kernel polynomials, or forms"),
        ("export", "export group or form data as JSON/CSV"),
    ):
        sp = sub.add_parser(verb, help=helptext)
        common(sp)
        sp.add_argument("--what", required=True,
                        choices=("group", "stabilizer", "uvpf-forms", "kernel"))
        sp.add_argument("--ring", help="ring descriptor (group, stabilizer)")
        sp.add_argument("--p", type=int, help="prime (uvpf-forms, kernel)")
        sp.add_argument("--n", type=int, help="exponent (uvpf-forms, kernel)")
        sp.add_argument("--dual", action="store_true",
                        help="the dual-extension permutation group instead of "
                             "the semidirect product")
        if verb == "enumerate":
            sp.add_argument("--limit", type=int, help="truncate the item list")
            sp.set_defaults(func=cmd_enumerate)
        else:
            sp.add_argument("--format", choices=("json", "csv"), default="json")
            sp.add_argument("--table", action="store_true",
                            help="include the full multiplication table (JSON)")
            sp.set_defaults(func=cmd_export)

    sp = sub.add_parser("verify", help="run verification suites")
    common(sp)
    sp.add_argument("--suite", default="all",
                    choices=("all", "dual", "groups", "canonical", "counting"))
    sp.add_argument("--ring", help="restrict the ring-based suites to one base ring")
    sp.add_argument("--max-size", type=int, default=16,
                    help="largest dual ring size in the default grid")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except SizeCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
