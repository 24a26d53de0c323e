"""Command-line front door: compute tables, run suites, export artifacts.

Word syntax for `normalize`: whitespace-separated tokens, where `Ti` is the
i-th hole generator and `A(...)` is a permutation in cycle notation with
single-digit entries, e.g. `A(12)` or `A(123)(45)`.  `A(1)` and `1` both
mean the identity.  Identical invocations produce byte-identical output;
verification reports printed here omit timing for that reason.

Exit codes: 0 all requested checks pass, 1 a check fails, 2 usage error,
3 capacity exceeded.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from .algebra import (
    OElement,
    basis_enumerate,
    element_from_word,
    format_element,
    format_monomial,
)
from .combinatorics import Permutation, rook_count, rook_enumerate, fixed_space_dimensions
from .errors import CapacityError, ConsistencyError, ContextError, EmptyCosetError
from .nupoly import NuPoly, format_rational, parse_rational
from .tables import (
    evaluate_matrix,
    gram_matrix,
    positive_definite,
    scaled_limit_table,
    smallest_pd_nu,
    structure_table,
)
from .verify import (
    crosscheck_multi,
    crosscheck_structure,
    dimension_suite,
    limit_suite,
    relation_suite,
    semisimplicity_probe,
)

_T_TOKEN = re.compile(r"^T(\d+)$")
_A_TOKEN = re.compile(r"^A((?:\(\d+\))+)$")
_CYCLE = re.compile(r"\((\d+)\)")


def parse_word(alpha: int, text: str) -> list[tuple[str, object]]:
    """Tokenize a generator word like "T2 A(12) T1"."""
    if alpha > 9:
        raise ValueError("word syntax uses single-digit entries; alpha > 9 is not supported here")
    tokens: list[tuple[str, object]] = []
    for raw in text.split():
        if raw == "1":
            tokens.append(("perm", Permutation.identity(alpha)))
            continue
        m = _T_TOKEN.match(raw)
        if m:
            i = int(m.group(1))
            if not 1 <= i <= alpha:
                raise ValueError(f"hole index {i} outside 1..{alpha}")
            tokens.append(("hole", i))
            continue
        m = _A_TOKEN.match(raw)
        if m:
            cycles = [tuple(int(ch) for ch in grp) for grp in _CYCLE.findall(m.group(1))]
            tokens.append(("perm", Permutation.from_cycles(alpha, cycles)))
            continue
        raise ValueError(f"unrecognized token {raw!r}; expected Ti, A(...), or 1")
    return tokens


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="rookalg",
        description="Exact double-coset algebras and their polynomial interpolation.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--alpha", type=int, required=True, help="corner size")
        sp.add_argument(
            "--capacity",
            type=int,
            default=None,
            help="override the built-in size limits (also via ROOKALG_CAPACITY)",
        )

    dims = sub.add_parser("dims", help="dimension counted by every available route")
    common(dims)
    dims.add_argument("--n", type=int, default=None, help="also count double cosets at this tail degree")

    basis = sub.add_parser("basis", help="list the admissible basis monomials")
    common(basis)
    basis.add_argument("--format", choices=("text", "json"), default="text")
    basis.add_argument("--out", default=None)

    norm = sub.add_parser("normalize", help="normal form of a generator word")
    common(norm)
    norm.add_argument("--word", required=True, help='e.g. "T2 T1" or "A(12) T1 T2"')
    norm.add_argument("--nu", default=None, help="evaluate the coefficients at this rational")

    table = sub.add_parser("table", help="build and export the structure table")
    common(table)
    table.add_argument("--nu", default=None, help="evaluate all constants at this rational")
    table.add_argument("--format", choices=("json", "csv"), default="json")
    table.add_argument("--out", default=None)
    table.add_argument("--jobs", type=int, default=1)

    gram = sub.add_parser("gram", help="Gram matrix of the trace inner product")
    common(gram)
    gram.add_argument("--nu", default=None, help="evaluate and test positive definiteness")
    gram.add_argument("--out", default=None)

    limit = sub.add_parser("limit", help="scaled large-nu limit of the structure table")
    common(limit)
    limit.add_argument("--format", choices=("text", "json"), default="text")
    limit.add_argument("--out", default=None)

    verify = sub.add_parser("verify", help="run a verification suite")
    vsub = verify.add_subparsers(dest="suite", required=True)
    for name, helptext in (
        ("crosscheck", "structure constants against brute-force convolution"),
        ("relations", "defining relations for the convolution generators"),
        ("dims", "dimension and coset counting"),
        ("limit", "scaled limit against the partial-injection monoid"),
        ("semisimple", "trace-form determinant probe"),
    ):
        sp = vsub.add_parser(name, help=helptext)
        common(sp)
        sp.add_argument("--n", type=int, default=None, help="tail degree (suite-dependent default)")
        sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--out", default=None)
        sp.add_argument("--max-counterexamples", type=int, default=5)
    return p


def _cmd_dims(args) -> int:
    alpha, cap = args.alpha, args.capacity
    closed = rook_count(alpha)
    enumerated = len(rook_enumerate(alpha, max_alpha=cap))
    basis_len = len(basis_enumerate(alpha, max_alpha=cap))
    squares = sum(d * d for d in fixed_space_dimensions(alpha, max_alpha=cap))
    lines = [
        f"alpha: {alpha}",
        f"dimension (closed form): {closed}",
        f"dimension (enumeration): {enumerated}",
        f"dimension (admissible basis): {basis_len}",
        f"dimension (sum of squared block dimensions): {squares}",
    ]
    ns = (args.n,) if args.n is not None else None
    rep = dimension_suite(alpha, ns, max_alpha=cap)
    for n, count in sorted(rep.metrics["cosets_by_n"].items(), key=lambda kv: int(kv[0])):
        lines.append(f"double cosets (n={n}): {count}")
    lines.append(f"status: {rep.status}")
    print("\n".join(lines))
    if not rep.passed:
        print("FAIL dimensions", file=sys.stderr)
        return 1
    return 0


def _cmd_basis(args) -> int:
    ms = basis_enumerate(args.alpha, max_alpha=args.capacity)
    if args.format == "json":
        obj = {"alpha": args.alpha, "basis": [{"g": list(m.perm.images), "I": list(m.holes)} for m in ms]}
        _emit(json.dumps(obj, indent=2) + "\n", args.out)
    else:
        _emit("".join(f"{i}\t{format_monomial(m)}\n" for i, m in enumerate(ms)), args.out)
    return 0


def _cmd_normalize(args) -> int:
    tokens = parse_word(args.alpha, args.word)
    elem = element_from_word(args.alpha, tokens)
    if args.nu is not None:
        value = parse_rational(args.nu)
        elem = OElement(args.alpha, {m: NuPoly.constant(v) for m, v in elem.evaluate(value).items()})
    print(format_element(elem))
    return 0


def _cmd_table(args) -> int:
    tbl = structure_table(args.alpha, max_alpha=args.capacity, jobs=args.jobs)
    nu = parse_rational(args.nu) if args.nu is not None else None
    if args.format == "csv":
        _emit(tbl.to_csv(nu), args.out)
    else:
        _emit(tbl.canonical_json(nu), args.out)
    return 0


def _cmd_gram(args) -> int:
    G = gram_matrix(args.alpha, max_alpha=args.capacity)
    if args.nu is None:
        lines = ["[" + ", ".join(entry.pretty() for entry in row) + "]" for row in G]
        first = smallest_pd_nu(G, start=0, stop=4 * args.alpha)
        lines.append(f"smallest positive definite integer in [0, {4 * args.alpha}]: {first}")
        _emit("\n".join(lines) + "\n", args.out)
        return 0
    value = parse_rational(args.nu)
    mat = evaluate_matrix(G, value)
    pd = positive_definite(mat)
    lines = [" ".join(format_rational(entry) for entry in row) for row in mat]
    lines.append(f"positive_definite: {'true' if pd else 'false'}")
    _emit("\n".join(lines) + "\n", args.out)
    if not pd:
        print(f"FAIL gram: not positive definite at nu={args.nu}", file=sys.stderr)
        return 1
    return 0


def _cmd_limit(args) -> int:
    tbl = structure_table(args.alpha, max_alpha=args.capacity)
    lt = scaled_limit_table(tbl)
    if args.format == "json":
        entries = [
            {"p": ip, "q": iq, "terms": [[ir, format_rational(c)] for ir, c in lt.entries[(ip, iq)]]}
            for ip, iq in sorted(lt.entries)
        ]
        _emit(json.dumps({"alpha": lt.alpha, "entries": entries}, indent=2) + "\n", args.out)
    else:
        lines = []
        for ip, iq in sorted(lt.entries):
            terms = " + ".join(f"{format_rational(c)} [{ir}]" for ir, c in lt.entries[(ip, iq)])
            lines.append(f"[{ip}] [{iq}] -> {terms}")
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_verify(args) -> int:
    alpha, cap, k = args.alpha, args.capacity, args.max_counterexamples
    if args.suite == "crosscheck":
        if args.n is not None:
            rep = crosscheck_structure(alpha, args.n, max_alpha=cap, max_counterexamples=k)
        else:
            rep = crosscheck_multi(alpha, max_alpha=cap, jobs=args.jobs, max_counterexamples=k)
    elif args.suite == "relations":
        rep = relation_suite(alpha, args.n if args.n is not None else alpha, max_alpha=cap, max_counterexamples=k)
    elif args.suite == "dims":
        ns = (args.n,) if args.n is not None else None
        rep = dimension_suite(alpha, ns, max_alpha=cap, max_counterexamples=k)
    elif args.suite == "limit":
        rep = limit_suite(alpha, max_alpha=cap, max_counterexamples=k)
    elif args.suite == "semisimple":
        rep = semisimplicity_probe(alpha, max_alpha=cap, max_counterexamples=k)
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(f"unknown suite {args.suite!r}")
    _emit(rep.canonical_json(include_timing=False), args.out)
    if not rep.passed:
        print(f"FAIL {rep.suite}", file=sys.stderr)
        return 1
    return 0


_COMMANDS = {
    "dims": _cmd_dims,
    "basis": _cmd_basis,
    "normalize": _cmd_normalize,
    "table": _cmd_table,
    "gram": _cmd_gram,
    "limit": _cmd_limit,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except CapacityError as exc:
        print(f"capacity exceeded: {exc}", file=sys.stderr)
        return 3
    except ConsistencyError as exc:
        print(f"FAIL consistency: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ContextError, EmptyCosetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
