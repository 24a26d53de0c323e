"""Structure tables of the interpolated algebra, and exact linear algebra on them.

A structure table records, for every ordered pair of admissible basis
monomials, the normal form of their product as polynomial-in-nu
coefficients.  Tables are built once per alpha with a fresh rewriting
engine so the recorded rule counters are reproducible, and they serialize
to a stable JSON or CSV layout.
"""
from __future__ import annotations

import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from .algebra import Monomial, Normalizer, basis_enumerate
from .capacity import table_limit
from .combinatorics import Permutation
from .errors import CapacityError, ConsistencyError
from .nupoly import NuPoly, format_rational

_STAT_KEYS = ("square", "swap", "erase", "states", "cache_hits")


@dataclass(frozen=True)
class StructureTable:
    """Products of basis monomials: constants[(p, q)] = ((r, poly), ...)."""

    alpha: int
    basis: tuple[Monomial, ...]
    constants: dict[tuple[int, int], tuple[tuple[int, NuPoly], ...]]
    build_stats: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @cached_property
    def _index_map(self) -> dict[Monomial, int]:
        return {m: i for i, m in enumerate(self.basis)}

    def index_of(self, m: Monomial) -> int:
        return self._index_map[m]

    def product(self, ip: int, iq: int) -> tuple[tuple[int, NuPoly], ...]:
        return self.constants[(ip, iq)]

    def multiply_vectors(
        self, x: Mapping[int, NuPoly], y: Mapping[int, NuPoly]
    ) -> dict[int, NuPoly]:
        """Bilinear extension of the table to coefficient vectors."""
        acc: dict[int, NuPoly] = {}
        for ip, cx in x.items():
            for iq, cy in y.items():
                w = cx * cy
                for ir, c in self.constants[(ip, iq)]:
                    acc[ir] = acc.get(ir, NuPoly.zero()) + w * c
        return {k: v for k, v in acc.items() if v}

    def max_degree(self) -> int:
        d = 0
        for terms in self.constants.values():
            for _, c in terms:
                if c and c.degree > d:
                    d = int(c.degree)
        return d

    def evaluate(self, value) -> dict[tuple[int, int], tuple[tuple[int, Fraction], ...]]:
        """Specialize every constant at an exact rational value of nu."""
        out: dict[tuple[int, int], tuple[tuple[int, Fraction], ...]] = {}
        for key, terms in self.constants.items():
            row = tuple((ir, v) for ir, c in terms for v in (c.evaluate(value),) if v)
            out[key] = row
        return out

    def to_json_obj(self, nu=None) -> dict:
        basis = [{"g": list(m.perm.images), "I": list(m.holes)} for m in self.basis]
        constants = []
        for ip, iq in sorted(self.constants):
            terms = []
            for ir, poly in self.constants[(ip, iq)]:
                if nu is None:
                    terms.append({"r": ir, "poly": poly.to_strings()})
                else:
                    v = poly.evaluate(nu)
                    if v:
                        terms.append({"r": ir, "poly": [format_rational(v)]})
            constants.append({"p": ip, "q": iq, "terms": terms})
        return {
            "alpha": self.alpha,
            "nu": None if nu is None else format_rational(Fraction(nu)),
            "basis": basis,
            "constants": constants,
        }

    def canonical_json(self, nu=None) -> str:
        return json.dumps(self.to_json_obj(nu), indent=2) + "\n"

    @classmethod
    def from_json_obj(cls, obj) -> "StructureTable":
        basis = tuple(
            Monomial(Permutation(tuple(int(x) for x in e["g"])), tuple(int(x) for x in e["I"]))
            for e in obj["basis"]
        )
        constants: dict[tuple[int, int], tuple[tuple[int, NuPoly], ...]] = {}
        for entry in obj["constants"]:
            terms = tuple(
                (int(t["r"]), NuPoly.from_strings(t["poly"])) for t in entry["terms"]
            )
            constants[(int(entry["p"]), int(entry["q"]))] = terms
        return cls(int(obj["alpha"]), basis, constants)

    def to_csv(self, nu=None) -> str:
        lines = ["p,q,r,poly"]
        for ip, iq in sorted(self.constants):
            for ir, poly in self.constants[(ip, iq)]:
                if nu is None:
                    lines.append(f"{ip},{iq},{ir},{' '.join(poly.to_strings())}")
                else:
                    v = poly.evaluate(nu)
                    if v:
                        lines.append(f"{ip},{iq},{ir},{format_rational(v)}")
        return "\n".join(lines) + "\n"


def _compute_row(basis: Sequence[Monomial], ip: int):
    """All products with left factor basis[ip], using a row-local engine.

    Row-local engines keep the recorded rule counters independent of how
    rows are scheduled across processes.
    """
    nz = Normalizer()
    index = {m: i for i, m in enumerate(basis)}
    p = basis[ip]
    row = []
    for iq, q in enumerate(basis):
        inv = q.perm.inverse()
        g = p.perm * q.perm
        js = tuple(inv(i) for i in p.holes) + q.holes
        nf = nz.reduce(g, js)
        terms = tuple(sorted(((index[m], c) for m, c in nf.items()), key=lambda t: t[0]))
        row.append((iq, terms))
    return row, nz.stats


_WORKER_BASIS: tuple[Monomial, ...] | None = None


def _init_worker(basis_ser) -> None:
    global _WORKER_BASIS
    _WORKER_BASIS = tuple(
        Monomial(Permutation(tuple(g)), tuple(holes)) for g, holes in basis_ser
    )


def _row_task(ip: int):
    assert _WORKER_BASIS is not None
    row, stats = _compute_row(_WORKER_BASIS, ip)
    ser = [(iq, [(ir, poly.coeffs) for ir, poly in terms]) for iq, terms in row]
    return ip, ser, stats


_TABLE_CACHE: dict[int, StructureTable] = {}


def structure_table(
    alpha: int, *, max_alpha: int | None = None, jobs: int = 1, use_cache: bool = True
) -> StructureTable:
    """Build (or fetch) the full structure table for S_alpha."""
    if use_cache and alpha in _TABLE_CACHE:
        return _TABLE_CACHE[alpha]
    limit = table_limit(max_alpha)
    if alpha > limit:
        raise CapacityError(
            f"structure table for alpha={alpha} exceeds the limit {limit}; "
            "raise the capacity explicitly to proceed"
        )
    t0 = time.perf_counter()
    basis = basis_enumerate(alpha, max_alpha=alpha)
    constants: dict[tuple[int, int], tuple[tuple[int, NuPoly], ...]] = {}
    totals = {k: 0 for k in _STAT_KEYS}
    if jobs > 1:
        ser = tuple((m.perm.images, m.holes) for m in basis)
        with ProcessPoolExecutor(
            max_workers=jobs, initializer=_init_worker, initargs=(ser,)
        ) as ex:
            for ip, row_ser, stats in ex.map(_row_task, range(len(basis))):
                for iq, terms in row_ser:
                    constants[(ip, iq)] = tuple((ir, NuPoly(cs)) for ir, cs in terms)
                for k in _STAT_KEYS:
                    totals[k] += stats.get(k, 0)
    else:
        for ip in range(len(basis)):
            row, stats = _compute_row(basis, ip)
            for iq, terms in row:
                constants[(ip, iq)] = terms
            for k in _STAT_KEYS:
                totals[k] += stats.get(k, 0)
    totals["dimension"] = len(basis)
    totals["elapsed_s"] = time.perf_counter() - t0
    table = StructureTable(alpha, basis, constants, totals)
    if use_cache:
        _TABLE_CACHE[alpha] = table
    return table


def check_associativity(
    table: StructureTable, *, samples: int | None = None, seed: int = 0
) -> list[tuple[int, int, int]]:
    """Failing triples of (basis[i] basis[j]) basis[k] != basis[i] (basis[j] basis[k])."""
    n = table.dimension
    if samples is None:
        triples = (
            (i, j, k) for i in range(n) for j in range(n) for k in range(n)
        )
    else:
        rng = random.Random(seed)
        triples = (
            (rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(samples)
        )
    one = NuPoly.one()
    failures = []
    for i, j, k in triples:
        left = table.multiply_vectors(dict(table.product(i, j)), {k: one})
        right = table.multiply_vectors({i: one}, dict(table.product(j, k)))
        if left != right:
            failures.append((i, j, k))
    return failures


def gram_matrix(alpha: int, *, max_alpha: int | None = None) -> tuple[tuple[NuPoly, ...], ...]:
    """G[p][q] = trace(e_p e_q*), a symmetric matrix of polynomials in nu."""
    limit = table_limit(max_alpha)
    if alpha > limit:
        raise CapacityError(
            f"gram matrix for alpha={alpha} exceeds the limit {limit}; "
            "raise the capacity explicitly to proceed"
        )
    basis = basis_enumerate(alpha, max_alpha=alpha)
    nz = Normalizer()
    stars = []
    for q in basis:
        js = tuple(q.perm(i) for i in reversed(q.holes))
        stars.append(nz.reduce(q.perm.inverse(), js))
    one_m = Monomial.one(alpha)
    rows = []
    for p in basis:
        row = []
        for sq in stars:
            acc = NuPoly.zero()
            for m2, c2 in sq.items():
                inv = m2.perm.inverse()
                g = p.perm * m2.perm
                js = tuple(inv(i) for i in p.holes) + m2.holes
                c = nz.reduce(g, js).get(one_m)
                if c:
                    acc = acc + c2 * c
            row.append(acc)
        rows.append(tuple(row))
    return tuple(rows)


def trace_form(table: StructureTable) -> tuple[tuple[NuPoly, ...], ...]:
    """B[p][q] = trace(e_p e_q), read straight off the structure table."""
    ident = table.index_of(Monomial.one(table.alpha))
    n = table.dimension
    rows = []
    for ip in range(n):
        row = []
        for iq in range(n):
            c = NuPoly.zero()
            for ir, poly in table.constants[(ip, iq)]:
                if ir == ident:
                    c = poly
                    break
            row.append(c)
        rows.append(tuple(row))
    return tuple(rows)


def positive_definite(mat: Sequence[Sequence[Fraction]]) -> bool:
    """Exact Sylvester test for a symmetric rational matrix."""
    n = len(mat)
    a = [list(map(Fraction, row)) for row in mat]
    for i, row in enumerate(a):
        if len(row) != n:
            raise ValueError("matrix must be square")
        for j in range(i):
            if row[j] != a[j][i]:
                raise ValueError("matrix must be symmetric")
    for k in range(n):
        piv = a[k][k]
        if piv <= 0:
            return False
        for i in range(k + 1, n):
            f = a[i][k] / piv
            if not f:
                continue
            for j in range(k, n):
                a[i][j] -= f * a[k][j]
    return True


def evaluate_matrix(mat: Sequence[Sequence[NuPoly]], value) -> list[list[Fraction]]:
    return [[c.evaluate(value) for c in row] for row in mat]


def smallest_pd_nu(mat: Sequence[Sequence[NuPoly]], *, start: int = 0, stop: int = 200) -> int | None:
    """Smallest integer in [start, stop] where the evaluated matrix is positive definite."""
    for n in range(start, stop + 1):
        if positive_definite(evaluate_matrix(mat, n)):
            return n
    return None


def _det_fraction(a: list[list[Fraction]]) -> Fraction:
    n = len(a)
    det = Fraction(1)
    for k in range(n):
        piv_row = next((i for i in range(k, n) if a[i][k]), None)
        if piv_row is None:
            return Fraction(0)
        if piv_row != k:
            a[k], a[piv_row] = a[piv_row], a[k]
            det = -det
        piv = a[k][k]
        det *= piv
        for i in range(k + 1, n):
            f = a[i][k] / piv
            if not f:
                continue
            for j in range(k + 1, n):
                a[i][j] -= f * a[k][j]
            a[i][k] = Fraction(0)
    return det


def _interpolate(points: Sequence[tuple[Fraction, Fraction]]) -> NuPoly:
    """Exact Newton interpolation through distinct rational points."""
    xs = [p for p, _ in points]
    coeffs = [v for _, v in points]
    for j in range(1, len(xs)):
        for i in range(len(xs) - 1, j - 1, -1):
            coeffs[i] = (coeffs[i] - coeffs[i - 1]) / (xs[i] - xs[i - j])
    poly = NuPoly.zero()
    basis_poly = NuPoly.one()
    for i, c in enumerate(coeffs):
        if i:
            basis_poly = basis_poly * (NuPoly.nu() - NuPoly.constant(xs[i - 1]))
        poly = poly + c * basis_poly
    return poly


def det_polynomial(mat: Sequence[Sequence[NuPoly]]) -> NuPoly:
    """Determinant of a polynomial matrix by evaluation and interpolation.

    The degree bound is the sum over rows of the max entry degree; the
    result is confirmed at one extra evaluation point.
    """
    n = len(mat)
    if n == 0:
        return NuPoly.one()
    bound = 0
    for row in mat:
        degs = [int(c.degree) for c in row if c]
        if not degs:
            return NuPoly.zero()
        bound += max(degs)
    values = []
    for x in range(bound + 2):
        fx = Fraction(x)
        values.append((fx, _det_fraction([[c.evaluate(fx) for c in row] for row in mat])))
    poly = _interpolate(values[: bound + 1])
    extra_x, extra_v = values[bound + 1]
    if poly.evaluate(extra_x) != extra_v:
        raise ConsistencyError(
            "interpolated determinant failed the extra-point check",
            {"point": str(extra_x)},
        )
    return poly


@dataclass(frozen=True)
class LimitTable:
    """Structure constants of the rescaled basis as nu grows without bound."""

    alpha: int
    basis: tuple[Monomial, ...]
    entries: dict[tuple[int, int], tuple[tuple[int, Fraction], ...]]

    @cached_property
    def _index_map(self) -> dict[Monomial, int]:
        return {m: i for i, m in enumerate(self.basis)}

    def index_of(self, m: Monomial) -> int:
        return self._index_map[m]


def scaled_limit_table(table: StructureTable) -> LimitTable:
    """Limits of nu^(|I_r| - |I_p| - |I_q|) c^r_pq(nu); diverging entries are an error."""
    deg_of = [m.hole_degree for m in table.basis]
    entries: dict[tuple[int, int], tuple[tuple[int, Fraction], ...]] = {}
    for (ip, iq), terms in table.constants.items():
        out = []
        for ir, poly in terms:
            if not poly:
                continue
            d = int(poly.degree) + deg_of[ir] - deg_of[ip] - deg_of[iq]
            if d > 0:
                raise ConsistencyError(
                    "structure constant outgrows the scaled limit",
                    {"p": ip, "q": iq, "r": ir, "degree": int(poly.degree)},
                )
            if d == 0:
                out.append((ir, poly.leading))
        entries[(ip, iq)] = tuple(sorted(out, key=lambda t: t[0]))
    return LimitTable(table.alpha, table.basis, entries)
