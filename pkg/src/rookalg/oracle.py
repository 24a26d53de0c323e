"""Ground-truth arithmetic in the group algebra of S_{alpha+n}.

Everything here is brute force on purpose: explicit permutations, exact
rational coefficients, and convolution straight from the definition.  The
symmetric group of the tail block {alpha+1, ..., alpha+n} plays the role
of the subgroup K; its double cosets are indexed by partial injections of
{1, ..., alpha} through the corner map.

Bi-invariant elements are stored in the scaled coset basis: e_sigma is the
sum of the delta functions over the coset of sigma, divided by n factorial.
Under this normalization the structure constants are polynomial in n, and
the generator images have augmentation 1 (permutation generators) and n
(hole generators).
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations as _permutations
from math import factorial
from typing import Iterable, Mapping

from .combinatorics import (
    PartialInjection,
    Permutation,
    all_permutations,
    corner_map,
    embed_pair,
    idempotent,
    rook_sort_key,
)
from .errors import ConsistencyError, ContextError, EmptyCosetError


@dataclass(frozen=True)
class Context:
    """The ambient pair: corner size alpha, tail subgroup degree n."""

    alpha: int
    n: int

    def __post_init__(self) -> None:
        if self.alpha < 0 or self.n < 0:
            raise ValueError(f"alpha and n must be non-negative: {self}")

    @property
    def degree(self) -> int:
        return self.alpha + self.n


@lru_cache(maxsize=None)
def subgroup_elements(ctx: Context) -> tuple[Permutation, ...]:
    """The embedded tail subgroup, fixing 1..alpha pointwise."""
    ident = Permutation.identity(ctx.alpha)
    return tuple(embed_pair(ident, s) for s in all_permutations(ctx.n))


class GroupAlgebraElement:
    """A finitely supported rational function on S_{alpha+n} under convolution."""

    __slots__ = ("ctx", "_coeffs")

    def __init__(self, ctx: Context, coeffs: Mapping[Permutation, Fraction] | None = None):
        self.ctx = ctx
        clean: dict[Permutation, Fraction] = {}
        for g, c in (coeffs or {}).items():
            c = Fraction(c)
            if not c:
                continue
            if g.degree != ctx.degree:
                raise ContextError(f"element of degree {g.degree} in a degree-{ctx.degree} context")
            clean[g] = c
        self._coeffs = clean

    @classmethod
    def delta(cls, ctx: Context, g: Permutation) -> "GroupAlgebraElement":
        return cls(ctx, {g: Fraction(1)})

    @classmethod
    def zero(cls, ctx: Context) -> "GroupAlgebraElement":
        return cls(ctx)

    def coefficient(self, g: Permutation) -> Fraction:
        return self._coeffs.get(g, Fraction(0))

    def items(self):
        return self._coeffs.items()

    def sorted_items(self):
        return sorted(self._coeffs.items(), key=lambda kv: kv[0].images)

    def support_size(self) -> int:
        return len(self._coeffs)

    def _check(self, other: "GroupAlgebraElement") -> None:
        if self.ctx != other.ctx:
            raise ContextError(f"context mismatch: {self.ctx} vs {other.ctx}")

    def __add__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        self._check(other)
        acc = dict(self._coeffs)
        for g, c in other._coeffs.items():
            acc[g] = acc.get(g, Fraction(0)) + c
        return GroupAlgebraElement(self.ctx, acc)

    def __sub__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        return self + other.scale(-1)

    def scale(self, c) -> "GroupAlgebraElement":
        c = Fraction(c)
        return GroupAlgebraElement(self.ctx, {g: c * v for g, v in self._coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        self._check(other)
        acc: dict[Permutation, Fraction] = defaultdict(Fraction)
        for g, cg in self._coeffs.items():
            for h, ch in other._coeffs.items():
                acc[g * h] += cg * ch
        return GroupAlgebraElement(self.ctx, acc)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.ctx == other.ctx and self._coeffs == other._coeffs

    def __repr__(self) -> str:
        return f"GroupAlgebraElement({self.ctx}, {len(self._coeffs)} terms)"

    def trace(self) -> Fraction:
        """Coefficient of the identity."""
        return self.coefficient(Permutation.identity(self.ctx.degree))

    def augmentation(self) -> Fraction:
        """Sum of all coefficients; multiplicative under convolution."""
        return sum(self._coeffs.values(), Fraction(0))

    def star(self) -> "GroupAlgebraElement":
        """The involution sending each group element to its inverse."""
        return GroupAlgebraElement(self.ctx, {g.inverse(): c for g, c in self._coeffs.items()})

    def inner(self, other: "GroupAlgebraElement") -> Fraction:
        """Inner product trace(self * other.star()); deltas are orthonormal."""
        self._check(other)
        return sum(
            (cg * other._coeffs.get(g, Fraction(0)) for g, cg in self._coeffs.items()),
            Fraction(0),
        )

    def norm_sq(self) -> Fraction:
        return self.inner(self)


def convolve(x: GroupAlgebraElement, y: GroupAlgebraElement) -> GroupAlgebraElement:
    return x * y


def k_average(ctx: Context) -> GroupAlgebraElement:
    """The uniform average over the embedded tail subgroup."""
    w = Fraction(1, factorial(ctx.n))
    return GroupAlgebraElement(ctx, {k: w for k in subgroup_elements(ctx)})


def project_biinvariant(x: GroupAlgebraElement) -> GroupAlgebraElement:
    """Two-sided averaging over the tail subgroup; idempotent."""
    avg = k_average(x.ctx)
    return avg * x * avg


def coset_corank(sigma: PartialInjection) -> int:
    return sigma.alpha - sigma.rank


def coset_size(ctx: Context, sigma: PartialInjection) -> int:
    """Number of permutations whose corner equals sigma: (n!)^2 / (n-r)!."""
    r = coset_corank(sigma)
    if r > ctx.n:
        raise EmptyCosetError(f"rank {sigma.rank} is too small for n={ctx.n} (need rank >= alpha-n)")
    nf = factorial(ctx.n)
    return nf * nf // factorial(ctx.n - r)


@lru_cache(maxsize=None)
def canonical_completion(sigma: PartialInjection, ctx: Context) -> Permutation:
    """Deterministic coset representative with the given corner.

    Sources undefined in the corner are sent to the smallest unused tail
    columns in increasing order; corner targets without a preimage receive
    the smallest unused tail rows; the leftover tail block is completed by
    the identity.
    """
    alpha, n = ctx.alpha, ctx.n
    if sigma.alpha != alpha:
        raise ContextError(f"partial injection of size {sigma.alpha} in an alpha={alpha} context")
    r = coset_corank(sigma)
    if r > n:
        raise EmptyCosetError(f"rank {sigma.rank} is too small for n={n}")
    target: list[int | None] = [None] * ctx.degree
    for x in range(1, alpha + 1):
        target[x - 1] = sigma(x)
    hit = sigma.image_set()
    next_col = alpha + 1
    for x in range(1, alpha + 1):
        if target[x - 1] is None:
            target[x - 1] = next_col
            next_col += 1
    next_row = alpha + 1
    for y in range(1, alpha + 1):
        if y not in hit:
            target[next_row - 1] = y
            next_row += 1
    for x in range(next_row, ctx.degree + 1):
        target[x - 1] = x
    return Permutation(tuple(target))  # type: ignore[arg-type]


@lru_cache(maxsize=None)
def coset_enumerate(sigma: PartialInjection, ctx: Context) -> tuple[Permutation, ...]:
    """All permutations of S_{alpha+n} whose corner equals sigma."""
    alpha, n = ctx.alpha, ctx.n
    if sigma.alpha != alpha:
        raise ContextError(f"partial injection of size {sigma.alpha} in an alpha={alpha} context")
    r = coset_corank(sigma)
    if r > n:
        raise EmptyCosetError(f"rank {sigma.rank} is too small for n={n}")
    undefined_sources = [x for x in range(1, alpha + 1) if sigma(x) is None]
    hit = sigma.image_set()
    missing_targets = [y for y in range(1, alpha + 1) if y not in hit]
    tails = list(range(alpha + 1, ctx.degree + 1))
    out: list[Permutation] = []
    for outs in _permutations(tails, r):
        for ins in _permutations(tails, r):
            rem_sources = [t for t in tails if t not in ins]
            rem_targets = [t for t in tails if t not in outs]
            for fill in _permutations(rem_targets):
                target: list[int] = [0] * ctx.degree
                for x in range(1, alpha + 1):
                    v = sigma(x)
                    if v is not None:
                        target[x - 1] = v
                for x, v in zip(undefined_sources, outs):
                    target[x - 1] = v
                for x, v in zip(ins, missing_targets):
                    target[x - 1] = v
                for x, v in zip(rem_sources, fill):
                    target[x - 1] = v
                out.append(Permutation(tuple(target)))
    out.sort(key=lambda p: p.images)
    return tuple(out)


class BiinvariantElement:
    """A rational combination of the scaled double-coset sums e_sigma."""

    __slots__ = ("ctx", "_coeffs")

    def __init__(self, ctx: Context, coeffs: Mapping[PartialInjection, Fraction] | None = None):
        self.ctx = ctx
        clean: dict[PartialInjection, Fraction] = {}
        for sigma, c in (coeffs or {}).items():
            c = Fraction(c)
            if not c:
                continue
            if sigma.alpha != ctx.alpha:
                raise ContextError(f"key of size {sigma.alpha} in an alpha={ctx.alpha} context")
            if coset_corank(sigma) > ctx.n:
                raise EmptyCosetError(f"key {sigma.serialize()} indexes no coset at n={ctx.n}")
            clean[sigma] = c
        self._coeffs = clean

    @classmethod
    def zero(cls, ctx: Context) -> "BiinvariantElement":
        return cls(ctx)

    @classmethod
    def basis(cls, ctx: Context, sigma: PartialInjection) -> "BiinvariantElement":
        return cls(ctx, {sigma: Fraction(1)})

    def coefficient(self, sigma: PartialInjection) -> Fraction:
        return self._coeffs.get(sigma, Fraction(0))

    def items(self):
        return self._coeffs.items()

    def sorted_items(self):
        return sorted(self._coeffs.items(), key=lambda kv: rook_sort_key(kv[0]))

    def support_size(self) -> int:
        return len(self._coeffs)

    def _check(self, other: "BiinvariantElement") -> None:
        if self.ctx != other.ctx:
            raise ContextError(f"context mismatch: {self.ctx} vs {other.ctx}")

    def __add__(self, other: "BiinvariantElement") -> "BiinvariantElement":
        self._check(other)
        acc = dict(self._coeffs)
        for s, c in other._coeffs.items():
            acc[s] = acc.get(s, Fraction(0)) + c
        return BiinvariantElement(self.ctx, acc)

    def __sub__(self, other: "BiinvariantElement") -> "BiinvariantElement":
        return self + other.scale(-1)

    def scale(self, c) -> "BiinvariantElement":
        c = Fraction(c)
        return BiinvariantElement(self.ctx, {s: c * v for s, v in self._coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, BiinvariantElement):
            return NotImplemented
        return dc_multiply(self, other, via="fast")

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, BiinvariantElement):
            return NotImplemented
        return self.ctx == other.ctx and self._coeffs == other._coeffs

    def __repr__(self) -> str:
        return f"BiinvariantElement({self.ctx}, {len(self._coeffs)} terms)"

    def embed(self) -> GroupAlgebraElement:
        """Expand into the group algebra: each coset uniformly, scaled by 1/n!."""
        w = Fraction(1, factorial(self.ctx.n))
        acc: dict[Permutation, Fraction] = {}
        for sigma, c in self._coeffs.items():
            cw = c * w
            for u in coset_enumerate(sigma, self.ctx):
                acc[u] = cw
        return GroupAlgebraElement(self.ctx, acc)

    @classmethod
    def from_group(cls, x: GroupAlgebraElement) -> "BiinvariantElement":
        """Collapse a coset-constant group-algebra element; loud otherwise."""
        ctx = x.ctx
        buckets: dict[PartialInjection, list[Fraction]] = defaultdict(list)
        for g, c in x.items():
            buckets[corner_map(g, ctx.alpha)].append(c)
        nf = factorial(ctx.n)
        acc: dict[PartialInjection, Fraction] = {}
        for sigma, values in buckets.items():
            size = coset_size(ctx, sigma)
            if len(values) != size or any(v != values[0] for v in values):
                raise ConsistencyError(
                    "element is not constant on double cosets",
                    {"sigma": sigma.serialize(), "seen": len(values), "coset_size": size},
                )
            acc[sigma] = values[0] * nf
        return cls(ctx, acc)

    def trace(self) -> Fraction:
        ident = PartialInjection.identity(self.ctx.alpha)
        return self.coefficient(ident) * Fraction(1, factorial(self.ctx.n))

    def augmentation(self) -> Fraction:
        nf = factorial(self.ctx.n)
        return sum(
            (c * Fraction(coset_size(self.ctx, s), nf) for s, c in self._coeffs.items()),
            Fraction(0),
        )

    def star(self) -> "BiinvariantElement":
        """Coset-basis involution: invert every index."""
        return BiinvariantElement(self.ctx, {s.inverse(): c for s, c in self._coeffs.items()})

    def to_pairs(self) -> list[tuple[tuple[int, ...], str]]:
        """Canonical dump: (serialized index, "p/q") sorted by canonical order."""
        return [
            (sigma.serialize(), f"{c.numerator}/{c.denominator}")
            for sigma, c in self.sorted_items()
        ]


def gen_perm(g: Permutation, ctx: Context) -> BiinvariantElement:
    """Scaled coset sum of the block-diagonal embedding of g; augmentation 1."""
    if g.degree != ctx.alpha:
        raise ContextError(f"generator permutation has degree {g.degree}, expected {ctx.alpha}")
    return BiinvariantElement(ctx, {PartialInjection.from_permutation(g): Fraction(1)})


def gen_hole(i: int, ctx: Context) -> BiinvariantElement:
    """Scaled coset sum for the corank-one idempotent at i; augmentation n."""
    if not 1 <= i <= ctx.alpha:
        raise ValueError(f"hole index {i} outside 1..{ctx.alpha}")
    if ctx.n < 1:
        raise EmptyCosetError("hole generators need n >= 1")
    return BiinvariantElement(ctx, {idempotent(ctx.alpha, (i,)): Fraction(1)})


def _dc_multiply_fast(x: BiinvariantElement, y: BiinvariantElement) -> BiinvariantElement:
    """Single-sum product over the tail subgroup.

    e_sigma * e_tau expands as (|c_sigma| |c_tau| / (n!)^3) times the sum
    over k in the tail subgroup of (n! / |c_rho(k)|) e_rho(k), where rho(k)
    is the corner of U_sigma k U_tau.
    """
    ctx = x.ctx
    nf = factorial(ctx.n)
    nf3 = Fraction(1, nf**3)
    acc: dict[PartialInjection, Fraction] = defaultdict(Fraction)
    for sigma, cx in x.items():
        u = canonical_completion(sigma, ctx)
        size_sigma = coset_size(ctx, sigma)
        for tau, cy in y.items():
            v = canonical_completion(tau, ctx)
            scale = cx * cy * size_sigma * coset_size(ctx, tau) * nf3
            for k in subgroup_elements(ctx):
                rho = corner_map(u * k * v, ctx.alpha)
                acc[rho] += scale * Fraction(nf, coset_size(ctx, rho))
    return BiinvariantElement(ctx, acc)


def dc_multiply(x: BiinvariantElement, y: BiinvariantElement, *, via: str = "fast") -> BiinvariantElement:
    """Product of bi-invariant elements.

    via="fast" uses the single-sum form over the tail subgroup;
    via="convolve" embeds both factors and convolves in the full group
    algebra.  The two routes must agree exactly and both are kept.
    """
    x._check(y)
    if via == "fast":
        return _dc_multiply_fast(x, y)
    if via == "convolve":
        return BiinvariantElement.from_group(x.embed() * y.embed())
    raise ValueError(f"unknown multiplication route {via!r}")
