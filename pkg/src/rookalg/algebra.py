"""Normal-form arithmetic for the interpolated corner algebra.

The algebra is presented by permutation generators A(g), g in S_alpha, and
hole generators T_1, ..., T_alpha, with coefficients polynomial in a formal
parameter nu.  Defining relations:

    A(g) A(h)   = A(gh)
    T_i A(g)    = A(g) T_{g^{-1}(i)}
    T_j T_j     = (nu - 1) T_j + nu A(1)
    T_u T_v     = T_v T_u + A((uv)) T_u - A((uv)) T_v          (u != v)
    A((uv)) T_u T_v = T_u T_v + T_u - A((uv)) T_u              (u < v)

Every element is a unique combination of admissible monomials
A(g) T_{j_1} ... T_{j_m} with j_1 < ... < j_m and g(j_1) < ... < g(j_m).
The rewriting engine reduces arbitrary words to that basis and refuses to
run forever: each rule application must strictly decrease a termination
measure, and a violation raises ConsistencyError instead of looping.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .combinatorics import PartialInjection, Permutation, rook_enumerate
from .errors import ConsistencyError, ContextError
from .nupoly import NuPoly

_ONE = NuPoly.one()
_MINUS_ONE = -_ONE
_NU = NuPoly.nu()
_NU_MINUS_ONE = _NU - _ONE


@dataclass(frozen=True)
class Monomial:
    """Admissible normal-form monomial A(perm) T_{holes}."""

    perm: Permutation
    holes: tuple[int, ...]

    def __post_init__(self) -> None:
        alpha = self.perm.degree
        for j in self.holes:
            if not 1 <= j <= alpha:
                raise ValueError(f"hole index {j} outside 1..{alpha}")
        if any(a >= b for a, b in zip(self.holes, self.holes[1:])):
            raise ValueError(f"hole indices must be strictly increasing: {self.holes}")
        images = tuple(self.perm(j) for j in self.holes)
        if any(a >= b for a, b in zip(images, images[1:])):
            raise ValueError(f"hole images must be strictly increasing: {self.holes} -> {images}")

    @classmethod
    def one(cls, alpha: int) -> "Monomial":
        return cls(Permutation.identity(alpha), ())

    @property
    def alpha(self) -> int:
        return self.perm.degree

    @property
    def hole_degree(self) -> int:
        return len(self.holes)

    def to_rook(self) -> PartialInjection:
        """Forget the permutation on the holes; a bijection onto partial injections."""
        holes = set(self.holes)
        target = tuple(None if x in holes else self.perm(x) for x in range(1, self.alpha + 1))
        return PartialInjection(target)

    @classmethod
    def from_rook(cls, sigma: PartialInjection) -> "Monomial":
        """Inverse of to_rook: fill the holes order-preservingly."""
        alpha = sigma.alpha
        holes = tuple(x for x in range(1, alpha + 1) if sigma(x) is None)
        hit = sigma.image_set()
        missing = [y for y in range(1, alpha + 1) if y not in hit]
        fill = dict(zip(holes, missing))
        images = tuple(fill[x] if x in fill else sigma(x) for x in range(1, alpha + 1))
        return cls(Permutation(images), holes)  # type: ignore[arg-type]


def monomial_sort_key(m: Monomial) -> tuple:
    return (len(m.holes), m.holes, m.perm.images)


def basis_enumerate(alpha: int, *, max_alpha: int | None = None) -> tuple[Monomial, ...]:
    """All admissible monomials, sorted by (hole count, holes, permutation)."""
    out = [Monomial.from_rook(s) for s in rook_enumerate(alpha, max_alpha=max_alpha)]
    out.sort(key=monomial_sort_key)
    return tuple(out)


def _admissible(g: Permutation, js: tuple[int, ...]) -> bool:
    if any(a >= b for a, b in zip(js, js[1:])):
        return False
    images = tuple(g(j) for j in js)
    return all(a < b for a, b in zip(images, images[1:]))


def _measure(g: Permutation, js: tuple[int, ...]) -> tuple[int, int, int]:
    """Strictly decreasing along every rewrite: (length, weak inversions, image inversions)."""
    m = len(js)
    weak = sum(1 for s in range(m) for t in range(s + 1, m) if js[s] >= js[t])
    if weak:
        return (m, weak, m * m)
    images = tuple(g(j) for j in js)
    img_inv = sum(1 for s in range(m) for t in range(s + 1, m) if images[s] > images[t])
    return (m, 0, img_inv)


def word_to_state(alpha: int, tokens: Sequence[tuple[str, object]]) -> tuple[Permutation, tuple[int, ...]]:
    """Collect all permutation letters on the left.

    Tokens are ("perm", Permutation) or ("hole", index).  Sliding a hole
    letter through A(h) from the left turns its index into h^{-1}(index),
    so a right-to-left sweep with the running right-hand product does it.
    """
    h = Permutation.identity(alpha)
    js_rev: list[int] = []
    for kind, payload in reversed(list(tokens)):
        if kind == "perm":
            g = payload
            if not isinstance(g, Permutation) or g.degree != alpha:
                raise ContextError(f"permutation token of wrong degree in alpha={alpha} word")
            h = g * h
        elif kind == "hole":
            i = int(payload)  # type: ignore[call-overload]
            if not 1 <= i <= alpha:
                raise ValueError(f"hole index {i} outside 1..{alpha}")
            js_rev.append(h.inverse()(i))
        else:
            raise ValueError(f"unknown token kind {kind!r}")
    return h, tuple(reversed(js_rev))


class Normalizer:
    """Rewrites states A(g) T_{js} to admissible normal form, with memoization.

    strategy picks which reducible site fires first; "leftmost" and
    "rightmost" must produce identical normal forms (the rules are
    confluent), which the test suite checks.
    """

    def __init__(self, strategy: str = "leftmost"):
        if strategy not in ("leftmost", "rightmost"):
            raise ValueError(f"unknown strategy {strategy!r}")
        self.strategy = strategy
        self._cache: dict[tuple[Permutation, tuple[int, ...]], dict[Monomial, NuPoly]] = {}
        self.stats = {"square": 0, "swap": 0, "erase": 0, "states": 0, "cache_hits": 0}

    def _find_site(self, g: Permutation, js: tuple[int, ...]) -> tuple[str, int]:
        order = range(len(js) - 1)
        if self.strategy == "rightmost":
            order = reversed(order)  # type: ignore[assignment]
        positions = list(order)
        for t in positions:
            if js[t] == js[t + 1]:
                return "square", t
            if js[t] > js[t + 1]:
                return "swap", t
        for t in positions:
            if g(js[t]) > g(js[t + 1]):
                return "erase", t
        raise ConsistencyError("no reducible site in a non-admissible state", {"js": js})

    def reduce(self, g: Permutation, js: tuple[int, ...]) -> dict[Monomial, NuPoly]:
        """Normal form of the single state A(g) T_{js}, as monomial -> coefficient."""
        key = (g, js)
        hit = self._cache.get(key)
        if hit is not None:
            self.stats["cache_hits"] += 1
            return hit
        self.stats["states"] += 1
        if _admissible(g, js):
            out = {Monomial(g, js): _ONE}
        else:
            rule, t = self._find_site(g, js)
            self.stats[rule] += 1
            parent = _measure(g, js)
            acc: dict[Monomial, NuPoly] = {}
            for coeff, g2, js2 in _emit(rule, t, g, js):
                child = _measure(g2, js2)
                if not child < parent:
                    raise ConsistencyError(
                        "termination measure failed to decrease",
                        {"rule": rule, "parent": parent, "child": child, "js": js},
                    )
                for m, c in self.reduce(g2, js2).items():
                    acc[m] = acc.get(m, NuPoly.zero()) + coeff * c
            out = {m: c for m, c in acc.items() if c}
        self._cache[key] = out
        return out

    def normalize(self, alpha: int, tokens: Sequence[tuple[str, object]]) -> "OElement":
        g, js = word_to_state(alpha, tokens)
        return OElement(alpha, dict(self.reduce(g, js)))


def _emit(rule: str, t: int, g: Permutation, js: tuple[int, ...]):
    """Replacement terms for one rule application at site t."""
    if rule == "square":
        one_copy = js[: t + 1] + js[t + 2 :]
        no_copy = js[:t] + js[t + 2 :]
        return ((_NU_MINUS_ONE, g, one_copy), (_NU, g, no_copy))
    u, v = js[t], js[t + 1]
    tau = Permutation.transposition(g.degree, u, v)
    g2 = g * tau
    tail = js[t + 2 :]
    if rule == "swap":
        # u > v here; prefix indices slide through A((uv))
        mapped = tuple(tau(p) for p in js[:t])
        return (
            (_ONE, g, js[:t] + (v, u) + tail),
            (_ONE, g2, mapped + (u,) + tail),
            (_MINUS_ONE, g2, mapped + (v,) + tail),
        )
    if rule == "erase":
        # u < v but g(u) > g(v); prefix and tail avoid u, v, so they pass through untouched
        shorter = js[: t + 1] + js[t + 2 :]
        return ((_ONE, g2, js), (_ONE, g2, shorter), (_MINUS_ONE, g, shorter))
    raise ValueError(f"unknown rule {rule!r}")


_DEFAULT_NORMALIZER = Normalizer()


def default_normalizer() -> Normalizer:
    return _DEFAULT_NORMALIZER


def _as_poly(c) -> NuPoly:
    if isinstance(c, NuPoly):
        return c
    if isinstance(c, (int, Fraction)):
        return NuPoly.constant(c)
    raise TypeError(f"cannot use {type(c).__name__} as a coefficient")


class OElement:
    """A polynomial-in-nu combination of admissible monomials."""

    __slots__ = ("alpha", "_coeffs")

    def __init__(self, alpha: int, coeffs: Mapping[Monomial, NuPoly] | None = None):
        self.alpha = alpha
        clean: dict[Monomial, NuPoly] = {}
        for m, c in (coeffs or {}).items():
            c = _as_poly(c)
            if not c:
                continue
            if m.alpha != alpha:
                raise ContextError(f"monomial of size {m.alpha} in an alpha={alpha} element")
            clean[m] = c
        self._coeffs = clean

    @classmethod
    def zero(cls, alpha: int) -> "OElement":
        return cls(alpha)

    @classmethod
    def one(cls, alpha: int) -> "OElement":
        return cls(alpha, {Monomial.one(alpha): _ONE})

    @classmethod
    def from_monomial(cls, m: Monomial, coeff=1) -> "OElement":
        return cls(m.alpha, {m: _as_poly(coeff)})

    def coefficient(self, m: Monomial) -> NuPoly:
        return self._coeffs.get(m, NuPoly.zero())

    def items(self):
        return self._coeffs.items()

    def sorted_items(self):
        return sorted(self._coeffs.items(), key=lambda kv: monomial_sort_key(kv[0]))

    def support_size(self) -> int:
        return len(self._coeffs)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def _check(self, other: "OElement") -> None:
        if self.alpha != other.alpha:
            raise ContextError(f"alpha mismatch: {self.alpha} vs {other.alpha}")

    def __add__(self, other: "OElement") -> "OElement":
        self._check(other)
        acc = dict(self._coeffs)
        for m, c in other._coeffs.items():
            acc[m] = acc.get(m, NuPoly.zero()) + c
        return OElement(self.alpha, acc)

    def __sub__(self, other: "OElement") -> "OElement":
        return self + other.scale(-1)

    def scale(self, c) -> "OElement":
        c = _as_poly(c)
        return OElement(self.alpha, {m: c * v for m, v in self._coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, NuPoly)):
            return self.scale(other)
        if not isinstance(other, OElement):
            return NotImplemented
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, NuPoly)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, OElement):
            return NotImplemented
        return self.alpha == other.alpha and self._coeffs == other._coeffs

    def __repr__(self) -> str:
        return f"OElement(alpha={self.alpha}, {len(self._coeffs)} terms)"

    def trace(self) -> NuPoly:
        """Coefficient of the identity monomial."""
        return self.coefficient(Monomial.one(self.alpha))

    def augmentation(self) -> NuPoly:
        """Algebra map with A(g) -> 1 and T_i -> nu."""
        acc = NuPoly.zero()
        for m, c in self._coeffs.items():
            acc = acc + c * NuPoly.monomial(m.hole_degree)
        return acc

    def star(self, normalizer: Normalizer | None = None) -> "OElement":
        """Antiautomorphism with A(g)* = A(g^{-1}) and T_i* = T_i."""
        nz = normalizer or default_normalizer()
        acc: dict[Monomial, NuPoly] = {}
        for m, c in self._coeffs.items():
            g_inv = m.perm.inverse()
            js = tuple(m.perm(i) for i in reversed(m.holes))
            for mm, cc in nz.reduce(g_inv, js).items():
                acc[mm] = acc.get(mm, NuPoly.zero()) + c * cc
        return OElement(self.alpha, acc)

    def evaluate(self, value) -> dict[Monomial, Fraction]:
        """Specialize nu to an exact rational; zero coefficients are dropped."""
        out: dict[Monomial, Fraction] = {}
        for m, c in self._coeffs.items():
            v = c.evaluate(value)
            if v:
                out[m] = v
        return out


def gen_perm_element(g: Permutation) -> OElement:
    return OElement.from_monomial(Monomial(g, ()))


def gen_hole_element(i: int, alpha: int) -> OElement:
    return OElement.from_monomial(Monomial(Permutation.identity(alpha), (i,)))


def element_from_word(alpha: int, tokens: Sequence[tuple[str, object]], normalizer: Normalizer | None = None) -> OElement:
    nz = normalizer or default_normalizer()
    return nz.normalize(alpha, tokens)


def multiply(x: OElement, y: OElement, normalizer: Normalizer | None = None) -> OElement:
    """Product via monomial fusion followed by normalization."""
    x._check(y)
    nz = normalizer or default_normalizer()
    y_items = [(m2, c2, m2.perm.inverse()) for m2, c2 in y.items()]
    acc: dict[Monomial, NuPoly] = {}
    for m1, c1 in x.items():
        for m2, c2, inv2 in y_items:
            g = m1.perm * m2.perm
            js = tuple(inv2(i) for i in m1.holes) + m2.holes
            coeff = c1 * c2
            for m, c in nz.reduce(g, js).items():
                acc[m] = acc.get(m, NuPoly.zero()) + coeff * c
    return OElement(x.alpha, acc)


def format_monomial(m: Monomial) -> str:
    parts = []
    if not m.perm.is_identity():
        cycles = "".join("(" + "".join(str(x) for x in cyc) + ")" for cyc in m.perm.cycles())
        parts.append("A" + cycles)
    parts.extend(f"T{j}" for j in m.holes)
    if not parts:
        return "1"
    return " ".join(parts)


def _format_term(c: NuPoly, ms: str) -> str:
    if ms == "1":
        p = c.pretty()
        return "(" + p + ")" if " " in p else p
    if c == _ONE:
        return ms
    if c == _MINUS_ONE:
        return "-" + ms
    p = c.pretty()
    if " " in p or p.startswith("-"):
        p = "(" + p + ")"
    return p + " " + ms


def format_element(x: OElement) -> str:
    if not x:
        return "0"
    terms = [_format_term(c, format_monomial(m)) for m, c in x.sorted_items()]
    out = terms[0]
    for t in terms[1:]:
        if t.startswith("-"):
            out += " - " + t[1:]
        else:
            out += " + " + t
    return out
