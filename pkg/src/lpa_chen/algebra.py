"""Exact arithmetic in the Leavitt path algebra ``L_K(E)`` of a finite graph.

Elements are finite combinations of standard-form monomials ``αβ*`` kept
in the normal-form basis: no monomial has ``α`` and ``β`` both ending in
the special (least) out-edge of their common penultimate vertex.  Any
other monomial is rewritten with

    α'γ(β'γ)*  →  α'β'* − Σ_{e ∈ s⁻¹(u), e ≠ γ} (α'e)(β'e)*

until none is left.
"""

from __future__ import annotations

import logging
import random
from collections import defaultdict
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Union

from lpa_chen.errors import GraphMismatchError, PathError, PreconditionError
from lpa_chen.graph import FinPath, Graph, exits

# ------------------------------------------------------------------
# Scalars
# ------------------------------------------------------------------


@dataclass(frozen=True)
class Residue:
    """An element of the prime field ``ℤ/pℤ``."""

    value: int
    modulus: int

    def _lift(self, other: object) -> Residue:
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise GraphMismatchError("Scalars from different prime fields")
            return other
        if isinstance(other, (int, Fraction)):
            return PrimeField(self.modulus).coerce(other)
        return NotImplemented

    def __add__(self, other: object) -> Residue:
        o = self._lift(other)
        return Residue((self.value + o.value) % self.modulus, self.modulus)

    __radd__ = __add__

    def __sub__(self, other: object) -> Residue:
        o = self._lift(other)
        return Residue((self.value - o.value) % self.modulus, self.modulus)

    def __rsub__(self, other: object) -> Residue:
        return self._lift(other) - self

    def __mul__(self, other: object) -> Residue:
        o = self._lift(other)
        return Residue((self.value * o.value) % self.modulus, self.modulus)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> Residue:
        o = self._lift(other)
        if o.value == 0:
            raise ZeroDivisionError("division by zero in prime field")
        return self * Residue(pow(o.value, -1, self.modulus), self.modulus)

    def __neg__(self) -> Residue:
        return Residue(-self.value % self.modulus, self.modulus)

    def __bool__(self) -> bool:
        return self.value != 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Residue):
            return (self.value, self.modulus) == (other.value, other.modulus)
        if isinstance(other, (int, Fraction)):
            return self == self._lift(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.modulus))

    def __str__(self) -> str:
        return str(self.value)


Scalar = Union[Fraction, Residue]


class RationalField:
    name = "rational"

    def coerce(self, value: int | str | Fraction | Residue) -> Fraction:
        if isinstance(value, Residue):
            raise GraphMismatchError("Prime-field scalar used over the rationals")
        return Fraction(value)

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash(self.name)


class PrimeField:
    name = "prime"

    def __init__(self, modulus: int) -> None:
        if modulus < 2:
            raise ValueError(f"Invalid modulus {modulus}")
        self.modulus = modulus

    def coerce(self, value: int | str | Fraction | Residue) -> Residue:
        if isinstance(value, Residue):
            if value.modulus != self.modulus:
                raise GraphMismatchError("Scalars from different prime fields")
            return value
        q = Fraction(value)
        if q.denominator % self.modulus == 0:
            raise PreconditionError(f"{q} has no image modulo {self.modulus}")
        num = q.numerator % self.modulus
        return Residue(num * pow(q.denominator, -1, self.modulus) % self.modulus, self.modulus)

    @property
    def zero(self) -> Residue:
        return Residue(0, self.modulus)

    @property
    def one(self) -> Residue:
        return Residue(1, self.modulus)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeField) and other.modulus == self.modulus

    def __hash__(self) -> int:
        return hash((self.name, self.modulus))


RATIONALS = RationalField()

Field = Union[RationalField, PrimeField]


# ------------------------------------------------------------------
# Monomials
# ------------------------------------------------------------------


@dataclass(frozen=True)
class Monomial:
    """A standard-form monomial ``αβ*`` with ``r(α) = r(β)``."""

    alpha: FinPath
    beta: FinPath

    def __post_init__(self) -> None:
        if self.alpha.rng != self.beta.rng:
            raise PathError(f"Monomial needs r(α) = r(β): '{self.alpha}' vs '{self.beta}'")

    @property
    def source(self) -> str:
        """``s(α)``: the vertex the monomial starts at on the left."""
        return self.alpha.src

    @property
    def r(self) -> str:
        """``r(μ) := s(β)``."""
        return self.beta.src

    def star(self) -> Monomial:
        return Monomial(self.beta, self.alpha)

    def sort_key(self) -> tuple:
        a, b = self.alpha.sort_key(), self.beta.sort_key()
        return len(self.alpha) + len(self.beta), a[1], b[1], a[2], b[2]

    def __str__(self) -> str:
        parts = list(self.alpha.edges) + [f"{e}*" for e in reversed(self.beta.edges)]
        return " ".join(parts) if parts else self.alpha.base


# ------------------------------------------------------------------
# Elements
# ------------------------------------------------------------------


class AlgebraElement:
    """A normalized element of ``L_K(E)``; build through :class:`LeavittAlgebra`."""

    __slots__ = ("algebra", "_terms")

    def __init__(self, algebra: LeavittAlgebra, terms: Mapping[Monomial, Scalar]) -> None:
        self.algebra = algebra
        ordered = sorted(((m, c) for m, c in terms.items() if c), key=lambda t: t[0].sort_key())
        self._terms: dict[Monomial, Scalar] = dict(ordered)

    @property
    def terms(self) -> dict[Monomial, Scalar]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Monomial, Scalar]]:
        return iter(self._terms.items())

    def coefficient(self, mu: Monomial) -> Scalar:
        return self._terms.get(mu, self.algebra.field.zero)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int) and other == 0:
            return not self._terms
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.algebra == other.algebra and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(self._terms.items()))

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        return self.algebra.add(self, other)

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        return self.algebra.add(self, -other)

    def __neg__(self) -> AlgebraElement:
        return self.scale(-1)

    def __mul__(self, other: AlgebraElement | int | Fraction) -> AlgebraElement:
        if isinstance(other, AlgebraElement):
            return self.algebra.multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other: int | Fraction) -> AlgebraElement:
        return self.scale(other)

    def scale(self, k: int | Fraction | Residue) -> AlgebraElement:
        k = self.algebra.field.coerce(k)
        return AlgebraElement(self.algebra, {m: c * k for m, c in self._terms.items()})

    def star(self) -> AlgebraElement:
        """Linear star: ``Σ k αβ* ↦ Σ k βα*``, renormalized."""
        return self.algebra.normalize({m.star(): c for m, c in self._terms.items()})

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"AlgebraElement({self})"


def format_scalar(k: Scalar) -> str:
    return str(k)


def format_element(a: AlgebraElement) -> str:
    if not a:
        return "0"
    out = []
    for i, (mu, k) in enumerate(a.items()):
        negative = isinstance(k, Fraction) and k < 0
        mag = -k if negative else k
        word = str(mu) if mag == 1 else f"{format_scalar(mag)} {mu}"
        if i == 0:
            out.append(f"-{word}" if negative else word)
        else:
            out.append(f"{'-' if negative else '+'} {word}")
    return " ".join(out)


# ------------------------------------------------------------------
# The algebra
# ------------------------------------------------------------------


class LeavittAlgebra:
    """``L_K(E)`` over a finite graph with a chosen coefficient field."""

    def __init__(self, graph: Graph, field: Field = RATIONALS) -> None:
        self.graph = graph
        self.field = field

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LeavittAlgebra):
            return NotImplemented
        return self.graph == other.graph and self.field == other.field

    def __hash__(self) -> int:
        return hash((self.graph, self.field))

    def _check(self, other: LeavittAlgebra) -> None:
        if self != other:
            raise GraphMismatchError("Elements belong to different algebras")

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    def zero(self) -> AlgebraElement:
        return AlgebraElement(self, {})

    def one(self) -> AlgebraElement:
        """The identity ``Σ_v v``."""
        return self.scalar(1)

    def scalar(self, k: int | str | Fraction | Residue) -> AlgebraElement:
        k = self.field.coerce(k)
        g = self.graph
        return AlgebraElement(
            self, {Monomial(g.vertex_path(v), g.vertex_path(v)): k for v in g.vertices}
        )

    def monomial(self, alpha: FinPath, beta: FinPath | None = None, k: int | Fraction = 1) -> AlgebraElement:
        """Return ``k·αβ*`` (``β`` defaults to the vertex ``r(α)``)."""
        if beta is None:
            beta = self.graph.vertex_path(alpha.rng)
        return self.normalize({Monomial(alpha, beta): self.field.coerce(k)})

    def vertex(self, v: str) -> AlgebraElement:
        p = self.graph.vertex_path(v)
        return self.monomial(p, p)

    def edge(self, e: str) -> AlgebraElement:
        return self.monomial(self.graph.path((e,)))

    def ghost(self, e: str) -> AlgebraElement:
        p = self.graph.path((e,))
        return self.monomial(self.graph.vertex_path(p.rng), p)

    def path(self, p: FinPath) -> AlgebraElement:
        return self.monomial(p)

    def ghost_path(self, p: FinPath) -> AlgebraElement:
        """Return ``p*``."""
        return self.monomial(self.graph.vertex_path(p.rng), p)

    def power(self, c: FinPath, z: int) -> AlgebraElement:
        """Return ``c^z`` for a closed path; negative ``z`` means ``(c*)^{-z}``."""
        if z >= 0:
            return self.path(c.power(z))
        return self.ghost_path(c.power(-z))

    def combination(self, terms: Iterable[tuple[Monomial, int | Fraction]]) -> AlgebraElement:
        acc: dict[Monomial, Scalar] = defaultdict(lambda: self.field.zero)
        for mu, k in terms:
            acc[mu] = acc[mu] + self.field.coerce(k)
        return self.normalize(acc)

    # ------------------------------------------------------------------
    # Normal form
    # ------------------------------------------------------------------

    def is_basic(self, mu: Monomial) -> bool:
        """The normal-form predicate."""
        return self._rewrite(mu) is None

    def _rewrite(self, mu: Monomial) -> list[tuple[Monomial, int]] | None:
        a, b = mu.alpha, mu.beta
        if not a.edges or not b.edges or a.edges[-1] != b.edges[-1]:
            return None
        g = self.graph
        gamma = a.edges[-1]
        u = g.src[gamma]
        if g.special_edge(u) != gamma:
            return None
        a0, b0 = a.prefix(len(a) - 1), b.prefix(len(b) - 1)
        out = [(Monomial(a0, b0), 1)]
        for e in g.out_edges(u):
            if e != gamma:
                step = g.path((e,))
                out.append((Monomial(a0.concat(step), b0.concat(step)), -1))
        return out

    def normalize(
        self,
        a: AlgebraElement | Mapping[Monomial, Scalar],
        rng: random.Random | None = None,
    ) -> AlgebraElement:
        """Reduce a combination of monomials to the normal-form basis.

        *rng* picks the next monomial to rewrite at random; the result is
        the same for every order.
        """
        if isinstance(a, AlgebraElement):
            self._check(a.algebra)
            items = list(a.items())
        else:
            items = [(m, self.field.coerce(k)) for m, k in a.items()]
        out: dict[Monomial, Scalar] = defaultdict(lambda: self.field.zero)
        rewrites = 0
        while items:
            idx = rng.randrange(len(items)) if rng is not None else len(items) - 1
            items[idx], items[-1] = items[-1], items[idx]
            mu, k = items.pop()
            if not k:
                continue
            rewrite = self._rewrite(mu)
            if rewrite is None:
                out[mu] = out[mu] + k
                continue
            rewrites += 1
            items.extend((nu, k * c) for nu, c in rewrite)
        if rewrites:
            logging.debug("normalize: %d rewrites", rewrites)
        return AlgebraElement(self, out)

    # ------------------------------------------------------------------
    # Ring operations
    # ------------------------------------------------------------------

    def add(self, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
        self._check(a.algebra)
        self._check(b.algebra)
        acc: dict[Monomial, Scalar] = dict(a.items())
        for m, k in b.items():
            acc[m] = acc.get(m, self.field.zero) + k
        return AlgebraElement(self, acc)

    def multiply_monomials(self, m1: Monomial, m2: Monomial) -> Monomial | None:
        """``(αβ*)(γδ*)`` before normalization, or ``None`` for zero."""
        alpha, beta = m1.alpha, m1.beta
        gamma, delta = m2.alpha, m2.beta
        if gamma.starts_with(beta):
            return Monomial(alpha.concat(gamma.suffix(len(beta))), delta)
        if beta.starts_with(gamma):
            return Monomial(alpha, delta.concat(beta.suffix(len(gamma))))
        return None

    def multiply(
        self, a: AlgebraElement, b: AlgebraElement, rng: random.Random | None = None
    ) -> AlgebraElement:
        """Bilinear product, normalized (see :meth:`normalize` for *rng*).

        Raises:
            GraphMismatchError: if the factors live in different algebras.
        """
        self._check(a.algebra)
        self._check(b.algebra)
        acc: dict[Monomial, Scalar] = defaultdict(lambda: self.field.zero)
        for m1, k1 in a.items():
            for m2, k2 in b.items():
                prod = self.multiply_monomials(m1, m2)
                if prod is not None:
                    acc[prod] = acc[prod] + k1 * k2
        return self.normalize(acc, rng)

    def product(self, *factors: AlgebraElement) -> AlgebraElement:
        result = self.one()
        for f in factors:
            result = self.multiply(result, f)
        return result


# ------------------------------------------------------------------
# Identities used by the resolutions
# ------------------------------------------------------------------


def f_sum(alg: LeavittAlgebra, beta: FinPath, i: int) -> AlgebraElement:
    """Return ``Fᵢ(β) = Σ_{f ∈ Xᵢ(β)} ff*``."""
    g = alg.graph
    total = alg.zero()
    for f in exits(g, beta, i):
        p = g.path((f,))
        total = total + alg.monomial(p, p)
    return total


def solve_for_q_expansion(
    q: AlgebraElement, alpha: FinPath, x: AlgebraElement
) -> list[AlgebraElement]:
    """Expand ``q`` from the identity ``qα = x``.

    Returns ``[xα*, qα_{n-1}F_{n-1}(α)α*_{n-1}, …, qα₁F₁(α)α₁*, qF₀(α)]``,
    whose sum is ``q``.  The identity holds for ``q ∈ L(E)s(α)``, so that is
    checked as well.

    Raises:
        PreconditionError: if ``qα ≠ x`` or ``q·s(α) ≠ q``.
    """
    alg = q.algebra
    if alg.multiply(q, alg.path(alpha)) != x:
        raise PreconditionError(f"q·α ≠ x for α = '{alpha}'")
    if alg.multiply(q, alg.vertex(alpha.src)) != q:
        raise PreconditionError(f"q is not supported at s(α) = '{alpha.src}'")
    parts = [alg.multiply(x, alg.ghost_path(alpha))]
    for i in range(len(alpha) - 1, -1, -1):
        ai = alpha.prefix(i)
        parts.append(alg.product(q, alg.path(ai), f_sum(alg, alpha, i), alg.ghost_path(ai)))
    return parts


def annihilator_decomposition(x: AlgebraElement, beta: FinPath) -> list[AlgebraElement]:
    """Split ``x`` with ``xβ = 0`` into ``tᵢ = Σ_{f ∈ Xᵢ(β)} (xβᵢf) f* βᵢ*``.

    Each ``tᵢ`` lies in ``Jᵢ(β)`` and the components sum to ``x``.

    Raises:
        PreconditionError: unless ``x·s(β) = x`` and ``x·β = 0``.
    """
    alg = x.algebra
    g = alg.graph
    if alg.multiply(x, alg.vertex(beta.src)) != x:
        raise PreconditionError(f"x is not supported at s(β) = '{beta.src}'")
    if alg.multiply(x, alg.path(beta)):
        raise PreconditionError(f"x·β ≠ 0 for β = '{beta}'")
    parts = []
    for i in range(len(beta)):
        bi = beta.prefix(i)
        t = alg.zero()
        for f in exits(g, beta, i):
            bif = bi.concat(g.path((f,)))
            t = t + alg.product(x, alg.path(bif), alg.ghost_path(bif))
        parts.append(t)
    return parts


class S2Form(NamedTuple):
    """``μ = α cᵢ* (c*)ⁿ``."""

    alpha: FinPath
    i: int
    n: int


class MonomialClass(NamedTuple):
    in_s2: bool
    form: S2Form | None = None
    reason: str = ""


def classify_monomial(mu: Monomial, c: FinPath) -> MonomialClass:
    """Decide whether ``μ·c^N`` vanishes for large ``N`` (S1) or never (S2).

    *c* is a simple closed path, or a length-0 path at a sink.
    """
    g = mu.alpha.graph
    v = c.src
    if not c.edges and g.out_edges(v):
        raise PathError(f"'{c}' is neither a closed path nor a sink")
    if c.edges and not c.is_closed:
        raise PathError(f"'{c}' is not closed")
    if mu.r != v:
        return MonomialClass(False, reason="r(μ) differs from s(c)")
    beta = mu.beta
    t = len(c)
    if t == 0:
        return MonomialClass(True, S2Form(mu.alpha, 0, 0))
    reps = len(beta) // t + 1
    if beta.edges != c.power(reps).edges[: len(beta)]:
        return MonomialClass(False, reason="β leaves c through an exit")
    n, i = divmod(len(beta), t)
    return MonomialClass(True, S2Form(mu.alpha, i, n))


def telescoping_factor(alg: LeavittAlgebra, c: FinPath, z: int) -> AlgebraElement:
    """Return ``F`` with ``c^z − v = F·(c − v)``, ``v = s(c)``."""
    if z >= 0:
        total = alg.zero()
        for j in range(z):
            total = total + alg.power(c, j)
        return total
    # c^{-m} − v = −c^{-m}(c^m − v)
    return -alg.multiply(alg.power(c, z), telescoping_factor(alg, c, -z))
