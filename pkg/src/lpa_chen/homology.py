"""Projective resolutions, presentations and Ext¹ between Chen simple modules.

Every Chen simple module is a quotient of a cyclic projective ``L(E)u`` by
the kernel of ``r ↦ r·p``:

* sinks: ``L(E)w`` itself is simple, so the module is projective;
* rational ``αc^∞``: the kernel is ``L(E)(αcα* − u)`` (``c − v`` when ``α``
  is a vertex), so the module is finitely presented of projective
  dimension 1;
* irrational ``p``: the kernel is ``⊕ Jᵢ(p)`` with ``Jᵢ(p)`` generated by
  the ghost paths ``f* pᵢ*`` over the exits ``f`` at step ``i``; infinitely
  many are nonzero on a finite graph, so the module is not finitely
  presented, again of projective dimension 1.

Global dimension is at most one, so Ext² and higher vanish and are not
computed.
"""

from __future__ import annotations

import enum
import logging
import math
from collections import defaultdict
from dataclasses import dataclass, field

from lpa_chen.algebra import (
    AlgebraElement,
    LeavittAlgebra,
    Scalar,
    classify_monomial,
    solve_for_q_expansion,
    telescoping_factor,
)
from lpa_chen.chen import (
    Cardinality,
    ChenModule,
    act,
    l_cardinality,
    l_set_sample,
)
from lpa_chen.errors import PreconditionError
from lpa_chen.graph import FinPath, Graph
from lpa_chen.omega import (
    IrrationalSpec,
    Lasso,
    OmegaPathSpec,
    SinkAnchor,
    canonicalize,
    concretize,
    recurrent_walk,
    tail_equivalent,
    u_set,
)


class ModuleType(enum.Enum):
    SINK = "sink"
    RATIONAL = "rational"
    IRRATIONAL = "irrational"


def module_type(S: OmegaPathSpec) -> ModuleType:
    if isinstance(S, SinkAnchor):
        return ModuleType.SINK
    if isinstance(S, Lasso):
        return ModuleType.RATIONAL
    return ModuleType.IRRATIONAL


# ------------------------------------------------------------------
# Resolutions
# ------------------------------------------------------------------


@dataclass(frozen=True)
class JGenerator:
    """``f* pᵢ*``, a generator of ``Jᵢ(p)``."""

    i: int
    exit: str
    element: AlgebraElement


@dataclass
class ResolutionReport:
    module_type: ModuleType
    presentation_vertex: str
    generator_path: OmegaPathSpec
    kernel_generators: list[AlgebraElement] = field(default_factory=list)
    kernel_family: list[JGenerator] = field(default_factory=list)
    kernel_finitely_generated: bool = True
    finitely_presented: bool = True
    projective: bool = False
    projective_dimension: int = 1
    global_kernel_generator: AlgebraElement | None = None
    horizon: int | None = None
    eventual_pattern: str = ""


def _generator_path(
    S: OmegaPathSpec, alpha: FinPath | None
) -> tuple[FinPath, FinPath, OmegaPathSpec]:
    """Resolve the generator ``α``, the closed path ``c`` at ``r(α)`` and the path ``α·c^∞``.

    ``c`` is fixed before canonicalizing: the canonical form may absorb the
    tail of ``α`` into its cycle, which then starts at a different edge.
    For a sink ``c`` is the vertex path at the sink.
    """
    g = S.graph
    if isinstance(S, SinkAnchor):
        if alpha is None:
            alpha = g.vertex_path(S.sink)
        if alpha.rng != S.sink:
            raise PreconditionError(f"Generator '{alpha}' does not end at the sink '{S.sink}'")
        return alpha, g.vertex_path(S.sink), SinkAnchor(alpha, S.sink)
    if isinstance(S, Lasso):
        if alpha is None:
            alpha = g.vertex_path(S.cycle.src)
        cycle = S.cycle
        if cycle.src != alpha.rng:
            cycle = next((c for c in S.cycle.rotations() if c.src == alpha.rng), None)
            if cycle is None:
                raise PreconditionError(f"Generator '{alpha}' does not end on the cycle '{S.cycle}'")
        return alpha, cycle, canonicalize(Lasso(alpha, cycle))
    if alpha is not None and alpha.edges:
        raise PreconditionError("Irrational modules are resolved from their own starting vertex")
    v = g.vertex_path(S.src)
    return v, v, S


def kernel_horizon(S: IrrationalSpec) -> int:
    return len(S.prefix) + 2 * len(S.recurrent)


def resolution(
    alg: LeavittAlgebra,
    S: OmegaPathSpec,
    generator: FinPath | None = None,
    horizon: int | None = None,
) -> ResolutionReport:
    """Build the projective resolution ``0 → K → L(E)u → V_[S] → 0``.

    Raises:
        PreconditionError: if *generator* does not end on the tail of *S*.
    """
    S = canonicalize(S)
    kind = module_type(S)
    alpha, c, path = _generator_path(S, generator)
    u = alpha.src

    if kind is not ModuleType.IRRATIONAL:
        acα = alg.product(alg.path(alpha), alg.path(c), alg.ghost_path(alpha))
        report = ResolutionReport(
            module_type=kind,
            presentation_vertex=u,
            generator_path=path,
            global_kernel_generator=acα - alg.one(),
        )
        if kind is ModuleType.SINK:
            report.projective = True
            report.projective_dimension = 0
            if alpha.edges:
                report.kernel_generators = [acα - alg.vertex(u)]
            report.eventual_pattern = f"L(E){u} maps onto the module; the sequence splits"
        else:
            report.kernel_generators = [acα - alg.vertex(u)]
            report.eventual_pattern = "single kernel generator; finitely presented, not projective"
        return report

    if horizon is None:
        horizon = kernel_horizon(S)
    g = alg.graph
    family = []
    for i in range(horizon):
        head = concretize(S, i + 1)
        p_i = g.path(head[:i], S.src)
        step = head[i]
        for f in g.out_edges(g.src[step]):
            if f != step:
                family.append(JGenerator(i, f, alg.ghost_path(p_i.concat(g.path((f,))))))
    branching = _recurrent_branching(S)
    logging.info("Irrational kernel for %s listed to horizon %d: %d generators", S, horizon, len(family))
    return ResolutionReport(
        module_type=kind,
        presentation_vertex=S.src,
        generator_path=S,
        kernel_family=family,
        kernel_finitely_generated=False,
        finitely_presented=False,
        projective=False,
        projective_dimension=1,
        horizon=horizon,
        eventual_pattern=(
            f"every visit to the branching vertex {branching} contributes a nonzero J_i "
            "generated by f* p_i* over the exits f"
        ),
    )


def _recurrent_branching(S: IrrationalSpec) -> str:
    g = S.graph
    rw = recurrent_walk(g, S.recurrent)
    return next(
        v for v in g.vertices
        if v in rw.vertices and sum(1 for e in g.out_edges(v) if e in S.recurrent) >= 2
    )


def verify_resolution(alg: LeavittAlgebra, report: ResolutionReport) -> bool:
    """Check that every listed kernel generator annihilates the generator path."""
    if report.module_type is ModuleType.IRRATIONAL:
        g = alg.graph
        p = report.generator_path
        for j in report.kernel_family:
            p_next = g.path(concretize(p, j.i + 1), p.src)
            if alg.multiply(j.element, alg.path(p_next)):
                return False
        return True
    module = ChenModule(alg, report.generator_path)
    t = module.basis(report.generator_path)
    gens = list(report.kernel_generators)
    if report.global_kernel_generator is not None:
        gens.append(report.global_kernel_generator)
    return all(not act(k, t) for k in gens)


def isolate_j_component(alg: LeavittAlgebra, parts: list[AlgebraElement], p: IrrationalSpec) -> AlgebraElement:
    """Return ``(r₀ + … + rₙ)·pₙpₙ*`` for ``rᵢ ∈ Jᵢ(p)``; this equals ``rₙ``."""
    n = len(parts) - 1
    p_n = alg.graph.path(concretize(p, n), p.src)
    total = alg.zero()
    for r in parts:
        total = total + r
    return alg.product(total, alg.path(p_n), alg.ghost_path(p_n))


# ------------------------------------------------------------------
# Kernel membership with a factorization certificate
# ------------------------------------------------------------------


@dataclass(frozen=True)
class KernelMembership:
    member: bool
    kernel_generator: AlgebraElement
    certificate: AlgebraElement | None = None


def factor_through_cycle(lam: AlgebraElement, c: FinPath) -> AlgebraElement:
    """Return ``r`` with ``r·(c − v) = λ`` for ``λ ∈ L(E)v`` killing ``c^∞``.

    Monomials that vanish on ``c^N`` are absorbed by telescoping; the rest,
    ``α cᵢ*(c*)ⁿ``, are traded for the path ``α dᵢ`` (``dᵢ`` the rest of
    ``c`` after ``cᵢ``) and paths with equal action are telescoped onto
    the shortest one.  For a sink ``c`` the kernel is zero and so is ``r``.
    """
    alg = lam.algebra
    g = alg.graph
    if not c.edges:
        return alg.zero()
    v = c.src
    t = len(c)
    r = alg.zero()
    groups: dict[OmegaPathSpec, list[tuple[FinPath, Scalar]]] = defaultdict(list)
    for mu, k in lam.items():
        if mu.r != v:
            raise PreconditionError(f"λ is not supported at s(c) = '{v}'")
        mono = alg.monomial(mu.alpha, mu.beta)
        cls = classify_monomial(mu, c)
        if not cls.in_s2:
            n = max(1, math.ceil(len(mu.beta) / t))
            r = r - alg.multiply(mono, telescoping_factor(alg, c, n)).scale(k)
            continue
        alpha, i, n = cls.form
        ci_star = alg.ghost_path(c.prefix(i))
        head = alg.multiply(alg.path(alpha), ci_star)
        rho = -alg.product(head, alg.power(c, -n), telescoping_factor(alg, c, n)) - head
        r = r + rho.scale(k)
        gamma = alpha.concat(c.suffix(i))
        groups[canonicalize(Lasso(gamma, c))].append((gamma, k))
    for members in groups.values():
        gamma0 = min((gm for gm, _ in members), key=FinPath.sort_key)
        for gamma, k in members:
            n = (len(gamma) - len(gamma0)) // t
            r = r + alg.multiply(alg.path(gamma0), telescoping_factor(alg, c, n)).scale(k)
    return r


def kernel_membership(
    alg: LeavittAlgebra,
    lam: AlgebraElement,
    S: OmegaPathSpec,
    generator: FinPath | None = None,
) -> KernelMembership:
    """Decide ``λ·(generator path) = 0`` and certify it through the kernel generator.

    The certificate ``R`` satisfies ``R·K = λ`` for the kernel generator
    ``K`` (``c − v``, or ``αcα* − u`` with a generator).  It is produced
    when ``λ`` is a member supported at the presentation vertex.

    Raises:
        PreconditionError: for irrational *S* or a mismatched generator.
    """
    S = canonicalize(S)
    if isinstance(S, IrrationalSpec):
        raise PreconditionError("Kernel membership is decided for rational and sink modules")
    alpha, c, path = _generator_path(S, generator)
    u = alg.vertex(alpha.src)
    kernel_gen = alg.product(alg.path(alpha), alg.path(c), alg.ghost_path(alpha)) - u
    module = ChenModule(alg, path)
    member = not act(lam, module.basis(path))
    if not member or alg.multiply(lam, u) != lam:
        return KernelMembership(member, kernel_gen)

    if not alpha.edges:
        cert = factor_through_cycle(lam, c)
    else:
        x = alg.multiply(lam, alg.path(alpha))
        r = factor_through_cycle(x, c)
        parts = solve_for_q_expansion(lam, alpha, x)
        cert = alg.multiply(r, alg.ghost_path(alpha))
        for part in parts[1:]:
            cert = cert - part
    if alg.multiply(cert, kernel_gen) != lam:
        logging.error("Kernel certificate for %s failed to verify", lam)
        return KernelMembership(member, kernel_gen)
    return KernelMembership(member, kernel_gen, cert)


# ------------------------------------------------------------------
# Finite presentation
# ------------------------------------------------------------------


@dataclass(frozen=True)
class Presentation:
    finitely_presented: bool
    reason: str
    witness: str | None = None


def is_finitely_presented(S: OmegaPathSpec) -> Presentation:
    S = canonicalize(S)
    kind = module_type(S)
    if kind is ModuleType.SINK:
        return Presentation(True, "projective: L(E)w is simple")
    if kind is ModuleType.RATIONAL:
        return Presentation(True, f"kernel generated by {S.cycle} - {S.cycle.src}")
    v = _recurrent_branching(S)
    return Presentation(
        False,
        f"the exits at {v} are nonempty infinitely often, so the kernel is not finitely generated",
        v,
    )


# ------------------------------------------------------------------
# Ext¹
# ------------------------------------------------------------------


class ExtValue(enum.Enum):
    ZERO = "zero"
    FINITE = "finite"
    COUNTABLY_INFINITE = "countably_infinite"


@dataclass(frozen=True)
class ExtDim:
    value: ExtValue
    n: int | None = None
    witnesses: list[str] = field(default_factory=list)
    rule: str = ""

    @property
    def is_zero(self) -> bool:
        return self.value is ExtValue.ZERO

    @property
    def criterion(self) -> str:
        return RULE_CRITERIA.get(self.rule, "")


RULE_SINK = "sink-source"
RULE_UNREACHABLE = "rational-unreachable"
RULE_SAME_CLASS = "rational-same-class"
RULE_L_COUNT = "rational-l-count"
RULE_IRRATIONAL = "irrational-exits"

# The condition each rule decides on, as carried in reports.
RULE_CRITERIA = {
    RULE_SINK: "S is a sink path, so every extension of V_S splits",
    RULE_UNREACHABLE: "S = d^inf with s(d) outside U(T)",
    RULE_SAME_CLASS: "S = d^inf with T in [d^inf]: dim = |L(d, d^inf)| + 1",
    RULE_L_COUNT: "S = d^inf with s(d) in U(T) and T outside [d^inf]: dim = |L(d, T)|",
    RULE_IRRATIONAL: "S irrational: nonzero iff an exit beside a recurrent edge reaches U(T)",
}


def _sample_members(d: FinPath, T: OmegaPathSpec, limit: int) -> list[str]:
    if isinstance(canonicalize(T), IrrationalSpec):
        return []
    return [f"pi(rho_hat {p})" for p in l_set_sample(d, T, limit)]


def ext_dim(S: OmegaPathSpec, T: OmegaPathSpec, witness_limit: int = 5) -> ExtDim:
    """Classify ``dim_K Ext¹(V_[S], V_[T])``.

    Raises:
        MalformedSpecError: for ill-formed specs.
    """
    S, T = canonicalize(S), canonicalize(T)
    if isinstance(S, SinkAnchor):
        return ExtDim(ExtValue.ZERO, rule=RULE_SINK)

    if isinstance(S, Lasso):
        d = S.cycle
        if d.src not in u_set(T):
            return ExtDim(ExtValue.ZERO, rule=RULE_UNREACHABLE)
        dinf = Lasso(d.graph.vertex_path(d.src), d)
        if tail_equivalent(S, T):
            card = l_cardinality(d, dinf)
            base = [f"pi(rho_hat {dinf})"]
            if card.kind is Cardinality.EMPTY:
                return ExtDim(ExtValue.FINITE, 1, base, RULE_SAME_CLASS)
            return ExtDim(
                ExtValue.COUNTABLY_INFINITE,
                witnesses=base + _sample_members(d, dinf, witness_limit),
                rule=RULE_SAME_CLASS,
            )
        card = l_cardinality(d, T)
        assert card.kind is not Cardinality.EMPTY, "L(d, T) is nonempty when s(d) is in U(T)"
        if card.kind is Cardinality.FINITE:
            members = l_set_sample(d, T, card.count)
            return ExtDim(
                ExtValue.FINITE, card.count, [f"pi(rho_hat {p})" for p in members], RULE_L_COUNT
            )
        return ExtDim(
            ExtValue.COUNTABLY_INFINITE,
            witnesses=_sample_members(d, T, witness_limit),
            rule=RULE_L_COUNT,
        )

    g: Graph = S.graph
    reach = u_set(T)
    for e in g.edges:
        if e not in S.recurrent:
            continue
        for f in g.out_edges(g.src[e]):
            if f != e and g.rng[f] in reach:
                return ExtDim(
                    ExtValue.COUNTABLY_INFINITE,
                    witnesses=[f"exit {f} beside recurrent edge {e} reaches U(T) at {g.rng[f]}"],
                    rule=RULE_IRRATIONAL,
                )
    return ExtDim(ExtValue.ZERO, rule=RULE_IRRATIONAL)


def ext_table(specs: list[OmegaPathSpec], witness_limit: int = 5) -> list[list[ExtDim]]:
    return [[ext_dim(S, T, witness_limit) for T in specs] for S in specs]


# ------------------------------------------------------------------
# Uniserial modules
# ------------------------------------------------------------------


@dataclass(frozen=True)
class UniserialReport:
    exists: bool
    length: int
    reason: str
    rule: str


def uniserial_report(S: OmegaPathSpec, n: int) -> UniserialReport:
    """Report whether uniserial modules of length *n* with all factors ``V_[S]`` exist.

    They do whenever ``Ext¹(V_[S], V_[S]) ≠ 0``, by stacking non-split
    self-extensions.
    """
    S = canonicalize(S)
    if isinstance(S, Lasso):
        return UniserialReport(
            True,
            n,
            f"Ext^1 of V[{S.cycle}^inf] with itself is nonzero for every cycle",
            "rational-self-extension",
        )
    dim = ext_dim(S, S)
    if dim.is_zero:
        return UniserialReport(False, n, "Ext^1(S, S) = 0, so no non-split self-extension exists", dim.rule)
    return UniserialReport(True, n, "Ext^1(S, S) is nonzero", dim.rule)


def j_annihilation_bound(p: IrrationalSpec, keys: list[OmegaPathSpec], cap: int = 256) -> int:
    """Return ``N`` with ``f* pᵢ*`` killing every key for all ``i ≥ N``.

    ``f* pᵢ* q ≠ 0`` forces ``q`` to agree with ``p`` on exactly ``i``
    edges, so one past the longest common prefix suffices.  A key that
    agrees with ``p`` for *cap* edges is treated as ``p`` itself.
    """
    p_edges = concretize(p, cap)
    bound = 0
    for q in keys:
        if q.src != p.src:
            continue
        q_edges = concretize(q, cap)
        common = 0
        while common < min(len(p_edges), len(q_edges)) and p_edges[common] == q_edges[common]:
            common += 1
        if common < cap:
            bound = max(bound, common + 1)
    return bound
