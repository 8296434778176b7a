"""The seven semistable genus-2 fiber types and their local invariants.

A degenerate fiber of a semistable genus-2 fibration is classified, through
its stable model, into one of seven types.  Each type determines a dual
metrized graph (vertices = stable components carrying their geometric
genus, edges = chains of nodes with the chain length as edge length), a
degree-2 divisor supported on the stable components, and a canonical mass-1
reference measure.  From that data this module computes the local invariants

    delta  -- number of nodes in the fiber (total edge length),
    d      -- vanishing order of the canonical discriminant section,
    e      -- the Green-function correction term,

each as an exact rational, with ``e`` available along two independent
routes: the closed forms, and a from-scratch computation through the Green
solver on the dual graph.  Their exact agreement over random lengths is the
package's central self-check.

Reference measures: a genus-1 vertex carries an atom of mass 1/2, and each
independent cycle carries mass 1/2 spread uniformly, except for type VII
whose three parallel edges each carry mass 1/3 (the measures for the
one-vertex types III and V are reconstructed by the same weighting; the
closed-form equality tests certify the reconstruction).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .green_solver import discretize_green, green_pairing, green_value
from .metric_graph import Divisor, Measure, MetricGraph, VertexPoint, as_fraction


class FiberType(enum.Enum):
    """Stable-model type of a semistable genus-2 fiber."""

    I = "I"
    II = "II"
    III = "III"
    IV = "IV"
    V = "V"
    VI = "VI"
    VII = "VII"

    @property
    def arity(self) -> int:
        """Number of length parameters (node-chain lengths) the type takes."""
        return _ARITY[self]

    @property
    def stable_components(self) -> int:
        """Number of irreducible components of the stable model (1 or 2)."""
        return 2 if self in (FiberType.II, FiberType.IV, FiberType.VI, FiberType.VII) else 1


_ARITY = {
    FiberType.I: 0,
    FiberType.II: 1,
    FiberType.III: 1,
    FiberType.IV: 2,
    FiberType.V: 2,
    FiberType.VI: 3,
    FiberType.VII: 3,
}

_PARAM_NAMES = ("a", "b", "c")


def _coerce_kind(kind) -> FiberType:
    if isinstance(kind, FiberType):
        return kind
    try:
        return FiberType(str(kind))
    except ValueError:
        raise ValueError("unknown fiber type %r" % (kind,)) from None


@dataclass(frozen=True)
class FiberSpec:
    """A fiber type together with its positive rational length parameters."""

    kind: FiberType
    lengths: tuple[Fraction, ...]

    def __init__(self, kind, lengths=()):
        kind = _coerce_kind(kind)
        lengths = tuple(as_fraction(x) for x in lengths)
        if len(lengths) != kind.arity:
            raise ValueError(
                "type %s takes %d length parameter(s), got %d"
                % (kind.value, kind.arity, len(lengths))
            )
        if any(x <= 0 for x in lengths):
            raise ValueError("length parameters must be positive, got %r" % (lengths,))
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "lengths", lengths)

    @property
    def named_lengths(self) -> dict[str, Fraction]:
        return dict(zip(_PARAM_NAMES, self.lengths))

    def __repr__(self) -> str:
        return "FiberSpec(%s%r)" % (self.kind.value, tuple(map(str, self.lengths)))


def fiber(kind, *lengths) -> FiberSpec:
    """Shorthand constructor: fiber("IV", 3, "1/2")."""
    return FiberSpec(kind, lengths)


@dataclass(frozen=True)
class FiberModel:
    """The potential-theoretic model of one fiber: dual graph, divisor,
    reference measure, and the stable-component vertices (P, and Q when the
    stable model has two components)."""

    spec: FiberSpec
    graph: MetricGraph
    divisor: Divisor
    mu: Measure
    stable_vertices: tuple[str, ...]

    @property
    def p(self) -> str:
        return self.stable_vertices[0]

    @property
    def q(self) -> str:
        if len(self.stable_vertices) < 2:
            raise ValueError("type %s has a single stable component" % self.spec.kind.value)
        return self.stable_vertices[1]


def build_model(spec: FiberSpec) -> FiberModel:
    """Dual graph, divisor and reference measure for ``spec``.

    Self-loops record a component meeting itself in a node; parallel edges
    record multiple intersection chains between the two components.
    """
    kind = spec.kind
    half = Fraction(1, 2)
    if kind is FiberType.I:
        graph = MetricGraph([("P", 2)])
        return FiberModel(
            spec,
            graph,
            Divisor(graph, {VertexPoint("P"): 2}),
            Measure.dirac(graph, "P"),
            ("P",),
        )
    if kind is FiberType.II:
        (a,) = spec.lengths
        graph = MetricGraph([("P", 1), ("Q", 1)], [("G", "P", "Q", a)])
        return FiberModel(
            spec,
            graph,
            Divisor(graph, {VertexPoint("P"): 1, VertexPoint("Q"): 1}),
            Measure(graph, atoms={"P": half, "Q": half}),
            ("P", "Q"),
        )
    if kind is FiberType.III:
        (a,) = spec.lengths
        graph = MetricGraph([("P", 1)], [("G", "P", "P", a)])
        return FiberModel(
            spec,
            graph,
            Divisor(graph, {VertexPoint("P"): 2}),
            Measure(graph, atoms={"P": half}, densities={"G": half / a}),
            ("P",),
        )
    if kind is FiberType.IV:
        a, b = spec.lengths
        graph = MetricGraph(
            [("P", 1), ("Q", 0)],
            [("G1", "P", "Q", a), ("G2", "Q", "Q", b)],
        )
        return FiberModel(
            spec,
            graph,
            Divisor(graph, {VertexPoint("P"): 1, VertexPoint("Q"): 1}),
            Measure(graph, atoms={"P": half}, densities={"G2": half / b}),
            ("P", "Q"),
        )
    if kind is FiberType.V:
        a, b = spec.lengths
        graph = MetricGraph([("P", 0)], [("G1", "P", "P", a), ("G2", "P", "P", b)])
        return FiberModel(
            spec,
            graph,
            Divisor(graph, {VertexPoint("P"): 2}),
            Measure(graph, densities={"G1": half / a, "G2": half / b}),
            ("P",),
        )
    if kind is FiberType.VI:
        a, b, c = spec.lengths
        graph = MetricGraph(
            [("P", 0), ("Q", 0)],
            [("G1", "P", "Q", a), ("G2", "P", "P", b), ("G3", "Q", "Q", c)],
        )
        return FiberModel(
            spec,
            graph,
            Divisor(graph, {VertexPoint("P"): 1, VertexPoint("Q"): 1}),
            Measure(graph, densities={"G2": half / b, "G3": half / c}),
            ("P", "Q"),
        )
    if kind is FiberType.VII:
        a, b, c = spec.lengths
        third = Fraction(1, 3)
        graph = MetricGraph(
            [("P", 0), ("Q", 0)],
            [("G1", "P", "Q", a), ("G2", "P", "Q", b), ("G3", "P", "Q", c)],
        )
        return FiberModel(
            spec,
            graph,
            Divisor(graph, {VertexPoint("P"): 1, VertexPoint("Q"): 1}),
            Measure(graph, densities={"G1": third / a, "G2": third / b, "G3": third / c}),
            ("P", "Q"),
        )
    raise AssertionError("unreachable: %r" % (kind,))


def delta_invariant(spec: FiberSpec) -> Fraction:
    """Number of nodes of the fiber = total length of the dual graph."""
    return sum(spec.lengths, Fraction(0))


def d_invariant(spec: FiberSpec) -> Fraction:
    """Vanishing order of the canonical discriminant section at the fiber.

    Chains meeting the genus-1 locus count twice: 2a for type II, 2a + b for
    IV, 2a + b + c for VI; the remaining types are plain sums.
    """
    kind = spec.kind
    if kind is FiberType.I:
        return Fraction(0)
    if kind in (FiberType.II, FiberType.IV, FiberType.VI):
        a = spec.lengths[0]
        return 2 * a + sum(spec.lengths[1:], Fraction(0))
    return sum(spec.lengths, Fraction(0))


def e_closed_form(spec: FiberSpec) -> Fraction:
    """The Green correction term by its per-type closed form."""
    kind = spec.kind
    if kind is FiberType.I:
        return Fraction(0)
    if kind is FiberType.II:
        (a,) = spec.lengths
        return a
    if kind is FiberType.III:
        (a,) = spec.lengths
        return a / 6
    if kind is FiberType.IV:
        a, b = spec.lengths
        return a + b / 6
    if kind is FiberType.V:
        a, b = spec.lengths
        return (a + b) / 6
    if kind is FiberType.VI:
        a, b, c = spec.lengths
        return a + (b + c) / 6
    a, b, c = spec.lengths
    return Fraction(2, 27) * (a + b + c) + a * b * c / (a * b + b * c + c * a)


class SolverConsistencyError(RuntimeError):
    """Two exact routes to the same invariant disagreed (internal bug)."""


def e_from_green(spec: FiberSpec) -> Fraction:
    """The Green correction term computed from first principles.

    With D the degree-2 divisor on the dual graph and c = g(P,P) + g(P,D)
    the Green constant, the correction is -g(D,D) + 4c.  For two stable
    components (D = P + Q) this collapses to 6 g(P,P) + 2 g(P,Q) since
    g(P,P) = g(Q,Q); for one (D = 2P) it collapses to 8 g(P,P).  The
    two-component case evaluates both expressions and insists they agree,
    which exercises the solve based at Q as well.
    """
    model = build_model(spec)
    graph, mu = model.graph, model.mu
    g_pp = green_value(graph, mu, model.p, model.p)
    if spec.kind.stable_components == 1:
        return 8 * g_pp
    g_pq = green_value(graph, mu, model.p, model.q)
    via_lemma = 6 * g_pp + 2 * g_pq
    g_dd = green_pairing(graph, mu, model.divisor, model.divisor)
    constant = g_pp + green_pairing(
        graph, mu, Divisor(graph, {VertexPoint(model.p): 1}), model.divisor
    )
    via_definition = -g_dd + 4 * constant
    if via_definition != via_lemma:
        raise SolverConsistencyError(
            "Green routes disagree for %r: %s vs %s" % (spec, via_lemma, via_definition)
        )
    return via_lemma


def e_from_oracle(spec: FiberSpec, n: int = 1000) -> float:
    """Float recomputation of the correction term through the discretization
    oracle; independent of every exact code path."""
    model = build_model(spec)
    if spec.kind is FiberType.I:
        return 0.0
    solution = discretize_green(model.graph, model.mu, model.p, n)
    g_pp = solution.value_at(model.p)
    if spec.kind.stable_components == 1:
        return 8.0 * g_pp
    return 6.0 * g_pp + 2.0 * solution.value_at(model.q)
