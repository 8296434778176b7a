"""Metrized graphs and the exact calculus that lives on them.

A metrized graph is a finite connected multigraph whose edges are segments
of positive rational length; self-loops and parallel edges are allowed.
This module provides the combinatorial-metric data model (graphs, points,
divisors, measures) together with piecewise-quadratic functions, their exact
evaluation and integration, and the measure-valued Laplacian used to verify
Green-function solutions.

All arithmetic is exact over ``fractions.Fraction``.  Floats are refused at
the boundary so that downstream identities can be asserted with equality
rather than tolerance.

Sign convention for the Laplacian (fixed once, used everywhere)::

    lap(f) = -f''(x) dx  -  sum_v (sum of outward one-sided derivatives at v) delta_v

On the two-vertex segment of length ``a`` with ``f = -x/2 + a/4`` this gives
``lap(f) = delta_P/2 - delta_Q/2``, the normalization every Green-function
identity in this package relies on.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Union


class GraphError(ValueError):
    """Base class for metrized-graph construction and usage errors."""


class NonpositiveLengthError(GraphError):
    """An edge was given a zero or negative length."""


class DanglingEndpointError(GraphError):
    """An edge references a vertex that is not part of the graph."""


class DisconnectedGraphError(GraphError):
    """The underlying multigraph is not connected."""


def as_fraction(value) -> Fraction:
    """Coerce ``value`` to an exact Fraction.

    Accepts int, Fraction, decimal.Decimal and strings like ``"3/2"`` or
    ``"0.25"``.  Floats are rejected: binary floats silently misrepresent
    decimal inputs and would poison exact identities.
    """
    if isinstance(value, float):
        raise TypeError(
            "refusing float %r: pass an int, Fraction, Decimal or string "
            "to keep arithmetic exact" % (value,)
        )
    if isinstance(value, Fraction):
        return value
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    return Fraction(value)


@dataclass(frozen=True)
class Edge:
    """A segment of the graph with a fixed tail-to-head coordinate.

    The coordinate runs from 0 at ``tail`` to ``length`` at ``head``; for a
    self-loop both endpoints are the same vertex and the two coordinate ends
    are identified there.
    """

    id: str
    tail: str
    head: str
    length: Fraction

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head


@dataclass(frozen=True)
class VertexPoint:
    """A point of the graph sitting at a vertex."""

    vertex: str


@dataclass(frozen=True)
class EdgePoint:
    """A point strictly inside an edge, at ``offset`` from the edge's tail."""

    edge: str
    offset: Fraction


GraphPoint = Union[VertexPoint, EdgePoint]


def _point_sort_key(point: GraphPoint):
    if isinstance(point, VertexPoint):
        return (0, point.vertex, Fraction(0))
    return (1, point.edge, point.offset)


class MetricGraph:
    """A finite connected metrized multigraph.

    Vertices carry an optional nonnegative genus marker (metadata recording
    the geometric genus of the fiber component a vertex stands for; the
    potential theory itself never reads it).  Construction validates edge
    lengths, endpoint references and connectivity, and freezes a
    deterministic vertex/edge order so downstream linear algebra is
    reproducible.
    """

    __slots__ = ("_vertices", "_genus", "_edges", "_edge_by_id", "_ends_at", "_key", "_hash")

    def __init__(self, vertices: Iterable, edges: Iterable = ()):
        vertex_list: list[tuple[str, int]] = []
        for entry in vertices:
            if isinstance(entry, str):
                name, genus = entry, 0
            else:
                name, genus = entry
            if not isinstance(name, str):
                raise GraphError("vertex ids must be strings, got %r" % (name,))
            genus = int(genus)
            if genus < 0:
                raise GraphError("vertex %r has negative genus marker %d" % (name, genus))
            vertex_list.append((name, genus))
        if not vertex_list:
            raise GraphError("a metrized graph needs at least one vertex")
        names = [name for name, _ in vertex_list]
        if len(set(names)) != len(names):
            raise GraphError("duplicate vertex ids: %r" % (sorted(names),))

        genus_map = dict(vertex_list)
        edge_list: list[Edge] = []
        for entry in edges:
            if isinstance(entry, Edge):
                eid, tail, head, length = entry.id, entry.tail, entry.head, entry.length
            else:
                eid, tail, head, length = entry
            if not isinstance(eid, str):
                raise GraphError("edge ids must be strings, got %r" % (eid,))
            length = as_fraction(length)
            if length <= 0:
                raise NonpositiveLengthError(
                    "edge %r has nonpositive length %s" % (eid, length)
                )
            for end in (tail, head):
                if end not in genus_map:
                    raise DanglingEndpointError(
                        "edge %r references unknown vertex %r" % (eid, end)
                    )
            edge_list.append(Edge(eid, tail, head, length))
        edge_ids = [e.id for e in edge_list]
        if len(set(edge_ids)) != len(edge_ids):
            raise GraphError("duplicate edge ids: %r" % (sorted(edge_ids),))

        ends_at: dict[str, list[tuple[Edge, int]]] = {name: [] for name in names}
        for edge in edge_list:
            ends_at[edge.tail].append((edge, 0))
            ends_at[edge.head].append((edge, 1))

        self._vertices = tuple(names)
        self._genus = genus_map
        self._edges = tuple(edge_list)
        self._edge_by_id = {e.id: e for e in edge_list}
        self._ends_at = {v: tuple(pairs) for v, pairs in ends_at.items()}
        self._key = (tuple(vertex_list), self._edges)
        self._hash = hash(self._key)

        self._check_connected()

    def _check_connected(self) -> None:
        seen = {self._vertices[0]}
        queue = deque(seen)
        while queue:
            v = queue.popleft()
            for edge, end in self._ends_at[v]:
                other = edge.head if end == 0 else edge.tail
                if other not in seen:
                    seen.add(other)
                    queue.append(other)
        if len(seen) != len(self._vertices):
            missing = sorted(set(self._vertices) - seen)
            raise DisconnectedGraphError(
                "graph is disconnected; unreachable vertices: %r" % (missing,)
            )

    # -- basic queries ------------------------------------------------

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    def genus_of(self, vertex: str) -> int:
        try:
            return self._genus[vertex]
        except KeyError:
            raise GraphError("unknown vertex %r" % (vertex,)) from None

    def has_vertex(self, vertex: str) -> bool:
        return vertex in self._genus

    def edge(self, edge_id: str) -> Edge:
        try:
            return self._edge_by_id[edge_id]
        except KeyError:
            raise GraphError("unknown edge %r" % (edge_id,)) from None

    def length(self, edge_id: str) -> Fraction:
        return self.edge(edge_id).length

    def edge_ends_at(self, vertex: str) -> tuple[tuple[Edge, int], ...]:
        """All edge-ends incident to ``vertex`` as (edge, end) pairs.

        ``end`` is 0 for the tail (coordinate 0) and 1 for the head
        (coordinate = length).  A self-loop at the vertex appears twice.
        """
        try:
            return self._ends_at[vertex]
        except KeyError:
            raise GraphError("unknown vertex %r" % (vertex,)) from None

    def total_length(self) -> Fraction:
        return sum((e.length for e in self._edges), Fraction(0))

    # -- points -------------------------------------------------------

    def vertex_point(self, vertex: str) -> VertexPoint:
        if vertex not in self._genus:
            raise GraphError("unknown vertex %r" % (vertex,))
        return VertexPoint(vertex)

    def interior_point(self, edge_id: str, offset) -> EdgePoint:
        """A point strictly inside ``edge_id`` at a rational offset from the tail."""
        edge = self.edge(edge_id)
        offset = as_fraction(offset)
        if not 0 < offset < edge.length:
            raise GraphError(
                "offset %s is not interior to edge %r of length %s"
                % (offset, edge_id, edge.length)
            )
        return EdgePoint(edge_id, offset)

    def locate(self, edge_id: str, offset) -> GraphPoint:
        """The point of ``edge_id`` at ``offset``, canonicalized.

        Edge endpoints are always represented as vertex points, so an offset
        of 0 or of the full length comes back as the corresponding vertex.
        """
        edge = self.edge(edge_id)
        offset = as_fraction(offset)
        if offset == 0:
            return VertexPoint(edge.tail)
        if offset == edge.length:
            return VertexPoint(edge.head)
        return self.interior_point(edge_id, offset)

    def check_point(self, point: GraphPoint) -> GraphPoint:
        """Validate that ``point`` lies on this graph; returns it unchanged."""
        if isinstance(point, VertexPoint):
            if point.vertex not in self._genus:
                raise GraphError("point references unknown vertex %r" % (point.vertex,))
            return point
        if isinstance(point, EdgePoint):
            edge = self.edge(point.edge)
            offset = as_fraction(point.offset)
            if not 0 < offset < edge.length:
                raise GraphError(
                    "offset %s is not interior to edge %r of length %s"
                    % (offset, point.edge, edge.length)
                )
            return point
        raise GraphError("not a graph point: %r" % (point,))

    # -- identity -----------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, MetricGraph):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return "MetricGraph(%d vertices, %d edges)" % (len(self._vertices), len(self._edges))


def build_graph(vertices: Iterable, edges: Iterable = ()) -> MetricGraph:
    """Build a validated MetricGraph.

    ``vertices`` is an iterable of ids or (id, genus) pairs; ``edges`` an
    iterable of (id, tail, head, length) tuples or Edge records.  Raises
    NonpositiveLengthError, DanglingEndpointError or DisconnectedGraphError
    on the corresponding defect.
    """
    return MetricGraph(vertices, edges)


def scale_lengths(graph: MetricGraph, factor) -> MetricGraph:
    """The same combinatorial graph with every edge length multiplied by ``factor``."""
    factor = as_fraction(factor)
    if factor <= 0:
        raise GraphError("scale factor must be positive, got %s" % (factor,))
    vertices = [(v, graph.genus_of(v)) for v in graph.vertices]
    edges = [Edge(e.id, e.tail, e.head, e.length * factor) for e in graph.edges]
    return MetricGraph(vertices, edges)


class Divisor:
    """A finitely supported rational combination of graph points.

    Zero coefficients are dropped and entries are kept in a canonical order,
    so equality and hashing are structural.
    """

    __slots__ = ("_graph", "_entries", "_hash")

    def __init__(self, graph: MetricGraph, coefficients=()):
        if isinstance(coefficients, Mapping):
            items = coefficients.items()
        else:
            items = coefficients
        merged: dict[GraphPoint, Fraction] = {}
        for point, coeff in items:
            point = graph.check_point(point)
            coeff = as_fraction(coeff)
            merged[point] = merged.get(point, Fraction(0)) + coeff
        entries = tuple(
            (p, c) for p, c in sorted(merged.items(), key=lambda it: _point_sort_key(it[0]))
            if c != 0
        )
        self._graph = graph
        self._entries = entries
        self._hash = hash((graph, entries))

    @property
    def graph(self) -> MetricGraph:
        return self._graph

    @property
    def support(self) -> tuple[GraphPoint, ...]:
        return tuple(p for p, _ in self._entries)

    @property
    def degree(self) -> Fraction:
        return sum((c for _, c in self._entries), Fraction(0))

    def coefficient(self, point: GraphPoint) -> Fraction:
        for p, c in self._entries:
            if p == point:
                return c
        return Fraction(0)

    def items(self) -> tuple[tuple[GraphPoint, Fraction], ...]:
        return self._entries

    def __eq__(self, other) -> bool:
        if not isinstance(other, Divisor):
            return NotImplemented
        return self._graph == other._graph and self._entries == other._entries

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        terms = ", ".join("%s: %s" % (p, c) for p, c in self._entries)
        return "Divisor({%s})" % terms


class Measure:
    """A finite signed measure: rational atoms at vertices plus constant
    densities on edges.

    The mass carried by an edge is ``density * length``.  Canonicalization
    drops zero entries, so equality is exact structural equality; arithmetic
    (addition, subtraction, rational scaling) stays within the class.
    """

    __slots__ = ("_graph", "_atoms", "_densities", "_hash")

    def __init__(self, graph: MetricGraph, atoms=(), densities=()):
        atom_items = atoms.items() if isinstance(atoms, Mapping) else atoms
        density_items = densities.items() if isinstance(densities, Mapping) else densities
        atom_map: dict[str, Fraction] = {}
        for vertex, mass in atom_items:
            if not graph.has_vertex(vertex):
                raise GraphError("atom at unknown vertex %r" % (vertex,))
            mass = as_fraction(mass)
            atom_map[vertex] = atom_map.get(vertex, Fraction(0)) + mass
        density_map: dict[str, Fraction] = {}
        for edge_id, density in density_items:
            graph.edge(edge_id)
            density = as_fraction(density)
            density_map[edge_id] = density_map.get(edge_id, Fraction(0)) + density
        self._graph = graph
        self._atoms = tuple(sorted((v, m) for v, m in atom_map.items() if m != 0))
        self._densities = tuple(sorted((e, d) for e, d in density_map.items() if d != 0))
        self._hash = hash((graph, self._atoms, self._densities))

    @classmethod
    def dirac(cls, graph: MetricGraph, vertex: str, mass=1) -> "Measure":
        return cls(graph, atoms={vertex: as_fraction(mass)})

    @classmethod
    def zero(cls, graph: MetricGraph) -> "Measure":
        return cls(graph)

    @property
    def graph(self) -> MetricGraph:
        return self._graph

    @property
    def atoms(self) -> dict[str, Fraction]:
        return dict(self._atoms)

    @property
    def densities(self) -> dict[str, Fraction]:
        return dict(self._densities)

    def atom(self, vertex: str) -> Fraction:
        for v, m in self._atoms:
            if v == vertex:
                return m
        return Fraction(0)

    def density(self, edge_id: str) -> Fraction:
        for e, d in self._densities:
            if e == edge_id:
                return d
        return Fraction(0)

    @property
    def total_mass(self) -> Fraction:
        mass = sum((m for _, m in self._atoms), Fraction(0))
        for edge_id, density in self._densities:
            mass += density * self._graph.length(edge_id)
        return mass

    def is_zero(self) -> bool:
        return not self._atoms and not self._densities

    # -- linear structure ----------------------------------------------

    def _combine(self, other: "Measure", sign: int) -> "Measure":
        if not isinstance(other, Measure):
            return NotImplemented
        if other._graph != self._graph:
            raise GraphError("measures live on different graphs")
        atoms = dict(self._atoms)
        for v, m in other._atoms:
            atoms[v] = atoms.get(v, Fraction(0)) + sign * m
        densities = dict(self._densities)
        for e, d in other._densities:
            densities[e] = densities.get(e, Fraction(0)) + sign * d
        return Measure(self._graph, atoms, densities)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scaled(-1)

    def scaled(self, factor) -> "Measure":
        factor = as_fraction(factor)
        return Measure(
            self._graph,
            {v: factor * m for v, m in self._atoms},
            {e: factor * d for e, d in self._densities},
        )

    def __mul__(self, factor):
        return self.scaled(factor)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Measure):
            return NotImplemented
        return (
            self._graph == other._graph
            and self._atoms == other._atoms
            and self._densities == other._densities
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return "Measure(atoms=%r, densities=%r)" % (dict(self._atoms), dict(self._densities))


class PiecewiseQuadratic:
    """A continuous function that is one quadratic per edge.

    On edge ``e`` with coordinate ``x in [0, length]`` the function is
    ``q*x^2/2 + l*x + v0``; a vertex-value table pins the values at vertices.
    Continuity (edge-end evaluations agree with the vertex table, exactly)
    is enforced at construction, so any instance is a legitimate input to
    the Laplacian.
    """

    __slots__ = ("_graph", "_vertex_values", "_edge_coeffs", "_hash")

    def __init__(self, graph: MetricGraph, vertex_values, edge_coeffs):
        values = dict(vertex_values)
        coeffs_in = dict(edge_coeffs)
        if set(values) != set(graph.vertices):
            raise GraphError("vertex-value table must cover exactly the graph's vertices")
        values = {v: as_fraction(val) for v, val in values.items()}
        if set(coeffs_in) != {e.id for e in graph.edges}:
            raise GraphError("edge coefficients must cover exactly the graph's edges")
        coeffs: dict[str, tuple[Fraction, Fraction, Fraction]] = {}
        for edge in graph.edges:
            q, l, v0 = (as_fraction(c) for c in coeffs_in[edge.id])
            if v0 != values[edge.tail]:
                raise GraphError(
                    "discontinuity on edge %r: value %s at tail %r, table says %s"
                    % (edge.id, v0, edge.tail, values[edge.tail])
                )
            at_head = q * edge.length ** 2 / 2 + l * edge.length + v0
            if at_head != values[edge.head]:
                raise GraphError(
                    "discontinuity on edge %r: value %s at head %r, table says %s"
                    % (edge.id, at_head, edge.head, values[edge.head])
                )
            coeffs[edge.id] = (q, l, v0)
        self._graph = graph
        self._vertex_values = tuple(sorted(values.items()))
        self._edge_coeffs = tuple(sorted(coeffs.items()))
        self._hash = hash((graph, self._vertex_values, self._edge_coeffs))

    @classmethod
    def interpolate(cls, graph: MetricGraph, vertex_values, curvatures=()) -> "PiecewiseQuadratic":
        """The unique function with the given vertex values and per-edge
        second derivative ``q`` (zero where unspecified): continuity fixes
        the linear coefficient ``l = (head - tail)/length - q*length/2``.
        """
        values = {v: as_fraction(val) for v, val in dict(vertex_values).items()}
        curvature_map = {e: as_fraction(q) for e, q in dict(curvatures).items()}
        coeffs = {}
        for edge in graph.edges:
            q = curvature_map.get(edge.id, Fraction(0))
            v_tail = values[edge.tail]
            v_head = values[edge.head]
            l = (v_head - v_tail) / edge.length - q * edge.length / 2
            coeffs[edge.id] = (q, l, v_tail)
        return cls(graph, values, coeffs)

    @classmethod
    def constant(cls, graph: MetricGraph, value) -> "PiecewiseQuadratic":
        value = as_fraction(value)
        return cls.interpolate(graph, {v: value for v in graph.vertices})

    @property
    def graph(self) -> MetricGraph:
        return self._graph

    @property
    def vertex_values(self) -> dict[str, Fraction]:
        return dict(self._vertex_values)

    @property
    def edge_coefficients(self) -> dict[str, tuple[Fraction, Fraction, Fraction]]:
        return dict(self._edge_coeffs)

    def value_at(self, point: GraphPoint) -> Fraction:
        point = self._graph.check_point(point)
        if isinstance(point, VertexPoint):
            return dict(self._vertex_values)[point.vertex]
        q, l, v0 = dict(self._edge_coeffs)[point.edge]
        x = point.offset
        return q * x * x / 2 + l * x + v0

    def __call__(self, point: GraphPoint) -> Fraction:
        return self.value_at(point)

    # -- calculus -------------------------------------------------------

    def integral_against(self, measure: Measure) -> Fraction:
        if measure.graph != self._graph:
            raise GraphError("function and measure live on different graphs")
        values = dict(self._vertex_values)
        total = Fraction(0)
        for vertex, mass in measure.atoms.items():
            total += mass * values[vertex]
        coeffs = dict(self._edge_coeffs)
        for edge_id, density in measure.densities.items():
            q, l, v0 = coeffs[edge_id]
            length = self._graph.length(edge_id)
            total += density * (q * length ** 3 / 6 + l * length ** 2 / 2 + v0 * length)
        return total

    def laplacian(self) -> Measure:
        """The distributional Laplacian as an exact signed measure.

        Edge part: density ``-q`` per edge.  Vertex part: minus the sum of
        outward one-sided derivatives over the incident edge-ends (the
        outward derivative is ``l`` at a tail and ``-(q*length + l)`` at a
        head; a self-loop contributes both).  With one quadratic per edge the
        derivative has no interior jumps, so no interior atoms can arise.
        """
        coeffs = dict(self._edge_coeffs)
        densities = {}
        atoms = {v: Fraction(0) for v in self._graph.vertices}
        for edge in self._graph.edges:
            q, l, _ = coeffs[edge.id]
            if q != 0:
                densities[edge.id] = -q
            atoms[edge.tail] -= l
            atoms[edge.head] -= -(q * edge.length + l)
        return Measure(self._graph, atoms, densities)

    # -- linear structure -------------------------------------------------

    def shift(self, constant) -> "PiecewiseQuadratic":
        """Add a global constant."""
        constant = as_fraction(constant)
        values = {v: val + constant for v, val in self._vertex_values}
        coeffs = {e: (q, l, v0 + constant) for e, (q, l, v0) in self._edge_coeffs}
        return PiecewiseQuadratic(self._graph, values, coeffs)

    def scaled(self, factor) -> "PiecewiseQuadratic":
        factor = as_fraction(factor)
        values = {v: factor * val for v, val in self._vertex_values}
        coeffs = {
            e: (factor * q, factor * l, factor * v0) for e, (q, l, v0) in self._edge_coeffs
        }
        return PiecewiseQuadratic(self._graph, values, coeffs)

    def __mul__(self, factor):
        return self.scaled(factor)

    __rmul__ = __mul__

    def __neg__(self):
        return self.scaled(-1)

    def __add__(self, other):
        if not isinstance(other, PiecewiseQuadratic):
            return NotImplemented
        if other._graph != self._graph:
            raise GraphError("functions live on different graphs")
        ours, theirs = dict(self._vertex_values), dict(other._vertex_values)
        values = {v: ours[v] + theirs[v] for v in self._graph.vertices}
        oc, tc = dict(self._edge_coeffs), dict(other._edge_coeffs)
        coeffs = {}
        for edge in self._graph.edges:
            (q1, l1, c1), (q2, l2, c2) = oc[edge.id], tc[edge.id]
            coeffs[edge.id] = (q1 + q2, l1 + l2, c1 + c2)
        return PiecewiseQuadratic(self._graph, values, coeffs)

    def __sub__(self, other):
        if not isinstance(other, PiecewiseQuadratic):
            return NotImplemented
        return self + (-other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PiecewiseQuadratic):
            return NotImplemented
        return (
            self._graph == other._graph
            and self._vertex_values == other._vertex_values
            and self._edge_coeffs == other._edge_coeffs
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return "PiecewiseQuadratic(%r)" % (dict(self._vertex_values),)


def evaluate(function: PiecewiseQuadratic, point: GraphPoint) -> Fraction:
    """Exact value of ``function`` at ``point``."""
    return function.value_at(point)


def integrate_against(function: PiecewiseQuadratic, measure: Measure) -> Fraction:
    """Exact integral of ``function`` against ``measure`` (atoms plus edge parts)."""
    return function.integral_against(measure)


def laplacian_of(function: PiecewiseQuadratic) -> Measure:
    """The measure-valued Laplacian of ``function`` (see module docstring
    for the sign convention)."""
    return function.laplacian()


@dataclass(frozen=True)
class EdgeSplit:
    """Result of splitting an edge at an interior point.

    The split preserves the metric: the old edge of length ``L`` becomes
    ``tail_edge`` of length ``offset`` and ``head_edge`` of length
    ``L - offset`` meeting at the new degree-2 vertex.  ``carry_measure`` and
    ``carry_point`` transport data from the original graph (constant edge
    densities restrict unchanged to both halves, so edge masses are
    preserved).
    """

    original: MetricGraph
    graph: MetricGraph
    split_edge_id: str
    offset: Fraction
    vertex: str
    tail_edge: str
    head_edge: str

    def carry_measure(self, measure: Measure) -> Measure:
        if measure.graph != self.original:
            raise GraphError("measure does not live on the graph that was split")
        densities = {}
        for edge_id, density in measure.densities.items():
            if edge_id == self.split_edge_id:
                densities[self.tail_edge] = density
                densities[self.head_edge] = density
            else:
                densities[edge_id] = density
        return Measure(self.graph, measure.atoms, densities)

    def carry_point(self, point: GraphPoint) -> GraphPoint:
        self.original.check_point(point)
        if isinstance(point, VertexPoint):
            return point
        if point.edge != self.split_edge_id:
            return point
        if point.offset == self.offset:
            return VertexPoint(self.vertex)
        if point.offset < self.offset:
            return EdgePoint(self.tail_edge, point.offset)
        return EdgePoint(self.head_edge, point.offset - self.offset)


def split_edge(graph: MetricGraph, edge_id: str, offset, vertex_id: str | None = None) -> EdgeSplit:
    """Insert a new vertex at an interior point of ``edge_id``.

    This is the graph rewrite that reduces questions about interior points
    (for instance a Green function based at one) to the vertex-based
    machinery.
    """
    edge = graph.edge(edge_id)
    offset = as_fraction(offset)
    if not 0 < offset < edge.length:
        raise GraphError(
            "split offset %s is not interior to edge %r of length %s"
            % (offset, edge_id, edge.length)
        )
    if vertex_id is None:
        vertex_id = "%s@%s" % (edge_id, offset)
    if graph.has_vertex(vertex_id):
        raise GraphError("vertex id %r already taken" % (vertex_id,))
    tail_edge = edge_id + ".0"
    head_edge = edge_id + ".1"
    existing = {e.id for e in graph.edges}
    if tail_edge in existing or head_edge in existing:
        raise GraphError("edge ids %r/%r already taken" % (tail_edge, head_edge))

    vertices = [(v, graph.genus_of(v)) for v in graph.vertices] + [(vertex_id, 0)]
    edges = []
    for e in graph.edges:
        if e.id == edge_id:
            edges.append(Edge(tail_edge, e.tail, vertex_id, offset))
            edges.append(Edge(head_edge, vertex_id, e.head, e.length - offset))
        else:
            edges.append(e)
    return EdgeSplit(graph, MetricGraph(vertices, edges), edge_id, offset, vertex_id, tail_edge, head_edge)
