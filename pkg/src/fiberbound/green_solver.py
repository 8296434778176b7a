"""Exact admissible Green functions on metrized graphs, plus a floating
point discretization oracle.

For a mass-1 reference measure ``mu`` and a base vertex ``P``, the Green
function ``g`` is the unique continuous function with

    lap(g) = delta_P - mu        and        integral of g against mu = 0.

Because ``mu`` has constant densities, ``g`` is piecewise quadratic with the
second derivative on each edge pinned to the edge's density.  The remaining
unknowns are the vertex values, which satisfy the weighted multigraph
Laplacian system with conductances 1/length:

    sum over edge-ends at v of (g(v) - g(other end)) / length
        = [v == base] - atom_v(mu) - sum over edge-ends at v of density * length / 2

Self-loops drop out of the left-hand side (both ends see the same value) and
contribute their full mass ``density * length`` on the right.  The system is
rank-deficient by exactly the constants; we ground one vertex, solve the
reduced system in exact rational arithmetic, then shift the global constant
so the normalization holds.

``discretize_green`` re-solves the same problem by brute force: subdivide
every edge, lump the densities trapezoidally onto the subdivision nodes, and
solve the discrete nodal system in floating point.  It shares no code path
with the exact solver, so agreement between the two is a genuine check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
import scipy.sparse
import scipy.sparse.linalg

from .metric_graph import (
    Divisor,
    EdgePoint,
    GraphError,
    GraphPoint,
    Measure,
    MetricGraph,
    PiecewiseQuadratic,
    VertexPoint,
    as_fraction,
)

# Max-abs residual beyond which a discrete solve is considered failed.
RESIDUAL_THRESHOLD = 1e-10


class SingularSystemError(RuntimeError):
    """The grounded Laplacian system was singular.

    For a connected graph this cannot happen; seeing it means the assembly
    itself is broken, which is why it is not a ValueError: callers must be
    able to tell an internal bug apart from bad input.
    """


@dataclass(frozen=True)
class GreenFunction:
    """An exact Green function: base vertex, reference measure, values."""

    base: str
    mu: Measure
    values: PiecewiseQuadratic


def _solve_rational_system(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Gaussian elimination over Fraction; raises SingularSystemError on a
    zero pivot column."""
    n = len(rhs)
    a = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot_row is None:
            raise SingularSystemError(
                "grounded Laplacian is singular at column %d; assembly bug" % col
            )
        if pivot_row != col:
            a[col], a[pivot_row] = a[pivot_row], a[col]
        pivot = a[col][col]
        for r in range(col + 1, n):
            factor = a[r][col] / pivot
            if factor == 0:
                continue
            for c in range(col, n + 1):
                a[r][c] -= factor * a[col][c]
    solution = [Fraction(0)] * n
    for r in range(n - 1, -1, -1):
        acc = a[r][n]
        for c in range(r + 1, n):
            acc -= a[r][c] * solution[c]
        solution[r] = acc / a[r][r]
    return solution


def _check_reference_measure(graph: MetricGraph, mu: Measure, base: str) -> None:
    if mu.graph != graph:
        raise GraphError("measure lives on a different graph")
    if not graph.has_vertex(base):
        raise ValueError("base point %r is not a vertex of the graph" % (base,))
    if mu.total_mass != 1:
        raise ValueError(
            "reference measure must have total mass 1, got %s" % (mu.total_mass,)
        )


def solve_green(graph: MetricGraph, mu: Measure, base: str, ground: str | None = None) -> GreenFunction:
    """Solve exactly for the Green function of ``mu`` based at vertex ``base``.

    ``ground`` picks the vertex whose equation is dropped and whose value is
    temporarily pinned to 0 (default: lexicographically first vertex).  The
    choice cannot affect the result: the normalization shift removes the
    constant ambiguity.
    """
    _check_reference_measure(graph, mu, base)
    if ground is None:
        ground = min(graph.vertices)
    elif not graph.has_vertex(ground):
        raise ValueError("ground %r is not a vertex of the graph" % (ground,))

    unknowns = [v for v in graph.vertices if v != ground]
    index = {v: i for i, v in enumerate(unknowns)}

    n = len(unknowns)
    matrix = [[Fraction(0)] * n for _ in range(n)]
    rhs = [Fraction(0)] * n
    for v in unknowns:
        i = index[v]
        rhs[i] = (Fraction(1) if v == base else Fraction(0)) - mu.atom(v)
        for edge, end in graph.edge_ends_at(v):
            rhs[i] -= mu.density(edge.id) * edge.length / 2
            if edge.is_loop:
                continue
            conductance = 1 / edge.length
            matrix[i][i] += conductance
            other = edge.head if end == 0 else edge.tail
            if other != ground:
                matrix[i][index[other]] -= conductance

    solution = _solve_rational_system(matrix, rhs) if n else []
    values = {ground: Fraction(0)}
    for v, value in zip(unknowns, solution):
        values[v] = value

    curvatures = {edge_id: density for edge_id, density in mu.densities.items()}
    g = PiecewiseQuadratic.interpolate(graph, values, curvatures)
    g = g.shift(-g.integral_against(mu))
    return GreenFunction(base, mu, g)


@lru_cache(maxsize=None)
def _solve_green_cached(graph: MetricGraph, mu: Measure, base: str) -> GreenFunction:
    return solve_green(graph, mu, base)


def green_value(graph: MetricGraph, mu: Measure, x: str, y: GraphPoint | str) -> Fraction:
    """g_mu(x, y) for a vertex ``x`` and any graph point ``y``.

    Solutions are cached per (graph, mu, base); repeated evaluations against
    the same base reuse one solve.
    """
    if isinstance(y, str):
        y = graph.vertex_point(y)
    return _solve_green_cached(graph, mu, x).values.value_at(y)


def green_pairing(graph: MetricGraph, mu: Measure, first: Divisor, second: Divisor) -> Fraction:
    """The bilinear extension sum_{x,y} first(x) * second(y) * g_mu(x, y).

    Both divisors must be supported on vertices (split edges first if an
    interior point is needed).
    """
    for divisor in (first, second):
        if divisor.graph != graph:
            raise GraphError("divisor lives on a different graph")
        for point in divisor.support:
            if not isinstance(point, VertexPoint):
                raise ValueError(
                    "green_pairing needs vertex-supported divisors; "
                    "split the edge at %r first" % (point,)
                )
    total = Fraction(0)
    for px, cx in first.items():
        for py, cy in second.items():
            total += cx * cy * green_value(graph, mu, px.vertex, py)
    return total


@dataclass(frozen=True, eq=False)
class DiscreteSolution:
    """A discrete Green solve: node layout, float values, residual.

    ``points`` holds one GraphPoint per node (vertices first, then the
    interior subdivision nodes edge by edge) and ``values`` the matching
    nodal values after normalization.  ``residual`` is the max-abs residual
    of the full (ungrounded) linear system at the returned values.
    """

    graph: MetricGraph
    mu: Measure
    subdivisions: int
    points: tuple[GraphPoint, ...]
    values: np.ndarray
    residual: float

    def index_of(self, point: GraphPoint | str) -> int:
        if isinstance(point, str):
            point = VertexPoint(point)
        try:
            return self.points.index(point)
        except ValueError:
            raise ValueError("%r is not a node of this discretization" % (point,)) from None

    def value_at(self, point: GraphPoint | str) -> float:
        return float(self.values[self.index_of(point)])

    @property
    def normalization_defect(self) -> float:
        """|sum of value * lumped mass| actually achieved (should be ~0)."""
        weights = _lumped_weights(self.graph, self.mu, self.subdivisions)
        return abs(float(self.values @ weights))


def _node_layout(graph: MetricGraph, n: int) -> tuple[list[GraphPoint], dict[str, int], list[list[int]]]:
    """Vertices first, then n-1 interior nodes per edge; returns the point
    list, the vertex index map, and per-edge node chains of length n+1."""
    points: list[GraphPoint] = [VertexPoint(v) for v in graph.vertices]
    vertex_index = {v: i for i, v in enumerate(graph.vertices)}
    chains: list[list[int]] = []
    for edge in graph.edges:
        chain = [vertex_index[edge.tail]]
        step = edge.length / n
        for k in range(1, n):
            chain.append(len(points))
            points.append(EdgePoint(edge.id, k * step))
        chain.append(vertex_index[edge.head])
        chains.append(chain)
    return points, vertex_index, chains


def _lumped_weights(graph: MetricGraph, mu: Measure, n: int) -> np.ndarray:
    """Trapezoidal lumping of ``mu`` onto the subdivision nodes: each segment
    sends density * h / 2 to each of its two ends; atoms stay at vertices."""
    points, vertex_index, chains = _node_layout(graph, n)
    weights = np.zeros(len(points))
    for vertex, mass in mu.atoms.items():
        weights[vertex_index[vertex]] += float(mass)
    for edge, chain in zip(graph.edges, chains):
        density = mu.density(edge.id)
        if density == 0:
            continue
        half = float(density * edge.length / n) / 2.0
        for a, b in zip(chain[:-1], chain[1:]):
            weights[a] += half
            weights[b] += half
    return weights


def discretize_green(graph: MetricGraph, mu: Measure, base: str, n: int) -> DiscreteSolution:
    """Brute-force Green solve on the n-fold subdivision of every edge.

    Each edge becomes a path of n segments with conductance n/length each;
    edge densities are lumped trapezoidally onto the nodes, the discrete
    nodal system is solved with one grounded node, and the constant is
    shifted so the lumped normalization vanishes.  n >= 2 keeps self-loops
    from collapsing to discrete self-edges.
    """
    _check_reference_measure(graph, mu, base)
    if n < 2:
        raise ValueError("need at least 2 subdivisions per edge, got %d" % n)

    points, vertex_index, chains = _node_layout(graph, n)
    size = len(points)
    weights = _lumped_weights(graph, mu, n)

    rows: list[int] = []
    cols: list[int] = []
    data: list[float] = []
    for edge, chain in zip(graph.edges, chains):
        conductance = float(n / edge.length)
        for a, b in zip(chain[:-1], chain[1:]):
            rows.extend((a, a, b, b))
            cols.extend((a, b, b, a))
            data.extend((conductance, -conductance, conductance, -conductance))
    laplacian = scipy.sparse.csr_matrix(
        scipy.sparse.coo_matrix((data, (rows, cols)), shape=(size, size))
    )

    b = -weights.copy()
    b[vertex_index[base]] += 1.0

    ground = vertex_index[min(graph.vertices)]
    keep = np.arange(size) != ground
    values = np.zeros(size)
    if size > 1:
        reduced = laplacian[keep][:, keep].tocsc()
        try:
            values[keep] = scipy.sparse.linalg.spsolve(reduced, b[keep])
        except Exception as exc:
            raise SingularSystemError("discrete linear solve failed: %s" % (exc,)) from exc
        if not np.all(np.isfinite(values)):
            raise SingularSystemError("discrete linear solve returned non-finite values")

    total_weight = float(weights.sum())
    values -= (values @ weights) / total_weight

    residual = float(np.max(np.abs(laplacian @ values - b))) if size > 1 else 0.0
    if residual > RESIDUAL_THRESHOLD:
        raise SingularSystemError(
            "discrete residual %.3e exceeds threshold %.1e" % (residual, RESIDUAL_THRESHOLD)
        )

    return DiscreteSolution(graph, mu, n, tuple(points), values, residual)
