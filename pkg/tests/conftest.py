"""Shared generators for randomized exact tests.

Everything random here is driven by an explicit random.Random instance so
failures reproduce; lengths stay in [1/4, 8] with denominators up to 8 to
keep exact arithmetic small.
"""

from __future__ import annotations

import random
from fractions import Fraction

from fiberbound import FiberSpec, FiberType, MetricGraph, Measure, build_graph

DEGENERATE_TYPES = tuple(k for k in FiberType if k is not FiberType.I)


def random_length(rng: random.Random) -> Fraction:
    den = rng.randint(1, 8)
    num = rng.randint((den + 3) // 4, 8 * den)
    return Fraction(num, den)


def random_spec(rng: random.Random, kind: FiberType | None = None) -> FiberSpec:
    if kind is None:
        kind = rng.choice(DEGENERATE_TYPES)
    return FiberSpec(kind, tuple(random_length(rng) for _ in range(kind.arity)))


def random_graph(rng: random.Random) -> MetricGraph:
    """A small random connected metrized multigraph (loops and parallel
    edges allowed)."""
    n = rng.randint(1, 4)
    names = ["v%d" % i for i in range(n)]
    edges = []
    for i in range(1, n):
        parent = rng.randrange(i)
        edges.append(("t%d" % i, names[parent], names[i], random_length(rng)))
    for k in range(rng.randint(0, 3)):
        a = rng.randrange(n)
        b = rng.randrange(n)
        edges.append(("x%d" % k, names[a], names[b], random_length(rng)))
    return build_graph(names, edges)


def random_measure(rng: random.Random, graph: MetricGraph) -> Measure:
    """A random mass-1 measure with nonnegative atoms and densities."""
    atom_weights = {v: rng.randint(0, 3) for v in graph.vertices}
    edge_weights = {e.id: rng.randint(0, 2) for e in graph.edges}
    total = sum(atom_weights.values()) + sum(edge_weights.values())
    if total == 0:
        atom_weights[graph.vertices[0]] = 1
        total = 1
    atoms = {v: Fraction(w, total) for v, w in atom_weights.items() if w}
    densities = {
        e: Fraction(w, total) / graph.length(e) for e, w in edge_weights.items() if w
    }
    return Measure(graph, atoms=atoms, densities=densities)
