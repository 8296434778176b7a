"""Acceptance gate for the whole package: seven checks, one printed
verdict line each.

Each check prints "acceptance <n> <label>: PASS|FAIL [detail]" straight to
the terminal (bypassing capture) before asserting, so a plain `pytest -v`
run doubles as a certification transcript.  All rational comparisons are
exact; the only tolerances are the discretization bounds in check 6 and
the runtime budgets, pinned inline.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction

from fiberbound import (
    FLOOR_COEFFICIENT,
    FiberSpec,
    FiberType,
    Measure,
    VertexPoint,
    build_model,
    d_invariant,
    delta_invariant,
    discretize_green,
    e_closed_form,
    e_from_green,
    fiber,
    fiber_contribution,
    global_report,
    green_value,
    laplacian_of,
    minimize_contribution_ratio,
    scale_lengths,
    solve_green,
)
from conftest import DEGENERATE_TYPES, random_graph, random_length, random_measure, random_spec

TWO_COMPONENT = (FiberType.II, FiberType.IV, FiberType.VI, FiberType.VII)


def _verdict(capfd, name: str, ok: bool, detail: str = "") -> None:
    line = "acceptance %s: %s" % (name, "PASS" if ok else "FAIL")
    if detail:
        line += " [%s]" % detail
    with capfd.disabled():
        print(line, flush=True)
    assert ok, line


def _closed_form_reference(spec: FiberSpec) -> Fraction:
    """The published e formulas, restated independently of the library."""
    L = spec.lengths
    if spec.kind is FiberType.I:
        return Fraction(0)
    if spec.kind is FiberType.II:
        return L[0]
    if spec.kind is FiberType.III:
        return L[0] / 6
    if spec.kind is FiberType.IV:
        return L[0] + L[1] / 6
    if spec.kind is FiberType.V:
        return (L[0] + L[1]) / 6
    if spec.kind is FiberType.VI:
        return L[0] + (L[1] + L[2]) / 6
    a, b, c = L
    return Fraction(2, 27) * (a + b + c) + a * b * c / (a * b + b * c + c * a)


def test_criterion_1_e_reproduction(capfd):
    start = time.monotonic()
    rng = random.Random(101)
    checked = 0
    ok = True
    for kind in FiberType:
        specs = [FiberSpec(kind, (Fraction(1),) * kind.arity)]
        if kind.arity:
            specs += [random_spec(rng, kind) for _ in range(100)]
        for spec in specs:
            closed = e_closed_form(spec)
            ok = ok and closed == _closed_form_reference(spec)
            ok = ok and e_from_green(spec) == closed
            checked += 1
        if not ok:
            break
    elapsed = time.monotonic() - start
    ok = ok and elapsed < 10.0
    _verdict(
        capfd,
        "1 per-fiber e, solver vs closed form",
        ok,
        "%d specs, exact equality, %.2fs < 10s" % (checked, elapsed),
    )


def test_criterion_2_intermediate_green_values(capfd):
    rng = random.Random(102)
    ok = True
    for _ in range(50):
        a, b, c = (random_length(rng) for _ in range(3))
        m = build_model(fiber("II", a))
        ok = ok and green_value(m.graph, m.mu, "P", "P") == a / 4
        ok = ok and green_value(m.graph, m.mu, "P", "Q") == -a / 4
        m = build_model(fiber("IV", a, b))
        ok = ok and green_value(m.graph, m.mu, "P", "P") == (b + 12 * a) / 48
        ok = ok and green_value(m.graph, m.mu, "P", "Q") == (b - 12 * a) / 48
        m = build_model(fiber("VI", a, b, c))
        ok = ok and green_value(m.graph, m.mu, "P", "P") == (b + c + 12 * a) / 48
        ok = ok and green_value(m.graph, m.mu, "P", "Q") == (b + c - 12 * a) / 48
        if not ok:
            break
    _verdict(
        capfd,
        "2 intermediate Green values (II, IV, VI)",
        ok,
        "50 random length tuples per type, exact",
    )


def test_criterion_3_sharpness_of_2_135(capfd):
    start = time.monotonic()
    report = global_report([fiber("VII", 1, 1, 1)])
    ok = report.omega2_admissible == Fraction(2, 45)
    ok = ok and report.omega2_admissible == FLOOR_COEFFICIENT * report.delta
    ok = ok and report.floor_is_attained
    scan = minimize_contribution_ratio("VII", 60)
    ok = ok and scan.minimum == Fraction(2, 135)
    ok = ok and scan.argmin == (Fraction(1, 3), Fraction(1, 3), Fraction(1, 3))
    ok = ok and scan.attained
    elapsed = time.monotonic() - start
    ok = ok and elapsed < 60.0
    _verdict(
        capfd,
        "3 sharp constant 2/135",
        ok,
        "omega_a^2 = 2/45 = (2/135)*3; scan at resolution 60, %.2fs < 60s" % elapsed,
    )


def test_criterion_4_pointwise_floor(capfd):
    rng = random.Random(104)
    ok = True
    equality_cases = 0
    for i in range(1000):
        if i % 9 == 0:
            t = random_length(rng)
            spec = fiber("VII", t, t, t)
        else:
            spec = random_spec(rng)
        report = fiber_contribution(spec)
        floor = FLOOR_COEFFICIENT * report.delta
        ok = ok and report.contribution >= floor
        if report.contribution == floor:
            equality_cases += 1
            ok = ok and spec.kind is FiberType.VII and len(set(spec.lengths)) == 1
        elif spec.kind is FiberType.VII and len(set(spec.lengths)) == 1:
            ok = False
        if not ok:
            break
    ok = ok and equality_cases > 0
    _verdict(
        capfd,
        "4 pointwise floor (6/5)d - delta - e >= (2/135)delta",
        ok,
        "1000 random specs, %d exact equality cases, all VII(a,a,a)" % equality_cases,
    )


def test_criterion_5_consistency_identities(capfd):
    rng = random.Random(105)
    ok = True
    lists = 0
    for _ in range(20):
        specs = [
            fiber("I") if rng.random() < 0.1 else random_spec(rng)
            for _ in range(rng.randint(1, 20))
        ]
        report = global_report(specs)
        delta = sum((delta_invariant(s) for s in specs), Fraction(0))
        deg_det = sum((d_invariant(s) for s in specs), Fraction(0)) / 10
        sum_e = sum((e_from_green(s) for s in specs), Fraction(0))
        ok = ok and report.omega2_admissible == report.omega2 - sum_e
        ok = ok and report.omega2 + delta == 12 * deg_det
        ok = ok and report.deg_det == deg_det and report.delta == delta
        for s in specs:
            if s.kind in TWO_COMPONENT:
                m = build_model(s)
                ok = ok and green_value(m.graph, m.mu, "P", "P") == green_value(
                    m.graph, m.mu, "Q", "Q"
                )
        lists += 1
        if not ok:
            break
    _verdict(
        capfd,
        "5 consistency identities",
        ok,
        "%d random fiber lists (len <= 20): omega_a^2 = omega^2 - sum e, "
        "omega^2 + delta = 12 deg_det, g(P,P) = g(Q,Q)" % lists,
    )


def test_criterion_6_oracle_convergence(capfd):
    grid = (100, 300, 1000)
    ok = True
    worst_final = 0.0
    for kind in FiberType:
        spec = FiberSpec(kind, (Fraction(1),) * kind.arity)
        m = build_model(spec)
        exact = float(green_value(m.graph, m.mu, m.p, m.p))
        errors = []
        for n in grid:
            sol = discretize_green(m.graph, m.mu, m.p, n)
            errors.append(abs(sol.value_at(VertexPoint(m.p)) - exact))
        worst_final = max(worst_final, errors[-1])
        ok = ok and errors[-1] <= 1e-3
        for (n1, e1), (n2, e2) in zip(zip(grid, errors), zip(grid[1:], errors[1:])):
            # at-least-linear decrease, with an absolute floor for the cases
            # the discretization solves exactly (errors at roundoff scale)
            ok = ok and e2 <= max(e1 * n1 / n2, 1e-12)
        if not ok:
            break
    _verdict(
        capfd,
        "6 discretization oracle convergence",
        ok,
        "all types, |disc - exact| g(P) at n=1000 <= 1e-3 (worst %.2e), "
        "at-least-linear decrease over n in {100, 300, 1000}" % worst_final,
    )


def test_criterion_7_property_suite(capfd):
    rng = random.Random(107)
    ok = True
    cases = 0
    for _ in range(42):
        graph = random_graph(rng)
        mu = random_measure(rng, graph)
        base = rng.choice(graph.vertices)

        g = solve_green(graph, mu, base)
        # defining Laplace equation, as an exact identity of measures
        ok = ok and laplacian_of(g.values) == Measure.dirac(graph, base) - mu
        cases += 1
        # exact normalization
        ok = ok and g.values.integral_against(mu) == 0
        cases += 1
        # symmetry on a random vertex pair
        x, y = rng.choice(graph.vertices), rng.choice(graph.vertices)
        ok = ok and green_value(graph, mu, x, y) == green_value(graph, mu, y, x)
        cases += 1
        # grounding independence, every choice
        ok = ok and all(
            solve_green(graph, mu, base, ground=v).values == g.values
            for v in graph.vertices
        )
        cases += 1
        # degree-1 homogeneity of Green values and of e
        factor = Fraction(rng.randint(1, 6), rng.randint(1, 6))
        scaled_graph = scale_lengths(graph, factor)
        scaled_mu = Measure(
            scaled_graph,
            atoms=mu.atoms,
            densities={e: d / factor for e, d in mu.densities.items()},
        )
        ok = ok and green_value(scaled_graph, scaled_mu, base, x) == factor * green_value(
            graph, mu, base, x
        )
        spec = random_spec(rng)
        scaled_spec = FiberSpec(spec.kind, tuple(factor * l for l in spec.lengths))
        ok = ok and e_from_green(scaled_spec) == factor * e_from_green(spec)
        cases += 1
        if not ok:
            break
    ok = ok and cases >= 200
    _verdict(
        capfd,
        "7 potential-theory property suite",
        ok,
        "%d randomized exact checks on arbitrary multigraphs" % cases,
    )
