"""Global invariants of a genus-2 fibration and the effective lower bound.

Summing the per-fiber invariants gives the self-intersection numbers of the
relative dualizing sheaf,

    omega^2            = sum over fibers of (6/5) d - delta,
    omega_a^2          = sum over fibers of (6/5) d - delta - e,

the second in the sense of the admissible pairing.  Positivity of
omega_a^2 turns into the effective height gap sqrt((g-1) * omega_a^2) with
g = 2, and the per-fiber estimate

    (6/5) d - delta - e  >=  (2/135) delta

(with equality exactly for type VII fibers with three equal chain lengths)
yields the uniform floor sqrt((2/135) * delta).  Everything here is exact:
square roots are reported as radicands plus decimal approximations, never
taken in rational arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction

from .genus2_catalog import (
    FiberSpec,
    FiberType,
    _coerce_kind,
    d_invariant,
    delta_invariant,
    e_closed_form,
    e_from_green,
)
from .metric_graph import as_fraction

GENUS = 2
FLOOR_COEFFICIENT = Fraction(2, 135)

SMOOTH_FAMILY_WARNING = (
    "every fiber is smooth (delta = 0): a non-isotrivial genus-2 family must "
    "degenerate somewhere, so this configuration cannot come from one"
)


def decimal_string(value: Fraction, digits: int = 12) -> str:
    """``value`` as a decimal string rounded to ``digits`` significant digits."""
    with localcontext() as ctx:
        ctx.prec = digits + 8
        approx = Decimal(value.numerator) / Decimal(value.denominator)
        ctx.prec = digits
        return str(+approx)


def sqrt_decimal_string(radicand: Fraction, digits: int = 12) -> str:
    """Decimal approximation of sqrt(radicand) to ``digits`` significant digits."""
    if radicand < 0:
        raise ValueError("negative radicand %s" % (radicand,))
    with localcontext() as ctx:
        ctx.prec = digits + 8
        approx = (Decimal(radicand.numerator) / Decimal(radicand.denominator)).sqrt()
        ctx.prec = digits
        return str(+approx)


@dataclass(frozen=True)
class FiberReport:
    """Local invariants of one fiber and its summand in omega_a^2."""

    spec: FiberSpec
    delta: Fraction
    d: Fraction
    e: Fraction
    contribution: Fraction


def fiber_contribution(spec: FiberSpec, verify_green: bool = False) -> FiberReport:
    """Local invariants of ``spec`` from the closed forms.

    With ``verify_green`` the correction term is recomputed from first
    principles through the Green solver and must agree exactly; a mismatch
    raises VerificationError carrying both values.
    """
    delta = delta_invariant(spec)
    d = d_invariant(spec)
    e = e_closed_form(spec)
    if verify_green:
        recomputed = e_from_green(spec)
        if recomputed != e:
            raise VerificationError(
                "green recomputation of e disagrees for %r: closed form %s, solver %s"
                % (spec, e, recomputed)
            )
    return FiberReport(spec, delta, d, e, Fraction(6, 5) * d - delta - e)


class VerificationError(RuntimeError):
    """An independent recomputation disagreed with the closed forms."""


@dataclass(frozen=True)
class GlobalReport:
    """Summed invariants of a fiber configuration and the two lower bounds.

    ``bound_radicand`` is (g-1) * omega_a^2 with g = 2 and ``floor_radicand``
    is (2/135) * delta; the bounds themselves are the square roots, exposed
    as 12-significant-digit decimal strings.
    """

    fibers: tuple[FiberReport, ...]
    delta: Fraction
    omega2: Fraction
    sum_e: Fraction
    omega2_admissible: Fraction
    deg_det: Fraction
    bound_radicand: Fraction
    floor_radicand: Fraction
    warnings: tuple[str, ...]

    @property
    def bound_decimal(self) -> str:
        return sqrt_decimal_string(self.bound_radicand)

    @property
    def floor_decimal(self) -> str:
        return sqrt_decimal_string(self.floor_radicand)

    @property
    def floor_is_attained(self) -> bool:
        """True when the bound sits exactly on the (2/135) delta floor."""
        return self.bound_radicand == self.floor_radicand


def global_report(specs, verify_green: bool = False) -> GlobalReport:
    """Combine per-fiber invariants over a fiber configuration.

    The list may be empty or all type I; that is not an error, but the
    report carries a warning since such a configuration is inconsistent
    with a non-isotrivial family.
    """
    reports = tuple(fiber_contribution(spec, verify_green=verify_green) for spec in specs)
    delta = sum((r.delta for r in reports), Fraction(0))
    omega2 = sum((Fraction(6, 5) * r.d - r.delta for r in reports), Fraction(0))
    sum_e = sum((r.e for r in reports), Fraction(0))
    omega2_admissible = sum((r.contribution for r in reports), Fraction(0))
    deg_det = sum((r.d for r in reports), Fraction(0)) / 10
    warnings = () if delta > 0 else (SMOOTH_FAMILY_WARNING,)
    return GlobalReport(
        fibers=reports,
        delta=delta,
        omega2=omega2,
        sum_e=sum_e,
        omega2_admissible=omega2_admissible,
        deg_det=deg_det,
        bound_radicand=(GENUS - 1) * omega2_admissible,
        floor_radicand=FLOOR_COEFFICIENT * delta,
        warnings=warnings,
    )


@dataclass(frozen=True)
class InequalityCheck:
    """Exact comparison of abc/(ab+bc+ca) against (a+b+c)/9."""

    lhs: Fraction
    rhs: Fraction
    holds: bool
    is_equality: bool


def check_amgm_inequality(a, b, c) -> InequalityCheck:
    """Check abc/(ab+bc+ca) <= (a+b+c)/9 for positive rationals.

    The inequality always holds, with equality exactly at a = b = c; the
    check recomputes both sides from scratch so the claim is testable.
    """
    a, b, c = as_fraction(a), as_fraction(b), as_fraction(c)
    if a <= 0 or b <= 0 or c <= 0:
        raise ValueError("inputs must be positive, got %s, %s, %s" % (a, b, c))
    lhs = a * b * c / (a * b + b * c + c * a)
    rhs = (a + b + c) / 9
    return InequalityCheck(lhs, rhs, lhs <= rhs, lhs == rhs)


def contribution_ratio(kind, lengths) -> Fraction:
    """((6/5) d - delta - e) / delta at the given lengths, via closed forms.

    Unlike FiberSpec this admits zero coordinates (as long as delta stays
    positive), which is what lets the simplex scan name the value on an open
    boundary face exactly.
    """
    kind = _coerce_kind(kind)
    lengths = tuple(as_fraction(x) for x in lengths)
    if len(lengths) != kind.arity:
        raise ValueError("type %s takes %d lengths" % (kind.value, kind.arity))
    if any(x < 0 for x in lengths):
        raise ValueError("lengths must be nonnegative, got %r" % (lengths,))
    delta = sum(lengths, Fraction(0))
    if delta == 0:
        raise ValueError("degenerate point: delta = 0")
    if kind is FiberType.II:
        (a,) = lengths
        d, e = 2 * a, a
    elif kind is FiberType.III:
        (a,) = lengths
        d, e = a, a / 6
    elif kind is FiberType.IV:
        a, b = lengths
        d, e = 2 * a + b, a + b / 6
    elif kind is FiberType.V:
        a, b = lengths
        d, e = a + b, (a + b) / 6
    elif kind is FiberType.VI:
        a, b, c = lengths
        d, e = 2 * a + b + c, a + (b + c) / 6
    elif kind is FiberType.VII:
        a, b, c = lengths
        s = a * b + b * c + c * a
        if s == 0:
            raise ValueError("degenerate point: two of the three lengths vanish")
        d, e = a + b + c, Fraction(2, 27) * (a + b + c) + a * b * c / s
    else:
        raise ValueError("type I has no degenerate fibers to scan")
    return (Fraction(6, 5) * d - delta - e) / delta


@dataclass(frozen=True)
class ScanResult:
    """Outcome of a simplex grid scan of the contribution/delta ratio.

    ``minimum`` is the smallest exactly-evaluated grid value and ``argmin``
    the (lexicographically first) grid point realizing it, with lengths
    normalized to sum 1.  When the argmin hugs the scanned region's lower
    boundary and the closed-boundary projection is strictly smaller,
    ``attained`` is False and ``boundary_infimum`` names the limit value:
    the infimum sits on an open face and no interior point realizes it.
    """

    kind: FiberType
    resolution: int
    minimum: Fraction
    argmin: tuple[Fraction, ...]
    attained: bool
    boundary_infimum: Fraction | None


def _simplex_compositions(total: int, parts: int):
    """All tuples of ``parts`` positive integers summing to ``total``."""
    if parts == 1:
        yield (total,)
        return
    for head in range(1, total - parts + 2):
        for rest in _simplex_compositions(total - head, parts - 1):
            yield (head,) + rest


def _best_on_grid(kind: FiberType, points) -> tuple[Fraction, tuple[Fraction, ...]]:
    best = None
    for lengths in points:
        ratio = contribution_ratio(kind, lengths)
        key = (ratio, lengths)
        if best is None or key < best:
            best = key
    assert best is not None
    return best


def minimize_contribution_ratio(kind, resolution: int) -> ScanResult:
    """Scan the normalized length simplex for the minimal contribution/delta
    ratio of one fiber type.

    By degree-1 homogeneity of all invariants the ratio only depends on the
    direction of the length vector, so the scan runs over lengths summing
    to 1: the grid of positive multiples of 1/resolution, followed by one
    10x local refinement around the best cell.  All evaluations are exact.
    """
    kind = _coerce_kind(kind)
    if kind is FiberType.I:
        raise ValueError("type I fibers are smooth; there is nothing to scan")
    if resolution < 10:
        raise ValueError("resolution must be at least 10, got %d" % resolution)

    arity = kind.arity
    if arity == 1:
        ratio = contribution_ratio(kind, (Fraction(1),))
        return ScanResult(kind, resolution, ratio, (Fraction(1),), True, None)

    unit = Fraction(1, resolution)
    coarse_points = (
        tuple(i * unit for i in comp) for comp in _simplex_compositions(resolution, arity)
    )
    coarse_min, coarse_argmin = _best_on_grid(kind, coarse_points)

    # One refinement round: re-grid the +-1 coarse cell around the argmin at
    # 10x resolution (offsets must cancel to stay on the simplex).
    fine_unit = Fraction(1, 10 * resolution)
    center = tuple(int(x / fine_unit) for x in coarse_argmin)
    fine_points = set()
    for deltas in itertools.product(range(-10, 11), repeat=arity - 1):
        last = -sum(deltas)
        if not -10 <= last <= 10:
            continue
        candidate = tuple(c + d for c, d in zip(center, deltas + (last,)))
        if all(i >= 1 for i in candidate):
            fine_points.add(tuple(i * fine_unit for i in candidate))
    minimum, argmin = _best_on_grid(kind, sorted(fine_points))

    # The scanned region is open; if the argmin presses against its lower
    # edge, name the value on the closed face to report a boundary infimum.
    attained = True
    boundary_infimum = None
    for axis, coordinate in enumerate(argmin):
        if coordinate != fine_unit:
            continue
        projected = tuple(
            Fraction(0) if i == axis else x for i, x in enumerate(argmin)
        )
        try:
            at_face = contribution_ratio(kind, projected)
        except ValueError:
            continue
        if at_face < minimum and (boundary_infimum is None or at_face < boundary_infimum):
            attained = False
            boundary_infimum = at_face
    return ScanResult(kind, resolution, minimum, argmin, attained, boundary_infimum)
