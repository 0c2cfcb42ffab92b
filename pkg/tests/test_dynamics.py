"""Numerical layer: integrator, nullclines, wedges, Lyapunov, probes.

Expected values come from three kinds of oracle: closed-form solutions
(logistic flow, the conserved ratio of the degenerate case), exact rational
geometry recomputed by hand, and frozen outputs of independent spot runs.
"""

import math
import random
from dataclasses import replace
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lvcompete import (
    Direction,
    EquilibriumKind,
    IntegratorOptions,
    LyapunovTarget,
    NotApplicable,
    ProbeProtocol,
    ProbeScope,
    SystemParams,
    WedgeSide,
    classify,
    empirical_matches,
    empirical_stability,
    integrate,
    lyapunov_verify,
    nullcline_wedge,
    nullclines,
    rhs_exact,
    vector_field,
)
from lvcompete.classifier import Scope
from lvcompete.dynamics import (
    EmpiricalVerdictKind,
    NullclineBranch,
    ProbeOutcome,
    TerminalStatus,
    _VERTICAL_FLOW,
)
from lvcompete.equilibria import Equilibrium, EquilibriumLine
from lvcompete.exact import Sign


positive_rationals = st.fractions(
    min_value=Fraction(1, 8), max_value=Fraction(8), max_denominator=8
)
random_params = st.builds(
    SystemParams,
    b1=positive_rationals, b2=positive_rationals,
    a11=positive_rationals, a12=positive_rationals,
    a21=positive_rationals, a22=positive_rationals,
)


def _interior(report):
    return next(e for e in report.equilibria
                if isinstance(e, Equilibrium) and e.kind is EquilibriumKind.INTERIOR)


# ---------------------------------------------------------------------------
# vector field


def test_vector_field_vanishes_at_rest_points(gallery_params):
    p = gallery_params["case1"]
    for pt in [(0.0, 0.0), (3.0, 0.0), (0.0, 2.0), (2.0, 1.0)]:
        assert vector_field(p, pt) == (0.0, 0.0)


def test_vector_field_known_value(gallery_params):
    # (3 - 1 - 1, 4 - 1 - 2) component-wise times the coordinates
    assert vector_field(gallery_params["case1"], (1.0, 1.0)) == (1.0, 1.0)


@given(params=random_params,
       x1=st.fractions(0, 4, max_denominator=16),
       x2=st.fractions(0, 4, max_denominator=16))
def test_vector_field_matches_exact_rhs(params, x1, x2):
    f1, f2 = vector_field(params, (float(x1), float(x2)))
    g1, g2 = rhs_exact(params, x1, x2)
    assert f1 == pytest.approx(float(g1), rel=1e-12, abs=1e-12)
    assert f2 == pytest.approx(float(g2), rel=1e-12, abs=1e-12)


# ---------------------------------------------------------------------------
# integrate: terminal statuses


def test_stationary_start_is_a_single_converged_sample(gallery_params):
    traj = integrate(gallery_params["case1"], (2.0, 1.0), 50.0)
    assert traj.terminal_status is TerminalStatus.CONVERGED
    assert traj.samples == [(0.0, 2.0, 1.0)]


def test_case1_interior_attracts_generic_start(gallery_params):
    traj = integrate(gallery_params["case1"], (1.0, 1.0), 100.0)
    assert traj.terminal_status is TerminalStatus.CONVERGED
    x1, x2 = traj.final_point
    assert math.hypot(x1 - 2.0, x2 - 1.0) < 1e-6


def test_degenerate_case_lands_on_the_line_where_conservation_says(gallery_params):
    """With proportional rows, x2/x1^2 is a first integral; the landing point
    on the equilibrium line is therefore known in closed form."""
    traj = integrate(gallery_params["case9"], (0.2, 0.2), 200.0)
    assert traj.terminal_status is TerminalStatus.CONVERGED
    x1, x2 = traj.final_point
    # x2 = 5*x1^2 intersected with 1 - x1 - 2*x2 = 0
    x1_star = (-1.0 + math.sqrt(41.0)) / 20.0
    x2_star = (21.0 - math.sqrt(41.0)) / 40.0
    assert math.hypot(x1 - x1_star, x2 - x2_star) < 1e-6
    assert abs(1.0 - x1 - 2.0 * x2) < 1e-8


def test_horizon_is_hit_exactly_when_nothing_else_stops_the_run(gallery_params):
    traj = integrate(gallery_params["case1"], (1.0, 1.0), 7.5,
                     IntegratorOptions(conv_tol=0.0))
    assert traj.terminal_status is TerminalStatus.REACHED_HORIZON
    assert traj.final_time == 7.5


def test_off_quadrant_blowup_leaves_the_domain(gallery_params):
    traj = integrate(gallery_params["case1"], (-0.01, 0.5), 100.0,
                     IntegratorOptions(escape_bound=100.0))
    assert traj.terminal_status is TerminalStatus.LEFT_DOMAIN
    assert traj.terminal_bound == 100.0
    assert max(abs(c) for c in traj.final_point) > 100.0


def test_absurd_step_floor_fails_fast(gallery_params):
    traj = integrate(gallery_params["case1"], (1.0, 1.0), 10.0,
                     IntegratorOptions(min_step_factor=0.5, conv_tol=0.0))
    assert traj.terminal_status is TerminalStatus.STEP_FAILURE
    assert traj.n_accepted == 0


@pytest.mark.parametrize("horizon", [0.0, -3.0])
def test_nonpositive_horizon_rejected(gallery_params, horizon):
    with pytest.raises(ValueError, match="horizon must be positive"):
        integrate(gallery_params["case1"], (1.0, 1.0), horizon)


def test_stop_condition_checked_before_stepping(gallery_params):
    traj = integrate(gallery_params["case1"], (1.0, 1.0), 10.0,
                     IntegratorOptions(stop_condition=lambda t, x: True))
    assert traj.terminal_status is TerminalStatus.STOPPED
    assert traj.n_accepted == 0
    assert traj.final_time == 0.0


# ---------------------------------------------------------------------------
# integrate: invariance


@pytest.mark.parametrize("start,expected_limit", [
    ((0.0, 3.7), (0.0, 2.0)),
    ((0.0, 0.4), (0.0, 2.0)),
    ((2.6, 0.0), (3.0, 0.0)),
])
def test_axes_are_exactly_invariant(gallery_params, start, expected_limit):
    """A coordinate that starts at 0.0 must stay at 0.0 bitwise: the factored
    right-hand side guarantees it, and the single-species limit confirms the
    run still goes somewhere sensible."""
    traj = integrate(gallery_params["case1"], start, 200.0)
    frozen_index = 0 if start[0] == 0.0 else 1
    assert all(s[1 + frozen_index] == 0.0 for s in traj.samples)
    assert traj.terminal_status is TerminalStatus.CONVERGED
    assert math.hypot(traj.final_point[0] - expected_limit[0],
                      traj.final_point[1] - expected_limit[1]) < 1e-6


@settings(max_examples=40, deadline=None)
@given(params=random_params, x2=st.floats(0.01, 10.0, allow_nan=False))
def test_vertical_axis_invariant_for_random_systems(params, x2):
    traj = integrate(params, (0.0, x2), 20.0)
    assert all(s[1] == 0.0 for s in traj.samples)


@settings(max_examples=40, deadline=None)
@given(params=random_params,
       x1=st.floats(0.05, 10.0), x2=st.floats(0.05, 10.0))
def test_open_quadrant_is_forward_invariant(params, x1, x2):
    # A dying coordinate may overshoot zero by less than the absolute
    # tolerance once it falls below it; anything past -1e-9 is a real leak.
    traj = integrate(params, (x1, x2), 20.0)
    assert all(s[1] >= -1e-9 and s[2] >= -1e-9 for s in traj.samples)


# ---------------------------------------------------------------------------
# integrate: accuracy


def test_fixed_step_takes_the_prescribed_grid(gallery_params):
    traj = integrate(gallery_params["case1"], (1.0, 1.0), 2.0,
                     IntegratorOptions(fixed_step=0.02, conv_tol=0.0))
    assert traj.terminal_status is TerminalStatus.REACHED_HORIZON
    assert traj.n_accepted == 100
    assert traj.n_rejected == 0
    assert traj.final_time == 2.0


def test_observed_convergence_rate_is_fifth_order(gallery_params):
    """Halving a fixed step should divide the endpoint error by about 2^5.

    The step ladder stays coarse enough that the smallest error (~1e-11)
    sits far above the roundoff floor of the reference run.
    """
    p = gallery_params["case1"]
    ref = integrate(p, (1.0, 1.0), 2.0,
                    IntegratorOptions(rel_tol=1e-13, abs_tol=1e-15, conv_tol=0.0))
    errors = []
    for h in (0.16, 0.08, 0.04, 0.02):
        traj = integrate(p, (1.0, 1.0), 2.0,
                         IntegratorOptions(fixed_step=h, conv_tol=0.0))
        errors.append(math.hypot(traj.final_point[0] - ref.final_point[0],
                                 traj.final_point[1] - ref.final_point[1]))
    rates = [math.log2(errors[i] / errors[i + 1]) for i in range(3)]
    assert all(4.5 <= rate <= 5.5 for rate in rates), rates


def test_tighter_tolerance_gives_tighter_answer(gallery_params):
    p = gallery_params["case1"]
    ref = integrate(p, (1.0, 1.0), 5.0,
                    IntegratorOptions(rel_tol=1e-13, abs_tol=1e-15, conv_tol=0.0))

    def endpoint_error(rel, abso):
        traj = integrate(p, (1.0, 1.0), 5.0,
                         IntegratorOptions(rel_tol=rel, abs_tol=abso, conv_tol=0.0))
        return math.hypot(traj.final_point[0] - ref.final_point[0],
                          traj.final_point[1] - ref.final_point[1])

    assert endpoint_error(1e-9, 1e-12) <= endpoint_error(1e-6, 1e-9)


def test_sample_thinning_does_not_change_the_dynamics(gallery_params):
    p = gallery_params["case1"]
    dense = integrate(p, (1.0, 1.0), 20.0, IntegratorOptions(conv_tol=0.0))
    thin = integrate(p, (1.0, 1.0), 20.0,
                     IntegratorOptions(conv_tol=0.0, sample_every=8))
    assert thin.final_point == dense.final_point  # same step sequence, bitwise
    assert thin.n_accepted == dense.n_accepted
    assert len(thin.samples) < len(dense.samples)
    assert thin.samples[-1] == dense.samples[-1]


def test_csv_round_trips_through_repr_precision(gallery_params):
    traj = integrate(gallery_params["case1"], (1.0, 1.0), 3.0,
                     IntegratorOptions(conv_tol=0.0))
    text = traj.to_csv()
    lines = text.strip().split("\n")
    assert lines[0] == "t,x1,x2"
    parsed = [tuple(float(v) for v in line.split(",")) for line in lines[1:]]
    assert parsed == traj.samples


# ---------------------------------------------------------------------------
# nullclines


def test_case1_crossing_table(gallery_params):
    ns = nullclines(gallery_params["case1"])

    def table(branch):
        c = ns.curve(branch)
        return (c.breakpoints,
                tuple((s.lo, s.hi, s.direction) for s in c.segments))

    assert table(NullclineBranch.VERTICAL_AXIS) == (
        (0, 2), ((0, 2, Direction.UP), (2, None, Direction.DOWN)))
    assert table(NullclineBranch.OBLIQUE_X1) == (
        (0, 2, 3), ((0, 2, Direction.DOWN), (2, 3, Direction.UP),
                    (3, None, Direction.DOWN)))
    assert table(NullclineBranch.HORIZONTAL_AXIS) == (
        (0, 3), ((0, 3, Direction.RIGHT), (3, None, Direction.LEFT)))
    assert table(NullclineBranch.OBLIQUE_X2) == (
        (0, 2), ((0, 2, Direction.RIGHT), (2, None, Direction.LEFT)))


def test_degenerate_axis_flips_the_oblique_tag(gallery_params):
    """Between the two semi-stable portraits the flow along the x1-nullcline
    inside the strip points up for d12 > 0 and down for d12 < 0."""
    up = nullclines(gallery_params["case2"]).curve(NullclineBranch.OBLIQUE_X1)
    assert [s.direction for s in up.segments] == [Direction.UP, Direction.DOWN]
    down = nullclines(gallery_params["case7"]).curve(NullclineBranch.OBLIQUE_X1)
    assert [s.direction for s in down.segments] == [Direction.DOWN, Direction.UP]


def test_proportional_rows_make_stationary_obliques(gallery_params):
    ns = nullclines(gallery_params["case9"])
    for branch in (NullclineBranch.OBLIQUE_X1, NullclineBranch.OBLIQUE_X2):
        assert all(s.direction is Direction.STATIONARY
                   for s in ns.curve(branch).segments)
    # the axis branches of the same system still carry real crossings
    vertical = ns.curve(NullclineBranch.VERTICAL_AXIS)
    assert vertical.breakpoints == (0, Fraction(1, 2))


def test_point_at_evaluates_the_curve_equation(gallery_params):
    ns = nullclines(gallery_params["case1"])
    assert ns.curve(NullclineBranch.OBLIQUE_X1).point_at(1) == (1, 2)
    assert ns.curve(NullclineBranch.OBLIQUE_X2).point_at(1) == (1, Fraction(3, 2))
    assert ns.curve(NullclineBranch.VERTICAL_AXIS).point_at(Fraction(7, 3)) == \
        (0, Fraction(7, 3))
    assert ns.curve(NullclineBranch.HORIZONTAL_AXIS).point_at(5) == (5, 0)


def test_direction_at_rejects_breakpoints_and_negatives(gallery_params):
    curve = nullclines(gallery_params["case1"]).curve(NullclineBranch.OBLIQUE_X1)
    assert curve.direction_at(Fraction(5, 2)) is Direction.UP
    for bad in (2, 3, 0, -1):
        with pytest.raises(ValueError, match="breakpoint or outside"):
            curve.direction_at(bad)


def test_nullcline_json_keeps_fractions_as_strings(gallery_params):
    doc = nullclines(gallery_params["case9"]).to_json_dict()
    vertical = next(c for c in doc["curves"] if c["branch"] == "x1 = 0")
    assert vertical["breakpoints"] == ["0", "1/2"]
    assert vertical["segments"][0] == {"lo": "0", "hi": "1/2", "direction": "up"}


@settings(max_examples=120, deadline=None)
@given(params=random_params,
       which=st.sampled_from(list(NullclineBranch)),
       value=st.fractions(min_value=Fraction(1, 64), max_value=20,
                          max_denominator=64))
def test_crossing_tags_agree_with_the_exact_field(params, which, value):
    """On an x1-nullcline the first component vanishes identically and the
    tag is the sign of the second (mirror statement for x2-nullclines) —
    checked in rational arithmetic, so agreement is exact, not approximate."""
    curve = nullclines(params).curve(which)
    if value in curve.breakpoints:
        return
    point = curve.point_at(value)
    f1, f2 = rhs_exact(params, point[0], point[1])
    vanishing, moving = (f1, f2) if which in _VERTICAL_FLOW else (f2, f1)
    assert vanishing == 0
    tag = curve.direction_at(value)
    if tag is Direction.STATIONARY:
        assert moving == 0
    elif tag in (Direction.UP, Direction.RIGHT):
        assert moving > 0
    else:
        assert moving < 0


# ---------------------------------------------------------------------------
# wedges


def test_wedge_sits_off_quadrant_when_d12_is_positive(gallery_params):
    wedge = nullcline_wedge(gallery_params["case2"], WedgeSide.NEAR_AXIS2)
    assert wedge.anchor == (0, 2)
    assert wedge.contains((Fraction(-1, 1000), 2 + Fraction(3, 4000)))
    assert not wedge.contains((Fraction(1, 1000), 2 + Fraction(3, 4000)))
    assert not wedge.contains(wedge.anchor)  # strict inequalities


def test_wedge_sample_points_are_exact_members(gallery_params):
    wedge = nullcline_wedge(gallery_params["case2"], WedgeSide.NEAR_AXIS2)
    pts = wedge.sample_near(Fraction(1, 1000), count=5)
    assert len(pts) == 5
    for x1, x2 in pts:
        assert isinstance(x1, Fraction) and isinstance(x2, Fraction)
        assert x1 == Fraction(-1, 2000)  # transverse offset is -radius/2
        assert wedge.contains((x1, x2))


def test_wedge_boundary_points_are_excluded(gallery_params):
    p = gallery_params["case2"]
    wedge = nullcline_wedge(p, WedgeSide.NEAR_AXIS2)
    u = Fraction(-1, 2000)
    # On the F2 = 0 boundary at x1 = u the point fails strict membership.
    on_boundary = (u, -(p.a21 / p.a22) * u + wedge.anchor[1])
    f1, f2 = wedge.growth_factors(*on_boundary)
    assert f2 == 0
    assert not wedge.contains(on_boundary)


def test_wedge_empty_side_raises(gallery_params):
    wedge = nullcline_wedge(gallery_params["case2"], WedgeSide.NEAR_AXIS2)
    with pytest.raises(ValueError, match="d12 has the wrong sign"):
        wedge.sample_near(Fraction(1, 1000), transverse_sign=Sign.POS)
    with pytest.raises(ValueError, match="POS or NEG"):
        wedge.sample_near(Fraction(1, 1000), transverse_sign=Sign.ZERO)


def test_wedge_flips_sides_with_negative_d12(gallery_params):
    """case7 has d12 < 0: the same construction now lives inside the
    quadrant and the off-quadrant side is empty."""
    wedge = nullcline_wedge(gallery_params["case7"], WedgeSide.NEAR_AXIS2)
    assert wedge.anchor == (0, 1)
    pts = wedge.sample_near(Fraction(1, 1000), count=4, transverse_sign=Sign.POS)
    assert all(wedge.contains(q) and q[0] > 0 for q in pts)
    with pytest.raises(ValueError, match="d12 has the wrong sign"):
        wedge.sample_near(Fraction(1, 1000))


def test_growth_factors_are_exact(gallery_params):
    wedge = nullcline_wedge(gallery_params["case2"], WedgeSide.NEAR_AXIS2)
    f1, f2 = wedge.growth_factors(Fraction(1, 3), Fraction(1, 7))
    assert f1 == 2 - Fraction(1, 3) - Fraction(1, 7)
    assert f2 == 4 - Fraction(1, 3) - 2 * Fraction(1, 7)


# ---------------------------------------------------------------------------
# Lyapunov certificates


def test_monomial_certificate_for_the_contested_axis(gallery_params):
    check = lyapunov_verify(gallery_params["case2"], LyapunovTarget.FOR_AXIS2)
    assert check.exponents == (2, -1)  # V = x1^2 / x2
    assert check.d12_sign is Sign.POS
    assert check.max_rel_gap <= 1e-8
    assert check.all_signs_match and check.all_positive
    assert check.passed()
    assert all(s.vdot_closed < 0 for s in check.samples)


def test_mirror_certificate_for_axis1(gallery_params):
    check = lyapunov_verify(gallery_params["case4"], LyapunovTarget.FOR_AXIS1)
    assert check.exponents == (-1, 1)
    assert check.passed()


def test_reversed_d12_reverses_the_derivative_sign(gallery_params):
    check = lyapunov_verify(gallery_params["case7"], LyapunovTarget.FOR_AXIS2)
    assert check.d12_sign is Sign.NEG
    assert all(s.vdot_closed > 0 for s in check.samples)
    assert check.passed()


def test_certificate_requires_the_matching_minor_to_vanish(gallery_params):
    p = gallery_params["case1"]
    with pytest.raises(NotApplicable, match="requires d112 = 0, got 1"):
        lyapunov_verify(p, LyapunovTarget.FOR_AXIS1)
    with pytest.raises(NotApplicable, match="requires d122 = 0, got -2"):
        lyapunov_verify(p, LyapunovTarget.FOR_AXIS2)


def test_fully_degenerate_system_conserves_v(gallery_params):
    """d12 = 0 makes the closed-form derivative identically zero; the
    chain-rule route must agree to rounding, judged against the size of
    the dot product's terms."""
    for which in (LyapunovTarget.FOR_AXIS1, LyapunovTarget.FOR_AXIS2):
        check = lyapunov_verify(gallery_params["case9"], which, sample_count=200)
        assert all(s.vdot_closed == 0 for s in check.samples)
        assert check.max_rel_gap <= 1e-10
        assert check.passed()


def test_v_decreases_along_simulated_flow(gallery_params):
    p = gallery_params["case2"]
    for start in [(0.5, 0.5), (3.0, 1.0), (0.2, 2.5)]:
        traj = integrate(p, start, 50.0, IntegratorOptions(sample_every=16))
        values = [x1 * x1 / x2 for _, x1, x2 in traj.samples if x2 > 0]
        for before, after in zip(values, values[1:]):
            assert after <= before + 1e-10 * max(1.0, abs(before))


# ---------------------------------------------------------------------------
# empirical probes


def test_probe_ring_confirms_interior_sink(gallery_params):
    report = classify(gallery_params["case1"])
    emp = empirical_stability(gallery_params["case1"], _interior(report),
                              ProbeProtocol(probe_count=6))
    assert emp.verdict is EmpiricalVerdictKind.ATTRACTING
    assert emp.radius == pytest.approx(1e-3 * math.hypot(2.0, 1.0))
    assert len(emp.probes) == 6
    assert all(r.outcome is ProbeOutcome.CONVERGED_TO_TARGET for r in emp.probes)
    assert max(r.final_distance for r in emp.probes) <= 1e-6
    assert empirical_matches(report.verdict_at(EquilibriumKind.INTERIOR), emp)


def test_probe_runs_are_deterministic(gallery_params):
    report = classify(gallery_params["case1"])
    first = empirical_stability(gallery_params["case1"], _interior(report))
    second = empirical_stability(gallery_params["case1"], _interior(report))
    assert first.to_json_dict() == second.to_json_dict()


def test_probe_ring_confirms_interior_saddle(gallery_params):
    p = gallery_params["case8"]
    report = classify(p)
    emp = empirical_stability(p, _interior(report), ProbeProtocol(probe_count=8))
    assert emp.verdict is EmpiricalVerdictKind.REPELLING
    assert emp.has_escape
    assert empirical_matches(report.verdict_at(EquilibriumKind.INTERIOR), emp)
    for kind in (EquilibriumKind.AXIS1, EquilibriumKind.AXIS2):
        eq = next(e for e in report.equilibria
                  if isinstance(e, Equilibrium) and e.kind is kind)
        emp_axis = empirical_stability(p, eq, ProbeProtocol(probe_count=6))
        assert emp_axis.verdict is EmpiricalVerdictKind.ATTRACTING
        assert empirical_matches(report.verdict_at(kind), emp_axis)


def test_line_member_probes_settle_on_neighbors(gallery_params):
    p = gallery_params["case9"]
    report = classify(p)
    line = next(e for e in report.equilibria if isinstance(e, EquilibriumLine))
    member = line.member(line.alpha_max / 2)
    emp = empirical_stability(p, member, ProbeProtocol(probe_count=6))
    assert emp.verdict is EmpiricalVerdictKind.MIXED
    assert not emp.has_escape
    settled = [r for r in emp.probes if r.outcome is ProbeOutcome.SETTLED_ELSEWHERE]
    assert settled, "expected probes parked at nearby line points"
    assert empirical_matches(report.verdict_at(EquilibriumKind.LINE_MEMBER), emp)


def test_semi_stable_axis_full_plane_picture(gallery_params):
    """Quadrant-side probes of the degenerate axis point must crawl home
    along the center manifold; wedge-side probes must leave for good."""
    p = gallery_params["case4"]
    report = classify(p)
    eq = next(e for e in report.equilibria
              if isinstance(e, Equilibrium) and e.kind is EquilibriumKind.AXIS1)
    emp = empirical_stability(
        p, eq, ProbeProtocol(probe_count=8, scope=ProbeScope.FULL_PLANE))
    assert emp.verdict is EmpiricalVerdictKind.MIXED
    quadrant = emp.quadrant_probes
    wedge = emp.wedge_probes
    assert quadrant and wedge
    assert all(r.outcome is ProbeOutcome.CONVERGED_TO_TARGET for r in quadrant)
    assert all(r.outcome is ProbeOutcome.ESCAPED for r in wedge)
    assert all(r.exited_ball and not r.reentered_after_exit for r in wedge)
    analytic = report.verdict_at(EquilibriumKind.AXIS1, Scope.FULL_NEIGHBORHOOD)
    assert empirical_matches(analytic, emp)
    # the same probes do NOT corroborate semi-stability if any wedge probe
    # were to come home
    tampered = replace(emp, probes=[
        replace(r, outcome=ProbeOutcome.CONVERGED_TO_TARGET) if r.in_wedge else r
        for r in emp.probes
    ])
    assert not empirical_matches(analytic, tampered)


def test_radius_guard_refuses_to_probe_blind(gallery_params):
    report = classify(gallery_params["case1"])
    emp = empirical_stability(gallery_params["case1"], _interior(report),
                              ProbeProtocol(probe_count=6, settle_tol=1e-2))
    assert emp.verdict is EmpiricalVerdictKind.INCONCLUSIVE
    assert emp.probes == []
    assert "settle tolerance" in emp.note


def test_undecided_probes_yield_inconclusive_never_a_match(gallery_params):
    report = classify(gallery_params["case1"])
    emp = empirical_stability(gallery_params["case1"], _interior(report),
                              ProbeProtocol(probe_count=6, horizon=0.1))
    assert emp.verdict is EmpiricalVerdictKind.INCONCLUSIVE
    assert {r.outcome for r in emp.probes} == {ProbeOutcome.UNDECIDED}
    for kind in (EquilibriumKind.INTERIOR, EquilibriumKind.ORIGIN):
        assert not empirical_matches(report.verdict_at(kind), emp)


def test_attracting_claim_contradicts_unstable_analytics(gallery_params):
    report = classify(gallery_params["case1"])
    emp = empirical_stability(gallery_params["case1"], _interior(report),
                              ProbeProtocol(probe_count=4))
    origin_verdict = report.verdict_at(EquilibriumKind.ORIGIN)
    assert not empirical_matches(origin_verdict, emp)


def test_probe_verdicts_agree_with_classifier_across_random_draws():
    """Oracle cross-check: classify() analytically, then probe every
    equilibrium numerically and insist the verdicts corroborate each other
    at quadrant scope.  Zero-eigenvalue targets get a relaxed settle
    tolerance — convergence along a center manifold is algebraic, and the
    probe only needs to identify the behavior, not race it home."""
    rng = random.Random(20240811)
    fast = ProbeProtocol(probe_count=6)
    slow = ProbeProtocol(probe_count=6, settle_tol=1e-4)
    total = conclusive = 0
    mismatches = []
    serials = set()
    for draw in range(500):
        vals = [Fraction(rng.randint(1, 12), rng.randint(1, 4)) for _ in range(6)]
        params = SystemParams(b1=vals[0], b2=vals[1], a11=vals[2],
                              a12=vals[3], a21=vals[4], a22=vals[5])
        report = classify(params)
        serials.add(report.sign_case.table6_serial)
        targets = []
        for entry in report.equilibria:
            if isinstance(entry, EquilibriumLine):
                targets.append(entry.member(entry.alpha_max / 2))
            else:
                targets.append(entry)
        for eq in targets:
            analytic = report.verdict_at(eq.kind)
            if analytic is None:
                continue
            degenerate = (Sign.ZERO in eq.eigenvalues.realpart_signs
                          and eq.kind is not EquilibriumKind.LINE_MEMBER)
            emp = empirical_stability(params, eq, slow if degenerate else fast)
            total += 1
            if emp.verdict is EmpiricalVerdictKind.INCONCLUSIVE:
                continue
            conclusive += 1
            if not empirical_matches(analytic, emp):
                mismatches.append((draw, params, eq.kind,
                                   analytic.verdict, emp.verdict))
    assert mismatches == []
    assert conclusive >= 0.9 * total
    assert serials.issuperset({1, 2, 3, 4, 5, 6, 7, 8})
