"""Level-line tracing, argument-principle winding counts and the
constant-amplitude circles of the reflection factor."""

import io
import math

import numpy as np
import pytest

from delta_lens.contours import (AmplitudeCircle, PhasePath, WindingReport,
                                 amplitude_circle, argument_principle_box,
                                 export_trace_csv, sample_circle_moduli,
                                 trace_amplitude_one_line,
                                 trace_phase_zero_line, winding_count)
from delta_lens.errors import (DegenerateCircle, DomainError, IoFailure,
                               RefinementExhausted, SingularOnContour)
from delta_lens.quotient import delta5, fold_phase

FIRST_BETA_ZERO = 6.020948904697586


def test_phase_trace_reaches_first_zero(phase_traces):
    path = phase_traces[1]
    assert path.line_kind == "phase_zero"
    assert path.terminus_point is not None
    assert path.terminus_point.kind == "zero"
    assert abs(path.terminus_point.t - FIRST_BETA_ZERO) < 1e-6
    assert abs(path.terminus_t - path.terminus_point.t) < 0.05


def test_phase_trace_interior_really_has_zero_phase(phase_traces):
    path = phase_traces[3]
    worst = 0.0
    for sigma, t in path.points[::5]:
        if sigma > 11.9:
            continue
        worst = max(worst, abs(fold_phase(float(np.angle(delta5(complex(sigma, t)))))))
    assert worst < 1e-6


def test_amplitude_trace_between_singular_points(amplitude_traces, merged_catalog):
    path = amplitude_traces[1]
    ts = [e.t for e in merged_catalog.entries]
    k = int(np.searchsorted(ts, path.terminus_t))
    assert 0 < k < len(ts)
    assert ts[k - 1] < path.terminus_t < ts[k]
    worst = max(abs(abs(delta5(complex(s, t))) - 1.0)
                for s, t in path.points[::5])
    assert worst < 1e-6


def test_trace_validation():
    with pytest.raises(DomainError):
        trace_phase_zero_line(0)
    with pytest.raises(DomainError):
        trace_amplitude_one_line(1, sigma_start=4.0)
    with pytest.raises(DomainError):
        trace_phase_zero_line(1, step=0.0)


def test_phase_path_validation(phase_traces):
    good = phase_traces[1]
    with pytest.raises(DomainError):
        PhasePath(anchor_index=0, line_kind="phase_zero",
                  points=good.points, terminus_t=good.terminus_t)
    with pytest.raises(DomainError):
        PhasePath(anchor_index=1, line_kind="sideways",
                  points=good.points, terminus_t=good.terminus_t)
    with pytest.raises(DomainError):  # sigma must strictly decrease
        PhasePath(anchor_index=1, line_kind="phase_zero",
                  points=((1.0, 5.0), (1.0, 5.1), (0.5, 5.2)), terminus_t=5.2)


def test_winding_zero_box():
    square = [(0.6, -0.15), (0.9, -0.15), (0.9, 0.15), (0.6, 0.15), (0.6, -0.15)]
    report = winding_count(square)
    assert report.zeros_minus_poles == 1
    assert report.max_step_jump <= 0.5 * math.pi + 1e-12


def test_winding_pole_circle():
    theta = np.linspace(0.0, 2.0 * math.pi, 33)
    circle = [(1.0 + 0.1 * math.cos(a), 0.1 * math.sin(a)) for a in theta]
    circle[-1] = circle[0]
    assert winding_count(circle).zeros_minus_poles == -1


def test_winding_empty_box():
    box = [(2.0, -0.2), (2.4, -0.2), (2.4, 0.2), (2.0, 0.2), (2.0, -0.2)]
    assert winding_count(box).zeros_minus_poles == 0


def test_winding_error_channels():
    square = [(0.6, -0.15), (0.9, -0.15), (0.9, 0.15), (0.6, 0.15), (0.6, -0.15)]
    with pytest.raises(RefinementExhausted):
        winding_count(square, refine_limit=1)
    with pytest.raises(DomainError):  # not closed
        winding_count([(0.6, -0.1), (0.75, 0.0), (0.9, 0.1)])
    through = [(0.6, -0.25), (0.75, 0.0), (0.9, 0.25), (0.9, -0.35), (0.6, -0.25)]
    with pytest.raises(SingularOnContour):
        winding_count(through)


def test_winding_report_validation():
    with pytest.raises(DomainError):
        WindingReport(total_arg_change=1.0, zeros_minus_poles=0, max_step_jump=0.1)
    with pytest.raises(DomainError):
        WindingReport(total_arg_change=0.0, zeros_minus_poles=0, max_step_jump=2.0)


def test_argument_principle_box_balance():
    report = argument_principle_box(1, 2)
    assert report.zeros_minus_poles == 0
    with pytest.raises(DomainError):
        argument_principle_box(2, 2)


def test_amplitude_circle_geometry():
    c = amplitude_circle(0.9)
    assert c.center_sigma == pytest.approx(0.3289473684210527)
    assert c.radius == pytest.approx(0.29605263157894746)
    for A in (0.8, 0.9, 0.95, 1.05, 1.25):
        moduli = sample_circle_moduli(amplitude_circle(A), 32)
        assert float(np.max(np.abs(moduli - A))) < 1e-12


def test_amplitude_circle_validation():
    with pytest.raises(DegenerateCircle):
        amplitude_circle(1.0)
    with pytest.raises(DomainError):
        amplitude_circle(-0.5)
    with pytest.raises(DomainError):
        AmplitudeCircle(A=0.9, center_sigma=0.33, radius=-0.1)


def test_export_trace_csv(phase_traces, tmp_path):
    path = phase_traces[1]
    out = tmp_path / "trace.csv"
    export_trace_csv(path, out)
    lines = out.read_text().splitlines()
    assert lines[0] == "sigma,t,phase,modulus"
    assert len(lines) == len(path.points) + 1
    first = lines[1].split(",")
    assert float(first[0]) == pytest.approx(path.points[0][0])
    assert abs(float(first[2])) < 1e-8  # phase-zero line

    buf = io.StringIO()
    export_trace_csv(path, buf)
    assert buf.getvalue().splitlines()[0] == "sigma,t,phase,modulus"

    with pytest.raises(IoFailure):
        export_trace_csv(path, tmp_path / "missing" / "trace.csv")
