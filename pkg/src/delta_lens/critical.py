"""Critical-line zero/pole location for the quotient, via sign changes of
completed (real-on-the-line) versions of zeta and beta, plus the residues
and slopes of the quotient at its real-axis poles and zeros.

The completed functions are

    completed_zeta(s) = pi^(-s/2) Gamma(s/2) zeta(s)
    completed_beta(s) = (pi/4)^(-(s+1)/2) Gamma((s+1)/2) beta(s)

both symmetric under s -> 1-s and real on Re s = 1/2, which makes bisection
on sign changes robust where raw modulus minima are not.  Zeros found this
way are recorded with multiplicity 1 and a derivative guard asserts the
zero really is simple.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DomainError,
    NotAPole,
    NotAZero,
    PoleOfCompletedZeta,
    StepTooCoarse,
    UnexpectedCoincidence,
)
from .evalcore import (
    DEFAULT_OPTIONS,
    EvalOptions,
    LN_PI,
    _beta_values,
    _coerce,
    _release,
    _stirling_lgamma,
    _zeta_values,
    beta_L,
    zeta,
)

_KINDS = ("zero", "pole")
_SOURCES = ("zeta_zero", "beta_zero", "half_zeta_zero")

# real-axis features of the quotient: simple poles and first-order zeros
POLE_SIGMAS = (1.0, -0.75, -1.75, -2.75, -3.75, -4.75)
ZERO_SIGMAS = (0.75, -1.0, -2.0, -3.0, -4.0)


@dataclass(frozen=True)
class CriticalPoint:
    """A zero or pole of the quotient on the critical line, at ordinate t."""

    t: float
    kind: str
    source: str
    multiplicity: int = 1
    refined_to: float = 1e-9

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise DomainError(f"kind must be one of {_KINDS}")
        if self.source not in _SOURCES:
            raise DomainError(f"source must be one of {_SOURCES}")
        if (self.kind == "pole") != (self.source == "half_zeta_zero"):
            raise DomainError("poles come from half_zeta_zero and only from it")
        if not self.t > 0:
            raise DomainError("ordinate t must be positive")
        if self.multiplicity < 1:
            raise DomainError("multiplicity must be a positive integer")
        if self.refined_to > 1e-6:
            raise DomainError("refined_to must be at most 1e-6")


@dataclass(frozen=True)
class RealAxisFeature:
    """A real-axis pole (with residue) or zero (with slope) of the quotient."""

    sigma: float
    kind: str
    coefficient: float

    def __post_init__(self):
        if self.kind == "pole":
            allowed = POLE_SIGMAS
        elif self.kind == "zero":
            allowed = ZERO_SIGMAS
        else:
            raise DomainError(f"kind must be one of {_KINDS}")
        if min(abs(self.sigma - a) for a in allowed) > 1e-9:
            raise DomainError(f"sigma {self.sigma} is not a catalogued real-axis {self.kind}")


def _completed_zeta_values(s: np.ndarray, opts: EvalOptions = DEFAULT_OPTIONS) -> np.ndarray:
    s = np.ascontiguousarray(s, dtype=np.complex128)
    s = np.where(s.real < 0.5, 1.0 - s, s)  # use the symmetric half-plane
    half = 0.5 * s
    return np.exp(_stirling_lgamma(half) - half * LN_PI) * _zeta_values(s, opts)


def _completed_beta_values(s: np.ndarray, opts: EvalOptions = DEFAULT_OPTIONS) -> np.ndarray:
    s = np.ascontiguousarray(s, dtype=np.complex128)
    s = np.where(s.real < 0.5, 1.0 - s, s)
    w = 0.5 * (s + 1.0)
    return np.exp(_stirling_lgamma(w) - w * math.log(math.pi / 4.0)) * _beta_values(s, opts)


def completed_zeta(s, opts: EvalOptions = DEFAULT_OPTIONS):
    """pi^(-s/2) Gamma(s/2) zeta(s): real on the critical line, symmetric
    under s -> 1-s.  Raises PoleOfCompletedZeta at s = 0 and s = 1."""
    arr, scalar = _coerce(s)
    for pole in (0.0, 1.0):
        if np.any(np.abs(arr - pole) <= 1e-12):
            raise PoleOfCompletedZeta(f"completed zeta pole at s = {pole}", complex(pole))
    return _release(_completed_zeta_values(arr, opts), scalar)


def completed_beta(s, opts: EvalOptions = DEFAULT_OPTIONS):
    """(pi/4)^(-(s+1)/2) Gamma((s+1)/2) beta(s): entire, real on the critical
    line, symmetric under s -> 1-s."""
    arr, scalar = _coerce(s)
    return _release(_completed_beta_values(arr, opts), scalar)


def _line_values(source: str, ts: np.ndarray, opts: EvalOptions) -> np.ndarray:
    # completed function on the critical line, rescaled by the positive factor
    # exp(-Re log prefactor) so values stay O(1) instead of decaying like
    # exp(-pi t / 4); zeros and signs are unchanged and the derivative guard
    # threshold stays meaningful at large t
    s = 0.5 + 1j * np.asarray(ts, dtype=np.float64)
    if source == "zeta":
        log_pref = _stirling_lgamma(0.5 * s) - 0.5 * s * LN_PI
        vals = _zeta_values(s, opts)
    else:
        w = 0.5 * (s + 1.0)
        log_pref = _stirling_lgamma(w) - w * math.log(math.pi / 4.0)
        vals = _beta_values(s, opts)
    return (np.exp(1j * log_pref.imag) * vals).real


def find_zeros(source: str, t_min: float, t_max: float, scan_step: float = 0.01,
               opts: EvalOptions = DEFAULT_OPTIONS) -> list[CriticalPoint]:
    """All critical-line zeros of zeta or beta with ordinate in [t_min, t_max].

    Sign changes of the completed function are bracketed at resolution
    scan_step, checked for hidden double crossings, and refined by lockstep
    bisection to 1e-9 in t.  Returns ascending CriticalPoints of kind zero.
    """
    if source not in ("zeta", "beta"):
        raise DomainError("source must be 'zeta' or 'beta'")
    if not (0.0 <= t_min < t_max <= 200.0):
        raise DomainError("need 0 <= t_min < t_max <= 200")
    if not 0.0 < scan_step <= 0.05:
        raise DomainError("scan_step must lie in (0, 0.05]")
    n = int(math.ceil((t_max - t_min) / scan_step))
    ts = t_min + scan_step * np.arange(n + 1)
    ts[-1] = t_max
    vals = _line_values(source, ts, opts)
    cross = vals[:-1] * vals[1:] < 0.0
    lo = ts[:-1][cross].copy()
    hi = ts[1:][cross].copy()
    if lo.size:
        # a bracket hiding two extra crossings would refine onto the wrong root
        sub = lo[:, None] + (hi - lo)[:, None] * (np.arange(9) / 8.0)[None, :]
        sv = _line_values(source, sub.reshape(-1), opts).reshape(sub.shape)
        changes = np.sum(sv[:, :-1] * sv[:, 1:] < 0.0, axis=1)
        if np.any(changes > 1):
            bad = float(lo[np.argmax(changes > 1)])
            raise StepTooCoarse(
                f"{int(changes.max())} sign changes inside one scan step near t = {bad:.6f}")
        flo = _line_values(source, lo, opts)
        while np.max(hi - lo) > 1e-9:
            mid = 0.5 * (lo + hi)
            fmid = _line_values(source, mid, opts)
            take_hi = flo * fmid <= 0.0
            hi = np.where(take_hi, mid, hi)
            lo = np.where(take_hi, lo, mid)
            flo = np.where(take_hi, flo, fmid)
    roots = 0.5 * (lo + hi)
    if roots.size:
        h = 1e-6
        deriv = (_line_values(source, roots + h, opts)
                 - _line_values(source, roots - h, opts)) / (2.0 * h)
        if np.any(np.abs(deriv) <= 1e-8):
            t_bad = float(roots[np.argmax(np.abs(deriv) <= 1e-8)])
            raise UnexpectedCoincidence(
                f"vanishing derivative at detected zero t = {t_bad:.9f}; zero may not be simple")
    src = "zeta_zero" if source == "zeta" else "beta_zero"
    return [CriticalPoint(t=float(r), kind="zero", source=src, multiplicity=1,
                          refined_to=float(max(0.5 * (b - a), 1e-12)))
            for r, a, b in zip(roots, lo, hi)]


def singular_points_delta5(t_min: float, t_max: float, scan_step: float = 0.01,
                           opts: EvalOptions = DEFAULT_OPTIONS) -> list[CriticalPoint]:
    """Merged catalog of the quotient's critical-line zeros (zeta and beta
    ordinates) and poles (half the zeta ordinates), sorted by t.

    A zero ordinate colliding with a pole ordinate within 1e-9 would mean a
    cancellation the quotient's structure does not predict; that raises
    UnexpectedCoincidence instead of silently dropping either point.
    """
    if not (0.0 <= t_min < t_max <= 100.0):
        raise DomainError("need 0 <= t_min < t_max <= 100 (pole scan runs to 2 t_max)")
    points = []
    points += find_zeros("zeta", t_min, t_max, scan_step, opts)
    points += find_zeros("beta", t_min, t_max, scan_step, opts)
    for p in find_zeros("zeta", 2.0 * t_min, 2.0 * t_max, scan_step, opts):
        points.append(CriticalPoint(t=0.5 * p.t, kind="pole", source="half_zeta_zero",
                                    multiplicity=1, refined_to=0.5 * p.refined_to))
    points.sort(key=lambda p: p.t)
    for a, b in zip(points, points[1:]):
        if b.t - a.t < 1e-9:
            raise UnexpectedCoincidence(
                f"{a.source} and {b.source} ordinates coincide at t = {a.t:.9f}")
    return points


def _zeta_derivative(x: float, opts: EvalOptions, h: float = 1e-6) -> float:
    return (zeta(x + h, opts).real - zeta(x - h, opts).real) / (2.0 * h)


def _beta_derivative(x: float, opts: EvalOptions, h: float = 1e-6) -> float:
    return (beta_L(x + h, opts).real - beta_L(x - h, opts).real) / (2.0 * h)


def residue_at_pole(sigma: float, opts: EvalOptions = DEFAULT_OPTIONS) -> RealAxisFeature:
    """Residue of the quotient at one of its real poles.

    At sigma = 1 the numerator zeta carries the pole (residue 1), so the
    residue is beta(1)/zeta(3/2).  At sigma = 1/4 - k the denominator has a
    trivial zero, giving zeta(sigma) beta(sigma) / (2 zeta'(2 sigma - 1/2))
    with the derivative taken by central difference (h = 1e-6).
    """
    matches = [a for a in POLE_SIGMAS if abs(sigma - a) <= 1e-9]
    if not matches:
        raise NotAPole(f"sigma = {sigma} is not a real-axis pole of the quotient")
    a = matches[0]
    if a == 1.0:
        value = beta_L(1.0, opts).real / zeta(1.5, opts).real
    else:
        value = (zeta(a, opts).real * beta_L(a, opts).real
                 / (2.0 * _zeta_derivative(2.0 * a - 0.5, opts)))
    return RealAxisFeature(sigma=a, kind="pole", coefficient=value)


def slope_at_zero(sigma: float, opts: EvalOptions = DEFAULT_OPTIONS) -> RealAxisFeature:
    """Linear coefficient of the quotient at one of its real first-order zeros.

    At sigma = 3/4 the denominator pole (residue 1/2) inverts to the factor
    2 (s - 3/4), so the slope is 2 zeta(3/4) beta(3/4).  At the negative
    integers exactly one numerator factor vanishes; its derivative is taken
    by central difference (h = 1e-6).
    """
    matches = [a for a in ZERO_SIGMAS if abs(sigma - a) <= 1e-9]
    if not matches:
        raise NotAZero(f"sigma = {sigma} is not a real-axis zero of the quotient")
    a = matches[0]
    if a == 0.75:
        value = 2.0 * zeta(0.75, opts).real * beta_L(0.75, opts).real
    else:
        den = zeta(2.0 * a - 0.5, opts).real
        if int(round(a)) % 2 == 0:
            value = _zeta_derivative(a, opts) * beta_L(a, opts).real / den
        else:
            value = zeta(a, opts).real * _beta_derivative(a, opts) / den
    return RealAxisFeature(sigma=a, kind="zero", coefficient=value)
