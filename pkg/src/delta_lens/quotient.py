"""The quotient delta5(s) = zeta(s) L_-4(s) / zeta(2s - 1/2), its reflection
factor f5, their asymptotic forms, and the sibling quotients delta_q for
discriminants -3, -7, -8.

Conventions used throughout:

* "folded" phase means the representative of arg modulo pi inside the
  half-open interval (-pi/2, pi/2].
* pole proximity tolerance for the quotients is 1e-10; evaluation closer
  than that raises PoleOfDelta5 / PoleOfDeltaQ instead of returning a huge
  number, so path-tracing code can never silently step onto a pole.
* the first-order zero of delta5 at s = 3/4 is returned as exactly 0 for
  |s - 3/4| <= 1e-12 (the raw quotient there would divide by a pole of the
  denominator zeta).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DomainError,
    GammaPoleOnPath,
    PoleOfDelta5,
    PoleOfDeltaQ,
    PoleOfZeta,
    UnsupportedDiscriminant,
)
from .evalcore import (
    CHARACTER_TABLES,
    DEFAULT_OPTIONS,
    EvalOptions,
    LN2,
    _beta_values,
    _coerce,
    _dirichlet_values,
    _near_nonpositive_integer,
    _release,
    _stirling_lgamma,
    _zeta_values,
)

_QUOTIENT_POLE_TOL = 1e-10
_EXACT_ZERO_TOL = 1e-12


@dataclass(frozen=True)
class QuotientKind:
    """Which quotient family member: 4 is delta5, 3 and 7, 8 its siblings."""

    discriminant_label: int = 4

    def __post_init__(self):
        if self.discriminant_label not in (3, 4, 7, 8):
            raise UnsupportedDiscriminant(
                f"discriminant_label must be 3, 4, 7 or 8, got {self.discriminant_label}")


@dataclass(frozen=True)
class AsymptoticPhase:
    """A critical-line ordinate with its phase representative modulo pi."""

    t: float
    phase_mod_pi: float

    def __post_init__(self):
        if not -math.pi / 2 < self.phase_mod_pi <= math.pi / 2:
            raise DomainError("phase_mod_pi must lie in (-pi/2, pi/2]")


def fold_phase(phi: float) -> float:
    """Reduce a phase to its representative modulo pi in (-pi/2, pi/2]."""
    r = math.remainder(phi, math.pi)
    if r <= -math.pi / 2:
        r += math.pi
    return r


def _bracket_ratio(q: int) -> float:
    # ratio r < 1 so that the factor 1 - r^(s - 1/2) tends to 1 as sigma grows
    return q / 4.0 if q < 4 else 4.0 / q


def bracket_factor(q: int, s):
    """The normalizing factor 1 - r^(s-1/2) of delta_q (r = 3/4 or 4/q).

    For q = 4 the factor is identically 1.
    """
    if q not in (3, 4, 7, 8):
        raise UnsupportedDiscriminant(f"unsupported discriminant label {q}")
    arr, scalar = _coerce(s)
    if q == 4:
        return _release(np.ones(arr.shape, dtype=np.complex128), scalar)
    r = _bracket_ratio(q)
    return _release(-np.expm1((arr - 0.5) * math.log(r)), scalar)


def _delta_q_values(q: int, s: np.ndarray, opts: EvalOptions = DEFAULT_OPTIONS) -> np.ndarray:
    """Vector quotient values; pole neighborhoods yield inf/nan, never raise.

    This is the grid backend for rendering and tracing; the scalar wrappers
    delta5 / delta_q add the pole bookkeeping.
    """
    s = np.ascontiguousarray(s, dtype=np.complex128)
    with np.errstate(all="ignore"):
        num = _zeta_values(s, opts)
        num = num * (_beta_values(s, opts) if q == 4 else _dirichlet_values(q, s, opts))
        den = _zeta_values(2.0 * s - 0.5, opts)
        if q == 3:
            num = num * -np.expm1((s - 0.5) * math.log(0.75))
        elif q in (7, 8):
            den = den * -np.expm1((s - 0.5) * math.log(4.0 / q))
        return num / den


def _check_delta5_poles(z: complex):
    if abs(z - 1.0) <= _QUOTIENT_POLE_TOL:
        raise PoleOfDelta5("delta5 pole at s = 1", 1.0 + 0.0j)
    # uncancelled trivial zeros of the denominator sit at s = 1/4 - k, k >= 1
    k = round(0.25 - z.real)
    if k >= 1 and abs(z - (0.25 - k)) <= _QUOTIENT_POLE_TOL:
        loc = complex(0.25 - k)
        raise PoleOfDelta5(f"delta5 pole at s = {loc.real}", loc)


def delta5(s, opts: EvalOptions = DEFAULT_OPTIONS):
    """The quotient zeta(s) L_-4(s) / zeta(2s - 1/2).

    Returns exactly 0 at the first-order zero s = 3/4; raises PoleOfDelta5
    within 1e-10 of s = 1, of the real poles s = 1/4 - k, and of the
    critical-line poles where the denominator vanishes.
    """
    arr, scalar = _coerce(s)
    out = np.empty(arr.shape, dtype=np.complex128)
    for i, z in enumerate(arr):
        z = complex(z)
        if abs(z - 0.75) <= _EXACT_ZERO_TOL:
            out[i] = 0.0
            continue
        _check_delta5_poles(z)
        with np.errstate(all="ignore"):
            num = complex(_zeta_values(np.array([z]), opts)[0]
                          * _beta_values(np.array([z]), opts)[0])
            den = complex(_zeta_values(np.array([2.0 * z - 0.5]), opts)[0])
        if abs(den) <= 1e-9 and abs(num) > 1e-9:
            raise PoleOfDelta5(f"denominator zero of delta5 near s = {z}", z)
        out[i] = num / den
    return _release(out, scalar)


def delta_q(kind, s, opts: EvalOptions = DEFAULT_OPTIONS):
    """The quotient family member for discriminant label q in {3, 4, 7, 8}.

    q = 4 reduces to delta5.  The bracket factor 1 - r^(s-1/2) vanishes at
    s = 1/2 for every q != 4, so that point (an unresolved degeneracy of the
    construction) is reported through PoleOfDeltaQ rather than as a value,
    as are the bracket zeros on the critical line when they sit in the
    denominator (q > 4).
    """
    q = kind.discriminant_label if isinstance(kind, QuotientKind) else int(kind)
    if q not in (3, 4, 7, 8):
        raise UnsupportedDiscriminant(f"unsupported discriminant label {q}")
    if q == 4:
        return delta5(s, opts)
    arr, scalar = _coerce(s)
    out = np.empty(arr.shape, dtype=np.complex128)
    r = _bracket_ratio(q)
    period = 2.0 * math.pi / abs(math.log(r))
    for i, z in enumerate(arr):
        z = complex(z)
        if abs(z - 0.5) <= _QUOTIENT_POLE_TOL:
            raise PoleOfDeltaQ("bracket factor vanishes at s = 1/2", 0.5 + 0.0j)
        if abs(z - 1.0) <= _QUOTIENT_POLE_TOL:
            raise PoleOfDeltaQ("delta_q pole at s = 1", 1.0 + 0.0j)
        if q > 4:
            # remaining bracket zeros: s = 1/2 + i k (2 pi / ln(q/4))
            k = round(z.imag / period)
            if k != 0 and abs(z - complex(0.5, k * period)) <= _QUOTIENT_POLE_TOL:
                loc = complex(0.5, k * period)
                raise PoleOfDeltaQ(f"bracket-factor zero of delta_q at s = {loc}", loc)
        with np.errstate(all="ignore"):
            num = complex(_zeta_values(np.array([z]), opts)[0]
                          * _dirichlet_values(q, np.array([z]), opts)[0])
            den = complex(_zeta_values(np.array([2.0 * z - 0.5]), opts)[0])
            brk = complex(-np.expm1((z - 0.5) * math.log(r)))
        num, den = (num * brk, den) if q == 3 else (num, den * brk)
        if abs(den) <= 1e-9 and abs(num) > 1e-9:
            raise PoleOfDeltaQ(f"denominator zero of delta_q near s = {z}", z)
        out[i] = num / den
    return _release(out, scalar)


_F5_SHIFTS = (  # gamma arguments of f5 as (scale, offset): arg = scale*s + offset
    (-1.0, 1.0),   # Gamma(1 - s)
    (1.0, -0.25),  # Gamma(s - 1/4)
    (1.0, 0.0),    # Gamma(s)
    (-1.0, 0.75),  # Gamma(3/4 - s)
)


def f5(s, opts: EvalOptions = DEFAULT_OPTIONS):
    """Reflection factor Gamma(1-s) Gamma(s-1/4) / (Gamma(s) Gamma(3/4-s)).

    Computed through log-gamma differences, so it neither overflows nor
    underflows for |Im s| up to 200.
    """
    arr, scalar = _coerce(s)
    for scale, offset in _F5_SHIFTS:
        args = scale * arr + offset
        hit = _near_nonpositive_integer(args)
        if np.any(hit):
            loc = complex(arr[hit][0])
            raise GammaPoleOnPath(f"gamma factor of f5 has a pole at s = {loc}", loc)
    log_f = (_stirling_lgamma(1.0 - arr) + _stirling_lgamma(arr - 0.25)
             - _stirling_lgamma(arr) - _stirling_lgamma(0.75 - arr))
    return _release(np.exp(log_f), scalar)


def f5_asymptotic(s):
    """Large-|t| form of f5: e^(-i pi/4) (1 + 1/(16 s) + 17/(512 s^2)).

    The leading constant conjugates to e^(+i pi/4) for t < -1; the strip
    |Im s| <= 1 is outside the asymptotic regime and is rejected.
    """
    arr, scalar = _coerce(s)
    if np.any(np.abs(arr.imag) <= 1.0):
        raise DomainError("f5_asymptotic requires |Im s| > 1")
    lead = np.where(arr.imag > 0.0,
                    np.exp(-0.25j * math.pi) * np.ones(arr.shape, dtype=np.complex128),
                    np.exp(0.25j * math.pi) * np.ones(arr.shape, dtype=np.complex128))
    series = 1.0 + 1.0 / (16.0 * arr) + 17.0 / (512.0 * arr * arr)
    return _release(lead * series, scalar)


def functional_equation_residual(s, opts: EvalOptions = DEFAULT_OPTIONS) -> float:
    """Self-test probe |delta5(s) - f5(s) delta5(1-s)| / (1 + |delta5(s)|)."""
    z = complex(np.asarray(s, dtype=np.complex128))
    lhs = delta5(z, opts)
    rhs = f5(z, opts) * delta5(1.0 - z, opts)
    return abs(lhs - rhs) / (1.0 + abs(lhs))


def critical_phase_approx(t: float) -> AsymptoticPhase:
    """Asymptotic critical-line phase -pi/8 - 1/(32 t), folded modulo pi."""
    if not t > 1.0:
        raise DomainError("critical_phase_approx requires t > 1")
    return AsymptoticPhase(t=float(t), phase_mod_pi=fold_phase(-math.pi / 8.0 - 1.0 / (32.0 * t)))


def large_sigma_phase_modulus(sigma: float, t: float) -> tuple[float, float]:
    """First-order phase and modulus of delta5 for sigma >= 6.

    Returns (-sin(t ln 2)/2^sigma, 1 + cos(t ln 2)/2^sigma); the error of
    both is bounded by the next Dirichlet term, about 3/4^sigma.
    """
    if sigma < 6.0:
        raise DomainError("large_sigma_phase_modulus requires sigma >= 6")
    scale = 2.0 ** (-sigma)
    return (-math.sin(t * LN2) * scale, 1.0 + math.cos(t * LN2) * scale)


def reflected_approx(sigma: float, t: float) -> complex:
    """Product approximation to delta5(1 - sigma + i t) for sigma >= 3, t > 1:

    [1 + 2^-sigma cos(t ln 2) + i 2^-sigma sin(t ln 2)] e^(-i pi/4)
    (1 - (sigma + i t) / (16 (sigma^2 + t^2))).
    """
    if sigma < 3.0 or not t > 1.0:
        raise DomainError("reflected_approx requires sigma >= 3 and t > 1")
    scale = 2.0 ** (-sigma)
    head = 1.0 + scale * math.cos(t * LN2) + 1j * scale * math.sin(t * LN2)
    correction = 1.0 - (sigma + 1j * t) / (16.0 * (sigma * sigma + t * t))
    return head * complex(math.cos(math.pi / 4.0), -math.sin(math.pi / 4.0)) * correction


def bracket_phase_zeros(q: int, sigma: float, t_max: float, scan_step: float = 0.01) -> list[float]:
    """Ordinates in (0, t_max] where the bracket factor's phase crosses zero
    along the vertical line Re s = sigma.

    Located by sign changes of Im bracket_factor refined by bisection; for
    q != 4 these sit at multiples of pi / ln(1/r).
    """
    if q == 4:
        return []
    if q not in (3, 7, 8):
        raise UnsupportedDiscriminant(f"unsupported discriminant label {q}")
    ts = np.arange(0.0, t_max + scan_step, scan_step)
    vals = bracket_factor(q, sigma + 1j * ts)
    ims = np.asarray(vals).imag
    roots = []
    for i in range(len(ts) - 1):
        lo, hi = ts[i], ts[i + 1]
        flo, fhi = ims[i], ims[i + 1]
        if flo == 0.0 and lo > 0.0:
            roots.append(float(lo))
            continue
        if flo * fhi >= 0.0:
            continue
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            fm = complex(bracket_factor(q, sigma + 1j * mid)).imag
            if flo * fm <= 0.0:
                hi, fhi = mid, fm
            else:
                lo, flo = mid, fm
        roots.append(0.5 * (lo + hi))
    return [r for r in roots if 0.0 < r <= t_max]


def lattice_sum_C(s, opts: EvalOptions = DEFAULT_OPTIONS):
    """The square-lattice sum over (m, n) != (0, 0) of (m^2 + n^2)^-s,
    computed through its factorization 4 zeta(s) beta(s)."""
    arr, scalar = _coerce(s)
    if np.any(np.abs(arr - 1.0) <= 1e-12):
        raise PoleOfZeta("lattice sum has a pole at s = 1", 1.0 + 0.0j)
    return _release(4.0 * _zeta_values(arr, opts) * _beta_values(arr, opts), scalar)
