"""Special-function evaluation core: complex log-gamma, Riemann zeta,
Hurwitz zeta, the Dirichlet beta function, and real-character L functions
for discriminants -3, -4, -7, -8.

Every public operation accepts a Python complex (or float) or a numpy array
of them and returns the matching shape.  Accuracy target is near machine
precision for |Im s| <= 200:

* zeta, beta_L: accelerated alternating series (binomial weights, error
  ~ (3+sqrt 8)^-n) for Re s > 0, functional-equation reflection below.
* hurwitz_zeta: Euler-Maclaurin with Bernoulli corrections; for Re s < 0
  with rational a = p/q the discrete reflection formula is used instead,
  because the direct sum loses digits to cancellation there.
* dirichlet_L: character sums over Hurwitz zeta values with the 1/(s-1)
  poles subtracted term by term, so the result is entire (finite at s=1);
  reflected below Re s = 1/2.

All functions are pure; the module keeps only immutable weight caches.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError, PoleOfGamma, PoleOfZeta, UnsupportedDiscriminant

LN2 = math.log(2.0)
LN_PI = math.log(math.pi)
TWO_PI = 2.0 * math.pi

# B_{2k}, k = 1..13, as exact fractions
_B2K = [
    (1, 6), (-1, 30), (1, 42), (-1, 30), (5, 66), (-691, 2730), (7, 6),
    (-3617, 510), (43867, 798), (-174611, 330), (854513, 138),
    (-236364091, 2730), (8553103, 6),
]
# Stirling series coefficients B_{2k} / (2k (2k-1))
_STIRLING_C = np.array([p / q / ((2 * k + 2) * (2 * k + 1)) for k, (p, q) in enumerate(_B2K)])
# Euler-Maclaurin coefficients B_{2k} / (2k)!
_EM_C = np.array([p / q / math.factorial(2 * k + 2) for k, (p, q) in enumerate(_B2K)])

# Real odd primitive characters, indexed by |discriminant|
CHARACTER_TABLES = {
    3: {1: 1, 2: -1},
    4: {1: 1, 3: -1},
    7: {1: 1, 2: 1, 3: -1, 4: 1, 5: -1, 6: -1},
    8: {1: 1, 3: 1, 5: -1, 7: -1},
}

_POLE_TOL = 1e-12


@dataclass(frozen=True)
class EvalOptions:
    """Evaluation tuning knobs shared by every special-function call.

    series_terms is a floor on the direct-sum cutoff N, em_order the number
    of Bernoulli correction terms, target_digits the requested significant
    digits (the double-precision build cannot promise more than 15; near
    |Im s| = 200 phase rounding in the reflection factors caps achievable
    relative accuracy around 2e-13 regardless of target_digits).
    """

    series_terms: int = 16
    em_order: int = 12
    target_digits: int = 14

    def __post_init__(self):
        if self.series_terms < 8:
            raise DomainError("series_terms must be >= 8")
        if not 0 <= self.em_order <= 12:
            raise DomainError("em_order must lie in [0, 12]")
        if not 1 <= self.target_digits <= 15:
            raise DomainError("target_digits must lie in [1, 15]")


DEFAULT_OPTIONS = EvalOptions()


def _coerce(s):
    """Return (complex128 array, was_scalar); reject non-finite input."""
    arr = np.asarray(s, dtype=np.complex128)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    if not np.all(np.isfinite(arr)):
        raise DomainError("input contains non-finite values")
    return arr, scalar


def _release(arr, scalar):
    return complex(arr[0]) if scalar else arr


_cvz_weight_cache: dict[int, np.ndarray] = {}


def _cvz_weights(n: int) -> np.ndarray:
    """Binomial acceleration weights w_k = c_k / d for alternating sums."""
    w = _cvz_weight_cache.get(n)
    if w is None:
        r = 3.0 + math.sqrt(8.0)
        d = (r ** n + r ** (-n)) / 2.0
        b = -1.0
        c = -d
        w = np.empty(n)
        for k in range(n):
            c = b - c
            w[k] = c / d
            b = (k + n) * (k - n) * b / ((k + 0.5) * (k + 1.0))
        _cvz_weight_cache[n] = w
    return w


_log_cache: dict[tuple, np.ndarray] = {}


def _arith_logs(base: float, step: float, n: int) -> np.ndarray:
    key = (base, step, n)
    if key not in _log_cache:
        _log_cache[key] = np.log(base + step * np.arange(n))
    return _log_cache[key]


def _cvz_terms(t_abs: float, sigma_min: float, digits: int) -> int:
    # weight ratio c_k/d stops decreasing past k ~ n, so large heights need
    # n ~ pi |t| / (2 ln(3+sqrt8)); small sigma inflates the constant a bit
    penalty = 0.0
    if sigma_min < 0.5:
        penalty = min(12.0, max(0.0, -math.log(max(sigma_min, 1e-8))))
    n = int((0.5 * math.pi * t_abs + digits * 2.302585 + penalty) / 1.7627471740390859) + 12
    return min(n, 347)  # weight recurrence overflows past n ~ 415


def _alt_weighted_sum(s: np.ndarray, base: float, step: float, n: int) -> np.ndarray:
    """sum_k w_k (base + step k)^(-s), blocked so the outer product stays small."""
    flat = np.ascontiguousarray(s, dtype=np.complex128).reshape(-1)
    w = _cvz_weights(n).astype(np.complex128)
    logs = _arith_logs(base, step, n)
    out = np.empty(flat.shape, dtype=np.complex128)
    blk = 4096
    for i in range(0, flat.size, blk):
        chunk = flat[i:i + blk]
        out[i:i + blk] = np.exp(np.multiply.outer(-chunk, logs)) @ w
    return out.reshape(s.shape)


def _stirling_lgamma(z: np.ndarray) -> np.ndarray:
    """Principal-branch log Gamma; arguments shifted until Re >= 10."""
    z = np.ascontiguousarray(z, dtype=np.complex128)
    re_min = z.real.min() if z.size else 10.0
    k_shift = max(0, int(math.ceil(10.0 - re_min)))
    zs = z + k_shift
    corr = np.zeros(z.shape, dtype=np.complex128)
    for j in range(k_shift):
        corr = corr + np.log(z + j)
    inv2 = 1.0 / (zs * zs)
    acc = np.zeros(z.shape, dtype=np.complex128)
    for c in _STIRLING_C[::-1]:
        acc = (acc + c) * inv2
    acc = acc * zs  # sum c_k / zs^(2k-1)
    return (zs - 0.5) * np.log(zs) - zs + 0.5 * math.log(TWO_PI) + acc - corr


def _log_sin(z: np.ndarray) -> np.ndarray:
    """A branch of log sin z that is stable for large |Im z|.

    Only ever used under exp(), so the branch constant is irrelevant.
    """
    z = np.ascontiguousarray(z, dtype=np.complex128)
    im = z.imag
    out = np.empty(z.shape, dtype=np.complex128)
    mid = np.abs(im) <= 20.0
    if np.any(mid):
        out[mid] = np.log(np.sin(z[mid]))
    up = im > 20.0
    if np.any(up):
        zu = z[up]
        out[up] = -1j * zu + np.log1p(-np.exp(2j * zu).real) - LN2 + 0.5j * math.pi
    dn = im < -20.0
    if np.any(dn):
        zd = z[dn]
        out[dn] = 1j * zd + np.log1p(-np.exp(-2j * zd).real) - LN2 - 0.5j * math.pi
    return out


def _em_terms(t_abs: float, digits: int) -> int:
    # Bernoulli tail converges once the cutoff exceeds |s| / 2pi
    return int(0.75 * t_abs) + 4 * max(digits - 10, 0) + 20


def _phi_expm1_over_x(x: np.ndarray) -> np.ndarray:
    """(e^x - 1)/x, complex-safe, series near 0."""
    x = np.asarray(x, dtype=np.complex128)
    small = np.abs(x) < 1e-4
    safe = np.where(small, 1.0, x)
    return np.where(small, 1.0 + x / 2.0 + x * x / 6.0, np.expm1(safe) / safe)


def _em_hurwitz(s: np.ndarray, a: float, N: int, m: int, minus_pole: bool = False) -> np.ndarray:
    """Euler-Maclaurin sum for zeta(s, a); optionally with 1/(s-1) removed.

    The minus_pole variant stays finite (and exact) at s = 1, which is what
    the character sums in dirichlet_L need.
    """
    s = np.ascontiguousarray(s, dtype=np.complex128)
    flat = s.reshape(-1)
    logs = np.log(a + np.arange(N))
    ones = np.ones(N, dtype=np.complex128)
    direct = np.empty(flat.shape, dtype=np.complex128)
    blk = 4096
    for i in range(0, flat.size, blk):
        chunk = flat[i:i + blk]
        direct[i:i + blk] = np.exp(np.multiply.outer(-chunk, logs)) @ ones
    direct = direct.reshape(s.shape)
    P = N + a
    logP = math.log(P)
    Ppow = np.exp(-s * logP)  # P^-s
    if minus_pole:
        # P^(1-s)/(s-1) - 1/(s-1) = -logP * phi((1-s) logP)
        tail1 = -logP * _phi_expm1_over_x((1.0 - s) * logP)
    else:
        tail1 = Ppow * P / (s - 1.0)
    out = direct + tail1 + 0.5 * Ppow
    poch = s.copy()
    Pfac = Ppow / P  # P^(-s-1)
    P2 = 1.0 / (P * P)
    for k in range(1, m + 1):
        out = out + _EM_C[k - 1] * poch * Pfac
        if k < m:
            poch = poch * (s + (2 * k - 1)) * (s + 2 * k)
            Pfac = Pfac * P2
    return out


def _zeta_right(s: np.ndarray, opts: EvalOptions) -> np.ndarray:
    """zeta for Re s > 0 (pole neighborhood of s = 1 gives a huge finite value)."""
    digits = opts.target_digits
    # eta route; 1 - 2^(1-s) via expm1 keeps accuracy near s = 1
    q = -np.expm1((1.0 - s) * LN2)
    bad = np.abs(q) < 0.05  # near s = 1 + 2 pi i k / ln 2 the eta route loses digits
    good = ~bad
    vals = np.empty(s.shape, dtype=np.complex128)
    if np.any(good):
        sg = s[good]
        n = _cvz_terms(np.abs(sg.imag).max(initial=0.0), sg.real.min(), digits)
        vals[good] = _alt_weighted_sum(sg, 1.0, 1.0, n) / q[good]
    if np.any(bad):
        sb = s[bad]
        N = max(opts.series_terms, _em_terms(np.abs(sb.imag).max(initial=0.0), digits))
        vals[bad] = _em_hurwitz(sb, 1.0, N, opts.em_order)
    return vals


def _zeta_values(s: np.ndarray, opts: EvalOptions = DEFAULT_OPTIONS) -> np.ndarray:
    """Vector zeta without pole checks (s = 1 itself gives inf)."""
    s = np.ascontiguousarray(s, dtype=np.complex128)
    out = np.empty(s.shape, dtype=np.complex128)
    pos = s.real > 0.0
    if np.any(pos):
        out[pos] = _zeta_right(s[pos], opts)
    small = ~pos & (np.abs(s) < 1e-8)
    if np.any(small):
        # reflection would hit the u = 1 pole; Euler-Maclaurin is exact here
        N = max(opts.series_terms, _em_terms(0.0, opts.target_digits))
        out[small] = _em_hurwitz(s[small], 1.0, N, opts.em_order)
    neg = ~pos & ~small
    if np.any(neg):
        sn = s[neg]
        u = 1.0 - sn
        zu = _zeta_right(u, opts)
        log_chi = sn * LN2 + (sn - 1.0) * LN_PI + _log_sin(0.5 * math.pi * sn) + _stirling_lgamma(u)
        out[neg] = np.exp(log_chi) * zu
    return out


def _beta_values(s: np.ndarray, opts: EvalOptions = DEFAULT_OPTIONS) -> np.ndarray:
    """Vector Dirichlet beta (no poles; trivial zeros returned exactly)."""
    s = np.ascontiguousarray(s, dtype=np.complex128)
    out = np.empty(s.shape, dtype=np.complex128)
    digits = opts.target_digits
    pos = s.real > 0.0
    if np.any(pos):
        sp = s[pos]
        n = _cvz_terms(np.abs(sp.imag).max(initial=0.0), sp.real.min(), digits)
        out[pos] = _alt_weighted_sum(sp, 1.0, 2.0, n)
    neg = ~pos
    if np.any(neg):
        sn = s[neg]
        u = 1.0 - sn
        n = _cvz_terms(np.abs(u.imag).max(initial=0.0), u.real.min(), digits)
        bu = _alt_weighted_sum(u, 1.0, 2.0, n)
        w = 0.5 * (sn + 1.0)
        wr = np.round(w.real)
        # gamma pole of the reflection factor = trivial zero of beta
        triv = (np.abs(w.real - wr) < 1e-13) & (wr <= 0.0) & (np.abs(w.imag) < 1e-13)
        wsafe = np.where(triv, 0.5, w)
        factor = np.exp((sn - 0.5) * math.log(math.pi / 4.0)
                        + _stirling_lgamma(1.0 - 0.5 * sn) - _stirling_lgamma(wsafe))
        out[neg] = np.where(triv, 0.0, factor * bu)
    return out


def _hurwitz_rational_left(s: np.ndarray, p: int, q: int, opts: EvalOptions) -> np.ndarray:
    """zeta(s, p/q) for Re s < 0 via the discrete reflection formula.

    zeta(1-u, p/q) = 2 Gamma(u) / (2 pi q)^u * sum_r cos(pi u/2 - 2 pi r p/q) zeta(u, r/q)
    with u = 1 - s, so every Hurwitz evaluation on the right is well conditioned.
    """
    s = np.ascontiguousarray(s, dtype=np.complex128)
    u = 1.0 - s
    digits = opts.target_digits
    N = max(opts.series_terms, _em_terms(np.abs(u.imag).max(initial=0.0), digits))
    acc = np.zeros(s.shape, dtype=np.complex128)
    for r in range(1, q + 1):
        phase = TWO_PI * r * p / q
        acc = acc + np.cos(0.5 * math.pi * u - phase) * _em_hurwitz(u, r / q, N, opts.em_order)
    scale = np.exp(_stirling_lgamma(u) + LN2 - u * math.log(TWO_PI * q))
    return scale * acc


def _hurwitz_values(s: np.ndarray, a: float, opts: EvalOptions = DEFAULT_OPTIONS) -> np.ndarray:
    """Vector Hurwitz zeta for a in (0, 1], reflection used where it pays off."""
    s = np.ascontiguousarray(s, dtype=np.complex128)
    digits = opts.target_digits
    left = s.real < 0.0
    frac = Fraction(a).limit_denominator(64)
    rational = abs(a - float(frac)) <= 1e-12 and frac.numerator >= 1
    if rational and np.any(left):
        out = np.empty(s.shape, dtype=np.complex128)
        out[left] = _hurwitz_rational_left(s[left], frac.numerator, frac.denominator, opts)
        right = ~left
        if np.any(right):
            sr = s[right]
            N = max(opts.series_terms, _em_terms(np.abs(sr.imag).max(initial=0.0), digits))
            out[right] = _em_hurwitz(sr, a, N, opts.em_order)
        return out
    # irrational offsets: direct Euler-Maclaurin everywhere (accuracy degrades
    # below Re s ~ -2 from cancellation; nothing in this package needs it)
    N = max(opts.series_terms, _em_terms(np.abs(s.imag).max(initial=0.0), digits))
    return _em_hurwitz(s, a, N, opts.em_order)


def _dirichlet_direct(q: int, s: np.ndarray, opts: EvalOptions) -> np.ndarray:
    """q^-s sum_a chi(a) [zeta(s, a/q) - 1/(s-1)]; entire since sum chi = 0."""
    digits = opts.target_digits
    N = max(opts.series_terms, _em_terms(np.abs(s.imag).max(initial=0.0), digits))
    acc = np.zeros(s.shape, dtype=np.complex128)
    for a, chi in CHARACTER_TABLES[q].items():
        acc = acc + chi * _em_hurwitz(s, a / q, N, opts.em_order, minus_pole=True)
    return np.exp(-s * math.log(q)) * acc


def _dirichlet_values(q: int, s: np.ndarray, opts: EvalOptions = DEFAULT_OPTIONS) -> np.ndarray:
    """Vector L_{-q}; functional-equation reflection below Re s = 1/2."""
    s = np.ascontiguousarray(s, dtype=np.complex128)
    out = np.empty(s.shape, dtype=np.complex128)
    right = s.real >= 0.5
    if np.any(right):
        out[right] = _dirichlet_direct(q, s[right], opts)
    left = ~right
    if np.any(left):
        sl = s[left]
        lu = _dirichlet_direct(q, 1.0 - sl, opts)
        w = 0.5 * (sl + 1.0)
        wr = np.round(w.real)
        triv = (np.abs(w.real - wr) < 1e-13) & (wr <= 0.0) & (np.abs(w.imag) < 1e-13)
        wsafe = np.where(triv, 0.5, w)
        factor = np.exp((0.5 - sl) * math.log(q / math.pi)
                        + _stirling_lgamma(1.0 - 0.5 * sl) - _stirling_lgamma(wsafe))
        out[left] = np.where(triv, 0.0, factor * lu)
    return out


def _near_nonpositive_integer(z: np.ndarray, tol: float = _POLE_TOL):
    zr = np.round(z.real)
    return (np.abs(z.real - zr) <= tol) & (np.abs(z.imag) <= tol) & (zr <= 0.0)


def log_gamma(s):
    """Principal-branch log of Gamma(s).

    Raises PoleOfGamma when s is within 1e-12 of a non-positive integer.
    """
    arr, scalar = _coerce(s)
    hit = _near_nonpositive_integer(arr)
    if np.any(hit):
        loc = complex(round(arr[hit][0].real))
        raise PoleOfGamma(f"log_gamma pole at s = {loc}", loc)
    return _release(_stirling_lgamma(arr), scalar)


def zeta(s, opts: EvalOptions = DEFAULT_OPTIONS):
    """Riemann zeta; accelerated eta series for Re s > 0, reflection below."""
    arr, scalar = _coerce(s)
    if np.any(np.abs(arr - 1.0) <= _POLE_TOL):
        raise PoleOfZeta("zeta pole at s = 1", 1.0 + 0.0j)
    return _release(_zeta_values(arr, opts), scalar)


def hurwitz_zeta(s, a: float, opts: EvalOptions = DEFAULT_OPTIONS):
    """Hurwitz zeta(s, a) for offsets a in (0, 1]."""
    if not isinstance(a, (int, float)) or not math.isfinite(a) or not 0.0 < a <= 1.0:
        raise DomainError("hurwitz_zeta offset a must be a real in (0, 1]")
    arr, scalar = _coerce(s)
    if np.any(np.abs(arr - 1.0) <= _POLE_TOL):
        raise PoleOfZeta("hurwitz_zeta pole at s = 1", 1.0 + 0.0j)
    return _release(_hurwitz_values(arr, float(a), opts), scalar)


def beta_L(s, opts: EvalOptions = DEFAULT_OPTIONS):
    """Dirichlet beta sum_{n>=0} (-1)^n (2n+1)^-s, entire in s."""
    arr, scalar = _coerce(s)
    return _release(_beta_values(arr, opts), scalar)


def dirichlet_L(q: int, s, opts: EvalOptions = DEFAULT_OPTIONS):
    """L_{-q}(s) for the real odd characters with q in {3, 4, 7, 8}."""
    if q not in CHARACTER_TABLES:
        raise UnsupportedDiscriminant(f"no character table for q = {q}; supported: 3, 4, 7, 8")
    arr, scalar = _coerce(s)
    return _release(_dirichlet_values(q, arr, opts), scalar)
