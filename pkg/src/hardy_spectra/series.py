"""Power-series arithmetic in the coefficient space of H².

A function analytic on the unit disc is represented by its truncated
Maclaurin coefficient sequence.  Coefficients are extracted from point
evaluations by discretizing the Cauchy integral on a circle |z| = r < 1
with an FFT; a confirmation pass at a second radius bounds the aliasing
error per coefficient.  Möbius maps get exact coefficient-level algebra,
including the Cayley transform onto the right half-plane that underlies
all boundary-fixed-point constructions in this package.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import ContractViolationError, NotSelfMapError, SamplingError

DEFAULT_N = 64
DEFAULT_RADIUS = 0.95
CONFIRM_RADIUS = 0.90
DEFAULT_SAMPLES = 4096

_EPS = np.finfo(float).eps


class PointAtInfinity:
    """Tagged sentinel for the pole value of a Möbius map.

    Poles are legitimate intermediate values on the half-plane side, so they
    are carried explicitly instead of as NaN.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"


INFINITY = PointAtInfinity()


@dataclass(frozen=True)
class TaylorSeries:
    """Truncated Maclaurin coefficient sequence with provenance.

    ``sample_radius`` is None for exactly-known coefficients; otherwise it
    records the circle radius used for extraction and ``sample_count`` the
    number of evaluation points.  ``error_bound`` is a per-coefficient bound
    on extraction error (aliasing plus roundoff amplification), present for
    sampled series.
    """

    coeffs: np.ndarray
    sample_radius: float | None = None
    sample_count: int = 0
    error_bound: np.ndarray | None = None

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.ndim != 1 or len(c) < 1:
            raise ContractViolationError("coefficient array must be 1-d and nonempty")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        if self.error_bound is not None:
            b = np.asarray(self.error_bound, dtype=float)
            b.setflags(write=False)
            object.__setattr__(self, "error_bound", b)

    def __len__(self):
        return len(self.coeffs)


def exact_series(coeffs) -> TaylorSeries:
    return TaylorSeries(np.asarray(coeffs, dtype=complex))


def cauchy_product(f: TaylorSeries, g: TaylorSeries) -> TaylorSeries:
    """Coefficient-wise product (f*g)_k = sum_{j<=k} f_j g_{k-j}, truncated.

    Coefficient k of the output depends only on input coefficients <= k, so
    the result is exact at the common truncation order.
    """
    if len(f) != len(g):
        raise ContractViolationError(
            f"series length mismatch: {len(f)} vs {len(g)}")
    prod = np.convolve(f.coeffs, g.coeffs)[: len(f)]
    return TaylorSeries(prod)


def coeffs_from_samples(eval_fn: Callable, r: float = DEFAULT_RADIUS,
                        m: int = DEFAULT_SAMPLES, n: int = DEFAULT_N) -> TaylorSeries:
    """Maclaurin coefficients of an analytic function via circle sampling.

    Discretizes f_hat(k) = r^{-k} (1/2*pi) \\int f(r e^{it}) e^{-ikt} dt with
    an m-point FFT.  Requires m a power of two and m >= 4n so the aliased
    bands f_hat(k + j*m) sit far beyond the kept range.
    """
    if not (0.0 < r < 1.0):
        raise ContractViolationError("sampling radius must lie in (0, 1)")
    if m < 4 * n or (m & (m - 1)) != 0:
        raise ContractViolationError("sample count must be a power of two >= 4n")
    points = r * np.exp(2j * np.pi * np.arange(m) / m)
    values = np.asarray(eval_fn(points), dtype=complex)
    if values.shape != points.shape:  # evaluator that only takes scalars
        values = np.array([eval_fn(p) for p in points], dtype=complex)
    if not np.all(np.isfinite(values)):
        bad = points[~np.isfinite(values)][0]
        raise SamplingError(f"non-finite sample at z = {bad}", point=bad)
    raw = np.fft.fft(values)[:n] / m
    scale = r ** (-np.arange(n))
    coeffs = raw * scale
    # Aliasing: |f_hat(k + j*m)| <= sup|f| / rho^{k+j*m} for rho up to 1, so with
    # sup over the sampled circle as a proxy the leak into slot k is below
    # sup|f| * r^m/(1-r^m) before rescaling.  Roundoff in the DFT adds
    # ~eps*log2(m)*sup|f|.  Both are amplified by r^{-k}.
    sup = float(np.max(np.abs(values)))
    alias = sup * r ** m / (1.0 - r ** m)
    roundoff = 8.0 * _EPS * np.log2(m) * sup
    bound = (alias + roundoff) * scale
    return TaylorSeries(coeffs, sample_radius=r, sample_count=m, error_bound=bound)


def dual_radius_coeffs(eval_fn: Callable, r1: float = DEFAULT_RADIUS,
                       r2: float = CONFIRM_RADIUS, m: int = DEFAULT_SAMPLES,
                       n: int = DEFAULT_N) -> TaylorSeries:
    """Extraction with a confirmation pass at a second radius.

    Coefficient-wise disagreement beyond 10x the combined recorded bound
    flags the function as not analytic on the sampling disc.
    """
    s1 = coeffs_from_samples(eval_fn, r=r1, m=m, n=n)
    s2 = coeffs_from_samples(eval_fn, r=r2, m=m, n=n)
    combined = s1.error_bound + s2.error_bound
    diff = np.abs(s1.coeffs - s2.coeffs)
    if np.any(diff > 10.0 * np.maximum(combined, 64.0 * _EPS)):
        k = int(np.argmax(diff - 10.0 * combined))
        raise SamplingError(
            f"dual-radius disagreement at coefficient {k}: {diff[k]:.3e} "
            f"exceeds 10x bound {combined[k]:.3e}; "
            "function does not look analytic on the sampling disc")
    return TaylorSeries(s1.coeffs, sample_radius=r1, sample_count=m,
                        error_bound=np.maximum(diff, s1.error_bound))


def evaluate_series(f: TaylorSeries, z) -> complex | np.ndarray:
    """Horner evaluation of the truncated polynomial at z (|z| < 1)."""
    z = np.asarray(z, dtype=complex)
    acc = np.zeros_like(z)
    for c in f.coeffs[::-1]:
        acc = acc * z + c
    return acc if acc.ndim else complex(acc)


def h2_norm(f: TaylorSeries) -> float:
    """Coefficient two-norm, the H² norm of the truncated function."""
    return float(np.linalg.norm(f.coeffs))


def h2_inner(f: TaylorSeries, g: TaylorSeries) -> complex:
    """Coefficient inner product, second argument conjugated."""
    if len(f) != len(g):
        raise ContractViolationError("inner product needs equal truncations")
    return complex(np.vdot(g.coeffs, f.coeffs))


def kernel_vector(alpha: complex, n: int = DEFAULT_N) -> TaylorSeries:
    """Coefficients of the point-evaluation kernel at alpha.

    The kernel 1/(1 - conj(alpha) z) has k-th coefficient conj(alpha)^k and
    squared norm 1/(1 - |alpha|^2).
    """
    if abs(alpha) >= 1:
        raise ContractViolationError("kernel point must be inside the disc")
    return TaylorSeries(np.conj(alpha) ** np.arange(n))


@dataclass(frozen=True)
class MobiusMap:
    """Linear fractional map z -> (a z + b)/(c z + d), ad - bc != 0.

    Composition and inversion are done on the 2x2 coefficient matrix, so
    they are exact.  ``self_map`` records whether the map sends the unit
    disc into itself, validated on 512 boundary points.
    """

    a: complex
    b: complex
    c: complex
    d: complex
    self_map: bool = field(default=False, compare=False)

    def __post_init__(self):
        if abs(self.det) < 1e-14 * max(1.0, abs(self.a) + abs(self.b)
                                       + abs(self.c) + abs(self.d)) ** 2:
            raise ContractViolationError("degenerate Möbius map: ad - bc = 0")
        t = 2 * np.pi * np.arange(512) / 512
        img = self.apply_array(np.exp(1j * t))
        ok = np.all(np.isfinite(img)) and np.all(np.abs(img) <= 1 + 1e-12)
        object.__setattr__(self, "self_map", bool(ok))

    @property
    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    def apply_array(self, z: np.ndarray) -> np.ndarray:
        den = self.c * z + self.d
        with np.errstate(divide="ignore", invalid="ignore"):
            return (self.a * z + self.b) / den

    def __call__(self, z):
        return mobius_apply(self, z)

    def normalized(self) -> "MobiusMap":
        """Scale so the largest coefficient has unit modulus."""
        s = max(abs(self.a), abs(self.b), abs(self.c), abs(self.d))
        return MobiusMap(self.a / s, self.b / s, self.c / s, self.d / s)

    def taylor(self, n: int = DEFAULT_N) -> TaylorSeries:
        """Exact Maclaurin coefficients (pole must lie outside the closed disc)."""
        if self.c == 0:
            out = np.zeros(n, dtype=complex)
            out[0] = self.b / self.d
            if n > 1:
                out[1] = self.a / self.d
            return TaylorSeries(out)
        ratio = -self.c / self.d
        if abs(ratio) >= 1:
            raise ContractViolationError(
                "pole inside the closed disc: no Maclaurin expansion there")
        out = np.empty(n, dtype=complex)
        out[0] = self.b / self.d
        lead = (self.a - self.b * self.c / self.d) / self.d
        out[1:] = lead * ratio ** np.arange(n - 1)
        return TaylorSeries(out)

    def derivative(self, z: complex) -> complex:
        den = self.c * z + self.d
        return self.det / (den * den)

    def jet_at(self, zeta: complex):
        """(value, d1, d2, d3) at a point, from the closed form."""
        den = self.c * zeta + self.d
        val = (self.a * zeta + self.b) / den
        d1 = self.det / den ** 2
        d2 = -2 * self.c * self.det / den ** 3
        d3 = 6 * self.c ** 2 * self.det / den ** 4
        return val, d1, d2, d3


def mobius_compose(m1: MobiusMap, m2: MobiusMap) -> MobiusMap:
    """Map z -> m1(m2(z)), via the 2x2 matrix product."""
    return MobiusMap(
        m1.a * m2.a + m1.b * m2.c,
        m1.a * m2.b + m1.b * m2.d,
        m1.c * m2.a + m1.d * m2.c,
        m1.c * m2.b + m1.d * m2.d,
    )


def mobius_inverse(m: MobiusMap) -> MobiusMap:
    """Adjugate matrix; inverse up to the irrelevant determinant scalar."""
    return MobiusMap(m.d, -m.b, -m.c, m.a)


def mobius_apply(m: MobiusMap, z):
    """Evaluate, routing the pole to the point-at-infinity sentinel."""
    if z is INFINITY:
        if m.c == 0:
            return INFINITY
        return m.a / m.c
    den = m.c * z + m.d
    if den == 0:
        return INFINITY
    return (m.a * z + m.b) / den


def cayley() -> MobiusMap:
    """z -> (1+z)/(1-z), the disc onto the right half-plane."""
    return MobiusMap(1, 1, -1, 1)


def cayley_inverse() -> MobiusMap:
    """w -> (w-1)/(w+1), the right half-plane onto the disc."""
    return MobiusMap(1, -1, 1, 1)


def require_self_map(m: MobiusMap) -> MobiusMap:
    if not m.self_map:
        raise NotSelfMapError("Möbius map does not send the disc into itself")
    return m


def disc_automorphism_swap(omega: complex) -> MobiusMap:
    """The involution z -> (omega - z)/(1 - conj(omega) z) swapping 0 and omega."""
    if abs(omega) >= 1:
        raise ContractViolationError("automorphism center must be interior")
    return MobiusMap(-1, omega, -np.conj(omega), 1)
