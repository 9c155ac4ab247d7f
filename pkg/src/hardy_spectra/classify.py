"""Fixed-point dynamics and type classification of disc self-maps.

The attracting (Denjoy-Wolff) point of a non-elliptic self-map is located
by orbit iteration; the type label follows from its position and the
derivative there, with the parabolic auto/nonauto split decided by the sign
of Re(omega * phi''(omega)).  The horocyclic test checks the lower bound on
the real part of the half-plane incarnation of the symbol, which is what
makes the compact-difference approximation by a linear fractional map work.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import sampling
from .errors import (ContractViolationError, HypothesisViolationError,
                     NonConvergenceError)
from .series import (MobiusMap, cayley, cayley_inverse, mobius_compose)
from .symbols import BoundaryJet, Symbol, boundary_jet

DILATION = "dilation"
HYPERBOLIC = "hyperbolic"
PARABOLIC_AUTO = "parabolic_auto"
PARABOLIC_NONAUTO = "parabolic_nonauto"

_BOUNDARY_CUTOFF = 0.999
_STABLE_WINDOW = 50


class IndeterminateTypeError(NonConvergenceError):
    """The parabolic tie-band was hit without third-derivative data."""


@dataclass(frozen=True)
class HorocyclicReport:
    flag: bool
    margin: float
    empirical_c: float
    beta: float


@dataclass(frozen=True)
class Classification:
    """Full classification record for a self-map."""

    dw_point: complex
    dw_derivative: complex
    type_label: str
    horocyclic: HorocyclicReport | None = None
    elf_witnessed: bool = False

    def to_json_dict(self) -> dict:
        h = None
        if self.horocyclic is not None:
            h = {"flag": self.horocyclic.flag, "margin": self.horocyclic.margin,
                 "empirical_c": self.horocyclic.empirical_c, "beta": self.horocyclic.beta}
        return {
            "omega": {"re": self.dw_point.real, "im": self.dw_point.imag},
            "derivative": {"re": self.dw_derivative.real, "im": self.dw_derivative.imag},
            "type": self.type_label,
            "horocyclic": h,
            "elf_witnessed": self.elf_witnessed,
        }


def _central_derivative(f, z: complex, h: float = 1e-5) -> complex:
    return (complex(f(z + h)) - complex(f(z - h))) / (2.0 * h)


def denjoy_wolff(s: Symbol, max_steps: int = 100_000):
    """Locate the attracting fixed point and the derivative there.

    Iterates from 0.  An orbit that stabilizes inside |z| < 0.999 is refined
    by Newton steps to an interior fixed point (derivative by central
    difference at radius 1e-5); an orbit that sits outside the cutoff for 50
    consecutive steps is projected to the circle and snapped to the symbol's
    exact-jet base point when within 1e-3 of it, returning the jet
    derivative.  Raises NonConvergenceError (with the orbit tail attached)
    if neither pattern emerges within the step budget, and
    HypothesisViolationError for an interior fixed point with
    non-contracting derivative (an elliptic case outside scope).
    """
    z = 0.0 + 0.0j
    tail = []
    interior_run = 0
    boundary_run = 0
    delta = np.inf
    for _ in range(max_steps):
        z_new = complex(s.eval(z))
        if not np.isfinite(z_new):
            raise NonConvergenceError("orbit left the numerical domain", tail=tail[-10:])
        delta = abs(z_new - z)
        z = z_new
        tail.append(z)
        if len(tail) > 16:
            tail.pop(0)
        if abs(z) < _BOUNDARY_CUTOFF:
            interior_run += 1
            boundary_run = 0
        else:
            boundary_run += 1
            interior_run = 0
        if interior_run >= _STABLE_WINDOW and delta < 1e-13:
            return _interior_fixed_point(s, z, tail)
        if boundary_run >= _STABLE_WINDOW:
            return _boundary_fixed_point(s, z)
    if abs(z) >= _BOUNDARY_CUTOFF:
        return _boundary_fixed_point(s, z)
    if delta < 1e-10:
        return _interior_fixed_point(s, z, tail)
    raise NonConvergenceError(
        f"orbit did not stabilize within {max_steps} steps", tail=tail[-10:])


def _interior_fixed_point(s: Symbol, z0: complex, tail):
    z = z0
    for _ in range(60):
        residual = complex(s.eval(z)) - z
        if abs(residual) < 1e-14:
            break
        d = _central_derivative(s.eval, z)
        step = residual / (1.0 - d) if abs(1.0 - d) > 1e-8 else residual
        z = z + step  # damped fixed-point correction toward phi(z) = z
    if abs(complex(s.eval(z)) - z) >= 1e-12:
        raise NonConvergenceError("interior fixed-point refinement stalled",
                                  tail=tail[-10:])
    derivative = _central_derivative(s.eval, z)
    if abs(derivative) >= 1.0 - 1e-10:
        raise HypothesisViolationError(
            "interior fixed point with non-contracting derivative: elliptic "
            "or identity map, outside the scope of the spectral theorems",
            precondition="attracting interior fixed point")
    return z, derivative


def _boundary_fixed_point(s: Symbol, z_last: complex):
    projected = z_last / abs(z_last)
    if s.exact_jet is not None and abs(projected - s.exact_jet.zeta) < 1e-3:
        return complex(s.exact_jet.zeta), complex(s.exact_jet.d1)
    jet = boundary_jet(s, projected)
    return complex(jet.zeta), complex(jet.d1)


def horocyclic_test(s: Symbol, jet: BoundaryJet | None = None) -> HorocyclicReport:
    """Tangency test at the boundary fixed point 1.

    margin = Re(1/p - 1 + a/p^2) with p, a the first two boundary
    derivatives; a positive margin certifies (for maps continuous up to the
    circle with no other boundary contact) that the image lies in a proper
    horodisc at 1.  empirical_c records the sampled infimum of the real part
    of the half-plane incarnation, and beta the witnessed horodisc
    parameter sup |1-phi|^2/(1-|phi|^2).
    """
    jet = jet or boundary_jet(s, 1.0)
    p = jet.d1
    a = jet.d2
    margin = float(np.real(1.0 / p - 1.0 + a / (p * p)))
    flag = margin > 1e-10

    fan = sampling.halfplane_fan()
    T = cayley()
    Tinv = cayley_inverse()
    phi_vals = np.asarray(s.eval(Tinv.apply_array(fan)), dtype=complex)
    empirical_c = float(np.min(np.real(T.apply_array(phi_vals))))

    ring = sampling.circle_points(512, radius=_BOUNDARY_CUTOFF)
    w = np.asarray(s.eval(ring), dtype=complex)
    beta = float(np.max(np.abs(1.0 - w) ** 2 / (1.0 - np.abs(w) ** 2)))
    return HorocyclicReport(flag=flag, margin=margin,
                            empirical_c=empirical_c, beta=beta)


def boundary_preimage_witness(s: Symbol, n_grid: int = 720) -> float:
    """|t| of the grid argmin of |1 - phi(0.999 e^{it})|.

    A small return value witnesses (but does not prove) that 1 is the only
    boundary point mapped to 1.
    """
    t = np.linspace(-np.pi, np.pi, n_grid, endpoint=False)
    vals = np.abs(1.0 - np.asarray(s.eval(_BOUNDARY_CUTOFF * np.exp(1j * t))))
    return float(abs(t[int(np.argmin(vals))]))


def classify_type(s: Symbol) -> Classification:
    """Type label plus the horocyclic data at the boundary fixed point.

    Dilation and hyperbolic cases are decided by the fixed-point location
    and derivative; the parabolic split follows the second-derivative test:
    a vanishing second derivative or Re(omega phi''(omega)) > 0 means
    nonautomorphism type, a pure-imaginary (nonzero) omega phi''(omega)
    with enough smoothness means automorphism type.  The tie band
    |Re(omega phi''(omega))| <= 1e-8 without third-derivative data raises
    IndeterminateTypeError rather than guessing.
    """
    omega, derivative = denjoy_wolff(s)
    if abs(omega) < _BOUNDARY_CUTOFF:
        label = DILATION
        jet = s.exact_jet
        horo = None
        elf = False
        if jet is not None:
            horo = horocyclic_test(s, jet)
            elf = bool(horo.flag and boundary_preimage_witness(s) < 0.1
                       and jet.d3 is not None)
        return Classification(omega, derivative, label, horo, elf)

    jet = s.exact_jet if (s.exact_jet is not None
                          and abs(s.exact_jet.zeta - omega) < 1e-9) \
        else boundary_jet(s, omega)
    p = jet.d1.real
    if p < 1.0 - 1e-10:
        label = HYPERBOLIC
    else:
        x = complex(omega) * jet.d2
        if abs(jet.d2) <= 1e-12 or x.real > 1e-8:
            label = PARABOLIC_NONAUTO
        elif abs(x.real) <= 1e-8:
            if jet.d3 is None:
                raise IndeterminateTypeError(
                    "Re(omega phi''(omega)) sits in the +-1e-8 tie band and no "
                    "third derivative is available to certify smoothness")
            label = PARABOLIC_AUTO
        else:
            raise ContractViolationError(
                f"Re(omega phi''(omega)) = {x.real:.3e} < 0 contradicts the "
                "parabolic second-derivative test; jet data inconsistent")

    horo = horocyclic_test(s, jet) if abs(jet.zeta - 1.0) < 1e-9 else None
    elf = bool(horo is not None and horo.flag
               and boundary_preimage_witness(s) < 0.1 and jet.d3 is not None)
    return Classification(omega, derivative, label, horo, elf)


def elf_approximant(s: Symbol) -> MobiusMap:
    """The linear fractional map sharing value and first two derivatives
    with the symbol at its boundary tangency point 1.

    On the half-plane side this is w -> w/p + (1/p - 1 + a/p^2); conjugated
    back it is the compact-difference partner of the symbol.  Requires a
    positive horocyclic margin.
    """
    jet = s.exact_jet if (s.exact_jet is not None
                          and abs(s.exact_jet.zeta - 1.0) < 1e-9) \
        else boundary_jet(s, 1.0)
    p = jet.d1
    a = jet.d2
    margin = float(np.real(1.0 / p - 1.0 + a / (p * p)))
    if margin <= 1e-10:
        raise HypothesisViolationError(
            "nonpositive horocyclic margin: no internally tangent subdisc",
            precondition="horocyclic margin > 0")
    q = 1.0 / p - 1.0 + a / (p * p)
    upper = MobiusMap(1.0 / p, q, 0.0, 1.0)
    psi = mobius_compose(cayley_inverse(), mobius_compose(upper, cayley())).normalized()
    val, d1, d2, _ = psi.jet_at(1.0)
    if abs(val - 1.0) > 1e-10 or abs(d1 - p) > 1e-10 * max(1.0, abs(p)) \
            or abs(d2 - a) > 1e-8 * max(1.0, abs(a)):
        raise ContractViolationError("approximant jet mismatch (internal error)")
    return psi


def blaschke_diagnostic(s: Symbol, z0: complex, n_max: int) -> np.ndarray:
    """Partial sums S_m = sum_{k<=m} (1 - |orbit_k|), orbit_0 = z0.

    Bounded sums witness a Blaschke orbit (hyperbolic approach); sums that
    keep growing witness the non-Blaschke property that forces eigenvectors
    to be zero-free in the parabolic nonautomorphism case.
    """
    if abs(z0) >= 1:
        raise ContractViolationError("orbit start must be interior")
    out = np.empty(n_max + 1)
    z = complex(z0)
    acc = 0.0
    for k in range(n_max + 1):
        acc += 1.0 - abs(z)
        out[k] = acc
        z = complex(s.eval(z))
    return out


def julia_bound_report(s: Symbol, n_max: int = 12, n_points: int = 512) -> dict:
    """Sampled check of the iterated horodisc-shrinking inequality.

    With beta the witnessed horodisc parameter and p the boundary
    derivative, Julia's theorem forces
    |1 - phi^{[n+1]}(z)|^2 < p^n beta (1 - |phi^{[n+1]}(z)|^2) <= p^n beta.
    Returns per-n maxima of both left/right ratios over a boundary-adjacent
    ring; values <= 1 mean the inequality held.
    """
    horo = horocyclic_test(s)
    jet = s.exact_jet or boundary_jet(s, 1.0)
    p = float(jet.d1.real)
    beta = horo.beta
    ring = sampling.circle_points(n_points, radius=_BOUNDARY_CUTOFF)
    w = np.asarray(s.eval(ring), dtype=complex)  # phi^{[1]}
    ratios_mid = []
    ratios_rhs = []
    for n in range(n_max + 1):
        if n > 0:
            w = np.asarray(s.eval(w), dtype=complex)  # now phi^{[n+1]}
        lhs = np.abs(1.0 - w) ** 2
        mid = p ** n * beta * (1.0 - np.abs(w) ** 2)
        ratios_mid.append(float(np.max(lhs / mid)))
        ratios_rhs.append(float(np.max(lhs / (p ** n * beta))))
    return {"beta": beta, "derivative": p,
            "max_ratio_sharp": ratios_mid, "max_ratio_flat": ratios_rhs}
