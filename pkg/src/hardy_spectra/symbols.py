"""Analytic self-maps of the disc and bounded weights.

A Symbol wraps a vectorized evaluator together with optional exact boundary
derivative data (a jet) at a unimodular point.  Symbols are built three
ways: from a Möbius map, from a right-half-plane representation
``F(w) = slope*w + constant + sum_j beta_j/(w+1)^gamma_j`` conjugated back
to the disc by the Cayley transform, or from a closed-form evaluator in the
built-in catalogue.  All roots and powers are principal.

Boundary jets come from closed forms whenever the constructor knows them;
the fallback is extrapolation of radial samples, which is accurate to about
1e-8 for first and second derivatives but noise-limited for third
derivatives (hence exact jets are preferred wherever a third derivative
feeds a downstream formula).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import sampling
from .errors import (ContractViolationError, LowSmoothnessError,
                     NotSelfMapError, UnknownCatalogueIdError)
from .series import MobiusMap, cayley, cayley_inverse, mobius_compose

_HALF = 2 * np.pi


@dataclass(frozen=True)
class BoundaryJet:
    """Value and derivatives of a symbol at a unimodular point.

    ``method`` is "exact" when the constructor supplied closed forms and
    "radial_extrapolation" otherwise; ``uncertainty`` maps derivative order
    to the recorded estimate spread (empty for exact jets).
    """

    zeta: complex
    phi_at: complex
    d1: complex
    d2: complex
    d3: complex | None = None
    method: str = "exact"
    uncertainty: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if abs(abs(self.zeta) - 1.0) > 1e-12:
            raise ContractViolationError("jet base point must be unimodular")
        if abs(self.phi_at - self.zeta) < 1e-8:
            # boundary fixed point: the angular derivative is real positive
            if not (self.d1.real > 0 and abs(self.d1.imag) <= 1e-8 * max(1.0, abs(self.d1))):
                raise ContractViolationError(
                    f"derivative at a boundary fixed point must be real positive, got {self.d1}")


@dataclass(frozen=True)
class Symbol:
    """An evaluatable analytic self-map of the unit disc."""

    eval: Callable
    kind: str  # "mobius" | "halfplane_built" | "closed_form"
    exact_jet: BoundaryJet | None = None
    domain_note: str = ""
    catalogue_id: str | None = None
    injective_witnessed: bool = False
    mobius: MobiusMap | None = None

    def __post_init__(self):
        pts = sampling.disc_points(256)
        vals = np.asarray(self.eval(pts), dtype=complex)
        if not np.all(np.isfinite(vals)) or np.max(np.abs(vals)) >= 1.0:
            raise NotSelfMapError(
                "evaluator is not a self-map of the disc on a 256-point sample")
        if self.exact_jet is not None and abs(abs(self.exact_jet.phi_at) - 1.0) > 1e-10:
            raise ContractViolationError("exact jet value must be unimodular")

    def __call__(self, z):
        return self.eval(z)


@dataclass(frozen=True)
class Weight:
    """A bounded analytic function used as the multiplier of a weighted
    composition operator.

    ``lipschitz_at_1`` asserts that the radial limit function exists on an
    arc around 1 and is differentiable at 1 (the hypothesis under which the
    recentered weight induces a Hilbert-Schmidt perturbation).
    """

    eval: Callable
    boundary_value_at_1: complex | None = None
    lipschitz_at_1: bool = False
    catalogue_id: str | None = None

    def __post_init__(self):
        pts = sampling.disc_points(256)
        vals = np.asarray(self.eval(pts), dtype=complex)
        if not np.all(np.isfinite(vals)):
            raise ContractViolationError("weight evaluator returned non-finite values")
        if self.boundary_value_at_1 is not None:
            g1 = self.boundary_value_at_1
            far = abs(complex(self.eval(1 - 2.0 ** -8)) - g1)
            near = abs(complex(self.eval(1 - 2.0 ** -18)) - g1)
            if not (near < 1e-3 and near <= 0.5 * far + 1e-12):
                raise ContractViolationError(
                    "radial samples do not converge to the declared boundary value at 1")

    def __call__(self, z):
        return self.eval(z)

    def sup_estimate(self) -> float:
        pts = sampling.disc_points(512, radius=0.999)
        return float(np.max(np.abs(self.eval(pts))))


# ---------------------------------------------------------------------------
# half-plane builder


@dataclass(frozen=True)
class GammaTerm:
    """One decay term beta/(w+1)^gamma of a half-plane representation."""

    beta: complex
    gamma: float

    def __post_init__(self):
        if self.gamma < 1.0:
            raise ContractViolationError("decay exponents below 1 are not supported")


def _halfplane_map(slope, constant, terms):
    def Phi(w):
        out = slope * np.asarray(w, dtype=complex) + constant
        for t in terms:
            out = out + t.beta * (np.asarray(w, dtype=complex) + 1.0) ** (-t.gamma)
        return out
    return Phi


def make_halfplane_symbol(slope: float, constant: complex,
                          gamma_terms: Sequence = ()) -> Symbol:
    """Build a disc self-map from its right-half-plane representation.

    The half-plane map is ``F(w) = slope*w + constant + G(w)`` with
    ``G(w) = sum_j beta_j (w+1)^{-gamma_j}`` and the symbol is the Cayley
    conjugate of F.  Slope convention: ``slope`` multiplies w, so the
    boundary derivative of the resulting symbol at 1 is 1/slope.  The
    boundary jet at 1 follows in closed form from the expansion of F at
    infinity:

        phi'(1)  = 1/slope
        phi''(1) = (1 - slope + constant) / slope^2
        phi'''(1) = 6 (A^2 - d) / slope,  A = (1 - slope + constant)/(2 slope),
                    d = sum over exponent-1 terms of beta_j/(4 slope).

    Raises NotSelfMapError when Re F fails to stay positive on a 1024-point
    half-plane sample.
    """
    if not (slope > 0):
        raise ContractViolationError("slope must be a positive real")
    terms = tuple(t if isinstance(t, GammaTerm) else GammaTerm(*t) for t in gamma_terms)
    Phi = _halfplane_map(slope, constant, terms)

    fan = sampling.halfplane_fan()  # 1024 points
    re_phi = np.real(Phi(fan))
    if not np.all(np.isfinite(re_phi)) or np.min(re_phi) < -1e-12:
        raise NotSelfMapError(
            f"Re of the half-plane map dips to {np.min(re_phi):.3e}; "
            "it does not map the right half-plane into itself")

    T = cayley()
    Tinv = cayley_inverse()

    def eval_fn(z):
        z = np.asarray(z, dtype=complex)
        w = T.apply_array(z)
        return Tinv.apply_array(Phi(w))

    s = slope
    A = (1.0 - s + constant) / (2.0 * s)
    delta2 = sum(t.beta / (4.0 * s) for t in terms if t.gamma == 1.0)
    jet = BoundaryJet(
        zeta=1.0 + 0j,
        phi_at=1.0 + 0j,
        d1=1.0 / s + 0j,
        d2=2.0 * A / s,
        d3=6.0 * (A * A - delta2) / s,
        method="exact",
    )

    # univalence witness: the half-plane map is injective when Re F' > 0
    dphi = slope - sum(t.beta * t.gamma * (fan + 1.0) ** (-t.gamma - 1.0) for t in terms)
    injective = bool(np.min(np.real(np.atleast_1d(dphi))) > 0)

    mob = None
    if not terms:
        mob = mobius_compose(Tinv, mobius_compose(MobiusMap(slope, constant, 0, 1), T))
    return Symbol(eval=eval_fn, kind="halfplane_built", exact_jet=jet,
                  injective_witnessed=injective, mobius=mob,
                  domain_note=f"halfplane slope={slope} constant={constant} "
                              f"terms={[(t.beta, t.gamma) for t in terms]}")


def mobius_symbol(m: MobiusMap, jet_zeta: complex | None = None,
                  catalogue_id: str | None = None) -> Symbol:
    """Wrap a Möbius self-map as a Symbol, with an exact jet if requested."""
    if not m.self_map:
        raise NotSelfMapError("Möbius map is not a self-map of the disc")
    jet = None
    if jet_zeta is not None:
        val, d1, d2, d3 = m.jet_at(jet_zeta)
        jet = BoundaryJet(zeta=jet_zeta, phi_at=val, d1=d1, d2=d2, d3=d3)
    return Symbol(eval=m.apply_array, kind="mobius", exact_jet=jet,
                  mobius=m, catalogue_id=catalogue_id,
                  injective_witnessed=True)


def rotate_symbol(s: Symbol, lam: complex) -> Symbol:
    """Conjugate by the rotation z -> lam z: returns z -> conj(lam) s(lam z).

    Type classification is invariant under this conjugation; the jet moves
    to conj(lam)*zeta with d1 unchanged, d2 scaled by lam, d3 by lam^2.
    """
    if abs(abs(lam) - 1.0) > 1e-12:
        raise ContractViolationError("rotation factor must be unimodular")
    lam = complex(lam)
    base = s.eval

    def eval_fn(z):
        return np.conj(lam) * np.asarray(base(lam * np.asarray(z, dtype=complex)))

    jet = None
    if s.exact_jet is not None:
        j = s.exact_jet
        jet = BoundaryJet(zeta=np.conj(lam) * j.zeta, phi_at=np.conj(lam) * j.phi_at,
                          d1=j.d1, d2=lam * j.d2,
                          d3=None if j.d3 is None else lam * lam * j.d3,
                          method=j.method)
    return Symbol(eval=eval_fn, kind="closed_form", exact_jet=jet,
                  domain_note=f"rotation conjugate of ({s.domain_note})")


# ---------------------------------------------------------------------------
# radial jets


def _radial_fit(f, zeta, m_lo=3, m_hi=16, degree=4):
    """Sliding-window polynomial fits of f(zeta(1-h)) on the ladder h = 2^-m.

    Each window solves the degree-``degree`` model exactly on normalized
    nodes (a Richardson-type elimination of successive orders); returns the
    per-window coefficient rows and the ladder.
    """
    hs = np.array([2.0 ** -m for m in range(m_lo, m_hi + 1)])
    vals = np.asarray([complex(f(zeta * (1.0 - h))) for h in hs])
    win = degree + 1
    rows = []
    for i in range(len(hs) - win + 1):
        nodes = hs[i:i + win] / hs[i]
        V = np.vander(nodes, win, increasing=True)
        c = np.linalg.solve(V, vals[i:i + win])
        rows.append(c / hs[i] ** np.arange(win))
    return np.array(rows), hs


def boundary_jet(s: Symbol, zeta: complex, require_d3: bool = False) -> BoundaryJet:
    """Jet of a symbol at a unimodular point.

    Returns the stored exact jet when it matches ``zeta``; otherwise fits
    the Taylor expansion through radial samples zeta(1-2^-m).  The window
    whose first- and second-derivative estimates stabilize best is chosen
    and the spread across windows is recorded as the uncertainty.  A spread
    beyond 1e-4 on the value or first two derivatives raises
    LowSmoothnessError naming the first failing order; a third derivative
    that fails to stabilize is dropped (or raises, if ``require_d3``).
    """
    if abs(abs(zeta) - 1.0) > 1e-10:
        raise ContractViolationError("jet point must be unimodular")
    if s.exact_jet is not None and abs(s.exact_jet.zeta - zeta) < 1e-12:
        return s.exact_jet

    rows, hs = _radial_fit(s.eval, zeta)
    zc = complex(zeta)
    # c_k of the h-expansion -> derivative orders: f(zeta(1-h)) so each h
    # derivative carries a factor (-zeta)
    best = None
    for i in range(1, len(rows)):
        delta = np.abs(rows[i] - rows[i - 1])
        score = delta[1] + delta[2]
        if best is None or score < best[0]:
            best = (score, i, delta)
    _, i, delta = best
    c = rows[i]

    spread = {0: delta[0], 1: delta[1], 2: 2.0 * delta[2], 3: 6.0 * delta[3]}
    for order in (0, 1, 2):
        if spread[order] > 1e-4:
            raise LowSmoothnessError(
                f"radial estimates for derivative order {order} differ by "
                f"{spread[order]:.2e} (> 1e-4)", order=order)
    d3 = -6.0 * c[3] / zc ** 3
    if spread[3] > 1e-4:
        if require_d3:
            raise LowSmoothnessError(
                f"radial estimates for derivative order 3 differ by "
                f"{spread[3]:.2e} (> 1e-4)", order=3)
        d3 = None
    return BoundaryJet(zeta=zc, phi_at=c[0], d1=-c[1] / zc, d2=2.0 * c[2] / zc ** 2,
                       d3=d3, method="radial_extrapolation",
                       uncertainty={k: float(v) for k, v in spread.items()})


def schwarzian_at(s: Symbol, zeta: complex) -> complex:
    """Schwarzian derivative at a boundary point, assembled from the jet:
    d3/d1 - (3/2)(d2/d1)^2."""
    jet = boundary_jet(s, zeta, require_d3=True)
    if jet.d3 is None:
        raise ContractViolationError("third derivative unavailable at this point")
    ratio = jet.d2 / jet.d1
    return jet.d3 / jet.d1 - 1.5 * ratio * ratio


# ---------------------------------------------------------------------------
# catalogue


def _sqrt_hyperbolic() -> Symbol:
    def eval_fn(z):
        return 2.0 / (np.sqrt(13.0 - 4.0 * np.asarray(z, dtype=complex)) - 1.0)
    jet = BoundaryJet(zeta=1.0 + 0j, phi_at=1.0 + 0j, d1=1 / 3 + 0j,
                      d2=8 / 27 + 0j, d3=34 / 81 + 0j)
    return Symbol(eval=eval_fn, kind="closed_form", exact_jet=jet,
                  catalogue_id="sqrt_hyperbolic", injective_witnessed=True,
                  domain_note="2/(sqrt(13-4z)-1), analytic on the closed disc")


def _quadratic_dilation() -> Symbol:
    def eval_fn(z):
        z = np.asarray(z, dtype=complex)
        return (2 * z * z - 3 * z + 3) / (2 * z * z - 7 * z + 7)
    jet = BoundaryJet(zeta=1.0 + 0j, phi_at=1.0 + 0j, d1=2.0 + 0j,
                      d2=6.0 + 0j, d3=15.0 + 0j)
    return Symbol(eval=eval_fn, kind="closed_form", exact_jet=jet,
                  catalogue_id="quadratic_dilation", injective_witnessed=False,
                  domain_note="(2z^2-3z+3)/(2z^2-7z+7), interior fixed point 1/2")


def _halfplane_parabolic() -> Symbol:
    s = make_halfplane_symbol(1.0, 2.0 + 1.0j,
                              [GammaTerm(-0.25, 1.0), GammaTerm(-0.25, 1.5)])
    return Symbol(eval=s.eval, kind=s.kind, exact_jet=s.exact_jet,
                  catalogue_id="halfplane_parabolic",
                  injective_witnessed=s.injective_witnessed,
                  domain_note=s.domain_note)


def _cusp_weight() -> Weight:
    def eval_fn(z):
        return 3.0 ** -0.5 + (1.0 - np.asarray(z, dtype=complex)) ** 1.5
    return Weight(eval=eval_fn, boundary_value_at_1=3.0 ** -0.5,
                  lipschitz_at_1=True, catalogue_id="cusp_weight")


def _cubic_weight() -> Weight:
    def eval_fn(z):
        return (3.0 - 2.0 * np.asarray(z, dtype=complex)) ** 3
    return Weight(eval=eval_fn, boundary_value_at_1=1.0 + 0j,
                  lipschitz_at_1=True, catalogue_id="cubic_weight")


def _sqrt5_weight() -> Weight:
    def eval_fn(z):
        return 1j * np.sqrt(5.0 - np.asarray(z, dtype=complex))
    return Weight(eval=eval_fn, boundary_value_at_1=2.0j,
                  lipschitz_at_1=True, catalogue_id="sqrt5_weight")


_CATALOGUE = {
    "sqrt_hyperbolic": _sqrt_hyperbolic,
    "quadratic_dilation": _quadratic_dilation,
    "halfplane_parabolic": _halfplane_parabolic,
    "cusp_weight": _cusp_weight,
    "cubic_weight": _cubic_weight,
    "sqrt5_weight": _sqrt5_weight,
}

CATALOGUE_IDS = tuple(sorted(_CATALOGUE))
SYMBOL_IDS = ("sqrt_hyperbolic", "quadratic_dilation", "halfplane_parabolic")
WEIGHT_IDS = ("cusp_weight", "cubic_weight", "sqrt5_weight")


def catalogue_entry(entry_id: str):
    """Fetch a validated Symbol or Weight from the built-in catalogue."""
    try:
        return _CATALOGUE[entry_id]()
    except KeyError:
        raise UnknownCatalogueIdError(
            f"unknown catalogue id {entry_id!r}; known: {', '.join(CATALOGUE_IDS)}") from None


# ---------------------------------------------------------------------------
# eigenfunction families and their companion maps


def disc_scaling_automorphism(p: float) -> MobiusMap:
    """The hyperbolic automorphism conjugate (through the Cayley transform)
    to w -> p w.  Fixes 1 and -1; the derivative at 1 is 1/p."""
    if not (p > 0) or p == 1.0:
        raise ContractViolationError("scaling factor must be positive and != 1")
    return MobiusMap(p + 1, p - 1, p - 1, p + 1)


def sector_translation(a: complex, theta: float) -> Symbol:
    """Self-map conjugate to w -> w + a through the sector map
    ((1+z)/(1-z))^(2 theta/pi); requires |arg a| < theta <= pi/2."""
    if not (0 < theta <= np.pi / 2):
        raise ContractViolationError("sector parameter must lie in (0, pi/2]")
    if abs(np.angle(a)) >= theta:
        raise ContractViolationError("translation must satisfy |arg a| < theta")
    e = 2.0 * theta / np.pi

    def eval_fn(z):
        z = np.asarray(z, dtype=complex)
        t = ((1.0 + z) / (1.0 - z)) ** e
        s = (t + a) ** (1.0 / e)
        return (s - 1.0) / (s + 1.0)

    return Symbol(eval=eval_fn, kind="closed_form",
                  domain_note=f"sector translation a={a} theta={theta}")


def angular_power_function(b: complex) -> Callable:
    """((1+z)/(1-z))^b; lies in H² for |Re b| < 1/2 and is an eigenfunction
    of composition with a scaling automorphism."""
    if abs(np.real(b)) >= 0.5:
        raise ContractViolationError("membership in H² needs |Re b| < 1/2")

    def eval_fn(z):
        z = np.asarray(z, dtype=complex)
        return np.exp(b * np.log((1.0 + z) / (1.0 - z)))
    return eval_fn


def sector_exponential(beta: complex, theta: float) -> Callable:
    """exp(-beta ((1+z)/(1-z))^(2 theta/pi)); bounded when |arg beta| <=
    pi/2 - theta, and an eigenfunction of the sector translation family."""
    if abs(np.angle(beta)) > np.pi / 2 - theta + 1e-12:
        raise ContractViolationError("decay parameter must satisfy |arg beta| <= pi/2 - theta")
    e = 2.0 * theta / np.pi

    def eval_fn(z):
        z = np.asarray(z, dtype=complex)
        return np.exp(-beta * ((1.0 + z) / (1.0 - z)) ** e)
    return eval_fn


def halfplane_exponential(t: float) -> Callable:
    """exp(-t (1+z)/(1-z)), the unit singular function to the power t."""
    if t < 0:
        raise ContractViolationError("exponent must be nonnegative")

    def eval_fn(z):
        z = np.asarray(z, dtype=complex)
        return np.exp(-t * (1.0 + z) / (1.0 - z))
    return eval_fn
