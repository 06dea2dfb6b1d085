"""Analytic wavefunctions, normalization constant, overlaps and uncertainties.

The state D(alpha)S(xi)|0> is an exact complex Gaussian in both position and
momentum space.  Writing w_minus = cosh r - e^{i phi} sinh r and
w_plus = cosh r + e^{i phi} sinh r, the position-space quadratic coefficient
is -(m omega/2 hbar) * w_plus/w_minus and the momentum-space one has the
ratio inverted.  Both w_plus and w_minus have real part >= e^{-r} > 0, so
principal-branch square roots apply throughout with no continuity tracking.

The overall phase follows the rationalized-denominator convention, with the
displacement cross phase e^{-i x0 p0 / 2 hbar} in position space and its
conjugate in momentum space.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .core import GaussianWaveform, OscillatorFrame, SqueezedCoherentSpec


@dataclass(frozen=True)
class UncertaintyReport:
    delta_x: float
    delta_p: float
    product: float
    is_minimal: bool
    time: float = 0.0


def _w_minus(r: float, phi: float) -> complex:
    return math.cosh(r) - cmath.exp(1j * phi) * math.sinh(r)


def _w_plus(r: float, phi: float) -> complex:
    return math.cosh(r) + cmath.exp(1j * phi) * math.sinh(r)


def position_wavefunction(spec: SqueezedCoherentSpec,
                          frame: OscillatorFrame = OscillatorFrame()) -> GaussianWaveform:
    """Exact position-space Gaussian of the squeezed-coherent state."""
    m, w, hb = frame.mass, frame.omega, frame.hbar
    wm = _w_minus(spec.r, spec.phi)
    ratio = _w_plus(spec.r, spec.phi) / wm
    k = m * w / (2.0 * hb)
    c2 = -ratio * k
    c1 = 2.0 * k * ratio * spec.x0 + 1j * spec.p0 / hb
    log_pref = (0.25 * math.log(m * w / (math.pi * hb))
                - 0.5 * cmath.log(wm)
                - 0.5j * spec.x0 * spec.p0 / hb)
    c0 = log_pref - ratio * k * spec.x0**2
    return GaussianWaveform(c2=c2, c1=c1, c0=c0)


def momentum_wavefunction(spec: SqueezedCoherentSpec,
                          frame: OscillatorFrame = OscillatorFrame()) -> GaussianWaveform:
    """Exact momentum-space Gaussian; Fourier partner of position_wavefunction."""
    m, w, hb = frame.mass, frame.omega, frame.hbar
    wp = _w_plus(spec.r, spec.phi)
    ratio = _w_minus(spec.r, spec.phi) / wp
    k = 1.0 / (2.0 * m * w * hb)
    c2 = -ratio * k
    c1 = 2.0 * k * ratio * spec.p0 - 1j * spec.x0 / hb
    log_pref = (0.25 * math.log(1.0 / (math.pi * m * w * hb))
                - 0.5 * cmath.log(wp)
                + 0.5j * spec.x0 * spec.p0 / hb)
    c0 = log_pref - ratio * k * spec.p0**2
    return GaussianWaveform(c2=c2, c1=c1, c0=c0)


def normalization_phase_constant(spec: SqueezedCoherentSpec,
                                 frame: OscillatorFrame = OscillatorFrame()) -> complex:
    """Constant multiplying exp(-ratio*(m w/2 hbar)(x-x0)^2 + i p0 x/hbar).

    Equals e^{-i x0 p0/2 hbar} (m omega / pi hbar)^{1/4} / sqrt(w_minus); the
    modulus is the normalization and the rest is the fixed phase convention.
    """
    m, w, hb = frame.mass, frame.omega, frame.hbar
    wm = _w_minus(spec.r, spec.phi)
    return ((m * w / (math.pi * hb)) ** 0.25
            * cmath.exp(-0.5j * spec.x0 * spec.p0 / hb)
            / cmath.sqrt(wm))


def ground_overlap(spec: SqueezedCoherentSpec,
                   frame: OscillatorFrame = OscillatorFrame()) -> complex:
    """<0|D(alpha)S(xi)|0> in closed form."""
    alpha = spec.alpha(frame)
    t = cmath.exp(1j * spec.phi) * math.tanh(spec.r)
    return cmath.exp(-0.5 * (abs(alpha) ** 2 + t * alpha.conjugate() ** 2)) \
        / math.sqrt(math.cosh(spec.r))


def uncertainties(spec: SqueezedCoherentSpec,
                  frame: OscillatorFrame = OscillatorFrame(),
                  t: float = 0.0, tol: float = 1e-12) -> UncertaintyReport:
    """Position/momentum standard deviations at time t.

    Free evolution only rotates the squeeze angle: phi -> phi - 2 omega t.
    """
    theta = spec.phi - 2.0 * frame.omega * t
    c2r, s2r = math.cosh(2.0 * spec.r), math.sinh(2.0 * spec.r)
    dx = math.sqrt(frame.hbar / (2.0 * frame.mass * frame.omega)) \
        * math.sqrt(c2r - s2r * math.cos(theta))
    dp = math.sqrt(frame.hbar * frame.mass * frame.omega / 2.0) \
        * math.sqrt(c2r + s2r * math.cos(theta))
    product = dx * dp
    return UncertaintyReport(
        delta_x=dx, delta_p=dp, product=product,
        is_minimal=abs(product - frame.hbar / 2.0) <= tol, time=t,
    )


def minimum_uncertainty_residual(spec: SqueezedCoherentSpec,
                                 frame: OscillatorFrame = OscillatorFrame(),
                                 t: float = 0.0) -> float:
    """Delta x * Delta p - hbar/2, computed in a form that is >= 0 exactly.

    The product equals (hbar/2) sqrt(1 + sinh^2(2r) sin^2(phi - 2 omega t)),
    so the residual vanishes precisely when phi - 2 omega t is 0 or pi mod 2pi.
    """
    theta = spec.phi - 2.0 * frame.omega * t
    s = math.sinh(2.0 * spec.r) * math.sin(theta)
    return 0.5 * frame.hbar * (math.sqrt(1.0 + s * s) - 1.0)
