"""Free time evolution, pairwise overlaps, and animation-frame generation.

Evolution under the oscillator Hamiltonian only rotates parameters:
xi -> xi e^{-2 i omega t} and alpha -> alpha e^{-i omega t}, with a global
phase e^{-i omega t/2}.  In real variables that is phi -> phi - 2 omega t and
a classical phase-space rotation of (x0, p0).  The rotation angle is reduced
mod 2 pi before any trigonometry, so evolving by an exact multiple of the
period reproduces the spec bit for bit.

The global phase is carried explicitly in the snapshot rather than folded
into waveforms, so cross-method comparisons can be phase-aligned on purpose.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import closedform
from .core import (GaussianWaveform, OscillatorFrame, SampledWavefunction,
                   SqueezedCoherentSpec, TWO_PI)
from .closedform import UncertaintyReport


@dataclass(frozen=True)
class EvolutionSnapshot:
    time: float
    spec: SqueezedCoherentSpec
    global_phase: complex
    uncertainty: UncertaintyReport


@dataclass(frozen=True)
class AnimationFrame:
    """One time slice: dimensionless waveforms plus the fluctuation bands."""

    time: float
    position: SampledWavefunction
    momentum: SampledWavefunction
    x_band: tuple           # (center - dx, center + dx) in units of x_scale
    p_band: tuple
    global_phase: complex


def evolve(spec: SqueezedCoherentSpec, frame: OscillatorFrame,
           t: float) -> EvolutionSnapshot:
    """Snapshot of the state at time t under free oscillation."""
    theta = math.fmod(frame.omega * t, TWO_PI)
    ct, st = math.cos(theta), math.sin(theta)
    x0 = spec.x0 * ct + (spec.p0 / (frame.mass * frame.omega)) * st
    p0 = spec.p0 * ct - frame.mass * frame.omega * spec.x0 * st
    evolved = SqueezedCoherentSpec(r=spec.r, phi=spec.phi - 2.0 * theta, x0=x0, p0=p0)
    half = 0.5 * math.fmod(frame.omega * t, 2.0 * TWO_PI)   # phase has period 4 pi
    phase = complex(math.cos(half), -math.sin(half))
    report = dataclasses.replace(
        closedform.uncertainties(evolved, frame, t=0.0), time=t)
    return EvolutionSnapshot(time=t, spec=evolved, global_phase=phase,
                             uncertainty=report)


def overlap(spec_a: SqueezedCoherentSpec, spec_b: SqueezedCoherentSpec,
            frame: OscillatorFrame = OscillatorFrame()) -> complex:
    """<a|b> as the closed Gaussian integral of the position waveforms.

    The bra conjugates waveform a, so overlap(a, b) == conj(overlap(b, a)).
    """
    ga = closedform.position_wavefunction(spec_a, frame)
    gb = closedform.position_wavefunction(spec_b, frame)
    c2 = np.conj(ga.c2) + gb.c2
    c1 = np.conj(ga.c1) + gb.c1
    c0 = np.conj(ga.c0) + gb.c0
    # integral of exp(c0 + c1 x + c2 x^2); Re(c2) < 0 always holds here
    return complex(np.sqrt(np.pi / (-c2)) * np.exp(c0 - c1 * c1 / (4.0 * c2)))


def uncertainty_trajectory(spec: SqueezedCoherentSpec, frame: OscillatorFrame,
                           times: Sequence[float]):
    """Uncertainty reports along a list of times; the pattern repeats with
    period pi/omega."""
    return [closedform.uncertainties(spec, frame, t=float(t)) for t in times]


def _dimensionless(g: GaussianWaveform, scale: float, grid_units: np.ndarray,
                   kind: str, meta: dict) -> SampledWavefunction:
    # psi_tilde(u) = sqrt(scale) * psi(u * scale) keeps unit norm in du
    values = math.sqrt(scale) * g(grid_units * scale)
    return SampledWavefunction(kind=kind, grid=grid_units, values=values, meta=meta)


def animation_frames(spec: SqueezedCoherentSpec, frame: OscillatorFrame,
                     times: Sequence[float], grid_x, grid_p):
    """Dimensionless position/momentum waveforms with fluctuation bands.

    ``grid_x`` and ``grid_p`` are in units of x_scale and p_scale.  Bands are
    [mean - delta, mean + delta] per quadrature in the same units.  The
    emitted waveform of the evolved spec does not include the global phase;
    the phase rides along separately in each frame.
    """
    grid_x = np.asarray(grid_x, dtype=float)
    grid_p = np.asarray(grid_p, dtype=float)
    out = []
    for i, t in enumerate(times):
        snap = evolve(spec, frame, float(t))
        meta = {
            "method": "closedform",
            "time": float(t),
            "spec": {"r": snap.spec.r, "phi": snap.spec.phi,
                     "x0": snap.spec.x0, "p0": snap.spec.p0},
        }
        pos = _dimensionless(closedform.position_wavefunction(snap.spec, frame),
                             frame.x_scale, grid_x, "position", meta)
        mom = _dimensionless(closedform.momentum_wavefunction(snap.spec, frame),
                             frame.p_scale, grid_p, "momentum", meta)
        u = snap.uncertainty
        xc = snap.spec.x0 / frame.x_scale
        pc = snap.spec.p0 / frame.p_scale
        dx = u.delta_x / frame.x_scale
        dp = u.delta_p / frame.p_scale
        out.append(AnimationFrame(
            time=float(t), position=pos, momentum=mom,
            x_band=(xc - dx, xc + dx), p_band=(pc - dp, pc + dp),
            global_phase=snap.global_phase,
        ))
    return out
