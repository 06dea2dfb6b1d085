"""Shared domain types, unit conventions, and stable special functions.

Everything here is pure and immutable: types are frozen dataclasses and the
operations have no internal state, so unrestricted concurrent use is safe.

Conventions used throughout the package:

* natural scales x_scale = sqrt(hbar/(m*omega)), p_scale = sqrt(m*omega*hbar),
* dimensionless coordinates written with a tilde in comments (xt = x/x_scale),
* complex square roots and logarithms are principal branch; every argument
  that arises here (cosh r +/- e^{i phi} sinh r and relatives) has strictly
  positive real part, so no branch tracking is needed.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

TWO_PI = 2.0 * math.pi


class SqueezeLabError(Exception):
    """Base class for package errors."""


class NonConvergence(SqueezeLabError):
    """A series evaluation exceeded its term cap without meeting tolerance."""


class NonNormalizable(SqueezeLabError):
    """Gaussian has Re(c2) >= 0, so |psi|^2 has no finite integral."""


class ToleranceNotMet(SqueezeLabError):
    """An adaptive numerical routine hit its refinement cap."""


class OverflowGuard(SqueezeLabError):
    """An intermediate value left the representable floating-point range."""


class WindowExceeded(SqueezeLabError):
    """Coordinate lies outside the validated accuracy window for this truncation."""


class HypothesisViolated(SqueezeLabError):
    """A precondition of an operator identity does not hold for the given inputs."""


class SingularFactorization(SqueezeLabError):
    """Disentangling coefficients are singular for the given parameters."""


class TruncationWarning(UserWarning):
    """Truncated-space construction leaks probability past the basis cutoff.

    The estimated leaked norm (amplitude-squared mass) is carried in
    ``leaked_norm``.
    """

    def __init__(self, message, leaked_norm=0.0):
        super().__init__(message)
        self.leaked_norm = float(leaked_norm)


@dataclass(frozen=True)
class OscillatorFrame:
    """Oscillator constants (m, omega, hbar) and the derived natural scales.

    The default is the dimensionless frame m = omega = hbar = 1 used for all
    desk-scale work; every operation accepts a general frame.
    """

    mass: float = 1.0
    omega: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if not (self.mass > 0 and self.omega > 0 and self.hbar > 0):
            raise ValueError("mass, omega and hbar must all be positive")

    @property
    def x_scale(self) -> float:
        return math.sqrt(self.hbar / (self.mass * self.omega))

    @property
    def p_scale(self) -> float:
        return math.sqrt(self.mass * self.omega * self.hbar)


@dataclass(frozen=True)
class SqueezedCoherentSpec:
    """Parameters of the state D(alpha) S(xi) |0>.

    The squeeze is xi = r e^{i phi} with r >= 0 and phi stored reduced to
    [0, 2 pi) (a value of exactly 2 pi maps to 0).  The displacement is kept
    as the real pair (x0, p0); alpha is frame dependent and obtained with
    :meth:`alpha`.
    """

    r: float = 0.0
    phi: float = 0.0
    x0: float = 0.0
    p0: float = 0.0

    def __post_init__(self):
        if not self.r >= 0:
            raise ValueError("squeeze magnitude r must be nonnegative")
        if not (math.isfinite(self.phi) and math.isfinite(self.x0) and math.isfinite(self.p0)):
            raise ValueError("phi, x0, p0 must be finite")
        object.__setattr__(self, "phi", math.fmod(self.phi, TWO_PI) % TWO_PI)

    @property
    def xi(self) -> complex:
        return self.r * cmath.exp(1j * self.phi)

    def alpha(self, frame: OscillatorFrame = OscillatorFrame()) -> complex:
        return complex(
            self.x0 / (math.sqrt(2.0) * frame.x_scale),
            self.p0 / (math.sqrt(2.0) * frame.p_scale),
        )

    @classmethod
    def from_alpha(cls, r, phi, alpha, frame: OscillatorFrame = OscillatorFrame()):
        alpha = complex(alpha)
        return cls(
            r=r,
            phi=phi,
            x0=alpha.real * math.sqrt(2.0) * frame.x_scale,
            p0=alpha.imag * math.sqrt(2.0) * frame.p_scale,
        )


@dataclass(frozen=True)
class GaussianWaveform:
    """Complex Gaussian psi(u) = exp(c0 + c1 u + c2 u^2).

    Normalizability requires Re(c2) < 0; that is checked where integrals are
    taken (``gaussian_norm_and_moments``), not at construction, so that
    deliberately bad coefficients can be probed.
    """

    c2: complex
    c1: complex
    c0: complex

    def __call__(self, u):
        u = np.asarray(u)
        return np.exp(self.c0 + self.c1 * u + self.c2 * u * u)

    @property
    def norm(self) -> float:
        return gaussian_norm_and_moments(self)[0]

    @property
    def center(self) -> float:
        return gaussian_norm_and_moments(self)[1]

    @property
    def width(self) -> float:
        return math.sqrt(gaussian_norm_and_moments(self)[2])

    @property
    def phase(self) -> complex:
        """Unimodular phase of psi at the density center."""
        val = complex(self.c0 + self.c1 * self.center + self.c2 * self.center**2)
        return cmath.exp(1j * val.imag)


@dataclass(frozen=True)
class FockVector:
    """Truncated state in the number basis; index n is the occupation."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amp = np.array(self.amplitudes, dtype=complex)
        if amp.ndim != 1 or amp.size < 1:
            raise ValueError("amplitudes must be a nonempty 1-d sequence")
        if not np.all(np.isfinite(amp)):
            raise ValueError("amplitudes must be finite")
        object.__setattr__(self, "amplitudes", amp)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def inner(self, other: "FockVector") -> complex:
        """<self|other> over the common dimension (bra conjugates self)."""
        k = min(self.dim, other.dim)
        return complex(np.vdot(self.amplitudes[:k], other.amplitudes[:k]))


@dataclass(frozen=True)
class SampledWavefunction:
    """Complex amplitudes on a coordinate grid plus provenance metadata."""

    kind: str                    # "position" or "momentum"
    grid: np.ndarray
    values: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in ("position", "momentum"):
            raise ValueError("kind must be 'position' or 'momentum'")
        grid = np.asarray(self.grid, dtype=float)
        values = np.asarray(self.values, dtype=complex)
        if grid.ndim != 1 or values.shape != grid.shape:
            raise ValueError("grid and values must be 1-d and of equal length")
        if grid.size >= 2 and not np.all(np.diff(grid) > 0):
            raise ValueError("grid must be strictly increasing")
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)


# ---------------------------------------------------------------------------
# oscillator eigenfunctions

def ho_eigenfunction(n: int, x, frame: OscillatorFrame = OscillatorFrame()):
    """Normalized oscillator eigenfunction phi_n(x).

    Uses the three-term recurrence on the *normalized* Hermite functions,
    which stays bounded for n into the thousands (raw Hermite polynomials
    overflow near n ~ 300).  Accepts scalar or array x.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    xt = np.asarray(x, dtype=float) / frame.x_scale
    table = hermite_function_table(n, xt)
    out = table[n] * (frame.mass * frame.omega / frame.hbar) ** 0.25
    return float(out) if np.isscalar(x) or np.asarray(x).ndim == 0 else out


def hermite_function_table(n_max: int, xt):
    """All normalized Hermite functions h_0..h_{n_max} at dimensionless xt.

    h_{n+1} = xt*sqrt(2/(n+1))*h_n - sqrt(n/(n+1))*h_{n-1}, started from the
    Gaussian h_0.  Returns an array of shape (n_max+1,) + xt.shape.
    """
    xt = np.atleast_1d(np.asarray(xt, dtype=float))
    table = np.empty((n_max + 1,) + xt.shape)
    table[0] = math.pi ** -0.25 * np.exp(-0.5 * xt * xt)
    if n_max >= 1:
        table[1] = math.sqrt(2.0) * xt * table[0]
    for k in range(1, n_max):
        table[k + 1] = xt * math.sqrt(2.0 / (k + 1)) * table[k] \
            - math.sqrt(k / (k + 1)) * table[k - 1]
        if not np.all(np.isfinite(table[k + 1])):
            raise OverflowGuard(f"Hermite recurrence left the finite range at n={k + 1}")
    return table


# ---------------------------------------------------------------------------
# Laguerre functions of order -1/2

def laguerre_half(n: int, y):
    """Generalized Laguerre polynomial L_n^(-1/2)(y) by stable recurrence.

    Satisfies H_{2n}(x) = (-1)^n 2^{2n} n! L_n^(-1/2)(x^2), which is how the
    even-index Hermite series is summed without factorial overflow.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = laguerre_half_table(n, y)[n]
    return float(out) if np.isscalar(y) or np.asarray(y).ndim == 0 else out


def laguerre_half_table(n_max: int, y):
    """L_0^(-1/2)..L_{n_max}^(-1/2) at y; shape (n_max+1,) + y.shape."""
    y = np.atleast_1d(np.asarray(y, dtype=float))
    table = np.empty((n_max + 1,) + y.shape)
    table[0] = 1.0
    if n_max >= 1:
        table[1] = 0.5 - y
    for n in range(1, n_max):
        table[n + 1] = ((2 * n + 0.5 - y) * table[n] - (n - 0.5) * table[n - 1]) / (n + 1)
    return table


# ---------------------------------------------------------------------------
# confluent hypergeometric function (test instrument for the resummation;
# production paths use the closed exponential)

def kummer_1f1(a: float, c: float, z: complex, tol: float = 1e-14,
               max_terms: int = 10000) -> complex:
    """1F1(a; c; z) by direct partial summation with a geometric tail guard.

    Stops once the running geometric bound on the tail falls below tol times
    the current magnitude.  Raises NonConvergence at the term cap.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if c <= 0 and c == int(c):
        raise ValueError("c must not be a nonpositive integer")
    z = complex(z)
    term = 1.0 + 0j
    total = term
    for n in range(max_terms):
        term *= (a + n) / ((c + n) * (n + 1)) * z
        total += term
        ratio = abs(z) * abs(a + n + 1) / (abs(c + n + 1) * (n + 2))
        if ratio < 1.0:
            tail = abs(term) * ratio / (1.0 - ratio)
            if tail <= tol * max(abs(total), 1.0):
                return total
    raise NonConvergence(f"1F1 did not converge within {max_terms} terms")


# ---------------------------------------------------------------------------
# Gaussian integrals

def gaussian_norm_and_moments(g: GaussianWaveform):
    """Closed-form (norm, mean, variance) of the density |psi|^2.

    |psi|^2 = exp(2 Re c0 + 2 Re c1 u + 2 Re c2 u^2) is a real Gaussian, so
    all three follow from completing the square.
    """
    a = -2.0 * g.c2.real           # decay rate of the density, must be > 0
    if a <= 0:
        raise NonNormalizable("Re(c2) must be negative for a normalizable Gaussian")
    b = 2.0 * g.c1.real
    c = 2.0 * g.c0.real
    norm_sq = math.sqrt(math.pi / a) * math.exp(c + b * b / (4.0 * a))
    mean = b / (2.0 * a)
    variance = 1.0 / (2.0 * a)
    return math.sqrt(norm_sq), mean, variance


def quadrature_integrate(f: Callable, interval: Sequence[float], tol: float,
                         max_levels: int = 48) -> complex:
    """Adaptive composite Simpson integral of a complex-valued f over [lo, hi].

    The integrand is evaluated on numpy arrays of points (all integrands in
    this package vectorize).  Subintervals are bisected until the Richardson
    error estimate meets the absolute target, allocated proportionally to
    width; exceeding ``max_levels`` raises ToleranceNotMet.
    """
    lo, hi = float(interval[0]), float(interval[1])
    if not (math.isfinite(lo) and math.isfinite(hi)) or hi <= lo:
        raise ValueError("interval must be finite with hi > lo")
    if tol <= 0:
        raise ValueError("tol must be positive")

    total_width = hi - lo
    a = np.array([lo])
    b = np.array([hi])
    fa = np.atleast_1d(np.asarray(f(a), dtype=complex))
    fb = np.atleast_1d(np.asarray(f(b), dtype=complex))
    mid = 0.5 * (a + b)
    fm = np.atleast_1d(np.asarray(f(mid), dtype=complex))
    coarse = (b - a) / 6.0 * (fa + 4.0 * fm + fb)

    result = 0.0 + 0.0j
    for _ in range(max_levels):
        lm = 0.5 * (a + mid)
        rm = 0.5 * (mid + b)
        flm = np.atleast_1d(np.asarray(f(lm), dtype=complex))
        frm = np.atleast_1d(np.asarray(f(rm), dtype=complex))
        left = (mid - a) / 6.0 * (fa + 4.0 * flm + fm)
        right = (b - mid) / 6.0 * (fm + 4.0 * frm + fb)
        fine = left + right
        err = np.abs(fine - coarse) / 15.0
        budget = tol * (b - a).real / total_width
        done = err <= budget
        # Richardson-extrapolated contribution for the converged intervals
        result += np.sum(fine[done] + (fine[done] - coarse[done]) / 15.0)
        if np.all(done):
            return complex(result)
        keep = ~done
        a = np.concatenate([a[keep], mid[keep]])
        b = np.concatenate([mid[keep], b[keep]])
        fa = np.concatenate([fa[keep], fm[keep]])
        fb = np.concatenate([fm[keep], fb[keep]])
        mid = np.concatenate([lm[keep], rm[keep]])
        fm = np.concatenate([flm[keep], frm[keep]])
        coarse = np.concatenate([left[keep], right[keep]])
    raise ToleranceNotMet(f"quadrature did not reach tol={tol} in {max_levels} levels")


# ---------------------------------------------------------------------------
# cross-method comparison helpers

def phase_align(reference, values) -> complex:
    """Unimodular factor z such that z*values best matches reference in L2."""
    ref = np.asarray(reference, dtype=complex)
    val = np.asarray(values, dtype=complex)
    ov = np.vdot(val, ref)
    if ov == 0:
        return 1.0 + 0.0j
    return ov / abs(ov)


def max_normalized_deviation(reference, values, align: bool = True) -> float:
    """max |values - reference| / max |reference|, optionally phase aligned."""
    ref = np.asarray(reference, dtype=complex)
    val = np.asarray(values, dtype=complex)
    if align:
        val = phase_align(ref, val) * val
    scale = np.abs(ref).max()
    if scale == 0:
        return float(np.abs(val).max())
    return float(np.abs(val - ref).max() / scale)
