"""Numerical verification of the operator identities in three representations.

The generator triple K0, K+, K- (number-quadratic, raising-quadratic,
lowering-quadratic) satisfies [K0, K+-] = +-K+- and [K+, K-] = -2 K0.  Every
identity checked here is representation independent: verified on the defining
2x2 matrices it holds for the 3x3 set and, up to truncation-boundary defects,
for the Fock realization K0 = (a^dag a + a a^dag)/4, K- = a^2/2,
K+ = (a^dag)^2/2.

Residuals are max absolute entry differences on the compared block,
normalized by the largest entry magnitude so they are scale free.  Fock
checks must pass a guard block that excludes the truncation boundary.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .core import HypothesisViolated, SingularFactorization
from .operator_engine import ladder_matrices, matrix_exponential


@dataclass(frozen=True)
class RepresentationTriple:
    k_plus: np.ndarray
    k_zero: np.ndarray
    k_minus: np.ndarray

    @property
    def dim(self) -> int:
        return self.k_zero.shape[0]

    def commutator_defects(self, block: int | None = None):
        """Residuals of the three algebra relations on the leading block."""
        k = self.dim if block is None else block
        d1 = commutator(self.k_zero, self.k_plus) - self.k_plus
        d2 = commutator(self.k_zero, self.k_minus) + self.k_minus
        d3 = commutator(self.k_plus, self.k_minus) + 2.0 * self.k_zero
        return tuple(float(np.abs(d[:k, :k]).max()) for d in (d1, d2, d3))


@dataclass(frozen=True)
class DisentangleCoefficients:
    """Exponents of the ordered product e^{a K+} e^{c K0} e^{b K-}."""

    a_plus: complex
    c_zero: complex
    b_minus: complex


class HadamardSum(NamedTuple):
    value: np.ndarray
    terminated: bool      # True when the nested commutators vanished exactly
    orders_used: int


def commutator(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    return A @ B - B @ A


def entry_residual(X: np.ndarray, Y: np.ndarray, block: int | None = None) -> float:
    """Scale-free residual: max entry difference over max entry magnitude."""
    k = X.shape[0] if block is None else block
    Xb, Yb = X[:k, :k], Y[:k, :k]
    scale = max(float(np.abs(Xb).max()), float(np.abs(Yb).max()), 1e-300)
    return float(np.abs(Xb - Yb).max()) / scale


def symplectic_rep(dim, N: int | None = None) -> RepresentationTriple:
    """The generator triple in the 2x2, 3x3 or Fock('fock', N) realization."""
    if dim == 2:
        k0 = np.array([[-0.5, 0.0], [0.0, 0.5]], dtype=complex)
        km = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
        kp = np.array([[0.0, 0.0], [-1.0, 0.0]], dtype=complex)
    elif dim == 3:
        s = math.sqrt(2.0)
        kp = s * np.array([[0, 1, 0], [0, 0, 1], [0, 0, 0]], dtype=complex)
        km = -s * np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0]], dtype=complex)
        k0 = np.diag([1.0, 0.0, -1.0]).astype(complex)
    elif dim == "fock":
        if N is None or N < 2:
            raise ValueError("fock representation needs N >= 2")
        a, ad = ladder_matrices(N)
        k0 = 0.25 * (ad.matrix @ a.matrix + a.matrix @ ad.matrix)
        km = 0.5 * (a.matrix @ a.matrix)
        kp = 0.5 * (ad.matrix @ ad.matrix)
    else:
        raise ValueError("dim must be 2, 3 or 'fock'")
    return RepresentationTriple(k_plus=kp, k_zero=k0, k_minus=km)


def ordered_product(coeffs: DisentangleCoefficients,
                    rep: RepresentationTriple) -> np.ndarray:
    """e^{a K+} e^{c K0} e^{b K-} in the given representation."""
    return (matrix_exponential(coeffs.a_plus * rep.k_plus)
            @ matrix_exponential(coeffs.c_zero * rep.k_zero)
            @ matrix_exponential(coeffs.b_minus * rep.k_minus))


def squeeze_generator(xi: complex, rep: RepresentationTriple) -> np.ndarray:
    return -xi * rep.k_plus + np.conj(xi) * rep.k_minus


def shifted_quadratic_generator(sign: int, phi: float, r: float,
                                rep: RepresentationTriple) -> np.ndarray:
    """-(t/2)(a^dag + sign*a)^2 written in the K basis, t = e^{i phi} tanh r."""
    t = cmath.exp(1j * phi) * math.tanh(r)
    return -t * (rep.k_plus + 2.0 * sign * rep.k_zero + rep.k_minus)


# ---------------------------------------------------------------------------

def exponential_conjugation(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """e^A B e^{-A} evaluated directly from the matrix exponentials.

    This is the closed form of the nested-commutator series; in truncated
    Fock space the series itself is numerically useless for strong generators
    (boundary junk is amplified by roughly |A| per order), while this product
    stays accurate on guarded blocks.
    """
    return matrix_exponential(A) @ np.asarray(B, dtype=complex) @ matrix_exponential(-A)


def hadamard_conjugation(A: np.ndarray, B: np.ndarray, order_cap: int = 40) -> HadamardSum:
    """e^A B e^{-A} as the nested-commutator series, up to order_cap.

    Detects exact termination (the next nested commutator vanishes), which
    distinguishes genuinely finite series from truncated infinite ones.
    """
    A = np.asarray(A, dtype=complex)
    term = np.asarray(B, dtype=complex)
    total = term.copy()
    scale = max(float(np.abs(term).max()), 1e-300)
    for k in range(1, order_cap + 1):
        term = commutator(A, term) / k
        tmax = float(np.abs(term).max())
        if tmax <= 1e-306 or tmax <= 1e-30 * scale:
            return HadamardSum(total, True, k)
        total += term
        scale = max(scale, float(np.abs(total).max()))
    return HadamardSum(total, False, order_cap)


def exponential_reordering_check(A: np.ndarray, B: np.ndarray, f_coeffs,
                                 block: int | None = None) -> float:
    """Residual of e^A f(B) = f(e^A B e^{-A}) e^A for a polynomial f."""
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    eA = matrix_exponential(A)
    eAinv = matrix_exponential(-A)
    Bc = eA @ B @ eAinv

    def poly(M):
        out = f_coeffs[0] * np.eye(M.shape[0], dtype=complex)
        P = np.eye(M.shape[0], dtype=complex)
        for c in f_coeffs[1:]:
            P = P @ M
            out += c * P
        return out

    lhs = eA @ poly(B)
    rhs = poly(Bc) @ eA
    return entry_residual(lhs, rhs, block)


def weyl_bch_check(A: np.ndarray, B: np.ndarray, block: int | None = None,
                   hypothesis_tol: float = 1e-13) -> float:
    """Residual of e^{A+B} = e^A e^B e^{-[A,B]/2}.

    Valid only when [A,B] commutes with both A and B; that hypothesis is
    verified first (on the compared block, scale free) and its violation
    raises rather than returning a meaningless residual.
    """
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    C = commutator(A, B)
    k = A.shape[0] if block is None else block
    scale = max(float(np.abs(A).max()), float(np.abs(B).max()), 1e-300) ** 2 \
        * max(float(np.abs(C).max()), 1e-300)
    for D, name in ((commutator(A, C), "[A,[A,B]]"), (commutator(B, C), "[B,[A,B]]")):
        defect = float(np.abs(D[:k, :k]).max())
        if defect > hypothesis_tol * max(scale, 1.0):
            raise HypothesisViolated(f"{name} is nonzero (max entry {defect:.2e})")
    lhs = matrix_exponential(A + B)
    rhs = matrix_exponential(A) @ matrix_exponential(B) @ matrix_exponential(-0.5 * C)
    return entry_residual(lhs, rhs, block)


def disentangle_squeeze(xi: complex) -> DisentangleCoefficients:
    """Coefficients factoring exp(-xi K+ + xi* K-) into the ordered product."""
    xi = complex(xi)
    if xi == 0:
        return DisentangleCoefficients(0.0j, 0.0j, 0.0j)
    mag = abs(xi)
    th = math.tanh(mag)
    return DisentangleCoefficients(
        a_plus=-(xi / mag) * th,
        c_zero=-2.0 * math.log(math.cosh(mag)),
        b_minus=(xi.conjugate() / mag) * th,
    )


def disentangle_shifted_quadratic(sign: int, phi: float, r: float) -> DisentangleCoefficients:
    """Coefficients factoring exp(-(t/2)(a^dag + sign*a)^2), t = e^{i phi} tanh r.

    sign=-1 is the (a^dag - a)^2 case with denominators (1 - t); sign=+1 the
    (a^dag + a)^2 case with (1 + t).  Both generators square to zero in the
    2x2 representation, which is what makes the closed coefficients exact.
    """
    if sign not in (-1, 1):
        raise ValueError("sign must be -1 or +1")
    t = cmath.exp(1j * phi) * math.tanh(r)
    if t == 0:
        return DisentangleCoefficients(0.0j, 0.0j, 0.0j)
    denom = 1.0 + sign * t
    if abs(denom) < 1e-300:
        # unreachable for real r, phi since |tanh r| < 1
        raise SingularFactorization("1 + sign*t vanished")
    val = -t / denom
    return DisentangleCoefficients(
        a_plus=val, c_zero=-2.0 * cmath.log(denom), b_minus=val,
    )


def closed_exponential_check(xi: complex) -> float:
    """Residual between expm([[0, xi*], [xi, 0]]) and its exact cosh/sinh form."""
    xi = complex(xi)
    if xi == 0:
        raise ValueError("xi must be nonzero (mag/phase split is undefined at 0)")
    M = np.array([[0.0, xi.conjugate()], [xi, 0.0]], dtype=complex)
    mag = abs(xi)
    exact = np.array([
        [math.cosh(mag), (xi.conjugate() / mag) * math.sinh(mag)],
        [(xi / mag) * math.sinh(mag), math.cosh(mag)],
    ], dtype=complex)
    return entry_residual(matrix_exponential(M), exact)
