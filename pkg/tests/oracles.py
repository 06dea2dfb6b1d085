"""Independent reference implementations used only as test oracles.

These deliberately avoid the code paths they check: Hermite values come from
extended-precision polynomial evaluation, matrix exponentials from Taylor
summation in mpmath, Fourier transforms from dense quadrature, and state
amplitudes from the eigenvalue recursion run in mpmath arithmetic.
"""

import math

import mpmath as mp
import numpy as np


def hermite_poly_exact(n, x_mp):
    """H_n(x) by the raw polynomial recurrence in mpmath arithmetic."""
    h_prev = mp.mpf(1)
    if n == 0:
        return h_prev
    h = 2 * x_mp
    for k in range(1, n):
        h, h_prev = 2 * x_mp * h - 2 * k * h_prev, h
    return h


def ho_eigenfunction_exact(n, x, dps=60):
    """phi_n(x) in the unit frame via extended-precision direct evaluation."""
    with mp.workdps(dps):
        xm = mp.mpf(x)
        val = (hermite_poly_exact(n, xm)
               * mp.exp(-xm * xm / 2)
               / mp.sqrt(mp.mpf(2) ** n * mp.factorial(n) * mp.sqrt(mp.pi)))
        return float(val)


def laguerre_half_exact(n, y, dps=50):
    """L_n^(-1/2)(y) from H_{2n} through the even-index conversion."""
    with mp.workdps(dps):
        ym = mp.mpf(y)
        h2n = hermite_poly_exact(2 * n, mp.sqrt(ym))
        val = h2n / ((-1) ** n * mp.mpf(2) ** (2 * n) * mp.factorial(n))
        return float(val)


def kummer_exact(a, c, z):
    return complex(mp.hyp1f1(a, c, complex(z)))


def expm_taylor_column(gen, col=0, dps=40):
    """Taylor-summed e^gen applied to a basis vector, in mpmath arithmetic."""
    n = gen.shape[0]
    with mp.workdps(dps):
        g = [[mp.mpc(gen[i, j]) for j in range(n)] for i in range(n)]
        vec = [mp.mpc(0)] * n
        vec[col] = mp.mpc(1)
        total = vec[:]
        scale = max(abs(gen).sum(axis=0).max(), 1.0)
        terms = int(4 * scale + 60)
        for k in range(1, terms):
            nxt = [mp.mpc(0)] * n
            for i in range(n):
                acc = mp.mpc(0)
                for j in range(n):
                    if g[i][j] != 0:
                        acc += g[i][j] * vec[j]
                nxt[i] = acc / k
            vec = nxt
            total = [t + v for t, v in zip(total, vec)]
            if max(abs(v) for v in vec) < mp.mpf(10) ** (-dps):
                break
        return np.array([complex(t) for t in total])


def expm_taylor_small(gen, dps=40):
    """Full e^gen by Taylor summation (small matrices only)."""
    n = gen.shape[0]
    cols = [expm_taylor_column(gen, c, dps) for c in range(n)]
    return np.stack(cols, axis=1)


def coherent_amplitudes(alpha, N):
    """e^{-|a|^2/2} alpha^n / sqrt(n!) without overflow."""
    n = np.arange(N)
    mag = np.abs(alpha)
    if mag == 0:
        out = np.zeros(N, complex)
        out[0] = 1.0
        return out
    from scipy.special import gammaln
    logmag = n * math.log(mag) - 0.5 * gammaln(n + 1.0) - mag**2 / 2.0
    phase = np.exp(1j * n * np.angle(alpha))
    return np.exp(logmag) * phase


def squeezed_vacuum_amplitudes(r, phi, N):
    """Closed form: c_{2k} = (-e^{i phi} tanh r)^k sqrt((2k)!)/(2^k k!)/sqrt(cosh r)."""
    from scipy.special import gammaln
    out = np.zeros(N, complex)
    k = np.arange((N - 1) // 2 + 1)
    logs = 0.5 * gammaln(2 * k + 1.0) - k * math.log(2.0) - gammaln(k + 1.0)
    t = -np.exp(1j * phi) * math.tanh(r)
    out[2 * k] = t**k * np.exp(logs) / math.sqrt(math.cosh(r))
    return out


def squeezed_coherent_amplitudes_mp(r, phi, alpha, N, dps=40):
    """Amplitudes of the displaced-squeezed state from the annihilation
    condition, run as a recursion in mpmath (drift-free reference)."""
    with mp.workdps(dps):
        C, S = mp.cosh(r), mp.sinh(r)
        e = mp.exp(1j * mp.mpf(phi))
        al = mp.mpc(alpha)
        c0 = (mp.exp(-(abs(al) ** 2 + e * mp.tanh(r) * mp.conj(al) ** 2) / 2)
              / mp.sqrt(C))
        c = [c0]
        if N > 1:
            c.append((C * al + S * e * mp.conj(al)) * c0 / C)
        for n in range(1, N - 1):
            nxt = ((C * al + S * e * mp.conj(al)) * c[n]
                   - S * e * mp.sqrt(n) * c[n - 1]) / (C * mp.sqrt(n + 1))
            c.append(nxt)
        return np.array([complex(v) for v in c])


def fourier_transform_quadrature(psi, x_grid, p_grid, hbar=1.0):
    """(2 pi hbar)^{-1/2} integral e^{-i p x/hbar} psi(x) dx by fine trapezoid."""
    x = np.asarray(x_grid)
    vals = np.asarray(psi, dtype=complex)
    out = np.empty(len(p_grid), dtype=complex)
    for i, p in enumerate(p_grid):
        integrand = np.exp(-1j * p * x / hbar) * vals
        out[i] = np.trapezoid(integrand, x) / math.sqrt(2 * math.pi * hbar)
    return out


def density_moments_quadrature(f, lo, hi, points=200001):
    """(norm, mean, variance) of |f|^2 on [lo, hi] by fine Simpson sums."""
    x = np.linspace(lo, hi, points)
    dens = np.abs(np.asarray(f(x), dtype=complex)) ** 2
    from scipy.integrate import simpson
    norm_sq = simpson(dens, x=x)
    mean = simpson(x * dens, x=x) / norm_sq
    second = simpson(x * x * dens, x=x) / norm_sq
    return math.sqrt(norm_sq), mean, second - mean**2
