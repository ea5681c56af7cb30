"""Shared oracles for the test suite, independent of the library internals."""

from __future__ import annotations

import numpy as np

from alleemap import ModelParams


def random_valid_params(rng: np.random.Generator, n: int, beta_hi: float = 20.0) -> list[ModelParams]:
    """Draw admissible parameter sets (alpha + d0 <= 1 kept strict)."""
    alpha = rng.uniform(0.02, 0.95, n)
    d0 = rng.uniform(0.02, 1.0 - alpha)
    beta = rng.uniform(0.05, beta_hi, n)
    gamma = rng.uniform(0.05, 10.0, n)
    mu = rng.uniform(0.05, 1.0, n)
    return [
        ModelParams(alpha=float(a), beta=float(b), gamma=float(g), mu=float(m), d0=float(d))
        for a, b, g, m, d in zip(alpha, beta, gamma, mu, d0)
    ]


def fixed_point_quadratic(p: ModelParams, x):
    """Value of the positive-fixed-point quadratic, written out directly.

    Derivation oracle: substitute y = alpha*x/(mu*(1+x)) into the larvae
    fixed-point equation and clear denominators.
    """
    a = p.d0 * p.mu * (p.alpha + p.gamma * p.mu)
    b = p.mu * (p.d0 * p.gamma * p.mu + (p.alpha + p.d0) * (p.alpha + p.gamma * p.mu)) - p.alpha**2 * p.beta
    c = p.gamma * p.mu**2 * (p.alpha + p.d0)
    return (a * x + b) * x + c


def scan_positive_roots(p: ModelParams, x_hi: float, n_grid: int = 40_001) -> list[float]:
    """Positive roots of the quadratic by dense sign-change scan + bisection."""
    xs = np.linspace(0.0, x_hi, n_grid)
    vals = fixed_point_quadratic(p, xs)
    roots: list[float] = []
    for i in range(n_grid - 1):
        lo, hi = xs[i], xs[i + 1]
        flo, fhi = vals[i], vals[i + 1]
        if flo == 0.0 and lo > 0.0:
            roots.append(float(lo))
            continue
        if flo * fhi < 0.0:
            for _ in range(200):
                mid = 0.5 * (lo + hi)
                fmid = fixed_point_quadratic(p, mid)
                if fmid == 0.0:
                    lo = hi = mid
                    break
                if flo * fmid < 0.0:
                    hi, fhi = mid, fmid
                else:
                    lo, flo = mid, fmid
                if hi - lo <= 1e-13 * (1.0 + hi):
                    break
            root = 0.5 * (lo + hi)
            if root > 0.0:
                roots.append(float(root))
    return roots
