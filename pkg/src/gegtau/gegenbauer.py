"""Gegenbauer (ultraspherical) polynomials in a Chebyshev-safe normalization.

We work with the one-parameter family orthogonal on (-1, 1) under the weight
``W(x) = (1 - x^2)^(gamma - 1/2)``, ``gamma > -1/2``, normalized so that

    G_0 = 1,   G_n = C_n^{(gamma)} / (2 gamma)   for n >= 1,

which stays finite in the Chebyshev limit ``gamma -> 0``:

    G_n^{(0)} = T_n / n,   G_n^{(1/2)} = P_n,   G_n^{(1)} = U_n / 2.

Key identities used throughout (all standard, stated in this normalization):

    (n+1) G_{n+1} = 2(n+gamma) x G_n - (n-1+2 gamma) G_{n-1},   n >= 2,
    with G_0 = 1, G_1 = x, G_2 = (gamma+1) x^2 - 1/2;

    d/dx G_{n+1}^{(gamma)} = 2 (gamma+1) G_n^{(gamma+1)};

    2 (n+gamma) G_n = d/dx [G_{n+1} - G_{n-1}]   (same-index derivative ladder);

    G_n(1) = (2g+n-1)(2g+n-2)...(2g+1) / n!,
    D^{k+1} G_n(1) / D^k G_n(1) = (2g+n+k)(n-k) / (2g+2k+1).

Endpoint quantities are evaluated from running products (never via Gamma
ratios, which are singular at gamma = 0) and returned as ``ScaledReal``;
interior evaluation uses the three-term recurrence in float64.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .scaled import ScaledReal

GAMMA_MIN = -0.5


def check_gamma(gamma: float) -> float:
    gamma = float(gamma)
    if not math.isfinite(gamma) or gamma <= GAMMA_MIN:
        raise ValueError(f"gamma must be a finite real > -1/2, got {gamma}")
    return gamma


@dataclass(frozen=True)
class GegIndex:
    """The family parameter gamma selecting the weight (1-x^2)^(gamma-1/2)."""

    gamma: float

    def __post_init__(self) -> None:
        check_gamma(self.gamma)


@dataclass
class GegCoeffs:
    """A polynomial ``sum_k coeffs[k] G_k^{(gamma)}(x)``; len = degree + 1."""

    gamma: float
    coeffs: np.ndarray

    def __post_init__(self) -> None:
        check_gamma(self.gamma)
        self.coeffs = np.asarray(self.coeffs, dtype=float)


def value_at_one(gamma: float, n: int) -> ScaledReal:
    """G_n(1), via the running product (2g+1)...(2g+n-1)/n!.

    Always positive for gamma > -1/2; equals 1 for n = 0, 1.  The log is
    accumulated as sum of log((2g+j)/(j+1)) so the Legendre case gives
    exactly 1.0 and near-Legendre differences keep full relative accuracy.
    """
    gamma = check_gamma(gamma)
    if n < 0:
        raise ValueError(f"degree must be >= 0, got {n}")
    log = 0.0
    for j in range(1, n):
        log += math.log(2.0 * gamma + j) - math.log(j + 1.0)
    return ScaledReal(1, log)


def deriv_at_one(gamma: float, n: int, k: int) -> ScaledReal:
    """D^k G_n(1), by k steps of the ratio recurrence seeded at G_n(1).

    Each ratio (2g+n+j)(n-j)/(2g+2j+1) is positive for gamma > -1/2 and
    0 <= j < n, so every derivative value is strictly positive and the
    sequence is nondecreasing in k.  Returns exact zero for k > n.
    """
    gamma = check_gamma(gamma)
    if n < 0:
        raise ValueError(f"degree must be >= 0, got {n}")
    if k < 0:
        raise ValueError(f"derivative order must be >= 0, got {k}")
    if k > n:
        return ScaledReal.zero()
    v = value_at_one(gamma, n)
    log = v.log_mag
    for j in range(k):
        # grouping keeps num == den bit-identical at j = n-1 (ratio exactly 1),
        # so the exact leading-coefficient cancellations downstream are exact
        num = (2.0 * gamma + (n + j)) * (n - j)
        den = 2.0 * gamma + (2 * j + 1)
        log += math.log(num) - math.log(den)
    return ScaledReal(1, log)


def norm_h(gamma: float, n: int) -> ScaledReal:
    """Squared weighted norm h_n = int W(x) G_n(x)^2 dx, strictly positive.

    h_0 = pi 2^(-2g) Gamma(2g+1)/Gamma(g+1)^2 (all Gamma arguments positive
    for g > -1/2, so lgamma is safe); h_n = h_0 G_n(1) / (2 (n+gamma)).
    """
    gamma = check_gamma(gamma)
    if n < 0:
        raise ValueError(f"degree must be >= 0, got {n}")
    log_h0 = (
        math.log(math.pi)
        - 2.0 * gamma * math.log(2.0)
        + math.lgamma(2.0 * gamma + 1.0)
        - 2.0 * math.lgamma(gamma + 1.0)
    )
    if n == 0:
        return ScaledReal(1, log_h0)
    g1 = value_at_one(gamma, n)
    return ScaledReal(1, log_h0 + g1.log_mag - math.log(2.0 * (n + gamma)))


def evaluate(gamma: float, n: int, x: float | np.ndarray) -> float | np.ndarray:
    """G_n(x) by the forward three-term recurrence; |x| <= 1."""
    gamma = check_gamma(gamma)
    if n < 0:
        raise ValueError(f"degree must be >= 0, got {n}")
    xa = np.asarray(x, dtype=float)
    if np.any(np.abs(xa) > 1.0 + 1e-12):
        raise ValueError("evaluation points must lie in [-1, 1]")
    table = _eval_table(gamma, n, np.atleast_1d(xa))
    out = table[n]
    return float(out[0]) if xa.ndim == 0 else out


def basis_matrix(gamma: float, nmax: int, x: np.ndarray) -> np.ndarray:
    """Matrix E with E[i, j] = G_j(x_i), j = 0..nmax."""
    gamma = check_gamma(gamma)
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    return _eval_table(gamma, nmax, xa).T.copy()


def _eval_table(gamma: float, nmax: int, x: np.ndarray) -> np.ndarray:
    """All of G_0..G_nmax at the points x, shape (nmax+1, len(x))."""
    table = np.empty((nmax + 1, x.size))
    table[0] = 1.0
    if nmax >= 1:
        table[1] = x
    if nmax >= 2:
        table[2] = (gamma + 1.0) * x * x - 0.5
    for m in range(2, nmax):
        table[m + 1] = (2.0 * (m + gamma) * x * table[m] - (m - 1.0 + 2.0 * gamma) * table[m - 1]) / (m + 1.0)
    return table


def diff_coeff_array(coeffs: np.ndarray, gamma: float) -> np.ndarray:
    """Coefficients of the derivative, same index gamma, degree reduced by 1.

    Back-substitution of the same-index derivative ladder gives
    b_k = 2(k+gamma) * (a_{k+1} + a_{k+3} + ...) for k >= 1 and
    b_0 = a_1 + a_3 + ... .
    """
    a = np.asarray(coeffs, dtype=float)
    n = a.size - 1
    if n < 1:
        return np.zeros(0)
    b = np.empty(n)
    tail_even = 0.0  # sum of a_j over j > k with j even
    tail_odd = 0.0
    for k in range(n - 1, -1, -1):
        if (k + 1) % 2 == 0:
            tail_even += a[k + 1]
            t = tail_even
        else:
            tail_odd += a[k + 1]
            t = tail_odd
        b[k] = t if k == 0 else 2.0 * (k + gamma) * t
    return b


def diff_coeffs(p: GegCoeffs) -> GegCoeffs:
    """Derivative of a Gegenbauer series at the same index."""
    return GegCoeffs(p.gamma, diff_coeff_array(p.coeffs, p.gamma))


def deriv_matrix(gamma: float, size: int) -> np.ndarray:
    """Operator D with (D a) = coefficients of the derivative, shape (size, size)."""
    gamma = check_gamma(gamma)
    d = np.zeros((size, size))
    if size >= 2:
        d[0, 1::2] = 1.0
    for k in range(1, size - 1):
        d[k, k + 1 :: 2] = 2.0 * (k + gamma)
    return d


def mult_x_array(coeffs: np.ndarray, gamma: float) -> np.ndarray:
    """Coefficients of x * p(x), degree raised by one.

    From the three-term recurrence, x G_n = [(n+1) G_{n+1} + c_n G_{n-1}]
    / (2(n+gamma)) with c_1 = 1 and c_n = n-1+2 gamma for n >= 2.
    """
    gamma = check_gamma(gamma)
    a = np.asarray(coeffs, dtype=float)
    n = a.size - 1
    out = np.zeros(n + 2)
    for m in range(n + 1):
        if a[m] == 0.0:
            continue
        if m == 0:
            out[1] += a[0]
            continue
        denom = 2.0 * (m + gamma)
        out[m + 1] += a[m] * (m + 1.0) / denom
        c = 1.0 if m == 1 else (m - 1.0 + 2.0 * gamma)
        out[m - 1] += a[m] * c / denom
    return out


def lobatto_interior_nodes(gamma: float, n: int) -> np.ndarray:
    """Interior collocation nodes: the n-3 roots of D G_{n-2}^{(gamma)}.

    By the index-raising derivative identity these are the roots of
    G_{n-3}^{(gamma+1)}.  Newton from Chebyshev-extrema seeds with a
    bisection fallback; returned sorted ascending and exactly symmetric.
    """
    gamma = check_gamma(gamma)
    if n < 5:
        raise ValueError(f"need n >= 5 for interior nodes, got {n}")
    m = n - 3  # degree of the target polynomial, at index gamma+1
    g1 = gamma + 1.0

    def f(x: np.ndarray) -> np.ndarray:
        return np.atleast_1d(evaluate(g1, m, x))

    def fp(x: np.ndarray) -> np.ndarray:
        return 2.0 * (g1 + 1.0) * np.atleast_1d(evaluate(g1 + 1.0, m - 1, x))

    seeds = np.cos(np.arange(1, n - 2) * np.pi / (n - 2))[::-1]  # ascending
    roots = np.empty(m)
    # residual scale for the convergence check
    grid = np.cos(np.linspace(0.0, np.pi, 8 * m + 1))
    fscale = float(np.max(np.abs(f(grid))))
    for i, x0 in enumerate(seeds):
        roots[i] = _newton_root(f, fp, x0, fscale)
    roots.sort()
    if (
        not np.all(np.isfinite(roots))
        or np.any(np.diff(roots) <= 0.0)
        or roots[0] <= -1.0
        or roots[-1] >= 1.0
    ):
        roots = _bisect_all(f, m, grid)
    # enforce exact symmetry about 0
    roots = 0.5 * (roots - roots[::-1])
    return roots


def _newton_root(f, fp, x0: float, fscale: float, maxiter: int = 50) -> float:
    lim = 1.0 - 1e-12
    x = float(x0)
    for _ in range(maxiter):
        fx = float(f(x)[0])
        d = float(fp(x)[0])
        if d == 0.0:
            break
        step = fx / d
        x = min(lim, max(-lim, x - step))
        if abs(step) <= 1e-15 * (1.0 + abs(x)):
            return x
    if abs(float(f(x)[0])) <= 1e-14 * fscale:
        return x
    return math.nan  # triggers the bisection fallback in the caller


def _bisect_all(f, m: int, grid: np.ndarray) -> np.ndarray:
    xs = np.sort(grid)
    vals = f(xs)
    roots = []
    for i in range(xs.size - 1):
        if vals[i] == 0.0:
            roots.append(xs[i])
        elif vals[i] * vals[i + 1] < 0.0:
            lo, hi = xs[i], xs[i + 1]
            flo = vals[i]
            for _ in range(200):
                mid = 0.5 * (lo + hi)
                if mid == lo or mid == hi:
                    break
                fm = float(f(mid)[0])
                if fm == 0.0:
                    lo = hi = mid
                    break
                if (fm > 0.0) == (flo > 0.0):
                    lo, flo = mid, fm
                else:
                    hi = mid
            roots.append(0.5 * (lo + hi))
    if len(roots) != m:
        raise RuntimeError(f"node search found {len(roots)} of {m} roots")
    return np.array(roots)
