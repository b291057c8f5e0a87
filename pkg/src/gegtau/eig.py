"""Dense nonsymmetric eigensolver, polynomial roots, and spectrum labeling.

The eigensolver is self-contained: diagonal balancing, Householder reduction
to upper Hessenberg form, then Francis double-shift QR iteration with
deflation.  The double-shift strategy keeps everything in real arithmetic,
so complex eigenvalues emerge as exact conjugate pairs from 2x2 blocks.

Polynomial roots come from the balanced companion matrix of the normalized
coefficients, with a per-root residual check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

REAL_NEGATIVE = "real_negative"
SPURIOUS_POSITIVE = "spurious_positive"
COMPLEX_PAIR = "complex_pair"
NEAR_INFINITE = "near_infinite"

DEFAULT_TOLERANCES = {
    "real_rel": 1e-8,  # |Im| <= real_rel * |lambda| counts as real
    "real_abs": 1e-10,  # ... or |Im| <= real_abs * scale
    "distinct_rel": 1e-8,  # minimum relative gap between real eigenvalues
    "root_residual": 1e-8,
    "mu_infinite": 1e-12,  # |mu| < mu_infinite * max|mu| maps to lambda = inf
}


class ConvergenceError(RuntimeError):
    """QR iteration exceeded its sweep budget; carries partial eigenvalues."""

    def __init__(self, message: str, partial: np.ndarray):
        super().__init__(message)
        self.partial = partial


def _balance(a: np.ndarray) -> np.ndarray:
    """Diagonal similarity with powers of 2 equalizing row/column norms."""
    a = a.copy()
    n = a.shape[0]
    radix = 2.0
    sqrdx = radix * radix
    done = False
    while not done:
        done = True
        for i in range(n):
            r = float(np.sum(np.abs(a[i, :])) - abs(a[i, i]))
            c = float(np.sum(np.abs(a[:, i])) - abs(a[i, i]))
            if c == 0.0 or r == 0.0:
                continue
            g = r / radix
            f = 1.0
            s = c + r
            while c < g:
                f *= radix
                c *= sqrdx
            g = r * radix
            while c > g:
                f /= radix
                c /= sqrdx
            if (c + r) / f < 0.95 * s:
                done = False
                a[i, :] *= 1.0 / f
                a[:, i] *= f
    return a


def _hessenberg(a: np.ndarray) -> np.ndarray:
    """Householder reduction to upper Hessenberg form (similarity)."""
    h = a.copy()
    n = h.shape[0]
    for k in range(n - 2):
        x = h[k + 1 :, k].copy()
        sigma = float(np.linalg.norm(x))
        if sigma == 0.0:
            continue
        alpha = -math.copysign(sigma, x[0]) if x[0] != 0.0 else -sigma
        v = x
        v[0] -= alpha
        vn = float(np.linalg.norm(v))
        if vn == 0.0:
            continue
        v /= vn
        h[k + 1 :, k:] -= 2.0 * np.outer(v, v @ h[k + 1 :, k:])
        h[:, k + 1 :] -= 2.0 * np.outer(h[:, k + 1 :] @ v, v)
        h[k + 1, k] = alpha
        h[k + 2 :, k] = 0.0
    return h


def _eig22(a: float, b: float, c: float, d: float) -> tuple[complex, complex]:
    """Eigenvalues of [[a, b], [c, d]], conjugate pair when discriminant < 0."""
    mean = 0.5 * (a + d)
    p = 0.5 * (a - d)
    disc = p * p + b * c
    if disc >= 0.0:
        r = math.sqrt(disc)
        big = mean + r if mean >= 0.0 else mean - r
        det = a * d - b * c
        small = det / big if big != 0.0 else mean - math.copysign(r, mean)
        return complex(big), complex(small)
    im = math.sqrt(-disc)
    return complex(mean, im), complex(mean, -im)


def _reflect(h: np.ndarray, vec: np.ndarray, k: int, lo: int, hi: int) -> None:
    """Apply the Householder reflector sending vec to a multiple of e1."""
    beta = float(np.linalg.norm(vec))
    if beta == 0.0:
        return
    v = vec.copy()
    v[0] += math.copysign(beta, vec[0]) if vec[0] != 0.0 else beta
    vn = float(np.linalg.norm(v))
    if vn == 0.0:
        return
    v /= vn
    rows = slice(k, k + v.size)
    c0 = max(lo, k - 1)
    h[rows, c0 : hi + 1] -= 2.0 * np.outer(v, v @ h[rows, c0 : hi + 1])
    r1 = min(k + 3, hi) + 1
    h[lo:r1, rows] -= 2.0 * np.outer(h[lo:r1, rows] @ v, v)


def _francis_sweep(h: np.ndarray, lo: int, hi: int, s: float, t: float) -> None:
    """One implicit double-shift sweep on the active window [lo, hi]."""
    x = h[lo, lo] * h[lo, lo] + h[lo, lo + 1] * h[lo + 1, lo] - s * h[lo, lo] + t
    y = h[lo + 1, lo] * (h[lo, lo] + h[lo + 1, lo + 1] - s)
    z = h[lo + 2, lo + 1] * h[lo + 1, lo] if hi - lo > 1 else 0.0
    for k in range(lo, hi):
        if k + 2 <= hi:
            _reflect(h, np.array([x, y, z]), k, lo, hi)
        else:
            _reflect(h, np.array([x, y]), k, lo, hi)
        if k > lo:
            h[k + 1, k - 1] = 0.0
            if k + 2 <= hi:
                h[k + 2, k - 1] = 0.0
        if k + 1 <= hi - 1:
            x = h[k + 1, k]
            y = h[k + 2, k]
            z = h[k + 3, k] if k + 3 <= hi else 0.0


def dense_eigs(m: np.ndarray, sweep_budget_factor: int = 30) -> np.ndarray:
    """All eigenvalues of a real square matrix.

    Balancing, Hessenberg reduction, then double-shift QR with deflation and
    exceptional shifts.  Raises ConvergenceError (with partial results) after
    ``sweep_budget_factor * dim`` sweeps.
    """
    a = np.array(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    n = a.shape[0]
    if n == 0:
        return np.zeros(0, dtype=complex)
    if n == 1:
        return np.array([complex(a[0, 0])])
    h = _hessenberg(_balance(a))
    hnorm = float(np.sum(np.abs(h)))
    eps = float(np.finfo(float).eps)
    eigs: list[complex] = []
    hi = n - 1
    sweeps = 0
    its = 0
    budget = sweep_budget_factor * n
    while hi >= 0:
        lo = hi
        while lo > 0:
            s = abs(h[lo - 1, lo - 1]) + abs(h[lo, lo])
            if s == 0.0:
                s = hnorm
            if abs(h[lo, lo - 1]) <= eps * s:
                h[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            eigs.append(complex(h[hi, hi]))
            hi -= 1
            its = 0
            continue
        if lo == hi - 1:
            e1, e2 = _eig22(h[lo, lo], h[lo, hi], h[hi, lo], h[hi, hi])
            eigs.extend([e1, e2])
            hi -= 2
            its = 0
            continue
        if sweeps >= budget:
            raise ConvergenceError(
                f"QR did not converge within {budget} sweeps (dim {n})",
                partial=np.array(eigs),
            )
        sweeps += 1
        its += 1
        if its % 10 == 0:
            # exceptional shift to break rare limit cycles
            w = abs(h[hi, hi - 1]) + abs(h[hi - 1, hi - 2])
            val = h[hi, hi] + 0.75 * w
            s_sum, s_prod = 2.0 * val, val * val
        else:
            s_sum = h[hi - 1, hi - 1] + h[hi, hi]
            s_prod = h[hi - 1, hi - 1] * h[hi, hi] - h[hi - 1, hi] * h[hi, hi - 1]
        _francis_sweep(h, lo, hi, s_sum, s_prod)
    return np.array(eigs)


@dataclass
class RootResult:
    """Roots of a polynomial plus the per-root scaled residual |p(r)|."""

    roots: np.ndarray
    residuals: np.ndarray

    def max_residual(self) -> float:
        return float(np.max(self.residuals)) if self.residuals.size else 0.0


def _horner_pair(c: np.ndarray, z: complex) -> tuple[complex, complex]:
    """p(z) and p'(z) by Horner."""
    p = 0.0 + 0.0j
    dp = 0.0 + 0.0j
    for ck in c[::-1]:
        dp = dp * z + p
        p = p * z + ck
    return p, dp


def _polish_root(c: np.ndarray, z: complex) -> complex:
    """A few guarded Newton steps; companion eigenvalues of tight root
    clusters can be several orders less accurate than the roots themselves."""
    best = z
    best_val = abs(_horner_pair(c, z)[0])
    for _ in range(4):
        p, dp = _horner_pair(c, z)
        if dp == 0.0:
            break
        z = z - p / dp
        val = abs(_horner_pair(c, z)[0])
        if val < best_val:
            best, best_val = z, val
        else:
            break
    return best


def poly_roots(coeffs: np.ndarray, polish: bool = True) -> RootResult:
    """Roots of ``sum_k coeffs[k] z^k`` via the balanced companion matrix.

    Coefficients are normalized by the largest magnitude; exact zero roots
    (zero constant terms) are deflated before building the companion, and
    the companion eigenvalues are Newton-polished against the polynomial.
    The residual reported per root is |p(r)| / (max|c| * max(1, |r|)^degree).
    """
    c = np.asarray(coeffs, dtype=float)
    if c.size == 0 or not np.any(c != 0.0):
        raise ValueError("zero polynomial has no well-defined roots")
    c = c / np.max(np.abs(c))
    deg = int(np.max(np.nonzero(c)[0]))
    if deg == 0:
        return RootResult(np.zeros(0, dtype=complex), np.zeros(0))
    c = c[: deg + 1]
    nzero = int(np.min(np.nonzero(c)[0]))  # exact roots at the origin
    c_red = c[nzero:]
    roots = [0.0 + 0.0j] * nzero
    m = c_red.size - 1
    if m > 0:
        monic = c_red[:-1] / c_red[-1]
        comp = np.zeros((m, m))
        comp[np.arange(1, m), np.arange(m - 1)] = 1.0
        comp[:, m - 1] = -monic
        eigs = dense_eigs(comp)
        if polish:
            polished = np.array([_polish_root(c_red, z) for z in eigs])
            # keep conjugate symmetry exact after independent polishing
            imag_scale = np.abs(polished)
            near_real = np.abs(polished.imag) <= 1e-14 * np.maximum(imag_scale, 1.0)
            polished[near_real] = polished[near_real].real
            eigs = polished
        roots.extend(eigs)
    roots_arr = np.array(roots, dtype=complex)
    vals = np.zeros(roots_arr.size, dtype=complex)
    for ck in c[::-1]:
        vals = vals * roots_arr + ck
    scale = np.maximum(1.0, np.abs(roots_arr)) ** deg
    return RootResult(roots_arr, np.abs(vals) / scale)


@dataclass
class SpectrumReport:
    """Classified eigenvalue list in the real/spurious/complex/infinite taxonomy."""

    eigenvalues: list[complex]
    classes: list[str]
    distinct: bool
    interlaced: bool | None
    parities: list[str] | None = None
    config: object | None = None
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))

    def count(self, label: str) -> int:
        return self.classes.count(label)

    @property
    def n_infinite(self) -> int:
        return self.count(NEAR_INFINITE)

    def finite_eigenvalues(self) -> list[complex]:
        return [e for e, c in zip(self.eigenvalues, self.classes) if c != NEAR_INFINITE]


def classify(
    eigs: np.ndarray | list[complex],
    scale: float,
    parities: list[str] | None = None,
    n_infinite: int = 0,
    infinite_parities: list[str] | None = None,
    config: object | None = None,
    tolerances: dict | None = None,
) -> SpectrumReport:
    """Label eigenvalues and evaluate distinctness / parity interlacing.

    An eigenvalue is real when |Im| <= max(real_rel*|lambda|, real_abs*scale);
    real ones split by the sign of the real part.  ``distinct`` requires all
    relative gaps between real eigenvalues to exceed distinct_rel.
    ``interlaced`` (merged even/odd reports only) checks that the real
    eigenvalues sorted descending alternate parity.
    """
    if scale <= 0.0:
        raise ValueError(f"scale must be positive, got {scale}")
    tol = dict(DEFAULT_TOLERANCES)
    if tolerances:
        tol.update(tolerances)
    eig_list = [complex(e) for e in np.atleast_1d(np.asarray(eigs, dtype=complex))]
    if parities is not None and len(parities) != len(eig_list):
        raise ValueError("parities must match eigenvalues in length")

    classes: list[str] = []
    reals: list[tuple[float, str | None]] = []
    for i, lam in enumerate(eig_list):
        is_real = abs(lam.imag) <= max(tol["real_rel"] * abs(lam), tol["real_abs"] * scale)
        if is_real:
            classes.append(REAL_NEGATIVE if lam.real < 0.0 else SPURIOUS_POSITIVE)
            reals.append((lam.real, parities[i] if parities else None))
        else:
            classes.append(COMPLEX_PAIR)

    reals.sort(key=lambda t: t[0])
    distinct = True
    for (a, _), (b, _) in zip(reals, reals[1:]):
        gap = abs(b - a) / max(abs(a), abs(b), 1e-300)
        if gap <= tol["distinct_rel"]:
            distinct = False
            break

    interlaced: bool | None = None
    if parities is not None:
        seq = [p for _, p in sorted(reals, key=lambda t: -t[0])]
        interlaced = all(p != q for p, q in zip(seq, seq[1:]))

    eig_out = list(eig_list)
    par_out = list(parities) if parities is not None else None
    for j in range(n_infinite):
        eig_out.append(complex(math.inf, 0.0))
        classes.append(NEAR_INFINITE)
        if par_out is not None:
            par_out.append(infinite_parities[j] if infinite_parities else "unknown")
    return SpectrumReport(
        eigenvalues=eig_out,
        classes=classes,
        distinct=distinct,
        interlaced=interlaced,
        parities=par_out,
        config=config,
        tolerances=tol,
    )
