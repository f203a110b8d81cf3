"""Standard normal CDF, survival, density and a high-accuracy inverse CDF.

The inverse uses Acklam's rational approximation followed by one Halley
refinement step against the erfc-based CDF, which brings the absolute
error below 1e-13 on (0, 1) wherever exp(z^2/2) is representable.
Refinement is skipped for |z| > 36 (p below ~1e-281) where the raw
approximation is already the best double-precision answer available.
"""

from __future__ import annotations

import numpy as np
from scipy import special

_SQRT2 = np.sqrt(2.0)
_SQRT2PI = np.sqrt(2.0 * np.pi)

# Acklam's coefficients (lower/central/upper regions).
_A = (-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
      1.383577518672690e+02, -3.066479806614716e+01, 2.506628277459239e+00)
_B = (-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
      6.680131188771972e+01, -1.328068155288572e+01)
_C = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
      -2.549732539343734e+00, 4.374664141464968e+00, 2.938163982698783e+00)
_D = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
      3.754408661907416e+00)

_P_LOW = 0.02425


def normal_cdf(x):
    """Phi(x) via erfc, accurate in both tails."""
    return 0.5 * special.erfc(-np.asarray(x, dtype=float) / _SQRT2)


def normal_sf(x):
    """Upper tail 1 - Phi(x) without cancellation."""
    return 0.5 * special.erfc(np.asarray(x, dtype=float) / _SQRT2)


def normal_pdf(x):
    x = np.asarray(x, dtype=float)
    return np.exp(-0.5 * x * x) / _SQRT2PI


def _acklam_lower_half(p: np.ndarray) -> np.ndarray:
    """Raw approximation on (0, 0.5], where the lower-tail branch is exact
    to work with (no 1 - p cancellation)."""
    z = np.empty_like(p)
    lo = p < _P_LOW
    mid = ~lo
    if np.any(lo):
        q = np.sqrt(-2.0 * np.log(p[lo]))
        z[lo] = (((((_C[0] * q + _C[1]) * q + _C[2]) * q + _C[3]) * q + _C[4]) * q + _C[5]) / \
                ((((_D[0] * q + _D[1]) * q + _D[2]) * q + _D[3]) * q + 1.0)
    if np.any(mid):
        q = p[mid] - 0.5
        r = q * q
        z[mid] = (((((_A[0] * r + _A[1]) * r + _A[2]) * r + _A[3]) * r + _A[4]) * r + _A[5]) * q / \
                 (((((_B[0] * r + _B[1]) * r + _B[2]) * r + _B[3]) * r + _B[4]) * r + 1.0)
    return z


def normal_ppf(p):
    """Inverse standard normal CDF.

    Accepts scalars or arrays with entries in (0, 1); 0 and 1 map to
    -inf/+inf. Raises ValueError outside [0, 1]. Internally folds onto the
    lower half by symmetry (1 - p is exact there), so both tails get the
    full accuracy of the lower-tail branch.
    """
    p_arr = np.asarray(p, dtype=float)
    scalar = p_arr.ndim == 0
    p_arr = np.atleast_1d(np.ascontiguousarray(p_arr, dtype=float))
    if np.any((p_arr < 0.0) | (p_arr > 1.0) | np.isnan(p_arr)):
        raise ValueError("p must lie in [0, 1]")

    z = np.full_like(p_arr, np.nan)
    z[p_arr == 0.0] = -np.inf
    z[p_arr == 1.0] = np.inf
    inner = (p_arr > 0.0) & (p_arr < 1.0)
    if np.any(inner):
        pi = p_arr[inner]
        upper = pi > 0.5
        ph = np.where(upper, 1.0 - pi, pi)
        zi = _acklam_lower_half(ph)
        # One Halley step against the erfc CDF; skipped only where
        # exp(z^2/2) would overflow (|z| > 37.5, p below ~1e-307).
        refine = np.abs(zi) <= 37.5
        if np.any(refine):
            zr = zi[refine]
            e = 0.5 * special.erfc(-zr / _SQRT2) - ph[refine]
            u = e * _SQRT2PI * np.exp(0.5 * zr * zr)
            zi[refine] = zr - u / (1.0 + 0.5 * zr * u)
        z[inner] = np.where(upper, -zi, zi)
    return float(z[0]) if scalar else z


def normal_upper_quantile(u):
    """Quantile in upper-tail form: Q(1 - u) = -Q(u), precise for small u."""
    return -normal_ppf(u)
