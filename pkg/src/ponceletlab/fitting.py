"""Algebraic least-squares fits of conics and quartics to point sets.

Points are translated to zero mean and scaled to unit RMS before building the
monomial design matrix; the best coefficient vector is the right singular
vector of the smallest singular value.  Residuals are RMS algebraic residuals
in the normalized frame, so they are invariant under similarity transforms of
the input.
"""

from __future__ import annotations

import math

import numpy as np

from .conics import Point2
from .errors import InsufficientPoints


def _as_array(points) -> np.ndarray:
    if isinstance(points, np.ndarray):
        arr = np.asarray(points, dtype=float)
    else:
        arr = np.array([(p.x, p.y) for p in points], dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError("expected an (n, 2) array of points")
    return arr


def _normalize(arr: np.ndarray) -> tuple[np.ndarray, np.ndarray, float]:
    mu = arr.mean(axis=0)
    centered = arr - mu
    scale = math.sqrt(float((centered ** 2).sum(axis=1).mean()))
    if scale < 1e-300:
        scale = 1.0
    return centered / scale, mu, scale


def conic_fit(points) -> tuple[np.ndarray, float]:
    """Best algebraic conic ``A x^2 + B xy + C y^2 + D x + E y + F = 0``.

    Returns the unit-norm coefficient 6-vector in the original frame (sign
    canonicalized) and the RMS residual in the normalized frame.  The
    quadratic block is fit in the harmonic basis (x^2+y^2, x^2-y^2, 2xy), on
    which rotations act orthogonally, so the residual is invariant under
    similarity transforms of the input.
    """
    arr = _as_array(points)
    if len(arr) < 6:
        raise InsufficientPoints(f"conic fit needs >= 6 points, got {len(arr)}")
    norm, mu, s = _normalize(arr)
    x, y = norm[:, 0], norm[:, 1]
    design = np.column_stack([
        x * x + y * y, x * x - y * y, 2.0 * x * y, x, y, np.ones_like(x)])
    _, sing, vt = np.linalg.svd(design, full_matrices=False)
    c1, c2, c3, d, e, f = vt[-1]
    coeffs = np.array([c1 + c2, 2.0 * c3, c1 - c2, d, e, f])
    residual = float(sing[-1]) / math.sqrt(len(arr))
    return _denormalize_conic(coeffs, mu, s), residual


def _denormalize_conic(c: np.ndarray, mu: np.ndarray, s: float) -> np.ndarray:
    """Map coefficients fit on (p - mu)/s back to the original frame."""
    a, b, cc, d, e, f = (float(v) for v in c)
    mx, my = float(mu[0]), float(mu[1])
    out = np.array([
        a / (s * s),
        b / (s * s),
        cc / (s * s),
        (-2.0 * a * mx - b * my) / (s * s) + d / s,
        (-b * mx - 2.0 * cc * my) / (s * s) + e / s,
        (a * mx * mx + b * mx * my + cc * my * my) / (s * s)
        - (d * mx + e * my) / s + f,
    ])
    return _canonicalize(out)


def _canonicalize(coeffs: np.ndarray) -> np.ndarray:
    norm = float(np.linalg.norm(coeffs))
    if norm > 0:
        coeffs = coeffs / norm
    pivot = int(np.argmax(np.abs(coeffs)))
    if coeffs[pivot] < 0:
        coeffs = -coeffs
    return coeffs


def quartic_monomials(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """All 15 monomials of degree <= 4, highest degree first."""
    one = np.ones_like(x)
    return np.column_stack([
        x ** 4, x ** 3 * y, x ** 2 * y ** 2, x * y ** 3, y ** 4,
        x ** 3, x ** 2 * y, x * y ** 2, y ** 3,
        x ** 2, x * y, y ** 2,
        x, y, one,
    ])


def quartic_fit(points) -> float:
    """RMS residual of the best algebraic quartic through the points."""
    arr = _as_array(points)
    if len(arr) < 15:
        raise InsufficientPoints(f"quartic fit needs >= 15 points, got {len(arr)}")
    norm, _, _ = _normalize(arr)
    design = quartic_monomials(norm[:, 0], norm[:, 1])
    sing = np.linalg.svd(design, compute_uv=False)
    return float(sing[-1]) / math.sqrt(len(arr))


def conic_semi_axes(coeffs) -> tuple[float, float]:
    """Semi-axes of an origin-centered, axis-aligned ellipse from its coefficients.

    Raises ValueError when the conic is not (numerically) such an ellipse.
    """
    a, b, c, d, e, f = (float(v) for v in coeffs)
    scale = max(abs(v) for v in (a, b, c, d, e, f))
    if scale <= 0:
        raise ValueError("zero conic")
    if abs(b) > 1e-6 * scale or abs(d) > 1e-6 * scale or abs(e) > 1e-6 * scale:
        raise ValueError("conic is not centered and axis-aligned")
    if a == 0 or c == 0 or (f / a) >= 0 or (f / c) >= 0:
        raise ValueError("conic is not a real ellipse")
    return math.sqrt(-f / a), math.sqrt(-f / c)


def fit_points_from(points) -> np.ndarray:
    """Convenience: accept Point2 sequences or arrays uniformly."""
    return _as_array(points)


def point2_list(arr: np.ndarray) -> list[Point2]:
    return [Point2(float(x), float(y)) for x, y in arr]
