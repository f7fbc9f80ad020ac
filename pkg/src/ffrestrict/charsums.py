"""Gauss sums, twisted Kloosterman sums, and closed-form Fourier kernels.

Every closed form here has an enumeration twin in the test suite; the sign
conventions (powers of the quadratic character, powers of the Gauss sum) are
validated numerically rather than trusted.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadParameter
from .field import FieldCtx
from .geometry import all_vectors, quad_form


def gauss_sum_t(ctx: FieldCtx, t: int) -> complex:
    """sum_{s in F} e(t s^2) for t != 0; modulus sqrt(p)."""
    p = ctx.p
    t %= p
    if t == 0:
        raise BadParameter("gauss_sum_t requires t != 0")
    s = np.arange(p, dtype=np.int64)
    return complex(ctx.char_table[(t * s * s) % p].sum())


def gauss_sum_table(ctx: FieldCtx) -> np.ndarray:
    """gauss_sum_t for every t; entry 0 is 0 and must not be consumed."""
    p = ctx.p
    s = np.arange(p, dtype=np.int64)
    sq = (s * s) % p
    out = np.zeros(p, dtype=np.complex128)
    for t in range(1, p):
        out[t] = ctx.char_table[(t * sq) % p].sum()
    return out


def gauss_sum_eta(ctx: FieldCtx) -> complex:
    """sum_{s != 0} eta(s) e(s); modulus sqrt(p)."""
    p = ctx.p
    s = np.arange(1, p, dtype=np.int64)
    return complex((ctx.eta_table[s] * ctx.char_table[s]).sum())


def twisted_kloosterman(ctx: FieldCtx, a: int, b: int) -> complex:
    """sum_{s != 0} eta(s) e(a s + b s^-1); modulus at most 2 sqrt(p)."""
    p = ctx.p
    a %= p
    b %= p
    s = np.arange(1, p, dtype=np.int64)
    phases = (a * s + b * ctx.inv_table[s]) % p
    return complex((ctx.eta_table[s] * ctx.char_table[phases]).sum())


def surface_inverse_closed(ctx: FieldCtx, d: int, x) -> complex:
    """Closed form of the inverse transform of the paraboloid surface measure.

    1 at the origin; 0 on the hyperplane x_d = 0 away from the origin; and
    p^(1-d) e(u.u / (-4 x_d)) G(x_d)^(d-1) when x_d != 0, where G is the
    quadratic Gauss sum.
    """
    p = ctx.p
    x = np.asarray(x, dtype=np.int64) % p
    if d < 2 or x.shape != (d,):
        raise BadParameter(f"need a point of F^d with d >= 2, got shape {x.shape}")
    xd = int(x[-1])
    if xd == 0:
        return 1.0 + 0.0j if not x.any() else 0.0 + 0.0j
    q = int(quad_form(x[:-1], p))
    c = ctx.inv((-4 * xd) % p)
    return complex(
        float(p) ** (1 - d) * ctx.char_table[(q * c) % p] * gauss_sum_t(ctx, xd) ** (d - 1)
    )


def surface_inverse_closed_grid(ctx: FieldCtx, d: int) -> np.ndarray:
    """surface_inverse_closed over all of F^d, shape (p,) * d."""
    p = ctx.p
    out = np.zeros((p,) * d, dtype=np.complex128)
    under = all_vectors(p, d - 1)
    q = quad_form(under, p).reshape((p,) * (d - 1))
    gtab = gauss_sum_table(ctx)
    for xd in range(1, p):
        c = ctx.inv((-4 * xd) % p)
        out[..., xd] = float(p) ** (1 - d) * ctx.char_table[(q * c) % p] * gtab[xd] ** (d - 1)
    out[(0,) * d] = 1.0
    return out


def sphere_fourier_closed(ctx: FieldCtx, n: int, j: int, alpha) -> complex:
    """Closed form of the inverse transform of the j-sphere indicator in F^n:

    p^-1 delta(alpha) + p^(-n-1) eta(-1)^n G(eta)^n
        * sum_{r != 0} eta(r)^n e(j r + alpha.alpha / (4 r)).
    """
    p = ctx.p
    alpha = np.asarray(alpha, dtype=np.int64) % p
    if n < 2 or alpha.shape != (n,):
        raise BadParameter(f"need alpha in F^n with n >= 2, got shape {alpha.shape}")
    j %= p
    q = int(quad_form(alpha, p))
    r = np.arange(1, p, dtype=np.int64)
    phases = (j * r + q * ctx.inv_table[(4 * r) % p]) % p
    coeffs = ctx.eta_table[r] if n % 2 else np.ones(p - 1, dtype=np.int64)
    tail = (coeffs * ctx.char_table[phases]).sum()
    lead = float(p) ** (-n - 1) * ctx.eta(-1) ** n * gauss_sum_eta(ctx) ** n
    out = lead * tail
    if not alpha.any():
        out += 1.0 / p
    return complex(out)


def sphere_fourier_closed_grid(ctx: FieldCtx, n: int, j: int) -> np.ndarray:
    """sphere_fourier_closed over all alpha in F^n, shape (p,) * n."""
    p = ctx.p
    j %= p
    q = quad_form(all_vectors(p, n), p).reshape((p,) * n)
    r = np.arange(1, p, dtype=np.int64)
    coeffs = ctx.eta_table[r] if n % 2 else np.ones(p - 1, dtype=np.int64)
    tail = np.zeros((p,) * n, dtype=np.complex128)
    for ri, coef in zip(r, coeffs):
        phases = (j * ri + q * ctx.inv_table[(4 * ri) % p]) % p
        tail += coef * ctx.char_table[phases]
    out = float(p) ** (-n - 1) * ctx.eta(-1) ** n * gauss_sum_eta(ctx) ** n * tail
    out[(0,) * n] += 1.0 / p
    return out


@dataclass(frozen=True, eq=False)
class ClosedFormKernel:
    """The oscillatory part of the surface-measure inverse transform.

    Zero on the hyperplane x_d = 0 (the delta at the origin is removed);
    modulus p^((1-d)/2) everywhere else.
    """

    ctx: FieldCtx
    d: int
    values: np.ndarray  # (p,) * d


def kernel_K(ctx: FieldCtx, d: int) -> ClosedFormKernel:
    """surface_inverse_closed minus the delta at the origin."""
    if d < 2:
        raise BadParameter(f"kernel needs d >= 2, got {d}")
    values = surface_inverse_closed_grid(ctx, d)
    values[(0,) * d] -= 1.0
    return ClosedFormKernel(ctx=ctx, d=d, values=values)
