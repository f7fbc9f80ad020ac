"""Three-measure Fourier toolkit on F^d.

Grid functions carry the counting measure, dual functions the normalized
counting measure (mass p^-d per point), and surface functions the normalized
surface measure (mass 1/|S| per point).  Transforms are exact definitions,
computed dimension by dimension with naive length-p kernels.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import _kernels
from .errors import BadExponent, MeasureMismatch, WrongVariety
from .field import FieldCtx
from .geometry import SurfaceSet


class Measure(Enum):
    COUNTING = "counting"
    NORMALIZED = "normalized"
    SURFACE = "surface"


@dataclass(frozen=True, eq=False)
class GridFunc:
    """Complex-valued function on F^d under the counting measure."""

    ctx: FieldCtx
    values: np.ndarray  # complex128, shape (p,) * d

    measure = Measure.COUNTING

    @property
    def d(self) -> int:
        return self.values.ndim


@dataclass(frozen=True, eq=False)
class DualFunc:
    """Complex-valued function on the dual grid, mass p^-d per point."""

    ctx: FieldCtx
    values: np.ndarray

    measure = Measure.NORMALIZED

    @property
    def d(self) -> int:
        return self.values.ndim


@dataclass(frozen=True, eq=False)
class SurfaceFunc:
    """Complex-valued function on a surface, mass 1/|S| per point."""

    surface: SurfaceSet
    values: np.ndarray  # (N,) aligned with surface.points

    measure = Measure.SURFACE

    @property
    def ctx(self) -> FieldCtx:
        return self.surface.ctx


def grid(ctx: FieldCtx, values: np.ndarray) -> GridFunc:
    return GridFunc(ctx=ctx, values=np.asarray(values, dtype=np.complex128))


def dual(ctx: FieldCtx, values: np.ndarray) -> DualFunc:
    return DualFunc(ctx=ctx, values=np.asarray(values, dtype=np.complex128))


def delta_grid(ctx: FieldCtx, d: int) -> GridFunc:
    v = np.zeros((ctx.p,) * d, dtype=np.complex128)
    v[(0,) * d] = 1.0
    return GridFunc(ctx=ctx, values=v)


def const_grid(ctx: FieldCtx, d: int, c: complex = 1.0) -> GridFunc:
    return GridFunc(ctx=ctx, values=np.full((ctx.p,) * d, c, dtype=np.complex128))


def indicator_on(surface: SurfaceSet, subset: SurfaceSet) -> SurfaceFunc:
    """0/1 function on `surface` supported on the points of `subset`."""
    member = np.zeros(surface.ctx.p**surface.d, dtype=bool)
    member[subset.packed] = True
    vals = member[surface.packed].astype(np.complex128)
    return SurfaceFunc(surface=surface, values=vals)


def _char_matrices(ctx: FieldCtx) -> tuple[np.ndarray, np.ndarray]:
    p = ctx.p
    prods = np.outer(np.arange(p), np.arange(p)) % p
    forward = ctx.char_table[(-prods) % p]
    backward = ctx.char_table[prods]
    return forward, backward


def _transform(values: np.ndarray, w: np.ndarray) -> np.ndarray:
    p = w.shape[0]
    v = values
    for _ in range(v.ndim):
        flat = _kernels.dft_apply(v.reshape(-1, p), w)
        v = np.moveaxis(flat.reshape(v.shape), -1, 0)
    return v


def dft_forward(g: GridFunc) -> DualFunc:
    """g_hat(xi) = sum_x g(x) e(-x.xi)."""
    w, _ = _char_matrices(g.ctx)
    return DualFunc(ctx=g.ctx, values=_transform(g.values, w))


def idft(G: DualFunc) -> GridFunc:
    """G_check(x) = p^-d sum_xi G(xi) e(xi.x)."""
    _, w = _char_matrices(G.ctx)
    out = _transform(G.values, w) / G.ctx.p**G.d
    return GridFunc(ctx=G.ctx, values=out)


def extension(f: SurfaceFunc) -> GridFunc:
    """Average f over the paraboloid against characters:
    out(x) = |P|^-1 sum_{xi in P} f(xi) e(x.xi).
    """
    surf = f.surface
    if surf.kind != "paraboloid":
        raise WrongVariety(f"extension needs the full paraboloid, got {surf.kind}")
    p, d = surf.ctx.p, surf.d
    emb = np.zeros(p**d, dtype=np.complex128)
    emb[surf.packed] = f.values
    scale = p**d / surf.size  # = p
    out = idft(DualFunc(ctx=surf.ctx, values=emb.reshape((p,) * d)))
    return GridFunc(ctx=surf.ctx, values=out.values * scale)


def restrict_to_surface(G: DualFunc, surface: SurfaceSet) -> SurfaceFunc:
    """Values of G on the surface points, under the surface measure."""
    flat = G.values.reshape(-1)
    return SurfaceFunc(surface=surface, values=flat[surface.packed].copy())


def lp_norm(h, r) -> float:
    """Measure-weighted L^r norm; r == inf gives the max modulus."""
    if isinstance(h, GridFunc):
        weight = 1.0
    elif isinstance(h, DualFunc):
        weight = float(h.ctx.p) ** (-h.d)
    elif isinstance(h, SurfaceFunc):
        weight = 1.0 / h.surface.size
    else:
        raise MeasureMismatch(f"not a measured function: {type(h)!r}")
    mags = np.abs(np.asarray(h.values)).reshape(-1)
    if r == np.inf or r == float("inf"):
        return float(mags.max(initial=0.0))
    r = float(r)
    if r <= 0:
        raise BadExponent(f"L^r norm needs r > 0, got {r}")
    return float((weight * np.sum(mags**r)) ** (1.0 / r))


def convolve(a, b):
    """(a*b)(x) = sum_y a(y) b(x-y); normalized measure adds a p^-d factor."""
    if type(a) is not type(b) or isinstance(a, SurfaceFunc):
        raise MeasureMismatch("convolution needs two grid or two dual functions")
    if a.ctx is not b.ctx or a.values.shape != b.values.shape:
        raise MeasureMismatch("convolution operands must share field and shape")
    out = _kernels.cyclic_convolve(a.values, b.values, a.ctx.p)
    if isinstance(a, DualFunc):
        return DualFunc(ctx=a.ctx, values=out / a.ctx.p**a.d)
    return GridFunc(ctx=a.ctx, values=out)


def inner_counting(a: GridFunc, b: GridFunc) -> complex:
    """<a, b> = sum_x a(x) conj(b(x)) under the counting measure."""
    return complex(np.vdot(b.values, a.values))
