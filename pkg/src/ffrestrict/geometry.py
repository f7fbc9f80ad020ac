"""Point sets on the paraboloid and on spheres, and the maps between them.

Points in F^d are int64 rows with entries in [0, p).  The paraboloid is the
graph of the dot-product square of the first d-1 coordinates; a j-sphere in
F^n is the level set of the dot-product square at j.  Enumeration order is
always lexicographic so outputs are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np

from . import _kernels
from .errors import (
    DegenerateSubspace,
    BadParameter,
    InstanceTooLarge,
    NotOnVariety,
)
from .field import FieldCtx, make_field

SIZE_CAP = 10**7
SEARCH_CAP = 10**6


def all_vectors(p: int, n: int) -> np.ndarray:
    """All of F^n as a (p^n, n) int64 array in lexicographic order."""
    grids = np.meshgrid(*([np.arange(p, dtype=np.int64)] * n), indexing="ij")
    return np.stack(grids, axis=-1).reshape(-1, n)


def underline(point: np.ndarray) -> np.ndarray:
    """First d-1 coordinates of a point."""
    return np.asarray(point)[..., :-1]


def last_coord(point: np.ndarray):
    return np.asarray(point)[..., -1]


def quad_form(under: np.ndarray, p: int) -> np.ndarray:
    """Dot-product square u.u mod p, rowwise."""
    under = np.asarray(under, dtype=np.int64)
    return np.einsum("...j,...j->...", under, under) % p


@dataclass(frozen=True, eq=False)
class SurfaceSet:
    """A finite point set on a named variety.

    kind is "paraboloid" (the full graph), "sphere" (a full j-sphere), or
    "subset" (a subset of the paraboloid).  points is an (N, d) int64 array;
    for paraboloid kinds the projection onto the first d-1 coordinates is
    injective.
    """

    ctx: FieldCtx
    kind: str
    d: int
    points: np.ndarray
    j: int | None = None  # sphere level, when kind == "sphere"

    @property
    def size(self) -> int:
        return self.points.shape[0]

    @property
    def under(self) -> np.ndarray:
        return self.points[:, :-1]

    @cached_property
    def packed(self) -> np.ndarray:
        return _kernels.pack_points(self.points, self.ctx.p)

    @cached_property
    def underline_index(self) -> dict[int, int]:
        """Packed underline coordinate -> row index (paraboloid kinds only)."""
        keys = _kernels.pack_points(self.under, self.ctx.p)
        return {int(k): i for i, k in enumerate(keys)}

    def contains(self, point) -> bool:
        key = int(_kernels.pack_points(np.asarray(point, dtype=np.int64), self.ctx.p))
        if self.kind in ("paraboloid", "subset"):
            row = self.underline_index.get(
                int(_kernels.pack_points(np.asarray(point)[:-1], self.ctx.p))
            )
            return row is not None and int(self.packed[row]) == key
        return key in set(int(v) for v in self.packed)

    def __repr__(self) -> str:
        return f"SurfaceSet({self.kind}, p={self.ctx.p}, d={self.d}, size={self.size})"


def is_on_paraboloid(ctx: FieldCtx, point) -> bool:
    point = np.asarray(point, dtype=np.int64) % ctx.p
    return int(quad_form(point[:-1], ctx.p)) == int(point[-1])


def paraboloid(ctx: FieldCtx, d: int, cap: int = SIZE_CAP) -> SurfaceSet:
    """All p^(d-1) points (u, u.u) in lexicographic underline order."""
    if d < 2:
        raise BadParameter(f"paraboloid needs d >= 2, got {d}")
    if ctx.p ** (d - 1) > cap:
        raise InstanceTooLarge(f"p^(d-1) = {ctx.p ** (d - 1)} exceeds cap {cap}")
    under = all_vectors(ctx.p, d - 1)
    lastc = quad_form(under, ctx.p)
    pts = np.concatenate([under, lastc[:, None]], axis=1)
    return SurfaceSet(ctx=ctx, kind="paraboloid", d=d, points=pts)


@lru_cache(maxsize=64)
def cached_paraboloid(p: int, d: int) -> SurfaceSet:
    return paraboloid(make_field(p), d)


def paraboloid_subset(ctx: FieldCtx, d: int, under_points: np.ndarray) -> SurfaceSet:
    """Lift a set of underline coordinates onto the paraboloid.

    Duplicate underline rows are dropped; rows come out in lexicographic order.
    """
    under_points = np.asarray(under_points, dtype=np.int64).reshape(-1, d - 1) % ctx.p
    keys = _kernels.pack_points(under_points, ctx.p)
    order = np.unique(keys)
    under_points = _kernels.unpack_indices(order, ctx.p, d - 1)
    lastc = quad_form(under_points, ctx.p)
    pts = np.concatenate([under_points, lastc[:, None]], axis=1)
    return SurfaceSet(ctx=ctx, kind="subset", d=d, points=pts)


def sphere(ctx: FieldCtx, n: int, j: int, cap: int = SIZE_CAP) -> SurfaceSet:
    """All x in F^n with x.x = j, lexicographic."""
    if n < 1:
        raise BadParameter(f"sphere needs n >= 1, got {n}")
    if ctx.p**n > cap:
        raise InstanceTooLarge(f"p^n = {ctx.p ** n} exceeds cap {cap}")
    vec = all_vectors(ctx.p, n)
    pts = vec[quad_form(vec, ctx.p) == j % ctx.p]
    return SurfaceSet(ctx=ctx, kind="sphere", d=n, points=pts, j=j % ctx.p)


def galilean(ctx: FieldCtx, y, z) -> np.ndarray:
    """Paraboloid-preserving affine map sending y to the origin, applied to z.

    G(z) = (z_under - y_under, z_d - 2 z_under.y_under + y_under.y_under).
    """
    y = np.asarray(y, dtype=np.int64) % ctx.p
    z = np.asarray(z, dtype=np.int64) % ctx.p
    for pt in (y, z):
        if not is_on_paraboloid(ctx, pt):
            raise NotOnVariety(f"{tuple(int(v) for v in pt)} is not on the paraboloid")
    p = ctx.p
    yu, zu = y[:-1], z[:-1]
    out = np.empty_like(z)
    out[:-1] = (zu - yu) % p
    out[-1] = (z[-1] - 2 * int(zu @ yu) + int(yu @ yu)) % p
    return out


def galilean_set(e_set: SurfaceSet, y) -> SurfaceSet:
    """Apply the Galilean map pointwise; result is again a paraboloid subset."""
    ctx = e_set.ctx
    p = ctx.p
    y = np.asarray(y, dtype=np.int64) % p
    if not is_on_paraboloid(ctx, y):
        raise NotOnVariety("base point is not on the paraboloid")
    under = (e_set.under - y[:-1]) % p
    return paraboloid_subset(ctx, e_set.d, under)


@dataclass(frozen=True, eq=False)
class SubspaceWitness:
    """An affine flat of dimension k verified to lie inside the paraboloid."""

    ctx: FieldCtx
    d: int
    k: int
    base: np.ndarray
    directions: np.ndarray  # (k, d)

    def points(self) -> np.ndarray:
        p = self.ctx.p
        coeffs = all_vectors(p, self.k)
        return (self.base[None, :] + coeffs @ self.directions) % p

    def verify(self) -> bool:
        pts = self.points()
        return bool(np.all(quad_form(pts[:, :-1], self.ctx.p) == pts[:, -1]))

    def lift_set(self) -> SurfaceSet:
        return paraboloid_subset(self.ctx, self.d, self.points()[:, :-1])


def _isotropic_directions(ctx: FieldCtx, m: int) -> np.ndarray:
    """Nonzero u in F^m with u.u = 0, lexicographic."""
    vec = all_vectors(ctx.p, m)[1:]
    return vec[quad_form(vec, ctx.p) == 0]


def max_affine_subspace(
    ctx: FieldCtx, d: int, k_target: int, cap: int = SEARCH_CAP
) -> SubspaceWitness | None:
    """Search for an affine k_target-flat inside the d-dimensional paraboloid.

    Directions are pruned to isotropic underline vectors with vanishing last
    coordinate (any flat can be translated to one of this shape), and every
    witness is verified point-by-point before being returned.  Returns None
    when the pruned search space is exhausted.
    """
    if k_target not in (1, 2):
        raise BadParameter(f"k_target must be 1 or 2, got {k_target}")
    if d < 2:
        raise BadParameter(f"d must be >= 2, got {d}")
    if ctx.p**d > cap:
        raise InstanceTooLarge(f"p^d = {ctx.p ** d} exceeds search cap {cap}")
    p = ctx.p
    m = d - 1
    iso = _isotropic_directions(ctx, m)
    base = np.zeros(d, dtype=np.int64)

    if k_target == 1:
        for v in iso:
            direction = np.concatenate([v, [0]])
            witness = SubspaceWitness(
                ctx=ctx, d=d, k=1, base=base, directions=direction[None, :]
            )
            if witness.verify():
                return witness
        return None

    for i, v in enumerate(iso):
        vperp = iso[(iso @ v) % p == 0]
        for w in vperp:
            # skip scalar multiples of v
            if _rank2(v, w, p) < 2:
                continue
            dirs = np.stack(
                [np.concatenate([v, [0]]), np.concatenate([w, [0]])], axis=0
            )
            witness = SubspaceWitness(ctx=ctx, d=d, k=2, base=base, directions=dirs)
            if witness.verify():
                return witness
    return None


def _rank2(v: np.ndarray, w: np.ndarray, p: int) -> int:
    """Rank of the pair (v, w) over F_p."""
    nz = np.nonzero(v)[0]
    if nz.size == 0:
        return 1 if np.any(w) else 0
    piv = nz[0]
    factor = (int(w[piv]) * pow(int(v[piv]), p - 2, p)) % p
    red = (w - factor * v) % p
    return 1 + (1 if np.any(red) else 0)


def necessary_r(p_exp, d: int, k: int) -> Fraction:
    """Smallest admissible range exponent forced by a k-flat inside the surface.

    Returns max(2d/(d-1), p(d-k)/((p-1)(d-1-k))) as an exact rational, where
    p here is the Lebesgue exponent on the input side.
    """
    p_exp = Fraction(p_exp)
    if p_exp <= 1:
        raise BadParameter(f"input exponent must exceed 1, got {p_exp}")
    if k == d - 1:
        raise DegenerateSubspace("k = d-1 makes the exponent formula degenerate")
    if not 0 <= k <= d - 2:
        raise BadParameter(f"k must lie in [0, d-2], got k={k}, d={d}")
    first = Fraction(2 * d, d - 1)
    second = p_exp * (d - k) / ((p_exp - 1) * (d - 1 - k))
    return max(first, second)
