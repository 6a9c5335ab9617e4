"""Brute-force ground truth on finite grids.

Grids are finite sets of events (flat) or cylinder points with the causal
relation stored as explicit edges.  They are independent of the analytic
shortcuts elsewhere in the package: only the order predicates are shared.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .cylinder import CylPoint, DescentVerdict, cyl_leq, cyl_to_json, project
from .embedding import Domain
from .exactmaps import Rational
from .flatcone import CausalAutomorphism, Event, auto_apply_inverse, causally_leq, event_to_json

FLAT = "flat"
CYLINDER = "cylinder"

Space = Union[str, Domain]


class ImageOffGrid(ValueError):
    pass


@dataclass(frozen=True)
class CausalGrid:
    points: tuple
    edges: frozenset  # (i, j), i != j, points[i] <= points[j]
    space: str
    domain: Optional[Domain] = None

    def __len__(self):
        return len(self.points)

    def leq(self, i: int, j: int) -> bool:
        return i == j or (i, j) in self.edges

    def matrix(self) -> np.ndarray:
        m = np.eye(len(self.points), dtype=bool)
        for i, j in self.edges:
            m[i, j] = True
        return m

    def to_json(self) -> dict:
        enc = event_to_json if self.space == FLAT else cyl_to_json
        return {
            "space": self.space,
            "nodes": [dict(id=i, **enc(p)) for i, p in enumerate(self.points)],
            "edges": sorted([i, j] for i, j in self.edges),
        }


def _predicate(space: str) -> Callable:
    return causally_leq if space == FLAT else cyl_leq


def _split_space(space: Space) -> tuple[str, Optional[Domain]]:
    if isinstance(space, Domain):
        return FLAT, space
    if space in (FLAT, "plane"):
        return FLAT, None
    if space in (CYLINDER, "cyl"):
        return CYLINDER, None
    raise ValueError(f"unknown space {space!r}")


def grid_from_points(points: Sequence, space: Space) -> CausalGrid:
    """Edges by the exact predicate on every ordered pair (slow, independent)."""
    kind, domain = _split_space(space)
    pts = tuple(sorted(set(points), key=_sort_key))
    leq = _predicate(kind)
    edges = frozenset(
        (i, j) for i, p in enumerate(pts) for j, r in enumerate(pts) if i != j and leq(p, r)
    )
    return CausalGrid(pts, edges, kind, domain)


def _sort_key(p):
    return (p.t, p.x) if isinstance(p, Event) else (p.t, p.theta)


def lattice_points(space: Space, n: int) -> list:
    if n < 1:
        raise ValueError("grid size n must be >= 1")
    kind, domain = _split_space(space)
    if kind == FLAT:
        pts = [Event(Rational(i, n), Rational(j, n)) for i in range(-n, n + 1) for j in range(-n, n + 1)]
        if domain is not None:
            pts = [p for p in pts if p in domain]
    else:
        k = 2 * n + 1
        pts = [CylPoint(Rational(i, k), Rational(j, n)) for i in range(k) for j in range(-n, n + 1)]
    return sorted(pts, key=_sort_key)


def build_grid(space: Space, n: int) -> CausalGrid:
    """Lattice grid with edges from an integer-scaled vectorised comparison.

    Flat: ``(2n+1)^2`` points ``(i/n, j/n)`` over ``[-1, 1]^2`` clipped to the
    domain.  Cylinder: angles ``k/(2n+1)`` and times ``j/n``, ``|j| <= n``.
    """
    kind, domain = _split_space(space)
    pts = lattice_points(space, n)
    if kind == FLAT:
        x = np.array([int(p.x * n) for p in pts], dtype=np.int64)
        t = np.array([int(p.t * n) for p in pts], dtype=np.int64)
        dx = x[None, :] - x[:, None]
        dt = t[None, :] - t[:, None]
        rel = dt >= np.abs(dx)
    else:
        k = 2 * n + 1
        scale = n * k
        th = np.array([int(p.theta * scale) for p in pts], dtype=np.int64)
        t = np.array([int(p.t * scale) for p in pts], dtype=np.int64)
        dth = np.mod(th[None, :] - th[:, None], scale)
        circ = np.minimum(dth, scale - dth)
        dt = t[None, :] - t[:, None]
        rel = (dt >= 0) & (circ <= dt)
    np.fill_diagonal(rel, False)
    ii, jj = np.nonzero(rel)
    return CausalGrid(tuple(pts), frozenset(zip(ii.tolist(), jj.tolist())), kind, domain)


def is_partial_order(grid: CausalGrid) -> bool:
    m = grid.matrix()
    if np.any(m & m.T & ~np.eye(len(m), dtype=bool)):
        return False
    mi = m.astype(np.int64)
    return bool(np.all((mi @ mi > 0) <= m))


def check_order_iso(fn: Callable, g1: CausalGrid, g2: Optional[CausalGrid] = None) -> bool:
    """Is ``fn`` an order isomorphism from ``g1`` onto its image?

    Without ``g2`` the image grid is built from the exact images.  With
    ``g2`` every image must already be one of its points.
    """
    images = [fn(p) for p in g1.points]
    for img in images:
        if isinstance(img, Event):
            coords = (img.x, img.t)
        elif isinstance(img, CylPoint):
            coords = (img.theta, img.t)
        else:
            coords = ()
        if not coords or not all(isinstance(c, Rational) for c in coords):
            raise ImageOffGrid(f"image {img!r} is not exact")
    if g2 is None:
        g2 = grid_from_points(images, g1.space)
    index = {p: i for i, p in enumerate(g2.points)}
    try:
        idx = [index[img] for img in images]
    except KeyError as exc:
        raise ImageOffGrid(f"image {exc.args[0]!r} is not a point of the target grid") from None
    if len(set(idx)) != len(idx):
        return False
    n = len(g1.points)
    return all(g1.leq(i, j) == g2.leq(idx[i], idx[j]) for i in range(n) for j in range(n))


# -- descent adjudication ---------------------------------------------------

def descent_witness(g: CausalAutomorphism, n: int, shifts: int = 2):
    """First obstruction to descent found on the cylinder grid, or ``None``.

    Returns ``(verdict, a, b)`` where ``a, b`` are the offending points.
    """
    grid = lattice_points(CYLINDER, n)
    for p in grid:
        base = project(g(p.lift()))
        for s in range(-shifts, shifts + 1):
            other = project(g(p.lift(s)))
            if other != base:
                return DescentVerdict.NOT_WELL_DEFINED, p.lift(), p.lift(s)
    for p in grid:
        image = project(g(p.lift()))
        for k in range(-3, 4):
            pre = project(auto_apply_inverse(g, image.lift(k)))
            if pre != p:
                return DescentVerdict.WELL_DEFINED_NOT_INJECTIVE, p, pre
    return None


def check_descent_brute(g: CausalAutomorphism, n: int = 4) -> DescentVerdict:
    """Verdict from explicit lifts and preimages on a cylinder grid of size n."""
    found = descent_witness(g, n)
    if found is not None:
        return found[0]
    grid = build_grid(CYLINDER, n)
    if not check_order_iso(lambda p: project(g(p.lift())), grid):
        raise AssertionError("descended bijection fails to preserve the cylinder order")
    return DescentVerdict.AUTOMORPHISM
