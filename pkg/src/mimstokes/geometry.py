"""Multi-element meshes of the unit square with analytic element maps.

The domain [0,1]^2 is tiled by an M x M grid of elements.  Each element map
is the composition of an affine tile map into global reference coordinates
(s, t) in [-1,1]^2 with a global map onto the unit square:

* ``cartesian``: (x, y) = ((s+1)/2, (t+1)/2),
* ``sine``: x = 1/2 + (s + sin(pi s) sin(pi t)/5)/2 and the same for y with
  s, t swapped in the linear term, which curves interior element boundaries
  while the outer boundary stays the straight unit square.

Tile boundaries are uniform by default; ``grading='boundary'`` places them
at the GLL points of order M, clustering elements near the walls.

Jacobians are analytic.  ``MetricData`` holds, per quadrature point, the
weights that realise the physical L2 inner products on the reference square:
det J for 0-forms, G = (J^T J)^{-1} det J for 1-forms and 1/det J for
2-forms.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .basis import GllGrid, gll_grid, lagrange_tab, lagrange_deriv_tab, edge_tab
from .topology import CellComplex, build_tensor_complex

SEGMENTS = ("bottom", "right", "top", "left")

_SINE_AMPLITUDE = 0.2


@dataclass(frozen=True)
class ElementMap:
    """Map from the reference square onto one (possibly curved) element."""

    kind: str  # 'cartesian' | 'sine'
    s_bounds: tuple[float, float]  # tile extent in global reference coords
    t_bounds: tuple[float, float]

    def _tile(self, xi, eta):
        s0, s1 = self.s_bounds
        t0, t1 = self.t_bounds
        s = s0 + 0.5 * (np.asarray(xi) + 1.0) * (s1 - s0)
        t = t0 + 0.5 * (np.asarray(eta) + 1.0) * (t1 - t0)
        return s, t

    def eval(self, xi, eta):
        """Physical coordinates (x, y) at reference points (xi, eta)."""
        s, t = self._tile(xi, eta)
        if self.kind == "cartesian":
            return 0.5 * (s + 1.0), 0.5 * (t + 1.0)
        bump = _SINE_AMPLITUDE * np.sin(np.pi * s) * np.sin(np.pi * t)
        x = 0.5 + 0.5 * (s + bump)
        y = 0.5 + 0.5 * (t + bump)
        return x, y

    def jacobian(self, xi, eta):
        """Jacobian J[..., a, b] = d x_a / d (xi, eta)_b and det J."""
        s, t = self._tile(xi, eta)
        ds_dxi = 0.5 * (self.s_bounds[1] - self.s_bounds[0])
        dt_deta = 0.5 * (self.t_bounds[1] - self.t_bounds[0])
        shape = np.broadcast(s, t).shape
        J = np.empty(shape + (2, 2))
        if self.kind == "cartesian":
            J[..., 0, 0] = 0.5 * ds_dxi
            J[..., 0, 1] = 0.0
            J[..., 1, 0] = 0.0
            J[..., 1, 1] = 0.5 * dt_deta
        else:
            cs, ss = np.cos(np.pi * s), np.sin(np.pi * s)
            ct, st = np.cos(np.pi * t), np.sin(np.pi * t)
            bump_s = np.pi * _SINE_AMPLITUDE * cs * st
            bump_t = np.pi * _SINE_AMPLITUDE * ss * ct
            J[..., 0, 0] = 0.5 * (1.0 + bump_s) * ds_dxi
            J[..., 0, 1] = 0.5 * bump_t * dt_deta
            J[..., 1, 0] = 0.5 * bump_s * ds_dxi
            J[..., 1, 1] = 0.5 * (1.0 + bump_t) * dt_deta
        det = J[..., 0, 0] * J[..., 1, 1] - J[..., 0, 1] * J[..., 1, 0]
        return J, det


def map_eval(emap: ElementMap, xi, eta):
    return emap.eval(xi, eta)


def jacobian_eval(emap: ElementMap, xi, eta):
    return emap.jacobian(xi, eta)


def metric_factors(emap: ElementMap, k: int, xi, eta):
    """Inner-product weights of k-form reference components at (xi, eta)."""
    J, det = emap.jacobian(xi, eta)
    if np.any(det <= 0.0):
        bad = np.argwhere(np.atleast_1d(det) <= 0.0)
        raise ValueError(f"non-positive Jacobian determinant at point index {bad[0]}")
    if k == 0:
        return det
    if k == 2:
        return 1.0 / det
    if k != 1:
        raise ValueError(f"form degree must be 0, 1 or 2, got {k}")
    # (J^T J)^{-1} det J, written out for 2x2
    g11 = J[..., 0, 0] ** 2 + J[..., 1, 0] ** 2
    g12 = J[..., 0, 0] * J[..., 0, 1] + J[..., 1, 0] * J[..., 1, 1]
    g22 = J[..., 0, 1] ** 2 + J[..., 1, 1] ** 2
    G = np.empty(J.shape)
    G[..., 0, 0] = g22 / det
    G[..., 0, 1] = -g12 / det
    G[..., 1, 0] = -g12 / det
    G[..., 1, 1] = g11 / det
    return G


@dataclass
class QuadratureBlock:
    """Per-element geometric data at one tensor quadrature rule."""

    points_1d: np.ndarray
    weights_1d: np.ndarray
    weights_2d: np.ndarray  # (P,)
    xy: np.ndarray  # (n_el, P, 2) mapped coordinates
    jac: np.ndarray  # (n_el, P, 2, 2)
    det: np.ndarray  # (n_el, P)
    g1: np.ndarray  # (n_el, P, 2, 2) 1-form weight (J^T J)^{-1} det J
    # Tabulations of the reference bases at the rule, shared by all elements.
    lag: np.ndarray  # (N+1, n_q)
    dlag: np.ndarray
    edge: np.ndarray  # (N, n_q)


@dataclass
class MappedMesh:
    """M x M spectral element mesh with a shared global cell complex."""

    M: int
    N: int
    map_kind: str
    grading: str
    grid: GllGrid
    elem_maps: list[ElementMap]
    complex: CellComplex
    local_complex: CellComplex
    quad: dict[str, QuadratureBlock] = field(default_factory=dict)

    @property
    def n_elements(self) -> int:
        return self.M * self.M

    @property
    def h(self) -> float:
        return 1.0 / self.M

    @property
    def uniform_elements(self) -> bool:
        """All elements congruent, so local matrices can be shared."""
        return self.map_kind == "cartesian" and self.grading == "uniform"

    def element_index(self, p: int, q: int) -> int:
        return p + q * self.M

    def quad_block(self, rule: str) -> QuadratureBlock:
        return self.quad[rule]


def _tile_boundaries(M: int, grading: str) -> np.ndarray:
    if grading == "uniform":
        return np.linspace(-1.0, 1.0, M + 1)
    if grading == "boundary":
        if M == 1:
            return np.array([-1.0, 1.0])
        return gll_grid(M).nodes
    raise ValueError(f"unknown grading {grading!r}")


def _build_quad_block(mesh: MappedMesh, n_q: int) -> QuadratureBlock:
    qgrid = gll_grid(n_q - 1)
    pts, wts = qgrid.nodes, qgrid.weights
    xi2 = np.tile(pts, n_q)  # first axis fastest
    eta2 = np.repeat(pts, n_q)
    w2 = np.repeat(wts, n_q) * np.tile(wts, n_q)
    n_el, P = mesh.n_elements, n_q * n_q
    xy = np.empty((n_el, P, 2))
    jac = np.empty((n_el, P, 2, 2))
    det = np.empty((n_el, P))
    g1 = np.empty((n_el, P, 2, 2))
    for e, emap in enumerate(mesh.elem_maps):
        x, y = emap.eval(xi2, eta2)
        xy[e, :, 0], xy[e, :, 1] = x, y
        J, d = emap.jacobian(xi2, eta2)
        jac[e], det[e] = J, d
        g1[e] = metric_factors(emap, 1, xi2, eta2)
    return QuadratureBlock(
        points_1d=pts,
        weights_1d=wts,
        weights_2d=w2,
        xy=xy,
        jac=jac,
        det=det,
        g1=g1,
        lag=lagrange_tab(mesh.grid, pts),
        dlag=lagrange_deriv_tab(mesh.grid, pts),
        edge=edge_tab(mesh.grid, pts),
    )


def build_mesh(M: int, N: int, map_kind: str = "cartesian", grading: str = "uniform") -> MappedMesh:
    """Build an M x M mesh of order-N elements over the unit square."""
    if M < 1 or N < 1:
        raise ValueError(f"need M >= 1 and N >= 1, got M={M}, N={N}")
    if map_kind not in ("cartesian", "sine"):
        raise ValueError(f"unknown map kind {map_kind!r}")
    bounds = _tile_boundaries(M, grading)
    elem_maps = []
    for q in range(M):
        for p in range(M):
            elem_maps.append(
                ElementMap(
                    kind=map_kind,
                    s_bounds=(bounds[p], bounds[p + 1]),
                    t_bounds=(bounds[q], bounds[q + 1]),
                )
            )
    mesh = MappedMesh(
        M=M,
        N=N,
        map_kind=map_kind,
        grading=grading,
        grid=gll_grid(N),
        elem_maps=elem_maps,
        complex=build_tensor_complex(2, (M * N, M * N)),
        local_complex=build_tensor_complex(2, (N, N)),
    )
    mesh.quad["default"] = _build_quad_block(mesh, N + 1)
    mesh.quad["over"] = _build_quad_block(mesh, N + 3)
    return mesh


def boundary_nodes(mesh: MappedMesh, segment: str) -> np.ndarray:
    """Global ids of the 0-cells on one boundary segment (corners included)."""
    n = mesh.M * mesh.N
    idx = np.arange(n + 1)
    if segment == "bottom":
        return idx
    if segment == "top":
        return idx + n * (n + 1)
    if segment == "left":
        return idx * (n + 1)
    if segment == "right":
        return idx * (n + 1) + n
    raise ValueError(f"unknown segment {segment!r}")


def boundary_edges(mesh: MappedMesh, segment: str) -> np.ndarray:
    """Global ids of the 1-cells lying on one boundary segment."""
    n = mesh.M * mesh.N
    n_xi = n * (n + 1)
    idx = np.arange(n)
    if segment == "bottom":
        return idx
    if segment == "top":
        return idx + n * n
    if segment == "left":
        return n_xi + idx * (n + 1)
    if segment == "right":
        return n_xi + idx * (n + 1) + n
    raise ValueError(f"unknown segment {segment!r}")


def mesh_summary(mesh: MappedMesh) -> str:
    """Human-readable mesh description for debugging."""
    lines = [
        f"mesh: {mesh.M}x{mesh.M} elements, order N={mesh.N}, "
        f"map={mesh.map_kind}, grading={mesh.grading}",
        f"global cells: {mesh.complex.counts}",
    ]
    corners = np.array([[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]])
    for e, emap in enumerate(mesh.elem_maps):
        x, y = emap.eval(corners[:, 0], corners[:, 1])
        pts = ", ".join(f"({xv:.4f},{yv:.4f})" for xv, yv in zip(x, y))
        lines.append(f"element {e}: corners {pts}")
    return "\n".join(lines)
