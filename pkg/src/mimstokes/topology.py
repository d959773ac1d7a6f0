"""Oriented tensor-product cell complexes and their incidence matrices.

A complex on an n1 x n2 (x n3) grid of edges collects nodes, edges, faces
(and volumes in 3D) with lexicographic numbering, first axis fastest.
1-cells are grouped by direction axis (all xi-directed edges first, then
eta-, then zeta-directed); in 3D, 2-cells are grouped by their normal axis.
Every cell carries the default orientation aligned with the positive
coordinate axes; faces take the counterclockwise boundary sense of their
own area form.

Incidence matrices are stored in the coboundary form E^(k, k-1): row = k-cell,
column = (k-1)-cell, entries in {-1, 0, +1}.  The boundary operator is the
transpose.  ``E^(k+1,k) @ E^(k,k-1) == 0`` holds exactly in integer
arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp


@dataclass(frozen=True)
class CellComplex:
    """Tensor-product complex of k-cells with lexicographic numbering."""

    dim: int
    edges_per_axis: tuple[int, ...]
    counts: tuple[int, ...]

    def node_count(self) -> int:
        return self.counts[0]

    def cell_count(self, k: int) -> int:
        return self.counts[k]


def _cell_counts(dim: int, n: tuple[int, ...]) -> tuple[int, ...]:
    if dim == 2:
        n1, n2 = n
        return (
            (n1 + 1) * (n2 + 1),
            n1 * (n2 + 1) + (n1 + 1) * n2,
            n1 * n2,
        )
    n1, n2, n3 = n
    return (
        (n1 + 1) * (n2 + 1) * (n3 + 1),
        n1 * (n2 + 1) * (n3 + 1) + (n1 + 1) * n2 * (n3 + 1) + (n1 + 1) * (n2 + 1) * n3,
        (n1 + 1) * n2 * n3 + n1 * (n2 + 1) * n3 + n1 * n2 * (n3 + 1),
        n1 * n2 * n3,
    )


def build_tensor_complex(dim: int, edges_per_axis) -> CellComplex:
    """Build the complex for a grid with the given number of edges per axis."""
    if dim not in (2, 3):
        raise ValueError(f"dimension must be 2 or 3, got {dim}")
    n = tuple(int(v) for v in edges_per_axis)
    if len(n) != dim:
        raise ValueError(f"expected {dim} edge counts, got {len(n)}")
    if any(v < 1 for v in n):
        raise ValueError(f"edge counts must be positive, got {n}")
    return CellComplex(dim=dim, edges_per_axis=n, counts=_cell_counts(dim, n))


def _diff_1d(n: int) -> sp.csr_matrix:
    """1D difference matrix (n x n+1): row i has -1 at i and +1 at i+1."""
    data = np.tile([-1, 1], n)
    rows = np.repeat(np.arange(n), 2)
    cols = np.column_stack([np.arange(n), np.arange(1, n + 1)]).ravel()
    return sp.csr_matrix((data, (rows, cols)), shape=(n, n + 1), dtype=np.int64)


def _eye(n: int) -> sp.csr_matrix:
    return sp.identity(n, dtype=np.int64, format="csr")


def _incidence_2d(n1: int, n2: int, k: int) -> sp.csr_matrix:
    D1, D2 = _diff_1d(n1), _diff_1d(n2)
    if k == 1:
        # edge value = node at head minus node at tail
        return sp.vstack([sp.kron(_eye(n2 + 1), D1), sp.kron(D2, _eye(n1 + 1))]).tocsr()
    # face row: +bottom +right -top -left (counterclockwise boundary)
    return sp.hstack([sp.kron(-D2, _eye(n1)), sp.kron(_eye(n2), D1)]).tocsr()


def _incidence_3d(n: tuple[int, int, int], k: int) -> sp.csr_matrix:
    n1, n2, n3 = n
    D = [_diff_1d(m) for m in n]
    In = [_eye(m + 1) for m in n]  # node-indexed axes
    Ic = [_eye(m) for m in n]  # cell-indexed axes

    def kron3(a3, a2, a1):
        # axis 1 fastest: kron order is (axis3, axis2, axis1)
        return sp.kron(a3, sp.kron(a2, a1))

    if k == 1:
        return sp.vstack(
            [
                kron3(In[2], In[1], D[0]),
                kron3(In[2], D[1], In[0]),
                kron3(D[2], In[1], In[0]),
            ]
        ).tocsr()
    if k == 2:
        # Faces grouped by normal axis a; boundary signs follow the cyclic
        # area form (s, t) = (a+1, a+2): +s(t min) +t(s max) -s(t max) -t(s min).
        zero = lambda r, c: sp.csr_matrix((r, c), dtype=np.int64)
        nx = (n1 + 1) * n2 * n3  # xi-normal faces
        ny = n1 * (n2 + 1) * n3
        nz = n1 * n2 * (n3 + 1)
        ne1 = n1 * (n2 + 1) * (n3 + 1)
        ne2 = (n1 + 1) * n2 * (n3 + 1)
        ne3 = (n1 + 1) * (n2 + 1) * n3
        row_x = sp.hstack([zero(nx, ne1), kron3(-D[2], Ic[1], In[0]), kron3(Ic[2], D[1], In[0])])
        row_y = sp.hstack([kron3(D[2], In[1], Ic[0]), zero(ny, ne2), kron3(Ic[2], In[1], -D[0])])
        row_z = sp.hstack([kron3(In[2], -D[1], Ic[0]), kron3(In[2], Ic[1], D[0]), zero(nz, ne3)])
        return sp.vstack([row_x, row_y, row_z]).tocsr()
    # k == 3: volume row: +face at axis max, -face at axis min, per axis
    return sp.hstack(
        [
            kron3(Ic[2], Ic[1], D[0]),
            kron3(Ic[2], D[1], Ic[0]),
            kron3(D[2], Ic[1], Ic[0]),
        ]
    ).tocsr()


def incidence(complex: CellComplex, k: int) -> sp.csr_matrix:
    """Coboundary incidence matrix E^(k, k-1) of the complex, 1 <= k <= dim."""
    if not 1 <= k <= complex.dim:
        raise ValueError(f"degree {k} outside 1..{complex.dim}")
    if complex.dim == 2:
        E = _incidence_2d(*complex.edges_per_axis, k)
    else:
        E = _incidence_3d(complex.edges_per_axis, k)
    assert E.shape == (complex.counts[k], complex.counts[k - 1])
    return E


def coboundary_apply(E: sp.spmatrix, c: np.ndarray) -> np.ndarray:
    """Apply the coboundary operator to a cochain (discrete grad/curl/div)."""
    c = np.asarray(c)
    if c.shape[0] != E.shape[1]:
        raise ValueError(f"cochain length {c.shape[0]} does not match {E.shape[1]} cells")
    return E @ c


def write_coo(matrix: sp.spmatrix, path) -> None:
    """Dump a sparse matrix as '(row, col, value)' text triples."""
    coo = matrix.tocoo()
    order = np.lexsort((coo.col, coo.row))
    with open(path, "w") as fh:
        fh.write(f"# {coo.shape[0]} {coo.shape[1]} {coo.nnz}\n")
        for r, c, v in zip(coo.row[order], coo.col[order], coo.data[order]):
            fh.write(f"{r} {c} {v:.17g}\n")
