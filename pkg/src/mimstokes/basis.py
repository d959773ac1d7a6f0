"""Gauss-Lobatto-Legendre grids and the mimetic polynomial bases built on them.

A grid of order N carries N+1 nodes (the endpoints plus the extrema of the
Legendre polynomial of degree N) and the matching quadrature weights, exact
for polynomials up to degree 2N-1.  Two families of 1D basis functions are
derived from it:

* Lagrange (nodal) polynomials ``l_i``, i = 0..N, interpolating point values,
* edge polynomials ``eps_i``, i = 1..N, of degree N-1, with unit integral
  over the i-th subinterval and zero integral over every other one.

Tensor products of the two families span the 0-, 1- and 2-form spaces on the
reference square.  Evaluation is vectorised: the ``*_tab`` functions return
tabulation matrices (basis index x evaluation point) computed with the
numerically stable barycentric formula.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

_NEWTON_TOL = 1e-15
_NEWTON_MAXIT = 100


@dataclass(frozen=True)
class GllGrid:
    """Gauss-Lobatto-Legendre nodes, weights and barycentric weights."""

    order: int
    nodes: np.ndarray
    weights: np.ndarray
    bary_weights: np.ndarray = field(repr=False)

    @property
    def npoints(self) -> int:
        return self.order + 1

    def subintervals(self) -> np.ndarray:
        """(N, 2) array of consecutive node pairs [x_{p-1}, x_p]."""
        return np.column_stack([self.nodes[:-1], self.nodes[1:]])


def _legendre_and_deriv(n: int, x: np.ndarray):
    """Value and first derivative of the Legendre polynomial of degree n."""
    x = np.asarray(x, dtype=float)
    p_prev = np.ones_like(x)
    if n == 0:
        return p_prev, np.zeros_like(x)
    p = x.copy()
    for k in range(1, n):
        p_next = ((2 * k + 1) * x * p - k * p_prev) / (k + 1)
        p_prev, p = p, p_next
    # (1 - x^2) P_n' = n (P_{n-1} - x P_n); endpoints handled separately
    dp = np.empty_like(x)
    interior = np.abs(x) < 1.0
    dp[interior] = n * (p_prev[interior] - x[interior] * p[interior]) / (1.0 - x[interior] ** 2)
    endpoint = ~interior
    # |P_n'(+-1)| = n(n+1)/2 with the sign of (+-1)^{n+1}
    dp[endpoint] = np.sign(x[endpoint]) ** (n + 1) * n * (n + 1) / 2.0
    return p, dp


def gll_grid(N: int) -> GllGrid:
    """Build the GLL grid of order N >= 1.

    Interior nodes are the roots of the derivative of the Legendre polynomial
    of degree N, found by Newton iteration from Chebyshev-Lobatto starting
    values.  Raises if the iteration stalls.
    """
    if N < 1:
        raise ValueError(f"grid order must be >= 1, got {N}")
    nodes = np.empty(N + 1)
    nodes[0], nodes[N] = -1.0, 1.0
    if N > 1:
        x = -np.cos(np.pi * np.arange(1, N) / N)
        for _ in range(_NEWTON_MAXIT):
            p, dp = _legendre_and_deriv(N, x)
            # Newton step for the roots of P_N'; P_N'' from the Legendre ODE.
            d2p = (2.0 * x * dp - N * (N + 1) * p) / (1.0 - x**2)
            step = dp / d2p
            x -= step
            if np.max(np.abs(step)) < _NEWTON_TOL:
                break
        else:
            raise RuntimeError(f"GLL node iteration did not converge for N={N}")
        nodes[1:N] = x
    p, _ = _legendre_and_deriv(N, nodes)
    weights = 2.0 / (N * (N + 1) * p**2)

    diff = np.subtract.outer(nodes, nodes)
    np.fill_diagonal(diff, 1.0)
    bary = 1.0 / np.prod(diff, axis=1)
    return GllGrid(order=N, nodes=nodes, weights=weights, bary_weights=bary)


def _diff_matrix(grid: GllGrid) -> np.ndarray:
    """Spectral differentiation matrix D with D[i, j] = l_i'(x_j)."""
    x, w = grid.nodes, grid.bary_weights
    diff = np.subtract.outer(x, x)
    np.fill_diagonal(diff, 1.0)
    D = np.divide.outer(w, w) / diff.T  # D[i, j] = (w_i / w_j) / (x_j - x_i)
    np.fill_diagonal(D, 0.0)
    np.fill_diagonal(D, -np.sum(D, axis=0))
    return D


def lagrange_tab(grid: GllGrid, x) -> np.ndarray:
    """Tabulate all Lagrange polynomials: out[i, q] = l_i(x[q])."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    diff = np.subtract.outer(grid.nodes, x)
    hit = np.absolute(diff) < 1e-14
    diff[hit] = 1.0
    terms = grid.bary_weights[:, None] / diff
    on_node = hit.any(axis=0)
    tab = terms / np.sum(terms, axis=0)
    if on_node.any():
        tab[:, on_node] = 0.0
        tab[hit] = 1.0
    return tab


def lagrange_deriv_tab(grid: GllGrid, x) -> np.ndarray:
    """Tabulate Lagrange derivatives: out[i, q] = l_i'(x[q])."""
    # l_i' has degree N-1 <= N, so it is reproduced exactly by interpolating
    # its nodal values (the differentiation matrix) with the basis itself.
    return _diff_matrix(grid) @ lagrange_tab(grid, x)


def edge_tab(grid: GllGrid, x) -> np.ndarray:
    """Tabulate the edge polynomials: out[i-1, q] = eps_i(x[q]), i = 1..N."""
    dl = lagrange_deriv_tab(grid, x)
    return -np.cumsum(dl, axis=0)[:-1, :]


def lagrange_eval(grid: GllGrid, i: int, x, deriv: int = 0):
    """Evaluate l_i (or its first derivative) at the points x."""
    if not 0 <= i <= grid.order:
        raise IndexError(f"nodal index {i} outside 0..{grid.order}")
    if deriv == 0:
        tab = lagrange_tab(grid, x)
    elif deriv == 1:
        tab = lagrange_deriv_tab(grid, x)
    else:
        raise ValueError("only derivative orders 0 and 1 are supported")
    out = tab[i]
    return out if np.ndim(x) else float(out[0])


def edge_eval(grid: GllGrid, i: int, x):
    """Evaluate the edge polynomial eps_i at the points x, i = 1..N."""
    if not 1 <= i <= grid.order:
        raise IndexError(f"edge index {i} outside 1..{grid.order}")
    out = edge_tab(grid, x)[i - 1]
    return out if np.ndim(x) else float(out[0])


def tensor_eval(grid: GllGrid, k: int, index: tuple, xi: float, eta: float) -> float:
    """Evaluate one tensor-product basis function on the reference square.

    ``index`` is (i, j) for 0- and 2-forms.  For 1-forms it is (comp, i, j)
    where comp 0 selects the d-xi family eps_i(xi) l_j(eta), i = 1..N, and
    comp 1 the d-eta family l_i(xi) eps_j(eta), j = 1..N; the returned value
    is the coefficient of the stated reference component.
    """
    N = grid.order
    if k == 0:
        i, j = index
        if not (0 <= i <= N and 0 <= j <= N):
            raise IndexError(f"0-form index {index} outside span")
        return float(lagrange_eval(grid, i, xi) * lagrange_eval(grid, j, eta))
    if k == 1:
        comp, i, j = index
        if comp == 0:
            if not (1 <= i <= N and 0 <= j <= N):
                raise IndexError(f"1-form d-xi index {index} outside span")
            return float(edge_eval(grid, i, xi) * lagrange_eval(grid, j, eta))
        if comp == 1:
            if not (0 <= i <= N and 1 <= j <= N):
                raise IndexError(f"1-form d-eta index {index} outside span")
            return float(lagrange_eval(grid, i, xi) * edge_eval(grid, j, eta))
        raise IndexError(f"1-form component must be 0 or 1, got {comp}")
    if k == 2:
        i, j = index
        if not (1 <= i <= N and 1 <= j <= N):
            raise IndexError(f"2-form index {index} outside span")
        return float(edge_eval(grid, i, xi) * edge_eval(grid, j, eta))
    raise ValueError(f"form degree must be 0, 1 or 2, got {k}")


def gauss_legendre(n: int):
    """Gauss-Legendre nodes and weights on [-1, 1] (used for reduction)."""
    return np.polynomial.legendre.leggauss(n)
