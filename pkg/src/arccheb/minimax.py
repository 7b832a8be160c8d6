"""Grid minimax solver for weighted Chebyshev polynomials.

The solver runs a Lawson-type iteratively reweighted least-squares phase,
whose weighted least-squares values are true lower bounds on the grid
minimax, then polishes with an interior-point second-order cone solve in a
discrete orthonormal basis.  The basis is rebuilt by an Arnoldi-style
recurrence, so monomials are never formed.  An LP oracle and a Kolmogorov
certificate provide independent optimality checks.
"""

from dataclasses import dataclass, field
import cmath
import json
import math
import warnings

import clarabel
import numpy as np
import scipy.sparse as sp
from scipy.optimize import linprog

from .errors import (
    DegenerateNormalization,
    EmptyExtremalSet,
    LPFailure,
    NoConvergence,
    SizeTooSmall,
    WrongNormalization,
)
from .potential import is_infinity
from .weights import UNIT_WEIGHT

MONIC = "monic"
POINT = "point"


@dataclass(frozen=True)
class Grid:
    """Discretization of an arc or lemniscatic arc with cached weights."""

    points: np.ndarray
    params: np.ndarray
    weight_values: np.ndarray
    strategy: str

    def __post_init__(self):
        if len(self.points) != len(self.weight_values):
            raise ValueError("points and weight_values must align")
        if not np.any(self.weight_values > 0):
            raise ValueError("grid needs at least one positive weight value")

    @property
    def size(self):
        return len(self.points)


def _theta_nodes(alpha, size, strategy):
    if strategy == "chebyshev_theta":
        j = np.arange(size)
        return -alpha * np.cos(j * math.pi / (size - 1))
    if strategy == "uniform_theta":
        return np.linspace(-alpha, alpha, size)
    if strategy == "hybrid":
        both = np.concatenate(
            [
                _theta_nodes(alpha, size, "chebyshev_theta"),
                _theta_nodes(alpha, size, "uniform_theta"),
            ]
        )
        both = np.sort(both)
        keep = np.concatenate(([True], np.diff(both) > 1e-14))
        return both[keep]
    raise ValueError(f"unknown grid strategy {strategy!r}")


def build_grid(domain, size, strategy="chebyshev_theta", weight=UNIT_WEIGHT):
    """Grid on the circular arc with cached weight values."""
    if size < 2:
        raise SizeTooSmall("grid needs at least two points")
    theta = _theta_nodes(domain.alpha, size, strategy)
    pts = np.exp(1j * theta)
    wv = weight.values(pts)
    return Grid(points=pts, params=theta, weight_values=wv, strategy=strategy)


def build_lemniscate_grid(spec, size, strategy="chebyshev_theta"):
    """Grid on the lemniscatic arc: all m-th roots of r e^{i theta} - 1.

    Points exactly satisfy z^m + 1 = r e^{i theta}; at r=1, theta=0 the m
    branches collapse onto z=0 and the duplicates are removed.
    """
    theta = _theta_nodes(spec.alpha, size, strategy)
    pts = []
    pars = []
    for t in theta:
        target = spec.r * cmath.exp(1j * t) - 1.0
        rho = abs(target) ** (1.0 / spec.m)
        base = cmath.phase(target) / spec.m
        for k in range(spec.m):
            z = rho * cmath.exp(1j * (base + 2.0 * math.pi * k / spec.m))
            pts.append(z)
            pars.append((k, t))
    pts = np.asarray(pts)
    order = np.lexsort((pts.imag, pts.real))
    pts = pts[order]
    pars = np.asarray(pars, dtype=float)[order]
    keep = np.concatenate(([True], np.abs(np.diff(pts)) > 1e-10))
    pts, pars = pts[keep], pars[keep]
    return Grid(
        points=pts,
        params=pars,
        weight_values=np.ones(len(pts)),
        strategy=strategy,
    )


# ---------------------------------------------------------------------------
# discrete orthonormal basis (Vandermonde-with-Arnoldi style)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Basis:
    """Orthonormal polynomial basis on a grid: values, recurrence, leading
    monomial coefficients."""

    values: np.ndarray  # (N, degree+1) polynomial values at the grid
    hess: np.ndarray  # (degree+1, degree) projection coefficients
    sub: np.ndarray  # (degree,) subdiagonal norms
    start: float  # q_0 == 1/start
    lead: np.ndarray  # (degree+1,) leading monomial coefficients

    def eval_at(self, u):
        """Values of all basis polynomials at an arbitrary complex point."""
        n = self.sub.size
        q = np.empty(n + 1, dtype=complex)
        q[0] = 1.0 / self.start
        for k in range(n):
            q[k + 1] = (u * q[k] - self.hess[: k + 1, k] @ q[: k + 1]) / self.sub[k]
        return q

    def monomial_matrix(self):
        """Columns express each basis polynomial in the monomial basis.
        Ill-conditioned for large degrees; callers flag accordingly."""
        n = self.sub.size
        C = np.zeros((n + 1, n + 1), dtype=complex)
        C[0, 0] = 1.0 / self.start
        for k in range(n):
            shifted = np.zeros(n + 1, dtype=complex)
            shifted[1 : k + 2] = C[: k + 1, k]
            shifted -= C[:, : k + 1] @ self.hess[: k + 1, k]
            C[:, k + 1] = shifted / self.sub[k]
        return C


def _arnoldi_basis(x, d, degree):
    """Basis orthonormal under <f,g> = sum d_j f_j conj(g_j); the values are
    tracked at every grid point, including those with d_j == 0."""
    N = x.size
    Q = np.empty((N, degree + 1), dtype=complex)
    H = np.zeros((degree + 1, degree), dtype=complex)
    sub = np.empty(degree)
    lead = np.empty(degree + 1)
    s0 = math.sqrt(float(np.sum(d)))
    Q[:, 0] = 1.0 / s0
    lead[0] = 1.0 / s0
    for k in range(degree):
        v = x * Q[:, k]
        for _ in range(2):  # classical Gram-Schmidt, twice
            h = Q[:, : k + 1].conj().T @ (d * v)
            H[: k + 1, k] += h
            v = v - Q[:, : k + 1] @ h
        hn = math.sqrt(float(np.sum(d * np.abs(v) ** 2)))
        if hn <= 1e-300:
            raise ArithmeticError(
                "basis recurrence broke down: multipliers support fewer "
                "points than the degree requires"
            )
        sub[k] = hn
        Q[:, k + 1] = v / hn
        lead[k + 1] = lead[k] / hn
    return _Basis(values=Q, hess=H, sub=sub, start=s0, lead=lead)


# ---------------------------------------------------------------------------
# solutions
# ---------------------------------------------------------------------------


@dataclass
class PolySolution:
    """A computed grid-minimax polynomial."""

    degree: int
    normalization: str  # MONIC or POINT
    point: complex  # normalization point (inf for monic)
    basis: _Basis
    coefficients: np.ndarray  # in the orthonormal basis
    grid_values: np.ndarray  # P at every grid point
    norm: float
    extremal_set: np.ndarray
    certificate: float
    iterations: int
    converged: bool
    lawson_gap: float

    def __call__(self, u):
        """Evaluate the polynomial at an arbitrary complex point."""
        return complex(self.basis.eval_at(u) @ self.coefficients)

    def leading_coefficient(self):
        return complex(self.coefficients[-1] * self.basis.lead[-1])

    def monomial_coefficients(self):
        """Coefficients in the monomial basis (lowest degree first)."""
        return self.basis.monomial_matrix() @ self.coefficients

    def export_json(self, extremal_params=None):
        coeffs = self.monomial_coefficients()
        doc = {
            "degree": self.degree,
            "normalization": self.normalization,
            "point": None
            if is_infinity(self.point)
            else [self.point.real, self.point.imag],
            "coefficients": [[c.real, c.imag] for c in coeffs],
            "ill_conditioned": self.degree > 40,
            "norm": self.norm,
            "extremal_indices": [int(i) for i in self.extremal_set],
            "extremal_params": extremal_params,
            "certificate": self.certificate,
            "iterations": self.iterations,
            "converged": self.converged,
        }
        return json.dumps(doc)


def _point_nullspace(basis, point):
    """Minimum-norm interpolant of 1 at the point, plus an orthonormal basis
    of the coefficient subspace whose polynomials vanish there."""
    n = basis.sub.size
    q = basis.eval_at(point)
    a0 = q.conj() / float(np.sum(np.abs(q) ** 2))
    proj = np.eye(n + 1, dtype=complex) - np.outer(q.conj(), q) / float(
        np.sum(np.abs(q) ** 2)
    )
    u_mat, _, _ = np.linalg.svd(proj)
    return a0, u_mat[:, :n]


def _solve_weighted_lsq(basis, d, w, point):
    """Minimizer of sum d_j |w_j P_j|^2 under the normalization; d already
    folds in w^2, so the basis is orthonormal for the constrained problem."""
    n = basis.sub.size
    if point is None:
        a = np.zeros(n + 1, dtype=complex)
        a[n] = 1.0 / basis.lead[n]
    else:
        q = basis.eval_at(point)
        a = q.conj() / float(np.sum(np.abs(q) ** 2))
    return a, basis.values @ a


def _socp_polish(basis, w, point):
    """Exact grid-minimax solve in the current orthonormal basis via an
    interior-point second-order cone program: minimize t subject to
    |w_j P(x_j)| <= t at every grid point."""
    n = basis.sub.size
    if point is None:
        if n == 0:
            return None
        fixed_a = np.zeros(n + 1, dtype=complex)
        fixed_a[n] = 1.0 / basis.lead[n]
        free = basis.values[:, :n]
        carrier = np.eye(n + 1, dtype=complex)[:, :n]
    else:
        if n == 0:
            return None
        fixed_a, carrier = _point_nullspace(basis, point)
        free = basis.values @ carrier
    fixed = w * (basis.values @ fixed_a)
    B = w[:, None] * free
    N, dim = B.shape
    # the problem is positively homogeneous; rescale the fixed part to O(1)
    # so the cone solver's absolute tolerances bite (monic fixed parts decay
    # like capacity^degree)
    scale = float(np.abs(fixed).max())
    if scale <= 0.0:
        return None
    fixed = fixed / scale

    # variables y = [Re c, Im c, t]; cone rows (t, Re r_j, Im r_j)
    nvar = 2 * dim + 1
    rows = np.empty((3 * N, nvar))
    rows[0::3, :] = 0.0
    rows[0::3, -1] = -1.0
    rows[1::3, :dim] = -B.real
    rows[1::3, dim : 2 * dim] = B.imag
    rows[1::3, -1] = 0.0
    rows[2::3, :dim] = -B.imag
    rows[2::3, dim : 2 * dim] = -B.real
    rows[2::3, -1] = 0.0
    b = np.empty(3 * N)
    b[0::3] = 0.0
    b[1::3] = fixed.real
    b[2::3] = fixed.imag
    q = np.zeros(nvar)
    q[-1] = 1.0
    P = sp.csc_matrix((nvar, nvar))
    A = sp.csc_matrix(rows)
    cones = [clarabel.SecondOrderConeT(3)] * N
    settings = clarabel.DefaultSettings()
    settings.verbose = False
    settings.tol_gap_abs = 1e-12
    settings.tol_gap_rel = 1e-12
    settings.tol_feas = 1e-12
    solver = clarabel.DefaultSolver(P, q, A, b, cones, settings)
    sol = solver.solve()
    status = str(sol.status)
    if status not in ("Solved", "AlmostSolved"):
        return None
    y = np.asarray(sol.x)
    c = scale * (y[:dim] + 1j * y[dim : 2 * dim])
    coeffs = fixed_a + carrier @ c
    return coeffs, basis.values @ coeffs, status == "Solved"


def solve_minimax(
    grid,
    degree,
    point=None,
    tol=1e-10,
    max_iter=1000,
    extremal_delta=1e-6,
    raise_on_stall=False,
    polish=True,
):
    """Weighted Chebyshev polynomial on the grid.

    ``point=None`` (or infinity) requests the monic normalization; a finite
    ``point`` requests P(point)=1.  The reported norm is the recomputed
    maximum of w|P| over the grid.  With ``polish`` the Lawson phase is cut
    short and the cone solve takes over; without it the Lawson iteration
    runs to ``max_iter`` on its own (sublinear, roughly gap ~ 1/iter).
    """
    x = np.asarray(grid.points, dtype=complex)
    w = np.asarray(grid.weight_values, dtype=float)
    N = x.size
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    if N < degree + 2:
        raise SizeTooSmall(f"grid of {N} points cannot resolve degree {degree}")
    if N < 8 * degree + 16:
        warnings.warn(
            f"grid of {N} points is small for degree {degree}; "
            "recommend at least 8*degree+16",
            stacklevel=2,
        )
    if point is not None and is_infinity(point):
        point = None
    if point is not None:
        point = complex(point)
        if np.min(np.abs(x - point)) < 1e-12:
            raise DegenerateNormalization(f"point {point} lies on the grid")

    active = w > 0
    omega = np.where(active, 1.0 / N, 0.0)
    omega /= omega.sum()
    gamma = 2.0
    prev_max = math.inf
    prev_lsq = -math.inf
    best = None
    best_lsq = 0.0
    iterations = 0
    converged = False
    gap = math.inf
    lawson_cap = min(max_iter, 30) if polish else max_iter

    def _iterate(om):
        d = om * w * w
        basis = _arnoldi_basis(x, d, degree)
        coeffs, vals = _solve_weighted_lsq(basis, d, w, point)
        resid = w * np.abs(vals)
        maxr = float(resid.max())
        lsq = math.sqrt(float(np.sum(om * resid**2)))
        return basis, coeffs, vals, resid, maxr, lsq

    basis, coeffs, vals, resid, maxr, lsq = _iterate(omega)
    for iterations in range(1, lawson_cap + 1):
        best_lsq = max(best_lsq, lsq)
        gap = (maxr - best_lsq) / maxr if maxr > 0 else 0.0
        if best is None or maxr < best[0]:
            best = (maxr, coeffs, vals, basis, gap)
        relchange = abs(maxr - prev_max) / maxr if maxr > 0 else 0.0
        if relchange < tol or gap < 1e-12:
            converged = True
            break
        prev_max = maxr
        prev_lsq = lsq
        # Lawson multiplier update: mirror ascent on the concave weighted
        # least-squares dual, with an adaptive exponent.  Steps that lower
        # the dual value are rejected and retried with a halved exponent.
        while True:
            upd = np.where(active, resid / maxr, 0.0) ** gamma
            cand = omega * upd
            cand = np.where(active, np.maximum(cand, 1e-300), 0.0)
            cand /= cand.sum()
            basis, coeffs, vals, resid_new, maxr_new, lsq_new = _iterate(cand)
            if lsq_new >= prev_lsq or gamma <= 0.25:
                omega = cand
                resid, maxr, lsq = resid_new, maxr_new, lsq_new
                gamma = min(gamma * 1.2, 64.0)
                break
            gamma = max(gamma / 2.0, 0.25)

    maxr, coeffs, vals, basis, gap = best
    polished_ok = False
    if polish and not converged:
        # cone polish on a uniformly weighted basis; each Lawson lsq value
        # remains a valid lower bound, so the gap stays meaningful
        pbasis = _arnoldi_basis(x, np.where(active, w * w, 0.0) / N, degree)
        polished = _socp_polish(pbasis, w, point)
        if polished is not None:
            pc, pv, solved = polished
            pmax = float((w * np.abs(pv)).max())
            if pmax <= maxr:
                basis, coeffs, vals, maxr = pbasis, pc, pv, pmax
                polished_ok = True
                converged = solved
                gap = (maxr - best_lsq) / maxr if maxr > 0 else 0.0
    resid = w * np.abs(vals)
    extremal = np.nonzero(resid >= (1.0 - extremal_delta) * maxr)[0]
    solution = PolySolution(
        degree=degree,
        normalization=MONIC if point is None else POINT,
        point=complex(math.inf, 0.0) if point is None else point,
        basis=basis,
        coefficients=coeffs,
        grid_values=vals,
        norm=maxr,
        extremal_set=extremal,
        certificate=math.nan,
        iterations=iterations,
        converged=converged,
        lawson_gap=gap,
    )
    solution.certificate = optimality_certificate(solution, grid)
    if polished_ok and solution.certificate <= 1e-6:
        # the cone solver stopped at reduced accuracy but the Kolmogorov
        # residual certifies grid optimality to working tolerance
        converged = True
        solution.converged = True
    if not converged and raise_on_stall:
        raise NoConvergence(
            f"Lawson iteration cap {max_iter} exceeded (gap {gap:.2e})",
            solution=solution,
        )
    return solution


# ---------------------------------------------------------------------------
# independent checks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OracleBracket:
    """LP value with the polygonal-approximation bracket around the true
    grid optimum."""

    value: float
    lower: float
    upper: float

    def contains(self, v, slack=0.0):
        return self.lower - slack <= v <= self.upper + slack


def brute_oracle_minimax(grid, degree, point=None, directions=128):
    """Grid-minimax value by an epigraph LP over polygonal modulus
    constraints; intended as an oracle for degree <= 3, small grids."""
    if degree > 3:
        raise ValueError("oracle supports degree <= 3 only")
    if grid.size > 256:
        raise ValueError("oracle supports grids of <= 256 points")
    if point is not None and is_infinity(point):
        point = None
    x = np.asarray(grid.points, dtype=complex)
    w = np.asarray(grid.weight_values, dtype=float)
    K = directions
    phase = np.exp(2j * math.pi * np.arange(K) / K)

    if point is None:
        free_degrees = list(range(degree))
        fixed = w * x**degree
    else:
        free_degrees = list(range(degree + 1))
        fixed = np.zeros_like(x)

    nfree = len(free_degrees)
    V = np.column_stack([x**dg for dg in free_degrees]) if nfree else None

    rows = []
    rhs = []
    for k in range(K):
        rot = phase[k]
        if nfree:
            wv = w[:, None] * V * rot
            block = np.concatenate([wv.real, -wv.imag], axis=1)
        else:
            block = np.zeros((x.size, 0))
        rows.append(np.concatenate([block, -np.ones((x.size, 1))], axis=1))
        rhs.append(-np.real(rot * fixed))
    A_ub = np.vstack(rows)
    b_ub = np.concatenate(rhs)

    if point is None:
        A_eq = None
        b_eq = None
    else:
        pv = np.array([complex(point) ** dg for dg in free_degrees])
        A_eq = np.array(
            [
                np.concatenate([pv.real, -pv.imag, [0.0]]),
                np.concatenate([pv.imag, pv.real, [0.0]]),
            ]
        )
        b_eq = np.array([1.0, 0.0])

    cost = np.zeros(2 * nfree + 1)
    cost[-1] = 1.0
    bounds = [(None, None)] * (2 * nfree) + [(0.0, None)]
    res = linprog(
        cost, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=b_eq, bounds=bounds,
        method="highs",
    )
    if not res.success:
        raise LPFailure(res.message)
    t = float(res.fun)
    # the polygon with inradius t contains the modulus disk, so the LP value
    # is a lower bound; its circumradius t*sec(pi/K) caps the true optimum
    return OracleBracket(value=t, lower=t, upper=t / math.cos(math.pi / K))


def optimality_certificate(solution, grid, directions=64):
    """Kolmogorov residual: the best guaranteed decrease rate over unit-norm
    admissible directions, zero (to LP accuracy) at grid optima."""
    E = solution.extremal_set
    if E.size == 0:
        raise EmptyExtremalSet("no extremal points recorded")
    w = np.asarray(grid.weight_values, dtype=float)
    basis = solution.basis
    n = solution.degree

    if solution.normalization == MONIC:
        if n == 0:
            return 0.0
        D = basis.values[:, :n]  # degree < n adjustments
    else:
        if n == 0:
            return 0.0
        _, carrier = _point_nullspace(basis, solution.point)
        D = basis.values @ carrier

    dim = D.shape[1]
    wP = w * solution.grid_values
    wD = w[:, None] * D

    # maximize s subject to:
    #   -Re[conj(wP)_j (wQ)_j]/norm >= s            for j in extremal set
    #   |wQ_j| <= 1 (polygonal, K directions)       for j in extremal set
    K = directions
    phase = np.exp(2j * math.pi * np.arange(K) / K)
    gE = (wP[E].conj()[:, None] * wD[E]) / solution.norm
    A_desc = np.concatenate([gE.real, -gE.imag, np.ones((E.size, 1))], axis=1)
    rows = [A_desc]
    rhs = [np.zeros(E.size)]
    for k in range(K):
        blk = wD[E] * phase[k]
        rows.append(
            np.concatenate(
                [blk.real, -blk.imag, np.zeros((E.size, 1))], axis=1
            )
        )
        rhs.append(np.ones(E.size))
    A_ub = np.vstack(rows)
    b_ub = np.concatenate(rhs)
    cost = np.zeros(2 * dim + 1)
    cost[-1] = -1.0
    bounds = [(None, None)] * (2 * dim) + [(None, 1.0)]
    res = linprog(cost, A_ub=A_ub, b_ub=b_ub, bounds=bounds, method="highs")
    if not res.success:
        raise LPFailure(res.message)
    return max(0.0, float(-res.fun))


def widom_factor(solution, cap):
    """Norm scaled by the capacity power of the degree (monic solutions)."""
    if solution.normalization != MONIC:
        raise WrongNormalization("Widom factor requires a monic solution")
    if cap <= 0:
        raise ValueError("capacity must be positive")
    return solution.norm / cap**solution.degree


def residual_value(solution):
    """Extremal residual value at the normalization point, 1/norm."""
    if solution.normalization != POINT:
        raise WrongNormalization("residual value requires point normalization")
    return 1.0 / solution.norm
