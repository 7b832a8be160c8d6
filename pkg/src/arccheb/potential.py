"""Conformal maps and potential-theoretic quantities for the complement of a
circular arc.

The arc is ``{e^{it}: |t| <= alpha}`` with ``0 < alpha < pi``; its complement
in the extended plane is the domain on which every map below lives.  All
operations are pure functions.
"""

from dataclasses import dataclass, field
import cmath
import math

import numpy as np

from .errors import InfinityPole, OutsideImage, PointOnArc, QuadratureFailure

INF = complex(math.inf, 0.0)

_ALPHA_GUARD = 1e-3
_EXCLUSION_RADIUS = 1e-12

_TWO_PI = 2.0 * math.pi


def is_infinity(u):
    """True for the distinguished point at infinity."""
    return cmath.isinf(u)


@dataclass(frozen=True)
class ArcDomain:
    """The arc, its capacity and endpoints.

    ``alpha`` is restricted to ``[1e-3, pi - 1e-3]`` unless ``relax_guard``
    is set, since the maps degenerate at the endpoints of ``(0, pi)``.
    """

    alpha: float
    relax_guard: bool = field(default=False, compare=False)

    def __post_init__(self):
        if not (0.0 < self.alpha < math.pi):
            raise ValueError(f"alpha must lie in (0, pi), got {self.alpha}")
        if not self.relax_guard and not (
            _ALPHA_GUARD <= self.alpha <= math.pi - _ALPHA_GUARD
        ):
            raise ValueError(
                f"alpha={self.alpha} outside guarded range "
                f"[{_ALPHA_GUARD}, pi-{_ALPHA_GUARD}]; pass relax_guard=True"
            )

    @property
    def capacity(self):
        return math.sin(self.alpha / 2.0)

    @property
    def endpoints(self):
        return (cmath.exp(1j * self.alpha), cmath.exp(-1j * self.alpha))


def arc_distance(z, domain):
    """Distance from a finite point to the closed arc."""
    if z == 0:
        return 1.0
    t = cmath.phase(z)
    t = min(max(t, -domain.alpha), domain.alpha)
    return abs(z - cmath.exp(1j * t))


def capacity_arc(domain):
    """Logarithmic capacity of the arc, sin(alpha/2)."""
    return domain.capacity


def _check_off_arc(z, domain, exclusion_radius):
    if exclusion_radius > 0 and arc_distance(z, domain) < exclusion_radius:
        raise PointOnArc(f"point {z} within {exclusion_radius} of the arc")


def exterior_map(z, domain, exclusion_radius=_EXCLUSION_RADIUS):
    """Conformal map of the arc complement onto {|w| > sin(alpha/2)}.

    Normalized so that the map behaves like the identity at infinity.  The
    value solves 2w^2 + 2(1-z)w - z(1-cos(alpha)) = 0; of the two roots the
    image point is the one of larger modulus (they tie exactly on the arc).
    """
    if is_infinity(z):
        return INF
    _check_off_arc(z, domain, exclusion_radius)
    b = 1.0 - z
    c = -z * (1.0 - math.cos(domain.alpha)) / 2.0
    s = cmath.sqrt(b * b - 4.0 * c) / 2.0
    w_plus = (-b / 2.0) + s
    w_minus = (-b / 2.0) - s
    return w_plus if abs(w_plus) >= abs(w_minus) else w_minus


def inverse_exterior_map(w, domain, tol=1e-12):
    """Algebraic inverse of :func:`exterior_map`."""
    if is_infinity(w):
        return INF
    cap = domain.capacity
    if abs(w) < cap * (1.0 - tol):
        raise OutsideImage(f"|w|={abs(w)} below the image radius {cap}")
    return 2.0 * w * (w + 1.0) / (2.0 * w + 1.0 - math.cos(domain.alpha))


def green_inf(z, domain, exclusion_radius=_EXCLUSION_RADIUS):
    """Green's function with pole at infinity, log(|f(z)|/sin(alpha/2)).

    Points on the arc get the continuous boundary value 0.
    """
    if is_infinity(z):
        raise InfinityPole("Green's function diverges at its pole")
    if arc_distance(z, domain) < exclusion_radius:
        return 0.0
    w = exterior_map(z, domain, exclusion_radius)
    return math.log(abs(w) / domain.capacity)


def c_r_alpha(r, domain):
    """Closed form of exp(green_inf(1/r)); finite and >= 1 for all r > 0."""
    if r <= 0:
        raise ValueError("r must be positive")
    a = domain.alpha
    num = abs(1.0 - r) + math.sqrt(1.0 - 2.0 * r * math.cos(a) + r * r)
    return num / (2.0 * r * math.sin(a / 2.0))


def lambda_map(u, domain, exclusion_radius=_EXCLUSION_RADIUS):
    """Conformal map onto the sector |arg| < pi/4 of the right half plane.

    The Moebius ratio (u e^{ia} - 1)/(u - e^{ia}) omits the negative real
    axis on the arc complement, so the principal fourth root realizes the
    branch fixed by the value e^{ia/4} at infinity.
    """
    a = domain.alpha
    if is_infinity(u):
        return cmath.exp(1j * a / 4.0)
    _check_off_arc(u, domain, exclusion_radius)
    e = cmath.exp(1j * a)
    ratio = (u * e - 1.0) / (u - e)
    return cmath.exp(0.25 * cmath.log(ratio))


def kernel_k(u, u0, domain):
    """Reproducing kernel of the weighted Bergman space, pulled back by the
    sector map; real positive on the diagonal."""
    lam = lambda_map(u, domain)
    lam0 = lambda_map(u0, domain)
    k = 2.0 * lam * lam0.conjugate() / (lam + lam0.conjugate()) ** 2
    if u == u0 or (is_infinity(u) and is_infinity(u0)):
        return complex(k.real, 0.0)
    return k


def boundary_preimage_angles(z, domain):
    """Angles phi with inverse_exterior_map(cap*e^{i phi}) equal to the given
    on-arc point; interior arc points have two (one per side), endpoints one.
    """
    b = 1.0 - z
    c = -z * (1.0 - math.cos(domain.alpha)) / 2.0
    disc = b * b - 4.0 * c
    # endpoints are double roots; rounding in the discriminant would split
    # them into two spurious angles straddling the true one
    if abs(disc) < 1e-12 * (abs(b) ** 2 + 4.0 * abs(c)):
        return [cmath.phase(-b / 2.0)]
    s = cmath.sqrt(disc) / 2.0
    roots = ((-b / 2.0) + s, (-b / 2.0) - s)
    angles = []
    for w in roots:
        phi = cmath.phase(w)
        if not any(
            abs(cmath.exp(1j * phi) - cmath.exp(1j * p)) < 1e-9 for p in angles
        ):
            angles.append(phi)
    return angles


# ---------------------------------------------------------------------------
# quadrature over the boundary circle |w| = cap
# ---------------------------------------------------------------------------

_GAUSS_CACHE = {}


def _gauss_nodes(order):
    if order not in _GAUSS_CACHE:
        xs, ws = np.polynomial.legendre.leggauss(order)
        _GAUSS_CACHE[order] = (xs, ws)
    return _GAUSS_CACHE[order]


def _trapezoid_mean(f, tol, n0=512, nmax=65536):
    """Mean over [0, 2pi) of a periodic function by doubling trapezoid."""
    n = n0
    phi = np.arange(n) * (_TWO_PI / n)
    mean = float(np.mean(f(phi)))
    while n < nmax:
        mid = phi + math.pi / n
        mid_mean = float(np.mean(f(mid)))
        new_mean = 0.5 * (mean + mid_mean)
        phi = np.sort(np.concatenate([phi, mid]))
        n *= 2
        if abs(new_mean - mean) < tol:
            return new_mean
        mean = new_mean
    raise QuadratureFailure(
        f"trapezoid rule did not reach tolerance {tol} with {nmax} nodes"
    )


def _graded_interval_mean(f, a, b, order):
    """Integral of f over (a, b) with integrable singularities allowed at
    both ends, by dyadically graded panels toward each endpoint."""
    xs, ws = _gauss_nodes(order)
    mid = 0.5 * (a + b)
    total = 0.0
    for lo_anchor, half in ((a, mid - a), (b, a - mid)):
        # panels [anchor + half/2^{k+1}, anchor + half/2^k]; signed half
        width = half
        level = 0
        while abs(width) > 1e-13 * abs(half) and level < 60:
            p0 = lo_anchor + width / 2.0
            p1 = lo_anchor + width
            lo, hi = (p0, p1) if p1 > p0 else (p1, p0)
            scale = 0.5 * (hi - lo)
            pts = 0.5 * (hi + lo) + scale * xs
            total += scale * float(np.dot(ws, f(pts)))
            width /= 2.0
            level += 1
    return total


def _graded_mean(f, splits, tol):
    """Mean over [0, 2pi) of a periodic f with log singularities at the
    given angles; cross-validated with two Gauss orders."""
    s = np.sort(np.mod(np.asarray(splits, dtype=float), _TWO_PI))
    # merge near-coincident splits to their midpoint; a pair straddling a
    # true singularity would otherwise anchor the grading slightly off it
    merged = []
    for phi in s:
        if merged and phi - merged[-1] < 1e-7:
            merged[-1] = 0.5 * (merged[-1] + phi)
        else:
            merged.append(phi)
    if len(merged) > 1 and (merged[0] + _TWO_PI) - merged[-1] < 1e-7:
        merged[0] = 0.5 * (merged[0] + merged[-1] - _TWO_PI)
        merged.pop()
    s = np.asarray(merged)
    bounds = list(s) + [s[0] + _TWO_PI]
    results = []
    for order in (16, 24):
        total = 0.0
        for a, b in zip(bounds[:-1], bounds[1:]):
            total += _graded_interval_mean(f, a, b, order)
        results.append(total / _TWO_PI)
    if abs(results[0] - results[1]) > max(tol, 1e-12):
        raise QuadratureFailure(
            f"graded panels disagree: {results[0]} vs {results[1]}"
        )
    return results[1]


def _boundary_points(phi, domain):
    """On-arc points parametrized by the angle of the exterior circle."""
    cap = domain.capacity
    w = cap * np.exp(1j * phi)
    z = 2.0 * w * (w + 1.0) / (2.0 * w + 1.0 - math.cos(domain.alpha))
    return z


def _singular_split_angles(weight, domain):
    """Preimage angles of on-arc or near-arc weight nodes and table
    breakpoints.

    Nodes merely close to the arc make log(w) sharply peaked rather than
    singular; the doubling trapezoid rule converges like exp(-n d) in the
    distance d and stalls, while panels graded toward the nearest on-arc
    angle resolve the peak, so near nodes are graded too.
    """
    splits = []
    for node, _ in weight.powers:
        if arc_distance(node, domain) < 0.25:
            t = min(max(cmath.phase(node), -domain.alpha), domain.alpha)
            splits.extend(boundary_preimage_angles(cmath.exp(1j * t), domain))
    if weight.table is not None:
        for theta, _ in weight.table:
            t = min(max(theta, -domain.alpha), domain.alpha)
            splits.extend(boundary_preimage_angles(cmath.exp(1j * t), domain))
    return splits


def _log_weight_on_circle(weight, domain):
    def f(phi):
        z = _boundary_points(phi, domain)
        return weight.log_values(z, domain)

    return f


def mu_log_integral(weight, domain, tol=1e-9):
    """Integral of log(w) against the equilibrium measure of the arc.

    Computed as the average of log(w) over the boundary circle of the
    exterior map; nodes lying on the arc are handled by graded panels.
    """
    f = _log_weight_on_circle(weight, domain)
    splits = _singular_split_angles(weight, domain)
    if splits:
        return _graded_mean(f, splits, tol)
    return _trapezoid_mean(f, tol)


def harmonic_measure_log_integral(weight, u0, domain, tol=1e-9):
    """Integral of log(w) against harmonic measure at u0.

    Reduces to :func:`mu_log_integral` for u0 at infinity; otherwise the
    Poisson kernel of the exterior disk is evaluated at f(u0)/cap.
    """
    if is_infinity(u0):
        return mu_log_integral(weight, domain, tol)
    zeta0 = exterior_map(u0, domain) / domain.capacity
    g = _log_weight_on_circle(weight, domain)
    mod2 = abs(zeta0) ** 2

    def f(phi):
        kern = (mod2 - 1.0) / np.abs(zeta0 - np.exp(1j * phi)) ** 2
        return kern * g(phi)

    splits = _singular_split_angles(weight, domain)
    if splits:
        # the kernel peaks at arg(zeta0); keep a split there for grading
        splits = splits + [cmath.phase(zeta0)]
        return _graded_mean(f, splits, tol)
    return _trapezoid_mean(f, tol)


def outer_modulus(weight, u, domain, tol=1e-9):
    """Modulus of the outer function of the weight at a point of the arc
    complement; the phase is deliberately not computed."""
    return math.exp(-harmonic_measure_log_integral(weight, u, domain, tol))
