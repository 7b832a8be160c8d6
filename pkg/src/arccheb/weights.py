"""Product-form weight functions on the arc.

A weight is a positive constant times power factors ``|u - u_j|^{s_j}``
times an optional tabulated base factor, piecewise linear in the angle.
"""

from dataclasses import dataclass, field
import cmath
import json
import math

import numpy as np

from .errors import OutsideArc, SingularNode
from .potential import arc_distance

_ON_ARC_TOL = 1e-10


@dataclass(frozen=True)
class WeightSpec:
    """Weight w(u) = constant * base(arg u) * prod |u - u_j|^{s_j}.

    ``powers`` is a tuple of (node, exponent) pairs; ``table`` an optional
    tuple of (theta, value) breakpoints with strictly increasing theta and
    values in [1/bound, bound].
    """

    constant: float = 1.0
    powers: tuple = ()
    table: tuple = None
    bound: float = 1.0

    def __post_init__(self):
        if self.constant <= 0:
            raise ValueError("constant must be positive")
        object.__setattr__(
            self,
            "powers",
            tuple((complex(n), float(s)) for n, s in self.powers),
        )
        if self.table is not None:
            tab = tuple((float(t), float(v)) for t, v in self.table)
            if len(tab) < 2:
                raise ValueError("table needs at least two breakpoints")
            thetas = [t for t, _ in tab]
            if any(b <= a for a, b in zip(thetas, thetas[1:])):
                raise ValueError("table thetas must be strictly increasing")
            if self.bound < 1.0:
                raise ValueError("base bound must be >= 1")
            for _, v in tab:
                if not (1.0 / self.bound <= v <= self.bound):
                    raise ValueError(
                        f"table value {v} outside [1/{self.bound}, {self.bound}]"
                    )
            object.__setattr__(self, "table", tab)

    @property
    def is_unit(self):
        return self.constant == 1.0 and not self.powers and self.table is None

    def singular_on_arc(self, domain):
        """Nodes with negative exponent lying on the closed arc."""
        return tuple(
            n
            for n, s in self.powers
            if s < 0 and arc_distance(n, domain) < _ON_ARC_TOL
        )

    def _base_values(self, theta):
        if self.table is None:
            return np.ones_like(theta)
        ts = np.array([t for t, _ in self.table])
        vs = np.array([v for _, v in self.table])
        th = np.clip(theta, ts[0], ts[-1])
        return np.interp(th, ts, vs)

    def values(self, u):
        """Vectorized evaluation on points of the arc (no range checks)."""
        u = np.asarray(u, dtype=complex)
        out = np.full(u.shape, float(self.constant))
        for node, s in self.powers:
            d = np.abs(u - node)
            if s < 0 and np.any(d == 0.0):
                raise SingularNode(f"weight has a pole at node {node}")
            with np.errstate(divide="ignore"):
                out = out * d**s
        if self.table is not None:
            out = out * self._base_values(np.angle(u))
        return out

    def log_values(self, u, domain=None):
        """Vectorized log w on arc points; -inf at zeros of the weight."""
        u = np.asarray(u, dtype=complex)
        out = np.full(u.shape, math.log(self.constant))
        for node, s in self.powers:
            d = np.abs(u - node)
            if s < 0 and np.any(d == 0.0):
                raise SingularNode(f"weight has a pole at node {node}")
            with np.errstate(divide="ignore"):
                out = out + s * np.log(d)
        if self.table is not None:
            out = out + np.log(self._base_values(np.angle(u)))
        return out

    def scaled(self, c):
        """Same weight with the constant multiplied by c > 0."""
        return WeightSpec(self.constant * c, self.powers, self.table, self.bound)

    def to_json(self):
        doc = {"const": self.constant}
        if self.powers:
            doc["powers"] = [
                {"re": n.real, "im": n.imag, "s": s} for n, s in self.powers
            ]
        if self.table is not None:
            doc["table"] = [[t, v] for t, v in self.table]
            doc["M"] = self.bound
        return json.dumps(doc)

    @classmethod
    def from_json(cls, text):
        doc = json.loads(text)
        if not any(k in doc for k in ("const", "powers", "table")):
            raise ValueError("weight JSON needs one of const/powers/table")
        powers = tuple(
            (complex(p["re"], p.get("im", 0.0)), p["s"])
            for p in doc.get("powers", [])
        )
        table = doc.get("table")
        return cls(
            constant=doc.get("const", 1.0),
            powers=powers,
            table=tuple((t, v) for t, v in table) if table else None,
            bound=doc.get("M", 1.0),
        )


UNIT_WEIGHT = WeightSpec()


def eval_weight(spec, u, domain=None):
    """Evaluate the weight at a single point of the arc.

    Checks that the point sits on the unit circle (and, when a domain is
    given, within the arc's angular range).
    """
    u = complex(u)
    if abs(abs(u) - 1.0) > _ON_ARC_TOL:
        raise OutsideArc(f"|u|={abs(u)} is not on the unit circle")
    if domain is not None and abs(cmath.phase(u)) > domain.alpha + _ON_ARC_TOL:
        raise OutsideArc(f"arg(u)={cmath.phase(u)} outside [-alpha, alpha]")
    return float(spec.values(np.array([u]))[0])


def lemniscate_reduced_weight(m, r, l):
    """Weight |r*zeta - 1|^{l/m} of the symmetry-reduced arc problem,
    written as r^{l/m} |zeta - 1/r|^{l/m}."""
    if not (isinstance(m, int) and m >= 1):
        raise ValueError("m must be a positive integer")
    if not (0 <= l < m):
        raise ValueError("l must satisfy 0 <= l < m")
    if r <= 0:
        raise ValueError("r must be positive")
    if l == 0:
        return UNIT_WEIGHT
    s = l / m
    return WeightSpec(constant=r**s, powers=((complex(1.0 / r), s),))
