"""Pointwise tensor pipeline: web plus admissible point -> TensorSnapshot.

Everything is computed from the degree-3 jets of the two defining functions
at the point, so the only numeric error anywhere is float roundoff:

    fbar[i][j] = df^i/dx^j           ftilde[i][j] = df^i/dy^j
    gbar = fbar^-1                   gtilde = ftilde^-1
    gamma[i][j][k] = - sum_{l,m} (d2 f^i/dx^l dy^m) gbar[l][j] gtilde[m][k]
    torsion[i][j][k] = (gamma[i][j][k] - gamma[i][k][j]) / 2
    a_cov[j] = 2 * sum_m torsion[m][j][m]

    b[i][j][k][l] = 1/2 ( D1_j gamma[i][k][l] + D1_k gamma[i][j][l]
                          - D2_l gamma[i][k][j] - D2_j gamma[i][k][l]
                          + gamma[m][j][l] gamma[i][k][m]
                          - gamma[m][k][j] gamma[i][m][l]
                          + 2 gamma[m][k][l] torsion[i][m][j] )

    p[i][k] = D1_k a_cov[i] - a_cov[j] gamma[j][k][i]
    q[i][k] = D2_k a_cov[i] - a_cov[j] gamma[j][i][k]

where D1_j = gbar[m][j] d/dx^m and D2_j = gtilde[m][j] d/dy^m are the frame
directional derivatives dual to the base forms of the first two foliations.
The symmetric decomposition follows:

    h2 = 1/4 * sym3(b)^k_{kij} - 1/3 (p + q)      (sym3 = mean over the six
    f2 = p + h2,  g2 = q + h2,  s = f2 + g2 + h2   permutations of jkl)
    a4[i][j][k][l] = sym3(b)[i][j][k][l]
                     - 1/3 (s[j][k] d[i][l] + s[k][l] d[i][j] + s[l][j] d[i][k])

Derived invariants that must hold by construction are asserted here:
the Jacobian inverses, the torsion reconstruction from the covector, and
(for isoclinic webs) the vanishing trace of a4.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .expr import Web
from .jet import Jet, jet_lift, INDEX

# positions of the four first-order coefficients inside a jet
_E1 = tuple(INDEX[tuple(1 if i == v else 0 for i in range(4))]
            for v in range(4))


class DegenerateWeb(ValueError):
    """A Jacobian block is singular at the point: no web structure there."""


class StructureViolation(AssertionError):
    """The torsion failed its forced algebraic shape; implementation bug."""


class InadmissiblePoint(ValueError):
    """The point violates the web's domain constraints."""


@dataclass
class TensorSnapshot:
    """Every differential invariant of the web at one point."""

    point: tuple
    params: dict
    fbar: np.ndarray       # (2,2)  df^i/dx^j
    ftilde: np.ndarray     # (2,2)  df^i/dy^j
    gbar: np.ndarray       # (2,2)  inverse of fbar
    gtilde: np.ndarray     # (2,2)  inverse of ftilde
    det_bar: float
    det_til: float
    gamma: np.ndarray      # (2,2,2)  gamma[i][j][k]
    omega_coeffs: np.ndarray  # (2,2,2,2)  [0][i][j][k], [1][i][j][k]
    torsion: np.ndarray    # (2,2,2)
    a_cov: np.ndarray      # (2,)
    b: np.ndarray          # (2,2,2,2)
    p: np.ndarray          # (2,2)
    q: np.ndarray          # (2,2)
    f2: np.ndarray         # (2,2)
    g2: np.ndarray         # (2,2)
    h2: np.ndarray         # (2,2)
    a4: np.ndarray         # (2,2,2,2)
    t_ratio: float | None  # a_cov[1]/a_cov[0], None when a_cov[0] ~ 0
    non_isoclinic: bool    # p or q asymmetric beyond tolerance

    _FIELDS = {
        "fbar": 2, "ftilde": 2, "gbar": 2, "gtilde": 2,
        "gamma": 3, "torsion": 3, "a_cov": 1,
        "b": 4, "p": 2, "q": 2, "f2": 2, "g2": 2, "h2": 2, "a4": 4,
    }

    def lookup(self, path):
        """Resolve a dotted component path like "b.2111" or "a_cov.1".

        Indices are 1-based, upper index first, matching the order the
        tensors are written in.  "s" resolves to f2 + g2 + h2.  Scalar
        fields ("t_ratio", "det_bar", "det_til") take no index part.
        """
        if "." not in path:
            if path in ("t_ratio", "det_bar", "det_til"):
                return getattr(self, path)
            raise KeyError("unknown snapshot path %r" % path)
        name, _, digits = path.partition(".")
        if name == "s":
            arr = self.f2 + self.g2 + self.h2
            rank = 2
        elif name in self._FIELDS:
            arr = getattr(self, name)
            rank = self._FIELDS[name]
        else:
            raise KeyError("unknown snapshot field %r" % name)
        if len(digits) != rank or not digits.isdigit():
            raise KeyError("field %r needs %d indices, got %r"
                           % (name, rank, digits))
        idx = tuple(int(d) - 1 for d in digits)
        if any(i not in (0, 1) for i in idx):
            raise KeyError("indices in %r must be 1 or 2" % path)
        return float(arr[idx])

    def to_dict(self):
        """JSON-ready dict; arrays become nested lists."""
        out = {"point": [float(c) for c in self.point],
               "params": dict(sorted(self.params.items())),
               "det_bar": float(self.det_bar),
               "det_til": float(self.det_til),
               "t_ratio": None if self.t_ratio is None
                          else float(self.t_ratio),
               "non_isoclinic": bool(self.non_isoclinic)}
        for name in ("fbar", "ftilde", "gbar", "gtilde", "gamma",
                     "omega_coeffs", "torsion", "a_cov", "b", "p", "q",
                     "f2", "g2", "h2", "a4"):
            out[name] = getattr(self, name).tolist()
        return out


def _invert2(m, label, point):
    det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    dv = det.value
    scale = max(abs(e.value) for row in m for e in row)
    if dv == 0.0 or abs(dv) < 1e-10 * scale * scale:
        raise DegenerateWeb("det %s = %g at %s: defining functions are "
                            "degenerate here" % (label, dv, (point,)))
    inv_det = det.reciprocal()
    inv = [[m[1][1] * inv_det, -(m[0][1] * inv_det)],
           [-(m[1][0] * inv_det), m[0][0] * inv_det]]
    return inv, dv


def _values2(m):
    return np.array([[m[0][0].value, m[0][1].value],
                     [m[1][0].value, m[1][1].value]])


def sym3_lower(b):
    """Mean over the six permutations of the three lower indices."""
    out = np.zeros((2, 2, 2, 2))
    for j, k, l in itertools.product(range(2), repeat=3):
        out[:, j, k, l] = sum(b[:, pj, pk, pl] for pj, pk, pl
                              in itertools.permutations((j, k, l))) / 6.0
    return out


def snapshot(web: Web, point, params=None, margin=1e-3, check_domain=True):
    """Compute every invariant of the web at one admissible point."""
    bound = web.bind(params)
    if check_domain:
        broken = web.violated_constraint(point, bound, margin)
        if broken is not None:
            raise InadmissiblePoint(
                "inadmissible point %s: constraint %s fails"
                % (tuple(point), broken))

    F = [jet_lift(web.u1, point, bound), jet_lift(web.u2, point, bound)]

    fbar_j = [[F[i].deriv(j) for j in range(2)] for i in range(2)]
    ftil_j = [[F[i].deriv(2 + j) for j in range(2)] for i in range(2)]
    gbar_j, det_bar = _invert2(fbar_j, "fbar", point)
    gtil_j, det_til = _invert2(ftil_j, "ftilde", point)

    # mixed Hessian and the connection coefficients, still as jets so their
    # first derivatives remain available for the curvature
    H = [[[fbar_j[i][l].deriv(2 + m) for m in range(2)] for l in range(2)]
         for i in range(2)]
    G = [[[-sum(H[i][l][m] * gbar_j[l][j] * gtil_j[m][k]
                for l in range(2) for m in range(2))
           for k in range(2)] for j in range(2)] for i in range(2)]
    a3 = [[[(G[i][j][k] - G[i][k][j]) * 0.5 for k in range(2)]
           for j in range(2)] for i in range(2)]
    acov_j = [2.0 * (a3[0][j][0] + a3[1][j][1]) for j in range(2)]

    gbar_v = _values2(gbar_j)
    gtil_v = _values2(gtil_j)
    gamma = np.array([[[G[i][j][k].value for k in range(2)]
                       for j in range(2)] for i in range(2)])
    torsion = np.array([[[a3[i][j][k].value for k in range(2)]
                         for j in range(2)] for i in range(2)])
    a_cov = np.array([acov_j[0].value, acov_j[1].value])

    # forced algebraic shape of the torsion: a^i_jk = (a_j d^i_k - a_k d^i_j)/2
    recon = np.zeros((2, 2, 2))
    for i, j, k in itertools.product(range(2), repeat=3):
        recon[i, j, k] = 0.5 * (a_cov[j] * (i == k) - a_cov[k] * (i == j))
    resid = np.max(np.abs(torsion - recon)) / max(1.0, np.max(np.abs(torsion)))
    if resid > 1e-8:
        raise StructureViolation("torsion reconstruction residual %g" % resid)

    # frame directional derivatives of a jet-valued field, value only
    def d1(jet, j):
        return sum(jet.c[_E1[m]] * gbar_v[m][j] for m in range(2))

    def d2(jet, j):
        return sum(jet.c[_E1[2 + m]] * gtil_v[m][j] for m in range(2))

    b = np.zeros((2, 2, 2, 2))
    for i, j, k, l in itertools.product(range(2), repeat=4):
        quad1 = sum(gamma[m][j][l] * gamma[i][k][m] for m in range(2))
        quad2 = sum(gamma[m][k][j] * gamma[i][m][l] for m in range(2))
        tor = sum(gamma[m][k][l] * torsion[i][m][j] for m in range(2))
        b[i, j, k, l] = 0.5 * (d1(G[i][k][l], j) + d1(G[i][j][l], k)
                               - d2(G[i][k][j], l) - d2(G[i][k][l], j)
                               + quad1 - quad2 + 2.0 * tor)

    p = np.zeros((2, 2))
    q = np.zeros((2, 2))
    for i, k in itertools.product(range(2), repeat=2):
        p[i, k] = d1(acov_j[i], k) - sum(a_cov[j] * gamma[j][k][i]
                                         for j in range(2))
        q[i, k] = d2(acov_j[i], k) - sum(a_cov[j] * gamma[j][i][k]
                                         for j in range(2))

    sym = sym3_lower(b)
    bkk = sym[0, 0] + sym[1, 1]          # sym(b)^k_{k i j} as a 2x2 block
    h2 = 0.25 * bkk - (p + q) / 3.0
    f2 = p + h2
    g2 = q + h2
    s2 = f2 + g2 + h2

    a4 = np.array(sym)
    for i, j, k, l in itertools.product(range(2), repeat=4):
        a4[i, j, k, l] -= (s2[j, k] * (i == l) + s2[k, l] * (i == j)
                           + s2[l, j] * (i == k)) / 3.0

    pq_scale = max(1.0, np.max(np.abs(p)), np.max(np.abs(q)))
    non_isoclinic = (abs(p[0, 1] - p[1, 0]) > 1e-7 * pq_scale
                     or abs(q[0, 1] - q[1, 0]) > 1e-7 * pq_scale)

    if not non_isoclinic:
        trace = a4[0, 0] + a4[1, 1]      # a4^i_{i k l}
        tr_resid = np.max(np.abs(trace)) / max(1.0, np.max(np.abs(a4)))
        if tr_resid > 1e-8:
            raise StructureViolation("a4 trace residual %g" % tr_resid)

    if abs(a_cov[0]) > 1e-9 * max(1.0, abs(a_cov[1])):
        t_ratio = a_cov[1] / a_cov[0]
    else:
        t_ratio = None

    omega = np.zeros((2, 2, 2, 2))
    omega[0] = np.transpose(gamma, (0, 2, 1))   # coeff of base form 1: gamma[i][k][j]
    omega[1] = gamma                            # coeff of base form 2: gamma[i][j][k]

    return TensorSnapshot(
        point=tuple(float(c) for c in point),
        params=bound,
        fbar=_values2(fbar_j), ftilde=_values2(ftil_j),
        gbar=gbar_v, gtilde=gtil_v,
        det_bar=det_bar, det_til=det_til,
        gamma=gamma, omega_coeffs=omega,
        torsion=torsion, a_cov=a_cov,
        b=b, p=p, q=q, f2=f2, g2=g2, h2=h2, a4=a4,
        t_ratio=t_ratio, non_isoclinic=non_isoclinic,
    )
