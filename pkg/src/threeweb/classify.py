"""Randomized identity testing and the class lattice of a web.

Class membership statements ("this tensor vanishes identically", "this
ratio is constant") are decided by sampling admissible points uniformly
from a box, computing the full TensorSnapshot at each, and measuring the
largest relative residual.  All the fields involved are real-analytic on
the admissible domain, so vanishing at 64 random points is overwhelming
evidence of identical vanishing; borderline residuals (within a decade of
the tolerance) are surfaced through the report's `inconclusive` list
instead of being silently rounded to a verdict.  Sample points whose
Jacobian blocks are nearly singular are skipped (see NDET_FLOOR): the
pipeline's values there are dominated by roundoff and would poison the
residuals of identities that genuinely hold.

Residuals are always measured against the larger of 1 and the magnitude of
the tensors entering the tested identity, so roundoff noise from large
intermediate values cannot flip a verdict.

The label lattice, with the defining predicate of each label:

  A   torsion covector not identically zero
      A1 both quadratic torsion-direction forms vanish (integrability of
         the transversal distribution), A2 otherwise
      A11 a1, a2 both nonvanishing and t = a2/a1 constant
          A111 both cubic hexagonality polynomials vanish at t
      A12 a2 = 0 (+ p22 = q22 = 0)       A121 omega_2^1 = 0 and b^i_222 = 0
      A13 a1 = 0 (+ p11 = q11 = 0)       A131 omega_1^2 = 0 and b^i_111 = 0
      A112 a1 = a2 (+ the summed quadratic form vanishes)
          A1121 balanced connection forms and hexagonality at t = 1
  B   torsion covector identically zero
  C   a4 tensor not identically zero: C1 s = 0; C11 f+g = 0 and h = 0;
      C12 f = g = h = 0; C2 otherwise
  D   a4 = 0 (transversally geodesic): D1 s != 0; D2 s = 0 (hexagonal);
      D21 Bol (f+g = 0, h = 0, not group); D22 hexagonal only;
      D23 group (f = g = h = 0): D231 with torsion, D232 parallelizable
  E1..E8  vanishing patterns of the p/q matrices, most specific first
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace

import numpy as np

from .expr import Web
from .tensor import TensorSnapshot, snapshot, sym3_lower, DegenerateWeb


class SamplerExhausted(RuntimeError):
    """Could not find enough admissible sample points in the budget."""


@dataclass(frozen=True)
class RunConfig:
    """Sampling and tolerance settings shared by library and CLI."""

    points: int = 64
    tol: float = 1e-7
    seed: int = 42
    box: tuple = (-3.0, 3.0)
    margin: float = 1e-3

    def __post_init__(self):
        if self.points < 8:
            raise ValueError("need at least 8 sample points, got %d"
                             % self.points)
        if not (0.0 < self.tol < 1e-3):
            raise ValueError("tol must be in (0, 1e-3), got %g" % self.tol)
        lo, hi = self.box
        if not (lo < hi):
            raise ValueError("box must satisfy lo < hi, got %r" % (self.box,))
        if self.margin <= 0:
            raise ValueError("margin must be positive")

    def to_dict(self):
        return {"points": self.points, "tol": self.tol, "seed": self.seed,
                "box": [self.box[0], self.box[1]], "margin": self.margin}


@dataclass(frozen=True)
class IdentityVerdict:
    holds: bool
    max_residual: float
    points_tested: int
    witness: tuple | None = None

    def to_dict(self):
        out = {"holds": self.holds, "max_residual": self.max_residual,
               "points_tested": self.points_tested}
        if self.witness is not None:
            out["witness"] = list(self.witness)
        return out


# Zero tests read third-order jet data, which turns into pure roundoff when
# the chart is nearly degenerate: the error grows like a high power of the
# reciprocal normalized determinant (measured: ~5th power on the corpus
# webs).  Points whose Jacobian rows are closer to parallel than this floor
# are rejected during classification sampling; 0.05 keeps residuals of true
# identities below ~1e-9 while discarding at most a third of the draws on
# the worst corpus web.
NDET_FLOOR = 0.05


def _admissible_stream(web: Web, config: RunConfig, bound):
    rng = np.random.default_rng(config.seed)
    lo, hi = config.box
    draws = 0
    budget = max(20000, 500 * config.points)
    while draws < budget:
        chunk = rng.uniform(lo, hi, size=(256, 4))
        for row in chunk:
            draws += 1
            if draws > budget:
                return
            pt = (float(row[0]), float(row[1]), float(row[2]), float(row[3]))
            if web.admissible(pt, bound, config.margin):
                yield pt


def sample_points(web: Web, config: RunConfig, params=None):
    """Rejection-sample admissible points from the configured box."""
    bound = web.bind(params)
    points = list(itertools.islice(
        _admissible_stream(web, config, bound), config.points))
    if len(points) < config.points:
        raise SamplerExhausted(
            "only %d of %d admissible points found in the draw budget"
            % (len(points), config.points))
    return points


def _well_conditioned(s):
    for m, det in ((s.fbar, s.det_bar), (s.ftilde, s.det_til)):
        r1 = math.hypot(m[0, 0], m[0, 1])
        r2 = math.hypot(m[1, 0], m[1, 1])
        if abs(det) < NDET_FLOOR * r1 * r2:
            return False
    return True


def collect_snapshots(web: Web, config: RunConfig, params=None):
    """Snapshots at admissible, well-conditioned sample points."""
    bound = web.bind(params)
    snaps = []
    tried = 0
    for pt in _admissible_stream(web, config, bound):
        tried += 1
        if tried > 60 * config.points:
            break
        try:
            s = snapshot(web, pt, bound, margin=config.margin,
                         check_domain=False)
        except DegenerateWeb:
            continue
        if _well_conditioned(s):
            snaps.append(s)
            if len(snaps) == config.points:
                return snaps
    raise SamplerExhausted(
        "only %d of %d well-conditioned admissible points found"
        % (len(snaps), config.points))


def hexagonality_polynomials(snap: TensorSnapshot, t):
    """The quartic and the two cubic hexagonality polynomials at t.

    The three are linearly dependent: quartic + t*cubic2 + cubic1 = 0
    identically in the curvature components, which the test suite uses as a
    transcription oracle.
    """
    sym = sym3_lower(snap.b)
    b = snap.b

    def c(i, j, k, l):
        return sym[i, j, k, l]

    cubic1 = (-b[0, 0, 0, 0] * t ** 3 + 3.0 * c(0, 0, 0, 1) * t ** 2
              - 3.0 * c(0, 0, 1, 1) * t + b[0, 1, 1, 1])
    cubic2 = (-b[1, 0, 0, 0] * t ** 3 + 3.0 * c(1, 0, 0, 1) * t ** 2
              - 3.0 * c(1, 0, 1, 1) * t + b[1, 1, 1, 1])
    quartic = (b[1, 0, 0, 0] * t ** 4
               - (3.0 * c(1, 0, 0, 1) - b[0, 0, 0, 0]) * t ** 3
               + 3.0 * (c(1, 0, 1, 1) - c(0, 0, 0, 1)) * t ** 2
               - (b[1, 1, 1, 1] - 3.0 * c(0, 0, 1, 1)) * t
               - b[0, 1, 1, 1])
    return quartic, cubic1, cubic2


class _Tester:
    """Runs zero-identity tests over a fixed snapshot sample."""

    def __init__(self, snaps, tol):
        self.snaps = snaps
        self.tol = tol
        self.ambiguous = []

    def zero(self, name, values_fn, scale_fn):
        worst = 0.0
        witness = None
        for s in self.snaps:
            vals = np.atleast_1d(np.asarray(values_fn(s), dtype=float))
            scale = max(1.0, float(scale_fn(s)))
            resid = float(np.max(np.abs(vals))) / scale
            if resid >= worst:
                worst = resid
                witness = s.point
        holds = worst < self.tol
        if self.tol <= worst < 10.0 * self.tol:
            self.ambiguous.append(name)
        return IdentityVerdict(holds, worst, len(self.snaps),
                               None if holds else witness)

    def both(self, va, vb):
        """Conjunction of two verdicts, reported as one."""
        holds = va.holds and vb.holds
        worst = max(va.max_residual, vb.max_residual)
        witness = None
        if not holds:
            witness = va.witness if not va.holds else vb.witness
        return IdentityVerdict(holds, worst, va.points_tested, witness)


@dataclass
class ClassificationReport:
    web_name: str
    labels: tuple
    class_a: str
    class_b: str
    class_c: str
    class_d: str
    class_e: str
    predicates: dict
    branch_a: dict
    inconclusive: tuple
    fg_metadata: tuple
    config: RunConfig
    params: dict
    generic: bool | None = None
    per_binding: tuple | None = None

    def to_dict(self):
        preds = {k: v.to_dict() for k, v in self.predicates.items()}
        branch = {}
        for k, v in self.branch_a.items():
            if isinstance(v, IdentityVerdict):
                branch[k] = v.to_dict()
            else:
                branch[k] = v
        out = {
            "web": self.web_name,
            "config": self.config.to_dict(),
            "params": dict(sorted(self.params.items())),
            "labels": list(self.labels),
            "classes": {"A": self.class_a, "B": self.class_b,
                        "C": self.class_c, "D": self.class_d,
                        "E": self.class_e},
            "predicates": preds,
            "branch_a": branch,
            "inconclusive": list(self.inconclusive),
        }
        if self.fg_metadata:
            out["asserted_metadata"] = list(self.fg_metadata)
        if self.generic is not None:
            out["generic"] = self.generic
            out["per_binding"] = [dict(pb) for pb in self.per_binding]
        return out


def classify_web(web: Web, config: RunConfig | None = None, params=None,
                 metadata=()):
    """Full classification of one web under one parameter binding."""
    config = config or RunConfig()
    bound = web.bind(params)
    snaps = collect_snapshots(web, config, bound)
    T = _Tester(snaps, config.tol)

    preds = {}
    preds["isoclinic"] = T.zero(
        "isoclinic",
        lambda s: [s.p[0, 1] - s.p[1, 0], s.q[0, 1] - s.q[1, 0]],
        mag_of("p", "q"))
    preds["isoclinicly_geodesic"] = T.zero(
        "isoclinicly_geodesic", lambda s: s.a_cov, mag_of("a_cov", "gamma"))
    preds["transversally_geodesic"] = T.zero(
        "transversally_geodesic", lambda s: s.a4.ravel(),
        mag_of("a4", "b", "f2", "g2", "h2"))
    preds["almost_algebraizable"] = T.zero(
        "almost_algebraizable", lambda s: (s.f2 + s.g2 + s.h2).ravel(),
        mag_of("f2", "g2", "h2"))
    preds["almost_Bol"] = T.zero(
        "almost_Bol",
        lambda s: np.concatenate([(s.f2 + s.g2).ravel(), s.h2.ravel()]),
        mag_of("f2", "g2", "h2"))
    preds["almost_parallelizable"] = T.zero(
        "almost_parallelizable",
        lambda s: np.concatenate([s.f2.ravel(), s.g2.ravel(), s.h2.ravel()]),
        mag_of("b", "p", "q", "f2", "g2", "h2"))
    preds["hexagonal"] = T.both(preds["transversally_geodesic"],
                                preds["almost_algebraizable"])
    preds["Bol"] = T.both(preds["transversally_geodesic"],
                          preds["almost_Bol"])
    preds["group"] = T.both(preds["transversally_geodesic"],
                            preds["almost_parallelizable"])
    preds["parallelizable"] = T.both(preds["isoclinicly_geodesic"],
                                     preds["group"])

    branch, class_a = _branch_a(T, snaps, preds, config.tol)
    class_b = "B" if preds["isoclinicly_geodesic"].holds else ""
    class_c, class_d = _branch_cd(preds)
    class_e = _e_pattern(T)

    labels = tuple(l for l in (class_a, class_b, class_c, class_d, class_e)
                   if l)
    report = ClassificationReport(
        web_name=web.name or "web",
        labels=labels,
        class_a=class_a, class_b=class_b, class_c=class_c,
        class_d=class_d, class_e=class_e,
        predicates=preds, branch_a=branch,
        inconclusive=tuple(T.ambiguous),
        fg_metadata=tuple(metadata),
        config=config, params=bound,
    )
    _assert_consistent(report)
    return report


def _branch_a(T, snaps, preds, tol):
    """The torsion-direction branch: verdicts plus the final A label."""
    branch = {}
    a_nonzero = not preds["isoclinicly_geodesic"].holds

    def quad_values(s):
        a1, a2 = s.a_cov
        p12 = 0.5 * (s.p[0, 1] + s.p[1, 0])
        q12 = 0.5 * (s.q[0, 1] + s.q[1, 0])
        return [a2 * a2 * s.p[0, 0] - 2.0 * a1 * a2 * p12 + a1 * a1 * s.p[1, 1],
                a2 * a2 * s.q[0, 0] - 2.0 * a1 * a2 * q12 + a1 * a1 * s.q[1, 1]]

    def quad_scale(s):
        a1, a2 = abs(s.a_cov[0]), abs(s.a_cov[1])
        pq = max(float(np.max(np.abs(s.p))), float(np.max(np.abs(s.q))))
        return (a1 + a2) ** 2 * pq

    branch["integrability"] = T.zero("integrability", quad_values, quad_scale)
    branch["a1_zero"] = T.zero("a1_zero", lambda s: [s.a_cov[0]],
                               mag_of("a_cov"))
    branch["a2_zero"] = T.zero("a2_zero", lambda s: [s.a_cov[1]],
                               mag_of("a_cov"))
    branch["a1_eq_a2"] = T.zero("a1_eq_a2",
                                lambda s: [s.a_cov[0] - s.a_cov[1]],
                                mag_of("a_cov"))
    branch["omega21_zero"] = T.zero(
        "omega21_zero",
        lambda s: [s.gamma[0, 0, 1], s.gamma[0, 1, 1], s.gamma[0, 1, 0]],
        mag_of("gamma"))
    branch["omega12_zero"] = T.zero(
        "omega12_zero",
        lambda s: [s.gamma[1, 0, 0], s.gamma[1, 1, 0], s.gamma[1, 0, 1]],
        mag_of("gamma"))

    # t = a2/a1 where a1 is usable; None when a1 vanishes identically
    t_vals = []
    for s in snaps:
        if abs(s.a_cov[0]) > 1e-9 * max(1.0, abs(s.a_cov[1])):
            t_vals.append(s.a_cov[1] / s.a_cov[0])
    if t_vals and not branch["a1_zero"].holds:
        t_mean = float(np.mean(t_vals))
        spread = float(np.max(np.abs(np.array(t_vals) - t_mean)))
        t_holds = spread < tol * (1.0 + abs(t_mean))
        branch["t_constant"] = IdentityVerdict(t_holds, spread, len(t_vals),
                                               None)
        branch["t_value"] = t_mean if t_holds else None
    else:
        branch["t_constant"] = None
        branch["t_value"] = None

    # frame-alignment identity at constant t, informational only: the
    # connection form omega_2^1 should equal t^2 omega_1^2 + t(omega_1^1 -
    # omega_2^2) coefficientwise when t is constant
    if branch["t_value"] is not None:
        t0 = branch["t_value"]

        def frame_vals(s):
            g = s.gamma
            out = []
            for k in range(2):
                out.append(g[0, k, 1] - t0 ** 2 * g[1, k, 0]
                           - t0 * (g[0, k, 0] - g[1, k, 1]))
                out.append(g[0, 1, k] - t0 ** 2 * g[1, 0, k]
                           - t0 * (g[0, 0, k] - g[1, 1, k]))
            return out

        worst = 0.0
        for s in snaps:
            scale = max(1.0, float(np.max(np.abs(s.gamma)))
                        * max(1.0, abs(t0)) ** 2)
            worst = max(worst, float(np.max(np.abs(frame_vals(s)))) / scale)
        branch["frame_alignment_residual"] = worst
    else:
        branch["frame_alignment_residual"] = None

    def hex_pair_at(t0):
        def values(s):
            quartic, c1, c2 = hexagonality_polynomials(s, t0)
            return [c1, c2]

        def scale(s):
            return float(np.max(np.abs(s.b))) * max(1.0, abs(t0)) ** 3

        return values, scale

    # leaf conditions, computed unconditionally so reports are comparable
    branch["p22_q22_zero"] = T.zero(
        "p22_q22_zero", lambda s: [s.p[1, 1], s.q[1, 1]], mag_of("p", "q"))
    branch["p11_q11_zero"] = T.zero(
        "p11_q11_zero", lambda s: [s.p[0, 0], s.q[0, 0]], mag_of("p", "q"))

    def quadsum_values(s):
        p12 = 0.5 * (s.p[0, 1] + s.p[1, 0])
        q12 = 0.5 * (s.q[0, 1] + s.q[1, 0])
        return [s.p[0, 0] - 2.0 * p12 + s.p[1, 1],
                s.q[0, 0] - 2.0 * q12 + s.q[1, 1]]

    branch["pq_quadsum_zero"] = T.zero("pq_quadsum_zero", quadsum_values,
                                       mag_of("p", "q"))
    branch["b_222_zero"] = T.zero(
        "b_222_zero", lambda s: [s.b[0, 1, 1, 1], s.b[1, 1, 1, 1]],
        mag_of("b"))
    branch["b_111_zero"] = T.zero(
        "b_111_zero", lambda s: [s.b[0, 0, 0, 0], s.b[1, 0, 0, 0]],
        mag_of("b"))

    def balance_values(s):
        g = s.gamma
        out = []
        for k in range(2):
            out.append(g[0, k, 0] + g[1, k, 0] - g[0, k, 1] - g[1, k, 1])
            out.append(g[0, 0, k] + g[1, 0, k] - g[0, 1, k] - g[1, 1, k])
        return out

    branch["omega_balance"] = T.zero("omega_balance", balance_values,
                                     mag_of("gamma"))
    vals1, scale1 = hex_pair_at(1.0)
    branch["hex_at_1"] = T.zero("hex_at_1", vals1, scale1)
    if branch["t_value"] is not None:
        vals_t, scale_t = hex_pair_at(branch["t_value"])
        branch["hex_at_t"] = T.zero("hex_at_t", vals_t, scale_t)
    else:
        branch["hex_at_t"] = None

    # label walk
    if not a_nonzero:
        return branch, ""
    if not branch["integrability"].holds:
        return branch, "A2"
    label = "A1"
    if branch["a2_zero"].holds and not branch["a1_zero"].holds:
        if branch["p22_q22_zero"].holds:
            label = "A12"
            if branch["omega21_zero"].holds and branch["b_222_zero"].holds:
                label = "A121"
    elif branch["a1_zero"].holds and not branch["a2_zero"].holds:
        if branch["p11_q11_zero"].holds:
            label = "A13"
            if branch["omega12_zero"].holds and branch["b_111_zero"].holds:
                label = "A131"
    elif branch["a1_eq_a2"].holds:
        if branch["pq_quadsum_zero"].holds:
            label = "A112"
            if branch["omega_balance"].holds and branch["hex_at_1"].holds:
                label = "A1121"
    elif branch["t_constant"] is not None and branch["t_constant"].holds:
        label = "A11"
        if branch["hex_at_t"] is not None and branch["hex_at_t"].holds:
            label = "A111"
    return branch, label


def mag_of(*names):
    def scale(s):
        return max(float(np.max(np.abs(getattr(s, n)))) for n in names)
    return scale


def _branch_cd(preds):
    tg = preds["transversally_geodesic"].holds
    fgh = preds["almost_parallelizable"].holds
    fg_h = preds["almost_Bol"].holds
    s_zero = preds["almost_algebraizable"].holds
    a_zero = preds["isoclinicly_geodesic"].holds
    if not tg:
        if fgh:
            return "C12", ""
        if fg_h:
            return "C11", ""
        if s_zero:
            return "C1", ""
        return "C2", ""
    if fgh:
        return "", "D232" if a_zero else "D231"
    if fg_h:
        return "", "D21"
    if s_zero:
        return "", "D22"
    return "", "D1"


def _e_pattern(T):
    """Most-specific-first matching of the p/q vanishing patterns."""
    z = {}
    z["p"] = T.zero("e_p_zero", lambda s: s.p.ravel(), mag_of("p", "q"))
    z["q"] = T.zero("e_q_zero", lambda s: s.q.ravel(), mag_of("p", "q"))
    z["p11"] = T.zero("e_p11", lambda s: [s.p[0, 0]], mag_of("p", "q"))
    z["p12"] = T.zero("e_p12", lambda s: [s.p[0, 1], s.p[1, 0]],
                      mag_of("p", "q"))
    z["p22"] = T.zero("e_p22", lambda s: [s.p[1, 1]], mag_of("p", "q"))
    z["q11"] = T.zero("e_q11", lambda s: [s.q[0, 0]], mag_of("p", "q"))
    z["q12"] = T.zero("e_q12", lambda s: [s.q[0, 1], s.q[1, 0]],
                      mag_of("p", "q"))
    z["q22"] = T.zero("e_q22", lambda s: [s.q[1, 1]], mag_of("p", "q"))
    z["pq_sum"] = T.zero("e_pq_sum", lambda s: (s.p + s.q).ravel(),
                         mag_of("p", "q"))
    z["p22_q22"] = T.zero("e_p22_plus_q22", lambda s: [s.p[1, 1] + s.q[1, 1]],
                          mag_of("p", "q"))
    z["p11_q11"] = T.zero("e_p11_plus_q11", lambda s: [s.p[0, 0] + s.q[0, 0]],
                          mag_of("p", "q"))

    if z["p"].holds and z["q"].holds:
        return "E1"
    if z["p11"].holds and z["p12"].holds and z["q"].holds \
            and not z["p22"].holds:
        return "E2"
    if z["p"].holds and z["q11"].holds and z["q12"].holds \
            and not z["q22"].holds:
        return "E3"
    if z["p11"].holds and z["p12"].holds and z["q11"].holds \
            and z["q12"].holds and not z["p22"].holds \
            and not z["q22"].holds:
        return "E41" if z["p22_q22"].holds else "E4"
    if z["p22"].holds and z["p12"].holds and z["q"].holds \
            and not z["p11"].holds:
        return "E5"
    if z["p"].holds and z["q22"].holds and z["q12"].holds \
            and not z["q11"].holds:
        return "E6"
    if z["p22"].holds and z["p12"].holds and z["q22"].holds \
            and z["q12"].holds and not z["p11"].holds \
            and not z["q11"].holds:
        return "E71" if z["p11_q11"].holds else "E7"
    if z["pq_sum"].holds:
        return "E8"
    return ""


def _assert_consistent(report):
    p = report.predicates
    if p["hexagonal"].holds:
        assert p["transversally_geodesic"].holds
        assert p["almost_algebraizable"].holds
    if p["Bol"].holds:
        assert p["transversally_geodesic"].holds and p["almost_Bol"].holds
    if p["group"].holds:
        assert p["hexagonal"].holds
        assert p["almost_algebraizable"].holds
        assert p["almost_Bol"].holds
        assert p["almost_parallelizable"].holds
    if p["parallelizable"].holds:
        assert p["isoclinicly_geodesic"].holds and p["group"].holds
    assert (report.class_b == "B") == p["isoclinicly_geodesic"].holds
    assert bool(report.class_a) == (not p["isoclinicly_geodesic"].holds)
    assert bool(report.class_c) == (not p["transversally_geodesic"].holds)
    assert bool(report.class_d) == p["transversally_geodesic"].holds
    if report.class_d == "D232":
        assert p["parallelizable"].holds
    if report.class_d == "D231":
        assert p["group"].holds and not p["isoclinicly_geodesic"].holds


def classify_generic(web: Web, config: RunConfig | None = None,
                     bindings=5, metadata=()):
    """Classify a parameterized web under several random bindings.

    The returned report is the first binding's, with `generic` set to
    whether all bindings produced identical labels and the per-binding
    label sets attached.
    """
    if not web.params:
        raise ValueError("classify_generic needs a parameterized web")
    config = config or RunConfig()
    rng = np.random.default_rng(config.seed + 7919)
    reports = []
    attempts = 0
    while len(reports) < bindings and attempts < 20 * bindings:
        attempts += 1
        binding = {name: float(rng.uniform(-2.0, 2.0))
                   for name, _ in web.params}
        try:
            reports.append(classify_web(web, config, params=binding,
                                        metadata=metadata))
        except (SamplerExhausted, DegenerateWeb):
            continue
    if len(reports) < bindings:
        raise SamplerExhausted("only %d of %d parameter bindings were "
                               "classifiable" % (len(reports), bindings))
    agree = all(r.labels == reports[0].labels for r in reports)
    per_binding = tuple(
        {"params": dict(sorted(r.params.items())), "labels": list(r.labels)}
        for r in reports)
    return replace(reports[0], generic=agree, per_binding=per_binding)
