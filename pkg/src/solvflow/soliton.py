"""Algebraic soliton detection and long-time behavior of the matrix flows.

A matrix A is a soliton matrix when the evolution it generates only rescales
it.  Two independent routes decide that:

* `classify_soliton` works on the matrix alone: A must be normal, or
  nilpotent with [A, [A, A^t]] = c A.  The verdict carries the soliton
  constant and the explicit derivation in block form.
* `certify_algebraic_soliton` works on any metric Lie algebra: it computes
  the derivation space of the bracket by nullspace extraction and solves
  the least-squares problem Ric = c I + D over that space, with no
  knowledge of where the bracket came from.

Tests pit the two routes against each other on brackets built by
`geometry.mu_of_a`.  The module also houses the normality defect F, the
per-trajectory monotonicity monitors, and omega-limit extraction.
"""

import dataclasses
import math

import numpy as np

from .flow import (
    DEFAULT_EPS_FIX,
    FlowKind,
    FlowSpec,
    Terminal,
    integrate,
    bracket_rhs,
    settle,
)
from .geometry import MetricLieAlgebra, ricci_block, ricci_general
from .matcore import (
    as_matrix,
    commutator,
    eigenvalues,
    frob_norm,
    matrix_to_json,
    spectrum_distance,
    sym_part,
)

__all__ = [
    "F",
    "NORMAL_SOLITON",
    "NILPOTENT_SOLITON",
    "NOT_SOLITON",
    "SolitonVerdict",
    "classify_soliton",
    "derivation_basis",
    "derivation_defect",
    "certify_algebraic_soliton",
    "monitor_suite",
    "OmegaLimitReport",
    "omega_limit",
]

NORMAL_SOLITON = "NormalSoliton"
NILPOTENT_SOLITON = "NilpotentSoliton"
NOT_SOLITON = "NotSoliton"


def F(b):
    """Normality defect ||[B, B^t]||^2: zero exactly on normal matrices.

    Homogeneous of degree four, and non-increasing along all three flows
    (for the bracket flow after normalization).
    """
    b = as_matrix(b)
    c = commutator(b, b.T)
    return float(np.sum(c * c))


@dataclasses.dataclass
class SolitonVerdict:
    """Outcome of a soliton test, with the residuals that justify it.

    `c` is the nilpotent eigen-ratio (None unless the nilpotent route
    fired); `soliton_constant` is the c of Ric = c I + D.  `derivation`
    is the matrix D, expressed in the (n+1)-dimensional basis for the
    matrix route and in the algebra's own basis for the certification
    route.  Residual keys that a route does not measure are None.
    """

    label: str
    c: float | None
    soliton_constant: float | None
    derivation: np.ndarray | None
    residuals: dict

    @property
    def accepted(self):
        return self.label != NOT_SOLITON

    def to_dict(self):
        return {
            "label": self.label,
            "accepted": self.accepted,
            "c": self.c,
            "soliton_constant": self.soliton_constant,
            "derivation": None if self.derivation is None
            else matrix_to_json(self.derivation),
            "residuals": dict(self.residuals),
        }


def _block_diag(d0, d1):
    n = d1.shape[0]
    out = np.zeros((n + 1, n + 1))
    out[0, 0] = d0
    out[1:, 1:] = d1
    return out


def classify_soliton(a, tol=1e-8):
    """Decide from the matrix alone whether A generates a soliton.

    Normal matrices qualify outright.  Nilpotent matrices qualify when
    [A, [A, A^t]] = c A within tol * ||A||^3, where c is the projection
    <[A,[A,A^t]], A> / ||A||^2 (always equal to -||[A,A^t]||^2 / ||A||^2,
    hence nonpositive).  Everything else is NotSoliton.  Accepted verdicts
    carry the explicit block derivation and the soliton constant, checked
    against the block Ricci decomposition.
    """
    a = as_matrix(a)
    nrm = frob_norm(a)
    if nrm == 0.0:
        raise ValueError("the zero matrix generates an abelian algebra; "
                         "soliton classification needs a nonzero matrix")
    n = a.shape[0]
    comm = commutator(a, a.T)
    br = a @ comm - comm @ a
    c_nil = float(np.sum(br * a)) / nrm**2
    normality = frob_norm(comm) / nrm**2
    eigen_relation = frob_norm(br - c_nil * a) / nrm**3
    m = a / nrm
    nilpotency = frob_norm(np.linalg.matrix_power(m, n))
    residuals = {
        "normality": normality,
        "eigen_relation": eigen_relation,
        "nilpotency": nilpotency,
        "ric_decomposition": None,
    }

    if normality <= tol:
        s = sym_part(a)
        tr_s2 = float(np.sum(s * s))
        constant = -tr_s2
        deriv = _block_diag(0.0, tr_s2 * np.eye(n) - np.trace(a) * s)
        label, c_out = NORMAL_SOLITON, None
    elif nilpotency <= tol and eigen_relation <= tol:
        constant = 0.5 * (c_nil - nrm**2)
        deriv = _block_diag(
            -0.5 * c_nil,
            0.5 * comm + 0.5 * (nrm**2 - c_nil) * np.eye(n),
        )
        label, c_out = NILPOTENT_SOLITON, c_nil
    else:
        return SolitonVerdict(label=NOT_SOLITON, c=None, soliton_constant=None,
                              derivation=None, residuals=residuals)

    ric = ricci_block(a)
    dim = n + 1
    residuals["ric_decomposition"] = (
        frob_norm(ric - constant * np.eye(dim) - deriv) / max(frob_norm(ric), 1e-300)
    )
    return SolitonVerdict(label=label, c=c_out, soliton_constant=constant,
                          derivation=deriv, residuals=residuals)


# ---------------------------------------------------------------------------
# certification on an arbitrary metric Lie algebra


def derivation_defect(g, d):
    """delta_mu(D) = mu(D.,.) + mu(.,D.) - D mu(.,.), as a (d,d,d) tensor."""
    c = g.c
    d = np.asarray(d, dtype=float)
    return (np.einsum("mjk,mi->ijk", c, d)
            + np.einsum("imk,mj->ijk", c, d)
            - np.einsum("ijm,km->ijk", c, d))


def derivation_basis(g, sv_tol=1e-10):
    """Orthonormal basis (Frobenius) of the derivation algebra of g.

    The defect map D -> delta_mu(D) is linear; its nullspace is extracted
    by SVD with a relative singular-value threshold.  For the abelian
    bracket every matrix is a derivation and the basis has dim^2 members.
    """
    c = g.c
    d = g.dim
    eye = np.eye(d)
    big = (np.einsum("pjk,iq->ijkpq", c, eye)
           + np.einsum("ipk,jq->ijkpq", c, eye)
           - np.einsum("ijq,kp->ijkpq", c, eye))
    mat = big.reshape(d**3, d**2)
    _, svals, vt = np.linalg.svd(mat, full_matrices=True)
    cutoff = sv_tol * (svals[0] if svals.size else 0.0)
    rank = int(np.sum(svals > cutoff))
    return [vt[j].reshape(d, d) for j in range(rank, d**2)]


def _algebra_is_nilpotent(g, tol=1e-10):
    """Lower central series by rank: does [g, [g, [...]]] reach zero?"""
    c = g.c
    v = np.eye(g.dim)
    for _ in range(g.dim + 1):
        w = np.einsum("ijk,jl->kil", c, v).reshape(g.dim, -1)
        svals = np.linalg.svd(w, compute_uv=False)
        rank = int(np.sum(svals > tol * max(1.0, svals[0] if svals.size else 0.0)))
        if rank == 0:
            return True
        v = np.linalg.svd(w, full_matrices=False)[0][:, :rank]
    return False


def certify_algebraic_soliton(g, tol=1e-8):
    """Test Ric = c I + D with D a derivation, for any metric Lie algebra.

    Solves the least-squares problem over span(I) + derivation space and
    accepts when the residual is at most tol * ||Ric||.  This route never
    looks at a generating matrix, so it can cross-check classify_soliton
    on mu_of_a brackets and handle brackets that have no such form.  The
    label records whether the underlying algebra is nilpotent.
    """
    if not isinstance(g, MetricLieAlgebra):
        g = MetricLieAlgebra(g)
    ric = ricci_general(g)
    d = g.dim
    ric_norm = frob_norm(ric)
    label_if_ok = (NILPOTENT_SOLITON if _algebra_is_nilpotent(g)
                   else NORMAL_SOLITON)

    scale = max(1.0, g.bracket_norm()**2)
    if ric_norm <= 1e-12 * scale:
        # flat within noise: Ric = 0 I + 0
        return SolitonVerdict(
            label=label_if_ok, c=None, soliton_constant=0.0,
            derivation=np.zeros((d, d)),
            residuals={"normality": None, "eigen_relation": None,
                       "nilpotency": None, "ric_decomposition": 0.0},
        )

    basis = derivation_basis(g)
    design = np.stack([np.eye(d).ravel()] + [b.ravel() for b in basis], axis=1)
    theta, *_ = np.linalg.lstsq(design, ric.ravel(), rcond=None)
    resid = float(np.linalg.norm(ric.ravel() - design @ theta)) / ric_norm
    residuals = {"normality": None, "eigen_relation": None,
                 "nilpotency": None, "ric_decomposition": resid}
    if resid > tol:
        return SolitonVerdict(label=NOT_SOLITON, c=None, soliton_constant=None,
                              derivation=None, residuals=residuals)
    deriv = sum((th * b for th, b in zip(theta[1:], basis)),
                start=np.zeros((d, d)))
    return SolitonVerdict(label=label_if_ok, c=None,
                          soliton_constant=float(theta[0]),
                          derivation=deriv, residuals=residuals)


# ---------------------------------------------------------------------------
# trajectory monitors


def _runs_of(flags, min_len=3):
    """Indices belonging to runs of >= min_len consecutive True flags."""
    idx = []
    run = []
    for i, flag in enumerate(flags):
        if flag:
            run.append(i)
        else:
            if len(run) >= min_len:
                idx.extend(run)
            run = []
    if len(run) >= min_len:
        idx.extend(run)
    return idx


def monitor_suite(traj):
    """Check the monotone quantities along a trajectory, sample to sample.

    Rules by kind -- bracket: ||A||^2, tr(S^2) and normalized F
    non-increasing, signs of tr(A) and tr(A^2) constant, and the decay
    bound tr(S^2) <= 1/(2t + tr(S(A0)^2)^-1); normalized: unit norm, F
    non-increasing, signs constant; gradient: ||A||^2, tr(S^2) and raw F
    non-increasing, signs constant.  Each comparison allows 10x the
    integrator tolerance; only violations persisting for at least three
    consecutive samples are reported.  Returns a list of
    (t, rule, magnitude) triples -- expected empty.
    """
    rows = traj.diagnostics
    if not rows:
        raise ValueError("monitor_suite needs a nonempty trajectory")
    kind = traj.spec.kind
    rslack = 10.0 * traj.spec.rel_tol
    aslack = 10.0 * traj.spec.abs_tol
    times = [row.t for row in rows]
    out = []

    def monotone(rule, values):
        flags = [False]
        mags = [0.0]
        for prev, cur in zip(values, values[1:]):
            lim = prev + rslack * abs(prev) + aslack
            flags.append(cur > lim)
            mags.append(cur - lim)
        for i in _runs_of(flags):
            out.append((times[i], rule, mags[i]))

    def sign_constant(rule, values, floor):
        ref = 0.0
        for v in values:
            if abs(v) > floor:
                ref = math.copysign(1.0, v)
                break
        flags = [ref != 0.0 and abs(v) > floor
                 and math.copysign(1.0, v) != ref for v in values]
        for i in _runs_of(flags):
            out.append((times[i], rule, abs(values[i])))

    norm_sq = [row.norm_sq for row in rows]
    tr_s2 = [row.tr_s2 for row in rows]
    scale0 = max(1.0, norm_sq[0])
    sign_floor = 1e3 * (traj.spec.rel_tol * scale0 + traj.spec.abs_tol)

    if kind is FlowKind.BRACKET:
        monotone("norm_sq_increase", norm_sq)
        monotone("tr_s2_increase", tr_s2)
        monotone("f_increase", [row.f_normalized for row in rows])
        u0 = tr_s2[0]
        flags, mags = [], []
        for t, u in zip(times, tr_s2):
            bound = 1.0 / (2.0 * t + 1.0 / u0) if u0 > 0.0 else 0.0
            lim = bound * (1.0 + rslack) + aslack
            flags.append(u > lim)
            mags.append(u - lim)
        for i in _runs_of(flags):
            out.append((times[i], "tr_s2_decay_bound", mags[i]))
    elif kind is FlowKind.NORMALIZED:
        flags = [abs(v - 1.0) > 1e-9 for v in norm_sq]
        for i in _runs_of(flags):
            out.append((times[i], "norm_drift", abs(norm_sq[i] - 1.0)))
        monotone("f_increase", [row.f_normalized for row in rows])
    else:
        monotone("norm_sq_increase", norm_sq)
        monotone("tr_s2_increase", tr_s2)
        monotone("f_increase",
                 [row.f_normalized * row.norm_sq**2 for row in rows])

    sign_constant("tr_sign_flip", [row.tr_a for row in rows], sign_floor)
    sign_constant("tr2_sign_flip", [row.tr_a2 for row in rows], sign_floor)
    return out


# ---------------------------------------------------------------------------
# omega limits


@dataclasses.dataclass
class OmegaLimitReport:
    """Endpoint analysis of a long run.

    `eps_achieved` is the stationarity level actually reached:
    ||rhs(A_inf)|| / max(1, ||A_inf||).  `late_samples` spans the trailing
    window; `spectra_agree` certifies them pairwise equal in canonical
    spectrum (the conjugation-invariant proxy for a single limit point).
    For normalized runs `verdict` carries classify_soliton(B_inf).
    """

    converged: bool
    a_inf: np.ndarray | None
    skew_residual: float
    late_samples: list
    spectra_agree: bool
    normality_residuals: list
    eps_achieved: float
    t_stop: float
    terminal: Terminal
    verdict: SolitonVerdict | None = None

    def to_dict(self):
        return {
            "converged": self.converged,
            "A_inf": None if self.a_inf is None else matrix_to_json(self.a_inf),
            "skew_residual": self.skew_residual,
            "late_samples": [matrix_to_json(s) for s in self.late_samples],
            "spectra_agree": self.spectra_agree,
            "normality_residuals": list(self.normality_residuals),
            "eps_achieved": self.eps_achieved,
            "t_stop": self.t_stop,
            "terminal": self.terminal.value,
            "verdict": None if self.verdict is None else self.verdict.to_dict(),
        }


SKEW_REST_TOL = 1e-5


def _late_window(states, window):
    m = len(states)
    k = max(min(m, 10), int(math.ceil(window * m)))
    return [np.array(s) for s in states[m - k:]]


def _resampled_states(spec, t_span, samples=50):
    """One clean pass over [0, t_span] with uniform samples, no early stop.

    The settling runs place samples wherever their stages happened to stop,
    so a trailing window over them can reach back into the transient.  The
    limit analysis instead re-integrates once over the span actually
    traveled; this costs one cheap extra pass and yields a window that
    really is the last fifth of the motion.
    """
    if t_span <= 0.0:
        return None
    run = dataclasses.replace(spec, t_end=t_span,
                              sample_stride=t_span / samples,
                              stop_when_stationary=None)
    return integrate(run).states


def omega_limit(spec, window=0.2):
    """Follow a bracket or normalized run to its limit and certify it.

    Bracket runs go through `settle` and converge when the endpoint is
    skew to within 1e-5 (relative).  Normalized runs stop when stationary
    and converge when the endpoint passes classify_soliton.  The trailing
    `window` fraction of a uniformly resampled pass (at least 10 samples)
    is kept for the conjugation-orbit check: pairwise canonical spectra
    within 1e-5 plus per-sample normality residuals.
    """
    if spec.kind is FlowKind.GRADIENT:
        raise ValueError("omega_limit handles bracket and normalized runs")

    if spec.kind is FlowKind.BRACKET:
        traj, t_stop = settle(spec, rest_tol=SKEW_REST_TOL)
        a_inf = traj.states[-1]
        nrm = frob_norm(a_inf)
        skew_residual = frob_norm(sym_part(a_inf)) / max(1.0, nrm)
        converged = (traj.terminal is not Terminal.STEP_FAILURE
                     and skew_residual <= SKEW_REST_TOL)
        verdict = None
        rhs_nrm = frob_norm(bracket_rhs(a_inf))
    else:
        eps = spec.stop_when_stationary or DEFAULT_EPS_FIX
        run = dataclasses.replace(spec, stop_when_stationary=eps)
        traj = integrate(run)
        t_stop = float(traj.times[-1])
        a_inf = traj.states[-1]
        skew_residual = frob_norm(sym_part(a_inf)) / max(1.0, frob_norm(a_inf))
        verdict = classify_soliton(a_inf, tol=1e-6)
        converged = (traj.terminal is Terminal.STATIONARY and verdict.accepted)
        rhs_nrm = traj.diagnostics[-1].rhs_norm

    states = _resampled_states(spec, t_stop)
    if states is None:
        states = traj.states
    late = _late_window(states, window)
    spectra = [eigenvalues(s) for s in late]
    gap = max((spectrum_distance(p, q)
               for i, p in enumerate(spectra) for q in spectra[i + 1:]),
              default=0.0)
    normality = [frob_norm(commutator(s, s.T)) / max(frob_norm(s), 1e-300)**2
                 for s in late]
    return OmegaLimitReport(
        converged=converged,
        a_inf=a_inf,
        skew_residual=skew_residual,
        late_samples=late,
        spectra_agree=bool(gap <= 1e-5),
        normality_residuals=normality,
        eps_achieved=rhs_nrm / max(1.0, frob_norm(a_inf)),
        t_stop=t_stop,
        terminal=traj.terminal,
        verdict=verdict,
    )
