"""Matrix ODE flows and their adaptive integrator.

The central object is the bracket flow

    dA/dt = -tr(S(A)^2) A + 1/2 [A, [A, A^T]] - 1/2 tr(A) [A, A^T]

with S(A) = (A + A^T)/2, an ODE on n x n matrices.  Each state A encodes a
solvable metric Lie algebra (see solvflow.geometry.mu_of_a), so a solution
is a curve of homogeneous geometries.  Two companion flows live here as
well: the norm-one rescaling of the same curve in its own time variable,
and the negative gradient flow of F(A) = ||[A, A^T]||^2.

Integration uses an embedded Dormand-Prince 5(4) pair with PI step-size
control.  It is written out explicitly (rather than delegating to an ODE
library) because the flows need hooks a generic solver does not expose:
renormalization with a drift check after every accepted step, stationarity
detection from the already-computed right-hand side, and bit-reproducible
output for a fixed spec.
"""

import dataclasses
import enum
import math

import numpy as np

from .matcore import as_matrix, commutator, eigenvalues, frob_norm, sym_part

__all__ = [
    "FlowKind",
    "Terminal",
    "FlowSpec",
    "DiagnosticRow",
    "Trajectory",
    "PullbackPath",
    "BridgeReport",
    "bracket_rhs",
    "normalized_rhs",
    "gradient_rhs",
    "integrate",
    "settle",
    "closed_form_soliton",
    "cointegrate_pullback",
    "reparam_bridge",
    "DEFAULT_EPS_FIX",
]

DEFAULT_EPS_FIX = 1e-10

# Per-step renormalization of the unit-norm flow must not move the state by
# more than this, otherwise the step is rejected and retried smaller.
MAX_RENORM_DRIFT = 1e-9


class FlowKind(str, enum.Enum):
    BRACKET = "bracket"
    NORMALIZED = "normalized"
    GRADIENT = "gradient"


class Terminal(str, enum.Enum):
    REACHED_T_END = "reached_t_end"
    STATIONARY = "stationary"
    STEP_FAILURE = "step_failure"


# ---------------------------------------------------------------------------
# right-hand sides


def bracket_rhs(a):
    """Velocity of the bracket flow at A."""
    a = np.asarray(a, dtype=float)
    s = 0.5 * (a + a.T)
    c = a @ a.T - a.T @ a
    return -float(np.sum(s * s)) * a + 0.5 * (a @ c - c @ a) - 0.5 * np.trace(a) * c


def _normalized_rhs_raw(b):
    c = b @ b.T - b.T @ b
    return (b @ c - c @ b) - np.trace(b) * c + float(np.sum(c * c)) * b


def normalized_rhs(b):
    """Velocity of the norm-one flow in rescaled time; requires ||B|| = 1."""
    b = np.asarray(b, dtype=float)
    if abs(frob_norm(b) - 1.0) > 1e-6:
        raise ValueError("normalized_rhs needs a unit-norm matrix")
    return _normalized_rhs_raw(b)


def gradient_rhs(a):
    """Velocity of the negative gradient flow of F(A) = ||[A, A^T]||^2."""
    a = np.asarray(a, dtype=float)
    c = a @ a.T - a.T @ a
    return 4.0 * (a @ c - c @ a)


# ---------------------------------------------------------------------------
# spec / trajectory containers


@dataclasses.dataclass
class FlowSpec:
    """Everything needed to reproduce one integration run."""

    kind: FlowKind
    a0: np.ndarray
    t_end: float
    rel_tol: float = 1e-10
    abs_tol: float = 1e-13
    max_step: float = math.inf
    init_step: float | None = None
    sample_stride: float = 0.1
    stop_when_stationary: float | None = None

    def __post_init__(self):
        self.kind = FlowKind(self.kind)
        self.a0 = as_matrix(self.a0)
        if not (0.0 < self.t_end < math.inf):
            raise ValueError("t_end must be positive and finite")
        for name in ("rel_tol", "abs_tol"):
            v = getattr(self, name)
            if not (0.0 < v < 1.0):
                raise ValueError(f"{name} must lie in (0, 1)")
        if not self.max_step > 0.0:
            raise ValueError("max_step must be positive")
        if self.init_step is not None and not (0.0 < self.init_step < math.inf):
            raise ValueError("init_step must be positive and finite")
        if not (0.0 < self.sample_stride < math.inf):
            raise ValueError("sample_stride must be positive and finite")
        if self.stop_when_stationary is not None and not (
            0.0 < self.stop_when_stationary < 1.0
        ):
            raise ValueError("stop_when_stationary must be a small positive threshold")
        if self.kind is FlowKind.NORMALIZED:
            nrm = frob_norm(self.a0)
            if abs(nrm - 1.0) > 1e-6:
                raise ValueError("normalized runs need a unit-norm initial matrix")

    @property
    def dim(self):
        return self.a0.shape[0]


@dataclasses.dataclass
class DiagnosticRow:
    """Scalar observables recorded at one sample time."""

    t: float
    norm_sq: float
    tr_a: float
    tr_a2: float
    tr_s2: float
    f_normalized: float
    rhs_norm: float
    a_of_t: float | None
    spectrum: np.ndarray


@dataclasses.dataclass
class Trajectory:
    spec: FlowSpec
    times: np.ndarray
    states: np.ndarray
    diagnostics: list
    terminal: Terminal
    stats: dict

    def state(self, k):
        return self.states[k]

    def to_csv(self, fh):
        """Write samples as CSV: t, entries a11..ann, then the scalar columns."""
        n = self.spec.dim
        cols = ["t"]
        cols += [f"a{i + 1}{j + 1}" for i in range(n) for j in range(n)]
        cols += ["norm_sq", "tr_A", "tr_A2", "tr_S2", "F", "rhs_norm"]
        fh.write(",".join(cols) + "\n")
        for t, a, row in zip(self.times, self.states, self.diagnostics):
            vals = [t, *a.ravel(), row.norm_sq, row.tr_a, row.tr_a2, row.tr_s2,
                    row.f_normalized, row.rhs_norm]
            fh.write(",".join(f"{v:.17g}" for v in vals) + "\n")


# ---------------------------------------------------------------------------
# Dormand-Prince 5(4) with PI step control

_DP_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_DP_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_DP_B = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
# difference between the 5th and the embedded 4th order weights
_DP_E = (71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40)

_SAFETY = 0.9
_BETA = 0.04
_EXPO = 0.2 - 0.75 * _BETA
_FAC_MIN = 0.2
_FAC_MAX = 10.0
_UNDERFLOW = 1e-14
# a step moves the state by ~h*||f||; once that stays below a few error
# budgets for several consecutive free steps, further motion is not
# resolvable at the requested tolerance and the state is at rest.
_STALL_SLACK = 4.0
_STALL_RUN = 8


def _nrm(y):
    return float(np.linalg.norm(y.ravel()))


def _initial_step(rhs, y0, f0, rel_tol, abs_tol, max_step, span):
    tol = max(abs_tol, rel_tol * _nrm(y0))
    d0 = _nrm(y0) / tol
    d1 = _nrm(f0) / tol
    h0 = 1e-6 if (d0 < 1e-5 or d1 < 1e-5) else 0.01 * d0 / d1
    h0 = min(h0, span)
    d2 = _nrm(rhs(y0 + h0 * f0) - f0) / (tol * h0)
    if max(d1, d2) <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** 0.2
    return min(100.0 * h0, h1, max_step, span)


def _adaptive(rhs, y0, sample_times, rel_tol, abs_tol, max_step, init_step,
              post_accept=None, eps_fix=None):
    """March `rhs` from sample_times[0]=0, recording the state at each sample.

    Returns (times, states, terminal, stats).  `post_accept` may replace an
    accepted state (projection); returning None rejects the step instead.
    `eps_fix` enables stationarity detection on ||rhs|| <= eps*max(1,||y||).
    """
    y = np.array(y0, dtype=float)
    t = 0.0
    t_final = float(sample_times[-1])
    i_next = 1

    rec_t = [0.0]
    rec_y = [y.copy()]
    stats = {"accepted": 0, "rejected": 0, "rhs_evals": 1}

    f = rhs(y)
    terminal = None
    if eps_fix is not None and _nrm(f) <= eps_fix * max(1.0, _nrm(y)):
        terminal = Terminal.STATIONARY
        stats["stationary_reason"] = "threshold"

    if terminal is None:
        if init_step is not None:
            h = min(init_step, max_step, t_final)
        else:
            h = _initial_step(rhs, y, f, rel_tol, abs_tol, max_step, t_final)
            stats["rhs_evals"] += 1
        fac_old = 1e-4
        just_rejected = False
        stall = 0

        while True:
            if t >= t_final:
                terminal = Terminal.REACHED_T_END
                break
            if h < _UNDERFLOW * max(1.0, abs(t)):
                terminal = Terminal.STEP_FAILURE
                break
            gap = float(sample_times[i_next]) - t
            on_sample = h >= gap
            h_try = gap if on_sample else h

            k = [f]
            for i in range(1, 7):
                yi = y + h_try * sum(aij * kj for aij, kj in zip(_DP_A[i], k))
                k.append(rhs(yi))
            stats["rhs_evals"] += 6
            y_new = y + h_try * sum(b * kj for b, kj in zip(_DP_B, k) if b != 0.0)
            err = h_try * sum(e * kj for e, kj in zip(_DP_E, k) if e != 0.0)
            err_norm = _nrm(err)
            tol = max(abs_tol, rel_tol * _nrm(y))

            bad = not (np.isfinite(err_norm) and np.all(np.isfinite(y_new)))
            q = math.inf if bad else err_norm / tol
            if q > 1.0:
                h = h_try * (0.1 if bad else max(_FAC_MIN, _SAFETY * q**-0.2))
                just_rejected = True
                stall = 0
                stats["rejected"] += 1
                continue

            f_new = k[6]  # FSAL: stage 7 is rhs at y_new
            if post_accept is not None:
                projected = post_accept(y_new)
                if projected is None:
                    h = 0.5 * h_try
                    just_rejected = True
                    stats["rejected"] += 1
                    continue
                if projected is not y_new:
                    y_new = projected
                    f_new = rhs(y_new)
                    stats["rhs_evals"] += 1

            t = float(sample_times[i_next]) if on_sample else t + h_try
            y = y_new
            f = f_new
            stats["accepted"] += 1
            if on_sample:
                rec_t.append(t)
                rec_y.append(y.copy())
                i_next += 1

            if eps_fix is not None:
                if _nrm(f) <= eps_fix * max(1.0, _nrm(y)):
                    terminal = Terminal.STATIONARY
                    stats["stationary_reason"] = "threshold"
                    break
                # only freely chosen step sizes carry a stall signal; steps
                # clipped to land on a sample (or capped) say nothing.
                if not on_sample and h_try < max_step:
                    budget = abs_tol + rel_tol * _nrm(y)
                    stall = stall + 1 if h_try * _nrm(f) <= _STALL_SLACK * budget else 0
                    if stall >= _STALL_RUN:
                        terminal = Terminal.STATIONARY
                        stats["stationary_reason"] = "stall"
                        break

            q = max(q, 1e-10)
            factor = _SAFETY * q**-_EXPO * fac_old**_BETA
            factor = min(1.0 if just_rejected else _FAC_MAX, max(_FAC_MIN, factor))
            h = min(h_try * factor, max_step)
            fac_old = max(q, 1e-4)
            just_rejected = False

    if t > rec_t[-1]:
        rec_t.append(t)
        rec_y.append(y.copy())
    return np.array(rec_t), np.stack(rec_y), terminal, stats


def _sample_grid(t_end, stride):
    grid = np.arange(0.0, t_end, stride)
    if t_end - grid[-1] > 1e-12 * max(1.0, t_end):
        grid = np.append(grid, t_end)
    else:
        grid[-1] = t_end
    return grid


# ---------------------------------------------------------------------------
# the public integrator


# integration evaluates the normalized rhs at off-sphere stage points, so it
# uses the raw form; the public normalized_rhs keeps its unit-norm check.
_RHS = {
    FlowKind.BRACKET: bracket_rhs,
    FlowKind.NORMALIZED: _normalized_rhs_raw,
    FlowKind.GRADIENT: gradient_rhs,
}


def _renormalize(y):
    nrm = _nrm(y)
    if abs(nrm - 1.0) > MAX_RENORM_DRIFT:
        return None
    return y / nrm


def _a_of_t(a, a0, tr_a0, spec0):
    if abs(tr_a0) > 1e-8:
        return float(np.trace(a)) / tr_a0
    denom = float(np.sum(np.abs(spec0) ** 2))
    if denom <= 1e-16:
        return None
    spec_t = eigenvalues(a)
    return float(np.real(np.vdot(spec0, spec_t))) / denom


def diagnostic_row(t, a, kind):
    """Observables of one state; `kind` selects which rhs norm is recorded."""
    a = np.asarray(a, dtype=float)
    norm_sq = float(np.sum(a * a))
    s = sym_part(a)
    c = commutator(a, a.T)
    nrm = math.sqrt(norm_sq)
    f_norm = float(np.sum(c * c)) / norm_sq**2 if nrm > 0.0 else 0.0
    return DiagnosticRow(
        t=float(t),
        norm_sq=norm_sq,
        tr_a=float(np.trace(a)),
        tr_a2=float(np.trace(a @ a)),
        tr_s2=float(np.sum(s * s)),
        f_normalized=f_norm,
        rhs_norm=frob_norm(_RHS[kind](a)),
        a_of_t=None,
        spectrum=eigenvalues(a),
    )


def integrate(spec):
    """Run the flow described by `spec`; returns a Trajectory.

    Step failures do not raise: the partial trajectory comes back with
    terminal == Terminal.STEP_FAILURE so callers can decide what to do.
    """
    rhs = _RHS[spec.kind]
    a0 = spec.a0
    post = None
    if spec.kind is FlowKind.NORMALIZED:
        a0 = a0 / frob_norm(a0)
        post = _renormalize
    grid = _sample_grid(spec.t_end, spec.sample_stride)
    times, states, terminal, stats = _adaptive(
        rhs, a0, grid, spec.rel_tol, spec.abs_tol, spec.max_step,
        spec.init_step, post_accept=post, eps_fix=spec.stop_when_stationary,
    )

    tr_a0 = float(np.trace(a0))
    spec0 = eigenvalues(a0)
    diags = []
    for t, a in zip(times, states):
        row = diagnostic_row(t, a, spec.kind)
        row.a_of_t = _a_of_t(a, a0, tr_a0, spec0)
        diags.append(row)
    return Trajectory(spec=spec, times=times, states=states,
                      diagnostics=diags, terminal=terminal, stats=stats)


def settle(spec, rest_tol=1e-6, max_stages=4):
    """Run a bracket flow until its symmetric part has visibly died out.

    The flow's only fixed points are skew matrices, so "at rest" means the
    relative symmetric residual ||S(A)|| / max(1, ||A||) has dropped below
    `rest_tol`.  A single stationarity threshold cannot serve every input:
    trajectories decaying to zero keep a resolvable right-hand side all the
    way down and want a tiny threshold, while trajectories approaching a
    nonzero skew matrix hit a numerical floor near rel_tol * ||A||^3 where
    the threshold never fires and stepping just grinds.  The integrator's
    stall detector ends the latter runs; this helper then restarts from the
    endpoint in stages, lowering the threshold after a threshold stop whose
    residual is still too large, or tightening the tolerances after a stall
    stop, until the residual test passes or the stage budget runs out.

    Returns (traj, t_total).  The trajectory stitches all stages together
    on an absolute time axis (so times can pass spec.t_end when several
    stages ran); its terminal and stationary reason are the last stage's.
    """
    if spec.kind is not FlowKind.BRACKET:
        raise ValueError("settle is defined for bracket runs")
    eps = spec.stop_when_stationary or DEFAULT_EPS_FIX
    rel_tol, abs_tol = spec.rel_tol, spec.abs_tol
    a = spec.a0
    stages = []
    for _ in range(max_stages):
        stage = dataclasses.replace(spec, a0=a, stop_when_stationary=eps,
                                    rel_tol=rel_tol, abs_tol=abs_tol)
        traj = integrate(stage)
        stages.append(traj)
        a = traj.states[-1]
        if traj.terminal is not Terminal.STATIONARY:
            break
        if frob_norm(sym_part(a)) <= rest_tol * max(1.0, frob_norm(a)):
            break
        if traj.stats.get("stationary_reason") == "stall":
            if rel_tol <= 1e-13:
                break
            rel_tol = max(1e-14, rel_tol * 1e-3)
            abs_tol = max(1e-16, abs_tol * 1e-3)
        else:
            if eps <= 1e-21:
                break
            eps *= 1e-3
    return _stitch(spec, stages)


def _stitch(spec, stages):
    """Concatenate stage trajectories on an absolute time axis."""
    if len(stages) == 1:
        return stages[0], float(stages[0].times[-1])
    times, states, diags = [], [], []
    stats = {}
    offset = 0.0
    a0 = spec.a0
    tr_a0 = float(np.trace(a0))
    spec0 = eigenvalues(a0)
    for k, traj in enumerate(stages):
        skip = 1 if k > 0 else 0  # restart sample duplicates the previous end
        times.extend(offset + traj.times[skip:])
        states.extend(traj.states[skip:])
        for t, a, row in zip(traj.times[skip:], traj.states[skip:],
                             traj.diagnostics[skip:]):
            diags.append(dataclasses.replace(
                row, t=offset + float(t), a_of_t=_a_of_t(a, a0, tr_a0, spec0)))
        for key, val in traj.stats.items():
            if isinstance(val, (int, float)):
                stats[key] = stats.get(key, 0) + val
        offset += float(traj.times[-1])
    stats["stages"] = len(stages)
    last = stages[-1]
    if "stationary_reason" in last.stats:
        stats["stationary_reason"] = last.stats["stationary_reason"]
    combined = Trajectory(spec=spec, times=np.array(times),
                          states=np.stack(states), diagnostics=diags,
                          terminal=last.terminal, stats=stats)
    return combined, offset


# ---------------------------------------------------------------------------
# closed-form soliton solutions


def closed_form_soliton(a0, t, tol=1e-8):
    """Exact bracket-flow state at time t for normal or special nilpotent A0.

    Normal A0 evolves as (2 tr(S(A0)^2) t + 1)^(-1/2) A0.  A nilpotent A0
    with [A0, [A0, A0^T]] = c A0 evolves as ((||A0||^2 - c) t + 1)^(-1/2) A0.
    Anything else has no closed form here and raises ValueError.
    """
    a0 = as_matrix(a0)
    nrm = frob_norm(a0)
    if nrm == 0.0:
        return a0.copy()
    m = a0 / nrm
    c_comm = commutator(m, m.T)
    if frob_norm(c_comm) <= tol:
        tr_s2 = float(np.sum(sym_part(a0) ** 2))
        return (2.0 * tr_s2 * t + 1.0) ** -0.5 * a0
    n = a0.shape[0]
    if frob_norm(np.linalg.matrix_power(m, n)) <= tol:
        c_full = commutator(a0, a0.T)
        br = a0 @ c_full - c_full @ a0
        c = float(np.sum(br * a0)) / nrm**2
        if frob_norm(br - c * a0) <= tol * nrm**3:
            return ((nrm**2 - c) * t + 1.0) ** -0.5 * a0
        raise ValueError("nilpotent A0 without the eigenmatrix relation "
                         "[A0,[A0,A0^T]] = c A0 has no closed form")
    raise ValueError("closed form requires a normal or special nilpotent A0")


# ---------------------------------------------------------------------------
# pullback co-integration


@dataclasses.dataclass
class PullbackPath:
    """Solution of the pullback system b' = tr(S(A)^2) b, phi' = -Ric_low phi.

    `residuals` holds the relative mismatch between the trajectory state and
    the reconstruction (1/b) phi A0 phi^{-1} at each sample.  When phi gets
    too ill-conditioned to invert trustworthily (cond > 1e12), the path is
    truncated and `truncated` is set.
    """

    times: np.ndarray
    b: np.ndarray
    phi: np.ndarray
    residuals: np.ndarray
    truncated: bool

    @property
    def max_residual(self):
        return float(np.max(self.residuals)) if self.residuals.size else 0.0


def _ric_low(a):
    return 0.5 * commutator(a, a.T) - np.trace(a) * sym_part(a)


def cointegrate_pullback(traj):
    """Integrate the pullback scaling b and frame phi along a bracket run."""
    if traj.spec.kind is not FlowKind.BRACKET:
        raise ValueError("pullback co-integration is defined for bracket runs")
    a0 = traj.states[0]
    n = a0.shape[0]
    sz = n * n

    def rhs(y):
        a = y[:sz].reshape(n, n)
        b = y[sz]
        phi = y[sz + 1:].reshape(n, n)
        s = 0.5 * (a + a.T)
        out = np.empty_like(y)
        out[:sz] = bracket_rhs(a).ravel()
        out[sz] = float(np.sum(s * s)) * b
        out[sz + 1:] = (-_ric_low(a) @ phi).ravel()
        return out

    y0 = np.concatenate([a0.ravel(), [1.0], np.eye(n).ravel()])
    spec = traj.spec
    times, ys, terminal, _ = _adaptive(
        rhs, y0, traj.times, spec.rel_tol, spec.abs_tol, spec.max_step, None,
    )
    if terminal is not Terminal.REACHED_T_END:
        raise ArithmeticError(f"pullback co-integration stopped early: {terminal}")

    bs, phis, residuals = [], [], []
    truncated = False
    for k in range(len(traj.times)):
        b = float(ys[k][sz])
        phi = ys[k][sz + 1:].reshape(n, n)
        if np.linalg.cond(phi) > 1e12:
            truncated = True
            break
        bs.append(b)
        phis.append(phi)
        recon = phi @ a0 @ np.linalg.inv(phi) / b
        a_ref = traj.states[k]
        scale = max(frob_norm(a_ref), 1e-300)
        residuals.append(frob_norm(a_ref - recon) / scale)
    m = len(bs)
    return PullbackPath(
        times=traj.times[:m].copy(),
        b=np.array(bs),
        phi=np.stack(phis) if phis else np.zeros((0, n, n)),
        residuals=np.array(residuals),
        truncated=truncated,
    )


# ---------------------------------------------------------------------------
# bridge between the bracket flow and the gradient flow


@dataclasses.dataclass
class BridgeReport:
    """Comparison A(t) vs c(t) W(tau(t)) for traceless A0.

    W follows the negative gradient flow of F in its own time tau, while
    (c, tau) solve c' = -tr(S(W)^2) c^3, tau' = c^2 / 8.  For traceless A0
    the rescaled curve c W must retrace the bracket flow exactly;
    `residuals` holds the relative gap at each sample.
    """

    times: np.ndarray
    c: np.ndarray
    tau: np.ndarray
    residuals: np.ndarray

    @property
    def max_residual(self):
        return float(np.max(self.residuals))


def reparam_bridge(a0, t_end, rel_tol=1e-10, abs_tol=1e-13, sample_stride=0.25):
    """Run the bracket flow and the reparameterized gradient flow side by side."""
    a0 = as_matrix(a0)
    if abs(float(np.trace(a0))) > 1e-10 * max(1.0, frob_norm(a0)):
        raise ValueError("the bridge construction needs tr(A0) = 0")
    n = a0.shape[0]
    sz = n * n

    def rhs(y):
        a = y[:sz].reshape(n, n)
        w = y[sz:2 * sz].reshape(n, n)
        c = y[2 * sz]
        cw = w @ w.T - w.T @ w
        s = 0.5 * (w + w.T)
        out = np.empty_like(y)
        out[:sz] = bracket_rhs(a).ravel()
        out[sz:2 * sz] = (0.5 * c * c * (w @ cw - cw @ w)).ravel()
        out[2 * sz] = -float(np.sum(s * s)) * c**3
        out[2 * sz + 1] = c * c / 8.0
        return out

    y0 = np.concatenate([a0.ravel(), a0.ravel(), [1.0, 0.0]])
    grid = _sample_grid(t_end, sample_stride)
    times, ys, terminal, _ = _adaptive(rhs, y0, grid, rel_tol, abs_tol,
                                       math.inf, None)
    if terminal is not Terminal.REACHED_T_END:
        raise ArithmeticError(f"bridge integration stopped early: {terminal}")

    cs = ys[:, 2 * sz].copy()
    taus = ys[:, 2 * sz + 1].copy()
    residuals = np.empty(len(times))
    for k in range(len(times)):
        a = ys[k, :sz].reshape(n, n)
        w = ys[k, sz:2 * sz].reshape(n, n)
        residuals[k] = frob_norm(a - cs[k] * w) / max(frob_norm(a), 1e-300)
    return BridgeReport(times=times, c=cs, tau=taus, residuals=residuals)
