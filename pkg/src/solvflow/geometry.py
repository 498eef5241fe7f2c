"""Left-invariant metric Lie algebras and their curvature.

A metric Lie algebra is stored through its structure constants c[i,j,k]
with mu(e_i, e_j) = sum_k c[i,j,k] e_k in a basis declared orthonormal.
The matrices of `solvflow.flow` enter through `mu_of_a`: an n x n matrix A
becomes the (n+1)-dimensional solvable bracket mu(e_0, e_i) = A e_i with
abelian ideal span(e_1..e_n).

Curvature comes in two independent routes on purpose.  `ricci_block` uses
the closed block form available for mu_of_a brackets; `ricci_general`
evaluates the generic homogeneous-space formula Ric = M - B/2 - S(ad_H)
from the structure constants alone.  Tests pit them against each other.
The full Riemann tensor is assembled from the Koszul connection, with no
shortcut formulas, so sectional curvature claims never depend on the thing
they are checking.
"""

import dataclasses
import math

import numpy as np

from .matcore import (
    as_matrix,
    commutator,
    eigenvalues,
    frob_norm,
    skew_part,
    sym_part,
)

__all__ = [
    "MetricLieAlgebra",
    "mu_of_a",
    "ricci_block",
    "ricci_general",
    "scalar_curvature",
    "riemann_tensor",
    "riem_norm",
    "ricci_from_riemann",
    "sectional_curvature",
    "sample_sectional",
    "CurvatureReport",
    "build_curvature_report",
    "HeintzeVerdict",
    "heintze_check",
    "admits_negative_curvature",
    "Type3Report",
    "type3_monitor",
    "estimate_riem_sup",
    "rescale_transversal",
]

JACOBI_TOL = 1e-10


@dataclasses.dataclass
class MetricLieAlgebra:
    """Structure constants of a Lie bracket in an orthonormal basis."""

    c: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.c, dtype=float)
        if c.ndim != 3 or len(set(c.shape)) != 1:
            raise ValueError(f"structure constants must be (m,m,m), got {c.shape}")
        if not np.all(np.isfinite(c)):
            raise ValueError("non-finite structure constants")
        scale = float(np.max(np.abs(c))) if c.size else 0.0
        anti = np.max(np.abs(c + c.swapaxes(0, 1)))
        if anti > 1e-12 * max(1.0, scale):
            raise ValueError("structure constants not antisymmetric in (i, j)")
        c = 0.5 * (c - c.swapaxes(0, 1))
        jac = (
            np.einsum("ijl,lkr->ijkr", c, c)
            + np.einsum("jkl,lir->ijkr", c, c)
            + np.einsum("kil,ljr->ijkr", c, c)
        )
        if np.max(np.abs(jac)) > JACOBI_TOL * max(1.0, scale**2):
            raise ValueError("Jacobi identity violated")
        self.c = c

    @property
    def dim(self):
        return self.c.shape[0]

    def bracket_norm(self):
        """||mu|| with both orderings of each pair counted."""
        return float(np.linalg.norm(self.c.ravel()))

    def ad(self, i):
        """Matrix of ad(e_i) acting on column vectors."""
        return self.c[i].T.copy()

    def to_triples(self):
        """Sparse form: list of (i, j, k, value) with i < j, zeros skipped."""
        m = self.dim
        out = []
        for i in range(m):
            for j in range(i + 1, m):
                for k in range(m):
                    v = float(self.c[i, j, k])
                    if v != 0.0:
                        out.append((i, j, k, v))
        return out

    @classmethod
    def from_triples(cls, dim, triples):
        c = np.zeros((dim, dim, dim))
        for entry in triples:
            if len(entry) != 4:
                raise ValueError(f"triple {entry!r} is not (i, j, k, value)")
            i, j, k, v = entry
            i, j, k = int(i), int(j), int(k)
            if not (0 <= i < j < dim and 0 <= k < dim):
                raise ValueError(f"indices out of range in {entry!r}")
            c[i, j, k] += float(v)
            c[j, i, k] -= float(v)
        return cls(c)


def mu_of_a(a):
    """Solvable bracket on R^(n+1) with mu(e_0, e_i) = A e_i, ideal abelian."""
    a = as_matrix(a)
    n = a.shape[0]
    c = np.zeros((n + 1, n + 1, n + 1))
    c[0, 1:, 1:] = a.T
    c[1:, 0, 1:] = -a.T
    return MetricLieAlgebra(c)


# ---------------------------------------------------------------------------
# Ricci, two ways


def ricci_block(a):
    """Ricci operator of mu_of_a(A) from its block form.

    The result is diag(-tr S(A)^2, [A, A^T]/2 - tr(A) S(A)) of size n+1.
    """
    a = as_matrix(a)
    n = a.shape[0]
    s = sym_part(a)
    out = np.zeros((n + 1, n + 1))
    out[0, 0] = -float(np.sum(s * s))
    out[1:, 1:] = 0.5 * commutator(a, a.T) - np.trace(a) * s
    return out


def ricci_general(g):
    """Ricci operator of any metric Lie algebra: Ric = M - B/2 - S(ad_H)."""
    c = g.c
    m = -0.5 * np.einsum("xij,yij->xy", c, c) + 0.25 * np.einsum("ijx,ijy->xy", c, c)
    killing = np.einsum("xjk,ykj->xy", c, c)
    h = np.einsum("xjj->x", c)
    ad_h = np.einsum("x,xjk->kj", h, c)
    return m - 0.5 * killing - sym_part(ad_h)


def scalar_curvature(g):
    return float(np.trace(ricci_general(g)))


# ---------------------------------------------------------------------------
# full curvature tensor


def riemann_tensor(g):
    """Components R[i,j,k,l] = <R(e_i,e_j)e_k, e_l> via the Koszul connection."""
    c = g.c
    # gamma[i,j,k] = (c[i,j,k] - c[i,k,j] - c[j,k,i]) / 2
    gamma = 0.5 * (c - np.einsum("ikj->ijk", c) - np.einsum("jki->ijk", c))
    r = (
        np.einsum("jkm,iml->ijkl", gamma, gamma)
        - np.einsum("ikm,jml->ijkl", gamma, gamma)
        - np.einsum("ijm,mkl->ijkl", c, gamma)
    )
    return r


def riem_norm(g, riem=None):
    if riem is None:
        riem = riemann_tensor(g)
    return float(np.linalg.norm(riem.ravel()))


def ricci_from_riemann(g, riem=None):
    """Third route to Ricci: contract the full tensor.  Used as a cross-check."""
    if riem is None:
        riem = riemann_tensor(g)
    return np.einsum("ijki->jk", riem)


def sectional_curvature(g, x, y, riem=None):
    """K(x, y) = <R(x,y)y, x> / (|x|^2 |y|^2 - <x,y>^2) for a 2-plane."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    gram = float(x @ x) * float(y @ y) - float(x @ y) ** 2
    if gram <= 1e-12 * max(float(x @ x) * float(y @ y), 1e-300):
        raise ValueError("x, y do not span a 2-plane")
    if riem is None:
        riem = riemann_tensor(g)
    num = float(np.einsum("ijkl,i,j,k,l->", riem, x, y, y, x))
    return num / gram


def sample_sectional(g, num_planes=512, seed=0, riem=None):
    """Sectional curvatures of `num_planes` random 2-planes (fixed seed)."""
    if riem is None:
        riem = riemann_tensor(g)
    rng = np.random.default_rng(seed)
    m = g.dim
    xs = rng.standard_normal((num_planes, m))
    ys = rng.standard_normal((num_planes, m))
    nums = np.einsum("ijkl,pi,pj,pk,pl->p", riem, xs, ys, ys, xs)
    grams = (
        np.einsum("pi,pi->p", xs, xs) * np.einsum("pi,pi->p", ys, ys)
        - np.einsum("pi,pi->p", xs, ys) ** 2
    )
    keep = grams > 1e-8
    return nums[keep] / grams[keep]


# ---------------------------------------------------------------------------
# negative-curvature criteria for mu_of_a


@dataclasses.dataclass
class HeintzeVerdict:
    """Outcome of the three solvable negative-curvature conditions.

    cond_a: the ideal has codimension one in the derived sense (A invertible).
    cond_b: the symmetric part of sign*A is positive definite.
    cond_c: D0^2 + [D0, S0] is positive definite (D0, S0 the symmetric and
            skew parts of sign*A).
    """

    sign: int
    cond_a: bool
    cond_b: bool
    cond_c: bool
    negative: bool
    margin_b: float
    margin_c: float

    def to_dict(self):
        return {
            "sign": self.sign,
            "cond_a": self.cond_a,
            "cond_b": self.cond_b,
            "cond_c": self.cond_c,
            "negative": self.negative,
            "margin_b": self.margin_b,
            "margin_c": self.margin_c,
        }


def _posdef(mat, tol=1e-10):
    vals = np.linalg.eigvalsh(sym_part(mat))
    opnorm = float(np.max(np.abs(vals))) if vals.size else 0.0
    margin = float(np.min(vals))
    return margin > tol * opnorm, margin


def heintze_check(a, tol=1e-10):
    """Check the negative-curvature conditions for mu_of_a(A), best sign.

    Both orientations of the transversal vector e_0 are tried (they flip
    A to -A); the verdict of the more favorable sign is returned.
    """
    a = as_matrix(a)
    n = a.shape[0]
    nrm = frob_norm(a)
    cond_a = nrm > 0.0 and abs(float(np.linalg.det(a))) > 1e-12 * nrm**n

    verdicts = []
    for sign in (1, -1):
        sa = sign * a
        d0 = sym_part(sa)
        s0 = skew_part(sa)
        ok_b, margin_b = _posdef(d0, tol)
        ok_c, margin_c = _posdef(d0 @ d0 + commutator(d0, s0), tol)
        verdicts.append(
            HeintzeVerdict(
                sign=sign,
                cond_a=cond_a,
                cond_b=ok_b,
                cond_c=ok_c,
                negative=cond_a and ok_b and ok_c,
                margin_b=margin_b,
                margin_c=margin_c,
            )
        )

    def rank(v):
        return (v.negative, v.cond_b, float(np.trace(v.sign * a)) >= 0.0)

    return max(verdicts, key=rank)


def admits_negative_curvature(a, tol=1e-10):
    """True when A is invertible and Re(Spec A) has one strict sign.

    This is the condition under which some metric in the conjugation orbit
    of mu_of_a(A) is negatively curved; `heintze_check` tests the given
    metric itself.
    """
    a = as_matrix(a)
    n = a.shape[0]
    nrm = frob_norm(a)
    if nrm == 0.0 or abs(float(np.linalg.det(a))) <= 1e-12 * nrm**n:
        return False
    re = np.real(eigenvalues(a))
    return bool(np.all(re > tol * nrm) or np.all(re < -tol * nrm))


# ---------------------------------------------------------------------------
# Type-III decay monitor


@dataclasses.dataclass
class Type3Report:
    """t * ||Riem|| along a bracket trajectory, for the decay bound."""

    times: np.ndarray
    products: np.ndarray
    sup: float

    def running_sup(self):
        return np.maximum.accumulate(self.products)


def type3_monitor(traj, t_start=0.1):
    """Record t * ||Riem(mu_of_a(A(t)))|| over samples with t >= t_start.

    Requires tr(A0^2) >= 0, the regime where the product stays bounded.
    Skew A0 (which has tr(A0^2) < 0 but a flat, constant geometry) is let
    through since the product is identically zero there.
    """
    a0 = traj.states[0]
    tr_a02 = float(np.trace(a0 @ a0))
    nrm0 = frob_norm(a0)
    is_skew = frob_norm(a0 + a0.T) <= 1e-12 * max(1.0, nrm0)
    if tr_a02 < -1e-12 * max(1.0, nrm0**2) and not is_skew:
        raise ValueError(
            "type3_monitor needs tr(A0^2) >= 0 (or a flat skew A0); "
            f"got tr(A0^2) = {tr_a02:g}"
        )
    times, products = [], []
    for t, a in zip(traj.times, traj.states):
        if t < t_start:
            continue
        times.append(float(t))
        products.append(float(t) * riem_norm(mu_of_a(a)))
    products = np.array(products)
    sup = float(np.max(products)) if products.size else 0.0
    return Type3Report(times=np.array(times), products=products, sup=sup)


def estimate_riem_sup(n, num_samples=200, seed=0):
    """Observed max of ||Riem|| over random unit-bracket-norm mu_of_a inputs.

    A sampled stand-in for the (unknown) true sup over the unit sphere;
    the value is a reported bound, not a certified one.
    """
    rng = np.random.default_rng(seed)
    best = 0.0
    for _ in range(num_samples):
        a = rng.standard_normal((n, n))
        a /= math.sqrt(2.0) * frob_norm(a)  # makes ||mu_of_a(a)|| = 1
        best = max(best, riem_norm(mu_of_a(a)))
    return best


def rescale_transversal(g, beta):
    """Scale every bracket involving e_0 by beta, keeping the rest.

    This is the one-line rescaling [e_0, x] -> beta [e_0, x].  It is only
    a Lie bracket again when each Jacobi term touches e_0 exactly once
    (true whenever e_0 is transversal to an ideal); the constructor
    re-validates and raises otherwise.
    """
    c = g.c.copy()
    c[0, :, :] *= beta
    c[:, 0, :] *= beta
    return MetricLieAlgebra(c)


# ---------------------------------------------------------------------------
# aggregate report


@dataclasses.dataclass
class CurvatureReport:
    dim: int
    ricci: np.ndarray
    scalar: float
    riem_norm: float
    sectional_min: float
    sectional_max: float
    plane_count: int
    seed: int
    flat: bool
    heintze: HeintzeVerdict | None

    def to_dict(self):
        return {
            "dim": self.dim,
            "ricci": [[float(v) for v in row] for row in self.ricci],
            "scalar": self.scalar,
            "riem_norm": self.riem_norm,
            "sectional_min": self.sectional_min,
            "sectional_max": self.sectional_max,
            "plane_count": self.plane_count,
            "seed": self.seed,
            "flat": self.flat,
            "heintze": None if self.heintze is None else self.heintze.to_dict(),
        }


def build_curvature_report(g, num_planes=512, seed=0, heintze=None):
    """Curvature summary of one metric Lie algebra.

    `heintze` may carry a precomputed verdict when the algebra came from a
    matrix; the general formula route has no Heintze test of its own.
    """
    riem = riemann_tensor(g)
    rnorm = float(np.linalg.norm(riem.ravel()))
    ks = sample_sectional(g, num_planes, seed, riem=riem)
    scale = g.bracket_norm()
    return CurvatureReport(
        dim=g.dim,
        ricci=ricci_general(g),
        scalar=scalar_curvature(g),
        riem_norm=rnorm,
        sectional_min=float(np.min(ks)) if ks.size else 0.0,
        sectional_max=float(np.max(ks)) if ks.size else 0.0,
        plane_count=int(ks.size),
        seed=seed,
        flat=rnorm <= 1e-8 * max(scale**2, 1e-300),
        heintze=heintze,
    )
