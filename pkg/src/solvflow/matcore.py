"""Dense real matrix primitives shared by every other module.

Everything here works on plain numpy arrays of shape (n, n) with float64
entries.  Matrices are the coordinates of the whole toolkit (a matrix A
stands for a solvable Lie bracket, see `solvflow.geometry.mu_of_a`), so the
helpers insist on square, finite input and fail loudly otherwise.
"""

import enum
import json

import numpy as np

__all__ = [
    "MatrixClass",
    "as_matrix",
    "commutator",
    "sym_part",
    "skew_part",
    "frob_inner",
    "frob_norm",
    "eigenvalues",
    "spectrum_distance",
    "classify_matrix",
    "matrix_to_json",
    "matrix_from_json",
]


class MatrixClass(str, enum.Enum):
    """Structural class of a real square matrix, ordered by specificity."""

    SKEW = "skew"
    NORMAL = "normal"
    NILPOTENT = "nilpotent"
    GENERIC = "generic"


def as_matrix(a):
    """Coerce `a` to a float64 square matrix, validating shape and finiteness."""
    m = np.asarray(a, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] == 0:
        raise ValueError("empty matrix")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def commutator(x, y):
    """[X, Y] = XY - YX."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise ValueError(f"shape mismatch {x.shape} vs {y.shape}")
    return x @ y - y @ x


def sym_part(a):
    """Symmetric part (A + A^T)/2.  The result is exactly symmetric."""
    a = np.asarray(a, dtype=float)
    return 0.5 * (a + a.T)


def skew_part(a):
    a = np.asarray(a, dtype=float)
    return 0.5 * (a - a.T)


def frob_inner(x, y):
    """Frobenius inner product <X, Y> = tr(X Y^T) = sum of entrywise products."""
    return float(np.sum(np.asarray(x, dtype=float) * np.asarray(y, dtype=float)))


def frob_norm(x):
    return float(np.linalg.norm(np.asarray(x, dtype=float)))


def _canonical_order(vals):
    # lexsort uses the last key as primary: sort by real part, ties by imag.
    order = np.lexsort((vals.imag, vals.real))
    return vals[order]


def eigenvalues(a):
    """Spectrum of `a` in canonical order (lexicographic by real, then imag).

    Runs a cheap consistency check afterwards: the product of the returned
    eigenvalues must reproduce det(a).  A failure means the eigensolver
    did not converge to anything usable, so it raises instead of returning
    garbage.
    """
    a = as_matrix(a)
    vals = np.linalg.eigvals(a)
    n = a.shape[0]
    nrm = frob_norm(a)
    if nrm > 0.0:
        det = float(np.linalg.det(a))
        prod = complex(np.prod(vals))
        scale = max(abs(det), abs(prod), nrm**n)
        if np.isfinite(scale) and abs(prod - det) > 1e-8 * scale:
            raise ArithmeticError(
                f"eigenvalue product {prod:g} disagrees with det {det:g}"
            )
    return _canonical_order(vals)


def spectrum_distance(s, t):
    """Max entrywise distance between two canonically ordered spectra."""
    s = np.asarray(s, dtype=complex)
    t = np.asarray(t, dtype=complex)
    if s.shape != t.shape:
        raise ValueError("spectra of different sizes")
    return float(np.max(np.abs(s - t))) if s.size else 0.0


def classify_matrix(a, tol=1e-8):
    """Most specific of Skew / Nilpotent / Normal / Generic for `a`.

    All tests are scale invariant: the matrix is normalized before any
    threshold comparison, so classify_matrix(c*a) == classify_matrix(a)
    for every c != 0.  The zero matrix counts as skew.
    """
    a = as_matrix(a)
    nrm = frob_norm(a)
    if nrm == 0.0:
        return MatrixClass.SKEW
    m = a / nrm
    if frob_norm(m + m.T) <= tol:
        return MatrixClass.SKEW
    n = a.shape[0]
    if frob_norm(np.linalg.matrix_power(m, n)) <= tol:
        return MatrixClass.NILPOTENT
    if frob_norm(commutator(m, m.T)) <= tol:
        return MatrixClass.NORMAL
    return MatrixClass.GENERIC


def matrix_to_json(a):
    """Serialize to a JSON array of rows; round-trips float64 exactly."""
    a = as_matrix(a)
    return json.dumps([[float(x) for x in row] for row in a])


def matrix_from_json(text):
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"bad matrix JSON: {exc}") from exc
    if not isinstance(rows, list) or not rows or not all(
        isinstance(r, list) for r in rows
    ):
        raise ValueError("matrix JSON must be a non-empty array of rows")
    return as_matrix(rows)
