"""Dense complex matrix primitives: adjoints, Hermitian eigensystems,
operator norms, fractional powers of |A|, and positivity tests.

Everything operates on numpy complex128 arrays.  Tolerances are relative to
max(1, scale) throughout, where scale is a norm of the input, so the behavior
is consistent for both tiny and large operands.
"""

from __future__ import annotations

import contextlib
from contextvars import ContextVar
from typing import NamedTuple

import numpy as np

from ._cache import matrix_key, memo
from .errors import NoConvergence, NotHermitian, NotPositive, ParamOutOfRange

# Relative tolerance accepted when an input must be Hermitian.
HERMITIAN_TOL = 1e-8
# Reconstruction / orthonormality budget for eigendecompositions.
EIG_TOL = 1e-10
# Eigenvalues of a nominally PSD matrix may round below zero by this much
# (relative); anything lower is treated as genuinely negative.
NEG_EIG_CLAMP = 1e-10
# Relative cutoff separating the support of |A| from its kernel.
SUPPORT_CUT = 1e-12

_precise: ContextVar[bool] = ContextVar("berezin_precise_eig", default=False)


@contextlib.contextmanager
def precise_eigensolver(dps: int = 50):
    """Route Hermitian eigendecompositions through mpmath at `dps` digits.

    Used to re-check marginal inequality violations with tighter numerics;
    results are converted back to float64, so callers never see mp types.
    """
    token = _precise.set(True)
    global _PRECISE_DPS
    _PRECISE_DPS = dps
    try:
        yield
    finally:
        _precise.reset(token)


_PRECISE_DPS = 50


class HermEig(NamedTuple):
    """Eigenvalues (ascending, real) and orthonormal eigenvector columns."""

    values: np.ndarray
    vectors: np.ndarray


def as_complex_matrix(obj) -> np.ndarray:
    """Validate and convert to a 2-d complex128 array with finite entries."""
    a = np.asarray(obj, dtype=np.complex128)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got ndim={a.ndim}")
    if a.size == 0:
        raise ValueError("empty matrix")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ValueError("matrix entries must be finite")
    return np.ascontiguousarray(a)


def adjoint(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return a.conj().T


def re_part(a: np.ndarray) -> np.ndarray:
    """Hermitian part (A + A*)/2; exactly Hermitian entry-for-entry."""
    return (a + a.conj().T) * 0.5


def im_part(a: np.ndarray) -> np.ndarray:
    """Skew part (A - A*)/(2i), returned as a Hermitian matrix."""
    return (a - a.conj().T) * complex(0.0, -0.5)


def _fro(a: np.ndarray) -> float:
    return float(np.linalg.norm(a))


def is_hermitian(a: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    """True iff ||A - A*||_F <= tol * max(1, ||A||_F)."""
    if a.shape[0] != a.shape[1]:
        return False
    return _fro(a - a.conj().T) <= tol * max(1.0, _fro(a))


def _eig_mpmath(h: np.ndarray) -> HermEig:
    """Hermitian eigendecomposition at elevated precision, back to float64."""
    import mpmath
    from mpmath import mp

    n = h.shape[0]
    with mpmath.workdps(_PRECISE_DPS):
        m = mp.matrix(n, n)
        for i in range(n):
            for j in range(n):
                z = h[i, j]
                m[i, j] = mp.mpc(z.real, z.imag)
        m = (m + m.transpose_conj()) * mp.mpf("0.5")
        ev, q = mp.eighe(m)
        vals = np.array([float(ev[i]) for i in range(n)], dtype=np.float64)
        vecs = np.array(
            [[complex(q[i, j]) for j in range(n)] for i in range(n)],
            dtype=np.complex128,
        )
    order = np.argsort(vals, kind="stable")
    return HermEig(vals[order], vecs[:, order])


def herm_eig(h: np.ndarray, tol: float = HERMITIAN_TOL) -> HermEig:
    """Eigendecomposition of a Hermitian matrix.

    The input must be Hermitian to `tol` (relative Frobenius), else
    NotHermitian.  The computation symmetrizes first, so the result is the
    exact decomposition of (H + H*)/2.  Eigenvalues come back ascending;
    eigenvector columns are orthonormal.  Raises NoConvergence if the
    underlying solver fails.
    """
    if h.shape[0] != h.shape[1]:
        raise NotHermitian(f"matrix is {h.shape[0]}x{h.shape[1]}, not square")
    dev = _fro(h - h.conj().T)
    if dev > tol * max(1.0, _fro(h)):
        raise NotHermitian(
            f"deviation from Hermitian {dev:.3e} exceeds tolerance"
        )

    def compute() -> HermEig:
        sym = (h + h.conj().T) * 0.5
        if _precise.get():
            return _eig_mpmath(sym)
        try:
            w, v = np.linalg.eigh(sym)
        except np.linalg.LinAlgError as exc:
            raise NoConvergence(str(exc)) from exc
        ev = HermEig(w, v)
        ev.values.flags.writeable = False
        ev.vectors.flags.writeable = False
        return ev

    return memo(matrix_key("heig" if not _precise.get() else "heig50", h), compute)


def _gram_eig(a: np.ndarray) -> HermEig:
    """Eigensystem of A*A (shared by abs_power and operator_norm)."""

    def compute() -> HermEig:
        return herm_eig(adjoint(a) @ a)

    return memo(matrix_key("gram" if not _precise.get() else "gram50", a), compute)


def operator_norm(a: np.ndarray) -> float:
    """Largest singular value: sqrt of the top eigenvalue of A*A."""
    w = _gram_eig(a).values
    return float(np.sqrt(max(float(w[-1]), 0.0)))


def spectral_radius(a: np.ndarray) -> float:
    """Largest eigenvalue modulus (general, possibly non-normal input)."""
    if a.shape[0] != a.shape[1]:
        raise ValueError("spectral radius needs a square matrix")

    def compute() -> float:
        try:
            ev = np.linalg.eigvals(a)
        except np.linalg.LinAlgError as exc:
            raise NoConvergence(str(exc)) from exc
        return float(np.max(np.abs(ev)))

    return memo(matrix_key("srad", a), compute)


def is_positive(p: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    """True iff P is Hermitian within tol and its spectrum is >= -tol * scale."""
    if not is_hermitian(p, tol):
        return False
    w = herm_eig(p, tol).values
    scale = max(1.0, float(np.max(np.abs(w))) if w.size else 0.0)
    return float(w[0]) >= -tol * scale


def _clamped_nonneg(w: np.ndarray, what: str) -> np.ndarray:
    """Clamp round-off negatives to 0; genuinely negative values raise."""
    scale = max(1.0, float(np.max(np.abs(w))) if w.size else 0.0)
    low = float(w.min())
    if low < -NEG_EIG_CLAMP * scale:
        raise NotPositive(f"{what} has eigenvalue {low:.6e} below clamp range")
    return np.where(w < 0.0, 0.0, w)


def _checked_exponent(p) -> float:
    try:
        p = float(p)
    except (TypeError, ValueError) as exc:
        raise ParamOutOfRange(f"exponent must be a real number, got {p!r}") from exc
    if not np.isfinite(p) or p < 0.0:
        raise ParamOutOfRange(f"exponent must be a finite real >= 0, got {p!r}")
    return p


def positive_power(h: np.ndarray, p: float) -> np.ndarray:
    """H^p for Hermitian positive semidefinite H, p >= 0.

    p = 0 returns the support projection (eigenvalues above a relative
    cutoff count as support).  p = 1 returns the symmetrized input as-is.
    Small negative eigenvalues clamp to 0; real negatives raise NotPositive.
    """
    p = _checked_exponent(p)
    ev = herm_eig(h)
    w = _clamped_nonneg(ev.values, "operand")
    if p == 1.0:
        return (h + h.conj().T) * 0.5
    if p == 0.0:
        cut = SUPPORT_CUT * max(1.0, float(w.max()))
        keep = ev.vectors[:, w > cut]
        out = keep @ keep.conj().T
    else:
        out = (ev.vectors * (w**p)) @ ev.vectors.conj().T
    return (out + out.conj().T) * 0.5


def abs_power(a: np.ndarray, p: float) -> np.ndarray:
    """|A|^p for any square A and real p >= 0, via the spectrum of A*A.

    Writing A*A = V diag(s_i^2) V*, the result is V diag(s_i^p) V*.
    p = 0 returns the support projection of |A|.  The output is symmetrized,
    so it is Hermitian exactly and PSD to working precision.
    """
    if a.shape[0] != a.shape[1]:
        raise ValueError("abs_power needs a square matrix")
    p = _checked_exponent(p)
    ev = _gram_eig(a)
    w = _clamped_nonneg(ev.values, "A*A")
    s = np.sqrt(w)
    if p == 0.0:
        cut = SUPPORT_CUT * max(1.0, float(s.max()))
        keep = ev.vectors[:, s > cut]
        out = keep @ keep.conj().T
    else:
        out = (ev.vectors * (s**p)) @ ev.vectors.conj().T
    return (out + out.conj().T) * 0.5


def positive_sqrt(p_mat: np.ndarray) -> np.ndarray:
    """Unique PSD square root of a PSD matrix.

    Requires Hermitian input to the standard tolerance; eigenvalues in
    [-1e-10 * max(1, scale), 0) clamp to 0, anything lower raises NotPositive.
    """
    return positive_power(p_mat, 0.5)
