"""Dense complex linear algebra over finite-dimensional normed spaces.

Scalars are complex double precision, matrices are row-major numpy arrays,
and every verification is residual based against an explicit ``Tolerance``.
Two pairing conventions are fixed here once and used by every other module:

* Banach duality is bilinear: a functional is its coefficient vector,
  ``dual_pair(x, f) = sum_i x_i f_i``, and the adjoint of a matrix is the
  plain transpose.
* Hilbert structure uses the sesquilinear ``hermitian_inner`` (conjugation
  on the second slot) with conjugate-transpose adjoints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import InvalidInput

_PNORM_ASCENT_ITERS = 40


def as_vector(v) -> np.ndarray:
    a = np.asarray(v, dtype=np.complex128)
    if a.ndim != 1:
        raise InvalidInput(f"expected a vector, got shape {a.shape}")
    return a


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2:
        raise InvalidInput(f"expected a matrix, got shape {a.shape}")
    return a


def require_finite(a: np.ndarray, what: str = "array") -> np.ndarray:
    # np.isfinite on complex arrays requires both components finite
    if a.size and not np.all(np.isfinite(a)):
        raise InvalidInput(f"{what} has non-finite entries")
    return a


def max_abs(a) -> float:
    """Largest entry modulus; 0 for an empty array."""
    a = np.asarray(a)
    return float(np.max(np.abs(a))) if a.size else 0.0


@dataclass(frozen=True)
class NormTag:
    """Selects the norm on a coordinate space: l1, l2, linf, or lp with p > 1.

    ``lp`` is reserved for general exponents; use the dedicated tags for
    p in {1, 2, inf} (the factory :meth:`lp` coerces those automatically).
    """

    kind: str
    p: Optional[float] = None

    _KINDS = ("l1", "l2", "linf", "lp")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise InvalidInput(f"unknown norm kind {self.kind!r}")
        if self.kind == "lp":
            if self.p is None or not math.isfinite(self.p) or self.p <= 1.0:
                raise InvalidInput("lp norm requires a finite exponent p > 1")
        elif self.p is not None:
            raise InvalidInput(f"{self.kind} norm takes no exponent")

    @classmethod
    def l1(cls) -> "NormTag":
        return cls("l1")

    @classmethod
    def l2(cls) -> "NormTag":
        return cls("l2")

    @classmethod
    def linf(cls) -> "NormTag":
        return cls("linf")

    @classmethod
    def lp(cls, p: float) -> "NormTag":
        """General exponent tag; p = 1, 2, inf are coerced to the exact tags."""
        if p == 1.0:
            return cls("l1")
        if p == 2.0:
            return cls("l2")
        if math.isinf(p):
            return cls("linf")
        return cls("lp", float(p))

    @property
    def exponent(self) -> float:
        return {"l1": 1.0, "l2": 2.0, "linf": math.inf}.get(self.kind, self.p)

    def label(self) -> str:
        return self.kind if self.kind != "lp" else f"lp({self.p:g})"


@dataclass(frozen=True)
class NormedSpace:
    dim: int
    norm: NormTag

    def __post_init__(self):
        if self.dim < 0:
            raise InvalidInput("space dimension must be nonnegative")


@dataclass(frozen=True)
class Tolerance:
    """Residual thresholds and sampling budget used by all verifiers."""

    eps_residual: float = 1e-9
    eps_rank: float = 1e-10
    sample_count: int = 256
    seed: int = 0

    def __post_init__(self):
        if self.eps_residual <= 0 or self.eps_rank <= 0:
            raise InvalidInput("tolerances must be positive")
        if self.sample_count < 1:
            raise InvalidInput("sample_count must be >= 1")
        if self.seed < 0:
            raise InvalidInput("seed must be nonnegative")

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)


def vec_norm(v, tag: NormTag) -> float:
    """Norm of a coordinate vector under ``tag``.

    An empty vector has norm 0 (the zero-dimensional space shows up in
    degenerate dilations).
    """
    a = require_finite(as_vector(v), "vector")
    if a.size == 0:
        return 0.0
    mags = np.abs(a)
    if tag.kind == "l1":
        return float(np.sum(mags))
    if tag.kind == "l2":
        return float(np.sqrt(np.sum(mags * mags)))
    if tag.kind == "linf":
        return float(np.max(mags))
    # final root through python-float pow: numpy's array-pow kernel rounds
    # differently, and batch/scalar paths must agree bit for bit
    return float(np.sum(mags ** tag.p)) ** (1.0 / tag.p)


def row_norms(rows: np.ndarray, tag: NormTag) -> np.ndarray:
    """Vectorised ``vec_norm`` over the rows of a 2-d array."""
    mags = np.abs(np.asarray(rows, dtype=np.complex128))
    if mags.shape[1] == 0:
        return np.zeros(mags.shape[0])
    if tag.kind == "l1":
        return mags.sum(axis=1)
    if tag.kind == "l2":
        return np.sqrt((mags * mags).sum(axis=1))
    if tag.kind == "linf":
        return mags.max(axis=1)
    inner = (mags ** tag.p).sum(axis=1)
    inv = 1.0 / tag.p
    return np.array([float(s) ** inv for s in inner])


@dataclass(frozen=True)
class OperatorNorm:
    """Operator norm value; ``exact`` is False for the sampled lp estimate,
    which is then only a certified lower bound."""

    value: float
    exact: bool


def _phase(z: np.ndarray) -> np.ndarray:
    a = np.abs(z)
    out = np.zeros_like(z)
    nz = a > 0
    out[nz] = z[nz] / a[nz]
    return out


def _duality_map(v: np.ndarray, p: float) -> np.ndarray:
    """|v|^(p-1) * phase(v), the norming direction for the lp norm."""
    a = np.abs(v)
    out = np.zeros_like(v)
    nz = a > 0
    out[nz] = (a[nz] ** (p - 1.0)) * (v[nz] / a[nz])
    return out


def random_unit_vectors(rng: np.random.Generator, count: int, dim: int,
                        tag: NormTag) -> np.ndarray:
    """Rows are complex Gaussian vectors normalised under ``tag``."""
    if dim == 0:
        return np.zeros((count, 0), dtype=np.complex128)
    v = rng.standard_normal((count, dim)) + 1j * rng.standard_normal((count, dim))
    norms = row_norms(v, tag)
    norms[norms == 0] = 1.0
    return v / norms[:, None]


def op_norm(m, space_norm: NormTag, tol: Optional[Tolerance] = None) -> OperatorNorm:
    """Operator norm of a square matrix acting on (C^d, space_norm).

    Exact for l1 (max column sum), linf (max row sum) and l2 (largest
    singular value). For a general lp tag the value is a lower bound found
    by sampling random unit vectors and running a nonlinear power-iteration
    ascent; the result is flagged ``exact=False``.
    """
    a = require_finite(as_matrix(m), "matrix")
    if a.shape[0] != a.shape[1]:
        raise InvalidInput(f"operator norm needs a square matrix, got {a.shape}")
    n = a.shape[0]
    if n == 0:
        return OperatorNorm(0.0, True)
    mags = np.abs(a)
    if space_norm.kind == "l1":
        return OperatorNorm(float(mags.sum(axis=0).max()), True)
    if space_norm.kind == "linf":
        return OperatorNorm(float(mags.sum(axis=1).max()), True)
    if space_norm.kind == "l2":
        return OperatorNorm(float(np.linalg.svd(a, compute_uv=False)[0]), True)

    tol = tol or Tolerance()
    p = space_norm.p
    q = p / (p - 1.0)
    rng = tol.rng()
    starts = random_unit_vectors(rng, tol.sample_count, n, space_norm)
    values = row_norms(starts @ a.T, space_norm)
    best = float(values.max())
    # ascend from the most promising samples plus the coordinate directions
    order = np.argsort(values)[::-1][:4]
    seeds = [starts[i] for i in order] + [np.eye(n, dtype=np.complex128)[j]
                                          for j in range(min(n, 4))]
    for x in seeds:
        x = x / (vec_norm(x, space_norm) or 1.0)
        for _ in range(_PNORM_ASCENT_ITERS):
            y = a @ x
            ny = vec_norm(y, space_norm)
            best = max(best, ny)
            if ny == 0.0:
                break
            z = a.conj().T @ _duality_map(y, p)
            xn = _duality_map(z, q)
            nx = vec_norm(xn, space_norm)
            if nx == 0.0:
                break
            x = xn / nx
    return OperatorNorm(best, False)


@dataclass(frozen=True)
class IsometryCheck:
    ok: bool
    residual: float
    witness: Optional[object] = None
    note: str = ""

    def __bool__(self) -> bool:
        return self.ok


def is_isometry(m, tag: NormTag, tol: Optional[Tolerance] = None) -> IsometryCheck:
    """Certify that a square matrix is a surjective isometry of (C^d, tag).

    For l2 the test is unitarity, M*M = I. For every other tag the matrix
    must be a generalized permutation (exactly one entry of unit modulus in
    each row and column), which characterises the surjective isometries of
    finite-dimensional lp spaces away from p = 2. On failure the witness is
    a vector whose norm the matrix changes (l2) or the offending row/column
    index (other tags).
    """
    tol = tol or Tolerance()
    a = require_finite(as_matrix(m), "matrix")
    if a.shape[0] != a.shape[1]:
        raise InvalidInput(f"isometry test needs a square matrix, got {a.shape}")
    n = a.shape[0]
    if n == 0:
        return IsometryCheck(True, 0.0)

    if tag.kind == "l2":
        gram = a.conj().T @ a
        resid = max_abs(gram - np.eye(n))
        if resid <= tol.eps_residual:
            return IsometryCheck(True, resid)
        evals, evecs = np.linalg.eigh((gram + gram.conj().T) / 2.0)
        worst = int(np.argmax(np.abs(evals - 1.0)))
        return IsometryCheck(False, resid, witness=evecs[:, worst],
                             note="unitarity defect M*M != I")

    mags = np.abs(a)
    top_rows = mags.max(axis=1)
    top_cols = mags.max(axis=0)
    # off-diagonal mass: everything except the single largest entry per line
    resid_rows = np.abs(top_rows - 1.0)
    resid_cols = np.abs(top_cols - 1.0)
    second_rows = np.partition(mags, -2, axis=1)[:, -2] if n > 1 else np.zeros(n)
    second_cols = np.partition(mags, -2, axis=0)[-2, :] if n > 1 else np.zeros(n)
    per_row = np.maximum(resid_rows, second_rows)
    per_col = np.maximum(resid_cols, second_cols)
    resid = float(max(per_row.max(), per_col.max()))
    if resid <= tol.eps_residual:
        return IsometryCheck(True, resid)
    if per_row.max() >= per_col.max():
        idx = int(np.argmax(per_row))
        return IsometryCheck(False, resid, witness=("row", idx),
                             note="not a generalized permutation")
    idx = int(np.argmax(per_col))
    return IsometryCheck(False, resid, witness=("col", idx),
                         note="not a generalized permutation")


def hermitian_eig(m, tol: Optional[Tolerance] = None):
    """Eigendecomposition M = U diag(w) U* of a Hermitian matrix.

    Eigenvalues come back sorted descending. Raises :class:`InvalidInput`
    when M is not Hermitian within tolerance.
    """
    tol = tol or Tolerance()
    a = require_finite(as_matrix(m), "matrix")
    if a.shape[0] != a.shape[1]:
        raise InvalidInput("hermitian_eig needs a square matrix")
    if a.shape[0] == 0:
        return np.zeros(0), np.zeros((0, 0), dtype=np.complex128)
    herm_defect = max_abs(a - a.conj().T)
    if herm_defect > tol.eps_residual * (1.0 + max_abs(a)):
        raise InvalidInput(f"matrix is not Hermitian, defect {herm_defect:.3e}")
    sym = (a + a.conj().T) / 2.0
    evals, evecs = np.linalg.eigh(sym)
    order = np.argsort(evals)[::-1]
    evals = evals[order]
    evecs = evecs[:, order]
    recon = (evecs * evals) @ evecs.conj().T
    fro = float(np.linalg.norm(a - recon))
    if fro > tol.eps_residual * (1.0 + float(np.linalg.norm(a))):
        raise InvalidInput(f"eigendecomposition residual too large: {fro:.3e}")
    return evals, evecs


def numeric_rank(m, tol: Optional[Tolerance] = None) -> int:
    """Count of singular values above ``eps_rank`` relative to the largest."""
    tol = tol or Tolerance()
    a = as_matrix(m)
    if a.size == 0:
        return 0
    svals = np.linalg.svd(a, compute_uv=False)
    smax = float(svals[0])
    if smax <= 0.0:
        return 0
    return int(np.sum(svals > tol.eps_rank * smax))


def dual_pair(x, f) -> complex:
    """Bilinear duality pairing <x, f> = sum_i x_i f_i (no conjugation)."""
    xv = as_vector(x)
    fv = as_vector(f)
    if xv.shape != fv.shape:
        raise InvalidInput(f"length mismatch: {xv.shape[0]} vs {fv.shape[0]}")
    return complex(np.sum(xv * fv))


def hermitian_inner(x, y) -> complex:
    """Sesquilinear inner product <x, y> = sum_i x_i conj(y_i)."""
    xv = as_vector(x)
    yv = as_vector(y)
    if xv.shape != yv.shape:
        raise InvalidInput(f"length mismatch: {xv.shape[0]} vs {yv.shape[0]}")
    return complex(np.sum(xv * np.conj(yv)))


def subset_sums(values: np.ndarray) -> np.ndarray:
    """All 2^m partial sums over the leading axis of ``values``.

    Row E of the result is sum(values[w] for each bit w of E), accumulated
    in ascending w so the arithmetic matches a naive ascending enumeration
    bit for bit.
    """
    m = values.shape[0]
    out = np.zeros((1 << m,) + values.shape[1:], dtype=np.complex128)
    masks = np.arange(1 << m)
    for w in range(m):
        out[(masks >> w) & 1 == 1] += values[w]
    return out


def orthonormal_range(m, tol: Optional[Tolerance] = None) -> np.ndarray:
    """Orthonormal basis (columns) of the column space of ``m``."""
    tol = tol or Tolerance()
    a = as_matrix(m)
    if a.size == 0:
        return np.zeros((a.shape[0], 0), dtype=np.complex128)
    u, svals, _ = np.linalg.svd(a, full_matrices=False)
    smax = float(svals[0]) if svals.size else 0.0
    if smax <= 0.0:
        return np.zeros((a.shape[0], 0), dtype=np.complex128)
    r = int(np.sum(svals > tol.eps_rank * smax))
    return u[:, :r]
