"""Dense symmetric eigensolver and small numeric utilities.

The eigensolver is a cyclic Jacobi method using round-robin (tournament)
ordering: every round applies ``n // 2`` rotations on disjoint index pairs,
which commute, so a whole round is applied with vectorised row and column
updates.  ``n - 1`` rounds visit every off-diagonal pair once per sweep.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Sequence

import mpmath
import numpy as np

from .errors import ComplexRootError, ConvergenceError, LengthMismatchError

DEFAULT_TOL = 1e-8


class Provenance(str, enum.Enum):
    NUMERIC = "numeric"
    CLOSED_FORM = "closed_form"


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalue multiset, sorted in descending order.

    ``labels`` optionally tags each value with the clause of the closed-form
    result that produced it.
    """

    values: tuple[float, ...]
    provenance: Provenance = Provenance.NUMERIC
    labels: Optional[tuple[str, ...]] = None

    @classmethod
    def build(cls, values, provenance=Provenance.NUMERIC, labels=None) -> "Spectrum":
        values = [float(v) for v in values]
        if labels is None:
            return cls(tuple(sorted(values, reverse=True)), Provenance(provenance))
        if len(labels) != len(values):
            raise LengthMismatchError("one label per eigenvalue required")
        pairs = sorted(zip(values, labels), key=lambda vl: (-vl[0], vl[1]))
        return cls(
            tuple(v for v, _ in pairs),
            Provenance(provenance),
            tuple(str(lab) for _, lab in pairs),
        )

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def as_array(self) -> np.ndarray:
        return np.array(self.values)

    def by_label(self, prefix: str) -> list[float]:
        if self.labels is None:
            return []
        return [v for v, lab in zip(self.values, self.labels) if lab.startswith(prefix)]

    def to_dict(self) -> dict:
        return {
            "values": [round_sig(v) for v in self.values],
            "provenance": self.provenance.value,
            "labels": list(self.labels) if self.labels is not None else None,
        }


def round_sig(x: float, digits: int = 12) -> float:
    """Round to ``digits`` significant digits for byte-stable serialisation."""
    # Jacobi leaves ~1e-15 residue on exact zeros; print those as 0
    if abs(x) < 1e-11:
        return 0.0
    return float(f"{x:.{digits}g}")


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Rounds of disjoint index pairs covering every pair exactly once."""
    size = n + (n % 2)
    players = list(range(size))
    rounds = []
    for _ in range(size - 1):
        ps, qs = [], []
        for k in range(size // 2):
            i, j = players[k], players[size - 1 - k]
            if i < n and j < n:
                ps.append(min(i, j))
                qs.append(max(i, j))
        rounds.append((np.array(ps, dtype=np.intp), np.array(qs, dtype=np.intp)))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def jacobi_eigh(a, tol: float = 1e-12, max_sweeps: int = 100):
    """Eigen-decomposition of a real symmetric matrix by cyclic Jacobi.

    Returns ``(values, vectors)`` with values in descending order and the
    accumulated rotations as columns of ``vectors``, so that
    ``a = vectors @ diag(values) @ vectors.T``.

    Iteration stops once the off-diagonal Frobenius norm falls below
    ``tol`` times the Frobenius norm of ``a``.  Raises ConvergenceError if
    ``max_sweeps`` sweeps are not enough.
    """
    a = np.array(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    if not np.array_equal(a, a.T):
        if np.max(np.abs(a - a.T)) > 1e-12 * max(1.0, np.max(np.abs(a))):
            raise ValueError("matrix must be symmetric")
        a = 0.5 * (a + a.T)
    if tol <= 0:
        raise ValueError("tol must be positive")
    n = a.shape[0]
    v = np.eye(n)
    norm = np.linalg.norm(a)
    if n > 1 and norm > 0:
        rounds = _round_robin(n)
        target = tol * norm
        for _ in range(max_sweeps):
            off = np.sqrt(max(norm**2 - np.sum(np.diag(a) ** 2), 0.0))
            # the cheap estimate above loses accuracy near convergence
            if off < 10 * target:
                off = np.linalg.norm(a - np.diag(np.diag(a)))
            if off <= target:
                break
            for p, q in rounds:
                _rotate(a, v, p, q)
        else:
            off = np.linalg.norm(a - np.diag(np.diag(a)))
            if off > target:
                raise ConvergenceError(
                    f"Jacobi did not converge in {max_sweeps} sweeps (off={off:.3e})"
                )
    values = np.diag(a).copy()
    order = np.argsort(-values, kind="stable")
    return values[order], v[:, order]


def _rotate(a: np.ndarray, v: np.ndarray, p: np.ndarray, q: np.ndarray) -> None:
    apq = a[p, q]
    active = apq != 0.0
    if not np.any(active):
        return
    p, q, apq = p[active], q[active], apq[active]
    # a denormal apq overflows tau to inf, which correctly gives t = 0
    with np.errstate(over="ignore"):
        tau = (a[q, q] - a[p, p]) / (2.0 * apq)
        t = np.where(tau >= 0, 1.0, -1.0) / (np.abs(tau) + np.hypot(1.0, tau))
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c
    cc, ss = c[:, None], s[:, None]
    # rows: a <- J^T a
    rp, rq = a[p, :].copy(), a[q, :].copy()
    a[p, :] = cc * rp - ss * rq
    a[q, :] = ss * rp + cc * rq
    # columns: a <- a J, v <- v J
    cp, cq = a[:, p].copy(), a[:, q].copy()
    a[:, p] = cp * c - cq * s
    a[:, q] = cp * s + cq * c
    a[p, q] = 0.0
    a[q, p] = 0.0
    vp, vq = v[:, p].copy(), v[:, q].copy()
    v[:, p] = vp * c - vq * s
    v[:, q] = vp * s + vq * c


def eigen_sym(a, tol: float = 1e-12, max_sweeps: int = 100) -> Spectrum:
    values, _ = jacobi_eigh(a, tol=tol, max_sweeps=max_sweeps)
    return Spectrum.build(values, Provenance.NUMERIC)


def singular_values(mat) -> np.ndarray:
    """Singular values, descending; ``min(rows, cols)`` of them."""
    mat = np.asarray(mat, dtype=float)
    gram = mat.T @ mat if mat.shape[0] >= mat.shape[1] else mat @ mat.T
    values, _ = jacobi_eigh(gram)
    return np.sqrt(np.clip(values, 0.0, None))


@dataclass(frozen=True)
class Quartic:
    """Monic quartic; ``coeffs`` run from x^4 down to x^0."""

    coeffs: tuple[float, float, float, float, float]

    def __post_init__(self):
        if len(self.coeffs) != 5:
            raise ValueError("a quartic has five coefficients")
        if self.coeffs[0] != 1:
            raise ValueError("quartic must be monic")

    def __call__(self, x):
        return np.polyval(np.asarray(self.coeffs, dtype=float), x)

    @property
    def scale(self) -> float:
        return max(1.0, float(np.linalg.norm(self.coeffs)))


def quartic_roots(f: Quartic) -> np.ndarray:
    """Real roots of a real-rooted quartic, descending.

    Eigenvalues of the companion matrix in 80-digit arithmetic, so that
    clustered and repeated roots do not pick up spurious imaginary parts.
    """
    with mpmath.workdps(80):
        comp = mpmath.zeros(4)
        for j in range(4):
            comp[0, j] = -mpmath.mpf(f.coeffs[j + 1])
        for i in range(1, 4):
            comp[i, i - 1] = 1
        roots = [complex(r) for r in mpmath.eig(comp, left=False, right=False)]
    scale = max(1.0, max(abs(r) for r in roots))
    worst = max(abs(r.imag) for r in roots)
    if worst > 1e-7 * scale:
        raise ComplexRootError(f"quartic has a non-real root (|imag|={worst:.3e})")
    return np.sort(np.array([r.real for r in roots]))[::-1]


def charpoly(a) -> np.ndarray:
    """Characteristic polynomial coefficients by Faddeev-LeVerrier.

    Returns ``[1, c_{n-1}, ..., c_0]`` for ``det(xI - a)``.
    """
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    coeffs = [1.0]
    mk = np.zeros_like(a)
    for k in range(1, n + 1):
        mk = a @ mk + coeffs[-1] * np.eye(n)
        coeffs.append(-np.trace(a @ mk) / k)
    return np.array(coeffs)


@dataclass(frozen=True)
class Comparison:
    equal: bool
    max_gap: float


def multiset_compare(a, b, tol: float = DEFAULT_TOL) -> Comparison:
    x = np.sort(np.asarray(list(a), dtype=float))
    y = np.sort(np.asarray(list(b), dtype=float))
    if x.shape != y.shape:
        raise LengthMismatchError(f"multisets differ in size: {x.size} vs {y.size}")
    gap = float(np.max(np.abs(x - y))) if x.size else 0.0
    return Comparison(gap <= tol, gap)


def energy(values: Sequence[float] | Spectrum) -> float:
    return float(np.sum(np.abs(np.asarray(list(values), dtype=float))))
