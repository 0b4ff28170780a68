"""Closed-form distance spectra of double joins.

The engine works on a symmetric 4x4-block matrix

    [ A    M    sJ   kJ ]
    [ M^T  B    kJ   sJ ]
    [ sJ   kJ   C    lJ ]
    [ kJ   sJ   lJ   D  ]

whose diagonal blocks have constant row sums and where A, B and M share
singular/eigen directions, with the all-ones vectors as first directions.
Its spectrum splits into the non-Perron eigenvalues of C and D, the
unmatched eigenvalues of A, one 2x2 problem per matched direction, and the
four eigenvalues of the block quotient matrix.

The double joins of the four covered kind combinations have distance
matrices of exactly this shape with (s, k, l) = (1, 2, 3); the ``align_*``
functions translate a construction into the per-direction data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .distance import TEMPLATES, distance_spectrum, validate_template
from .errors import AlignmentError, PreconditionError, TemplateMismatch
from .graph import Graph, checks
from .numlin import (
    DEFAULT_TOL,
    Provenance,
    Quartic,
    Spectrum,
    eigen_sym,
    multiset_compare,
    round_sig,
)
from .transforms import BlockedGraph, H1Kind, H2Kind

CLAUSE_G1 = "clause1:G1"
CLAUSE_G2 = "clause1:G2"
CLAUSE_UNMATCHED = "clause2"
CLAUSE_PAIR_PLUS = "clause3+"
CLAUSE_PAIR_MINUS = "clause3-"
CLAUSE_QUOTIENT = "clause4"


@dataclass(frozen=True)
class AlignedSpectralData:
    """Per-direction spectral data of the block matrix.

    ``a``, ``b`` and ``sigma`` are aligned index by index: entry ``i`` of each
    belongs to one shared direction.  Index 0 is the all-ones direction, so
    ``a[0]``, ``b[0]``, ``c_spec[0]`` and ``d_spec[0]`` are the row sums.
    """

    m: int
    n: int
    p: int
    q: int
    s: float
    k: float
    l: float
    t: float
    a: tuple[float, ...]
    b: tuple[float, ...]
    sigma: tuple[float, ...]
    c_spec: tuple[float, ...]
    d_spec: tuple[float, ...]

    def __post_init__(self):
        for name, size in (("a", self.m), ("b", self.n), ("sigma", self.n),
                           ("c_spec", self.p), ("d_spec", self.q)):
            values = tuple(float(x) for x in getattr(self, name))
            if len(values) != size:
                raise AlignmentError(f"{name} has {len(values)} entries, expected {size}")
            object.__setattr__(self, name, values)

    @property
    def sizes(self) -> tuple[int, int, int, int]:
        return self.m, self.n, self.p, self.q

    def validate(self) -> None:
        if self.m < self.n:
            raise AlignmentError(f"need m >= n, got m={self.m}, n={self.n}")
        if self.sigma[0] == 0:
            raise AlignmentError("leading singular value must be non-zero")
        expected = self.t * math.sqrt(self.m / self.n)
        if abs(self.sigma[0] - expected) > 1e-9 * max(1.0, abs(expected)):
            raise AlignmentError(
                f"leading singular value {self.sigma[0]!r} inconsistent with "
                f"row sum t={self.t!r} (expected {expected!r})"
            )


def quotient_matrix(data: AlignedSpectralData) -> np.ndarray:
    m, n, p, q = data.sizes
    s, k, l, t = data.s, data.k, data.l, data.t
    a, b, c, d = data.a[0], data.b[0], data.c_spec[0], data.d_spec[0]
    return np.array([
        [a, t, s * p, k * q],
        [t * m / n, b, k * p, s * q],
        [s * m, k * n, c, l * q],
        [k * m, s * n, l * p, d],
    ])


def symmetrized_quotient(data: AlignedSpectralData) -> np.ndarray:
    """``S Q S^-1`` with ``S = diag(sqrt(m), sqrt(n), sqrt(p), sqrt(q))``."""
    root = np.sqrt(np.array(data.sizes, dtype=float))
    sym = quotient_matrix(data) * root[:, None] / root[None, :]
    return 0.5 * (sym + sym.T)


def quotient_eigenvalues(data: AlignedSpectralData) -> np.ndarray:
    return eigen_sym(symmetrized_quotient(data)).as_array()


def f_coefficients(data: AlignedSpectralData) -> Quartic:
    """Coefficients of the quartic whose roots are the quotient eigenvalues.

    Assembled term by term from the block constants rather than by
    expanding a determinant.
    """
    m, n, p, q = data.sizes
    s, k, l, t = data.s, data.k, data.l, data.t
    a, b, c, d = data.a[0], data.b[0], data.c_spec[0], data.d_spec[0]
    m1sq = data.sigma[0] ** 2
    c3 = -(a + b + c + d)
    c2 = ((a + b) * (c + d) + a * b + c * d - k**2 * (m * q + n * p)
          - s**2 * (m * p + n * q) - l**2 * p * q - m1sq)
    c1 = (-c * d * (a + b) - a * b * (c + d)
          + s**2 * (p * m * (b + d) + n * q * (a + c))
          + k**2 * (n * p * (a + d) + q * m * (b + c))
          + l**2 * p * q * (a + b)
          - 2 * k * s * (l * p * q * (m + n) + m * t * (p + q))
          + m1sq * (c + d))
    c0 = (n * p * q * m * (s**4 + k**4)
          - s**2 * (n * a * c * q + b * d * p * m + 2 * l * p * q * m * t)
          - k**2 * (n * a * d * p + 2 * l * p * q * m * t + b * c * q * m)
          - 2 * n * k**2 * p * q * m * s**2
          - l**2 * (a * b * p * q - m1sq * p * q)
          + 2 * m * k * s * t * (c * q + d * p)
          + 2 * k * p * q * s * l * (n * a + m * b)
          - c * d * m1sq
          + a * b * c * d)
    return Quartic((1.0, c3, c2, c1, c0))


def pair_values(a_i: float, b_i: float, sigma_i: float) -> tuple[float, float]:
    """Eigenvalues of ``[[a_i, sigma_i], [sigma_i, b_i]]``, larger first."""
    mid = 0.5 * (a_i + b_i)
    half = 0.5 * math.sqrt((a_i - b_i) ** 2 + 4.0 * sigma_i**2)
    return mid + half, mid - half


def spectrum_of_P(data: AlignedSpectralData) -> Spectrum:
    """Full labelled spectrum of the block matrix described by ``data``."""
    data.validate()
    values: list[float] = []
    labels: list[str] = []

    def add(vals, label):
        vals = list(vals)
        values.extend(vals)
        labels.extend([label] * len(vals))

    add(data.c_spec[1:], CLAUSE_G1)
    add(data.d_spec[1:], CLAUSE_G2)
    add(data.a[data.n:], CLAUSE_UNMATCHED)
    for i in range(1, data.n):
        plus, minus = pair_values(data.a[i], data.b[i], data.sigma[i])
        add([plus], CLAUSE_PAIR_PLUS)
        add([minus], CLAUSE_PAIR_MINUS)
    add(quotient_eigenvalues(data), CLAUSE_QUOTIENT)
    return Spectrum.build(values, Provenance.CLOSED_FORM, labels)


def partitioned_matrix(A, B, C, D, M, s, k, l) -> np.ndarray:
    """Assemble the full block matrix explicitly (used as an oracle input)."""
    A, B, C, D, M = (np.asarray(x, dtype=float) for x in (A, B, C, D, M))
    m, n, p, q = A.shape[0], B.shape[0], C.shape[0], D.shape[0]
    return np.block([
        [A, M, np.full((m, p), s), np.full((m, q), k)],
        [M.T, B, np.full((n, p), k), np.full((n, q), s)],
        [np.full((p, m), s), np.full((p, n), k), C, np.full((p, q), l)],
        [np.full((q, m), k), np.full((q, n), s), np.full((q, p), l), D],
    ])


# --- specialisation to double joins -------------------------------------

_T33_H1 = (H1Kind.EMPTY, H1Kind.LINE, H1Kind.COMPLEMENT_LINE)


def theorem_for(h1_kind, h2_kind) -> Optional[str]:
    """Which closed form covers this kind combination, if any."""
    h1, h2 = H1Kind(h1_kind), H2Kind(h2_kind)
    if h1 is H1Kind.EMPTY and h2 is H2Kind.EMPTY:
        return "T32"
    if h1 is H1Kind.COMPLETE:
        return "T34"
    if h2 is H2Kind.COMPLEMENT and h1 in _T33_H1:
        return "T33"
    if h2 is H2Kind.COMPLETE and h1 in _T33_H1:
        return "T35"
    return None


def _regular_degree(g: Graph, role: str) -> int:
    r = checks(g).regularity
    if r is None:
        raise PreconditionError(f"{role} must be regular")
    return r


def _base_checks(g: Graph, triangle_free: bool = False) -> int:
    info = checks(g)
    if not info.is_connected:
        raise PreconditionError("G must be connected")
    if info.regularity is None:
        raise PreconditionError("G must be regular")
    if info.regularity < 2:
        raise PreconditionError(f"G must have degree >= 2 (so that m >= n), got {info.regularity}")
    if triangle_free and not info.is_triangle_free:
        raise PreconditionError("G must be triangle free")
    return info.regularity


def _adjacency_eigenvalues(g: Graph) -> np.ndarray:
    return eigen_sym(g.adjacency).as_array()


def _side_spectrum(g: Graph, role: str) -> list[float]:
    """Eigenvalues of 2(J - I) - A(g): row sum first, then -(lambda_i + 2)."""
    r = _regular_degree(g, role)
    lam = _adjacency_eigenvalues(g)
    # lam[0] == r is the all-ones direction
    return [2.0 * g.n - r - 2.0] + [-(x + 2.0) for x in lam[1:]]


@dataclass(frozen=True)
class Pairing:
    """Eigenvalue of G and of the varying H-graph along each direction.

    ``lam_g`` and ``lam_h`` hold directions 2..n (descending eigenvalues of
    G); ``lam_h_unmatched`` holds the m - n directions with no G partner.
    """

    r: int
    lam_g: tuple[float, ...]
    lam_h: tuple[float, ...]
    lam_h_unmatched: tuple[float, ...]
    t_h: int


def pairing(g: Graph, theorem: str, h_kind=None) -> Pairing:
    r = _base_checks(g, triangle_free=(theorem == "T33"))
    n, m = g.n, g.m
    lam = _adjacency_eigenvalues(g)[1:]
    extra = m - n
    if theorem == "T32":
        return Pairing(r, tuple(lam), (0.0,) * (n - 1), (0.0,) * extra, 0)
    if theorem in ("T33", "T35"):
        kind = H1Kind(h_kind)
        if kind is H1Kind.EMPTY:
            return Pairing(r, tuple(lam), (0.0,) * (n - 1), (0.0,) * extra, 0)
        # line graph: lambda + r - 2 on matched directions, -2 on the rest
        line = tuple(x + r - 2.0 for x in lam)
        if kind is H1Kind.LINE:
            return Pairing(r, tuple(lam), line, (-2.0,) * extra, 2 * r - 2)
        if kind is H1Kind.COMPLEMENT_LINE:
            return Pairing(r, tuple(lam), tuple(-1.0 - x for x in line), (1.0,) * extra,
                           m - 1 - (2 * r - 2))
        raise PreconditionError(f"H1 kind {kind.value!r} not covered by {theorem}")
    if theorem == "T34":
        kind = H2Kind(h_kind)
        table = {
            H2Kind.EMPTY: (tuple(0.0 for _ in lam), 0),
            H2Kind.COMPLETE: (tuple(-1.0 for _ in lam), n - 1),
            H2Kind.SAME: (tuple(lam), r),
            H2Kind.COMPLEMENT: (tuple(-1.0 - x for x in lam), n - 1 - r),
        }
        lam_h, t_h = table[kind]
        return Pairing(r, tuple(lam), lam_h, (), t_h)
    raise ValueError(f"unknown theorem {theorem!r}")


def _aligned(g, g1, g2, t, a, b, sigma_rest) -> AlignedSpectralData:
    m, n = g.m, g.n
    return AlignedSpectralData(
        m=m, n=n, p=g1.n, q=g2.n, s=1, k=2, l=3, t=t,
        a=a, b=b,
        sigma=[t * math.sqrt(m / n)] + list(sigma_rest),
        c_spec=_side_spectrum(g1, "G1"),
        d_spec=_side_spectrum(g2, "G2"),
    )


def _incidence_singular(pr: Pairing) -> list[float]:
    # M(G)^T M(G) = A(G) + rI.  Bipartite G has lambda_n = -r exactly; the
    # square root would blow its ~1e-15 rounding residue up to ~1e-8.
    out = []
    for x in pr.lam_g:
        sq = x + pr.r
        out.append(0.0 if sq <= 1e-12 * max(1.0, pr.r) else math.sqrt(sq))
    return out


def align_T32(g: Graph, g1: Graph, g2: Graph) -> AlignedSpectralData:
    pr = pairing(g, "T32")
    m, n = g.m, g.n
    a = [2.0 * m - 2] + [-2.0] * (m - 1)
    b = [2.0 * n - 2] + [-2.0] * (n - 1)
    # off-diagonal block 3J - 2M(G): twice the incidence singular values
    sigma = [2.0 * x for x in _incidence_singular(pr)]
    return _aligned(g, g1, g2, 3.0 * n - 4, a, b, sigma)


def align_T33(g: Graph, h1_kind, g1: Graph, g2: Graph) -> AlignedSpectralData:
    pr = pairing(g, "T33", h1_kind)
    m, n = g.m, g.n
    a = ([2.0 * m - 2 - pr.t_h] + [-(2.0 + x) for x in pr.lam_h]
         + [-(2.0 + x) for x in pr.lam_h_unmatched])
    b = [n + pr.r - 1.0] + [x - 1.0 for x in pr.lam_g]
    return _aligned(g, g1, g2, 2.0 * n - 2, a, b, _incidence_singular(pr))


def align_T34(g: Graph, h2_kind, g1: Graph, g2: Graph) -> AlignedSpectralData:
    pr = pairing(g, "T34", h2_kind)
    m, n = g.m, g.n
    a = [m - 1.0] + [-1.0] * (m - 1)
    b = [2.0 * n - 2 - pr.t_h] + [-(x + 2.0) for x in pr.lam_h]
    return _aligned(g, g1, g2, 2.0 * n - 2, a, b, _incidence_singular(pr))


def align_T35(g: Graph, h1_kind, g1: Graph, g2: Graph) -> AlignedSpectralData:
    pr = pairing(g, "T35", h1_kind)
    m, n = g.m, g.n
    a = ([2.0 * m - 2 - pr.t_h] + [-(2.0 + x) for x in pr.lam_h]
         + [-(2.0 + x) for x in pr.lam_h_unmatched])
    b = [n - 1.0] + [-1.0] * (n - 1)
    return _aligned(g, g1, g2, 2.0 * n - 2, a, b, _incidence_singular(pr))


def _varying_kind(bg: BlockedGraph, theorem: str):
    if theorem == "T34":
        return bg.core.h2_kind
    if theorem in ("T33", "T35"):
        return bg.core.h1_kind
    return None


def align(bg: BlockedGraph) -> tuple[str, AlignedSpectralData]:
    theorem = _theorem_or_raise(bg)
    g, g1, g2 = bg.core.base, bg.g1, bg.g2
    if theorem == "T32":
        return theorem, align_T32(g, g1, g2)
    if theorem == "T33":
        return theorem, align_T33(g, bg.core.h1_kind, g1, g2)
    if theorem == "T34":
        return theorem, align_T34(g, bg.core.h2_kind, g1, g2)
    return theorem, align_T35(g, bg.core.h1_kind, g1, g2)


def _theorem_or_raise(bg: BlockedGraph) -> str:
    if bg.core is None:
        raise TemplateMismatch("graph was built without kind information; no closed form")
    theorem = theorem_for(bg.core.h1_kind, bg.core.h2_kind)
    if theorem is None:
        raise TemplateMismatch(
            f"no closed form covers h1={bg.core.h1_kind.value}, h2={bg.core.h2_kind.value}"
        )
    return theorem


def likely_cause(bg: BlockedGraph, theorem: str) -> str:
    """Best guess at which precondition explains a template mismatch."""
    info = checks(bg.core.base)
    if not info.is_connected:
        return "G is disconnected"
    if theorem == "T33" and not info.is_triangle_free:
        return "G has triangles"
    if info.regularity is None:
        return "G is not regular"
    return "unknown"


def closed_form_spectrum(bg: BlockedGraph, check_template: bool = True) -> Spectrum:
    """Closed-form distance spectrum of a double join.

    Raises TemplateMismatch when no closed form covers the construction or
    when its BFS distances disagree with the block template.
    """
    theorem = _theorem_or_raise(bg)
    if check_template:
        chk = validate_template(bg, theorem)
        if not chk.ok:
            i, j, expected, actual = chk.first_violation
            raise TemplateMismatch(
                f"{theorem} template fails at ({i}, {j}): template {expected}, "
                f"BFS {actual}; likely cause: {likely_cause(bg, theorem)}"
            )
    _, data = align(bg)
    return spectrum_of_P(data)


def numeric_spectrum(bg: BlockedGraph | Graph) -> Spectrum:
    g = bg.graph if isinstance(bg, BlockedGraph) else bg
    return distance_spectrum(g)


# --- the per-theorem formulas in their specialised, simplified form ------

def specialized_pair_values(theorem: str, lam_g: float, lam_h: float, r: int) -> tuple[float, float]:
    """Matched-direction eigenvalues written directly in graph eigenvalues.

    These are the simplified one-line formulas for each construction;
    :func:`verify_instance` checks them against the numeric spectrum.
    """
    if theorem == "T32":
        root = math.sqrt(max(lam_g + r, 0.0))
        return -2.0 + root, -2.0 - root
    if theorem == "T33":
        l, k = TEMPLATES["T33"].l, TEMPLATES["T33"].k
        rad = (lam_g + lam_h) ** 2 + 2 * lam_h + 6 * lam_g + 4 * r + 1
        root = math.sqrt(max(rad, 0.0))
        return 0.5 * (l - k - 3 + root), 0.5 * (l - k - 3 - root)
    rad = (lam_h + 1) ** 2 + 4 * lam_g + 4 * r
    root = math.sqrt(max(rad, 0.0))
    return 0.5 * (-3 - lam_h + root), 0.5 * (-3 - lam_h - root)


def specialized_quotient(bg: BlockedGraph) -> np.ndarray:
    """Quotient matrix written in graph parameters for the covering theorem."""
    theorem = _theorem_or_raise(bg)
    m, n, p, q = bg.sizes
    r = _regular_degree(bg.core.base, "G")
    r1 = _regular_degree(bg.g1, "G1")
    r2 = _regular_degree(bg.g2, "G2")
    t_h = pairing(bg.core.base, theorem, _varying_kind(bg, theorem)).t_h
    lower = [
        [m, 2 * n, 2 * (p - 1) - r1, 3 * q],
        [2 * m, n, 3 * p, 2 * (q - 1) - r2],
    ]
    top = {
        "T32": [[2 * (m - 1), 3 * n - 4, p, 2 * q], [3 * m - 2 * r, 2 * (n - 1), 2 * p, q]],
        "T33": [[2 * (m - 1) - t_h, 2 * (n - 1), p, 2 * q], [2 * m - r, n + r - 1, 2 * p, q]],
        "T34": [[m - 1, 2 * (n - 1), p, 2 * q], [2 * m - r, 2 * (n - 1) - t_h, 2 * p, q]],
        "T35": [[2 * (m - 1) - t_h, 2 * (n - 1), p, 2 * q], [2 * m - r, n - 1, 2 * p, q]],
    }[theorem]
    return np.array(top + lower, dtype=float)


@dataclass(frozen=True)
class VerifyReport:
    theorem: Optional[str]
    template_ok: bool
    template: dict
    closed_form: Optional[Spectrum]
    numeric: Spectrum
    max_gap: Optional[float]
    tol: float
    engine_midpoints: tuple[float, ...] = ()
    specialized_midpoints: tuple[float, ...] = ()
    engine_matches_oracle: Optional[bool] = None
    specialized_matches_oracle: Optional[bool] = None
    specialized_gap: Optional[float] = None
    quotient_matches_specialized: Optional[bool] = None

    @property
    def ok(self) -> bool:
        return self.template_ok and self.max_gap is not None and self.max_gap <= self.tol

    @property
    def clause3_verdict(self) -> Optional[str]:
        if self.engine_matches_oracle is None:
            return None
        return {
            (True, True): "both",
            (True, False): "engine",
            (False, True): "specialized",
            (False, False): "neither",
        }[(self.engine_matches_oracle, bool(self.specialized_matches_oracle))]

    def to_dict(self) -> dict:
        def rounded(xs):
            return [round_sig(x) for x in xs]

        return {
            "theorem": self.theorem,
            "template": self.template,
            "closed_form": self.closed_form.to_dict() if self.closed_form else None,
            "numeric": self.numeric.to_dict(),
            "max_gap": None if self.max_gap is None else float(f"{self.max_gap:.3e}"),
            "tol": self.tol,
            "ok": self.ok,
            "clause3": {
                "engine_midpoints": rounded(self.engine_midpoints),
                "specialized_midpoints": rounded(self.specialized_midpoints),
                "engine_matches_oracle": self.engine_matches_oracle,
                "specialized_matches_oracle": self.specialized_matches_oracle,
                "specialized_gap": (None if self.specialized_gap is None
                                    else float(f"{self.specialized_gap:.3e}")),
                "matches_oracle": self.clause3_verdict,
            },
            "quotient_matches_specialized": self.quotient_matches_specialized,
        }


def verify_instance(bg: BlockedGraph, tol: float = DEFAULT_TOL) -> VerifyReport:
    """Template check plus closed-form versus numeric comparison.

    Also evaluates the specialised matched-direction formula: its values are
    swapped into the closed-form spectrum and the result is compared with
    the numeric spectrum, so the report says which form the numbers support.
    """
    theorem = _theorem_or_raise(bg)
    numeric = numeric_spectrum(bg)
    chk = validate_template(bg, theorem)
    if not chk.ok:
        return VerifyReport(theorem, False, chk.to_dict(), None, numeric, None, tol)
    _, data = align(bg)
    closed = spectrum_of_P(data)
    cmp_engine = multiset_compare(closed, numeric, tol)

    pr = pairing(bg.core.base, theorem, _varying_kind(bg, theorem))
    engine_mid = tuple(0.5 * (data.a[i] + data.b[i]) for i in range(1, data.n))
    spec_vals: list[float] = []
    spec_mid = []
    for lam_g, lam_h in zip(pr.lam_g, pr.lam_h):
        plus, minus = specialized_pair_values(theorem, lam_g, lam_h, pr.r)
        spec_vals += [plus, minus]
        spec_mid.append(0.5 * (plus + minus))
    others = [v for v, lab in zip(closed.values, closed.labels) if not lab.startswith("clause3")]
    cmp_spec = multiset_compare(others + spec_vals, numeric, tol)
    q_gap = float(np.max(np.abs(quotient_matrix(data) - specialized_quotient(bg))))

    return VerifyReport(
        theorem=theorem,
        template_ok=True,
        template=chk.to_dict(),
        closed_form=closed,
        numeric=numeric,
        max_gap=cmp_engine.max_gap,
        tol=tol,
        engine_midpoints=engine_mid,
        specialized_midpoints=tuple(spec_mid),
        engine_matches_oracle=cmp_engine.equal,
        specialized_matches_oracle=cmp_spec.equal,
        specialized_gap=cmp_spec.max_gap,
        quotient_matches_specialized=q_gap <= 1e-9,
    )
