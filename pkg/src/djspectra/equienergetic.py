"""Families of distance-equienergetic double joins.

A family fixes the base graph G, the kind combination and one of the two
joined graphs, and lets the other range over all disjoint unions of cycles
on ``n_target`` vertices.  Members differ only in the spectrum of the
varying side, and cycles keep every adjacency eigenvalue at or above -2,
so the shifted eigenvalues ``lambda_i + 2`` entering the energy are
non-negative and, past the Perron value, sum to ``2 n_target - 4`` for
every member.
"""

from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from .distance import diameter, distance_energy, validate_template
from .errors import FamilySizeError, PreconditionError, SizeError, TemplateMismatch
from .graph import Graph, checks, component_sizes, disjoint_union, make_cycle
from .numlin import eigen_sym, round_sig
from .theory import CLAUSE_G1, CLAUSE_G2, closed_form_spectrum, theorem_for
from .transforms import BlockedGraph, H1Kind, H2Kind, double_join, merged_subdivision

DEFAULT_MAX_N = 30
ENERGY_TOL = 1e-6
MECHANISM_TOL = 1e-9

CASE_THEOREM = {"i": "T32", "ii": "T33", "iii": "T34", "iv": "T35"}


def max_n() -> int:
    return int(os.environ.get("SPECTRA_MAX_N", DEFAULT_MAX_N))


def partitions_ge3(n: int) -> list[tuple[int, ...]]:
    """Partitions of ``n`` into parts >= 3, parts non-increasing.

    Listed in descending lexicographic order, e.g. 9 gives
    (9), (6, 3), (5, 4), (3, 3, 3).
    """
    if n < 3:
        raise SizeError(f"need n >= 3, got {n}")
    out: list[tuple[int, ...]] = []

    def extend(prefix: list[int], remaining: int, cap: int) -> None:
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for part in range(min(cap, remaining), 2, -1):
            # a remainder of 1 or 2 can never be completed
            if 0 < remaining - part < 3:
                continue
            extend(prefix + [part], remaining - part, part)

    extend([], n, n)
    return out


def cycles_union(parts: Sequence[int]) -> Graph:
    return disjoint_union([make_cycle(k) for k in parts])


def cycle_family(n: int) -> list[Graph]:
    return [cycles_union(parts) for parts in partitions_ge3(n)]


def case_kinds(case: str, h_kind=None) -> tuple[H1Kind, H2Kind]:
    """Kind combination used by each family case."""
    try:
        return _case_kinds(case, h_kind)
    except ValueError as exc:
        raise PreconditionError(str(exc)) from None


def _case_kinds(case, h_kind):
    if case == "i":
        return H1Kind.EMPTY, H2Kind.EMPTY
    if case == "ii":
        return H1Kind(h_kind or H1Kind.EMPTY), H2Kind.COMPLEMENT
    if case == "iii":
        return H1Kind.COMPLETE, H2Kind(h_kind or H2Kind.EMPTY)
    if case == "iv":
        return H1Kind(h_kind or H1Kind.EMPTY), H2Kind.COMPLETE
    raise ValueError(f"unknown family case {case!r}")


def build_family(
    case: str,
    g: Graph,
    h_kind=None,
    vary: str = "g1",
    fixed_other: Optional[Graph] = None,
    n_target: int = 7,
) -> list[BlockedGraph]:
    """One double join per cycle union on ``n_target`` vertices.

    ``vary`` picks the side that ranges over the cycle unions ("g1" or
    "g2"); ``fixed_other`` is used on the other side.
    """
    if vary not in ("g1", "g2"):
        raise ValueError(f"vary must be 'g1' or 'g2', got {vary!r}")
    if fixed_other is None:
        raise PreconditionError("a fixed graph for the non-varying side is required")
    if n_target > max_n():
        raise SizeError(f"n_target={n_target} exceeds the size cap {max_n()} (SPECTRA_MAX_N)")
    h1, h2 = case_kinds(case, h_kind)
    theorem = theorem_for(h1, h2)
    if theorem != CASE_THEOREM[case]:
        raise PreconditionError(f"kind {h_kind!r} is not allowed in case {case}")
    info = checks(g)
    if not info.is_connected or info.regularity is None or info.regularity < 2:
        raise PreconditionError("G must be connected and r-regular with r >= 2")
    if theorem == "T33" and not info.is_triangle_free:
        raise PreconditionError("case ii needs a triangle-free G")
    if checks(fixed_other).regularity is None:
        raise PreconditionError("the fixed side must be a regular graph")

    core = merged_subdivision(g, h1, h2)
    members = []
    for parts in partitions_ge3(n_target):
        cyc = cycles_union(parts)
        bg = double_join(core, cyc, fixed_other) if vary == "g1" else double_join(core, fixed_other, cyc)
        chk = validate_template(bg, theorem)
        if not chk.ok:
            raise TemplateMismatch(f"member {parts} fails the {theorem} template at {chk.first_violation}")
        members.append(bg)
    return members


@dataclass(frozen=True)
class FamilyReport:
    theorem_case: Optional[str]
    vary: Optional[str]
    fixed: dict
    members: list[tuple[tuple[int, ...], float]]
    common_energy: float
    max_deviation: float
    all_diameter3: bool
    tol: float
    mechanism_sums: list[float] = field(default_factory=list)
    mechanism_ok: bool = True
    min_shifted_eigenvalue: Optional[float] = None
    shared_clauses_equal: Optional[bool] = None

    @property
    def equienergetic(self) -> bool:
        return self.max_deviation <= self.tol

    def to_dict(self) -> dict:
        return {
            "theorem_case": self.theorem_case,
            "vary": self.vary,
            "fixed": self.fixed,
            "members": [
                {"partition": list(parts), "energy": round_sig(e)} for parts, e in self.members
            ],
            "common_energy": round_sig(self.common_energy),
            "max_deviation": float(f"{self.max_deviation:.3e}"),
            "tol": self.tol,
            "equienergetic": self.equienergetic,
            "all_diameter3": self.all_diameter3,
            "mechanism_sums": [round_sig(x) for x in self.mechanism_sums],
            "mechanism_ok": self.mechanism_ok,
            "min_shifted_eigenvalue": (None if self.min_shifted_eigenvalue is None
                                       else round_sig(self.min_shifted_eigenvalue)),
            "shared_clauses_equal": self.shared_clauses_equal,
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["partition", "energy", "deviation"])
        for parts, e in self.members:
            writer.writerow(["+".join(map(str, parts)), f"{e:.12g}", f"{abs(e - self.common_energy):.3e}"])
        return buf.getvalue()


def _varying_side(graphs: Sequence[BlockedGraph]) -> Optional[str]:
    same_g1 = all(bg.g1 == graphs[0].g1 for bg in graphs)
    same_g2 = all(bg.g2 == graphs[0].g2 for bg in graphs)
    if same_g1 and not same_g2:
        return "g2"
    if same_g2 and not same_g1:
        return "g1"
    return None


def verify_family(graphs: Sequence[BlockedGraph], tol: float = ENERGY_TOL) -> FamilyReport:
    """Numeric distance energies of every member and their spread.

    Besides the energies, checks that the shifted eigenvalue sums of the
    varying side agree across members and that the closed-form eigenvalues
    outside the varying side's clause coincide for all members.
    """
    graphs = list(graphs)
    if len(graphs) < 2:
        raise FamilySizeError("a family needs at least two members")
    orders = {bg.graph.n for bg in graphs}
    if len(orders) != 1:
        raise FamilySizeError(f"family members differ in order: {sorted(orders)}")

    energies = [distance_energy(bg.graph) for bg in graphs]
    max_dev = max((abs(x - y) for x, y in combinations(energies, 2)), default=0.0)
    all_d3 = all(diameter(bg.graph) == 3 for bg in graphs)

    vary = _varying_side(graphs)
    side = [bg.g1 if vary != "g2" else bg.g2 for bg in graphs]
    partitions = []
    sums, min_shift = [], np.inf
    for h in side:
        sizes = component_sizes(h)
        partitions.append(sizes if checks(h).regularity == 2 else ())
        lam = eigen_sym(h.adjacency).as_array()
        shifted = lam[1:] + 2.0
        sums.append(float(np.sum(shifted)))
        min_shift = min(min_shift, float(np.min(lam + 2.0)))
    mech_ok = max(sums) - min(sums) <= MECHANISM_TOL

    first = graphs[0]
    theorem = None
    if first.core is not None:
        theorem = theorem_for(first.core.h1_kind, first.core.h2_kind)
    case = {v: k for k, v in CASE_THEOREM.items()}.get(theorem)

    shared = None
    if theorem is not None and vary is not None:
        varying_label = CLAUSE_G1 if vary == "g1" else CLAUSE_G2
        shared_sets = []
        for bg in graphs:
            spec = closed_form_spectrum(bg)
            shared_sets.append(np.array(
                [v for v, lab in zip(spec.values, spec.labels) if lab != varying_label]
            ))
        shared = all(
            s.shape == shared_sets[0].shape and np.max(np.abs(s - shared_sets[0])) <= 1e-9
            for s in shared_sets
        )

    fixed = {}
    if first.core is not None:
        fixed = {
            "g": first.core.base.to_dict(),
            "h1": first.core.h1_kind.value,
            "h2": first.core.h2_kind.value,
        }
    if vary is not None:
        other = "g2" if vary == "g1" else "g1"
        fixed[other] = getattr(first, other).to_dict()

    return FamilyReport(
        theorem_case=case,
        vary=vary,
        fixed=fixed,
        members=list(zip(partitions, energies)),
        common_energy=float(np.mean(energies)),
        max_deviation=float(max_dev),
        all_diameter3=all_d3,
        tol=tol,
        mechanism_sums=sums,
        mechanism_ok=mech_ok,
        min_shifted_eigenvalue=float(min_shift),
        shared_clauses_equal=shared,
    )
