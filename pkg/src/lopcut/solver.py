"""The cutting-plane loop: solve, analyze the fractional vertex, cut,
re-solve; honest terminal statuses instead of assumed termination.

Statuses:
  Optimal         the LP vertex went integral; value equals the incumbent.
  CutsExhausted   no new verified cut separates the current vertex.
  IterationLimit  the configured iteration budget ran out.
  ReductionStuck  a denominator >= 3 vertex had no reducing neighbor.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations as _permutations
from typing import Optional, Sequence

from .instance import LopInstance, Permutation, permutation_value
from .oracle import (EXHAUSTIVE_CAP, ScaleError, brute_force_opt,
                     validate_inequality)
from .facet_engine import (CutBundle, NoHyperplaneError, NotSeparatedError,
                           ReductionStuckError, TripleExpression,
                           facet_cuts_for_vertex, hyperplanes_through,
                           inequality_to_json, reduce_to_half_integral,
                           _orient_hyperplane)
from .relaxation import (ConstraintSystem, LinearInequality, add_cut,
                         build_bn, embed_permutation, evaluate,
                         objective_from_instance)
from .simplex import BasicSolution, lp_solve
from .vertex_analysis import profile_from_point


@dataclass(frozen=True)
class SolverConfig:
    max_iterations: int = 50
    oracle_verification: Optional[bool] = None  # None: on iff n <= 8
    reduction_enabled: bool = True
    seed: int = 0

    def __post_init__(self) -> None:
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")

    def verification_on(self, n: int) -> bool:
        if self.oracle_verification is None:
            return n <= EXHAUSTIVE_CAP
        return self.oracle_verification


@dataclass(frozen=True)
class IterationRecord:
    lp_value: Fraction
    vertex_kind: str  # "integer" or "fractional"
    denominators: tuple[int, ...]
    cuts_added: int
    provenance: tuple[str, ...]


@dataclass(frozen=True)
class SolveReport:
    status: str
    best_bound: Fraction
    incumbent: Optional[tuple[Permutation, int]]
    iterations: tuple[IterationRecord, ...]
    cut_pool_final: tuple[LinearInequality, ...]


def decode_integer_vertex(x: Sequence[Fraction], n: int) -> Permutation:
    """The unique ordering whose characteristic vector is x.

    A feasible 0/1 point is a transitive tournament, so sorting by
    descending out-degree recovers the order; the result is re-embedded
    and compared as a guard against intransitive input.
    """
    profile = profile_from_point(x, n)
    if profile.fractional_pairs:
        raise ValueError("point is not integral")
    out_deg = {v: 0 for v in range(1, n + 1)}
    for (a, _) in profile.arc_graph.arcs:
        out_deg[a] += 1
    order = tuple(sorted(range(1, n + 1), key=lambda v: -out_deg[v]))
    if embed_permutation(order, n) != tuple(Fraction(v) for v in x):
        raise RuntimeError("integral point is not a transitive tournament")
    return order


def tight_rows_for_auxiliary(sys: ConstraintSystem, x: Sequence[Fraction]
                             ) -> tuple[list[TripleExpression],
                                        list[tuple[LinearInequality, Fraction, Fraction]]]:
    """Tight triangle rows (as value-1 triples) and tight pool cuts at x.

    A triangle row at its lower bound is the same equality as the flipped
    triple at value 1, so both orientations arrive in value-1 form.
    """
    triples: list[TripleExpression] = []
    for idx, (i, j, k) in enumerate(sys.triangle_triples):
        val = evaluate(sys.rows[idx], x)
        if val == 1:
            triples.append(TripleExpression(i, j, k))
        elif val == 0:
            triples.append(TripleExpression(j, i, k))
    cuts: list[tuple[LinearInequality, Fraction, Fraction]] = []
    for cut in sys.cut_pool:
        if cut.upper is None:
            continue
        if evaluate(cut, x) == cut.upper:
            lower = cut.lower
            if lower is None:
                lower = sum((min(Fraction(0), c) for c in cut.coeffs),
                            Fraction(0))
            cuts.append((cut, lower, cut.upper))
    return triples, cuts


def auxiliary_objective(n: int, tight_triples: Sequence[TripleExpression],
                        tight_cuts: Sequence[tuple[LinearInequality, Fraction, Fraction]]
                        ) -> tuple[tuple[Fraction, ...], Fraction]:
    """Coefficients and constant of the auxiliary functional: the sum of
    tight triple expressions plus the normalized slack ratio of each
    tight cut.  Each term is at most 1 on the cut system, so the whole
    objective is bounded by the number of listed rows."""
    from .relaxation import VarIndex

    columns = VarIndex(n)
    coeffs = [Fraction(0)] * columns.dim
    constant = Fraction(0)
    for t in tight_triples:
        tc, const = t.coefficients(n)
        for c, v in enumerate(tc):
            coeffs[c] += v
        constant += const
    for cut, f1, f2 in tight_cuts:
        span = f2 - f1
        if span <= 0:
            raise ValueError("tight cut has empty bound range")
        for c, v in enumerate(cut.coeffs):
            coeffs[c] += Fraction(v) / span
        constant += -f1 / span
    return tuple(coeffs), constant


def auxiliary_problem(sys: ConstraintSystem,
                      tight_triples: Sequence[TripleExpression],
                      tight_cuts: Sequence[tuple[LinearInequality, Fraction, Fraction]]
                      ) -> tuple[BasicSolution, Fraction]:
    """Maximize the auxiliary functional over the relaxation plus the
    listed cut rows; returns the LP vertex and the objective value
    (constant included), which never exceeds the number of listed rows."""
    if not tight_triples and not tight_cuts:
        raise ValueError("auxiliary problem needs at least one tight row")
    base = build_bn(sys.n)
    for cut, f1, f2 in tight_cuts:
        bounded = LinearInequality(coeffs=cut.coeffs, lower=f1, upper=f2,
                                   origin=cut.origin)
        base = add_cut(base, bounded)
    coeffs, constant = auxiliary_objective(sys.n, tight_triples, tight_cuts)
    sol = lp_solve(base, coeffs, "max")
    return sol, sol.objective + constant


def _auxiliary_cuts(sys: ConstraintSystem, x: Sequence[Fraction],
                    notes: list[str]) -> list[LinearInequality]:
    """The fallback separation route: orderings attaining the auxiliary
    optimum are fed to the hyperplane reconstruction; any resulting valid
    cut that separates x is usable."""
    n = sys.n
    if n > EXHAUSTIVE_CAP:
        notes.append("auxiliary enumeration beyond scale cap")
        return []
    triples, cuts = tight_rows_for_auxiliary(sys, x)
    if not triples and not cuts:
        notes.append("no tight rows for the auxiliary problem")
        return []
    _, value = auxiliary_problem(sys, triples, cuts)
    coeffs, constant = auxiliary_objective(n, triples, cuts)
    points = []
    for p in _permutations(range(1, n + 1)):
        v = embed_permutation(p, n)
        total = sum((c * pv for c, pv in zip(coeffs, v)), constant)
        if total == value:
            points.append(v)
    if not points:
        notes.append("auxiliary optimum attained by no ordering")
        return []
    try:
        hyps = hyperplanes_through(points, sys.dim)
    except NoHyperplaneError as exc:
        notes.append(f"auxiliary hyperplane reconstruction failed: {exc}")
        return []
    out = []
    for eq in hyps:
        oriented = _orient_hyperplane(eq, n)
        if oriented is None:
            continue
        out.append(LinearInequality(coeffs=oriented.coeffs, lower=None,
                                    upper=oriented.upper, origin="aux"))
    return out


def solve(inst: LopInstance, cfg: SolverConfig = SolverConfig()) -> SolveReport:
    n = inst.n
    sysn = build_bn(n)
    objective, constant = objective_from_instance(inst)
    verify = cfg.verification_on(n)
    safety_perm: Optional[Permutation] = None
    if verify and n <= EXHAUSTIVE_CAP:
        safety_perm = brute_force_opt(inst).best_permutation
    records: list[IterationRecord] = []
    status = "IterationLimit"
    incumbent: Optional[tuple[Permutation, int]] = None
    best_bound: Optional[Fraction] = None

    for _ in range(cfg.max_iterations):
        sol = lp_solve(sysn, objective, "max")
        lp_value = sol.objective + constant
        if best_bound is not None and lp_value > best_bound:
            raise RuntimeError("LP bound increased after adding cuts")
        best_bound = lp_value
        if safety_perm is not None:
            sp = embed_permutation(safety_perm, n)
            for cut in sysn.cut_pool:
                if not cut.satisfied_by(sp):
                    raise RuntimeError(
                        "cut safety violation: pool cut excludes the "
                        "oracle-optimal ordering")
        profile = profile_from_point(sol.x, n)
        if profile.is_integral():
            order = decode_integer_vertex(sol.x, n)
            value = permutation_value(inst, order)
            incumbent = (order, value)
            status = "Optimal"
            records.append(IterationRecord(
                lp_value=lp_value, vertex_kind="integer", denominators=(),
                cuts_added=0, provenance=()))
            break
        denominators = tuple(sorted(profile.denominators))
        vertex_to_cut = sol.x
        was_reduced = False
        if profile.max_denominator() >= 3 and cfg.reduction_enabled:
            try:
                vertex_to_cut = reduce_to_half_integral(sysn, sol.x)
                was_reduced = True
            except ReductionStuckError:
                status = "ReductionStuck"
                records.append(IterationRecord(
                    lp_value=lp_value, vertex_kind="fractional",
                    denominators=denominators, cuts_added=0, provenance=()))
                break
        elif profile.max_denominator() >= 3:
            status = "CutsExhausted"
            records.append(IterationRecord(
                lp_value=lp_value, vertex_kind="fractional",
                denominators=denominators, cuts_added=0, provenance=()))
            break
        notes: list[str] = []
        new_cuts: list[LinearInequality] = []
        provenances: list[str] = []
        try:
            bundle = facet_cuts_for_vertex(sysn, vertex_to_cut,
                                           reduced=was_reduced)
            new_cuts = list(bundle.cuts)
            provenances = [bundle.provenance] * len(bundle.cuts)
        except NotSeparatedError as exc:
            notes.extend(exc.notes)
            for cut in _auxiliary_cuts(sysn, vertex_to_cut, notes):
                report = validate_inequality(cut, n)
                if not report.valid:
                    continue
                if cut.upper is not None and evaluate(cut, vertex_to_cut) > cut.upper:
                    new_cuts.append(cut)
                    provenances.append("affine_hull")
        added = 0
        added_provenance: list[str] = []
        for cut, prov in zip(new_cuts, provenances):
            lower = cut.lower
            if lower is None:
                rep = validate_inequality(cut, n)
                lower = rep.min_lhs if rep.mode == "exhaustive" else None
                if lower is None:
                    lower = sum((min(Fraction(0), Fraction(c))
                                 for c in cut.coeffs), Fraction(0))
            bounded = LinearInequality(coeffs=cut.coeffs, lower=lower,
                                       upper=cut.upper, origin=cut.origin)
            grown = add_cut(sysn, bounded)
            if len(grown.cut_pool) > len(sysn.cut_pool):
                added += 1
                added_provenance.append(prov)
            sysn = grown
        records.append(IterationRecord(
            lp_value=lp_value, vertex_kind="fractional",
            denominators=denominators, cuts_added=added,
            provenance=tuple(added_provenance)))
        if added == 0:
            status = "CutsExhausted"
            break
    assert best_bound is not None
    return SolveReport(status=status, best_bound=best_bound,
                       incumbent=incumbent, iterations=tuple(records),
                       cut_pool_final=sysn.cut_pool)


def report_to_json(report: SolveReport) -> dict:
    return {
        "status": report.status,
        "best_bound": {"num": report.best_bound.numerator,
                       "den": report.best_bound.denominator},
        "incumbent": None if report.incumbent is None else {
            "order": list(report.incumbent[0]),
            "value": report.incumbent[1],
        },
        "iterations": [
            {
                "lp_value": {"num": r.lp_value.numerator,
                             "den": r.lp_value.denominator},
                "vertex": r.vertex_kind,
                "denominators": list(r.denominators),
                "cuts_added": r.cuts_added,
                "provenance": list(r.provenance),
            }
            for r in report.iterations
        ],
        "cuts": [inequality_to_json(c) for c in report.cut_pool_final],
    }


def report_to_json_text(report: SolveReport) -> str:
    return json.dumps(report_to_json(report), sort_keys=True, indent=2) + "\n"
