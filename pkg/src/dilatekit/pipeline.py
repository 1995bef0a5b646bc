"""Verification pipeline: materialize the objects described by a scenario,
run the requested construction with its verifier suite, and aggregate the
outcome into a machine-readable report.

Mathematical failures never raise out of :func:`run_pipeline`; they become
named failed checks (CLI exit code 1). Schema and parameter problems raise
(CLI exit code 2).
"""

from __future__ import annotations

import dataclasses
import time
from dataclasses import dataclass
from typing import List, Optional

from . import banach, hilbert
from .algebra import (MeasurableSpace, check_action, check_group,
                      check_multiplier, check_semigroup, left_translation_action,
                      trivial_multiplier)
from .errors import (ActionViolation, AssociativityViolation,
                     ClosureViolation, CocycleViolation, CovarianceViolation,
                     DilationError, EnumerationCapExceeded, IdentityViolation,
                     InvalidInput, InvalidParams, ModulusViolation, NoIdentity,
                     NoInverse, NonHilbertNorm, NonUnitaryRep,
                     NormalizationViolation, NotIdempotent, NotInjective,
                     NotIsometry, NotPositive, MultiplierRelationViolation,
                     ParseError, SchemaError, SemigroupNotSupported,
                     ShapeError, ShapeMismatch, SingularFrameOperator,
                     UnitViolation, WindowCountMismatch, ZeroWindow)
from .framing import (FramingSystem, build_dilated_basis, verify_basis_dilation,
                      verify_framing)
from .imprimitivity import check_rep, check_system
from .linalg import NormedSpace, Tolerance, numeric_rank
from .ovm import Ovm, bessel_bound, framing_ovm
from .report import CheckRecord, Report, check, failure, flag
from .scenario import Scenario, scenario_digest

COMMANDS = ("validate", "dilate-banach", "dilate-hilbert", "dilate-framing", "all")

INPUT_ERRORS = (ParseError, SchemaError, ShapeError, InvalidParams, InvalidInput,
                EnumerationCapExceeded)

# map a raised error to the named check it fails
_ERROR_CHECKS = {
    AssociativityViolation: ("group table valid", "valid.group"),
    NoIdentity: ("group table valid", "valid.group"),
    NoInverse: ("group table valid", "valid.group"),
    NormalizationViolation: ("multiplier valid", "valid.multiplier"),
    ModulusViolation: ("multiplier valid", "valid.multiplier"),
    CocycleViolation: ("multiplier valid", "valid.multiplier"),
    ActionViolation: ("action valid", "valid.action"),
    UnitViolation: ("representation unit", "valid.rep.unit"),
    MultiplierRelationViolation: ("representation product relation",
                                  "valid.rep.relation"),
    NotIsometry: ("representation isometries", "valid.rep.isometry"),
    CovarianceViolation: ("system covariance on atoms",
                          "valid.system.covariance"),
    ShapeMismatch: ("component shapes", "valid.shapes"),
    WindowCountMismatch: ("component shapes", "valid.shapes"),
    ZeroWindow: ("windows nonzero", "valid.framing.windows"),
    SingularFrameOperator: ("frame operator invertible", "valid.framing.frame-op"),
    SemigroupNotSupported: ("group required for dilation",
                            "dilation.applicability"),
    ClosureViolation: ("dilation operators stay in the dilation space",
                       "dilation.closure"),
    IdentityViolation: ("dilation identity suite", "dilation.identities"),
    NotIdempotent: ("rho(Omega) idempotent", "restriction.idempotent"),
    NotInjective: ("dilation system injective", "induced.injective"),
    NotPositive: ("measure positive", "hilbert.applicability"),
    NonUnitaryRep: ("representation unitary on l2", "hilbert.applicability"),
    NonHilbertNorm: ("Euclidean target required", "hilbert.applicability"),
}


@dataclass
class Materialized:
    group: object
    multiplier: object
    space: NormedSpace
    action: object
    rep: object
    system: Optional[object] = None
    framing: Optional[FramingSystem] = None
    records: List[CheckRecord] = dataclasses.field(default_factory=list)


def _materialize(sc: Scenario, tol: Tolerance, cap: int) -> Materialized:
    try:
        group = check_group(sc.group_table)
        group_note = "group"
    except NoInverse:
        group = check_semigroup(sc.group_table)
        group_note = "semigroup with unit (no inverses): dilations unavailable"
    records = [flag("group table valid", "valid.group", True, notes=group_note)]

    if sc.multiplier is not None:
        multiplier = check_multiplier(group, sc.multiplier, tol)
    else:
        multiplier = trivial_multiplier(group)
    records.append(flag("multiplier valid", "valid.multiplier", True,
                        notes="symmetric" if multiplier.symmetric
                        else "not symmetric"))

    space = NormedSpace(sc.space_dim, sc.space_norm)
    m = sc.atom_count()
    if sc.action_table is not None:
        action = check_action(group, MeasurableSpace(m), sc.action_table)
    else:
        action = left_translation_action(group)
    records.append(flag("action valid", "valid.action", True))

    rep, rep_records = check_rep(group, multiplier, space, sc.rep_matrices, tol)
    records.extend(rep_records)

    out = Materialized(group=group, multiplier=multiplier, space=space,
                       action=action, rep=rep, records=records)

    if sc.ovm_atoms is not None:
        measure = Ovm(space=action.space, target=space, atoms=sc.ovm_atoms)
        system, sys_records = check_system(rep, measure, action, tol)
        records.extend(sys_records)
        records.append(flag("measure norm bound", "valid.ovm.bound", True,
                            notes=f"||phi(Omega)|| = {bessel_bound(measure):.6g}"))
        out.system = system
    else:
        fs = FramingSystem(theta=rep, windows=sc.framing_windows,
                           duals=sc.framing_duals)
        records.extend(verify_framing(fs, tol))
        out.framing = fs
    return out


def _framing_system(mat: Materialized, tol: Tolerance):
    """Induced imprimitivity system of a framing payload."""
    fs = mat.framing
    measure = framing_ovm(fs.theta, fs.windows, fs.duals)
    system, recs = check_system(fs.theta, measure, mat.action, tol)
    return system, recs


def _banach_stage(mat: Materialized, tol: Tolerance, cap: int,
                  samples: Optional[int]) -> List[CheckRecord]:
    records = []
    if mat.system is not None:
        system = mat.system
    else:
        system, recs = _framing_system(mat, tol)
        records.extend(recs)
    ds = banach.build_minimal_dilation(system, tol, cap)
    expected = sum(numeric_rank(system.ovm.atoms[w], tol)
                   for w in range(system.ovm.space.atoms))
    records.append(flag("dim of the dilation space equals the atom-rank sum",
                        "dilation(dim)", ds.dim == expected,
                        notes=f"dim = {ds.dim}"))
    records.extend(banach.verify_dilation(ds, system, tol, samples))
    return records


def _hilbert_stage(mat: Materialized, tol: Tolerance) -> List[CheckRecord]:
    if mat.system is None:
        system, _ = _framing_system(mat, tol)
    else:
        system = mat.system
    hd = hilbert.build_hilbert_dilation(system, tol)
    return hilbert.verify_hilbert_dilation(hd, system, tol)


def _prop_chain_stage(mat: Materialized, tol: Tolerance, cap: int,
                      samples: Optional[int]) -> List[CheckRecord]:
    """Induced-norm chain: Hilbert dilation -> restriction -> pulled-back
    dilation norm -> minimality inequality."""
    system = mat.system
    records = []
    hd = hilbert.build_hilbert_dilation(system, tol)
    adapter = hilbert.hilbert_as_injective(hd)
    restricted, sub = banach.restrict_probability(adapter, system, tol)
    worst = max((r.max_residual for r in sub), default=0.0)
    records.append(check("restriction is a probability dilation system",
                         "restriction(probability)", worst, tol.eps_residual,
                         notes=f"{len(sub)} sub-checks"))
    minimal = banach.build_minimal_dilation(system, tol, cap)
    records.append(banach.check_q_range_invariance(minimal, system, tol))
    induced = banach.induced_norm_from_injective(restricted, system, tol,
                                                 minimal=minimal)
    records.extend(induced.checks)
    _, _, min_records = banach.minimality_bound(induced, tol,
                                                samples or tol.sample_count)
    records.extend(min_records)
    return records


def _framing_stage(mat: Materialized, tol: Tolerance, cap: int,
                   samples: Optional[int]) -> List[CheckRecord]:
    if mat.framing is None:
        raise SchemaError("framing", "dilate-framing needs a framing payload")
    records = verify_framing(mat.framing, tol)
    db = build_dilated_basis(mat.framing, tol, cap)
    records.extend(verify_basis_dilation(db, mat.framing, tol, samples))
    return records


def run_pipeline(sc: Scenario, command: str, *, eps: Optional[float] = None,
                 samples: Optional[int] = None,
                 cap: Optional[int] = None) -> Report:
    """Run a pipeline command against a loaded scenario and report.

    ``eps``/``samples``/``cap`` override the scenario tolerance block.
    """
    if command not in COMMANDS:
        raise InvalidParams(f"unknown command {command!r}")
    t0 = time.perf_counter()
    tol = sc.tolerance
    if eps is not None:
        tol = dataclasses.replace(tol, eps_residual=eps)
    if samples is not None:
        tol = dataclasses.replace(tol, sample_count=samples)
    cap = cap if cap is not None else banach.ALPHA_CAP_DEFAULT

    report = Report(digest=scenario_digest(sc), command=command)
    checks: List[CheckRecord] = []
    if sc.notes:
        checks.append(flag("scenario defaults applied", "valid.schema", True,
                           notes="; ".join(sc.notes)))
    try:
        mat = _materialize(sc, tol, cap)
        if command in ("validate", "all"):
            checks.extend(mat.records)
        if command in ("dilate-banach", "all"):
            checks.extend(_banach_stage(mat, tol, cap, samples))
        if command == "dilate-hilbert":
            checks.extend(_hilbert_stage(mat, tol))
        if command == "all" and mat.system is not None:
            if (mat.system.ovm_class.positive
                    and mat.space.norm.kind == "l2"
                    and mat.group.is_group):
                checks.extend(hilbert.verify_hilbert_dilation(
                    hilbert.build_hilbert_dilation(mat.system, tol),
                    mat.system, tol))
                checks.extend(_prop_chain_stage(mat, tol, cap, samples))
        if command in ("dilate-framing",) or (command == "all"
                                              and mat.framing is not None):
            checks.extend(_framing_stage(mat, tol, cap, samples))
    except INPUT_ERRORS:
        raise
    except DilationError as exc:
        name, code = _ERROR_CHECKS.get(type(exc), ("pipeline", "pipeline.error"))
        checks.append(failure(name, code, notes=str(exc)))

    report.checks = checks
    report.elapsed_seconds = time.perf_counter() - t0
    return report
