"""`analyze inps`: straight and twisted Nielsen path searches on alpha_n and its powers."""
from __future__ import annotations

import argparse

from .. import nielsen_paths as NP
from .. import traintrack as T
from ..config import RunConfig
from ..reports import INPPayload, INPResultModel, automorphism_label
from . import EXIT_CERTIFIED, EXIT_FAILED, EXIT_INCONCLUSIVE, CommandResult, family_member

PAYLOAD = INPPayload


def add_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--inverse", action="store_true", default=None,
                        help="search the positive representative of alpha_n^-1")


def render(payload: INPPayload) -> str:
    lines = [f"{payload.automorphism} over {' '.join(payload.basis)}: {payload.verdict}"]
    for result in payload.results:
        status = "conclusive" if result.conclusive else "inconclusive"
        if result.not_applicable:
            status = "not applicable"
        lines.append(
            f"  t={result.t} {result.mode:<8} {len(result.paths)} INP(s), {status}, "
            f"brute force {result.brute_force_paths} up to {result.brute_force_len}, max_len {result.max_len}"
        )
        for path in result.paths:
            lines.append(f"    gamma1={path.gamma1}  gamma2={path.gamma2}  gamma3={path.gamma3}")
        lines.append(f"    {result.justification}")
        lines.append(f"    {result.cross_check}")
    if payload.fixed_subgroup_trivial is not None:
        lines.append(f"Fix trivial: {payload.fixed_subgroup_trivial}")
    return "\n".join(lines) + "\n"


def run(config: RunConfig) -> CommandResult:
    f, _ = family_member(config)
    tt = T.build(f)
    reports = NP.find_periodic_inps(tt, config.t_max, config.max_len, config.image_budget, config.jobs)
    results = [INPResultModel.of(r, report.t) for report in reports for r in (report.straight, report.twisted)]

    base = reports[0].straight
    if base.paths:
        fix_trivial = False
    elif base.conclusive_empty:
        fix_trivial = True
    else:
        fix_trivial = None

    if any(r.paths for report in reports for r in (report.straight, report.twisted)):
        verdict, code = "INPs found", EXIT_FAILED
    elif all(report.conclusive_empty for report in reports):
        verdict, code = "no INPs (conclusive)", EXIT_CERTIFIED
    else:
        verdict, code = "inconclusive", EXIT_INCONCLUSIVE

    payload = INPPayload(
        automorphism=automorphism_label(f),
        basis=list(f.basis.names),
        results=results,
        fixed_subgroup_trivial=fix_trivial,
        verdict=verdict,
    )
    return CommandResult(code, payload, render(payload))
