"""`analyze iwip`: the irreducibility certificate for alpha_n (or its inverse)."""
from __future__ import annotations

import argparse
from pathlib import Path

from .. import blowup as B
from .. import traintrack as T
from ..config import RunConfig
from ..reports import IwipPayload, TrainTrackModel, automorphism_label
from . import EXIT_CERTIFIED, EXIT_FAILED, EXIT_INCONCLUSIVE, CommandResult, family_member

PAYLOAD = IwipPayload


def add_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--inverse", action="store_true", default=None,
                        help="certify the positive representative of alpha_n^-1")
    parser.add_argument("--dot", type=Path, help="write the blow-up graph (DOT) to this file")


def render(payload: IwipPayload) -> str:
    lines = [
        f"{payload.automorphism} over {' '.join(payload.basis)}: {payload.verdict}",
        f"  primitive transition matrix: {payload.primitive}",
        f"  theta_* surjective: {payload.theta_surjective}",
        f"  no periodic fixed class (t <= {payload.t_max}): {payload.no_periodic_fixed_factor}",
    ]
    if payload.train_track is not None:
        gates = "  ".join("{" + ",".join(g) + "}" for g in payload.train_track.gates)
        lines.append(f"  gates: {gates}")
        turns = ", ".join("(" + ",".join(t) + ")" for t in payload.train_track.illegal_turns)
        lines.append(f"  illegal turns: {turns}")
    if payload.germ_components_before_closure is not None:
        lines.append(
            f"  components: germs {payload.germ_components_before_closure} -> "
            f"{payload.germ_components_after_closure} after closure, "
            f"gates {payload.gate_components_before_closure} before closure"
        )
    lines.extend(f"  - {reason}" for reason in payload.reasons)
    return "\n".join(lines) + "\n"


def run(config: RunConfig) -> CommandResult:
    f, _ = family_member(config)
    certificate = B.iwip_certificate(f, config.t_max, config.max_len, config.image_budget, config.jobs)
    graph = certificate.graph
    extra = {}
    if graph is not None:
        tt = graph.tt
        extra = dict(
            train_track=TrainTrackModel.of(tt, T.dmap_period(tt.dmap)),
            gate_components_before_closure=graph.gate_components_before_closure(),
            germ_components_before_closure=graph.germ_components(closed=False),
            germ_components_after_closure=graph.germ_components(closed=True),
        )
        if config.dot is not None:
            config.dot.write_text(B.to_dot(graph))
    payload = IwipPayload(
        automorphism=automorphism_label(f),
        basis=list(f.basis.names),
        primitive=certificate.primitive,
        theta_surjective=certificate.theta_surjective,
        no_periodic_fixed_factor=certificate.no_periodic_fixed_factor,
        verdict=certificate.verdict.value,
        t_max=certificate.t_max,
        reasons=list(certificate.reasons),
        **extra,
    )
    if certificate.verdict is B.Verdict.IWIP:
        code = EXIT_CERTIFIED
    elif certificate.verdict is B.Verdict.REDUCIBLE:
        code = EXIT_FAILED
    else:
        code = EXIT_INCONCLUSIVE
    return CommandResult(code, payload, render(payload))
