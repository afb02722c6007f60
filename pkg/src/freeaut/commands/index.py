"""`analyze index`: index of alpha_n and alpha_n^-1 with the bound checks and parageometric flags."""
from __future__ import annotations

import argparse

from .. import boundary_rays as BR
from .. import index_report as IR
from ..config import RunConfig
from ..reports import IndexPayload, IndexPowerModel, class_models
from . import EXIT_CERTIFIED, EXIT_FAILED, EXIT_INCONCLUSIVE, CommandResult

PAYLOAD = IndexPayload
DEFAULT_POWERS = 3


def add_arguments(parser: argparse.ArgumentParser) -> None:
    pass


def render(payload: IndexPayload) -> str:
    lines = [
        f"alpha_{payload.n}: {payload.label} {payload.total}, inverse {payload.inverse_total} "
        f"(bound n-1 = {payload.bound})",
        f"  GJLL bound: {'ok' if payload.gjll_ok else 'VIOLATED'}; 4n bound: "
        f"{'ok' if payload.four_n_ok else 'VIOLATED'}",
    ]
    for power in payload.powers:
        lines.append(
            f"  t={power.t}: ind={power.index} ind(inverse)={power.index_inverse} "
            f"geometric={power.geometric} parageometric={power.parageometric} "
            f"inverse parageometric={power.inverse_parageometric}"
        )
    return "\n".join(lines) + "\n"


def run(config: RunConfig) -> CommandResult:
    n = config.n
    inventory = BR.build_inventory(n, config.depth)
    powers = IR.classify_parageometric(n, config.t_max or DEFAULT_POWERS, config.depth,
                                       config.max_len, config.image_budget)
    complete = powers[0].index_exact
    forward = IR.index_of(inventory, IR.Side.ATTRACTING, complete=complete)
    backward = IR.index_of(inventory, IR.Side.REPELLING)
    gjll = IR.check_gjll(forward).ok and IR.check_gjll(backward).ok
    four_n = IR.check_4n_bound(inventory).ok

    parageometric = {}
    for p in powers:
        parageometric[str(p.t)] = p.parageometric
        parageometric[f"-{p.t}"] = p.inverse_parageometric
    payload = IndexPayload(
        n=n,
        label=forward.label(),
        classes=class_models(forward),
        total=IR.format_fraction(forward.total),
        inverse_classes=class_models(backward),
        inverse_total=IR.format_fraction(backward.total),
        bound=str(forward.bound),
        gjll_ok=gjll,
        four_n_ok=four_n,
        parageometric=parageometric,
        powers=[
            IndexPowerModel(
                t=p.t,
                index=IR.format_fraction(p.index),
                index_inverse=IR.format_fraction(p.index_inverse),
                index_exact=p.index_exact,
                geometric=p.geometric,
                parageometric=p.parageometric,
                inverse_parageometric=p.inverse_parageometric,
                reason=p.reason,
            )
            for p in powers
        ],
    )
    if not (gjll and four_n):
        code = EXIT_FAILED
    elif all(p.index_exact for p in powers):
        code = EXIT_CERTIFIED
    else:
        code = EXIT_INCONCLUSIVE
    return CommandResult(code, payload, render(payload))
