"""`analyze fixed-points`: the certified inventory of boundary fixed points of alpha_n."""
from __future__ import annotations

import argparse

from .. import automorphisms as A
from .. import boundary_rays as BR
from ..config import RunConfig
from ..reports import InventoryPayload
from . import EXIT_CERTIFIED, CommandResult

PAYLOAD = InventoryPayload
TEXT_PREFIX = 24


def add_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--power", type=int, help="inventory of alpha_n^power (default 1)")


def render(payload: InventoryPayload) -> str:
    lines = [
        f"alpha_{payload.n}^{payload.power}: {payload.total} fixed points "
        f"({len(payload.attracting)} attracting, {len(payload.repelling)} repelling), "
        f"pairwise distinct at depth {payload.depth}",
        "attracting (basis a1..an):",
    ]
    for ray in payload.attracting:
        lines.append(f"  {ray.name:<4} {_short(ray.prefix)}")
    lines.append(f"repelling (basis {' '.join(payload.repelling_basis)}):")
    for ray in payload.repelling:
        lines.append(f"  {ray.name:<4} {_short(ray.prefix)}")
    for side, report in sorted(payload.distinctness.items()):
        if report.absolute:
            status = "absolute"
        else:
            status = f"certified to depth {payload.depth}"
        lines.append(f"{side}: {report.absolute_pairs}/{report.pairs} pairs differ in the first letter, {status}")
    counts = payload.orbit_counts
    lines.append(f"orbit counts: diagonal={counts['diagonal']} total={counts['total']}")
    return "\n".join(lines) + "\n"


def _short(prefix: str) -> str:
    return " ".join(prefix.split()[:TEXT_PREFIX]) + " ..."


def run(config: RunConfig) -> CommandResult:
    inventory = BR.build_inventory(config.n, config.depth, config.power)
    counts = BR.orbit_counts(A.make_alpha(config.n))
    payload = InventoryPayload.of(inventory, counts)
    return CommandResult(EXIT_CERTIFIED, payload, render(payload))
