"""`analyze theorem`: every claim about alpha_n in one run.

alpha_n is iwip, has trivial fixed subgroup and exactly 4n-1 boundary fixed
points (2n-1 attracting, 2n repelling); ind(alpha_n) = n - 3/2 and
ind(alpha_n^-1) = n - 1. Exit code 0 only when every claim is certified.
"""
from __future__ import annotations

import argparse
from fractions import Fraction

from .. import automorphisms as A
from .. import blowup as B
from .. import boundary_rays as BR
from .. import index_report as IR
from ..config import RunConfig
from ..reports import TheoremPayload
from . import EXIT_CERTIFIED, EXIT_FAILED, EXIT_INCONCLUSIVE, CommandResult

PAYLOAD = TheoremPayload


def add_arguments(parser: argparse.ArgumentParser) -> None:
    pass


def render(payload: TheoremPayload) -> str:
    if payload.fixed_points is None:
        return f"{payload.failed}\n"
    fix = "Fix trivial" if payload.fix_trivial else "Fix not certified trivial"
    iwip = "certified" if payload.iwip == B.Verdict.IWIP.value else payload.iwip
    line = (
        f"4n-1 = {payload.fixed_points} fixed points: {payload.attracting} attracting, "
        f"{payload.repelling} repelling; {fix}; iwip: {iwip}; "
        f"ind = {payload.index}; ind(inverse) = {payload.index_inverse}"
    )
    if payload.failed:
        line += f"\nfailed: {payload.failed}"
    return line + "\n"


def _degenerate(config: RunConfig) -> CommandResult:
    relation = BR.n2_degenerate_relation()
    if relation.holds:
        message = "n=2 degenerate: Y_0 relation detected"
    else:
        message = "n=2 degenerate: Y_0 relation not reproduced"
    payload = TheoremPayload(n=config.n, claims={"n2_relation": relation.holds},
                             certified=False, failed=message)
    return CommandResult(EXIT_FAILED, payload, render(payload), message)


def run(config: RunConfig) -> CommandResult:
    n = config.n
    if n == 2:
        return _degenerate(config)

    inventory = BR.build_inventory(n, config.depth)
    alpha = A.make_alpha(n)
    certificate = B.iwip_certificate(alpha, config.t_max, config.max_len, config.image_budget, config.jobs)
    fix_trivial = certificate.no_periodic_fixed_factor
    forward = IR.index_of(inventory, IR.Side.ATTRACTING, complete=fix_trivial is True)
    backward = IR.index_of(inventory, IR.Side.REPELLING)
    bounds = (IR.check_gjll(forward).ok and IR.check_gjll(backward).ok
              and IR.check_4n_bound(inventory).ok)

    claims = {
        "fixed_points": inventory.certified and inventory.counts == (2 * n - 1, 2 * n),
        "fix_trivial": fix_trivial is True,
        "iwip": certificate.certified,
        "index": forward.exact and forward.total == n - Fraction(3, 2),
        "index_inverse": backward.exact and backward.total == n - 1,
        "bounds": bounds,
    }
    failed = next((name for name, ok in claims.items() if not ok), None)
    if failed is None:
        code = EXIT_CERTIFIED
    elif fix_trivial is None or certificate.verdict is B.Verdict.INCONCLUSIVE:
        code = EXIT_INCONCLUSIVE
    else:
        code = EXIT_FAILED

    payload = TheoremPayload(
        n=n,
        fixed_points=inventory.total,
        attracting=len(inventory.attracting),
        repelling=len(inventory.repelling),
        fix_trivial=fix_trivial,
        iwip=certificate.verdict.value,
        index=IR.format_fraction(forward.total),
        index_inverse=IR.format_fraction(backward.total),
        claims=claims,
        certified=failed is None,
        failed=failed,
    )
    message = f"certificate failed: {failed}" if failed else ""
    return CommandResult(code, payload, render(payload), message)
