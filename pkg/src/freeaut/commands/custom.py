"""`analyze custom --seed-file FILE`: run what is certifiable on a user supplied table.

The file holds one "a1 -> a1 a2" line per generator. A table given with
--inverse-file is checked against it with verify_inverse; without one,
invertibility is reported as unknown. Anything that needs the family's
explicit constructions (ray inventories, index values) is reported as
unknown too.
"""
from __future__ import annotations

import argparse
import logging
from pathlib import Path

from .. import automorphisms as A
from .. import blowup as B
from .. import nielsen_paths as NP
from .. import traintrack as T
from ..config import RunConfig
from ..errors import InputError, NotPrimitiveError
from ..reports import CustomPayload, INPResultModel, TrainTrackModel, rounded
from . import EXIT_CERTIFIED, EXIT_FAILED, EXIT_INCONCLUSIVE, CommandResult

logger = logging.getLogger(__name__)

PAYLOAD = CustomPayload


def add_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--inverse-file", dest="inverse_file",
                        help="table of the inverse, same generators; checked with verify_inverse. "
                             "Without it the table is assumed invertible and reported as unknown")


def render(payload: CustomPayload) -> str:
    lines = [f"{payload.automorphism} over {' '.join(payload.basis)}"]
    for label, image in zip(payload.basis, payload.images):
        lines.append(f"  {label} -> {' '.join(image)}")
    if payload.invertible:
        lines.append("  inverse: verified")
    lines.append(f"  positive basis: {payload.positive_basis or 'none found'}")
    if payload.train_track is not None:
        lines.append("  gates: " + "  ".join("{" + ",".join(g) + "}" for g in payload.train_track.gates))
    if payload.primitive is not None:
        lines.append(f"  primitive: {payload.primitive}, lambda = {payload.eigenvalue}")
    for result in payload.inps:
        lines.append(f"  INPs {result.mode}: {len(result.paths)} "
                     f"({'conclusive' if result.conclusive else 'inconclusive'})")
    lines.append(f"  iwip: {payload.iwip}")
    lines.append(f"  index: {payload.index}")
    if payload.unknown:
        lines.append(f"  unknown: {', '.join(payload.unknown)}")
    return "\n".join(lines) + "\n"


def _read_table(path: Path) -> A.Automorphism:
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    return A.parse_automorphism(text, name=path.stem)


def load(config: RunConfig) -> A.Automorphism:
    """The seed table, carrying the inverse from --inverse-file once it is verified."""
    if config.seed_file is None:
        raise InputError("custom needs --seed-file")
    f = _read_table(config.seed_file)
    if config.inverse_file is None:
        return f
    g = _read_table(config.inverse_file)
    if g.basis != f.basis:
        raise InputError(f"inverse table is over {' '.join(g.basis.names)}, "
                         f"expected {' '.join(f.basis.names)}")
    if not A.verify_inverse(f, g):
        raise InputError(f"{config.inverse_file} does not invert {config.seed_file}")
    logger.info("custom %s: inverse verified", f.name)
    return A.Automorphism(f.basis, f.images, g.images, name=f.name)


def run(config: RunConfig) -> CommandResult:
    f = load(config)
    unknown = ["index (no fixed point inventory)"]
    if f.inverse_witness is None:
        unknown.insert(0, "invertibility (no inverse table supplied)")
    fields = dict(
        automorphism=f.name,
        basis=list(f.basis.names),
        images=A.to_json(f)["images"],
        invertible=True if f.inverse_witness is not None else None,
        index="unknown",
    )

    change = A.positivity_basis(f)
    if change is None:
        unknown[:0] = ["train track", "iwip"]
        payload = CustomPayload(positive_basis=None, iwip="unknown", unknown=unknown, **fields)
        return CommandResult(EXIT_INCONCLUSIVE, payload, render(payload),
                             "no positive representative among sign flips")

    rep = change.conjugate(f)
    tt = T.build(rep)
    matrix = T.transition_matrix(rep)
    primitive = T.is_primitive(matrix)
    eigenvalue = None
    if primitive:
        try:
            eigenvalue = rounded(T.pf_data(matrix).eigenvalue)
        except NotPrimitiveError:
            eigenvalue = None
    searches = NP.search_all(tt, (NP.SearchMode.STRAIGHT, NP.SearchMode.TWISTED), config.max_len)
    certificate = B.iwip_certificate(f, config.t_max, config.max_len, config.image_budget, config.jobs)
    payload = CustomPayload(
        positive_basis=change.describe(),
        train_track=TrainTrackModel.of(tt, T.dmap_period(tt.dmap)),
        matrix=matrix.tolist(),
        primitive=primitive,
        eigenvalue=eigenvalue,
        inps=[INPResultModel.of(r) for r in searches.values()],
        iwip=certificate.verdict.value,
        unknown=unknown,
        **fields,
    )
    if certificate.verdict is B.Verdict.IWIP:
        code = EXIT_CERTIFIED
    elif certificate.verdict is B.Verdict.REDUCIBLE:
        code = EXIT_FAILED
    else:
        code = EXIT_INCONCLUSIVE
    logger.info("custom %s: %s", f.name, certificate.verdict.value)
    return CommandResult(code, payload, render(payload))
