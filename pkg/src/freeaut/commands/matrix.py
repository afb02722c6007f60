"""`analyze matrix`: transition matrix, primitivity, Perron-Frobenius data and the INP length bound."""
from __future__ import annotations

import argparse

from .. import boundary_rays as BR
from .. import traintrack as T
from ..config import RunConfig
from ..errors import NotPrimitiveError
from ..reports import MatrixPayload, automorphism_label, rounded
from . import EXIT_CERTIFIED, EXIT_FAILED, CommandResult, family_member

PAYLOAD = MatrixPayload


def add_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--inverse", action="store_true", default=None,
                        help="use the positive representative of alpha_n^-1")


def render(payload: MatrixPayload) -> str:
    lines = [f"{payload.automorphism} over {' '.join(payload.basis)}"]
    lines.extend("  " + " ".join(f"{x:>4}" for x in row) for row in payload.matrix)
    lines.append(f"  primitive: {payload.primitive} (exponent {payload.primitivity_exponent}), "
                 f"irreducible: {payload.irreducible}")
    lines.append(f"  characteristic polynomial: {payload.characteristic_polynomial}")
    if payload.eigenvalue is not None:
        vector = ", ".join(f"{x:.6f}" for x in payload.pf_vector or [])
        lines.append(f"  lambda = {payload.eigenvalue:.9f}, v = ({vector})")
        lines.append(f"  INP leg bound: {payload.max_len_bound}")
        lines.append(f"    {payload.justification}")
    return "\n".join(lines) + "\n"


def run(config: RunConfig) -> CommandResult:
    f, _ = family_member(config)
    matrix = T.transition_matrix(f)
    exponent = T.primitivity_exponent(matrix)
    poly = T.characteristic_polynomial(matrix)
    fields = dict(
        automorphism=automorphism_label(f),
        basis=list(f.basis.names),
        matrix=matrix.tolist(),
        primitive=exponent is not None,
        irreducible=T.is_irreducible(matrix),
        primitivity_exponent=exponent,
        characteristic_polynomial=T.format_polynomial(poly),
        orbit_counts=BR.orbit_counts(f),
    )
    try:
        pf = T.pf_data(matrix)
    except NotPrimitiveError:
        payload = MatrixPayload(**fields)
        return CommandResult(EXIT_FAILED, payload, render(payload), "transition matrix is not primitive")
    bound = T.cancellation_length_bound(T.build(f), pf)
    payload = MatrixPayload(
        eigenvalue=rounded(pf.eigenvalue),
        pf_vector=[rounded(x) for x in pf.vector],
        residual=rounded(pf.residual),
        max_len_bound=bound.max_len,
        justification=bound.justification,
        **fields,
    )
    return CommandResult(EXIT_CERTIFIED, payload, render(payload))
