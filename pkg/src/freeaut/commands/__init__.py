"""Subcommands of `analyze`.

Each module exposes the interface `freeaut.main` expects:
- PAYLOAD: the pydantic model of its JSON output
- add_arguments(parser): command specific flags (may be a no-op)
- run(config) -> CommandResult
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from .. import automorphisms as A
from ..automorphisms import Automorphism, BasisChange
from ..config import RunConfig
from ..reports import Payload

EXIT_CERTIFIED = 0
EXIT_FAILED = 1
EXIT_INCONCLUSIVE = 2
EXIT_INPUT_ERROR = 3


@dataclass(frozen=True)
class CommandResult:
    exit_code: int
    payload: Payload
    text: str
    message: str = ""


def family_member(config: RunConfig) -> Tuple[Automorphism, BasisChange]:
    """alpha_n, or with --inverse the positive form of alpha_n^-1 over {x0, a2, ..., an}."""
    alpha = A.make_alpha(config.n)
    if not config.inverse:
        return alpha, BasisChange.flipping(alpha.basis, ())
    inverse, _ = A.make_alpha_inverse(config.n)
    change = A.inverse_family_basis(config.n)
    return change.conjugate(inverse), change
