"""Run configuration shared by every `analyze` command."""
from __future__ import annotations

from pathlib import Path
from typing import Any, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .boundary_rays import DEFAULT_DEPTH
from .errors import InputError

DEFAULT_IMAGE_BUDGET = 2_000_000


class RunConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    n: int = Field(3, ge=2, description="rank of the free group")
    depth: int = Field(DEFAULT_DEPTH, ge=10, description="ray prefix length")
    max_len: Optional[int] = Field(None, ge=1, description="INP leg length cap; default from the cancellation bound")
    t_max: Optional[int] = Field(None, ge=1, description="largest power searched; default lcm of dmap cycles, at least 2")
    format: Literal["text", "json"] = "text"
    seed_file: Optional[Path] = None
    inverse_file: Optional[Path] = Field(None, description="inverse table checked against the seed file")
    jobs: int = Field(1, ge=1)
    image_budget: int = Field(DEFAULT_IMAGE_BUDGET, ge=1)
    power: int = Field(1, ge=1, description="analyze alpha_n^power")
    inverse: bool = Field(False, description="analyze the positive representative of alpha_n^-1")
    dot: Optional[Path] = Field(None, description="write the blow-up graph in DOT format here")


def load_config(**values: Any) -> RunConfig:
    """Build a RunConfig, dropping unset (None) values so defaults apply."""
    cleaned = {k: v for k, v in values.items() if v is not None}
    try:
        return RunConfig(**cleaned)
    except ValidationError as exc:
        problems = "; ".join(
            f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in exc.errors()
        )
        raise InputError(f"invalid configuration: {problems}") from exc
