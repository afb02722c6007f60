"""JSON payloads emitted by the `analyze` commands.

Every payload carries `"schema": 1`; `analyze schema <command>` prints the
JSON schema pydantic generates for it.
"""
from __future__ import annotations

import json
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from . import words as W
from .automorphisms import Automorphism
from .boundary_rays import DistinctnessReport, FixedPointInventory, Ray
from .index_report import IndexReport, contributions_table
from .nielsen_paths import INPSearchResult, NielsenPath
from .traintrack import RoseTrainTrack

SCHEMA_VERSION = 1
FLOAT_DIGITS = 12


class Payload(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = Field(SCHEMA_VERSION, alias="schema")
    command: str

    def to_json(self) -> str:
        return json.dumps(self.model_dump(mode="json", by_alias=True), indent=2, sort_keys=True) + "\n"


class RayModel(BaseModel):
    name: str
    seed: str
    prefix: str

    @classmethod
    def of(cls, ray: Ray, depth: int) -> "RayModel":
        return cls(name=ray.name, seed=W.format_word(ray.seed), prefix=W.format_word(ray.expand(depth)))


class DistinctnessModel(BaseModel):
    pairs: int
    absolute_pairs: int
    absolute: bool
    max_divergence: Optional[int]

    @classmethod
    def of(cls, report: DistinctnessReport) -> "DistinctnessModel":
        return cls(
            pairs=len(report.divergences),
            absolute_pairs=len(report.first_letter_pairs()),
            absolute=report.absolute,
            max_divergence=report.max_divergence(),
        )


class InventoryPayload(Payload):
    command: str = "fixed-points"
    n: int
    depth: int
    power: int = 1
    attracting: List[RayModel]
    repelling: List[RayModel]
    repelling_basis: List[str]
    total: int
    orbit_counts: Dict[str, int]
    max_divergence: Optional[int] = None
    distinctness: Dict[str, DistinctnessModel] = Field(default_factory=dict)

    @classmethod
    def of(cls, inventory: FixedPointInventory, orbit_counts: Dict[str, int]) -> "InventoryPayload":
        depth = inventory.depth
        reports = [r for r in (inventory.attracting_report, inventory.repelling_report) if r is not None]
        divergences = [r.max_divergence() for r in reports if r.max_divergence() is not None]
        basis = inventory.repelling[0].seed.basis.names if inventory.repelling else ()
        return cls(
            n=inventory.n,
            depth=depth,
            power=inventory.power,
            attracting=[RayModel.of(r, depth) for r in inventory.attracting],
            repelling=[RayModel.of(r, depth) for r in inventory.repelling],
            repelling_basis=list(basis),
            total=inventory.total,
            orbit_counts=orbit_counts,
            max_divergence=max(divergences) if divergences else None,
            distinctness={
                side: DistinctnessModel.of(report)
                for side, report in (("attracting", inventory.attracting_report),
                                     ("repelling", inventory.repelling_report))
                if report is not None
            },
        )


class NielsenPathModel(BaseModel):
    gamma1: str
    gamma2: str
    gamma3: str
    mode: str

    @classmethod
    def of(cls, path: NielsenPath) -> "NielsenPathModel":
        return cls(
            gamma1=W.format_word(path.gamma1),
            gamma2=W.format_word(path.gamma2),
            gamma3=W.format_word(path.gamma3),
            mode=path.mode.value,
        )


class INPResultModel(BaseModel):
    t: int = 1
    mode: str
    max_len: int
    paths: List[NielsenPathModel]
    brute_force_paths: int
    brute_force_len: int
    cross_checked: bool
    cross_check: str
    engines_agree: bool
    conclusive: bool
    truncated: bool
    not_applicable: bool
    justification: str

    @classmethod
    def of(cls, result: INPSearchResult, t: int = 1) -> "INPResultModel":
        return cls(
            t=t,
            mode=result.mode.value,
            max_len=result.max_len,
            paths=[NielsenPathModel.of(p) for p in result.paths],
            brute_force_paths=len(result.brute_force_paths),
            brute_force_len=result.brute_force_len,
            cross_checked=result.cross_checked,
            cross_check=result.cross_check_note(),
            engines_agree=result.engines_agree,
            conclusive=result.conclusive,
            truncated=result.truncated,
            not_applicable=result.not_applicable,
            justification=result.justification(),
        )


class INPPayload(Payload):
    command: str = "inps"
    automorphism: str
    basis: List[str]
    results: List[INPResultModel]
    fixed_subgroup_trivial: Optional[bool]
    verdict: str


class TrainTrackModel(BaseModel):
    gates: List[List[str]]
    illegal_turns: List[List[str]]
    dmap: Dict[str, str]
    dmap_period: int

    @classmethod
    def of(cls, tt: RoseTrainTrack, period: int) -> "TrainTrackModel":
        order = sorted(tt.dmap)
        return cls(
            gates=tt.gate_labels(),
            illegal_turns=[list(pair) for pair in tt.illegal_turn_labels()],
            dmap={tt.label(d): tt.label(tt.dmap[d]) for d in order},
            dmap_period=period,
        )


class IwipPayload(Payload):
    command: str = "iwip"
    automorphism: str
    basis: List[str]
    primitive: bool
    theta_surjective: Optional[bool]
    no_periodic_fixed_factor: Optional[bool]
    verdict: str
    t_max: int
    train_track: Optional[TrainTrackModel] = None
    gate_components_before_closure: Optional[int] = None
    germ_components_before_closure: Optional[int] = None
    germ_components_after_closure: Optional[int] = None
    reasons: List[str]


class ClassModel(BaseModel):
    label: str
    fix_rank: int
    attracting: int
    contribution: str


class IndexPowerModel(BaseModel):
    t: int
    index: str
    index_inverse: str
    index_exact: bool
    geometric: Optional[bool]
    parageometric: Optional[bool]
    inverse_parageometric: Optional[bool]
    reason: str


class IndexPayload(Payload):
    command: str = "index"
    n: int
    label: str
    classes: List[ClassModel]
    total: str
    inverse_classes: List[ClassModel]
    inverse_total: str
    bound: str
    gjll_ok: bool
    four_n_ok: bool
    parageometric: Dict[str, Optional[bool]]
    powers: List[IndexPowerModel]


def class_models(report: IndexReport) -> List[ClassModel]:
    return [ClassModel(**row) for row in contributions_table(report)]


class MatrixPayload(Payload):
    command: str = "matrix"
    automorphism: str
    basis: List[str]
    matrix: List[List[int]]
    primitive: bool
    irreducible: bool
    primitivity_exponent: Optional[int]
    characteristic_polynomial: str
    eigenvalue: Optional[float] = None
    pf_vector: Optional[List[float]] = None
    residual: Optional[float] = None
    max_len_bound: Optional[int] = None
    justification: Optional[str] = None
    orbit_counts: Dict[str, int]


class TheoremPayload(Payload):
    command: str = "theorem"
    n: int
    fixed_points: Optional[int] = None
    attracting: Optional[int] = None
    repelling: Optional[int] = None
    fix_trivial: Optional[bool] = None
    iwip: Optional[str] = None
    index: Optional[str] = None
    index_inverse: Optional[str] = None
    claims: Dict[str, bool]
    certified: bool
    failed: Optional[str] = None


class CustomPayload(Payload):
    command: str = "custom"
    automorphism: str
    basis: List[str]
    images: List[List[str]]
    invertible: Optional[bool] = None
    positive_basis: Optional[str]
    train_track: Optional[TrainTrackModel] = None
    matrix: Optional[List[List[int]]] = None
    primitive: Optional[bool] = None
    eigenvalue: Optional[float] = None
    inps: List[INPResultModel] = []
    iwip: str
    index: str
    unknown: List[str]


def rounded(value: float) -> float:
    return round(float(value), FLOAT_DIGITS)


def automorphism_label(f: Automorphism) -> str:
    return f.name or "custom"