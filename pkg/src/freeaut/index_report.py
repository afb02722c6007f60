"""Index of an outer automorphism from certified fixed point inventories.

Every isogredience class contributes max(rk Fix + #attracting/2 - 1, 0); the
sum is at most n - 1. Arithmetic is exact (`fractions.Fraction`).

For the family alpha_n the inventories exhibit one class per direction:
the 2n-1 attracting rays give ind(alpha_n) = n - 3/2 and the 2n repelling
rays give ind(alpha_n^-1) = n - 1. Other classes could only add to the first
value; they are excluded by a conjunction checked here (single vertex, no
INPs straight or twisted, trivial fixed subgroup), otherwise the value is
labelled a lower bound.
"""
from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from . import automorphisms as A
from . import boundary_rays as BR
from . import nielsen_paths as NP
from . import traintrack as T
from .boundary_rays import FixedPointInventory
from .errors import InputError, UncertifiedInventoryError

logger = logging.getLogger(__name__)


class Side(str, enum.Enum):
    ATTRACTING = "attracting"
    REPELLING = "repelling"


def format_fraction(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class ClassContribution:
    label: str
    fix_rank: int
    attracting_count: int

    def __post_init__(self) -> None:
        if self.fix_rank < 0 or self.attracting_count < 0:
            raise InputError("fix_rank and attracting_count are nonnegative")

    @property
    def contribution(self) -> Fraction:
        return max(Fraction(self.fix_rank) + Fraction(self.attracting_count, 2) - 1, Fraction(0))


@dataclass(frozen=True)
class IndexReport:
    n: int
    classes: Tuple[ClassContribution, ...]
    complete: bool = False

    @property
    def total(self) -> Fraction:
        return sum((c.contribution for c in self.classes), Fraction(0))

    @property
    def bound(self) -> int:
        return self.n - 1

    @property
    def bound_satisfied(self) -> bool:
        return self.total <= self.bound

    @property
    def exact(self) -> bool:
        """Lower bounds that reach n - 1 are exact."""
        return self.complete or self.total == self.bound

    def label(self) -> str:
        return "index" if self.exact else "lower bound on index"


def index_of(
    inventory: FixedPointInventory,
    side: Side = Side.ATTRACTING,
    fix_rank: int = 0,
    label: Optional[str] = None,
    complete: bool = False,
) -> IndexReport:
    """One class: the base class of alpha_n (attracting side) or of its inverse."""
    if not inventory.certified:
        raise UncertifiedInventoryError("inventory attraction and distinctness were not certified")
    side = Side(side)
    rays = inventory.attracting if side is Side.ATTRACTING else inventory.repelling
    if label is None:
        power = f"^{inventory.power}" if inventory.power > 1 else ""
        label = f"[alpha_{inventory.n}{power}]" if side is Side.ATTRACTING else f"[alpha_{inventory.n}^-{inventory.power}]"
    return IndexReport(inventory.n, (ClassContribution(label, fix_rank, len(rays)),), complete)


@dataclass(frozen=True)
class BoundCheck:
    ok: bool
    messages: Tuple[str, ...] = ()


def check_gjll(report: IndexReport) -> BoundCheck:
    messages = []
    if not report.bound_satisfied:
        messages.append(
            f"internal inconsistency: index {format_fraction(report.total)} exceeds n-1 = {report.bound}"
        )
    for c in report.classes:
        if Fraction(c.fix_rank) + Fraction(c.attracting_count, 2) > report.n:
            messages.append(f"internal inconsistency: class {c.label} violates rk + #/2 <= n")
    return BoundCheck(not messages, tuple(messages))


def check_4n_bound(inventory: FixedPointInventory, fix_rank: int = 0) -> BoundCheck:
    n = inventory.n
    messages = []
    if inventory.total > 4 * n:
        messages.append(f"internal inconsistency: {inventory.total} fixed points exceed 4n = {4 * n}")
    for side, rays in (("attracting", inventory.attracting), ("repelling", inventory.repelling)):
        if Fraction(fix_rank) + Fraction(len(rays), 2) > n:
            messages.append(f"internal inconsistency: {len(rays)} {side} rays violate rk + #/2 <= n")
    return BoundCheck(not messages, tuple(messages))


@dataclass(frozen=True)
class Completeness:
    certified: bool
    single_vertex: bool
    no_inps: Optional[bool]
    fix_trivial: Optional[bool]
    reason: str


def completeness(n: int, t: int = 1, max_len: Optional[int] = None,
                 budget: Optional[int] = None) -> Completeness:
    """Why the base class of alpha_n^t is the only class with a contribution."""
    tt = T.build(A.power(A.make_alpha(n), t, budget))
    searches = NP.search_all(tt, (NP.SearchMode.STRAIGHT, NP.SearchMode.TWISTED), max_len)
    no_inps: Optional[bool] = True
    for result in searches.values():
        if result.paths:
            no_inps = False
            break
        if not result.conclusive_empty:
            no_inps = None
    fixed = NP.fixed_subgroup_trivial(tt, max_len)
    fix_trivial = fixed.trivial if fixed.certified else None
    certified = bool(no_inps and fix_trivial)
    reason = (
        "single vertex in the rose; "
        + ("no INPs (straight, twisted)" if no_inps else "INP search not conclusive-empty")
        + "; "
        + ("Fix trivial" if fix_trivial else "Fix not certified trivial")
    )
    return Completeness(certified, True, no_inps, fix_trivial, reason)


@dataclass(frozen=True)
class ParageometricClassification:
    t: int
    index: Fraction
    index_inverse: Fraction
    index_exact: bool
    geometric: Optional[bool]
    parageometric: Optional[bool]
    inverse_parageometric: Optional[bool]
    reason: str


def classify_parageometric(
    n: int,
    t_max: int = 3,
    depth: int = BR.DEFAULT_DEPTH,
    max_len: Optional[int] = None,
    budget: Optional[int] = None,
) -> List[ParageometricClassification]:
    """Per power t: index of alpha_n^t and of its inverse, and the resulting flags.

    A geometric iwip has index n - 1 on both sides, so a certified index
    below n - 1 on one side rules out geometric; the other side then reaching
    n - 1 makes it parageometric.
    """
    results = []
    for t in range(1, t_max + 1):
        inventory = BR.build_inventory(n, depth, power=t)
        done = completeness(n, t, max_len, budget)
        forward = index_of(inventory, Side.ATTRACTING, complete=done.certified)
        backward = index_of(inventory, Side.REPELLING)
        if done.certified:
            geometric: Optional[bool] = False
            parageometric: Optional[bool] = forward.total == n - 1
            inverse_parageometric: Optional[bool] = backward.exact and backward.total == n - 1
            reason = f"index {format_fraction(forward.total)} < n-1 certified complete ({done.reason})"
        else:
            geometric = parageometric = inverse_parageometric = None
            reason = f"completeness not certified: {done.reason}"
        results.append(ParageometricClassification(
            t, forward.total, backward.total, forward.exact, geometric,
            parageometric, inverse_parageometric, reason,
        ))
        logger.info("alpha_%d^%d: ind=%s ind(inverse)=%s parageometric=%s/%s",
                    n, t, forward.total, backward.total, parageometric, inverse_parageometric)
    return results


def contributions_table(report: IndexReport) -> List[Dict[str, object]]:
    return [
        {"label": c.label, "fix_rank": c.fix_rank, "attracting": c.attracting_count,
         "contribution": format_fraction(c.contribution)}
        for c in report.classes
    ]
