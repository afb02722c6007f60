"""Fixed points of the boundary map of alpha_n as lazily expanded rays.

A `Ray` is a seed word plus the automorphism that fixes it. The seed is an
attraction certificate when f(seed) = seed * tail with a nonempty tail; the
infinite word is then the limit of f^k(seed), and expanding it never needs
more than repeated application to the cached prefix.

The module provides:
- expand(ray, depth) / is_attracting_seed(f, seed)
- attracting_family(n): X1..Xn, Y2..Yn, 2n-1 rays fixed by alpha_n
- repelling_family(n): Xk0.., Yk0.., Y, Z, 2n rays fixed by alpha_n^-1,
  built over the basis {x0, a2, ..., an} in which alpha_n^-1 is positive
- pairwise_distinct / build_inventory / attracting_orbit_bound
- n2_degenerate_relation: Y0 = (a2 X0 A2 x0) Y and the fixed commutator at n = 2
"""
from __future__ import annotations

import enum
import itertools
import logging
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence, Tuple

from . import automorphisms as A
from . import words as W
from .automorphisms import Automorphism, BasisChange
from .errors import InconclusiveError, InputError, NotAttractingError
from .words import Word

logger = logging.getLogger(__name__)

DEFAULT_DEPTH = 200


class Ray:
    """A fixed point of the boundary map, expanded on demand.

    The prefix cache only grows; a Ray is not meant to be shared between
    threads without external locking.
    """

    def __init__(self, name: str, auto: Automorphism, seed: Word) -> None:
        if seed.is_identity():
            raise InputError(f"ray {name}: the seed must be nonempty")
        if seed.basis != auto.basis:
            raise InputError(f"ray {name}: seed and automorphism use different bases")
        self.name = name
        self.auto = auto
        self.seed = seed
        self._prefix = seed

    def __repr__(self) -> str:
        return f"Ray({self.name}, seed={W.format_word(self.seed)}, cached={len(self._prefix)})"

    @property
    def cached_prefix(self) -> Word:
        return self._prefix

    def expand(self, depth: int) -> Word:
        return expand(self, depth)

    def with_auto(self, auto: Automorphism, name: Optional[str] = None) -> "Ray":
        return Ray(name or self.name, auto, self.seed)

    def rendered(self, change: BasisChange, depth: int) -> Word:
        """The prefix written back over the basis the change started from."""
        return change.revert(self.expand(depth))


def is_attracting_seed(f: Automorphism, seed: Word) -> bool:
    if seed.is_identity():
        raise InputError("attraction is only defined for nonempty seeds")
    image = A.apply(f, seed)
    return len(image) > len(seed) and image.startswith(seed)


def expand(ray: Ray, depth: int) -> Word:
    """The first `depth` letters of the fixed infinite word."""
    prefix = ray._prefix
    while len(prefix) < depth:
        image = A.apply(ray.auto, prefix)
        if len(image) <= len(prefix) or not image.startswith(prefix):
            raise NotAttractingError(
                f"ray {ray.name}: f(prefix) does not strictly extend the prefix "
                f"at length {len(prefix)}"
            )
        prefix = image
        ray._prefix = prefix
    return prefix.prefix(depth)


def _certify(rays: Sequence[Ray]) -> None:
    for ray in rays:
        if not is_attracting_seed(ray.auto, ray.seed):
            raise NotAttractingError(f"seed of {ray.name} is not attracting for {ray.auto.name}")


def _rank_check(n: int) -> None:
    if n < 3:
        raise InputError(
            f"n={n} degenerate: the families need n >= 3 "
            "(at n = 2 the rays Y0 and Y differ by a fixed word)"
        )


def attracting_family(n: int, t: int = 1) -> List[Ray]:
    """X_i seeded by alpha(a_i), Y_i seeded by alpha(a_i)^-1; fixed by alpha_n^t."""
    _rank_check(n)
    alpha = A.make_alpha(n)
    auto = A.power(alpha, t) if t > 1 else alpha
    rays = [Ray(f"X{i + 1}", auto, alpha.images[i]) for i in range(n)]
    rays += [Ray(f"Y{i + 1}", auto, W.invert(alpha.images[i])) for i in range(1, n)]
    _certify(rays)
    return rays


@dataclass(frozen=True)
class RepellingSetup:
    """alpha_n^-1 written positively over {x0, a2, ..., an}, with its scaffold."""

    n: int
    change: BasisChange
    inverse: Automorphism
    scaffold: A.InverseScaffold

    @classmethod
    def build(cls, n: int) -> "RepellingSetup":
        if n < 2:
            raise InputError(f"the family needs n >= 2, got {n}")
        inverse, scaffold = A.make_alpha_inverse(n)
        change = A.inverse_family_basis(n)
        return cls(n, change, change.conjugate(inverse), scaffold.in_basis(change))

    def seeds(self) -> Dict[str, Word]:
        n = self.n
        basis = self.change.new
        sc = self.scaffold
        x0_inv = W.invert(sc.x_words[0])
        seeds: Dict[str, Word] = {}
        for k in range(n - 1):
            gen = basis.generator(n - k - 1)
            seeds[f"Xk{k}"] = W.concat(gen, sc.x_words[k])
        for k in range(n - 1):
            gen = basis.generator(n - k - 1)
            seeds[f"Yk{k}"] = W.product(basis, (gen, x0_inv, W.invert(sc.y_words[k])))
        seeds["Y"] = W.concat(x0_inv, W.invert(sc.y_word))
        seeds["Z"] = W.concat(x0_inv, sc.x_words[n - 1])
        return seeds

    def z_identity(self, auto: Optional[Automorphism] = None) -> bool:
        """f(x0^-1 x(n-1)) = x0^-1 x(n-1) f(z)."""
        f = auto or self.inverse
        sc = self.scaffold
        head = W.concat(W.invert(sc.x_words[0]), sc.x_words[self.n - 1])
        return A.apply(f, head) == W.concat(head, A.apply(f, sc.z_word))


def repelling_family(n: int, t: int = 1) -> List[Ray]:
    """The 2n attracting fixed points of alpha_n^-t, over {x0, a2, ..., an}."""
    _rank_check(n)
    setup = RepellingSetup.build(n)
    auto = A.power(setup.inverse, t) if t > 1 else setup.inverse
    if not setup.z_identity():
        raise NotAttractingError(f"Z identity fails for n={n}")
    order = [f"Xk{k}" for k in range(n - 1)] + [f"Yk{k}" for k in range(n - 1)] + ["Y", "Z"]
    seeds = setup.seeds()
    rays = [Ray(name, auto, seeds[name]) for name in order]
    _certify(rays)
    return rays


@dataclass(frozen=True)
class DistinctnessReport:
    depth: int
    divergences: Dict[Tuple[str, str], Optional[int]]

    @property
    def distinct(self) -> bool:
        return all(pos is not None for pos in self.divergences.values())

    def first_letter_pairs(self) -> List[Tuple[str, str]]:
        """Pairs told apart by their first letter; distinct without any depth caveat."""
        return [pair for pair, pos in self.divergences.items() if pos == 0]

    @property
    def absolute(self) -> bool:
        """Every pair is told apart by its first letter."""
        return all(pos == 0 for pos in self.divergences.values())

    def max_divergence(self) -> Optional[int]:
        found = [pos for pos in self.divergences.values() if pos is not None]
        return max(found) if found else None


def _first_divergence(u: Word, v: Word) -> Optional[int]:
    for pos, (a, b) in enumerate(zip(u.letters, v.letters)):
        if a != b:
            return pos
    return None


def pairwise_distinct(rays: Sequence[Ray], depth: int) -> DistinctnessReport:
    prefixes = [ray.expand(depth) for ray in rays]
    divergences: Dict[Tuple[str, str], Optional[int]] = {}
    for (i, a), (j, b) in itertools.combinations(enumerate(rays), 2):
        divergences[(a.name, b.name)] = _first_divergence(prefixes[i], prefixes[j])
    return DistinctnessReport(depth, divergences)


def require_distinct(rays: Sequence[Ray], depth: int) -> DistinctnessReport:
    report = pairwise_distinct(rays, depth)
    if not report.distinct:
        same = [pair for pair, pos in report.divergences.items() if pos is None]
        raise InconclusiveError(f"rays agree to depth {depth}: {same}")
    return report


def translate_matches(x: Ray, y: Ray, depth: int, max_shift: int = 8) -> List[Tuple[int, int]]:
    """Shifts (i, j), i + j <= max_shift, with x[i:] and y[j:] agreeing on the window.

    A real relation w X = Y between fixed rays shows up here as a match with
    w = y[:j] x[:i]^-1; the window is depth - max_shift letters long.
    """
    window = depth - max_shift
    if window <= 0:
        raise InputError("depth must exceed max_shift")
    px = x.expand(depth).letters
    py = y.expand(depth).letters
    matches = []
    for i in range(max_shift + 1):
        for j in range(max_shift + 1 - i):
            if px[i:i + window] == py[j:j + window]:
                matches.append((i, j))
    return matches


@dataclass(frozen=True)
class FixedPointInventory:
    n: int
    depth: int
    attracting: Tuple[Ray, ...]
    repelling: Tuple[Ray, ...]
    power: int = 1
    certified: bool = False
    attracting_report: Optional[DistinctnessReport] = field(default=None, compare=False)
    repelling_report: Optional[DistinctnessReport] = field(default=None, compare=False)
    repelling_change: Optional[BasisChange] = field(default=None, compare=False)

    @property
    def counts(self) -> Tuple[int, int]:
        return len(self.attracting), len(self.repelling)

    @property
    def total(self) -> int:
        return len(self.attracting) + len(self.repelling)

    def with_rays(self, attracting: Sequence[Ray], repelling: Sequence[Ray]) -> "FixedPointInventory":
        return replace(self, attracting=tuple(attracting), repelling=tuple(repelling))

    def to_json(self, prefix_length: Optional[int] = None) -> Dict[str, object]:
        length = prefix_length or self.depth

        def entry(ray: Ray) -> Dict[str, str]:
            return {
                "name": ray.name,
                "seed": W.format_word(ray.seed),
                "prefix": W.format_word(ray.expand(length)),
            }

        return {
            "n": self.n,
            "depth": self.depth,
            "power": self.power,
            "attracting": [entry(r) for r in self.attracting],
            "repelling": [entry(r) for r in self.repelling],
            "total": self.total,
        }


def build_inventory(n: int, depth: int = DEFAULT_DEPTH, power: int = 1) -> FixedPointInventory:
    """Both families for alpha_n^power, attraction and distinctness certified."""
    _rank_check(n)
    attracting = attracting_family(n, power)
    repelling = repelling_family(n, power)
    attracting_report = require_distinct(attracting, depth)
    repelling_report = require_distinct(repelling, depth)
    logger.info(
        "inventory n=%d t=%d: %d attracting, %d repelling (depth %d)",
        n, power, len(attracting), len(repelling), depth,
    )
    return FixedPointInventory(
        n=n,
        depth=depth,
        attracting=tuple(attracting),
        repelling=tuple(repelling),
        power=power,
        certified=True,
        attracting_report=attracting_report,
        repelling_report=repelling_report,
        repelling_change=A.inverse_family_basis(n),
    )


class OrbitCountConvention(str, enum.Enum):
    DIAGONAL = "diagonal"
    TOTAL = "total"


def orbit_counts(f: Automorphism) -> Dict[str, int]:
    """Occurrences of a_i^(+-1) in f(a_i), summed over i, and all letters of all images."""
    diagonal = sum(
        sum(1 for letter in image.letters if letter.index == i) for i, image in enumerate(f.images)
    )
    return {OrbitCountConvention.DIAGONAL.value: diagonal,
            OrbitCountConvention.TOTAL.value: f.total_length()}


def attracting_orbit_bound(
    f: Automorphism, convention: OrbitCountConvention = OrbitCountConvention.DIAGONAL
) -> int:
    return orbit_counts(f)[OrbitCountConvention(convention).value]


@dataclass(frozen=True)
class N2Relation:
    depth: int
    commutator: Word
    commutator_new_basis: Word
    fixed_by_alpha: bool
    fixed_by_inverse: bool
    prefix_consistent: bool
    fixed_by_alpha3: bool

    @property
    def holds(self) -> bool:
        return (self.fixed_by_alpha and self.fixed_by_inverse and self.prefix_consistent
                and not self.fixed_by_alpha3)


def n2_degenerate_relation(depth: int = 40) -> N2Relation:
    """Y0 = w Y with w = a2 x0^-1 a2^-1 x0 fixed by alpha_2."""
    setup = RepellingSetup.build(2)
    basis = setup.change.new
    x0 = setup.scaffold.x_words[0]
    a2 = basis.generator(1)
    w_new = W.product(basis, (a2, W.invert(x0), W.invert(a2), x0))
    w_old = setup.change.revert(w_new)

    alpha2 = A.make_alpha(2)
    seeds = setup.seeds()
    y0 = Ray("Yk0", setup.inverse, seeds["Yk0"])
    y = Ray("Y", setup.inverse, seeds["Y"])
    left = y0.expand(depth)
    right = W.concat(w_new, y.expand(depth + len(w_new)))
    common = min(len(left), len(right))
    consistent = common >= depth and left.letters[:common] == right.letters[:common]

    alpha3 = A.make_alpha(3)
    w3 = W.reduce(alpha3.basis, w_old.letters)
    return N2Relation(
        depth=depth,
        commutator=w_old,
        commutator_new_basis=w_new,
        fixed_by_alpha=A.apply(alpha2, w_old) == w_old,
        fixed_by_inverse=A.apply(setup.inverse, w_new) == w_new,
        prefix_consistent=consistent,
        fixed_by_alpha3=A.apply(alpha3, w3) == w3,
    )
