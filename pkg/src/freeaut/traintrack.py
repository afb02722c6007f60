"""Train track diagnostics for a positive automorphism on the rose R_n.

The rose has one vertex and 2n directions there: Direction(i, +1) is the
initial germ of a_i and Direction(i, -1) the initial germ of a_i^-1 (the
terminal germ of a_i). A positive automorphism is a train track map on the
rose, so everything here is read off the image table:
- build(f) -> RoseTrainTrack (dmap, gates, illegal turns)
- transition_matrix / is_primitive / is_irreducible / primitivity_exponent
- pf_data(M, tol) and characteristic_polynomial(M)
- cancellation_length_bound(tt): leg length past which no Nielsen path exists
"""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from functools import reduce as fold
from typing import Dict, FrozenSet, List, NamedTuple, Optional, Tuple

import numpy as np
import sympy

from . import automorphisms as A
from .automorphisms import Automorphism
from .errors import InconclusiveError, InputError, NotPrimitiveError, UnsupportedRepresentativeError
from .words import Basis, Letter

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-12
MAX_POWER_ITERATIONS = 100_000


class Direction(NamedTuple):
    index: int
    sign: int

    def letter(self) -> Letter:
        """The letter whose initial germ this direction is."""
        return Letter(self.index, self.sign)


def init(x: Letter) -> Direction:
    return Direction(x.index, x.sign)


def term(x: Letter) -> Direction:
    return Direction(x.index, -x.sign)


Turn = FrozenSet[Direction]


def turn(d: Direction, e: Direction) -> Turn:
    return frozenset((d, e))


def turn_between(x: Letter, y: Letter) -> Turn:
    """The turn crossed by the path x y."""
    return turn(term(x), init(y))


def direction_label(basis: Basis, d: Direction) -> str:
    return basis.label(d.letter())


@dataclass(frozen=True)
class RoseTrainTrack:
    auto: Automorphism
    dmap: Dict[Direction, Direction] = field(compare=False)
    gates: Tuple[FrozenSet[Direction], ...] = field(compare=False)
    illegal_turns: Tuple[Turn, ...] = field(compare=False)
    gate_of: Dict[Direction, int] = field(compare=False, repr=False)

    @property
    def basis(self) -> Basis:
        return self.auto.basis

    @property
    def rank(self) -> int:
        return self.auto.rank

    def directions(self) -> List[Direction]:
        return all_directions(self.rank)

    def is_legal_turn(self, d: Direction, e: Direction) -> bool:
        if d == e:
            return False
        return self.gate_of[d] != self.gate_of[e]

    def is_legal_step(self, x: Letter, y: Letter) -> bool:
        """May y follow x in a legal reduced path?"""
        if y == x.inverse():
            return False
        return self.gate_of[term(x)] != self.gate_of[init(y)]

    def is_legal_path(self, letters: Tuple[Letter, ...]) -> bool:
        return all(self.is_legal_step(x, y) for x, y in zip(letters, letters[1:]))

    def label(self, d: Direction) -> str:
        return direction_label(self.basis, d)

    def gate_labels(self) -> List[List[str]]:
        return [sorted(self.label(d) for d in gate) for gate in self.gates]

    def illegal_turn_labels(self) -> List[Tuple[str, str]]:
        out = []
        for t in self.illegal_turns:
            a, b = sorted(t)
            out.append((self.label(a), self.label(b)))
        return out

    def is_expanding(self) -> bool:
        return all(len(image) >= 2 for image in self.auto.images)


def all_directions(n: int) -> List[Direction]:
    return [Direction(i, s) for i in range(n) for s in (1, -1)]


def derivative_map(f: Automorphism) -> Dict[Direction, Direction]:
    """dmap(d): direction of the first letter of f applied to d's letter."""
    dmap = {}
    for d in all_directions(f.rank):
        image = f.images[d.index]
        first = image.letters[0] if d.sign > 0 else image.letters[-1].inverse()
        dmap[d] = init(first)
    return dmap


def iterate(dmap: Dict[Direction, Direction], d: Direction, steps: int) -> Direction:
    for _ in range(steps):
        d = dmap[d]
    return d


def compute_gates(dmap: Dict[Direction, Direction]) -> Tuple[FrozenSet[Direction], ...]:
    """Fibers of dmap^(2n); trajectories that meet stay together afterwards."""
    steps = len(dmap)
    fibers: Dict[Direction, List[Direction]] = {}
    for d in sorted(dmap):
        fibers.setdefault(iterate(dmap, d, steps), []).append(d)
    gates = [frozenset(members) for members in fibers.values()]
    return tuple(sorted(gates, key=lambda g: min(g, key=_direction_order)))


def _direction_order(d: Direction) -> Tuple[int, int]:
    return (d.index, -d.sign)


def build(f: Automorphism) -> RoseTrainTrack:
    if not f.is_positive():
        raise UnsupportedRepresentativeError(
            f"{f.name or 'automorphism'} is not positive on the rose; "
            "find a positive representative first"
        )
    dmap = derivative_map(f)
    gates = compute_gates(dmap)
    gate_of = {d: i for i, gate in enumerate(gates) for d in gate}
    illegal = []
    for gate in gates:
        ordered = sorted(gate, key=_direction_order)
        illegal.extend(turn(a, b) for a, b in itertools.combinations(ordered, 2))
    logger.debug("%s: %d gates, %d illegal turns", f.name or "map", len(gates), len(illegal))
    return RoseTrainTrack(f, dmap, gates, tuple(illegal), gate_of)


def dmap_cycle_lengths(dmap: Dict[Direction, Direction]) -> List[int]:
    """Lengths of the periodic cycles of dmap, one entry per cycle."""
    seen: set = set()
    lengths = []
    for start in sorted(dmap):
        path: Dict[Direction, int] = {}
        d = start
        while d not in path and d not in seen:
            path[d] = len(path)
            d = dmap[d]
        if d in path:
            lengths.append(len(path) - path[d])
        seen.update(path)
    return sorted(lengths)


def dmap_period(dmap: Dict[Direction, Direction]) -> int:
    return fold(math.lcm, dmap_cycle_lengths(dmap), 1)


def default_t_max(tt: RoseTrainTrack) -> int:
    return max(2, dmap_period(tt.dmap))


# -- transition matrix --------------------------------------------------------


def transition_matrix(f: Automorphism) -> np.ndarray:
    """M[i, j] = occurrences of a_i^(+-1) in f(a_j)."""
    n = f.rank
    matrix = np.zeros((n, n), dtype=np.int64)
    for j, image in enumerate(f.images):
        for letter in image.letters:
            matrix[letter.index, j] += 1
    return matrix


def _pattern(matrix: np.ndarray) -> np.ndarray:
    m = np.asarray(matrix)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InputError(f"expected a square matrix, got shape {m.shape}")
    if (m < 0).any():
        raise InputError("transition matrices are nonnegative")
    if not m.any():
        raise InputError("zero matrix")
    return (m > 0).astype(np.int64)


def primitivity_exponent(matrix: np.ndarray) -> Optional[int]:
    """Smallest k with M^k > 0, searched up to (m-1)^2 + 1; None if there is none."""
    pattern = _pattern(matrix)
    m = pattern.shape[0]
    power = pattern.copy()
    for k in range(1, (m - 1) ** 2 + 2):
        if power.all():
            return k
        power = np.minimum(power @ pattern, 1)
    return None


def is_primitive(matrix: np.ndarray) -> bool:
    return primitivity_exponent(matrix) is not None


def is_irreducible(matrix: np.ndarray) -> bool:
    pattern = _pattern(matrix)
    m = pattern.shape[0]
    reach = np.minimum(np.eye(m, dtype=np.int64) + pattern, 1)
    total = reach.copy()
    for _ in range(m - 1):
        total = np.minimum(total @ reach, 1)
    return bool(total.all())


@dataclass(frozen=True)
class PFData:
    eigenvalue: float
    vector: Tuple[float, ...]
    residual: float
    iterations: int


def pf_data(matrix: np.ndarray, tol: float = DEFAULT_TOLERANCE) -> PFData:
    """Perron-Frobenius eigenvalue and row eigenvector (v M = lambda v), sum(v) = 1."""
    if not is_primitive(matrix):
        raise NotPrimitiveError("Perron-Frobenius data needs a primitive matrix")
    m = np.asarray(matrix, dtype=float)
    transpose = m.T
    v = np.full(m.shape[0], 1.0 / m.shape[0])
    previous = math.inf
    for iteration in range(1, MAX_POWER_ITERATIONS + 1):
        w = transpose @ v
        eigenvalue = float(w.sum())
        w /= eigenvalue
        residual = float(np.abs(transpose @ w - eigenvalue * w).max())
        scale = max(1.0, eigenvalue)
        if abs(eigenvalue - previous) < tol * scale and residual < 10 * tol * scale:
            return PFData(eigenvalue, tuple(float(x) for x in w), residual, iteration)
        previous, v = eigenvalue, w
    raise InconclusiveError(f"power iteration did not converge in {MAX_POWER_ITERATIONS} steps")


_T = sympy.Symbol("t")


def characteristic_polynomial(matrix: np.ndarray) -> sympy.Poly:
    return sympy.Matrix(np.asarray(matrix).tolist()).charpoly(_T)


def format_polynomial(poly: sympy.Poly) -> str:
    return str(poly.as_expr())


def largest_real_root(poly: sympy.Poly) -> float:
    return float(max(sympy.real_roots(poly)))


# -- bounds -------------------------------------------------------------------


@dataclass(frozen=True)
class LengthBound:
    max_len: int
    cancellation_constant: int
    justification: str


def cancellation_length_bound(tt: RoseTrainTrack, pf: Optional[PFData] = None) -> LengthBound:
    """Letter bound on Nielsen path legs.

    A leg has PF-length at most 2C/(lambda - 1), C the bounded cancellation
    constant; C is overestimated by the total image length and PF-length is
    turned into a letter count through the smallest PF entry.
    """
    constant = tt.auto.total_length()
    if pf is None:
        pf = pf_data(transition_matrix(tt.auto))
    if pf.eigenvalue <= 1.0:
        raise NotPrimitiveError("stretch factor must exceed 1 for a length bound")
    lo, hi = min(pf.vector), max(pf.vector)
    bound = math.ceil(2 * constant * hi / ((pf.eigenvalue - 1) * lo))
    justification = (
        f"legs have PF-length <= 2C/(lambda-1) with C = sum of image lengths = {constant}, "
        f"lambda = {pf.eigenvalue:.6f}; letters <= PF-length * max(v)/min(v) "
        f"= {bound} (bounded cancellation, standard train track estimate)"
    )
    return LengthBound(bound, constant, justification)


def power_track(tt: RoseTrainTrack, t: int, budget: Optional[int] = None) -> RoseTrainTrack:
    if t == 1:
        return tt
    return build(A.power(tt.auto, t, budget))
