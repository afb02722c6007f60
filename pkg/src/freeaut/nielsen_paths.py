"""Search for indivisible Nielsen paths (INPs) of a rose train track.

An INP with vertex endpoints is gamma1 gamma2^-1 with legal legs meeting in an
illegal turn, where
    straight:  f(gamma1) = gamma1 gamma3,  f(gamma2) = gamma2 gamma3
    twisted:   f(gamma1) = gamma2 gamma3,  f(gamma2) = gamma1 gamma3
and gamma3 is nonempty. Two independent engines look for them:

- the constraint engine grows both legs backwards from the illegal turn and
  tracks, per equation, the letters one side has produced that the other side
  has not matched yet; states repeating with no more budget are dropped, so
  the search closes on its own for the maps of interest;
- the brute force enumerates every legal leg up to a length its path budget
  allows, pairs legs through the equations using the image table of f only,
  and checks every candidate with NielsenPath.verify.

The constraint engine is capped by max_len letters per leg. A result is
conclusive when it closed without hitting the cap, or when the cap is at
least the cancellation length bound of the train track. The two engines are
compared as sets on legs no longer than the brute force reached.
"""
from __future__ import annotations

import enum
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import automorphisms as A
from . import traintrack as T
from . import words as W
from .automorphisms import Automorphism
from .errors import NotPrimitiveError
from .traintrack import LengthBound, RoseTrainTrack
from .words import Letter, Word

logger = logging.getLogger(__name__)

Seq = Tuple[Letter, ...]

# legal legs the brute force may enumerate per search
BRUTE_FORCE_PATH_BUDGET = 20_000


class SearchMode(str, enum.Enum):
    STRAIGHT = "straight"
    TWISTED = "twisted"


@dataclass(frozen=True)
class NielsenPath:
    gamma1: Word
    gamma2: Word
    gamma3: Word
    mode: SearchMode = SearchMode.STRAIGHT

    def path(self) -> Word:
        return W.concat(self.gamma1, W.invert(self.gamma2))

    def verify(self, tt: RoseTrainTrack) -> bool:
        f = tt.auto
        g1, g2, g3 = self.gamma1, self.gamma2, self.gamma3
        if g1.is_identity() or g2.is_identity() or g3.is_identity():
            return False
        if not (tt.is_legal_path(g1.letters) and tt.is_legal_path(g2.letters)):
            return False
        if tt.is_legal_turn(T.term(g1.letters[-1]), T.term(g2.letters[-1])):
            return False
        if self.mode is SearchMode.STRAIGHT:
            targets = (g1, g2)
        else:
            targets = (g2, g1)
        return (A.apply(f, g1) == W.concat(targets[0], g3)
                and A.apply(f, g2) == W.concat(targets[1], g3))

    def describe(self) -> str:
        return (f"gamma1={W.format_word(self.gamma1)}; gamma2={W.format_word(self.gamma2)}; "
                f"gamma3={W.format_word(self.gamma3)} ({self.mode.value})")

    def sort_key(self) -> Tuple[Seq, Seq, Seq]:
        return (self.gamma1.letters, self.gamma2.letters, self.gamma3.letters)


@dataclass(frozen=True)
class INPSearchResult:
    mode: SearchMode
    max_len: int
    paths: Tuple[NielsenPath, ...] = ()
    brute_force_paths: Tuple[NielsenPath, ...] = ()
    brute_force_len: int = 0
    truncated: bool = False
    conclusive: bool = False
    not_applicable: bool = False
    bound: Optional[LengthBound] = None
    states: int = field(default=0, compare=False)

    @property
    def empty(self) -> bool:
        return not self.paths

    @property
    def cross_checked(self) -> bool:
        """The brute force covered every leg length the constraint engine did."""
        return self.brute_force_len >= self.max_len

    @property
    def engines_agree(self) -> bool:
        reach = self.brute_force_len
        engine = {p.sort_key() for p in self.paths
                  if len(p.gamma1) <= reach and len(p.gamma2) <= reach}
        return engine == {p.sort_key() for p in self.brute_force_paths}

    @property
    def conclusive_empty(self) -> bool:
        return self.conclusive and self.empty and self.engines_agree and not self.not_applicable

    def justification(self) -> str:
        if self.not_applicable:
            return "no illegal turns: every turn is legal, INPs cannot occur"
        if not self.truncated:
            return "constraint engine closed without reaching the leg length cap"
        if self.conclusive and self.bound is not None:
            return f"max_len {self.max_len} >= cancellation bound: {self.bound.justification}"
        return f"search cut at leg length {self.max_len} below the cancellation bound"

    def cross_check_note(self) -> str:
        if self.not_applicable:
            return "no search"
        if self.cross_checked:
            return f"cross-checked by brute force up to {self.brute_force_len} letters"
        return f"not cross-checked: brute force stopped at {self.brute_force_len} of {self.max_len} letters"


def _reversed_images(f: Automorphism) -> Dict[Letter, Seq]:
    table = {}
    for i, image in enumerate(f.images):
        table[Letter(i, 1)] = tuple(reversed(image.letters))
        table[Letter(i, -1)] = tuple(x.inverse() for x in image.letters)
    return table


def _forward_images(f: Automorphism) -> Dict[Letter, Seq]:
    table = {}
    for i, image in enumerate(f.images):
        table[Letter(i, 1)] = image.letters
        table[Letter(i, -1)] = W.invert(image).letters
    return table


def _letters(n: int) -> List[Letter]:
    return [Letter(i, s) for i in range(n) for s in (1, -1)]


# A Diff is the unmatched tail of one equation: ("s", letters) when the image
# stream is ahead of the leg it must reproduce, ("t", letters) when the leg
# is ahead, ("", ()) when both agree.
Diff = Tuple[str, Seq]
_EVEN: Diff = ("", ())


def _diff_of(stream: Seq, target: Seq) -> Optional[Diff]:
    common = min(len(stream), len(target))
    if stream[:common] != target[:common]:
        return None
    if len(stream) > common:
        return ("s", stream[common:])
    if len(target) > common:
        return ("t", target[common:])
    return _EVEN


def _feed(diff: Diff, letters: Seq, side: str) -> Optional[Diff]:
    kind, pending = diff
    if not pending or kind == side:
        return (side, pending + letters) if letters or pending else _EVEN
    for pos, letter in enumerate(letters):
        if not pending:
            return (side, letters[pos:])
        if pending[0] != letter:
            return None
        pending = pending[1:]
    return (kind, pending) if pending else _EVEN


def _surplus(diff: Diff) -> int:
    kind, pending = diff
    return len(pending) if kind == "s" else -len(pending)


class _ConstraintEngine:
    """Backward search from each illegal turn; see the module docstring."""

    def __init__(self, tt: RoseTrainTrack, mode: SearchMode, max_len: int) -> None:
        self.tt = tt
        self.mode = mode
        self.max_len = max_len
        self.rev = _reversed_images(tt.auto)
        letters = _letters(tt.rank)
        # extensions[prev]: letters x that may precede prev in a legal leg
        self.extensions = {
            prev: [x for x in letters if tt.is_legal_step(x, prev)] for prev in letters
        }
        # channel c compares stream F(leg source[c]) with leg target[c]
        self.target = (0, 1) if mode is SearchMode.STRAIGHT else (1, 0)
        self.truncated = False
        self.states = 0
        self.found: Dict[Tuple[Seq, Seq, Seq], None] = {}
        self.visited: Dict[tuple, List[Tuple[int, int]]] = {}

    def run(self) -> List[Tuple[Seq, Seq, Seq]]:
        for illegal in self.tt.illegal_turns:
            d1, d2 = sorted(illegal, key=T._direction_order)
            c1, c2 = Letter(d1.index, -d1.sign), Letter(d2.index, -d2.sign)
            self._phase_a((c1,), (c2,))
        return list(self.found)

    def _phase_a(self, g1: Seq, g2: Seq) -> None:
        # streams agree so far; grow the leg whose stream is shorter
        stack = [((g1, g2), (self.rev[g1[0]], self.rev[g2[0]]))]
        while stack:
            legs, streams = stack.pop()
            s1, s2 = streams
            shorter = min(len(s1), len(s2))
            m = next((k for k in range(shorter) if s1[k] != s2[k]), None)
            if m is not None:
                if m > 0:
                    self._phase_b(legs, streams, m)
                continue
            leg = 0 if len(s1) <= len(s2) else 1
            if len(legs[leg]) >= self.max_len:
                self.truncated = True
                continue
            for x in reversed(self.extensions[legs[leg][-1]]):
                new_legs = list(legs)
                new_streams = list(streams)
                new_legs[leg] = legs[leg] + (x,)
                new_streams[leg] = streams[leg] + self.rev[x]
                stack.append((tuple(new_legs), tuple(new_streams)))

    def _dead(self, diffs: Tuple[Diff, Diff]) -> bool:
        if self.mode is SearchMode.STRAIGHT:
            return any(_surplus(d) > 0 for d in diffs)
        return sum(_surplus(d) for d in diffs) > 0

    def _dominated(self, key: tuple, budget: Tuple[int, int]) -> bool:
        seen = self.visited.setdefault(key, [])
        if any(b0 >= budget[0] and b1 >= budget[1] for b0, b1 in seen):
            return True
        seen.append(budget)
        return False

    def _extend(self, legs: Tuple[Seq, Seq], diffs: Tuple[Diff, Diff], leg: int, x: Letter):
        new_legs = list(legs)
        new_legs[leg] = legs[leg] + (x,)
        new_diffs = list(diffs)
        for c in (0, 1):
            if c == leg:
                new_diffs[c] = _feed(new_diffs[c], self.rev[x], "s")
            if self.target[c] == leg and new_diffs[c] is not None:
                new_diffs[c] = _feed(new_diffs[c], (x,), "t")
            if new_diffs[c] is None:
                return None
        return tuple(new_legs), tuple(new_diffs)

    def _phase_b(self, legs: Tuple[Seq, Seq], streams: Tuple[Seq, Seq], m: int) -> None:
        rho = streams[0][:m]
        diffs = []
        for c in (0, 1):
            diff = _diff_of(streams[c][m:], legs[self.target[c]])
            if diff is None:
                return
            diffs.append(diff)
        stack = [(legs, tuple(diffs))]
        while stack:
            legs, diffs = stack.pop()
            if self._dead(diffs):
                continue
            if all(not pending for _, pending in diffs):
                self.found[(legs[0], legs[1], rho)] = None
                continue
            key = (diffs, legs[0][-1], legs[1][-1])
            if self._dominated(key, (self.max_len - len(legs[0]), self.max_len - len(legs[1]))):
                continue
            self.states += 1
            forced = next((c for c in (0, 1) if diffs[c][0] == "s" and diffs[c][1]), None)
            if forced is not None:
                leg = self.target[forced]
                options = [diffs[forced][1][0]]
                options = [x for x in options if x in self.extensions[legs[leg][-1]]]
            else:
                leg = next(c for c in (0, 1) if diffs[c][1])
                options = self.extensions[legs[leg][-1]]
            if len(legs[leg]) >= self.max_len:
                self.truncated = True
                continue
            for x in reversed(options):
                step = self._extend(legs, diffs, leg, x)
                if step is not None:
                    stack.append(step)


def legal_path_counts(tt: RoseTrainTrack, max_len: int) -> List[int]:
    """counts[k - 1] is the number of legal paths with k letters."""
    letters = _letters(tt.rank)
    ending = {x: 1 for x in letters}
    counts: List[int] = []
    for k in range(1, max_len + 1):
        if k > 1:
            ending = {y: sum(c for x, c in ending.items() if tt.is_legal_step(x, y)) for y in letters}
        counts.append(sum(ending.values()))
    return counts


def brute_force_reach(tt: RoseTrainTrack, max_len: int, budget: int = BRUTE_FORCE_PATH_BUDGET) -> int:
    """Longest leg length L <= max_len whose legal paths of length <= L fit the budget."""
    total = reach = 0
    for k, count in enumerate(legal_path_counts(tt, max_len), start=1):
        total += count
        if total > budget:
            break
        reach = k
    return reach


def _legal_paths_with_images(tt: RoseTrainTrack, length: int) -> Iterable[Tuple[Seq, Seq]]:
    # a legal path has a legal image under a train track map, so images never cancel
    table = _forward_images(tt.auto)
    letters = _letters(tt.rank)
    stack: List[Tuple[Seq, Seq]] = [((x,), table[x]) for x in reversed(letters)]
    while stack:
        gamma, image = stack.pop()
        yield gamma, image
        if len(gamma) < length:
            for y in reversed(letters):
                if tt.is_legal_step(gamma[-1], y):
                    stack.append((gamma + (y,), image + table[y]))


def _brute_force(tt: RoseTrainTrack, mode: SearchMode, length: int) -> List[NielsenPath]:
    """Every INP with both legs of at most length letters, from the image table of f."""
    if length <= 0:
        return []
    basis = tt.basis
    found: Dict[Tuple[Seq, Seq, Seq], NielsenPath] = {}

    def check(g1: Seq, g2: Seq, g3: Seq) -> None:
        d1, d2 = T.term(g1[-1]), T.term(g2[-1])
        if tt.gate_of[d1] != tt.gate_of[d2] or T._direction_order(d1) >= T._direction_order(d2):
            return
        candidate = NielsenPath(Word(basis, g1), Word(basis, g2), Word(basis, g3), mode)
        if candidate.verify(tt):
            found[candidate.sort_key()] = candidate

    if mode is SearchMode.STRAIGHT:
        # f(gamma) = gamma gamma3: group legs by gamma3 and the gate they end in
        groups: Dict[Tuple[Seq, int], List[Seq]] = {}
        for gamma, image in _legal_paths_with_images(tt, length):
            if len(image) > len(gamma) and image[:len(gamma)] == gamma:
                key = (image[len(gamma):], tt.gate_of[T.term(gamma[-1])])
                groups.setdefault(key, []).append(gamma)
        for (rho, _), members in groups.items():
            for g1 in members:
                for g2 in members:
                    check(g1, g2, rho)
    else:
        # f(gamma1) = gamma2 gamma3 makes gamma2 a proper prefix of f(gamma1)
        for g1, image in _legal_paths_with_images(tt, length):
            for k in range(1, min(length, len(image) - 1) + 1):
                check(g1, image[:k], image[k:])
    return [found[k] for k in sorted(found)]


def _length_bound(tt: RoseTrainTrack) -> Optional[LengthBound]:
    try:
        return T.cancellation_length_bound(tt)
    except (NotPrimitiveError, ValueError):
        return None


def find_inps(
    tt: RoseTrainTrack,
    mode: SearchMode = SearchMode.STRAIGHT,
    max_len: Optional[int] = None,
    bound: Optional[LengthBound] = None,
    brute_force_budget: int = BRUTE_FORCE_PATH_BUDGET,
) -> INPSearchResult:
    mode = SearchMode(mode)
    if not tt.illegal_turns:
        return INPSearchResult(mode, max_len or 0, not_applicable=True)
    if bound is None:
        bound = _length_bound(tt)
    if max_len is None:
        max_len = bound.max_len if bound is not None else 2 * tt.auto.total_length()

    engine = _ConstraintEngine(tt, mode, max_len)
    raw = engine.run()
    basis = tt.basis
    paths = {}
    for g1, g2, rho in raw:
        candidate = NielsenPath(
            Word(basis, tuple(reversed(g1))),
            Word(basis, tuple(reversed(g2))),
            Word(basis, tuple(reversed(rho))),
            mode,
        )
        if not candidate.verify(tt):
            raise RuntimeError(f"constraint engine produced a non-solution: {candidate.describe()}")
        paths[candidate.sort_key()] = candidate
    reach = brute_force_reach(tt, max_len, brute_force_budget)
    brute = _brute_force(tt, mode, reach)

    conclusive = not engine.truncated or (bound is not None and max_len >= bound.max_len)
    result = INPSearchResult(
        mode=mode,
        max_len=max_len,
        paths=tuple(paths[k] for k in sorted(paths)),
        brute_force_paths=tuple(brute),
        brute_force_len=reach,
        truncated=engine.truncated,
        conclusive=conclusive,
        bound=bound,
        states=engine.states,
    )
    if not result.engines_agree:
        logger.warning("INP engines disagree for %s (%s) on legs up to %d: engine %d, brute force %d",
                       tt.auto.name or "map", mode.value, reach, len(result.paths), len(brute))
    if not result.cross_checked:
        logger.debug("INP search %s %s: brute force stopped at %d of %d letters",
                     tt.auto.name or "map", mode.value, reach, max_len)
    logger.info("INP search %s %s: %d found, conclusive=%s, states=%d",
                tt.auto.name or "map", mode.value, len(result.paths), conclusive, engine.states)
    return result


@dataclass(frozen=True)
class PeriodicINPReport:
    t: int
    straight: INPSearchResult
    twisted: INPSearchResult

    @property
    def conclusive_empty(self) -> bool:
        return self.straight.conclusive_empty and self.twisted.conclusive_empty


def _search_power(args: Tuple[Automorphism, int, Optional[int], Optional[int]]) -> PeriodicINPReport:
    f, t, max_len, budget = args
    tt = T.build(A.power(f, t, budget))
    return PeriodicINPReport(
        t,
        find_inps(tt, SearchMode.STRAIGHT, max_len),
        find_inps(tt, SearchMode.TWISTED, max_len),
    )


def find_periodic_inps(
    tt: RoseTrainTrack,
    t_max: Optional[int] = None,
    max_len: Optional[int] = None,
    budget: Optional[int] = None,
    jobs: int = 1,
    known: Sequence[PeriodicINPReport] = (),
) -> List[PeriodicINPReport]:
    """Straight and twisted searches on f^t for t = 1..t_max.

    Powers already searched in known are reused.
    """
    if t_max is None:
        t_max = T.default_t_max(tt)
    reports = [r for r in known if 1 <= r.t <= t_max]
    done = {r.t for r in reports}
    tasks = [(tt.auto, t, max_len, budget) for t in range(1, t_max + 1) if t not in done]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports.extend(pool.map(_search_power, tasks))
    else:
        reports.extend(_search_power(task) for task in tasks)
    return sorted(reports, key=lambda r: r.t)


@dataclass(frozen=True)
class FixedSubgroupCertificate:
    trivial: Optional[bool]
    certified: bool
    reason: str
    witness: Optional[Word] = None
    periodic: Tuple[PeriodicINPReport, ...] = ()


def fixed_subgroup_trivial(
    tt: RoseTrainTrack,
    max_len: Optional[int] = None,
    t_max: Optional[int] = None,
    budget: Optional[int] = None,
    jobs: int = 1,
) -> FixedSubgroupCertificate:
    """Fix(f) = {1} certified by conclusive absence of straight INPs.

    With t_max, periodic INPs up to that power are ruled out as well.
    """
    if not tt.is_expanding():
        return FixedSubgroupCertificate(None, False, "some edge is not stretched; the INP argument does not apply")
    bound = _length_bound(tt)
    straight = find_inps(tt, SearchMode.STRAIGHT, max_len, bound)
    if straight.not_applicable:
        return FixedSubgroupCertificate(None, False, straight.justification())
    if straight.paths:
        witness = straight.paths[0].path()
        return FixedSubgroupCertificate(False, True, f"INP found: {straight.paths[0].describe()}", witness)
    if not straight.conclusive_empty:
        return FixedSubgroupCertificate(None, False, straight.justification())
    periodic: Tuple[PeriodicINPReport, ...] = ()
    if t_max is not None:
        first = PeriodicINPReport(1, straight, find_inps(tt, SearchMode.TWISTED, max_len, bound))
        periodic = tuple(find_periodic_inps(tt, t_max, max_len, budget, jobs, known=(first,)))
        for report in periodic:
            if not report.conclusive_empty:
                found = report.straight.paths or report.twisted.paths
                if found:
                    return FixedSubgroupCertificate(
                        False, True, f"periodic INP at power {report.t}: {found[0].describe()}",
                        found[0].path(), periodic)
                return FixedSubgroupCertificate(
                    None, False, f"power {report.t}: {report.straight.justification()}", None, periodic)
    return FixedSubgroupCertificate(True, True, straight.justification(), None, periodic)


def search_all(tt: RoseTrainTrack, modes: Iterable[SearchMode], max_len: Optional[int] = None
               ) -> Dict[SearchMode, INPSearchResult]:
    bound = _length_bound(tt)
    return {SearchMode(mode): find_inps(tt, mode, max_len, bound) for mode in modes}
