"""Reduced words in a free group over a named basis.

Words are immutable values: a `Basis` plus a tuple of `Letter`s with no
adjacent cancelling pair. The module provides:
- reduce(basis, letters) -> Word
- concat(u, v) / invert(w) / is_positive(w) / is_negative(w)
- substitute(w, images, target) and change_basis(w, old_in_new, new_in_old)
- parse_word(basis, text) / format_word(w)

Text syntax: whitespace separated tokens, a generator label stands for the
generator and the label with its first character upper-cased stands for the
inverse, so "a1 A1 a2" parses to a2.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple

from .errors import BasisMismatchError, InputError, InvalidBasisChangeError


class Letter(NamedTuple):
    index: int
    sign: int

    def inverse(self) -> "Letter":
        return Letter(self.index, -self.sign)


@dataclass(frozen=True)
class Basis:
    """Ordered generator labels of F_n."""

    names: Tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.names) < 2:
            raise InputError(f"a basis needs at least 2 generators, got {len(self.names)}")
        for name in self.names:
            if not name or not name.isprintable() or any(ch.isspace() for ch in name):
                raise InputError(f"invalid generator label: {name!r}")
            if not name[0].islower():
                raise InputError(f"generator labels must start lower-case: {name!r}")
        if len(set(self.names)) != len(self.names):
            raise InputError(f"generator labels are not distinct: {self.names}")

    @classmethod
    def standard(cls, n: int, prefix: str = "a") -> "Basis":
        """a1 ... an"""
        if n < 2:
            raise InputError(f"rank must be >= 2, got {n}")
        return cls(tuple(f"{prefix}{i}" for i in range(1, n + 1)))

    @property
    def rank(self) -> int:
        return len(self.names)

    def generator(self, index: int) -> "Word":
        return Word(self, (self.letter(index, 1),))

    def generators(self) -> List["Word"]:
        return [self.generator(i) for i in range(self.rank)]

    def letter(self, index: int, sign: int = 1) -> Letter:
        if not 0 <= index < self.rank:
            raise InputError(f"generator index {index} outside basis of rank {self.rank}")
        if sign not in (1, -1):
            raise InputError(f"letter sign must be +1 or -1, got {sign}")
        return Letter(index, sign)

    def label(self, letter: Letter) -> str:
        name = self.names[letter.index]
        if letter.sign > 0:
            return name
        return name[0].upper() + name[1:]

    def parse_token(self, token: str) -> Letter:
        try:
            return Letter(self.names.index(token), 1)
        except ValueError:
            pass
        lowered = token[:1].lower() + token[1:]
        if token[:1].isupper() and lowered in self.names:
            return Letter(self.names.index(lowered), -1)
        raise InputError(f"unknown generator token {token!r} for basis {' '.join(self.names)}")


@dataclass(frozen=True)
class Word:
    """A freely reduced word. Build it with `reduce` unless already reduced."""

    basis: Basis
    letters: Tuple[Letter, ...] = ()

    def __post_init__(self) -> None:
        rank = self.basis.rank
        for letter in self.letters:
            if not 0 <= letter.index < rank:
                raise InputError(f"letter index {letter.index} outside basis of rank {rank}")
        for u, v in zip(self.letters, self.letters[1:]):
            if u.index == v.index and u.sign == -v.sign:
                raise InputError("word is not freely reduced")

    @classmethod
    def identity(cls, basis: Basis) -> "Word":
        return cls(basis, ())

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return format_word(self)

    def is_identity(self) -> bool:
        return not self.letters

    def startswith(self, prefix: "Word") -> bool:
        _same_basis(self, prefix)
        return self.letters[: len(prefix.letters)] == prefix.letters

    def prefix(self, length: int) -> "Word":
        return Word(self.basis, self.letters[:length])

    def suffix_from(self, start: int) -> "Word":
        return Word(self.basis, self.letters[start:])

    def first(self) -> Optional[Letter]:
        return self.letters[0] if self.letters else None

    def last(self) -> Optional[Letter]:
        return self.letters[-1] if self.letters else None


def _same_basis(u: Word, v: Word) -> None:
    if u.basis != v.basis:
        raise BasisMismatchError(
            f"words over different bases: {' '.join(u.basis.names)} vs {' '.join(v.basis.names)}"
        )


def _push(stack: List[Letter], letter: Letter) -> None:
    if stack and stack[-1].index == letter.index and stack[-1].sign == -letter.sign:
        stack.pop()
    else:
        stack.append(letter)


def reduce(basis: Basis, letters: Iterable[Letter]) -> Word:
    """Freely reduce a raw letter sequence (stack based, linear time)."""
    stack: List[Letter] = []
    rank = basis.rank
    for letter in letters:
        index, sign = letter
        if not 0 <= index < rank:
            raise InputError(f"letter index {index} outside basis of rank {rank}")
        if sign not in (1, -1):
            raise InputError(f"letter sign must be +1 or -1, got {sign}")
        _push(stack, Letter(index, sign))
    return Word(basis, tuple(stack))


def concat(u: Word, v: Word) -> Word:
    """Reduced product u*v; cancellation only happens at the junction."""
    _same_basis(u, v)
    a, b = u.letters, v.letters
    k = 0
    limit = min(len(a), len(b))
    while k < limit and a[len(a) - 1 - k].index == b[k].index and a[len(a) - 1 - k].sign == -b[k].sign:
        k += 1
    return Word(u.basis, a[: len(a) - k] + b[k:])


def product(basis: Basis, words: Iterable[Word]) -> Word:
    stack: List[Letter] = []
    for word in words:
        if word.basis != basis:
            raise BasisMismatchError("words over different bases in product")
        for letter in word.letters:
            _push(stack, letter)
    return Word(basis, tuple(stack))


def invert(w: Word) -> Word:
    return Word(w.basis, tuple(Letter(i, -s) for i, s in reversed(w.letters)))


def is_positive(w: Word) -> bool:
    return all(letter.sign > 0 for letter in w.letters)


def is_negative(w: Word) -> bool:
    return all(letter.sign < 0 for letter in w.letters)


def substitute(w: Word, images: Sequence[Word], target: Basis) -> Word:
    """Replace every generator of w by its image over `target` and reduce."""
    if len(images) != w.basis.rank:
        raise InputError(f"expected {w.basis.rank} images, got {len(images)}")
    inverses: List[Optional[Tuple[Letter, ...]]] = [None] * len(images)
    stack: List[Letter] = []
    for index, sign in w.letters:
        image = images[index]
        if image.basis != target:
            raise BasisMismatchError("image word is not over the target basis")
        if sign > 0:
            chunk = image.letters
        else:
            chunk = inverses[index]
            if chunk is None:
                chunk = invert(image).letters
                inverses[index] = chunk
        for letter in chunk:
            _push(stack, letter)
    return Word(target, tuple(stack))


def change_basis(w: Word, old_in_new: Sequence[Word], new_in_old: Sequence[Word]) -> Word:
    """Rewrite w in a new basis.

    `old_in_new[i]` expresses old generator i over the new basis and
    `new_in_old` is the witness expressing the new generators over the old one;
    both compositions must fix every generator.
    """
    if not old_in_new:
        raise InvalidBasisChangeError("empty basis change")
    new_basis = old_in_new[0].basis
    old_basis = w.basis
    for gen, image in zip(old_basis.generators(), old_in_new):
        if substitute(image, new_in_old, old_basis) != gen:
            raise InvalidBasisChangeError(f"witness does not undo the image of {gen}")
    for gen, image in zip(new_basis.generators(), new_in_old):
        if substitute(image, old_in_new, new_basis) != gen:
            raise InvalidBasisChangeError(f"basis change does not undo the witness on {gen}")
    return substitute(w, old_in_new, new_basis)


def parse_word(basis: Basis, text: str) -> Word:
    """Parse whitespace separated tokens; "1" or an empty string is the identity."""
    tokens = [tok for tok in text.split() if tok != "1"]
    return reduce(basis, (basis.parse_token(tok) for tok in tokens))


def format_word(w: Word) -> str:
    if not w.letters:
        return "1"
    return " ".join(w.basis.label(letter) for letter in w.letters)


def word(basis: Basis, *letters: Tuple[int, int]) -> Word:
    """Shorthand: word(basis, (0, 1), (1, -1)) is a1 A2."""
    return reduce(basis, (Letter(i, s) for i, s in letters))


def random_word(basis: Basis, length: int, rng: random.Random) -> Word:
    """A uniformly chosen reduced word of exactly `length` letters."""
    letters: List[Letter] = []
    while len(letters) < length:
        candidate = Letter(rng.randrange(basis.rank), rng.choice((1, -1)))
        if letters and letters[-1] == candidate.inverse():
            continue
        letters.append(candidate)
    return Word(basis, tuple(letters))
