"""Automorphisms of F_n given by generator image tables.

- apply / compose / power / verify_inverse
- make_alpha(n) and make_alpha_inverse(n): the family
    a1 -> a1 a2 ... an,  ai -> ai a1 a2 ... ai  (i >= 2)
  and its inverse built from x0 = A1, x(k+1) = a(n-k) xk xk
- BasisChange and positivity_basis: generator sign flips that make every image
  positive
- parse_automorphism / format_automorphism: one "a1 -> a1 a2 a3" line per
  generator

Inverses are never solved for; they are constructed and then checked.
Image lengths grow geometrically under `power`, large exponents at large rank
run out of memory, so callers pass a letter budget.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from . import words as W
from .errors import BasisMismatchError, InputError, ResourceBudgetError
from .words import Basis, Letter, Word

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Automorphism:
    basis: Basis
    images: Tuple[Word, ...]
    inverse_witness: Optional[Tuple[Word, ...]] = field(default=None, compare=False)
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if len(self.images) != self.basis.rank:
            raise InputError(f"expected {self.basis.rank} images, got {len(self.images)}")
        for image in self.images:
            if image.basis != self.basis:
                raise BasisMismatchError("image word is not over the automorphism basis")
            if image.is_identity():
                raise InputError("an automorphism cannot send a generator to the identity")
        if self.inverse_witness is not None and len(self.inverse_witness) != self.basis.rank:
            raise InputError("inverse witness has the wrong number of images")

    @classmethod
    def identity(cls, basis: Basis) -> "Automorphism":
        gens = tuple(basis.generators())
        return cls(basis, gens, gens, name="id")

    @property
    def rank(self) -> int:
        return self.basis.rank

    def __call__(self, w: Word) -> Word:
        return apply(self, w)

    def image(self, index: int) -> Word:
        return self.images[index]

    def is_positive(self) -> bool:
        return all(W.is_positive(image) for image in self.images)

    def total_length(self) -> int:
        return sum(len(image) for image in self.images)

    def inverse(self) -> "Automorphism":
        if self.inverse_witness is None:
            raise InputError(f"automorphism {self.name or '?'} carries no inverse witness")
        name = f"{self.name}^-1" if self.name else ""
        return Automorphism(self.basis, self.inverse_witness, self.images, name=name)

    def has_verified_inverse(self) -> bool:
        if self.inverse_witness is None:
            return False
        return verify_inverse(self, self.inverse())


def apply(f: Automorphism, w: Word) -> Word:
    if w.basis != f.basis:
        raise BasisMismatchError("word and automorphism are over different bases")
    return W.substitute(w, f.images, f.basis)


def _compose_tables(
    outer: Sequence[Word], inner: Sequence[Word], basis: Basis
) -> Tuple[Word, ...]:
    return tuple(W.substitute(image, outer, basis) for image in inner)


def compose(f: Automorphism, g: Automorphism) -> Automorphism:
    """f o g, i.e. a -> f(g(a))."""
    if f.basis != g.basis:
        raise BasisMismatchError("cannot compose automorphisms over different bases")
    images = _compose_tables(f.images, g.images, f.basis)
    witness = None
    if f.inverse_witness is not None and g.inverse_witness is not None:
        witness = _compose_tables(g.inverse_witness, f.inverse_witness, f.basis)
    name = f"{f.name}*{g.name}" if f.name and g.name else ""
    return Automorphism(f.basis, images, witness, name=name)


def power(f: Automorphism, t: int, budget: Optional[int] = None) -> Automorphism:
    """f^t for t >= 1 by repeated composition, optionally capped in total letters."""
    if t < 1:
        raise InputError(f"power exponent must be >= 1, got {t}")
    result = f
    for step in range(2, t + 1):
        result = compose(f, result)
        if budget is not None and result.total_length() > budget:
            raise ResourceBudgetError(
                f"image table of power {step} has {result.total_length()} letters (budget {budget})"
            )
    if f.name:
        result = Automorphism(result.basis, result.images, result.inverse_witness,
                              name=f.name if t == 1 else f"{f.name}^{t}")
    return result


def verify_inverse(f: Automorphism, g: Automorphism) -> bool:
    """True iff f o g and g o f both fix every generator."""
    if f.basis != g.basis:
        return False
    gens = f.basis.generators()
    for outer, inner in ((f, g), (g, f)):
        for gen, image in zip(gens, inner.images):
            if apply(outer, image) != gen:
                return False
    return True


# -- the family ---------------------------------------------------------------


def alpha_images(basis: Basis) -> Tuple[Word, ...]:
    n = basis.rank
    images = [W.reduce(basis, (Letter(i, 1) for i in range(n)))]
    for i in range(1, n):
        letters = [Letter(i, 1)] + [Letter(j, 1) for j in range(i + 1)]
        images.append(W.reduce(basis, letters))
    return tuple(images)


@dataclass(frozen=True)
class InverseScaffold:
    """The words x_k, y_k, y, z used to write down the inverse of alpha_n.

    All words are over the original basis a1..an.
    """

    n: int
    x_words: Tuple[Word, ...]
    y_words: Tuple[Word, ...]
    y_word: Word
    z_word: Word

    def in_basis(self, change: "BasisChange") -> "InverseScaffold":
        return InverseScaffold(
            self.n,
            tuple(change.apply(w) for w in self.x_words),
            tuple(change.apply(w) for w in self.y_words),
            change.apply(self.y_word),
            change.apply(self.z_word),
        )

    def all_words(self) -> Dict[str, Word]:
        named: Dict[str, Word] = {f"x{k}": w for k, w in enumerate(self.x_words)}
        named.update({f"y{k}": w for k, w in enumerate(self.y_words)})
        named["y"] = self.y_word
        named["z"] = self.z_word
        return named

    def identities(self, alpha: Automorphism) -> Dict[str, bool]:
        """alpha(x_k) = (a1 ... a(n-k))^-1 and alpha(a(n-k) x_k) = a(n-k)."""
        basis = alpha.basis
        n = self.n
        checks: Dict[str, bool] = {}
        for k, x_k in enumerate(self.x_words):
            head = W.reduce(basis, (Letter(i, 1) for i in range(n - k)))
            checks[f"alpha(x{k}) = (a1..a{n - k})^-1"] = apply(alpha, x_k) == W.invert(head)
            if k <= n - 2:
                gen = basis.generator(n - k - 1)
                checks[f"alpha(a{n - k} x{k}) = a{n - k}"] = apply(alpha, W.concat(gen, x_k)) == gen
        return checks


def _scaffold(n: int) -> InverseScaffold:
    basis = Basis.standard(n)
    x0 = W.invert(basis.generator(0))
    xs = [x0]
    for k in range(n - 1):
        # x(k+1) = a(n-k) xk xk
        xs.append(W.product(basis, (basis.generator(n - k - 1), xs[k], xs[k])))
    x_last = xs[n - 1]
    x0_inv = W.invert(x0)
    ys = tuple(W.product(basis, (x_last, W.invert(xs[k]), x0_inv)) for k in range(n - 1))
    y = W.concat(x_last, x0_inv)
    tail = [W.invert(basis.generator(i)) for i in range(n - 1, 0, -1)]
    z = W.product(basis, [x0_inv] + tail + [x_last])
    return InverseScaffold(n, tuple(xs), ys, y, z)


def make_alpha(n: int) -> Automorphism:
    if n < 2:
        raise InputError(f"the family needs n >= 2, got {n}")
    basis = Basis.standard(n)
    inverse, _ = make_alpha_inverse(n)
    return Automorphism(basis, alpha_images(basis), inverse.images, name=f"alpha_{n}")


def make_alpha_inverse(n: int) -> Tuple[Automorphism, InverseScaffold]:
    """alpha_n^-1: a1 -> x(n-1)^-1, a(n-k) -> a(n-k) xk for k = 0..n-2."""
    if n < 2:
        raise InputError(f"the family needs n >= 2, got {n}")
    scaffold = _scaffold(n)
    basis = Basis.standard(n)
    images: List[Word] = [W.invert(scaffold.x_words[n - 1])]
    for i in range(1, n):
        k = n - 1 - i
        images.append(W.concat(basis.generator(i), scaffold.x_words[k]))
    inverse = Automorphism(basis, tuple(images), alpha_images(basis), name=f"alpha_{n}^-1")
    return inverse, scaffold


# -- basis changes ------------------------------------------------------------


@dataclass(frozen=True)
class BasisChange:
    """New generators b_i = a_i^(signs[i]); flipped generators get new labels."""

    old: Basis
    signs: Tuple[int, ...]
    new: Basis

    @classmethod
    def flipping(cls, old: Basis, flipped: Sequence[int]) -> "BasisChange":
        signs = tuple(-1 if i in flipped else 1 for i in range(old.rank))
        names = list(old.names)
        for i in flipped:
            label = f"x{i}"
            if label in old.names or label in names:
                label = f"{old.names[i]}inv"
            names[i] = label
        return cls(old, signs, Basis(tuple(names)))

    def is_identity(self) -> bool:
        return all(s > 0 for s in self.signs)

    @property
    def flipped(self) -> Tuple[int, ...]:
        return tuple(i for i, s in enumerate(self.signs) if s < 0)

    @property
    def old_in_new(self) -> Tuple[Word, ...]:
        return tuple(W.reduce(self.new, [Letter(i, s)]) for i, s in enumerate(self.signs))

    @property
    def new_in_old(self) -> Tuple[Word, ...]:
        return tuple(W.reduce(self.old, [Letter(i, s)]) for i, s in enumerate(self.signs))

    def apply(self, w: Word) -> Word:
        return W.change_basis(w, self.old_in_new, self.new_in_old)

    def revert(self, w: Word) -> Word:
        return W.change_basis(w, self.new_in_old, self.old_in_new)

    def conjugate(self, f: Automorphism) -> Automorphism:
        """The same automorphism written over the new basis."""
        if f.basis != self.old:
            raise BasisMismatchError("basis change does not start at the automorphism basis")
        images = tuple(self.apply(apply(f, w)) for w in self.new_in_old)
        witness = None
        if f.inverse_witness is not None:
            inverse = f.inverse()
            witness = tuple(self.apply(apply(inverse, w)) for w in self.new_in_old)
        return Automorphism(self.new, images, witness, name=f.name)

    def describe(self) -> str:
        if self.is_identity():
            return "identity"
        return ", ".join(f"{self.old.names[i]} -> {self.new.names[i]}^-1" for i in self.flipped)


def inverse_family_basis(n: int) -> BasisChange:
    """{x0, a2, ..., an} with x0 = a1^-1."""
    return BasisChange.flipping(Basis.standard(n), [0])


def positivity_basis(f: Automorphism) -> Optional[BasisChange]:
    """Search generator sign flips (fewest flips first) making every image positive."""
    n = f.rank
    for count in range(n + 1):
        for flipped in itertools.combinations(range(n), count):
            change = BasisChange.flipping(f.basis, flipped)
            if change.conjugate(f).is_positive():
                logger.debug("positive basis for %s: %s", f.name or "automorphism", change.describe())
                return change
    return None


def positive_representative(f: Automorphism) -> Tuple[Automorphism, BasisChange]:
    change = positivity_basis(f)
    if change is None:
        raise InputError("no generator sign flip makes this automorphism positive")
    return change.conjugate(f), change


# -- text and json ------------------------------------------------------------


def parse_automorphism(text: str, name: str = "") -> Automorphism:
    """Parse lines "a1 -> a1 a2 a3"; the left-hand sides define the basis order."""
    rows: List[Tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "->" not in line:
            raise InputError(f"line {lineno}: expected 'generator -> image', got {raw!r}")
        lhs, rhs = line.split("->", 1)
        rows.append((lhs.strip(), rhs.strip()))
    if not rows:
        raise InputError("automorphism table is empty")
    basis = Basis(tuple(lhs for lhs, _ in rows))
    images = tuple(W.parse_word(basis, rhs) for _, rhs in rows)
    return Automorphism(basis, images, name=name)


def format_automorphism(f: Automorphism) -> str:
    return "\n".join(
        f"{label} -> {W.format_word(image)}" for label, image in zip(f.basis.names, f.images)
    )


def to_json(f: Automorphism) -> Dict[str, object]:
    return {
        "basis": list(f.basis.names),
        "images": [[f.basis.label(letter) for letter in image.letters] for image in f.images],
    }
