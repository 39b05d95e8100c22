"""Free-group words over signed integer letters and word metrics.

A letter is a nonzero int; -k is the inverse of k. Elements are freely
reduced tuples of letters, so equality of elements is equality of tuples.
"""

import logging
import math
from collections.abc import Iterable, Mapping
from dataclasses import dataclass

from enflo.config import DEFAULTS
from enflo.errors import EnfloError

logger = logging.getLogger(__name__)


class InsufficientBallError(EnfloError):
    """A Cayley ball is empty or too small for the requested table."""

    pass


def _multiply(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """Product of two reduced words (cancellation only at the seam)."""
    k = 0
    limit = min(len(a), len(b))
    while k < limit and a[-1 - k] == -b[k]:
        k += 1
    return a[: len(a) - k] + b[k:]


@dataclass(frozen=True, order=True)
class GroupElement:
    """A freely reduced word; the empty word is the identity."""

    letters: tuple[int, ...] = ()

    def __post_init__(self):
        for i, letter in enumerate(self.letters):
            if letter == 0:
                raise ValueError("0 is not a letter")
            if i and self.letters[i - 1] == -letter:
                raise ValueError(f"word {self.letters} is not freely reduced")

    @classmethod
    def identity(cls) -> "GroupElement":
        return cls()

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def inverse(self) -> "GroupElement":
        return GroupElement(tuple(-x for x in reversed(self.letters)))

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(_multiply(self.letters, other.letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(f"e{x}" if x > 0 else f"e{-x}^-1" for x in self.letters)


def free_reduce(word: Iterable[int]) -> GroupElement:
    """Cancel adjacent letter-inverse pairs until none remain."""
    stack: list[int] = []
    for letter in word:
        if letter == 0:
            raise ValueError("0 is not a letter")
        if stack and stack[-1] == -letter:
            stack.pop()
        else:
            stack.append(letter)
    return GroupElement(tuple(stack))


def _symmetric(generators: Iterable[GroupElement]) -> list[tuple[int, ...]]:
    """Distinct non-identity generators and their inverses, in a fixed order."""
    seen: dict[tuple[int, ...], None] = {}
    for g in generators:
        for h in (g, g.inverse()):
            if h.letters:
                seen.setdefault(h.letters, None)
    return list(seen)


class WordMetric:
    """Word lengths in the free group with respect to a finite generating set.

    A ball around the identity is grown once and cached (up to ``max_ball``
    elements). Longer elements are found by searching backwards from the
    target, layer by layer, until the search meets the cached ball.
    """

    def __init__(
        self,
        generators: Iterable[GroupElement],
        max_ball: int = DEFAULTS["budgets"]["max_ball"],
    ):
        self.generators = _symmetric(generators)
        self.max_ball = max_ball
        self.longest = max((len(g) for g in self.generators), default=1)
        self._ball: dict[tuple[int, ...], int] = {(): 0}
        self._frontier: list[tuple[int, ...]] = [()]
        self.radius = 0
        self._complete = not self.generators
        self._grow()

    def _grow(self) -> None:
        while not self._complete:
            if len(self._ball) + len(self._frontier) * len(self.generators) > self.max_ball:
                break
            nxt = []
            for x in self._frontier:
                for s in self.generators:
                    y = _multiply(x, s)
                    if y not in self._ball:
                        self._ball[y] = self.radius + 1
                        nxt.append(y)
            self.radius += 1
            self._frontier = nxt
            if not nxt:
                self._complete = True
        logger.debug("cached ball: radius %d, %d elements", self.radius, len(self._ball))

    def length(self, g: GroupElement, budget: int) -> int | None:
        """Shortest product of generators equal to g, or None if longer than budget.

        None also means the backward search outgrew max_ball before deciding.
        """
        target = g.letters
        if target in self._ball:
            n = self._ball[target]
            return n if n <= budget else None
        if self._complete or self.radius >= budget:
            return None

        # length(g) > radius; the first backward layer j that meets the
        # ball does so in elements of length exactly radius.
        seen = {target}
        layer = [target]
        j = 0
        while layer and self.radius + j < budget:
            j += 1
            nxt = []
            for x in layer:
                for s in self.generators:
                    y = _multiply(x, s)
                    if y in self._ball:
                        return self.radius + j
                    if y in seen:
                        continue
                    if j + math.ceil(len(y) / self.longest) > budget:
                        continue
                    seen.add(y)
                    nxt.append(y)
            if len(seen) > self.max_ball:
                logger.debug("backward search from %s exceeded %d elements", g, self.max_ball)
                return None
            layer = nxt
        return None


def word_length(
    generators: Iterable[GroupElement],
    g: GroupElement,
    budget: int,
    max_ball: int = DEFAULTS["budgets"]["max_ball"],
) -> int | None:
    """One-off word length; build a WordMetric to answer many queries."""
    return WordMetric(generators, max_ball).length(g, budget)


def cayley_ball(generators: Iterable[GroupElement], radius: int) -> dict[GroupElement, int]:
    """Every element of word length <= radius, with its length."""
    gens = _symmetric(generators)
    ball: dict[tuple[int, ...], int] = {(): 0}
    frontier = [()]
    for r in range(1, radius + 1):
        nxt = []
        for x in frontier:
            for s in gens:
                y = _multiply(x, s)
                if y not in ball:
                    ball[y] = r
                    nxt.append(y)
        frontier = nxt
    return {GroupElement(x): n for x, n in ball.items()}


def subgroup_distortion(
    ball_s: Mapping[GroupElement, int],
    ball_t: Mapping[GroupElement, int],
    t_max: int,
) -> dict[int, int]:
    """rho1(t) = min{|w|_T : |w|_S >= t} for t = 1..t_max, over the S-ball.

    Only elements of the finite S-ball are searched, so each value can only
    over-estimate the true modulus.

    Raises:
        InsufficientBallError: If a ball is empty, the S-ball does not reach
            t_max, or the T-ball misses elements of the S-ball.
    """
    if not ball_s or not ball_t:
        raise InsufficientBallError("empty Cayley ball")
    radius = max(ball_s.values())
    if t_max > radius:
        raise InsufficientBallError(f"S-ball radius {radius} is below t_max={t_max}")
    missing = [w for w in ball_s if w not in ball_t]
    if missing:
        raise InsufficientBallError(
            f"T-ball misses {len(missing)} elements of the S-ball, e.g. {missing[0]}"
        )
    table = {}
    for t in range(1, t_max + 1):
        table[t] = min(ball_t[w] for w, n in ball_s.items() if n >= t)
    return table
