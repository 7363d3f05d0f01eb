"""Fiber diffeomorphism pair on the circle and its semigroup orbits.

The pair is g1(y) = y - beta*sin(2*pi*y), a north-south map with
attractor 0 and repeller 1/2, and g2(y) = y + alpha, a rotation.
Words over {1, 2} act with the rightmost letter first, so
apply(w + v) = apply(w) ∘ apply(v).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, SearchExhaustedError
from .geometry import Arc, dist_circle, reduce_coords

TWO_PI = 2.0 * np.pi

Word = tuple[int, ...]


@dataclass(frozen=True)
class IfsPair:
    """Generators {g1, g2} with marked fixed points of g1.

    beta = 0 or alpha = 0 are allowed as degenerate controls (the
    resulting system is not minimal); a proper pair needs
    0 < beta < 1/(2*pi) so that g1 is an orientation-preserving
    diffeomorphism, and an irrational-like alpha.
    """

    beta: float = 0.1
    alpha: float = (np.sqrt(5.0) - 1.0) / 2.0

    a1: float = 0.0  # attracting fixed point of g1
    r1: float = 0.5  # repelling fixed point of g1

    def __post_init__(self):
        if not 0.0 <= self.beta < 1.0 / TWO_PI:
            raise ParameterError(f"beta must lie in [0, 1/(2*pi)), got {self.beta}")
        if not 0.0 <= self.alpha < 1.0:
            raise ParameterError(f"alpha must lie in [0, 1), got {self.alpha}")

    @property
    def rotation_rep(self) -> float:
        """Representative of alpha in (-1/2, 1/2]: the lifted displacement of g2."""
        return self.alpha - 1.0 if self.alpha > 0.5 else self.alpha

    @property
    def degenerate(self) -> bool:
        return self.beta == 0.0 or self.alpha == 0.0

    def g1(self, y):
        return reduce_coords(np.asarray(y, dtype=float) - self.beta * np.sin(TWO_PI * np.asarray(y, dtype=float)))

    def g1_deriv(self, y):
        return 1.0 - TWO_PI * self.beta * np.cos(TWO_PI * np.asarray(y, dtype=float))

    def g2(self, y):
        return reduce_coords(np.asarray(y, dtype=float) + self.alpha)

    def apply_letter(self, letter: int, y):
        if letter == 1:
            return self.g1(y)
        if letter == 2:
            return self.g2(y)
        raise ParameterError(f"letters must be 1 or 2, got {letter}")


def ifs_apply(pair: IfsPair, word: Word, y):
    """Apply a word to y, rightmost letter acting first."""
    out = reduce_coords(np.asarray(y, dtype=float))
    for letter in reversed(word):
        out = pair.apply_letter(letter, out)
    return out


@dataclass(frozen=True)
class MinimalityReport:
    dense: bool
    word_depth: int
    uncovered_cells: tuple[tuple[float, float], ...]
    eps: float


def _cell_index(y, ncells):
    return np.minimum((np.asarray(y, dtype=float) * ncells).astype(int), ncells - 1)


def minimality_check(
    pair: IfsPair, start: float, eps: float, max_depth: int = 60
) -> MinimalityReport:
    """Breadth-first orbit enumeration pruned to one point per eps/4 bucket.

    dense=True once every eps-cell of the circle holds an orbit point;
    running out of depth is a negative report, not an exception.
    """
    if eps <= 0:
        raise ParameterError("eps must be positive")
    ncells = int(np.ceil(1.0 / eps))
    nbuckets = int(np.ceil(4.0 / eps))
    hit = np.zeros(ncells, dtype=bool)
    seen = np.zeros(nbuckets, dtype=bool)

    front = np.atleast_1d(reduce_coords(start))
    hit[_cell_index(front, ncells)] = True
    seen[_cell_index(front, nbuckets)] = True
    depth = 0
    while not hit.all() and depth < max_depth:
        depth += 1
        if front.size == 0:
            break
        new = np.concatenate([pair.g1(front), pair.g2(front)])
        buckets = _cell_index(new, nbuckets)
        uniq, idx = np.unique(buckets, return_index=True)
        fresh = ~seen[uniq]
        seen[uniq[fresh]] = True
        front = new[idx[fresh]]
        hit[_cell_index(front, ncells)] = True
    dense = bool(hit.all())
    uncovered = tuple(
        (i / ncells, (i + 1) / ncells) for i in np.nonzero(~hit)[0]
    )
    return MinimalityReport(dense=dense, word_depth=depth, uncovered_cells=uncovered, eps=eps)


def branch_to_target(
    pair: IfsPair, start: float, target: Arc, max_depth: int = 60
) -> Word:
    """Shortest word (breadth-first) sending `start` into the open target arc.

    Membership is tested on every generated point before pruning, so the
    eps/4-style bucket pruning only limits which points get expanded.
    The returned word is validated by re-application before returning.
    """
    start = float(reduce_coords(start))
    if target.contains(start):
        return ()
    nbuckets = max(int(np.ceil(4.0 / target.half_width)), 64)
    seen = np.zeros(nbuckets, dtype=bool)
    seen[_cell_index(np.array([start]), nbuckets)] = True

    fronts = [np.array([start])]
    parents = [np.array([-1])]
    letters = [np.array([0])]

    def reconstruct(depth: int, idx: int) -> Word:
        word: list[int] = []
        d, i = depth, idx
        while d > 0:
            word.append(int(letters[d][i]))
            i = int(parents[d][i])
            d -= 1
        return tuple(word)  # leftmost letter = last applied

    for depth in range(1, max_depth + 1):
        prev = fronts[depth - 1]
        if prev.size == 0:
            break
        new = np.concatenate([pair.g1(prev), pair.g2(prev)])
        par = np.concatenate([np.arange(prev.size), np.arange(prev.size)])
        let = np.concatenate([np.full(prev.size, 1), np.full(prev.size, 2)])
        inside = np.asarray(target.contains(new))
        if inside.any():
            i = int(np.nonzero(inside)[0][0])
            fronts.append(new)
            parents.append(par)
            letters.append(let)
            word = reconstruct(depth, i)
            landed = ifs_apply(pair, word, start)
            assert target.contains(landed), "branch search produced a non-landing word"
            return word
        buckets = _cell_index(new, nbuckets)
        uniq, idx = np.unique(buckets, return_index=True)
        fresh = ~seen[uniq]
        seen[uniq[fresh]] = True
        keep = idx[fresh]
        fronts.append(new[keep])
        parents.append(par[keep])
        letters.append(let[keep])
    raise SearchExhaustedError(
        f"no branch into Arc(center={target.center}, hw={target.half_width}) "
        f"within depth {max_depth}"
    )
