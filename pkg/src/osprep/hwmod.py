"""Depth-truncated Verma modules and their irreducible quotients.

Module elements are exact sparse combinations of PBW-ordered lowering
words applied to a formal highest weight vector.  The engine straightens
arbitrary products into the fixed PBW order using the bracket tables of
the matrix realization, raises with positive root vectors, and evaluates
the contravariant form

    (f v+, g v+) = (v+, tau(f) g v+),        (v+, v+) = 1,

whose per-weight Gram ranks are the weight multiplicities of the
irreducible quotient.  Everything is rational: the section-2 Chevalley
basis has rational structure constants.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .exactfield import Rat
from .linalg import row_reduce
from .matreal import StructureTable, structure_table
from .weights import Context, Weight

__all__ = [
    "VermaEngine",
    "TruncationError",
    "tau",
    "verma_basis",
    "gram",
    "TruncatedModule",
    "irreducible",
]

Word = Tuple[int, ...]  # positive-root indices, non-decreasing in PBW position
Vec = Dict[Word, Rat]


class TruncationError(ValueError):
    """A lowering left the depth window; never silently dropped."""


def tau(word: Word, parities: Sequence[int]) -> Tuple[int, Word]:
    """Anti-involution on a lowering word: reversed raising word and sign.

    tau(Y_a g) = (-1)^{|a||g|} tau(g) X_a accumulates one sign per odd
    pair, i.e. (-1) to the number of unordered odd pairs in the word.
    """
    odd = sum(1 for i in word if parities[i])
    sign = -1 if (odd * (odd - 1) // 2) % 2 else 1
    return sign, tuple(reversed(word))


class VermaEngine:
    """Verma-module arithmetic for one highest weight at one depth."""

    def __init__(self, lam: Weight, depth: int, ctx: Context,
                 convention: str = "nonstandard",
                 order: Optional[Sequence[int]] = None):
        if depth < 0:
            raise ValueError("depth must be non-negative")
        self.lam = lam
        self.depth = depth
        self.ctx = ctx
        self.table: StructureTable = structure_table(ctx, convention)
        n = len(self.table.positive)
        self.parity = [r.parity for r in self.table.positive]
        self.heights = list(self.table.heights)
        self.roots = [r.weight for r in self.table.positive]
        order = list(order) if order is not None else list(range(n))
        if sorted(order) != list(range(n)):
            raise ValueError("order must be a permutation of the positive roots")
        self.pos = [0] * n
        for rank, idx in enumerate(order):
            self.pos[idx] = rank
        self.order = order
        self._straight: Dict[Word, Vec] = {}
        self._raise: Dict[Tuple[int, Word], Vec] = {}
        self._form: Dict[Tuple[Word, Word], Rat] = {}
        self._drop: Dict[Word, Weight] = {(): Weight.zero(ctx)}
        self._wbw: Optional[Dict[tuple, List[Word]]] = None

    # -- bookkeeping -----------------------------------------------------

    def word_height(self, word: Word) -> int:
        return sum(self.heights[i] for i in word)

    def word_drop(self, word: Word) -> Weight:
        got = self._drop.get(word)
        if got is None:
            got = self.roots[word[0]] + self.word_drop(word[1:])
            self._drop[word] = got
        return got

    def word_weight(self, word: Word) -> Weight:
        return self.lam - self.word_drop(word)

    def word_parity(self, word: Word) -> int:
        return sum(self.parity[i] for i in word) % 2

    # -- straightening ----------------------------------------------------

    def straighten(self, seq: Word) -> Vec:
        """Expand an arbitrary product of lowering operators in PBW words."""
        got = self._straight.get(seq)
        if got is not None:
            return got
        pos = self.pos
        bad = -1
        for p in range(len(seq) - 1):
            a, b = seq[p], seq[p + 1]
            if pos[a] > pos[b] or (a == b and self.parity[a]):
                bad = p
                break
        if bad < 0:
            out = {seq: Rat(1)}
            self._straight[seq] = out
            return out
        a, b = seq[bad], seq[bad + 1]
        out: Vec = {}

        def accumulate(sub: Vec, c):
            for w, cw in sub.items():
                new = out.get(w, 0) + c * cw
                if new:
                    out[w] = new
                else:
                    out.pop(w, None)

        if a == b:
            # odd square: Y_a^2 = [Y_a, Y_a] / 2
            br = self.table.yy[a][a]
            if br is not None:
                cidx, coeff = br
                accumulate(self.straighten(seq[:bad] + (cidx,) + seq[bad + 2:]),
                           coeff / 2)
        else:
            sign = -1 if self.parity[a] and self.parity[b] else 1
            accumulate(self.straighten(seq[:bad] + (b, a) + seq[bad + 2:]), sign)
            br = self.table.yy[a][b]
            if br is not None:
                cidx, coeff = br
                accumulate(self.straighten(seq[:bad] + (cidx,) + seq[bad + 2:]),
                           coeff)
        self._straight[seq] = out
        return out

    # -- actions -----------------------------------------------------------

    def act_lower(self, root_idx: int, vec: Vec, check_depth: bool = True) -> Vec:
        """Left-multiply by the negative root vector Y at root_idx."""
        out: Vec = {}
        for word, c in vec.items():
            if check_depth and self.word_height(word) + self.heights[root_idx] > self.depth:
                raise TruncationError(
                    f"lowering by root {root_idx} exceeds depth {self.depth}")
            for w2, c2 in self.straighten((root_idx,) + word).items():
                new = out.get(w2, 0) + c * c2
                if new:
                    out[w2] = new
                else:
                    out.pop(w2, None)
        return out

    def _raise_word(self, g: int, word: Word) -> Vec:
        key = (g, word)
        got = self._raise.get(key)
        if got is not None:
            return got
        out: Vec = {}
        if word:
            b = word[0]
            rest = word[1:]

            def accumulate(w, c):
                new = out.get(w, 0) + c
                if new:
                    out[w] = new
                else:
                    out.pop(w, None)

            # commute X_g past Y_b
            sign = -1 if self.parity[g] and self.parity[b] else 1
            for w2, c2 in self._raise_word(g, rest).items():
                for w3, c3 in self.straighten((b,) + w2).items():
                    accumulate(w3, sign * c2 * c3)
            br = self.table.xy[g][b]
            if br is not None:
                if br[0] == "H":
                    hmat = br[1]
                    val = hmat.weight_eval(self.lam - self.word_drop(rest))
                    if val:
                        accumulate(rest, val)
                elif br[0] == "X":
                    _, idx, coeff = br
                    for w2, c2 in self._raise_word(idx, rest).items():
                        accumulate(w2, coeff * c2)
                else:
                    _, idx, coeff = br
                    for w3, c3 in self.straighten((idx,) + rest).items():
                        accumulate(w3, coeff * c3)
        self._raise[key] = out
        return out

    def act_raise(self, root_idx: int, vec: Vec) -> Vec:
        """Left-multiply by the positive root vector X at root_idx."""
        out: Vec = {}
        for word, c in vec.items():
            for w2, c2 in self._raise_word(root_idx, word).items():
                new = out.get(w2, 0) + c * c2
                if new:
                    out[w2] = new
                else:
                    out.pop(w2, None)
        return out

    # -- contravariant form -------------------------------------------------

    def form_words(self, w1: Word, w2: Word) -> Rat:
        """(w1 v+, w2 v+); zero unless the weight drops agree."""
        if not w1:
            return Rat(1) if not w2 else Rat(0)
        key = (w1, w2)
        got = self._form.get(key)
        if got is not None:
            return got
        a = w1[0]
        rest = w1[1:]
        sign = -1 if self.parity[a] and self.word_parity(rest) else 1
        acc = Rat(0)
        for w3, c in self._raise_word(a, w2).items():
            acc += c * self.form_words(rest, w3)
        acc *= sign
        self._form[key] = acc
        return acc

    def form(self, u: Vec, v: Vec) -> Rat:
        acc = Rat(0)
        for w1, c1 in u.items():
            for w2, c2 in v.items():
                acc += c1 * c2 * self.form_words(w1, w2)
        return acc

    # -- bases ---------------------------------------------------------------

    def words_by_weight(self) -> Dict[tuple, List[Word]]:
        """All PBW words of height <= depth, grouped by their weight."""
        if getattr(self, "_wbw", None) is not None:
            return self._wbw
        n = len(self.roots)
        seq = sorted(range(n), key=lambda i: self.pos[i])
        out: Dict[tuple, List[Word]] = {}

        def rec(start: int, budget: int, word: Tuple[int, ...]):
            out.setdefault(self.word_weight(word).key(), []).append(word)
            for si in range(start, n):
                idx = seq[si]
                h = self.heights[idx]
                if h > budget:
                    continue
                # odd root vectors square to brackets, exponent <= 1
                rec(si + 1 if self.parity[idx] else si, budget - h,
                    word + (idx,))

        rec(0, self.depth, ())
        for key in out:
            out[key].sort()
        self._wbw = out
        return out

    def gram_at(self, nu: Weight) -> Tuple[List[Word], List[List[Rat]]]:
        words = [w for w in self.words_by_weight().get(nu.key(), [])]
        mat = [[Rat(0)] * len(words) for _ in words]
        for i, wi in enumerate(words):
            for j in range(i, len(words)):
                val = self.form_words(wi, words[j])
                mat[i][j] = val
                mat[j][i] = val
        return words, mat


def verma_basis(lam: Weight, depth: int, ctx: Context,
                convention: str = "nonstandard") -> Dict[tuple, List[Word]]:
    """Per-weight PBW word lists of the depth-truncated Verma module."""
    return VermaEngine(lam, depth, ctx, convention).words_by_weight()


def gram(lam: Weight, nu: Weight, depth: int, ctx: Context,
         convention: str = "nonstandard"):
    """Contravariant Gram matrix on the Verma weight space nu."""
    eng = VermaEngine(lam, depth, ctx, convention)
    return eng.gram_at(nu)[1]


@dataclass
class WeightSpace:
    words: List[Word]
    gram: List[List[Rat]]
    rank: int
    basis: List[Word]          # maximal subset with invertible Gram minor
    basis_gram: List[List[Rat]]


@dataclass
class TruncatedModule:
    """Irreducible quotient data: per-weight bases and Gram ranks."""

    lam: Weight
    ctx: Context
    convention: str
    depth: int
    engine: VermaEngine
    spaces: Dict[tuple, WeightSpace]
    weight_of_key: Dict[tuple, Weight]
    closed: bool
    closing_height: Optional[int]

    def mult(self, nu: Weight) -> int:
        sp = self.spaces.get(nu.key())
        return sp.rank if sp else 0

    def multiplicities(self) -> Dict[tuple, int]:
        return {k: sp.rank for k, sp in self.spaces.items() if sp.rank}

    def total_dim(self) -> int:
        return sum(sp.rank for sp in self.spaces.values())

    def weights(self) -> List[Weight]:
        return [self.weight_of_key[k] for k, sp in self.spaces.items() if sp.rank]


def irreducible(lam: Weight, depth: int, ctx: Context,
                convention: str = "nonstandard",
                order: Optional[Sequence[int]] = None) -> TruncatedModule:
    """Per-weight Gram ranks of the irreducible quotient, to the depth.

    The module is declared finite dimensional when some height layer
    inside the window carries all-zero Gram rank (weight strings of a
    highest weight module cannot resume after a full silent layer); the
    first such height is recorded.
    """
    eng = VermaEngine(lam, depth, ctx, convention, order=order)
    by_weight = eng.words_by_weight()
    spaces: Dict[tuple, WeightSpace] = {}
    weight_of_key: Dict[tuple, Weight] = {}
    rank_by_height: Dict[int, int] = {h: 0 for h in range(depth + 1)}
    for key, words in by_weight.items():
        weight_of_key[key] = eng.word_weight(words[0])
        mat = [[Rat(0)] * len(words) for _ in words]
        for i, wi in enumerate(words):
            for j in range(i, len(words)):
                val = eng.form_words(wi, words[j])
                mat[i][j] = val
                mat[j][i] = val
        work = [row[:] for row in mat]
        pivots = row_reduce(work)
        basis = [words[c] for c in pivots]
        bg = [[mat[i][j] for j in pivots] for i in pivots]
        sp = WeightSpace(words, mat, len(pivots), basis, bg)
        spaces[key] = sp
        rank_by_height[eng.word_height(words[0])] += sp.rank
    closed = False
    closing = None
    for h in range(1, depth + 1):
        if rank_by_height.get(h, 0) == 0:
            closed = True
            closing = h
            break
    return TruncatedModule(lam, ctx, convention, depth, eng, spaces,
                           weight_of_key, closed, closing)
