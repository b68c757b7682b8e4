"""Root data for osp(m|2n) in two conventions, plus odd reflections.

The "nonstandard" convention takes eps_j - delta_i as positive odd roots
(the system all computations run in); the "standard" one takes
delta_i - eps_j instead.  Only the odd positive roots differ.  Moving a
highest-weight label from one convention to the other folds the odd
reflection rule over the fixed root sequence

    eps_d - delta_1, ..., eps_d - delta_n, eps_{d-1} - delta_1, ..., eps_1 - delta_n,

one root at a time: the label drops by the root when its inner product
with the root is nonzero, and is untouched otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import List, Tuple

from .exactfield import Rat
from .weights import Context, Weight, dominance_checks, inner, nu

__all__ = [
    "Root",
    "RootSystem",
    "build",
    "odd_reflection_sequence",
    "reflect_weight",
    "to_standard",
    "to_nonstandard",
    "theorem3_standard_label",
]

EVEN, ODD = 0, 1


@dataclass(frozen=True)
class Root:
    weight: Weight
    parity: int  # 0 even, 1 odd

    def __str__(self) -> str:
        return f"{self.weight}({'odd' if self.parity else 'even'})"


def _eps(ctx, j):
    return Weight.eps_basis(ctx, j)


def _delta(ctx, i):
    return Weight.delta_basis(ctx, i)


def _even_positive(ctx: Context) -> List[Root]:
    d, n, m = ctx.d, ctx.n, ctx.m
    roots = []
    for j in range(1, d + 1):
        for k in range(j + 1, d + 1):
            roots.append(Root(_eps(ctx, j) - _eps(ctx, k), EVEN))
            roots.append(Root(_eps(ctx, j) + _eps(ctx, k), EVEN))
    if m % 2 == 1:
        for j in range(1, d + 1):
            roots.append(Root(_eps(ctx, j), EVEN))
    for i in range(1, n + 1):
        for k in range(i + 1, n + 1):
            roots.append(Root(_delta(ctx, i) - _delta(ctx, k), EVEN))
            roots.append(Root(_delta(ctx, i) + _delta(ctx, k), EVEN))
        roots.append(Root(_delta(ctx, i).scale(2), EVEN))
    return roots


def _odd_positive(ctx: Context, convention: str) -> List[Root]:
    d, n, m = ctx.d, ctx.n, ctx.m
    roots = []
    for j in range(1, d + 1):
        for i in range(1, n + 1):
            if convention == "nonstandard":
                roots.append(Root(_eps(ctx, j) - _delta(ctx, i), ODD))
            else:
                roots.append(Root(_delta(ctx, i) - _eps(ctx, j), ODD))
            roots.append(Root(_eps(ctx, j) + _delta(ctx, i), ODD))
    if m % 2 == 1:
        for i in range(1, n + 1):
            roots.append(Root(_delta(ctx, i), ODD))
    return roots


def _simple_nonstandard(ctx: Context) -> List[Root]:
    d, n, m = ctx.d, ctx.n, ctx.m
    simple = []
    for j in range(1, d):
        simple.append(Root(_eps(ctx, j) - _eps(ctx, j + 1), EVEN))
    if d >= 1:
        simple.append(Root(_eps(ctx, d) - _delta(ctx, 1), ODD))
    for i in range(1, n):
        simple.append(Root(_delta(ctx, i) - _delta(ctx, i + 1), EVEN))
    if m % 2 == 1:
        simple.append(Root(_delta(ctx, n), ODD))
    else:
        simple.append(Root(_delta(ctx, n).scale(2), EVEN))
    return simple


def _simple_standard(ctx: Context) -> List[Root]:
    d, n, m = ctx.d, ctx.n, ctx.m
    if d == 0:
        return _simple_nonstandard(ctx)
    simple = []
    for i in range(1, n):
        simple.append(Root(_delta(ctx, i) - _delta(ctx, i + 1), EVEN))
    simple.append(Root(_delta(ctx, n) - _eps(ctx, 1), ODD))
    for j in range(1, d):
        simple.append(Root(_eps(ctx, j) - _eps(ctx, j + 1), EVEN))
    if m % 2 == 1:
        simple.append(Root(_eps(ctx, d), EVEN))
    elif d >= 2:
        simple.append(Root(_eps(ctx, d - 1) + _eps(ctx, d), EVEN))
    else:
        # osp(2|2n): the flipped system keeps delta_n + eps_1 as last simple root
        simple.append(Root(_delta(ctx, n) + _eps(ctx, 1), ODD))
    return simple


class RootSystem:
    """Simple and positive roots of osp(m|2n) in one convention."""

    def __init__(self, ctx: Context, convention: str):
        if convention not in ("nonstandard", "standard"):
            raise ValueError(f"unknown convention {convention!r}")
        if ctx.n < 1:
            raise ValueError("root systems here require n >= 1")
        self.ctx = ctx
        self.convention = convention
        if convention == "nonstandard":
            self.simple = tuple(_simple_nonstandard(ctx))
        else:
            self.simple = tuple(_simple_standard(ctx))
        pos = _even_positive(ctx) + _odd_positive(ctx, convention)
        self._coord_cache = {}
        self._prepare_coordinate_solver()
        self.positive = tuple(sorted(pos, key=self.root_sort_key))

    # -- simple-root coordinates -----------------------------------------

    def _prepare_coordinate_solver(self):
        # Invert the (d+n) x (d+n) matrix of simple-root coordinates once.
        rank = self.ctx.rank
        cols = [list(r.weight.eps) + list(r.weight.delta) for r in self.simple]
        aug = [[cols[j][i] for j in range(rank)] + [Rat(1) if k == i else Rat(0) for k in range(rank)]
               for i in range(rank)]
        for col in range(rank):
            piv = next(r for r in range(col, rank) if aug[r][col])
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = 1 / aug[col][col]
            aug[col] = [x * inv for x in aug[col]]
            for r in range(rank):
                if r != col and aug[r][col]:
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        self._inv = [row[rank:] for row in aug]

    def simple_coordinates(self, w: Weight) -> Tuple[Rat, ...]:
        """Coordinates of a weight in the simple-root basis."""
        key = w.key()
        got = self._coord_cache.get(key)
        if got is None:
            vec = list(w.eps) + list(w.delta)
            got = tuple(sum(self._inv[i][k] * vec[k] for k in range(len(vec)))
                        for i in range(len(vec)))
            self._coord_cache[key] = got
        return got

    def height(self, w: Weight) -> Rat:
        return sum(self.simple_coordinates(w), Rat(0))

    def root_sort_key(self, root: Root):
        return (self.height(root.weight), root.weight.key())

    def find_root(self, w: Weight) -> Root | None:
        for r in self.positive:
            if r.weight == w:
                return r
        return None


@lru_cache(maxsize=None)
def build(ctx: Context, convention: str = "nonstandard") -> RootSystem:
    return RootSystem(ctx, convention)


def odd_reflection_sequence(ctx: Context) -> List[Root]:
    """The d*n odd roots eps_j - delta_i ordered as in the reflection chain
    (j runs d down to 1, i runs 1 up to n inside each j)."""
    out = []
    for j in range(ctx.d, 0, -1):
        for i in range(1, ctx.n + 1):
            out.append(Root(_eps(ctx, j) - _delta(ctx, i), ODD))
    return out


def reflect_weight(w: Weight, alpha: Root) -> Weight:
    """One odd reflection: w - alpha when <w, alpha> != 0, else w."""
    if alpha.parity != ODD:
        raise ValueError(f"odd reflection needs an odd root, got {alpha}")
    if inner(w, alpha.weight) != 0:
        return w - alpha.weight
    return w


def _validate_label(w: Weight, where: str) -> None:
    rep = dominance_checks(w)
    if not rep.so_dominant:
        raise ValueError(f"{where}: eps-part not dominant: {rep.violations}")
    if rep.so_integral and all(c == int(c) for c in w.eps) and not rep.osp_consistent:
        raise ValueError(f"{where}: inconsistent highest weight: {rep.violations}")


def to_standard(mu: Weight) -> Weight:
    """Fold the odd reflections forward: nonstandard label -> standard label."""
    _validate_label(mu, "to_standard")
    w = mu
    for alpha in odd_reflection_sequence(mu.ctx):
        w = reflect_weight(w, alpha)
    return w


def to_nonstandard(lam: Weight) -> Weight:
    """Fold backwards (reversed order, sign-flipped roots)."""
    w = lam
    for alpha in reversed(odd_reflection_sequence(lam.ctx)):
        # replacing delta_i - eps_j by its negative adds alpha back
        if inner(w, alpha.weight) != 0:
            w = w + alpha.weight
    return w


def theorem3_standard_label(mu: Weight) -> Weight:
    """Closed form for the standard label of a finite-dimensional K_mu.

    mu = sum k_j eps_j + sum l_i delta_i with integer dominant
    coordinates; with a the largest index satisfying k_a >= n the result
    is sum_{j<=a} (k_j - n) eps_j + sum l_i delta_i + sum_{j>a} nu_{k_j}
    + a nu_n.
    """
    ctx = mu.ctx
    rep = dominance_checks(mu)
    if not (rep.so_integral and rep.so_dominant and rep.osp_consistent):
        raise ValueError(f"theorem3 label needs a consistent dominant weight: {rep.violations}")
    if any(c != int(c) for c in mu.eps):
        raise ValueError("theorem3 closed form needs integer eps coordinates")
    k = [int(c) for c in mu.eps]
    n = ctx.n
    a = 0
    for j, kj in enumerate(k, 1):
        if kj >= n:
            a = j
    out = Weight(ctx, [kj - n if j <= a else 0 for j, kj in enumerate(k, 1)],
                 list(mu.delta))
    for j in range(a + 1, ctx.d + 1):
        out = out + nu(ctx, k[j - 1])
    out = out + nu(ctx, n).scale(a)
    return out
