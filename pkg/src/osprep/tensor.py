"""Tensor products of a spinor part with a finite-dimensional module.

The spinor factor always lives in the super Grassmann realization; the
finite factor is realized inside a graded tensor power of the natural
module, as the cyclic submodule of a primitive top vector modulo the
radical of the product contravariant form.  On the product the module
provides exact weight spaces, the graded action

    X(a (x) b) = Xa (x) b + (-1)^{|X||a|} a (x) Xb,

primitive-vector kernels, lowerable spans, exact submodule membership,
the explicit witness vector of the two-primitive analysis, and a
brute-force decomposition that is the oracle for every closed form.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from typing import Dict, List, Optional, Tuple

from . import hwmod
from .decomp import (ChainStructure, DecompositionResult, Summand,
                     candidates)
from .exactfield import ONE, ZERO, FieldScalar, Rat
from .linalg import SpanBasis, kernel_basis, row_reduce, solve
from .matreal import basis_weight, structure_table
from .rootsys import build as build_roots, to_standard
from .superpoly import SuperMonomial, act_monomial, spinor_top, weight_of
from .weights import Context, Weight, dominance_checks

__all__ = [
    "TruncationError",
    "FiniteFactor",
    "build_finite_factor",
    "TensorProduct",
    "TensorVector",
    "tensor_act",
    "primitive_space",
    "lowerable_space",
    "membership",
    "theorem8_witness",
    "brute_force_decompose",
]

TensorKey = Tuple[tuple, Tuple[tuple, int]]  # ((gamma, beta), (weight key, index))
Vec = Dict[TensorKey, FieldScalar]
TensorVector = Vec


class TruncationError(ValueError):
    pass


def _parallel_map(fn, items):
    """Map fn over items, per-weight work being independent; OSPREP_THREADS
    caps the worker count (default 1 keeps everything sequential).  The
    result order always follows the input order."""
    workers = int(os.environ.get("OSPREP_THREADS", "1") or "1")
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


# ----------------------------------------------------------------------
# finite-dimensional factor inside a tensor power of the natural module
# ----------------------------------------------------------------------

def _natural_action(ctx: Context):
    """Per simple root: column maps q -> [(p, coeff)] for X and Y, plus
    basis weights and parities of the natural module."""
    table = structure_table(ctx)
    dim = ctx.m + 2 * ctx.n
    wts = [basis_weight(ctx, p) for p in range(1, dim + 1)]
    pars = [0 if p <= ctx.m else 1 for p in range(1, dim + 1)]
    xs, ys = [], []
    for k in range(1, ctx.rank + 1):
        xmat = table.xvec[table.simple_indices[k - 1]]
        ymat = table.yvec[table.simple_indices[k - 1]]
        xcol: Dict[int, List[Tuple[int, Rat]]] = {}
        ycol: Dict[int, List[Tuple[int, Rat]]] = {}
        for (r, c), v in xmat.entries.items():
            xcol.setdefault(c, []).append((r, v))
        for (r, c), v in ymat.entries.items():
            ycol.setdefault(c, []).append((r, v))
        xs.append(xcol)
        ys.append(ycol)
    return wts, pars, xs, ys


def _natural_form(ctx: Context):
    """Diagonal contravariant form values on the natural basis, scaled so
    the highest vector has value 1.  Found by chasing simple lowerings."""
    wts, pars, xs, ys = _natural_action(ctx)
    table = structure_table(ctx)
    dim = ctx.m + 2 * ctx.n
    top = 0 if ctx.d >= 1 else ctx.m  # e_1, or e_{m+1} when d = 0
    vals: List[Optional[Rat]] = [None] * dim
    vals[top] = Rat(1)
    alphas = [table.simple_root(k).parity for k in range(1, ctx.rank + 1)]
    frontier = [top]
    while frontier:
        nxt = []
        for p in frontier:
            for k in range(ctx.rank):
                img = ys[k].get(p, [])
                if not img:
                    continue
                (q, c), = img  # weight spaces are one-dimensional
                if vals[q] is not None:
                    continue
                # (Y e_p, Y e_p) = (-1)^{|alpha||e_p|} (e_p, X Y e_p)
                t = Rat(0)
                for (p2, c2) in xs[k].get(q, []):
                    if p2 == p:
                        t = c2 * c
                sign = -1 if alphas[k] and pars[p] else 1
                vals[q] = sign * t * vals[p] / (c * c)
                nxt.append(q)
        frontier = nxt
    if any(v is None for v in vals):
        raise RuntimeError("natural module form: basis not reachable by lowerings")
    return vals


@dataclass
class FiniteFactor:
    """Irreducible finite-dimensional K_mu with contravariant form and
    per-weight simple-root action matrices."""

    ctx: Context
    hw: Weight
    power: int
    bases: Dict[tuple, List[dict]]          # weight key -> quotient basis vectors
    gram: Dict[tuple, List[List[Rat]]]      # weight key -> Gram of the basis
    weight_of_key: Dict[tuple, Weight]
    parity_of_key: Dict[tuple, int]
    action: Dict[Tuple[str, int, tuple], Tuple[tuple, List[List[Rat]]]]

    def dim(self, key: tuple) -> int:
        return len(self.bases.get(key, ()))

    def total_dim(self) -> int:
        return sum(len(b) for b in self.bases.values())

    def weights(self) -> List[Weight]:
        return [self.weight_of_key[k] for k in self.bases]

    def multiplicities(self) -> Dict[tuple, int]:
        return {k: len(b) for k, b in self.bases.items()}

    def act(self, which: str, k: int, key: tuple):
        """(target key, columns) with columns[i] the image coords of basis i,
        or None when the image space is empty."""
        return self.action.get((which, k, key))


def _tensor_apply(cols, wts_par, K, vec, which_parity):
    """Apply a one-particle operator slotwise with graded signs."""
    out = {}
    for tup, c in vec.items():
        prefix_par = 0
        for s in range(K):
            img = cols.get(tup[s], ())
            for (p, cv) in img:
                t2 = tup[:s] + (p,) + tup[s + 1:]
                sign = -1 if (which_parity and prefix_par) else 1
                new = out.get(t2, 0) + c * cv * sign
                if new:
                    out[t2] = new
                else:
                    out.pop(t2, None)
            prefix_par ^= wts_par[tup[s]]
    return out


@lru_cache(maxsize=None)
def build_finite_factor(ctx: Context, hw: Weight) -> FiniteFactor:
    """Build K_hw from the tensor power of the natural module.

    hw must be an integral dominant consistent nonstandard label.  The
    top vector is any primitive vector of weight hw in the top layer of
    V^(x)K, K = |hw|_1; the module is the span of its lowerings, and the
    product form's per-weight radical is quotiented away via Gram pivots.
    """
    rep = dominance_checks(hw)
    if not (rep.so_integral and rep.so_dominant and rep.osp_consistent
            and rep.sp_dominant):
        raise ValueError(f"finite factor needs a consistent dominant integral "
                         f"highest weight: {rep.violations}")
    if any(c != int(c) for c in hw.eps) or any(c != int(c) for c in hw.delta):
        raise ValueError("finite factor needs integer coordinates")
    wts, pars, xs, ys = _natural_action(ctx)
    table = structure_table(ctx)
    alphas = [table.simple_root(k) for k in range(1, ctx.rank + 1)]
    vals = _natural_form(ctx)
    K = int(sum(hw.eps) + sum(hw.delta))

    # top layer: tensors of weight hw use exactly the multiset of positive
    # basis vectors matching the coordinates
    slots: List[int] = []
    for j, c in enumerate(hw.eps):
        slots += [j] * int(c)               # e_{j+1} has weight eps_{j+1}
    for i, c in enumerate(hw.delta):
        slots += [ctx.m + i] * int(c)
    layer = sorted(set(permutations(slots))) if slots else [()]

    def tensor_parity(tup):
        return sum(pars[p] for p in tup) % 2

    # primitive top vector: kernel of all simple raisings on the layer
    idx = {tup: i for i, tup in enumerate(layer)}
    rows = []
    for k in range(ctx.rank):
        images: Dict[tuple, Dict[int, Rat]] = {}
        for tup in layer:
            img = _tensor_apply(xs[k], pars, K, {tup: Rat(1)}, alphas[k].parity)
            for t2, c in img.items():
                images.setdefault(t2, {})[idx[tup]] = c
        for t2, row in sorted(images.items()):
            rows.append([row.get(i, Rat(0)) for i in range(len(layer))])
    kern = kernel_basis(rows, len(layer), Rat(1), Rat(0))
    if not kern:
        raise RuntimeError(f"no primitive vector of weight {hw} in the top layer")
    top_vec = {layer[i]: c for i, c in enumerate(kern[0]) if c}

    # close the span of lowerings, per weight
    spans: Dict[tuple, SpanBasis] = {}
    reps: Dict[tuple, List[dict]] = {}
    weight_of_key = {hw.key(): hw}
    key0 = hw.key()
    spans[key0] = SpanBasis()
    spans[key0].add(top_vec)
    reps[key0] = [top_vec]
    frontier = [(key0, top_vec)]
    while frontier:
        nxt = []
        for key, vec in frontier:
            for k in range(ctx.rank):
                img = _tensor_apply(ys[k], pars, K, vec, alphas[k].parity)
                if not img:
                    continue
                tkey = (weight_of_key[key] - alphas[k].weight).key()
                if tkey not in spans:
                    spans[tkey] = SpanBasis()
                    reps[tkey] = []
                    weight_of_key[tkey] = weight_of_key[key] - alphas[k].weight
                if spans[tkey].add(img):
                    reps[tkey].append(img)
                    nxt.append((tkey, img))
        frontier = nxt

    # product contravariant form: diagonal on basis tensors
    sign_cache: Dict[tuple, Rat] = {}

    def form_value(tup):
        got = sign_cache.get(tup)
        if got is None:
            odd = sum(pars[p] for p in tup)
            sgn = -1 if (odd * (odd - 1) // 2) % 2 else 1
            v = Rat(sgn)
            for p in tup:
                v *= vals[p]
            sign_cache[tup] = v
            got = v
        return got

    def form(u, v):
        acc = Rat(0)
        for tup, c in u.items():
            c2 = v.get(tup)
            if c2 is not None:
                acc += c * c2 * form_value(tup)
        return acc

    bases: Dict[tuple, List[dict]] = {}
    gram: Dict[tuple, List[List[Rat]]] = {}
    parity_of_key: Dict[tuple, int] = {}
    for key, vecs in reps.items():
        G = [[form(u, v) for v in vecs] for u in vecs]
        work = [row[:] for row in G]
        pivots = row_reduce(work)
        if not pivots:
            continue
        bases[key] = [vecs[c] for c in pivots]
        gram[key] = [[G[i][j] for j in pivots] for i in pivots]
        parity_of_key[key] = tensor_parity(next(iter(bases[key][0])))

    # quotient action matrices via Gram solves
    action: Dict[Tuple[str, int, tuple], Tuple[tuple, List[List[Rat]]]] = {}
    for key, basis in bases.items():
        w = weight_of_key[key]
        for k in range(ctx.rank):
            for which, colmap, shift in (("X", xs[k], alphas[k].weight),
                                         ("Y", ys[k], -alphas[k].weight)):
                tkey = (w + shift).key()
                tbasis = bases.get(tkey)
                if tbasis is None:
                    continue
                cols = []
                for vec in basis:
                    img = _tensor_apply(colmap, pars, K, vec, alphas[k].parity)
                    rhs = [form(b, img) for b in tbasis]
                    sol = solve(gram[tkey], rhs)
                    if sol is None:
                        raise RuntimeError("projection outside the quotient basis")
                    cols.append(sol)
                if any(any(c for c in col) for col in cols):
                    action[(which, k + 1, key)] = (tkey, cols)

    weight_of_key = {k: weight_of_key[k] for k in bases}
    return FiniteFactor(ctx, hw, K, bases, gram, weight_of_key,
                        parity_of_key, action)


# ----------------------------------------------------------------------
# the tensor product W = spinor(part) (x) K_mu
# ----------------------------------------------------------------------

class TensorProduct:
    """Depth-truncated weight-space model of spinor(part) (x) K_mu."""

    def __init__(self, ctx: Context, factor_hw: Weight, part: str = "all",
                 depth: int = 6):
        if ctx.m % 2 == 0 and part not in ("plus", "minus"):
            raise ValueError("even m needs part 'plus' or 'minus'")
        if ctx.m % 2 == 1 and part not in ("all", "plus"):
            raise ValueError("odd m has a single spinor part; use part 'all'")
        self.ctx = ctx
        self.part = "all" if ctx.m % 2 == 1 else part
        self.depth = depth
        self.factor = build_finite_factor(ctx, factor_hw)
        self.rs = build_roots(ctx, "nonstandard")
        self.table = structure_table(ctx)
        self.top_mon, self.spinor_top_w = spinor_top(ctx, self.part)
        self.top = self.spinor_top_w + factor_hw
        self.alphas = [self.table.simple_root(k) for k in range(1, ctx.rank + 1)]
        self._mon_heights = self._spinor_monomials()
        self._build_spaces()

    def _spinor_monomials(self) -> Dict[tuple, Rat]:
        """Monomials of the part within the height budget, with their
        heights relative to the part's top monomial.

        The generator gamma_{d-j+1} drops the weight by eps_j and t_i by
        delta_{n-i+1}; heights are simple-root coordinate sums (possibly
        half-integers individually, integral for monomials of the part).
        """
        ctx = self.ctx
        heps = [self.rs.height(Weight.eps_basis(ctx, j))
                for j in range(1, ctx.d + 1)]
        hdel = [self.rs.height(Weight.delta_basis(ctx, i))
                for i in range(1, ctx.n + 1)]
        top_drop = self.rs.height(
            spinor_top(ctx, "plus")[1] - weight_of(self.top_mon, ctx))
        budget = Rat(self.depth) + top_drop
        out: Dict[tuple, Rat] = {}

        for gamma in product((0, 1), repeat=ctx.d):
            gh = sum((heps[j - 1] for j in range(1, ctx.d + 1)
                      if gamma[ctx.d - j]), Rat(0))
            if gh > budget:
                continue
            betas: List[Tuple[tuple, Rat]] = []

            def collect(i, acc, beta):
                if i == ctx.n:
                    betas.append((tuple(beta), acc))
                    return
                cost = hdel[ctx.n - 1 - i]  # beta_{i+1} drops by delta_{n-i}
                b = 0
                while acc + b * cost <= budget:
                    beta.append(b)
                    collect(i + 1, acc + b * cost, beta)
                    beta.pop()
                    b += 1

            collect(0, gh, [])
            for beta, h in betas:
                mon = SuperMonomial(gamma, beta)
                if self.part == "plus" and mon.generator_count % 2:
                    continue
                if self.part == "minus" and mon.generator_count % 2 == 0:
                    continue
                rel = h - top_drop
                if rel < 0 or rel != int(rel):
                    raise RuntimeError(f"monomial {mon} has height {rel} "
                                       f"relative to the {self.part} top")
                if rel <= self.depth:
                    out[(gamma, beta)] = rel
        return out

    def _build_spaces(self):
        self.spaces: Dict[tuple, List[TensorKey]] = {}
        self.space_index: Dict[tuple, Dict[TensorKey, int]] = {}
        self.weight_of_key: Dict[tuple, Weight] = {}
        self.height_of_key: Dict[tuple, int] = {}
        ctx = self.ctx
        fweights = {k: w for k, w in self.factor.weight_of_key.items()}
        fheights = {k: self.rs.height(self.factor.hw - w)
                    for k, w in fweights.items()}
        for monkey, mh in sorted(self._mon_heights.items()):
            mon_w = weight_of(SuperMonomial(*monkey), ctx)
            for fkey, fw in sorted(fweights.items()):
                h = mh + fheights[fkey]
                if h != int(h) or h > self.depth:
                    continue
                nu = mon_w + fw
                nkey = nu.key()
                if nkey not in self.spaces:
                    self.spaces[nkey] = []
                    self.weight_of_key[nkey] = nu
                    self.height_of_key[nkey] = int(h)
                for i in range(self.factor.dim(fkey)):
                    self.spaces[nkey].append((monkey, (fkey, i)))
        for nkey, basis in self.spaces.items():
            basis.sort()
            self.space_index[nkey] = {b: i for i, b in enumerate(basis)}

    def dim(self, nu: Weight) -> int:
        return len(self.spaces.get(nu.key(), ()))

    def weights_in_window(self) -> List[Weight]:
        return [self.weight_of_key[k]
                for k in sorted(self.spaces, key=lambda k: (self.height_of_key[k], k))]

    # -- action --------------------------------------------------------------

    def apply(self, which: str, k: int, vec: Vec, check_depth: bool = True) -> Vec:
        """X_k or Y_k on a tensor vector via the graded Leibniz rule."""
        if which not in ("X", "Y"):
            raise ValueError("tensor action supports which in ('X', 'Y')")
        ctx = self.ctx
        alpha = self.alphas[k - 1]
        out: Vec = {}

        def accumulate(key, c):
            new = out.get(key, ZERO) + c
            if new:
                out[key] = new
            else:
                out.pop(key, None)

        for (monkey, (fkey, i)), c in vec.items():
            mon = SuperMonomial(*monkey)
            # spinor side
            for coeff, m2 in act_monomial(ctx, which, k, mon):
                accumulate(((m2.gamma, m2.beta), (fkey, i)), c * coeff)
            # module side with the graded sign
            sign = -1 if (alpha.parity and mon.z2_parity) else 1
            hit = self.factor.act(which, k, fkey)
            if hit is not None:
                tkey, cols = hit
                for j, cv in enumerate(cols[i]):
                    if cv:
                        accumulate((monkey, (tkey, j)), c * cv * sign)
        if which == "Y" and check_depth:
            for (monkey, (fkey, i)) in out:
                nu = weight_of(SuperMonomial(*monkey), ctx) \
                    + self.factor.weight_of_key[fkey]
                if nu.key() not in self.spaces:
                    raise TruncationError(
                        f"lowering by alpha_{k} leaves the depth-{self.depth} window")
        return out

    def vector_weight(self, vec: Vec) -> Optional[Weight]:
        for (monkey, (fkey, _i)) in vec:
            return weight_of(SuperMonomial(*monkey), self.ctx) \
                + self.factor.weight_of_key[fkey]
        return None

    def top_vector(self) -> Vec:
        fkey = self.factor.hw.key()
        return {((self.top_mon.gamma, self.top_mon.beta), (fkey, 0)): ONE}


def tensor_act(W: TensorProduct, which: str, k: int, vec: Vec) -> Vec:
    return W.apply(which, k, vec)


def primitive_space(W: TensorProduct, nu: Weight) -> List[Vec]:
    """Exact kernel of the stacked simple raisings on the weight space."""
    nkey = nu.key()
    basis = W.spaces.get(nkey, [])
    if not basis:
        return []
    rows = []
    for k in range(1, W.ctx.rank + 1):
        images: Dict[TensorKey, List] = {}
        for i, b in enumerate(basis):
            img = W.apply("X", k, {b: ONE})
            for key2, c in img.items():
                images.setdefault(key2, []).append((i, c))
        for key2 in sorted(images):
            row = [ZERO] * len(basis)
            for (i, c) in images[key2]:
                row[i] = row[i] + c
            rows.append(row)
    kern = kernel_basis(rows, len(basis), ONE, ZERO)
    out = []
    for coeffs in kern:
        out.append({basis[i]: c for i, c in enumerate(coeffs) if c})
    return out


def lowerable_space(W: TensorProduct, nu: Weight) -> Tuple[int, List[Vec]]:
    """dim and spanning set of (n^- W) at weight nu (simple lowerings of
    the spaces one level up)."""
    span = SpanBasis()
    vecs = []
    for k in range(1, W.ctx.rank + 1):
        up = (nu + W.alphas[k - 1].weight).key()
        for b in W.spaces.get(up, ()):
            img = W.apply("Y", k, {b: ONE}, check_depth=False)
            if img and span.add(img):
                vecs.append(img)
    return len(span), vecs


def membership(W: TensorProduct, w: Vec, v: Vec) -> bool:
    """Exact test of w in U(n^-) . v inside the truncation window."""
    wt_w = W.vector_weight(w)
    wt_v = W.vector_weight(v)
    if wt_w is None:
        return True
    if wt_v is None:
        return False
    gap = W.rs.height(wt_v - wt_w)
    if gap != int(gap) or gap < 0:
        return False
    gap = int(gap)
    h_v = W.rs.height(W.top - wt_v)
    if h_v + gap > W.depth:
        raise TruncationError("membership gap exceeds the depth window")
    spans: Dict[tuple, SpanBasis] = {}
    level = {wt_v.key(): [v]}
    spans[wt_v.key()] = SpanBasis()
    spans[wt_v.key()].add(v)
    for _step in range(gap):
        nxt: Dict[tuple, List[Vec]] = {}
        for key, vecs in level.items():
            for vec in vecs:
                for k in range(1, W.ctx.rank + 1):
                    img = W.apply("Y", k, vec, check_depth=False)
                    if not img:
                        continue
                    tw = W.vector_weight(img)
                    tkey = tw.key()
                    if tkey not in spans:
                        spans[tkey] = SpanBasis()
                    if spans[tkey].add(img):
                        nxt.setdefault(tkey, []).append(img)
        level = nxt
    target = spans.get(wt_w.key())
    return bool(target and target.contains(w))


def theorem8_witness(ctx: Context, k: int, part: str = "plus"):
    """The explicit second primitive vector w for spinor(part) x K_{k eps_1},
    even m, built from the chains a_j (spinor) and b_j (module).

    Returns (W, w, avecs, bvecs, coeffs).
    """
    if ctx.m % 2 != 0:
        raise ValueError("the explicit witness construction needs even m")
    if k < 1:
        raise ValueError("k must be >= 1")
    d, n = ctx.d, ctx.n
    rank = d + n
    W = TensorProduct(ctx, Weight.eps_basis(ctx, 1).scale(k), part=part,
                      depth=rank + 2)
    # spinor chain: a_{rank+1} = top monomial, a_j = Y_j a_{j+1}
    avecs: Dict[int, Dict[tuple, FieldScalar]] = {}
    top = W.top_mon
    avecs[rank + 1] = {(top.gamma, top.beta): ONE}
    for j in range(rank, 0, -1):
        prev = avecs[j + 1]
        acc: Dict[tuple, FieldScalar] = {}
        for monkey, c in prev.items():
            for coeff, m2 in act_monomial(ctx, "Y", j, SuperMonomial(*monkey)):
                key = (m2.gamma, m2.beta)
                new = acc.get(key, ZERO) + c * coeff
                if new:
                    acc[key] = new
                else:
                    acc.pop(key, None)
        avecs[j] = acc
    # module chain: b_1 = v_1, b_{j+1} = Y_j b_j
    fkey = W.factor.hw.key()
    bvecs: Dict[int, Dict[Tuple[tuple, int], Rat]] = {1: {(fkey, 0): Rat(1)}}
    for j in range(1, rank + 1):
        prev = bvecs[j]
        acc2: Dict[Tuple[tuple, int], Rat] = {}
        for (bk, i), c in prev.items():
            hit = W.factor.act("Y", j, bk)
            if hit is None:
                continue
            tkey, cols = hit
            for t, cv in enumerate(cols[i]):
                if cv:
                    new = acc2.get((tkey, t), 0) + c * cv
                    if new:
                        acc2[(tkey, t)] = new
                    else:
                        acc2.pop((tkey, t), None)
        bvecs[j + 1] = acc2
    # the fixed sign combination
    coeffs: Dict[int, FieldScalar] = {1: ONE}
    kk = FieldScalar(Rat(1, k))
    for j in range(1, d):
        coeffs[j + 1] = kk * ((-1) ** j)
    for i in range(1, n):
        coeffs[d + i] = kk * ((-1) ** (d + i))
    coeffs[rank] = kk * (2 * (-1) ** rank)
    coeffs[rank + 1] = kk * ((-1) ** rank)
    w: Vec = {}
    for j in range(1, rank + 2):
        cj = coeffs.get(j)
        if not cj or not avecs[j] or not bvecs[j]:
            continue
        for monkey, ca in avecs[j].items():
            for bk, cb in bvecs[j].items():
                key = (monkey, bk)
                new = w.get(key, ZERO) + cj * ca * cb
                if new:
                    w[key] = new
                else:
                    w.pop(key, None)
    for kk_ in range(1, rank + 1):
        if W.apply("X", kk_, w):
            raise RuntimeError(f"witness is not annihilated by X_{kk_}")
    return W, w, avecs, bvecs, coeffs


# ----------------------------------------------------------------------
# brute-force decomposition
# ----------------------------------------------------------------------

@dataclass
class BruteForceReport:
    result: DecompositionResult
    primitive_dims: Dict[tuple, int]
    candidate_weights: List[Weight]
    primitives_outside_candidates: List[Weight]
    membership_edges: List[Tuple[Weight, Weight]]
    character_match: Optional[bool]
    character_mismatches: List[tuple]
    # per summand key: its irreducible-quotient multiplicities in the window
    summand_characters: Dict[tuple, Dict[tuple, int]] = None
    # weight key -> (dim A(n+), dim n^-W, dim W) when the sweep was asked for
    theorem4_table: Dict[tuple, Tuple[int, int, int]] = None
    factor_dim: int = 0
    # candidate weights whose window sits at or beyond the truncation depth
    candidates_at_boundary: Tuple[Weight, ...] = ()

    def theorem4_holds(self) -> bool:
        return all(a + l == d for (a, l, d) in self.theorem4_table.values())

    def to_json(self) -> dict:
        out = self.result.to_json()
        out["oracle"] = {
            "primitive_weights": [list(map(str, k)) for k, v in
                                  sorted(self.primitive_dims.items()) if v],
            "candidates": [w.to_json() for w in self.candidate_weights],
            "primitives_outside_candidates":
                [w.to_json() for w in self.primitives_outside_candidates],
            "membership_edges": [[a.to_json(), b.to_json()]
                                 for a, b in self.membership_edges],
            "character_match": self.character_match,
        }
        return out


def brute_force_decompose(ctx: Context, factor_hw: Weight, part: str = "all",
                          depth: int = 6,
                          with_theorem4: bool = False) -> BruteForceReport:
    """Sweep primitives, test memberships, verify truncated characters.

    Completely reducible outputs carry the exact character identity
    char W = sum of irreducible-quotient characters over the window;
    membership edges instead produce the indecomposable chain structure.
    with_theorem4 additionally records (dim A(n+), dim n^-W, dim W) at
    every window weight.
    """
    W = TensorProduct(ctx, factor_hw, part=part, depth=depth)
    cand = candidates(factor_hw, part if ctx.m % 2 == 0 else "all")
    cand_keys = {w.key() for w in cand.weights()}
    boundary = tuple(w for w in cand.weights()
                     if W.rs.height(W.top - w) >= depth)

    primitive_dims: Dict[tuple, int] = {}
    primitive_vecs: Dict[tuple, List[Vec]] = {}
    window = W.weights_in_window()
    for nu, basis in zip(window, _parallel_map(lambda nu: primitive_space(W, nu),
                                               window)):
        primitive_dims[nu.key()] = len(basis)
        if basis:
            primitive_vecs[nu.key()] = basis
    theorem4_table: Dict[tuple, Tuple[int, int, int]] = {}
    if with_theorem4:
        for nu, (ldim, _vecs) in zip(window,
                                     _parallel_map(lambda nu: lowerable_space(W, nu),
                                                   window)):
            theorem4_table[nu.key()] = (primitive_dims[nu.key()], ldim, W.dim(nu))
    prim_keys = [k for k, v in primitive_dims.items() if v]
    prim_keys.sort(key=lambda key: W.rs.height(W.top - W.weight_of_key[key]))
    outside = [W.weight_of_key[k] for k in prim_keys if k not in cand_keys]

    edges = []
    for i, ki in enumerate(prim_keys):
        for kj in prim_keys[i + 1:]:
            wi = W.weight_of_key[ki]
            wj = W.weight_of_key[kj]
            gap = W.rs.height(wi - wj)
            if gap <= 0 or gap != int(gap):
                continue
            if membership(W, primitive_vecs[kj][0], primitive_vecs[ki][0]):
                edges.append((wi, wj))

    def summand(key, mult):
        w = W.weight_of_key[key]
        return Summand(w, to_standard(w), mult)

    notes = []
    factor_dim = W.factor.total_dim()
    if not edges:
        # character identity over the window
        counts: Dict[tuple, int] = {k: 0 for k in W.spaces}
        summand_chars: Dict[tuple, Dict[tuple, int]] = {}
        for key in prim_keys:
            lam_p = W.weight_of_key[key]
            h_p = int(W.rs.height(W.top - lam_p))
            mod = hwmod.irreducible(lam_p, depth - h_p, ctx)
            summand_chars[key] = mod.multiplicities()
            for wk, mult in summand_chars[key].items():
                if wk in counts:
                    counts[wk] += mult * primitive_dims[key]
        mismatches = [(W.weight_of_key[k], len(W.spaces[k]), counts[k],
                       W.height_of_key[k])
                      for k in W.spaces if counts[k] != len(W.spaces[k])]
        if mismatches:
            # mismatches confined to the deepest layer hint at truncation;
            # interior ones signal a real defect
            interior = [mm for mm in mismatches if mm[3] < depth]
            notes.append("character mismatch at interior heights (defect)"
                         if interior else
                         "character mismatch only at the boundary layer "
                         "(depth likely insufficient)")
        result = DecompositionResult(
            ctx, "completely_reducible",
            [summand(k, primitive_dims[k]) for k in prim_keys],
            notes=tuple(notes))
        return BruteForceReport(result, primitive_dims, cand.weights(),
                                outside, edges, not mismatches, mismatches,
                                summand_chars, theorem4_table, factor_dim,
                                boundary)

    # chain structure: order primitives by weight, expect the two-primitive
    # pattern of the exceptional case among the last pair
    summands = [summand(k, primitive_dims[k]) for k in prim_keys]
    chain = None
    if len(edges) == 1:
        hi, lo = edges[0]
        chain = ChainStructure(
            outer_primitive=Summand(hi, to_standard(hi)),
            inner=Summand(lo, to_standard(lo)),
            middle_quotient_note=f"V / K[{lo}] = K[{hi}]",
            outer_quotient_note=("P/V is a quotient of the Verma module with "
                                 f"highest weight {lo}; irreducibility not asserted"),
        )
    else:
        notes.append("multiple membership edges; structure beyond the "
                     "two-primitive chain is not classified here")
    result = DecompositionResult(ctx, "chain", summands, chain=chain,
                                 notes=tuple(notes))
    return BruteForceReport(result, primitive_dims, cand.weights(), outside,
                            edges, None, [], {}, theorem4_table, factor_dim,
                            boundary)
