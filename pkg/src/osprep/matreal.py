"""Matrix realization of osp(m|2n) inside gl(m|2n).

Everything here is exact and rational: the orthosymplectic metric, the
membership test A^{sT} g + g A = 0, the Chevalley basis matrices, root
vectors for all roots as ad(h)-eigenvectors, and the bracket tables the
highest-weight engine consumes.  Matrix units E_{pq} are addressed
with 1-based indices; storage is 0-based and sparse.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from .exactfield import Rat
from .linalg import kernel_basis
from .rootsys import Root, RootSystem, build as build_roots
from .weights import Context, Weight

__all__ = [
    "SuperMatrix",
    "E",
    "metric",
    "is_osp",
    "bracket",
    "chevalley",
    "basis_weight",
    "root_vectors",
    "StructureTable",
    "structure_table",
    "validate",
]


class SuperMatrix:
    """Sparse exact matrix over gl(m|2n) with the block Z2-grading."""

    __slots__ = ("ctx", "entries")

    def __init__(self, ctx: Context, entries: Optional[dict] = None):
        self.ctx = ctx
        self.entries = {}
        if entries:
            for key, val in entries.items():
                val = Rat(val)
                if val:
                    self.entries[key] = val

    @property
    def dim(self) -> int:
        return self.ctx.m + 2 * self.ctx.n

    def copy(self) -> "SuperMatrix":
        out = SuperMatrix(self.ctx)
        out.entries = dict(self.entries)
        return out

    def __bool__(self) -> bool:
        return bool(self.entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, SuperMatrix) and self.ctx == other.ctx \
            and self.entries == other.entries

    def __hash__(self):
        return hash((self.ctx, tuple(sorted(self.entries.items()))))

    def __add__(self, other: "SuperMatrix") -> "SuperMatrix":
        out = dict(self.entries)
        for key, val in other.entries.items():
            new = out.get(key, 0) + val
            if new:
                out[key] = new
            else:
                out.pop(key, None)
        res = SuperMatrix(self.ctx)
        res.entries = out
        return res

    def __sub__(self, other: "SuperMatrix") -> "SuperMatrix":
        return self + other.scale(-1)

    def __neg__(self) -> "SuperMatrix":
        return self.scale(-1)

    def scale(self, c) -> "SuperMatrix":
        c = Rat(c)
        res = SuperMatrix(self.ctx)
        if c:
            res.entries = {k: c * v for k, v in self.entries.items()}
        return res

    def __matmul__(self, other: "SuperMatrix") -> "SuperMatrix":
        by_row: Dict[int, list] = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        out: Dict[Tuple[int, int], Rat] = {}
        for (r, c), v in self.entries.items():
            for c2, v2 in by_row.get(c, ()):
                key = (r, c2)
                new = out.get(key, 0) + v * v2
                if new:
                    out[key] = new
                else:
                    out.pop(key, None)
        res = SuperMatrix(self.ctx)
        res.entries = out
        return res

    def transpose(self) -> "SuperMatrix":
        res = SuperMatrix(self.ctx)
        res.entries = {(c, r): v for (r, c), v in self.entries.items()}
        return res

    def super_transpose(self) -> "SuperMatrix":
        """Blockwise (a b; c d) -> (a^T -c^T; b^T d^T)."""
        m = self.ctx.m
        res = SuperMatrix(self.ctx)
        out = {}
        for (r, c), v in self.entries.items():
            sign = -1 if (r >= m and c < m) else 1
            out[(c, r)] = sign * v
        res.entries = out
        return res

    def parity(self) -> Optional[int]:
        """0 for even (diagonal blocks), 1 for odd, None if mixed or zero."""
        m = self.ctx.m
        seen = set()
        for (r, c) in self.entries:
            seen.add(1 if (r >= m) != (c >= m) else 0)
        if len(seen) == 1:
            return seen.pop()
        return None

    def diagonal(self) -> Tuple[Tuple[Rat, ...], Tuple[Rat, ...]]:
        """(eps-block diagonal x_1..x_d, delta-block diagonal y_1..y_n)."""
        m, n, d = self.ctx.m, self.ctx.n, self.ctx.d
        xs = tuple(self.entries.get((j, j), Rat(0)) for j in range(d))
        ys = tuple(self.entries.get((m + i, m + i), Rat(0)) for i in range(n))
        return xs, ys

    def is_diagonal(self) -> bool:
        return all(r == c for (r, c) in self.entries)

    def weight_eval(self, w: Weight) -> Rat:
        """lam(H) for a diagonal Cartan element H."""
        xs, ys = self.diagonal()
        acc = Rat(0)
        for a, b in zip(w.eps, xs):
            acc += a * b
        for a, b in zip(w.delta, ys):
            acc += a * b
        return acc

    def __str__(self) -> str:
        rows = []
        for r in range(self.dim):
            rows.append(" ".join(str(self.entries.get((r, c), 0)).rjust(5)
                                 for c in range(self.dim)))
        return "\n".join(rows)


def E(ctx: Context, p: int, q: int, coeff=1) -> SuperMatrix:
    """coeff * E_{pq}, 1-based indices."""
    dim = ctx.m + 2 * ctx.n
    if not (1 <= p <= dim and 1 <= q <= dim):
        raise ValueError(f"E index ({p},{q}) out of range for {ctx}")
    return SuperMatrix(ctx, {(p - 1, q - 1): coeff})


@lru_cache(maxsize=None)
def metric(ctx: Context) -> SuperMatrix:
    """Block metric diag(h, J): h the (anti)diagonal so-form, J symplectic."""
    m, n, d = ctx.m, ctx.n, ctx.d
    g = SuperMatrix(ctx)
    for j in range(1, d + 1):
        g = g + E(ctx, j, d + j) + E(ctx, d + j, j)
    if m % 2 == 1:
        g = g + E(ctx, m, m)
    for i in range(1, n + 1):
        g = g + E(ctx, m + i, m + n + i) - E(ctx, m + n + i, m + i)
    return g


def is_osp(a: SuperMatrix) -> bool:
    """Exact test of A^{sT} g + g A = 0 (homogeneous parts separately)."""
    g = metric(a.ctx)
    m = a.ctx.m

    def check(part: SuperMatrix) -> bool:
        return not (part.super_transpose() @ g + g @ part)

    if a.parity() is not None:
        return check(a)
    even = SuperMatrix(a.ctx, {k: v for k, v in a.entries.items()
                               if (k[0] >= m) == (k[1] >= m)})
    odd = SuperMatrix(a.ctx, {k: v for k, v in a.entries.items()
                              if (k[0] >= m) != (k[1] >= m)})
    return check(even) and check(odd)


def bracket(a: SuperMatrix, b: SuperMatrix) -> SuperMatrix:
    """Graded commutator [a, b] = ab - (-1)^{|a||b|} ba of homogeneous parts."""
    pa, pb = a.parity(), b.parity()
    if not a or not b:
        return SuperMatrix(a.ctx)
    if pa is None or pb is None:
        raise ValueError("bracket needs homogeneous matrices")
    sign = -1 if (pa and pb) else 1
    return a @ b - (b @ a).scale(sign)


@lru_cache(maxsize=None)
def chevalley(ctx: Context, convention: str = "nonstandard"):
    """Map k -> (X_{alpha_k}, Y_{alpha_k}, H_{alpha_k}) for the simple roots.

    The nonstandard matrices are written out explicitly; for the standard
    convention the root vectors are the normalised ad-eigenvectors and
    H is their bracket.
    """
    if ctx.n < 1:
        raise ValueError("chevalley basis requires n >= 1")
    m, n, d = ctx.m, ctx.n, ctx.d
    if convention == "standard":
        rs = build_roots(ctx, "standard")
        vecs = root_vectors(ctx, "standard")
        out = {}
        for k, alpha in enumerate(rs.simple, 1):
            x = vecs[alpha.weight.key()]
            y = vecs[(-alpha.weight).key()]
            out[k] = (x, y, bracket(x, y))
        return out
    if convention != "nonstandard":
        raise ValueError(f"unknown convention {convention!r}")

    out = {}
    for j in range(1, d):
        x = E(ctx, j, j + 1) - E(ctx, d + j + 1, d + j)
        h = E(ctx, j, j) - E(ctx, j + 1, j + 1) - E(ctx, j + d, j + d) \
            + E(ctx, j + d + 1, j + d + 1)
        out[j] = (x, x.transpose(), h)
    if d >= 1:
        x = E(ctx, d, m + 1) - E(ctx, m + n + 1, 2 * d)
        y = (E(ctx, m + 1, d) + E(ctx, 2 * d, m + n + 1)).scale(-1)
        h = E(ctx, m + n + 1, m + n + 1) - E(ctx, m + 1, m + 1) \
            - E(ctx, d, d) + E(ctx, 2 * d, 2 * d)
        out[d] = (x, y, h)
    for i in range(1, n):
        x = E(ctx, m + i, m + i + 1) - E(ctx, m + n + i + 1, m + n + i)
        h = E(ctx, m + i, m + i) - E(ctx, m + i + 1, m + i + 1) \
            - E(ctx, m + n + i, m + n + i) + E(ctx, m + n + i + 1, m + n + i + 1)
        out[d + i] = (x, x.transpose(), h)
    h = E(ctx, m + n, m + n) - E(ctx, m + 2 * n, m + 2 * n)
    if m % 2 == 1:
        x = E(ctx, m, m + 2 * n) + E(ctx, m + n, m)
        y = -E(ctx, m + 2 * n, m) + E(ctx, m, m + n)
    else:
        x = E(ctx, m + n, m + 2 * n)
        y = E(ctx, m + 2 * n, m + n)
    out[d + n] = (x, y, h)
    return out


def basis_weight(ctx: Context, p: int) -> Weight:
    """Weight of the natural-module basis vector e_p (1-based index)."""
    m, n, d = ctx.m, ctx.n, ctx.d
    if p <= d:
        return Weight.eps_basis(ctx, p)
    if p <= 2 * d:
        return -Weight.eps_basis(ctx, p - d)
    if p <= m:
        return Weight.zero(ctx)
    if p <= m + n:
        return Weight.delta_basis(ctx, p - m)
    return -Weight.delta_basis(ctx, p - m - n)


def _osp_condition_rows(ctx: Context, pairs: List[Tuple[int, int]]):
    """Rows of the linear system expressing A^{sT} g + g A = 0 on the span
    of the E_{pq} with (p, q) in pairs (1-based)."""
    g = metric(ctx)
    images = []
    for (p, q) in pairs:
        mat = E(ctx, p, q)
        images.append(mat.super_transpose() @ g + g @ mat)
    support = sorted({key for img in images for key in img.entries})
    rows = []
    for key in support:
        rows.append([img.entries.get(key, Rat(0)) for img in images])
    return rows


@lru_cache(maxsize=None)
def root_vectors(ctx: Context, convention: str = "nonstandard"):
    """One normalised matrix per root (positive and negative).

    Each root space is cut out inside the span of the E_{pq} whose
    diagonal weight matches the root; the spaces must be one-dimensional
    (anything else is a bug, not a valid state).  The chosen vector has
    first nonzero entry 1 in row-major E ordering; simple-root vectors
    of the nonstandard convention are replaced by the exact Chevalley
    matrices.
    """
    rs = build_roots(ctx, convention)
    dim = ctx.m + 2 * ctx.n
    wt = {p: basis_weight(ctx, p) for p in range(1, dim + 1)}
    out: Dict[tuple, SuperMatrix] = {}
    all_roots = [r.weight for r in rs.positive] + [-r.weight for r in rs.positive]
    for beta in all_roots:
        pairs = sorted((p, q) for p in range(1, dim + 1) for q in range(1, dim + 1)
                       if p != q and (wt[p] - wt[q]) == beta)
        rows = _osp_condition_rows(ctx, pairs)
        kern = kernel_basis(rows, len(pairs), Rat(1), Rat(0))
        if len(kern) != 1:
            raise RuntimeError(f"root space of {beta} has dimension {len(kern)}")
        coeffs = kern[0]
        lead = next(c for c in coeffs if c)
        vec = SuperMatrix(ctx)
        for (p, q), c in zip(pairs, coeffs):
            if c:
                vec = vec + E(ctx, p, q, c / lead)
        out[beta.key()] = vec
    if convention == "nonstandard":
        for k, (x, y, _h) in chevalley(ctx, "nonstandard").items():
            alpha = rs.simple[k - 1].weight
            out[alpha.key()] = x
            out[(-alpha).key()] = y
    return out


def _proportional(a: SuperMatrix, b: SuperMatrix) -> Optional[Rat]:
    """c with a == c*b, or None."""
    if not b:
        return None
    if not a:
        return Rat(0)
    if set(a.entries) != set(b.entries):
        return None
    key = next(iter(b.entries))
    c = a.entries[key] / b.entries[key]
    return c if a == b.scale(c) else None


@dataclass
class StructureTable:
    """Bracket data of a fixed root-vector basis, as the module engine uses it.

    positive: the positive roots in PBW order (by height, then coordinates).
    xvec/yvec: matrices per positive root.  hmat: the simple-root Cartan
    basis.  yy[a][b] describes [Y_a, Y_b] as (c, coeff) meaning
    coeff * Y_c, or None.  xy[g][b] describes [X_g, Y_b] as
    ("H", matrix) / ("X", idx, coeff) / ("Y", idx, coeff) / None.
    """

    ctx: Context
    convention: str
    rootsystem: RootSystem
    positive: Tuple[Root, ...]
    xvec: Tuple[SuperMatrix, ...]
    yvec: Tuple[SuperMatrix, ...]
    hmat: Tuple[SuperMatrix, ...]
    yy: tuple
    xy: tuple
    simple_indices: Tuple[int, ...]
    heights: Tuple[int, ...]

    def index_of(self, w: Weight) -> Optional[int]:
        return self._index.get(w.key())

    def __post_init__(self):
        self._index = {r.weight.key(): i for i, r in enumerate(self.positive)}

    def parity(self, idx: int) -> int:
        return self.positive[idx].parity

    def simple_root(self, k: int) -> Root:
        """k is 1-based among the simple roots."""
        return self.positive[self.simple_indices[k - 1]]


def _consistent_negative_vectors(ctx, positive, xvec, index, simple_y):
    """Negative root vectors normalised compatibly with the anti-involution.

    The contravariant-form recursion uses tau(Y_a) = X_a for every
    positive root, which is well defined on U(n^-) exactly when
    [Y_a, Y_b] = -N Y_{a+b} whenever [X_a, X_b] = N X_{a+b}.  Simple Y's
    are the pinned ones; the rest are built by that rule, lowest height
    first, and the full pair consistency is verified afterwards.
    """
    nroots = len(positive)
    yvec: List[Optional[SuperMatrix]] = [None] * nroots
    for i, c in simple_y.items():
        yvec[i] = c
    for i in range(nroots):
        if yvec[i] is not None:
            continue
        beta = positive[i].weight
        for a in range(nroots):
            if yvec[a] is None:
                continue
            b = index.get((beta - positive[a].weight).key())
            if b is None or yvec[b] is None:
                continue
            coeff = _proportional(bracket(xvec[a], xvec[b]), xvec[i])
            if coeff:
                yvec[i] = bracket(yvec[a], yvec[b]).scale(Rat(-1) / coeff)
                break
        if yvec[i] is None:
            raise RuntimeError(f"cannot reach root {beta} from simple brackets")
    # all-pairs consistency certifies the form's well-definedness
    for a in range(nroots):
        for b in range(a, nroots):
            c = index.get((positive[a].weight + positive[b].weight).key())
            if c is None:
                continue
            nx = _proportional(bracket(xvec[a], xvec[b]), xvec[c])
            ny = _proportional(bracket(yvec[a], yvec[b]), yvec[c])
            if nx is None or ny is None or nx != -ny:
                raise RuntimeError(
                    f"incompatible root-vector normalisation at "
                    f"{positive[a].weight} + {positive[b].weight}")
    return tuple(yvec)


@lru_cache(maxsize=None)
def structure_table(ctx: Context, convention: str = "nonstandard") -> StructureTable:
    rs = build_roots(ctx, convention)
    vecs = root_vectors(ctx, convention)
    positive = tuple(rs.positive)  # already sorted by (height, coordinates)
    nroots = len(positive)
    xvec = tuple(vecs[r.weight.key()] for r in positive)
    index = {r.weight.key(): i for i, r in enumerate(positive)}
    chev = chevalley(ctx, convention)
    hmat = tuple(chev[k][2] for k in range(1, ctx.rank + 1))
    simple_y = {index[rs.simple[k - 1].weight.key()]: chev[k][1]
                for k in range(1, ctx.rank + 1)}
    yvec = _consistent_negative_vectors(ctx, positive, xvec, index, simple_y)

    heights = []
    for r in positive:
        h = rs.height(r.weight)
        if h != int(h) or h < 1:
            raise RuntimeError(f"positive root {r.weight} has height {h}")
        heights.append(int(h))

    yy = []
    for a in range(nroots):
        row = []
        for b in range(nroots):
            br = bracket(yvec[a], yvec[b])
            if not br:
                row.append(None)
                continue
            target = (positive[a].weight + positive[b].weight).key()
            cidx = index.get(target)
            if cidx is None:
                raise RuntimeError("bracket closure failure in yy table")
            coeff = _proportional(br, yvec[cidx])
            if coeff is None:
                raise RuntimeError("yy bracket not proportional to root vector")
            row.append((cidx, coeff))
        yy.append(tuple(row))

    xy = []
    for g in range(nroots):
        row = []
        for b in range(nroots):
            br = bracket(xvec[g], yvec[b])
            if not br:
                row.append(None)
                continue
            if g == b:
                if not br.is_diagonal():
                    raise RuntimeError("[X_b, Y_b] not diagonal")
                row.append(("H", br))
                continue
            diff = positive[g].weight - positive[b].weight
            cidx = index.get(diff.key())
            if cidx is not None:
                coeff = _proportional(br, xvec[cidx])
                if coeff is None:
                    raise RuntimeError("xy bracket not proportional to X vector")
                row.append(("X", cidx, coeff))
                continue
            cidx = index.get((-diff).key())
            if cidx is not None:
                coeff = _proportional(br, yvec[cidx])
                if coeff is None:
                    raise RuntimeError("xy bracket not proportional to Y vector")
                row.append(("Y", cidx, coeff))
                continue
            raise RuntimeError("bracket closure failure in xy table")
        xy.append(tuple(row))

    simple_indices = tuple(index[alpha.weight.key()] for alpha in rs.simple)
    return StructureTable(ctx, convention, rs, positive, xvec, yvec, hmat,
                          tuple(yy), tuple(xy), simple_indices, tuple(heights))


def _super_jacobi_ok(a: SuperMatrix, b: SuperMatrix, c: SuperMatrix) -> bool:
    pa, pb, pc = a.parity() or 0, b.parity() or 0, c.parity() or 0
    t1 = bracket(a, bracket(b, c)).scale((-1) ** (pa * pc))
    t2 = bracket(b, bracket(c, a)).scale((-1) ** (pb * pa))
    t3 = bracket(c, bracket(a, b)).scale((-1) ** (pc * pb))
    return not (t1 + t2 + t3)


def osp_dimension(ctx: Context) -> int:
    """Number of independent solutions of the membership identity."""
    dim = ctx.m + 2 * ctx.n
    pairs = [(p, q) for p in range(1, dim + 1) for q in range(1, dim + 1)]
    rows = _osp_condition_rows(ctx, pairs)
    return len(kernel_basis(rows, len(pairs), Rat(1), Rat(0)))


def validate(ctx: Context, convention: str = "nonstandard", jacobi: bool = True) -> dict:
    """Exact relation-suite report for one context (CLI `validate`)."""
    report = {"context": str(ctx), "convention": convention, "families": {}, "ok": True}

    def record(name, ok, detail=""):
        report["families"][name] = {"pass": bool(ok), "detail": detail}
        if not ok:
            report["ok"] = False

    chev = chevalley(ctx, convention)
    rs = build_roots(ctx, convention)

    record("chevalley_in_osp",
           all(is_osp(mat) for triple in chev.values() for mat in triple),
           f"{3 * len(chev)} matrices")

    ok_xy = True
    for k, (xk, yk, hk) in chev.items():
        for l, (xl, yl, hl) in chev.items():
            br = bracket(xk, yl)
            want = hk if k == l else SuperMatrix(ctx)
            ok_xy &= (br == want)
    record("eq4_xy", ok_xy, "[X_k, Y_l] = delta_kl H_k")

    ok_h = True
    for k, (_, _, hk) in chev.items():
        for l, (xl, yl, _) in chev.items():
            alpha = rs.simple[l - 1].weight
            val = hk.weight_eval(alpha)
            ok_h &= (bracket(hk, xl) == xl.scale(val))
            ok_h &= (bracket(hk, yl) == yl.scale(-val))
    record("eq4_h", ok_h, "[H, X] = alpha(H) X and [H, Y] = -alpha(H) Y")

    table = structure_table(ctx, convention)
    record("root_spaces_one_dimensional", True,
           f"{len(table.positive)} positive roots")
    record("bracket_closure", True, "structure table construction is the witness")

    basis = list(table.xvec) + list(table.hmat) + list(table.yvec)
    record("basis_in_osp", all(is_osp(mat) for mat in basis), f"{len(basis)} matrices")

    dim_expected = 2 * len(table.positive) + ctx.rank
    dim_solved = osp_dimension(ctx)
    record("dimension", dim_expected == dim_solved,
           f"roots+cartan {dim_expected} vs membership solve {dim_solved}")

    if jacobi:
        ok_j = True
        nb = len(basis)
        for i in range(nb):
            for j in range(i, nb):
                for k in range(j, nb):
                    if not _super_jacobi_ok(basis[i], basis[j], basis[k]):
                        ok_j = False
        record("super_jacobi", ok_j, f"{nb} basis elements, ordered triples")

    return report
