"""The super Grassmann algebra Lambda_{d|n} and the spinor realizations.

Generators theta_1..theta_d (anticommuting, even in the unusual
gradation) and t_1..t_n (commuting, odd), subject to theta*t = -t*theta.
Monomials are kept in the canonical order theta^gamma t^beta.  The
derivation sign conventions are

    d_theta_j:  gamma_j * (-1)^(gamma_1+...+gamma_{j-1}),
    d_t_i:      beta_i  * (-1)^(gamma_1+...+gamma_d),

fixed choices whose correctness is certified by the transported
Chevalley relation suite in the tests, not derived here.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import factorial
from typing import Dict, List, Optional, Tuple

from .exactfield import ONE, ZERO, ZETA, FieldScalar, Rat
from .weights import Context, Weight, nu, omega

__all__ = [
    "SuperMonomial",
    "SuperPoly",
    "multiply",
    "derive",
    "act",
    "act_monomial",
    "h_eigenvalue",
    "weight_of",
    "monomial_of_weight",
    "basis_up_to",
    "spinor_inner",
    "spinor_top",
]

HALF = Rat(1, 2)


@dataclass(frozen=True)
class SuperMonomial:
    """theta_1^g1 ... theta_d^gd t_1^b1 ... t_n^bn in canonical order."""

    gamma: Tuple[int, ...]
    beta: Tuple[int, ...]

    def __post_init__(self):
        if any(g not in (0, 1) for g in self.gamma):
            raise ValueError("theta exponents must be 0 or 1")
        if any(b < 0 for b in self.beta):
            raise ValueError("t exponents must be non-negative")

    @property
    def z2_parity(self) -> int:
        """Superalgebra parity: the t generators are odd."""
        return sum(self.beta) % 2

    @property
    def generator_count(self) -> int:
        return sum(self.gamma) + sum(self.beta)

    @property
    def part(self) -> str:
        """'plus' for an even number of generators, else 'minus'."""
        return "plus" if self.generator_count % 2 == 0 else "minus"

    def __str__(self) -> str:
        bits = [f"th{j}" for j, g in enumerate(self.gamma, 1) if g]
        bits += [f"t{i}" + (f"^{b}" if b > 1 else "")
                 for i, b in enumerate(self.beta, 1) if b]
        return "*".join(bits) if bits else "1"


def unit_monomial(ctx: Context) -> SuperMonomial:
    return SuperMonomial((0,) * ctx.d, (0,) * ctx.n)


class SuperPoly:
    """Sparse scalar combination of monomials."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: Context, terms: Optional[Dict[SuperMonomial, FieldScalar]] = None):
        self.ctx = ctx
        self.terms: Dict[SuperMonomial, FieldScalar] = {}
        if terms:
            for mon, c in terms.items():
                c = FieldScalar.lift(c)
                if c:
                    self.terms[mon] = c

    @staticmethod
    def monomial(ctx: Context, mon: SuperMonomial, coeff=ONE) -> "SuperPoly":
        return SuperPoly(ctx, {mon: FieldScalar.lift(coeff)})

    @staticmethod
    def one(ctx: Context) -> "SuperPoly":
        return SuperPoly.monomial(ctx, unit_monomial(ctx))

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, SuperPoly) and self.ctx == other.ctx \
            and self.terms == other.terms

    def __add__(self, other: "SuperPoly") -> "SuperPoly":
        out = dict(self.terms)
        for mon, c in other.terms.items():
            new = out.get(mon, ZERO) + c
            if new:
                out[mon] = new
            else:
                out.pop(mon, None)
        res = SuperPoly(self.ctx)
        res.terms = out
        return res

    def __sub__(self, other: "SuperPoly") -> "SuperPoly":
        return self + other.scale(FieldScalar(-1))

    def scale(self, c) -> "SuperPoly":
        c = FieldScalar.lift(c)
        res = SuperPoly(self.ctx)
        if c:
            res.terms = {m: c * v for m, v in self.terms.items()}
        return res

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for mon in sorted(self.terms, key=lambda m: (m.gamma, m.beta)):
            bits.append(f"({self.terms[mon]})*{mon}")
        return " + ".join(bits)


# -- elementary operators on monomials ----------------------------------
# Each returns (sign, monomial) or None when the result vanishes.

def _mul_theta(j: int, mon: SuperMonomial):
    g = mon.gamma
    if g[j - 1]:
        return None
    sign = -1 if sum(g[: j - 1]) % 2 else 1
    return sign, SuperMonomial(g[: j - 1] + (1,) + g[j:], mon.beta)


def _mul_t(i: int, mon: SuperMonomial):
    sign = -1 if sum(mon.gamma) % 2 else 1
    b = mon.beta
    return sign, SuperMonomial(mon.gamma, b[: i - 1] + (b[i - 1] + 1,) + b[i:])


def _d_theta(j: int, mon: SuperMonomial):
    g = mon.gamma
    if not g[j - 1]:
        return None
    sign = -1 if sum(g[: j - 1]) % 2 else 1
    return sign, SuperMonomial(g[: j - 1] + (0,) + g[j:], mon.beta)


def _d_t(i: int, mon: SuperMonomial):
    b = mon.beta
    if not b[i - 1]:
        return None
    sign = b[i - 1] * (-1 if sum(mon.gamma) % 2 else 1)
    return sign, SuperMonomial(mon.gamma, b[: i - 1] + (b[i - 1] - 1,) + b[i:])


def _mono_product(a: SuperMonomial, b: SuperMonomial):
    """Canonical-form product a*b -> (sign, monomial) or None."""
    sign = 1
    mon = b
    # multiply b on the left by the generators of a, innermost first
    for i in range(len(a.beta), 0, -1):
        for _ in range(a.beta[i - 1]):
            res = _mul_t(i, mon)
            s, mon = res
            sign *= s
    for j in range(len(a.gamma), 0, -1):
        if a.gamma[j - 1]:
            res = _mul_theta(j, mon)
            if res is None:
                return None
            s, mon = res
            sign *= s
    return sign, mon


def multiply(p: SuperPoly, q: SuperPoly) -> SuperPoly:
    """Bilinear extension of the canonical-form monomial product."""
    out = SuperPoly(p.ctx)
    acc: Dict[SuperMonomial, FieldScalar] = {}
    for ma, ca in p.terms.items():
        for mb, cb in q.terms.items():
            res = _mono_product(ma, mb)
            if res is None:
                continue
            sign, mon = res
            new = acc.get(mon, ZERO) + ca * cb * sign
            if new:
                acc[mon] = new
            else:
                acc.pop(mon, None)
    out.terms = acc
    return out


def derive(kind: str, idx: int, p: SuperPoly) -> SuperPoly:
    """d_theta_idx or d_t_idx applied termwise (kind 'theta' or 't')."""
    op = _d_theta if kind == "theta" else _d_t
    acc: Dict[SuperMonomial, FieldScalar] = {}
    for mon, c in p.terms.items():
        res = op(idx, mon)
        if res is None:
            continue
        sign, m2 = res
        new = acc.get(m2, ZERO) + c * sign
        if new:
            acc[m2] = new
        else:
            acc.pop(m2, None)
    out = SuperPoly(p.ctx)
    out.terms = acc
    return out


def _compose(*steps):
    """Compose elementary monomial operators, applied right to left."""

    def run(mon: SuperMonomial):
        coeff = 1
        for step in reversed(steps):
            res = step(mon)
            if res is None:
                return None
            s, mon = res
            coeff *= s
        return coeff, mon

    return run


def _operator_table(ctx: Context, which: str, k: int):
    """The realization operator of one simple root as (scalar, chain)."""
    d, n, m = ctx.d, ctx.n, ctx.m
    if not 1 <= k <= d + n:
        raise ValueError(f"simple-root index {k} out of range for {ctx}")
    if which == "X":
        if k < d:
            return ONE, _compose(lambda mo: _mul_theta(d - k, mo),
                                 lambda mo: _d_theta(d - k + 1, mo))
        if k == d and d >= 1:
            return ONE, _compose(lambda mo: _mul_t(n, mo),
                                 lambda mo: _d_theta(1, mo))
        i = k - d
        if i < n:
            return ONE, _compose(lambda mo: _mul_t(n - i, mo),
                                 lambda mo: _d_t(n - i + 1, mo))
        if m % 2 == 1:
            return ZETA, _compose(lambda mo: _d_t(1, mo))
        return FieldScalar(-HALF), _compose(lambda mo: _d_t(1, mo),
                                            lambda mo: _d_t(1, mo))
    if which == "Y":
        if k < d:
            return ONE, _compose(lambda mo: _mul_theta(d - k + 1, mo),
                                 lambda mo: _d_theta(d - k, mo))
        if k == d and d >= 1:
            return ONE, _compose(lambda mo: _mul_theta(1, mo),
                                 lambda mo: _d_t(n, mo))
        i = k - d
        if i < n:
            return ONE, _compose(lambda mo: _mul_t(n - i + 1, mo),
                                 lambda mo: _d_t(n - i, mo))
        if m % 2 == 1:
            return ZETA, _compose(lambda mo: _mul_t(1, mo))
        return FieldScalar(HALF), _compose(lambda mo: _mul_t(1, mo),
                                           lambda mo: _mul_t(1, mo))
    raise ValueError(f"which must be 'X', 'Y' or 'H', got {which!r}")


def h_eigenvalue(ctx: Context, k: int, mon: SuperMonomial) -> Rat:
    """Eigenvalue of the realization of H_{alpha_k} on a monomial."""
    d, n = ctx.d, ctx.n
    g, b = mon.gamma, mon.beta
    if not 1 <= k <= d + n:
        raise ValueError(f"simple-root index {k} out of range for {ctx}")
    if k < d:
        return Rat(g[d - k - 1] - g[d - k])
    if k == d and d >= 1:
        return Rat(b[n - 1] + g[0])
    i = k - d
    if i < n:
        return Rat(b[n - i - 1] - b[n - i])
    return -(b[0] + HALF)


def act_monomial(ctx: Context, which: str, k: int, mon: SuperMonomial):
    """List of (coefficient, monomial) for one generator on one monomial."""
    if which == "H":
        val = h_eigenvalue(ctx, k, mon)
        return [(FieldScalar(val), mon)] if val else []
    scalar, chain = _operator_table(ctx, which, k)
    res = chain(mon)
    if res is None:
        return []
    sign, m2 = res
    return [(scalar * sign, m2)]


def act(ctx: Context, which: str, k: int, p: SuperPoly) -> SuperPoly:
    """Apply the realization of X/Y/H at simple root k to a polynomial."""
    acc: Dict[SuperMonomial, FieldScalar] = {}
    for mon, c in p.terms.items():
        for coeff, m2 in act_monomial(ctx, which, k, mon):
            new = acc.get(m2, ZERO) + c * coeff
            if new:
                acc[m2] = new
            else:
                acc.pop(m2, None)
    out = SuperPoly(ctx)
    out.terms = acc
    return out


def operator_parity(ctx: Context, which: str, k: int) -> int:
    """Z2 parity of the realization operator (equals the root parity)."""
    if which == "H":
        return 0
    d, n, m = ctx.d, ctx.n, ctx.m
    if k == d and d >= 1:
        return 1
    if k == d + n and m % 2 == 1:
        return 1
    return 0


def weight_of(mon: SuperMonomial, ctx: Context) -> Weight:
    """omega_d - nu_n/2 - sum gamma_{d-j+1} eps_j - sum beta_{n-i+1} delta_i."""
    d, n = ctx.d, ctx.n
    eps = [HALF - mon.gamma[d - j] for j in range(1, d + 1)]
    delta = [-HALF - mon.beta[n - i] for i in range(1, n + 1)]
    return Weight(ctx, eps, delta)


def monomial_of_weight(w: Weight) -> Optional[SuperMonomial]:
    """The unique monomial of a given weight, or None (completely pointed)."""
    ctx = w.ctx
    d, n = ctx.d, ctx.n
    gamma = []
    for j in range(1, d + 1):
        g = HALF - w.eps[j - 1]
        if g not in (0, 1):
            return None
        gamma.append(int(g))
    beta = []
    for i in range(1, n + 1):
        b = -HALF - w.delta[i - 1]
        if b != int(b) or b < 0:
            return None
        beta.append(int(b))
    return SuperMonomial(tuple(reversed(gamma)), tuple(reversed(beta)))


def spinor_top(ctx: Context, part: str = "all") -> Tuple[SuperMonomial, Weight]:
    """Highest monomial and weight of S (part 'all'/'plus') or S^- ('minus')."""
    if part in ("all", "plus"):
        mon = unit_monomial(ctx)
        w = omega(ctx, ctx.d) - nu(ctx, ctx.n).scale(HALF)
        return mon, w
    if part == "minus":
        if ctx.m % 2 == 1 and ctx.m > 1:
            raise ValueError("the minus part exists only for even m (or m = 1)")
        mon = SuperMonomial((0,) * ctx.d, (1,) + (0,) * (ctx.n - 1))
        w = omega(ctx, ctx.d) + nu(ctx, ctx.n - 1) - nu(ctx, ctx.n).scale(Rat(3, 2))
        return mon, w
    raise ValueError(f"unknown part {part!r}")


def basis_up_to(ctx: Context, depth: int, part: str = "all") -> List[SuperMonomial]:
    """All monomials with generator count <= depth, filtered by part."""
    if depth < 0:
        raise ValueError("depth must be non-negative")
    out: List[SuperMonomial] = []

    def betas(slots: int, budget: int):
        if slots == 0:
            yield ()
            return
        for b in range(budget + 1):
            for rest in betas(slots - 1, budget - b):
                yield (b,) + rest

    for gamma in product((0, 1), repeat=ctx.d):
        g = sum(gamma)
        if g > depth:
            continue
        for beta in betas(ctx.n, depth - g):
            mon = SuperMonomial(gamma, beta)
            if part == "plus" and mon.generator_count % 2:
                continue
            if part == "minus" and mon.generator_count % 2 == 0:
                continue
            out.append(mon)
    out.sort(key=lambda m: (m.generator_count, m.gamma, m.beta))
    return out


def canonical_norms(ctx: Context, part: str, depth: int) -> Dict[SuperMonomial, Rat]:
    """Per-monomial values of the canonical contravariant form.

    This is the Lemma-1-normalised form of the abstract module pulled
    back through the realization: the part's top monomial has value 1
    and (Y_k u, Y_k u) = (-1)^{|alpha_k||u|} (u, X_k Y_k u) walks it
    down.  It differs from the explicit b! inner product by per-weight
    rational scalars and is generally indefinite.
    """
    top_mon, _ = spinor_top(ctx, part)
    vals: Dict[SuperMonomial, Rat] = {top_mon: Rat(1)}
    frontier = [top_mon]
    while frontier:
        nxt = []
        for mon in frontier:
            u = vals[mon]
            for k in range(1, ctx.rank + 1):
                low = act_monomial(ctx, "Y", k, mon)
                if not low:
                    continue
                (c, m2), = low
                if m2 in vals or m2.generator_count > depth:
                    continue
                t = ZERO
                for (c2, m3) in act_monomial(ctx, "X", k, m2):
                    if m3 == mon:
                        t = c2 * c
                sign = -1 if (operator_parity(ctx, "Y", k) and mon.z2_parity) else 1
                norm = t * sign * u / (c.conj() * c)
                if not norm.is_rational():
                    raise RuntimeError("canonical norm left the rationals")
                vals[m2] = norm.re
                nxt.append(m2)
        frontier = nxt
    return vals


def spinor_inner(p: SuperPoly, q: SuperPoly) -> FieldScalar:
    """<theta^a t^b | theta^s t^r> = b! delta_as delta_br, conjugate-linear
    in the first argument."""
    acc = ZERO
    for mon, c in p.terms.items():
        c2 = q.terms.get(mon)
        if c2 is None:
            continue
        bfact = 1
        for b in mon.beta:
            bfact *= factorial(b)
        acc = acc + c.conj() * c2 * bfact
    return acc
