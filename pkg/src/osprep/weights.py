"""The weight lattice h* of osp(m|2n).

Weights are exact rational vectors in the (eps_1..eps_d, delta_1..delta_n)
basis, d = floor(m/2), and carry their (m, n) context.  This module
provides the non-definite inner product, the so/sp fundamental weights,
the Weyl vector rho of the standard positive system, the quadratic
Casimir eigenvalue functional <lam, lam + 2 rho>, fundamental-weight
coordinates, the index set I_lam of 0/1 epsilon-patterns, the parity
function sigma, and dominance/consistency reports.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import List, Sequence, Tuple

from .exactfield import Rat, format_rational, rational

__all__ = [
    "Context",
    "Weight",
    "inner",
    "fundamental",
    "rho",
    "casimir_eigenvalue",
    "fundamental_coefficients",
    "weight_from_so_coefficients",
    "IndexSetEntry",
    "enumerate_I",
    "sigma",
    "DominanceReport",
    "dominance_checks",
]

HALF = Rat(1, 2)


@dataclass(frozen=True)
class Context:
    """An osp(m|2n) context; d = floor(m/2) epsilon coordinates."""

    m: int
    n: int

    def __post_init__(self):
        if self.m < 1 or self.n < 0:
            raise ValueError(f"unsupported context (m={self.m}, n={self.n})")

    @property
    def d(self) -> int:
        return self.m // 2

    @property
    def rank(self) -> int:
        return self.d + self.n

    def __str__(self) -> str:
        return f"osp({self.m}|{2 * self.n})"


class Weight:
    """A vector sum(k_j eps_j) + sum(l_i delta_i) with rational coordinates."""

    __slots__ = ("ctx", "eps", "delta", "_hash")

    def __init__(self, ctx: Context, eps: Sequence = (), delta: Sequence = ()):
        eps = tuple(Rat(c) for c in eps)
        delta = tuple(Rat(c) for c in delta)
        if len(eps) != ctx.d or len(delta) != ctx.n:
            raise ValueError(
                f"coordinate lengths ({len(eps)}, {len(delta)}) do not match {ctx}"
            )
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "eps", eps)
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "_hash", hash((ctx, eps, delta)))

    def __setattr__(self, name, value):
        raise AttributeError("Weight is immutable")

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zero(ctx: Context) -> "Weight":
        return Weight(ctx, (0,) * ctx.d, (0,) * ctx.n)

    @staticmethod
    def eps_basis(ctx: Context, j: int) -> "Weight":
        """eps_j, 1-based."""
        if not 1 <= j <= ctx.d:
            raise ValueError(f"eps index {j} out of range for {ctx}")
        return Weight(ctx, tuple(1 if k == j else 0 for k in range(1, ctx.d + 1)),
                      (0,) * ctx.n)

    @staticmethod
    def delta_basis(ctx: Context, i: int) -> "Weight":
        """delta_i, 1-based."""
        if not 1 <= i <= ctx.n:
            raise ValueError(f"delta index {i} out of range for {ctx}")
        return Weight(ctx, (0,) * ctx.d,
                      tuple(1 if k == i else 0 for k in range(1, ctx.n + 1)))

    # -- linear structure -------------------------------------------------

    def _check(self, other: "Weight") -> None:
        if self.ctx != other.ctx:
            raise ValueError(f"context mismatch: {self.ctx} vs {other.ctx}")

    def __add__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(self.ctx,
                      tuple(a + b for a, b in zip(self.eps, other.eps)),
                      tuple(a + b for a, b in zip(self.delta, other.delta)))

    def __sub__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(self.ctx,
                      tuple(a - b for a, b in zip(self.eps, other.eps)),
                      tuple(a - b for a, b in zip(self.delta, other.delta)))

    def __neg__(self) -> "Weight":
        return Weight(self.ctx, tuple(-a for a in self.eps),
                      tuple(-a for a in self.delta))

    def scale(self, c) -> "Weight":
        c = Rat(c)
        return Weight(self.ctx, tuple(c * a for a in self.eps),
                      tuple(c * a for a in self.delta))

    def __rmul__(self, c) -> "Weight":
        return self.scale(c)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Weight) and self.ctx == other.ctx
                and self.eps == other.eps and self.delta == other.delta)

    def __hash__(self):
        return self._hash

    def is_zero(self) -> bool:
        return not any(self.eps) and not any(self.delta)

    def key(self) -> tuple:
        """Canonical sorting/dict key."""
        return (self.eps, self.delta)

    # -- rendering ---------------------------------------------------------

    def __str__(self) -> str:
        parts = []
        for j, c in enumerate(self.eps, 1):
            if c:
                parts.append(f"{format_rational(c)}*e{j}")
        for i, c in enumerate(self.delta, 1):
            if c:
                parts.append(f"{format_rational(c)}*d{i}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"Weight({self.ctx.m}|{2 * self.ctx.n}: {self})"

    def to_json(self) -> dict:
        return {
            "m": self.ctx.m,
            "n": self.ctx.n,
            "eps": [format_rational(c) for c in self.eps],
            "delta": [format_rational(c) for c in self.delta],
        }

    @staticmethod
    def from_json(data: dict, ctx: Context | None = None) -> "Weight":
        if ctx is None:
            ctx = Context(int(data["m"]), int(data["n"]))
        eps = [rational(c) for c in data.get("eps", [])]
        delta = [rational(c) for c in data.get("delta", [])]
        return Weight(ctx, eps, delta)


def inner(w1: Weight, w2: Weight) -> Rat:
    """<w1, w2> = sum_j w1_j w2_j / 2 - sum_i w1_i w2_i / 2 (eps vs delta)."""
    w1._check(w2)
    acc = Rat(0)
    for a, b in zip(w1.eps, w2.eps):
        acc += a * b
    for a, b in zip(w1.delta, w2.delta):
        acc -= a * b
    return acc / 2


def fundamental(kind: str, k: int, ctx: Context) -> Weight:
    """The fundamental weight omega_k (so) or nu_k (sp); index 0 gives 0.

    kind "so-odd" is for so(2d+1), "so-even" for so(2d) with d > 1,
    "sp" for sp(2n).
    """
    d, n = ctx.d, ctx.n
    if kind == "sp":
        if not 0 <= k <= n:
            raise ValueError(f"sp fundamental index {k} out of range 0..{n}")
        return Weight(ctx, (0,) * d, tuple(1 if i <= k else 0 for i in range(1, n + 1)))
    if kind == "so-odd":
        if not 0 <= k <= d:
            raise ValueError(f"so-odd fundamental index {k} out of range 0..{d}")
        if k == d and d > 0:
            return Weight(ctx, (HALF,) * d, (0,) * n)
        return Weight(ctx, tuple(1 if j <= k else 0 for j in range(1, d + 1)), (0,) * n)
    if kind == "so-even":
        if not 0 <= k <= d:
            raise ValueError(f"so-even fundamental index {k} out of range 0..{d}")
        if k in (d - 1, d) and k > 0 and d <= 1:
            raise ValueError("so(2d) spin weights need d > 1")
        if k == d and d > 0:
            return Weight(ctx, (HALF,) * d, (0,) * n)
        if k == d - 1 and k > 0:
            return Weight(ctx, (HALF,) * (d - 1) + (-HALF,), (0,) * n)
        return Weight(ctx, tuple(1 if j <= k else 0 for j in range(1, d + 1)), (0,) * n)
    raise ValueError(f"unknown fundamental kind {kind!r}")


def omega(ctx: Context, k: int) -> Weight:
    """so(m) fundamental weight in the flavour matching the context parity.

    For k = d this is the half-sum (1/2)(eps_1 + ... + eps_d) for every m,
    which is what the spinor highest weights use (also at d = 1, m = 2).
    """
    d = ctx.d
    if k == d and d >= 0:
        return Weight(ctx, (HALF,) * d, (0,) * ctx.n)
    if ctx.m % 2 == 1:
        return fundamental("so-odd", k, ctx)
    if k == d - 1 and d == 1:
        return Weight.zero(ctx)  # omega_0
    return fundamental("so-even", k, ctx)


def nu(ctx: Context, k: int) -> Weight:
    return fundamental("sp", k, ctx)


def rho(ctx: Context) -> Weight:
    """Weyl vector sum_j (m/2 - j) eps_j + sum_i (1 + n - m/2 - i) delta_i."""
    m, n, d = ctx.m, ctx.n, ctx.d
    eps = tuple(Rat(m, 2) - j for j in range(1, d + 1))
    delta = tuple(1 + n - Rat(m, 2) - i for i in range(1, n + 1))
    return Weight(ctx, eps, delta)


def casimir_eigenvalue(lam: Weight) -> Rat:
    """<lam, lam + 2 rho>, the quadratic Casimir scalar on M_lam."""
    return inner(lam, lam + rho(lam.ctx).scale(2))


def _so_integral(w: Weight) -> bool:
    """All eps coordinates integers, or all half-odd-integers."""
    if w.ctx.d == 0:
        return True
    doubled = [2 * c for c in w.eps]
    if any(x != int(x) for x in doubled):
        return False
    pars = {int(x) % 2 for x in doubled}
    return len(pars) == 1


def fundamental_coefficients(lam: Weight) -> Tuple[int, ...]:
    """so(m) fundamental-weight coordinates lam_j of the eps-part.

    lam_j = k_j - k_{j+1} for j < d and lam_d = 2 k_d.  For m = 2d only
    weights with k_d >= 0 (and k_{d-1} = 0 whenever k_d = 0) are
    supported; for those the admissible-pattern index set does not depend on
    which so(2d) convention defines lam_d, and 2 k_d is used.
    """
    ctx = lam.ctx
    d = ctx.d
    if not _so_integral(lam):
        raise ValueError(f"eps-part of {lam} is not so({ctx.m})-integral")
    k = list(lam.eps)
    if ctx.m % 2 == 0 and d > 0 and k[d - 1] < 0:
        raise ValueError(f"unsupported so(2d) weight (k_d < 0): {lam}")
    coeffs = []
    for j in range(d - 1):
        c = k[j] - k[j + 1]
        if c != int(c):
            raise ValueError(f"non-integral fundamental coefficient for {lam}")
        coeffs.append(int(c))
    if d > 0:
        c = 2 * k[d - 1]
        if c != int(c):
            raise ValueError(f"non-integral fundamental coefficient for {lam}")
        coeffs.append(int(c))
    return tuple(coeffs)


def weight_from_so_coefficients(coeffs: Sequence[int], ctx: Context) -> Weight:
    """Inverse of fundamental_coefficients: sum_j lam_j omega_j."""
    d = ctx.d
    if len(coeffs) != d:
        raise ValueError(f"need {d} coefficients, got {len(coeffs)}")
    w = Weight.zero(ctx)
    for j, c in enumerate(coeffs, 1):
        w = w + omega(ctx, j).scale(c)
    return w


@dataclass(frozen=True)
class IndexSetEntry:
    """A 0/1 pattern mu = sum i_j eps_j admitted by I_lam."""

    bits: Tuple[int, ...]
    mu: Weight

    @property
    def count(self) -> int:
        return sum(self.bits)


def enumerate_I(lam: Weight) -> List[IndexSetEntry]:
    """The index set I_lam: bit patterns whose fundamental coordinates
    stay below those of lam coordinatewise, sorted by bits."""
    ctx = lam.ctx
    d = ctx.d
    rep = dominance_checks(lam)
    if not rep.so_dominant:
        raise ValueError(f"I_lam needs a dominant eps-part: {rep.violations}")
    lam_c = fundamental_coefficients(lam)
    out = []
    for bits in product((0, 1), repeat=d):
        mu = Weight(ctx, bits, (0,) * ctx.n)
        mu_c = []
        for j in range(d - 1):
            mu_c.append(bits[j] - bits[j + 1])
        if d > 0:
            mu_c.append(2 * bits[d - 1])
        if all(mc <= lc for mc, lc in zip(mu_c, lam_c)):
            out.append(IndexSetEntry(bits, mu))
    return out


def sigma(kappa: Weight) -> int:
    """Parity of the number of nonzero entries of a 0/1 eps-pattern."""
    if any(kappa.delta):
        raise ValueError("sigma expects a pure eps-pattern")
    count = 0
    for c in kappa.eps:
        if c == 1:
            count += 1
        elif c != 0:
            raise ValueError("sigma expects 0/1 eps coordinates")
    return count % 2


@dataclass(frozen=True)
class DominanceReport:
    so_integral: bool
    so_dominant: bool
    sp_dominant: bool
    osp_consistent: bool
    # for m = 2d: whether lam_d = 2 k_d and lam_d = k_{d-1} + k_d give the
    # same index set (k_d = 0 implies k_{d-1} = 0); informational only,
    # the lam_d = 2 k_d convention is used throughout
    even_convention_independent: bool
    violations: Tuple[str, ...]

    @property
    def ok(self) -> bool:
        return self.so_integral and self.so_dominant and self.osp_consistent

    def to_json(self) -> dict:
        return {
            "so_integral": self.so_integral,
            "so_dominant": self.so_dominant,
            "sp_dominant": self.sp_dominant,
            "osp_consistent": self.osp_consistent,
            "even_convention_independent": self.even_convention_independent,
            "violations": list(self.violations),
        }


def dominance_checks(lam: Weight) -> DominanceReport:
    """Flags for so-integrality, so/sp dominance and the finite-dimension
    consistency clause (l_{k_d+1} = 0 whenever k_d < n)."""
    ctx = lam.ctx
    d, n = ctx.d, ctx.n
    violations = []

    so_integral = _so_integral(lam)
    if not so_integral:
        violations.append("eps-part not so-integral")

    k = list(lam.eps)
    so_dominant = all(k[j] >= k[j + 1] for j in range(d - 1))
    if d > 0 and k[d - 1] < 0:
        so_dominant = False
    if not so_dominant:
        violations.append("k_1 >= ... >= k_d >= 0 fails")
    even_convention_independent = True
    if ctx.m % 2 == 0 and d > 1:
        if k[d - 1] == 0 and k[d - 2] != 0:
            even_convention_independent = False

    l = list(lam.delta)
    sp_dominant = all(l[i] >= l[i + 1] for i in range(n - 1)) and (n == 0 or l[n - 1] >= 0)
    if not sp_dominant:
        violations.append("l_1 >= ... >= l_n >= 0 fails")

    osp_consistent = True
    if so_dominant and so_integral:
        # the consistency clause l_{k_d+1} = 0 (k_d < n) only concerns d >= 1
        if d > 0:
            kd = k[d - 1]
            if kd == int(kd):
                kd = int(kd)
                if 0 <= kd < n and l[kd] != 0:
                    osp_consistent = False
                    violations.append(f"l_{kd + 1} = {format_rational(l[kd])} != 0 "
                                      f"while k_d = {kd} < n = {n}")
    else:
        osp_consistent = False

    return DominanceReport(so_integral, so_dominant, sp_dominant,
                           osp_consistent, even_convention_independent,
                           tuple(violations))
