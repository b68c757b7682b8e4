"""Closed-form tensor product decompositions.

Implements the spinor-times-module decomposition statements: the so(m)
prototype, the candidate-weight restriction on primitive vectors, the
two-summand (and exceptional three-summand / indecomposable-chain)
spinor x K_{k eps_1} decompositions, the Casimir-difference reducibility
test for K_{k eps_1 + l eps_2}, and the multi-column case with its
sigma-dependent shift for even m.  Results carry highest weights in
both root conventions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .exactfield import Rat
from .rootsys import to_standard
from .weights import (Context, Weight, dominance_checks, enumerate_I,
                      nu, omega, sigma)

__all__ = [
    "Summand",
    "ChainStructure",
    "DecompositionResult",
    "CandidateSet",
    "so_spinor_decompose",
    "candidates",
    "spinor_times_ke1",
    "lemma3_reducibility",
    "theorem10_decompose",
    "theorem11_decompose",
]

HALF = Rat(1, 2)


def _standard_label(w: Weight) -> Weight:
    """Standard-convention label of the module with nonstandard label w."""
    return to_standard(w)


@dataclass(frozen=True)
class Summand:
    hw_nonstandard: Weight
    hw_standard: Weight
    multiplicity: int = 1

    def to_json(self) -> dict:
        return {
            "hw_nonstandard": self.hw_nonstandard.to_json(),
            "hw_standard": self.hw_standard.to_json(),
            "multiplicity": self.multiplicity,
        }


@dataclass(frozen=True)
class ChainStructure:
    """The indecomposable P > V > K pattern of the exceptional case."""

    outer_primitive: Summand      # highest primitive vector (generates V)
    inner: Summand                # irreducible socle K inside V
    middle_quotient_note: str
    outer_quotient_note: str

    def to_json(self) -> dict:
        return {
            "outer_primitive": self.outer_primitive.to_json(),
            "inner": self.inner.to_json(),
            "middle_quotient": self.middle_quotient_note,
            "outer_quotient": self.outer_quotient_note,
        }


@dataclass
class DecompositionResult:
    context: Context
    structure: str                # "completely_reducible" | "chain"
    summands: List[Summand]
    chain: Optional[ChainStructure] = None
    notes: Tuple[str, ...] = ()

    def sorted_summands(self) -> List[Summand]:
        return sorted(self.summands, key=lambda s: s.hw_nonstandard.key(),
                      reverse=True)

    def to_json(self) -> dict:
        out = {
            "context": {"m": self.context.m, "n": self.context.n},
            "structure": self.structure,
            "summands": [s.to_json() for s in self.sorted_summands()],
            "notes": list(self.notes),
        }
        if self.chain is not None:
            out["chain"] = self.chain.to_json()
        return out


def _summand(w: Weight, mult: int = 1) -> Summand:
    return Summand(w, _standard_label(w), mult)


def so_spinor_decompose(lam: Weight) -> DecompositionResult:
    """so(m) prototype: spinor x L_lam = sum over I_lam of L_{lam-mu+omega_d},
    multiplicity free.  Needs integer k_d (half-integer spin weights are
    not admitted as the finite factor)."""
    ctx = lam.ctx
    if any(c != int(c) for c in lam.eps):
        raise ValueError("so spinor decomposition needs integer coordinates")
    if any(lam.delta):
        raise ValueError("so(m) weight must have no delta part")
    entries = enumerate_I(lam)
    top = omega(ctx, ctx.d)
    summands = [Summand(lam - e.mu + top, lam - e.mu + top) for e in entries]
    return DecompositionResult(ctx, "completely_reducible", summands,
                               notes=("so(m) prototype; labels convention-free",))


def sp_fundamental_coefficients(lam: Weight) -> Tuple[int, ...]:
    """kappa_i with delta-part = sum kappa_i nu_i."""
    n = lam.ctx.n
    l = list(lam.delta)
    out = []
    for i in range(n - 1):
        c = l[i] - l[i + 1]
        if c != int(c):
            raise ValueError(f"non-integral sp coefficient for {lam}")
        out.append(int(c))
    if n > 0:
        if l[n - 1] != int(l[n - 1]):
            raise ValueError(f"non-integral sp coefficient for {lam}")
        out.append(int(l[n - 1]))
    return tuple(out)


@dataclass(frozen=True)
class Candidate:
    weight: Weight
    mu: Weight
    delta_shift: Weight
    part: str

    def to_json(self) -> dict:
        return {"weight": self.weight.to_json(), "mu": self.mu.to_json(),
                "delta_shift": self.delta_shift.to_json(), "part": self.part}


@dataclass
class CandidateSet:
    context: Context
    factor_hw: Weight
    part: str
    entries: List[Candidate]

    def weights(self) -> List[Weight]:
        return [c.weight for c in self.entries]

    def to_json(self) -> dict:
        return {
            "context": {"m": self.context.m, "n": self.context.n},
            "factor_hw": self.factor_hw.to_json(),
            "part": self.part,
            "candidates": [c.to_json() for c in self.entries],
        }


def candidates(factor_hw: Weight, part: str = "all") -> CandidateSet:
    """Possible primitive-vector weights in spinor(part) x K_{factor_hw}.

    Each candidate is factor_hw - mu - shift + (spinor top), mu in the
    eps index set, shift = sum l_i delta_i bounded by the sp coefficients
    (doubled at i = n, plus one more for even m); for even m the pattern
    mu + shift must correspond to a monomial of the requested part.
    """
    ctx = factor_hw.ctx
    rep = dominance_checks(factor_hw)
    if not (rep.so_integral and rep.so_dominant and rep.osp_consistent):
        raise ValueError(f"inconsistent factor weight: {rep.violations}")
    if ctx.m % 2 == 0 and part not in ("plus", "minus"):
        raise ValueError("even m needs part 'plus' or 'minus'")
    if ctx.m % 2 == 1 and part == "minus" and ctx.m > 1:
        raise ValueError("odd m has a single spinor part")
    kappa = sp_fundamental_coefficients(factor_hw)
    n, d = ctx.n, ctx.d
    bounds = []
    for i in range(1, n + 1):
        if i < n:
            bounds.append(kappa[i - 1])
        else:
            bounds.append(2 * kappa[n - 1] + (1 if ctx.m % 2 == 0 else 0))
    top = omega(ctx, d) - nu(ctx, n).scale(HALF)
    entries = []
    shifts: List[List[int]] = [[]]
    for b in bounds:
        shifts = [s + [v] for s in shifts for v in range(b + 1)]
    for e in enumerate_I(Weight(ctx, factor_hw.eps, (0,) * n)):
        for svec in shifts:
            shift = Weight(ctx, (0,) * d, svec)
            gen_count = e.count + sum(svec)
            mon_part = "plus" if gen_count % 2 == 0 else "minus"
            if ctx.m % 2 == 0 and mon_part != part:
                continue
            w = factor_hw - e.mu - shift + top
            entries.append(Candidate(w, e.mu, shift, mon_part))
    entries.sort(key=lambda c: c.weight.key(), reverse=True)
    return CandidateSet(ctx, factor_hw, part, entries)


def _spinor_tops(ctx: Context):
    plus = omega(ctx, ctx.d) - nu(ctx, ctx.n).scale(HALF)
    minus = omega(ctx, ctx.d) + nu(ctx, ctx.n - 1) - nu(ctx, ctx.n).scale(Rat(3, 2))
    return plus, minus


def spinor_times_ke1(ctx: Context, k: int, part: str = "all") -> DecompositionResult:
    """Spinor(part) x K_{k eps_1} (for m = 1: x K_{nu_k}), closed form.

    Even m with k + d = n + 1 yields the indecomposable chain instead of
    a direct sum; m = 1 with k = n yields three summands.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    d, n, m = ctx.d, ctx.n, ctx.m
    plus, minus = _spinor_tops(ctx)
    e1 = Weight.eps_basis(ctx, 1) if d >= 1 else None

    if m == 1:
        if k > n:
            raise ValueError(f"B(0|n) factor nu_k needs k <= n = {n}")
        half_nu = nu(ctx, n).scale(HALF)
        if k < n:
            summands = [_summand(nu(ctx, k) - half_nu),
                        _summand(nu(ctx, k - 1) - half_nu)]
            return DecompositionResult(ctx, "completely_reducible", summands)
        summands = [_summand(half_nu),
                    _summand(half_nu - Weight.delta_basis(ctx, n)),
                    _summand(half_nu - Weight.delta_basis(ctx, n).scale(2))]
        return DecompositionResult(ctx, "completely_reducible", summands,
                                   notes=("B(0|n) three-summand case j = n",))

    if m % 2 == 1:
        if part not in ("all", "plus"):
            raise ValueError("odd m has a single spinor part")
        summands = [_summand(e1.scale(k) + plus), _summand(e1.scale(k - 1) + plus)]
        return DecompositionResult(ctx, "completely_reducible", summands)

    if part not in ("plus", "minus"):
        raise ValueError("even m needs part 'plus' or 'minus'")
    top, other = (plus, minus) if part == "plus" else (minus, plus)
    first = _summand(e1.scale(k) + top)
    second = _summand(e1.scale(k - 1) + other)
    if k + d != n + 1:
        return DecompositionResult(ctx, "completely_reducible", [first, second])
    chain = ChainStructure(
        outer_primitive=first,
        inner=second,
        middle_quotient_note=f"V / K[{second.hw_nonstandard}] = K[{first.hw_nonstandard}]",
        outer_quotient_note=(f"P/V is a quotient of the Verma module with highest "
                             f"weight {second.hw_nonstandard}; irreducibility not asserted"),
    )
    return DecompositionResult(ctx, "chain", [first, second], chain=chain,
                               notes=(f"exceptional case k + d = n + 1 (k = {k})",))


def lemma3_reducibility(d: int, n: int, k: int, l: int) -> dict:
    """The six Casimir differences for spinor x K_{k eps_1 + l eps_2} on
    osp(2d+1|2n) and the complete-reducibility verdict (reducible unless
    k + l = 2 + 2n - 2d)."""
    if not (k >= l >= 1):
        raise ValueError("need k >= l >= 1")
    diffs = {
        "kappa1-kappa2": Rat(d) - n + l - Rat(3, 2),
        "kappa1-kappa3": Rat(k + l + 2 * d - 2 * n - 2),
        "kappa1-kappa4": Rat(d) - n + k - HALF,
        "kappa2-kappa3": Rat(d) - n + k - HALF,
        "kappa2-kappa4": Rat(k - l + 1),
        "kappa3-kappa4": Rat(3, 2) - d + n - l,
    }
    value_kappa1 = (Rat(d) - n - HALF) * (k + l) + Rat(k * (k + 1) + l * (l - 1), 2) \
        + Rat((2 * d + 1 - 2 * n) * (d - n), 8)
    criterion = (k + l == 2 + 2 * n - 2 * d)
    return {
        "d": d, "n": n, "k": k, "l": l,
        "casimir_kappa1": value_kappa1,
        "differences": diffs,
        "completely_reducible_by_criterion": not criterion,
        "criterion_hit": criterion,
    }


def _check_theorem10_form(Lambda: Weight) -> Tuple[int, List[int]]:
    """Validate Lambda = sum_{j<=a} k_j eps_j + a nu_n, k_j >= 1; return (a, ks)."""
    ctx = Lambda.ctx
    if len(set(Lambda.delta)) > 1:
        raise ValueError("delta part must be a multiple of nu_n")
    a = Lambda.delta[0] if ctx.n else Rat(0)
    if a != int(a) or a < 0:
        raise ValueError("delta part must be a non-negative integer multiple of nu_n")
    a = int(a)
    ks = []
    for j, c in enumerate(Lambda.eps, 1):
        if j <= a:
            if c != int(c) or int(c) < 1:
                raise ValueError("need k_j >= 1 for j <= a")
            ks.append(int(c))
        elif c:
            raise ValueError(f"eps_{j} coordinate must vanish beyond a = {a}")
    if a > ctx.d:
        raise ValueError("a exceeds d")
    if ctx.m % 2 == 0 and a == ctx.d - 1:
        raise ValueError("a = d - 1 is not allowed for even m")
    return a, ks


def theorem10_decompose(Lambda: Weight, part: str = "all") -> DecompositionResult:
    """Spinor(part) x L_Lambda in standard labels, Lambda = sum k_j eps_j + a nu_n.

    The standard labels are the odd-reflection folds of the nonstandard
    sigma-shifted summands, which keeps the two conventions coherent
    summand by summand (for odd m this reduces to the direct form
    Lambda - kappa + omega_d - nu_n/2).
    """
    ctx = Lambda.ctx
    a, ks = _check_theorem10_form(Lambda)
    mu = Weight(ctx, [c + ctx.n if c else 0 for c in Lambda.eps], (0,) * ctx.n)
    res = theorem11_decompose(mu, part)
    return DecompositionResult(ctx, res.structure, res.summands,
                               notes=("standard labels via odd reflections",))


def theorem11_decompose(mu: Weight, part: str = "all") -> DecompositionResult:
    """Spinor(part) x K_mu in nonstandard labels, mu = sum_{j<=a}(k_j+n) eps_j."""
    ctx = mu.ctx
    d, n, m = ctx.d, ctx.n, ctx.m
    if any(mu.delta):
        raise ValueError("theorem11 factor has no delta part")
    a = sum(1 for c in mu.eps if c)
    for j, c in enumerate(mu.eps, 1):
        if j <= a:
            if c != int(c) or int(c) < n + 1:
                raise ValueError("need k_j >= 1, coordinates k_j + n")
        elif c:
            raise ValueError("eps coordinates must be left-aligned")
    if m % 2 == 0 and a == d - 1:
        raise ValueError("a = d - 1 is not allowed for even m")
    entries = enumerate_I(mu)
    plus, minus = _spinor_tops(ctx)
    dn = Weight.delta_basis(ctx, n)
    summands = []
    if m % 2 == 1:
        if part not in ("all", "plus"):
            raise ValueError("odd m has a single spinor part")
        for e in entries:
            summands.append(_summand(mu - e.mu + plus))
    elif part == "plus":
        for e in entries:
            summands.append(_summand(mu - e.mu + plus - dn.scale(sigma(e.mu))))
    elif part == "minus":
        for e in entries:
            summands.append(_summand(mu - e.mu + minus + dn.scale(sigma(e.mu))))
    else:
        raise ValueError("even m needs part 'plus' or 'minus'")
    return DecompositionResult(ctx, "completely_reducible", summands)
