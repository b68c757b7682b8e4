import random

import pytest

from conftest import W
from osprep import superpoly as sp
from osprep.exactfield import Rat
from osprep.hwmod import (TruncationError, VermaEngine, gram, irreducible,
                          structure_table, tau, verma_basis)
from osprep.linalg import rank
from osprep.weights import Context, Weight, casimir_eigenvalue, nu, omega
from osprep.rootsys import to_standard


def spinor_weight(ctx):
    return omega(ctx, ctx.d) - nu(ctx, ctx.n).scale(Rat(1, 2))


def test_verma_basis_depth0():
    ctx = Context(3, 1)
    lam = W(3, 1, [2], [0])
    by = verma_basis(lam, 0, ctx)
    assert by == {lam.key(): [()]}


def test_verma_basis_osp12_odd_rule():
    # negative roots -delta, -2delta; at drop 2delta only Y_{2delta}
    # survives since the odd Y_delta cannot repeat in a PBW word
    ctx = Context(1, 1)
    lam = W(1, 1, [], ["-1/2"])
    eng = VermaEngine(lam, 2, ctx)
    by = eng.words_by_weight()
    assert sorted(len(ws) for ws in by.values()) == [1, 1, 1]
    drop2 = (lam - W(1, 1, [], [2])).key()
    words = by[drop2]
    assert len(words) == 1 and len(words[0]) == 1
    assert eng.heights[words[0][0]] == 2  # the Y_{2 delta} generator


def test_word_count_monotone_in_depth():
    ctx = Context(3, 1)
    lam = spinor_weight(ctx)
    counts = []
    for depth in range(4):
        by = verma_basis(lam, depth, ctx)
        counts.append(sum(len(ws) for ws in by.values()))
    assert counts == sorted(counts) and counts[0] == 1


def test_act_raise_annihilates_top():
    ctx = Context(3, 2)
    eng = VermaEngine(spinor_weight(ctx), 4, ctx)
    for idx in range(len(eng.roots)):
        assert eng.act_raise(idx, {(): Rat(1)}) == {}


def test_xy_on_single_lowering():
    # X_delta Y_delta v = H_delta v = lam(H_delta) v on osp(1|2)
    ctx = Context(1, 1)
    lam = W(1, 1, [], ["-1/2"])
    eng = VermaEngine(lam, 3, ctx)
    delta_idx = eng.table.simple_indices[0]
    vec = eng.act_lower(delta_idx, {(): Rat(1)})
    up = eng.act_raise(delta_idx, vec)
    assert up == {(): Rat(-1, 2)}


def test_theorem7_proof_identity():
    # X_j (Y_j)^l v = l (lam_j - l + 1) (Y_j)^{l-1} v for an even simple root
    ctx = Context(5, 1)
    lam = W(5, 1, [3, 1], [0])  # lam_1 = 2
    eng = VermaEngine(lam, 8, ctx)
    a1 = eng.table.simple_indices[0]
    vec = {(): Rat(1)}
    for l in range(1, 5):
        vec = eng.act_lower(a1, vec)
        up = eng.act_raise(a1, vec)
        coeff = l * (2 - l + 1)
        want = {tuple([a1] * (l - 1)): Rat(coeff)} if coeff else {}
        assert up == want, l


def test_act_lower_truncation_reported():
    ctx = Context(1, 1)
    eng = VermaEngine(W(1, 1, [], ["-1/2"]), 1, ctx)
    delta_idx = eng.table.simple_indices[0]
    vec = eng.act_lower(delta_idx, {(): Rat(1)})
    with pytest.raises(TruncationError):
        eng.act_lower(delta_idx, vec)


def test_tau():
    parities = [1, 1, 0]
    assert tau((), parities) == (1, ())
    assert tau((2,), parities) == (1, (2,))
    # two odd letters pick up one sign
    assert tau((0, 1), parities) == (-1, (1, 0))
    assert tau((0, 1, 2), parities) == (-1, (2, 1, 0))


def test_gram_top_is_one():
    ctx = Context(3, 1)
    lam = W(3, 1, [1], [0])
    assert gram(lam, lam, 2, ctx) == [[Rat(1)]]


def test_gram_osp12_first_level():
    # lam = -delta/2: <Y_delta v, Y_delta v> = lam(H_delta) = -1/2 with the
    # Chevalley H matrix (the eigenvalue of H_delta on the top is -1/2);
    # the rank is 1 either way, and the realization cross-check below pins
    # the sign convention of the canonical form
    ctx = Context(1, 1)
    lam = W(1, 1, [], ["-1/2"])
    nu1 = lam - W(1, 1, [], [1])
    assert gram(lam, nu1, 2, ctx) == [[Rat(-1, 2)]]
    # realization cross-check: Y_delta v maps to zeta * t1, so the gram
    # entry is conj(zeta) zeta * norm(t1) = norm(t1) / 2
    norms = sp.canonical_norms(ctx, "all", 2)
    t1 = sp.SuperMonomial((), (1,))
    assert norms[t1] / 2 == Rat(-1, 2)


def test_gram_symmetric():
    ctx = Context(2, 2)
    lam = W(2, 2, [2], [0, 0])
    eng = VermaEngine(lam, 5, ctx)
    for key, words in eng.words_by_weight().items():
        G = [[eng.form_words(a, b) for b in words] for a in words]
        assert G == [list(row) for row in zip(*G)], key


def test_contravariance_identity():
    ctx = Context(3, 1)
    lam = spinor_weight(ctx)
    eng = VermaEngine(lam, 5, ctx)
    by = eng.words_by_weight()
    for key, words in by.items():
        for f in words[:4]:
            for aidx in range(len(eng.roots)):
                if eng.word_height(f) + eng.heights[aidx] > eng.depth:
                    continue
                yf = eng.act_lower(aidx, {f: Rat(1)})
                target = eng.lam - eng.word_drop(f) - eng.roots[aidx]
                for g in by.get(target.key(), [])[:4]:
                    lhs = eng.form(yf, {g: Rat(1)})
                    rhs = eng.form({f: Rat(1)}, eng.act_raise(aidx, {g: Rat(1)}))
                    sign = -1 if eng.parity[aidx] and eng.word_parity(f) else 1
                    assert lhs == sign * rhs


def test_irreducible_spinor_matches_superpoly(grid):
    for (m, n) in [(1, 1), (2, 1), (3, 1), (4, 1)]:
        ctx = Context(m, n)
        mod = irreducible(spinor_weight(ctx), 5, ctx)
        mults = mod.multiplicities()
        assert all(v == 1 for v in mults.values()), (m, n)
        mono_weights = {sp.weight_of(mo, ctx).key()
                        for mo in sp.basis_up_to(ctx, 16)}
        assert set(mults) <= mono_weights


def test_irreducible_natural_dimension():
    # the natural module has dimension m + 2n; the standard-convention
    # label is delta_1, the nonstandard one eps_1
    ctx = Context(3, 1)
    mod = irreducible(W(3, 1, [0], [1]), 6, ctx, convention="standard")
    assert mod.total_dim() == 5
    assert mod.closed
    mod2 = irreducible(W(3, 1, [1], [0]), 6, ctx)
    assert mod2.total_dim() == 5 and mod2.closed


def test_irreducible_trivial():
    ctx = Context(4, 2)
    mod = irreducible(Weight.zero(ctx), 3, ctx)
    assert mod.total_dim() == 1
    assert mod.closed and mod.closing_height == 1


def test_finite_module_closes():
    ctx = Context(3, 1)
    mod = irreducible(W(3, 1, [1], [0]), 8, ctx)
    assert mod.closed and mod.closing_height == 5


def test_gram_ranks_order_independent():
    ctx = Context(3, 1)
    lam = spinor_weight(ctx)
    base = irreducible(lam, 5, ctx).multiplicities()
    rng = random.Random(11)
    nroots = len(structure_table(ctx).positive)
    for _ in range(3):
        perm = list(range(nroots))
        rng.shuffle(perm)
        assert irreducible(lam, 5, ctx, order=perm).multiplicities() == base


def test_casimir_constant_on_primitives():
    # a primitive vector of weight kappa inside the module of highest
    # weight lam satisfies <kappa, kappa + 2 rho'> = <lam, lam + 2 rho'>
    # with rho' the half-sum vector of the working convention
    from osprep.rootsys import build
    from osprep.weights import inner
    for (m, n), lam in [((2, 1), W(2, 1, ["3/2"], ["-1/2"])),
                        ((3, 1), W(3, 1, [2], [0]))]:
        ctx = Context(m, n)
        rs = build(ctx)
        rho_ns = Weight.zero(ctx)
        for root in rs.positive:
            rho_ns = rho_ns + (root.weight if root.parity == 0 else -root.weight)
        rho_ns = rho_ns.scale(Rat(1, 2))
        c0 = inner(lam, lam + rho_ns.scale(2))
        eng = VermaEngine(lam, 5, ctx)
        found = 0
        for key, words in eng.words_by_weight().items():
            for word in words:
                vec = {word: Rat(1)}
                if all(not eng.act_raise(idx, vec)
                       for idx in eng.table.simple_indices):
                    kappa = eng.word_weight(word)
                    assert inner(kappa, kappa + rho_ns.scale(2)) == c0
                    found += 1
        assert found >= 1  # at least the empty word
