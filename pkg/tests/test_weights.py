import pytest
from hypothesis import given, settings, strategies as st

from conftest import W
from osprep.exactfield import Rat
from osprep.weights import (Context, Weight, casimir_eigenvalue, dominance_checks,
                            enumerate_I, fundamental, fundamental_coefficients,
                            inner, rho, sigma, weight_from_so_coefficients)


def test_inner_product_table():
    w = W(3, 2, [1], [0, 0])
    assert inner(W(3, 2, [1], [0, 0]), W(3, 2, [1], [0, 0])) == Rat(1, 2)
    assert inner(W(3, 2, [0], [1, 0]), W(3, 2, [0], [1, 0])) == Rat(-1, 2)
    assert inner(W(3, 2, [1], [0, 0]), W(3, 2, [0], [1, 0])) == 0
    assert inner(W(3, 2, [0], [1, 0]), W(3, 2, [0], [0, 1])) == 0


def test_inner_context_mismatch():
    with pytest.raises(ValueError):
        inner(W(3, 1, [1], [0]), W(3, 2, [1], [0, 0]))


def test_fundamental_weights():
    c = Context(5, 2)  # d = 2
    assert fundamental("so-odd", 2, c) == W(5, 2, ["1/2", "1/2"], [0, 0])
    assert fundamental("so-odd", 1, c) == W(5, 2, [1, 0], [0, 0])
    assert fundamental("sp", 2, c) == W(5, 2, [0, 0], [1, 1])
    assert fundamental("so-odd", 0, c) == Weight.zero(c)
    assert fundamental("sp", 0, c) == Weight.zero(c)
    c4 = Context(4, 1)
    assert fundamental("so-even", 1, c4) == W(4, 1, ["1/2", "-1/2"], [0])
    assert fundamental("so-even", 2, c4) == W(4, 1, ["1/2", "1/2"], [0])
    with pytest.raises(ValueError):
        fundamental("sp", 3, c)


def test_rho_values():
    assert rho(Context(3, 1)) == W(3, 1, ["1/2"], ["-1/2"])
    # direct substitution (the delta coefficient
    # at (4,1) is 1 + 1 - 2 - 1 = -1)
    assert rho(Context(4, 1)) == W(4, 1, [1, 0], [-1])
    assert rho(Context(1, 1)) == W(1, 1, [], ["1/2"])


def test_rho_is_half_sum_of_standard_positives(grid):
    # rho = (even positive half-sum) - (odd positive half-sum) for the
    # standard convention, on the whole grid
    from osprep.rootsys import build
    for (m, n) in grid:
        ctx = Context(m, n)
        acc = Weight.zero(ctx)
        for root in build(ctx, "standard").positive:
            acc = acc + (root.weight if root.parity == 0 else -root.weight)
        assert acc.scale(Rat(1, 2)) == rho(ctx), (m, n)


def test_casimir_examples():
    assert casimir_eigenvalue(W(3, 1, ["1/2"], ["-1/2"])) == 0
    assert casimir_eigenvalue(Weight.zero(Context(4, 2))) == 0
    # d=2, n=1, k=2, l=1 instance of the closed formula
    from osprep.rootsys import to_standard
    w1 = W(5, 1, ["5/2", "3/2"], ["-1/2"])
    assert casimir_eigenvalue(to_standard(w1)) == Rat(39, 8)


def test_casimir_expanded_identity():
    lam = W(5, 1, [3, 1], [2])
    r = rho(lam.ctx)
    assert casimir_eigenvalue(lam) == inner(lam, lam) + 2 * inner(lam, r)


def test_fundamental_coefficients():
    assert fundamental_coefficients(W(5, 1, [3, 1], [0])) == (2, 2)
    assert fundamental_coefficients(W(3, 1, [4], [0])) == (8,)
    assert fundamental_coefficients(Weight.zero(Context(5, 1))) == (0, 0)
    with pytest.raises(ValueError):
        fundamental_coefficients(W(3, 1, ["1/3"], [0]))


@given(st.lists(st.integers(0, 6), min_size=2, max_size=2))
def test_fundamental_roundtrip(coeffs):
    ctx = Context(5, 1)
    lam = weight_from_so_coefficients(coeffs, ctx)
    assert fundamental_coefficients(lam) == tuple(coeffs)


def test_enumerate_I_examples():
    entries = enumerate_I(W(3, 1, [2], [0]))
    assert {e.bits for e in entries} == {(0,), (1,)}
    assert [e for e in enumerate_I(Weight.zero(Context(5, 1)))][0].bits == (0, 0)
    assert len(enumerate_I(Weight.zero(Context(5, 1)))) == 1
    # lam = eps_1 + eps_2, d = 2: the patterns (0,0), (0,1) and (1,1) pass
    # the coefficient bound; (1,0) fails mu_1 = 1 > lam_1 = 0
    entries = enumerate_I(W(5, 1, [1, 1], [0]))
    assert {e.bits for e in entries} == {(0, 0), (0, 1), (1, 1)}


def test_enumerate_I_full_when_positive():
    entries = enumerate_I(W(5, 1, [3, 1], [0]))  # lam_j = (2, 2), all > 0
    assert len(entries) == 4


def test_enumerate_I_contains_zero_and_rejects_nondominant():
    assert any(e.count == 0 for e in enumerate_I(W(4, 1, [2, 1], [0])))
    with pytest.raises(ValueError):
        enumerate_I(W(5, 1, [1, 2], [0]))


def test_sigma():
    assert sigma(Weight.zero(Context(4, 1))) == 0
    assert sigma(W(4, 1, [1, 0], [0])) == 1
    assert sigma(W(4, 1, [1, 1], [0])) == 0
    with pytest.raises(ValueError):
        sigma(W(4, 1, [2, 0], [0]))


def test_dominance_checks():
    rep = dominance_checks(W(3, 1, [1], [1]))
    assert rep.osp_consistent and rep.so_dominant
    rep = dominance_checks(W(3, 1, [0], [1]))
    assert not rep.osp_consistent
    assert any("l_1" in v for v in rep.violations)
    rep = dominance_checks(W(5, 1, [0, 1], [0]))
    assert not rep.so_dominant
    # even-m convention flag is informational
    rep = dominance_checks(W(4, 1, [2, 0], [0]))
    assert rep.so_dominant and not rep.even_convention_independent


def test_weight_json_roundtrip():
    w = W(4, 2, ["3/2", "1/2"], [-1, "-1/2"])
    assert Weight.from_json(w.to_json()) == w
