"""Acceptance suite.

Each criterion is one test printing a single pass/fail line; every
numeric comparison is exact (tolerance zero).  The tensor products the
criteria share are computed once per session.
"""

import random

import pytest

from conftest import W
from osprep import decomp, hwmod, matreal, superpoly as sp, tensor
from osprep.exactfield import Rat
from osprep.rootsys import (build, odd_reflection_sequence, reflect_weight,
                            theorem3_standard_label, to_nonstandard, to_standard)
from osprep.weights import (Context, Weight, casimir_eigenvalue, enumerate_I,
                            inner, nu, omega, rho)

GRID = [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1), (3, 2), (4, 1), (4, 2), (5, 1)]
DEPTH = 6


def report(name, ok, detail=""):
    print(f"{name}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else ""))
    assert ok, f"{name} failed: {detail}"


def exceptional(m, n, k):
    """Even m with k + d = n + 1: the indecomposable case."""
    return m % 2 == 0 and k + m // 2 == n + 1


def parts_of(m):
    return ("plus", "minus") if m % 2 == 0 else ("all",)


def factor_weights(ctx):
    """The K_{k eps_1} family (k <= 3); for d = 0 the K_{k delta_1} and
    K_{nu_j} families instead."""
    out = []
    if ctx.d >= 1:
        for k in (1, 2, 3):
            out.append((k, Weight.eps_basis(ctx, 1).scale(k)))
    else:
        for k in (1, 2, 3):
            out.append((k, Weight.delta_basis(ctx, 1).scale(k)))
        for j in range(2, ctx.n + 1):
            out.append((("nu", j), Weight(ctx, [], [1 if i <= j else 0
                                                    for i in range(1, ctx.n + 1)])))
    return out


@pytest.fixture(scope="session")
def products():
    """All depth-6 brute-force reports the criteria share, keyed by
    (m, n, label, part)."""
    runs = {}
    for (m, n) in GRID:
        ctx = Context(m, n)
        for label, hw in factor_weights(ctx):
            for part in parts_of(m):
                runs[(m, n, label, part)] = tensor.brute_force_decompose(
                    ctx, hw, part=part, depth=DEPTH, with_theorem4=True)
    # the multi-column factors of the Theorems 10/11 criterion
    for (m, n), eps in [((3, 1), (2,)), ((3, 1), (3,)), ((3, 1), (4,)),
                        ((5, 1), (2, 0)), ((5, 1), (3, 0)), ((5, 1), (4, 0)),
                        ((5, 1), (2, 2)), ((4, 1), (2, 2))]:
        ctx = Context(m, n)
        eps = tuple(eps) + (0,) * (ctx.d - len(eps))
        hw = Weight(ctx, eps, [0] * n)
        for part in parts_of(m):
            key = (m, n, ("mu",) + eps, part)
            runs[key] = tensor.brute_force_decompose(
                ctx, hw, part=part, depth=DEPTH, with_theorem4=True)
    return runs


def test_ac1_algebra_validation():
    ok = True
    details = []
    for (m, n) in GRID:
        rep = matreal.validate(Context(m, n), jacobi=True)
        if not rep["ok"]:
            ok = False
            details.append(f"({m},{n})")
    report("AC1 algebra validation (is_osp, Chevalley relations, super-Jacobi on grid)", ok,
           "all contexts" if ok else ",".join(details))


def test_ac2_spinor_realization():
    ok = True
    detail = ""
    for (m, n) in GRID:
        ctx = Context(m, n)
        chev = matreal.chevalley(ctx)
        basis = sp.basis_up_to(ctx, 8)
        # transported Chevalley relations, exactly
        for mon in basis:
            for k in range(1, ctx.rank + 1):
                for l in range(1, ctx.rank + 1):
                    acc = {}

                    def add(c, m2):
                        new = acc.get(m2)
                        new = c if new is None else new + c
                        if new:
                            acc[m2] = new
                        else:
                            acc.pop(m2, None)

                    pk = sp.operator_parity(ctx, "X", k)
                    pl = sp.operator_parity(ctx, "Y", l)
                    sgn = -1 if pk and pl else 1
                    for c1, m1 in sp.act_monomial(ctx, "Y", l, mon):
                        for c2, m2 in sp.act_monomial(ctx, "X", k, m1):
                            add(c1 * c2, m2)
                    for c1, m1 in sp.act_monomial(ctx, "X", k, mon):
                        for c2, m2 in sp.act_monomial(ctx, "Y", l, m1):
                            add(c1 * c2 * (-sgn), m2)
                    if k == l:
                        for c, m2 in sp.act_monomial(ctx, "H", k, mon):
                            add(-c, m2)
                    if acc:
                        ok = False
                        detail = f"relation ({m},{n}) k={k} l={l} on {mon}"
            # H eigenvalues match the matrix evaluation of the weight
            w = sp.weight_of(mon, ctx)
            for k in range(1, ctx.rank + 1):
                if sp.h_eigenvalue(ctx, k, mon) != chev[k][2].weight_eval(w):
                    ok = False
                    detail = f"H eigenvalue ({m},{n})"
        # completely pointed at degree 8
        weights_seen = set()
        for mon in basis:
            key = sp.weight_of(mon, ctx).key()
            if key in weights_seen:
                ok = False
                detail = f"repeated weight in ({m},{n})"
            weights_seen.add(key)
        # highest weight vectors with the stated weights
        for part in parts_of(m):
            if part == "minus" and m % 2 == 1:
                continue
            mon, w = sp.spinor_top(ctx, part)
            want = omega(ctx, ctx.d) - nu(ctx, n).scale(Rat(1, 2)) \
                if part in ("all", "plus") else \
                omega(ctx, ctx.d) + nu(ctx, n - 1) - nu(ctx, n).scale(Rat(3, 2))
            if w != want or sp.weight_of(mon, ctx) != want:
                ok = False
                detail = f"top weight ({m},{n},{part})"
            for k in range(1, ctx.rank + 1):
                if sp.act_monomial(ctx, "X", k, mon):
                    ok = False
                    detail = f"top not annihilated ({m},{n},{part})"
    report("AC2 spinor realization (relations transported at degree 8, "
           "completely pointed, annihilated tops)", ok, detail)


def test_ac3_odd_reflections():
    ok = True
    detail = ""
    rng = random.Random(2024)
    for (m, n) in GRID:
        ctx = Context(m, n)
        d = ctx.d
        if d >= 1:
            for k in range(1, 6):
                got = to_standard(Weight.eps_basis(ctx, 1).scale(k))
                want = nu(ctx, k) if k <= n else \
                    Weight.eps_basis(ctx, 1).scale(k - n) + nu(ctx, n)
                if got != want:
                    ok = False
                    detail = f"k eps_1 conversion ({m},{n}) k={k}"
        for _ in range(50):
            ks = sorted((rng.randrange(0, 7) for _ in range(d)), reverse=True)
            kd = ks[-1] if d else n
            cut = min(kd, n)
            ls = sorted((rng.randrange(0, 4) for _ in range(cut)), reverse=True)
            ls += [0] * (n - cut)
            mu = W(m, n, ks, ls)
            lam = to_standard(mu)
            if lam != theorem3_standard_label(mu) or to_nonstandard(lam) != mu:
                ok = False
                detail = f"Theorem 3 ({m},{n}) at {mu}"
        top = omega(ctx, d) - nu(ctx, n).scale(Rat(1, 2))
        if to_standard(top) != top:
            ok = False
            detail = f"spinor fixed point ({m},{n})"
        if m % 2 == 0:
            minus = omega(ctx, d) + nu(ctx, n - 1) - nu(ctx, n).scale(Rat(3, 2))
            om_less = omega(ctx, d - 1) if d >= 2 else \
                Weight(ctx, [Rat(-1, 2)], [0] * n)  # the other so(2) chirality
            if to_standard(minus) != om_less - nu(ctx, n).scale(Rat(1, 2)):
                ok = False
                detail = f"minus spinor ({m},{n})"
    report("AC3 odd reflections (k eps_1 labels k=1..5, closed form x50 random, "
           "round trips, spinor fixed points)", ok, detail)


def test_ac4_theorem4_identity(products):
    ok = True
    detail = ""
    checked = 0
    for (m, n) in [(1, 1), (2, 1), (2, 2), (3, 1), (4, 2), (5, 1)]:
        for k in (1, 2, 3):
            for part in parts_of(m):
                rep = products[(m, n, k, part)]
                if not rep.theorem4_holds():
                    ok = False
                    bad = [kv for kv in rep.theorem4_table.items()
                           if kv[1][0] + kv[1][1] != kv[1][2]]
                    detail = f"({m},{n}) k={k} {part}: {bad[:2]}"
                checked += len(rep.theorem4_table)
    report("AC4 Theorem 4 identity dim A + dim n-.W = dim W at every "
           "window weight", ok, detail or f"{checked} weight spaces checked")


def closed_form_for(ctx, label, part):
    if isinstance(label, tuple) and label[0] == "mu":
        return decomp.theorem11_decompose(Weight(ctx, label[1:], [0] * ctx.n), part)
    if isinstance(label, tuple) and label[0] == "nu":
        return decomp.spinor_times_ke1(ctx, label[1], part)
    return decomp.spinor_times_ke1(ctx, label, part)


def test_ac5_theorem8_oracle_equivalence(products):
    ok = True
    detail = ""
    cases = 0
    for (m, n) in GRID:
        ctx = Context(m, n)
        labels = [k for k in (1, 2, 3)] if ctx.d >= 1 else \
            [1] + [("nu", j) for j in range(2, n + 1)]
        for label in labels:
            if ctx.d >= 1 and exceptional(m, n, label):
                continue
            if ctx.d == 0 and isinstance(label, int) and label > n:
                continue  # covered by AC4 only; no closed form beyond nu_n
            for part in parts_of(m):
                rep = products[(m, n, label, part)]
                closed = closed_form_for(ctx, label, part)
                brute = rep.result
                same_weights = ({s.hw_nonstandard.key() for s in closed.summands}
                                == {s.hw_nonstandard.key() for s in brute.summands})
                mult_free = all(s.multiplicity == 1 for s in brute.summands)
                same_structure = closed.structure == brute.structure \
                    == "completely_reducible"
                chars = rep.character_match
                std_ok = all(s.hw_standard == to_standard(s.hw_nonstandard)
                             for s in closed.summands)
                if not (same_weights and mult_free and same_structure
                        and chars and std_ok):
                    ok = False
                    detail = f"({m},{n}) {label} {part}"
                cases += 1
    report("AC5 Theorem 8 oracle equivalence (closed vs brute force, "
           "characters at depth 6)", ok, detail or f"{cases} products")


def test_ac6_theorem9_exceptional(products):
    ok = True
    detail = ""
    for (m, n, k) in [(2, 1, 1), (2, 2, 2), (4, 2, 1)]:
        ctx = Context(m, n)
        for part in parts_of(m):
            rep = products[(m, n, k, part)]
            prim_count = sum(1 for v in rep.primitive_dims.values() if v)
            chain_ok = (rep.result.structure == "chain"
                        and len(rep.membership_edges) == 1
                        and rep.result.chain is not None)
            t4_ok = rep.theorem4_holds()
            closed = decomp.spinor_times_ke1(ctx, k, part)
            labels_ok = (closed.structure == "chain" and
                         {s.hw_nonstandard.key() for s in closed.summands}
                         == {s.hw_nonstandard.key() for s in rep.result.summands})
            if not (prim_count == 2 and chain_ok and t4_ok and labels_ok):
                ok = False
                detail = f"({m},{n}) k={k} {part}"
        # the witness criterion: sum_j (-1)^j C_j = 0 iff k + d = n + 1,
        # reproduced by the membership solver
        for kk in (k, k + 1):
            Wt, wvec, _, _, coeffs = tensor.theorem8_witness(ctx, kk, "plus")
            total = sum(((-1) ** j) * coeffs[j].re for j in coeffs)
            member = tensor.membership(Wt, wvec, Wt.top_vector())
            if (total == 0) != member or member != exceptional(m, n, kk):
                ok = False
                detail = f"witness ({m},{n}) k={kk}"
    report("AC6 Theorem 9 chains (two primitives, membership, sign-sum "
           "criterion, Theorem 4 pointwise)", ok, detail)


def test_ac7_lemma3():
    ok = True
    detail = ""
    samples = [(d, n, k, l)
               for d in (2, 3) for n in (1, 2, 3)
               for (k, l) in ((2, 1), (3, 1), (3, 2), (4, 2))][:20]
    for (d, n, k, l) in samples:
        ctx = Context(2 * d + 1, n)
        base = omega(ctx, d) - nu(ctx, n).scale(Rat(1, 2))
        e1, e2 = Weight.eps_basis(ctx, 1), Weight.eps_basis(ctx, 2)
        ws = [e1.scale(k) + e2.scale(l) + base,
              e1.scale(k) + e2.scale(l - 1) + base,
              e1.scale(k - 1) + e2.scale(l - 1) + base,
              e1.scale(k - 1) + e2.scale(l) + base]
        vals = [casimir_eigenvalue(to_standard(w)) for w in ws]
        rep = decomp.lemma3_reducibility(d, n, k, l)
        diffs = rep["differences"]
        pairs = [("kappa1-kappa2", 0, 1), ("kappa1-kappa3", 0, 2),
                 ("kappa1-kappa4", 0, 3), ("kappa2-kappa3", 1, 2),
                 ("kappa2-kappa4", 1, 3), ("kappa3-kappa4", 2, 3)]
        if vals[0] != rep["casimir_kappa1"] or \
                any(vals[i] - vals[j] != diffs[name] for name, i, j in pairs):
            ok = False
            detail = f"(d={d},n={n},k={k},l={l})"
        if rep["criterion_hit"] != (k + l == 2 + 2 * n - 2 * d):
            ok = False
            detail = f"predicate (d={d},n={n},k={k},l={l})"
    report("AC7 Lemma 3 Casimir differences at 20 tuples, exactly", ok, detail)


def test_ac8_theorems_10_11(products):
    ok = True
    detail = ""
    for (m, n), eps in [((3, 1), (2,)), ((3, 1), (3,)), ((3, 1), (4,)),
                        ((5, 1), (2, 0)), ((5, 1), (3, 0)), ((5, 1), (4, 0)),
                        ((5, 1), (2, 2)), ((4, 1), (2, 2))]:
        ctx = Context(m, n)
        eps = tuple(eps) + (0,) * (ctx.d - len(eps))
        mu = Weight(ctx, eps, [0] * n)
        for part in parts_of(m):
            rep = products[(m, n, ("mu",) + eps, part)]
            closed = decomp.theorem11_decompose(mu, part)
            same = ({s.hw_nonstandard.key() for s in closed.summands}
                    == {s.hw_nonstandard.key() for s in rep.result.summands}
                    and rep.result.structure == "completely_reducible"
                    and rep.character_match)
            if not same:
                ok = False
                detail = f"({m},{n}) mu={mu} {part}"
            # sigma shift appears exactly as stated (nonstandard labels)
            if m % 2 == 0:
                plus_top, minus_top = (omega(ctx, ctx.d) - nu(ctx, n).scale(Rat(1, 2)),
                                       omega(ctx, ctx.d) + nu(ctx, n - 1)
                                       - nu(ctx, n).scale(Rat(3, 2)))
                base = plus_top if part == "plus" else minus_top
                dn = Weight.delta_basis(ctx, n)
                sgn = -1 if part == "plus" else 1
                want = set()
                for e in enumerate_I(mu):
                    from osprep.weights import sigma
                    want.add((mu - e.mu + base
                              + dn.scale(sgn * sigma(e.mu))).key())
                if want != {s.hw_nonstandard.key() for s in closed.summands}:
                    ok = False
                    detail = f"sigma shift ({m},{n}) {part}"
            # convention coherence, summand by summand
            for s in closed.summands:
                if s.hw_standard != to_standard(s.hw_nonstandard):
                    ok = False
                    detail = f"labels ({m},{n}) {part}"
            t10 = decomp.theorem10_decompose(
                Weight(ctx, [c - n if c else 0 for c in eps], [sum(1 for c in eps if c)] * n),
                part)
            if sorted(s.hw_standard.key() for s in t10.summands) != \
                    sorted(s.hw_standard.key() for s in closed.summands):
                ok = False
                detail = f"theorem10 ({m},{n}) {part}"
    report("AC8 Theorems 10/11 (brute-force match, sigma shift, "
           "convention coherence)", ok, detail)


def test_ac9_lemma2_theorem7(products):
    ok = True
    detail = ""
    total = 0
    for key, rep in products.items():
        if any(v > 1 for v in rep.primitive_dims.values()):
            ok = False
            detail = f"multiplicity > 1 in {key}"
        if rep.primitives_outside_candidates:
            ok = False
            detail = f"primitive outside candidates in {key}"
        total += sum(1 for v in rep.primitive_dims.values() if v)
    report("AC9 Lemma 2 / Theorem 7 (primitive dim <= 1, zero escapes)",
           ok, detail or f"{total} primitive vectors across "
                         f"{len(products)} products")


def test_ac10_corollary2_bound(products):
    ok = True
    detail = ""
    for key, rep in products.items():
        if rep.result.structure != "completely_reducible":
            continue
        bound = rep.factor_dim
        for skey, chars in rep.summand_characters.items():
            worst = max(chars.values(), default=0)
            if worst > bound:
                ok = False
                detail = f"{key}: multiplicity {worst} > dim K = {bound}"
    report("AC10 Corollary 2 bound (summand multiplicities <= dim K_Lambda)",
           ok, detail)


def test_casimir_separation_with_exceptions(products):
    # completely reducible outputs have pairwise distinct Casimir values.
    # Exception manifest: every B(0|n) product -- there the summand labels
    # l and -1-l pair up with equal eigenvalues; the primitives are
    # separated by the odd-root calculation there instead.
    ok = True
    detail = ""
    for key, rep in products.items():
        if rep.result.structure != "completely_reducible":
            continue
        vals = {}
        for s in rep.result.summands:
            vals.setdefault(casimir_eigenvalue(s.hw_standard), []).append(s)
        clashes = {v: ss for v, ss in vals.items() if len(ss) > 1}
        if clashes and key[0] != 1:
            ok = False
            detail = f"{key}: equal Casimir values"
    # the manifest exception really occurs in the three-summand case
    rep = products[(1, 2, ("nu", 2), "all")]
    vals = [casimir_eigenvalue(s.hw_standard) for s in rep.result.sorted_summands()]
    assert vals[0] == vals[2] and vals[0] != vals[1]
    report("Casimir separation with the B(0|n) exception manifest", ok, detail)
