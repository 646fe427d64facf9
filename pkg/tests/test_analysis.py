import random
from fractions import Fraction

import pytest

from skewmon.arith import RatFunc, poly_to_text
from skewmon.actions import MonoidElement
from skewmon.errors import (
    DefinitionError,
    PreconditionError,
    ResourceCapError,
    UnsupportedModeError,
)
from skewmon.constructors import (
    AlgebraSpec,
    build_shift_algebra,
    demazure_elements,
    gt_embedding,
    gwa_embed,
    witten_woronowicz_spec,
)
from skewmon.skewring import SkewElement, commutator
from skewmon.analysis import (
    GrowthProfile,
    center_candidates,
    comm,
    commutant_filter,
    fit_loglog_slope,
    gen,
    growth_profile,
    lattice_contains,
    monoid_growth,
    ore_witness,
    smith_normal_form,
    standard_identity,
    sum_of,
    support_lattice_rank,
    verify_relations,
)
from skewmon.randomized import ore_witness_trials, random_ratfunc


class TestVerifyRelations:
    def test_commutative_scalars(self):
        ctx = build_shift_algebra(2, 0)
        spec = AlgebraSpec(
            ctx,
            {
                "x": SkewElement.scalar(ctx, ctx.table.var("x1")),
                "y": SkewElement.scalar(ctx, ctx.table.var("x2")),
            },
            [],
        )
        report = verify_relations(spec, [{"name": "[x,y]=0", "expr": comm(gen("x"), gen("y"))}])
        assert report.passed

    def test_shift_commutator_relation(self):
        ctx = build_shift_algebra(1, 1)
        spec = AlgebraSpec(
            ctx,
            {
                "eps": SkewElement.generator(ctx, (1,)),
                "x": SkewElement.scalar(ctx, ctx.table.var("x1")),
            },
            [],
        )
        rel = {"name": "[eps,x] + eps = 0",
               "expr": sum_of(comm(gen("eps"), gen("x")), gen("eps"))}
        report = verify_relations(spec, [rel])
        assert report.passed, report.to_text()

    def test_failure_carries_residual(self):
        ctx = build_shift_algebra(1, 1)
        spec = AlgebraSpec(
            ctx, {"eps": SkewElement.generator(ctx, (1,)),
                  "x": SkewElement.scalar(ctx, ctx.table.var("x1"))}, []
        )
        report = verify_relations(
            spec, [{"name": "bogus", "expr": comm(gen("eps"), gen("x"))}]
        )
        assert not report.passed
        assert report.checks[0].residual == "-1 ⊗ [1]"

    def test_unknown_name(self):
        ctx = build_shift_algebra(1, 1)
        spec = AlgebraSpec(ctx, {}, [])
        with pytest.raises(DefinitionError):
            verify_relations(spec, [{"name": "bad", "expr": gen("nope")}])

    def test_expression_helpers(self):
        from skewmon.analysis import evaluate_expression, lincomb, prod, scaled

        ctx = build_shift_algebra(1, 1)
        eps = SkewElement.generator(ctx, (1,))
        x = SkewElement.scalar(ctx, ctx.table.var("x1"))
        spec = AlgebraSpec(ctx, {"eps": eps, "x": x}, [])
        assert evaluate_expression(spec, prod(gen("eps"), gen("x"))) == eps * x
        minus_three_halves = SkewElement.scalar(ctx, RatFunc.const(1, "-3/2"))
        assert evaluate_expression(spec, scaled("-3/2", gen("x"))) == minus_three_halves * x
        value = evaluate_expression(spec, lincomb((2, gen("x")), ("-1/2", gen("eps"))))
        assert value == 2 * x - SkewElement.scalar(ctx, RatFunc.const(1, "1/2")) * eps
        const = evaluate_expression(spec, {"const": "5/3"})
        assert const == SkewElement.scalar(ctx, RatFunc.const(1, "5/3"))
        with pytest.raises(DefinitionError):
            evaluate_expression(spec, {"mystery": []})


class TestSmithNormalForm:
    def test_coprime_pair(self):
        assert smith_normal_form([(2,), (3,)]) == (1, [1])

    def test_empty(self):
        assert smith_normal_form([]) == (0, [])
        assert support_lattice_rank([]) == (0, [])

    def test_divisibility_chain(self):
        rank, divisors = smith_normal_form([[2, 0], [0, 12]])
        assert rank == 2
        assert divisors == [2, 12]
        rank, divisors = smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, 4, 16]])
        assert rank == 3
        for a, b in zip(divisors, divisors[1:]):
            assert b % a == 0

    def test_membership_oracle_random(self):
        # certified classes: true members, rational-span outsiders, and
        # fractional-solution outsiders for full-rank square matrices
        rng = random.Random(4242)
        for _ in range(60):
            k = rng.randint(1, 4)
            n = rng.randint(1, 4)
            rows = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(k)]
            coeffs = [rng.randint(-3, 3) for _ in range(k)]
            member = [sum(c * r[j] for c, r in zip(coeffs, rows)) for j in range(n)]
            assert lattice_contains(rows, member)
            rank, _ = smith_normal_form(rows)
            if rank < n:
                # add a vector outside the rational row span
                outside = _outside_row_span(rows, n, rng)
                if outside is not None:
                    assert not lattice_contains(rows, outside)

    def test_membership_full_rank_integrality(self):
        rng = random.Random(97)
        checked = 0
        while checked < 40:
            n = rng.randint(1, 4)
            rows = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
            det = _det(rows)
            if det == 0:
                continue
            checked += 1
            target = [rng.randint(-6, 6) for _ in range(n)]
            # solve x * rows = target over the rationals; member iff integral
            sol = _solve_left(rows, target)
            expected = sol is not None and all(x.denominator == 1 for x in sol)
            assert lattice_contains(rows, target) == expected

    def test_support_lattice_modes(self):
        th = demazure_elements(2)
        with pytest.raises(UnsupportedModeError):
            support_lattice_rank(th)

    def test_support_lattice_from_elements(self):
        ctx = build_shift_algebra(1, 1)
        elems = [
            SkewElement.generator(ctx, (2,)),
            SkewElement.generator(ctx, (3,), ctx.table.var("x1")),
        ]
        assert support_lattice_rank(elems) == (1, [1])


def _det(rows):
    m = [list(map(Fraction, r)) for r in rows]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        pivot = next((i for i in range(col, n) if m[i][col]), None)
        if pivot is None:
            return 0
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for i in range(col + 1, n):
            f = m[i][col] * inv
            m[i] = [a - f * b for a, b in zip(m[i], m[col])]
    return det


def _solve_left(rows, target):
    # solve x * rows = target for square invertible rows
    n = len(rows)
    cols = list(zip(*rows))
    aug = [list(map(Fraction, cols[i])) + [Fraction(target[i])] for i in range(n)]
    for col in range(n):
        pivot = next((i for i in range(col, n) if aug[i][col]), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col]:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[col])]
    return [aug[i][n] for i in range(n)]


def _outside_row_span(rows, n, rng):
    # find a vector not in the rational row span by rejection sampling
    for _ in range(50):
        v = [rng.randint(-4, 4) for _ in range(n)]
        m = [list(map(Fraction, r)) for r in rows]
        rank0 = _rank(m)
        rank1 = _rank(m + [list(map(Fraction, v))])
        if rank1 > rank0:
            return v
    return None


def _rank(rows):
    m = [list(r) for r in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    r = 0
    for col in range(cols):
        pivot = next((i for i in range(r, len(m)) if m[i][col]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        rank += 1
    return rank


class TestCenter:
    def test_witten_woronowicz_center_is_constants(self):
        alg = gwa_embed(witten_woronowicz_spec())
        basis = center_candidates(alg, 4)
        names = alg.context.table.names
        assert [poly_to_text(b.num, names) for b in basis] == ["1"]

    def test_s23_center_filtration(self):
        ctx = build_shift_algebra(3, 2)
        spec = AlgebraSpec(ctx, {}, [])
        names = ctx.table.names
        b1 = center_candidates(spec, 1)
        assert [poly_to_text(b.num, names) for b in b1] == ["1", "1*x3"]
        b2 = center_candidates(spec, 2)
        assert [poly_to_text(b.num, names) for b in b2] == ["1", "1*x3", "1*x3^2"]

    def test_trivial_monoid_and_group(self):
        ctx = build_shift_algebra(3, 0)
        basis = center_candidates(AlgebraSpec(ctx, {}, []), 1)
        names = ctx.table.names
        assert [poly_to_text(b.num, names) for b in basis] == ["1", "1*x3", "1*x2", "1*x1"]

    def test_group_invariance_constraint(self):
        ctx = build_shift_algebra(2, 0, group_generators=[(1, 0)])
        basis = center_candidates(AlgebraSpec(ctx, {}, []), 2)
        names = ctx.table.names
        texts = [poly_to_text(b.num, names) for b in basis]
        assert texts == ["1", "1*x1 + 1*x2", "1*x1*x2", "1*x1^2 + 1*x2^2"]

    def test_closed_under_products_within_bound(self):
        from skewmon.analysis import _SpanReducer, _split_by_nonparam

        ctx = build_shift_algebra(3, 2)
        spec = AlgebraSpec(ctx, {}, [])
        basis = center_candidates(spec, 4)
        assert len(basis) == 5  # 1, x3, x3^2, x3^3, x3^4

        def vec_of(p):
            assert p.is_polynomial()
            return {
                head: RatFunc.from_poly(tail)
                for head, tail in _split_by_nonparam(p.num, ctx.table).items()
            }

        reducer = _SpanReducer()
        for b in basis:
            reducer.add(vec_of(b))
        for a in basis:
            for b in basis:
                p = a * b
                if p.num.total_degree() <= 4:
                    assert reducer.contains(vec_of(p))

    def test_always_contains_constants(self):
        alg = gt_embedding(2)
        basis = center_candidates(alg, 0)
        assert len(basis) == 1
        assert basis[0] == RatFunc.const(alg.context.table.nvars, 1)


class TestCommutantFilter:
    def test_gamma_retained_against_diagonal(self):
        alg = gt_embedding(2)
        spec = AlgebraSpec(
            alg.context,
            {"E11": alg.generators["E11"], "E22": alg.generators["E22"]},
            [],
        )
        cands = [SkewElement.scalar(alg.context, g) for g in alg.gamma_generators]
        assert len(commutant_filter(spec, cands)) == len(cands)

    def test_eps_filtered_out(self):
        ctx = build_shift_algebra(1, 1)
        spec = AlgebraSpec(ctx, {"x": SkewElement.scalar(ctx, ctx.table.var("x1"))}, [])
        eps = SkewElement.generator(ctx, (1,))
        one = SkewElement.one(ctx)
        kept = commutant_filter(spec, [eps, one])
        assert kept == [one]


class TestOreWitness:
    def test_trivial_s(self):
        ctx = build_shift_algebra(1, 1)
        u = SkewElement.generator(ctx, (1,))
        u2, r = ore_witness(RatFunc.const(1, 1), u)
        assert u2 == u
        assert r == RatFunc.const(1, 1)

    def test_s11_example(self):
        ctx = build_shift_algebra(1, 1)
        x = ctx.table.var("x1")
        eps = SkewElement.generator(ctx, (1,))
        u2, r = ore_witness(x, eps)
        lhs = eps * SkewElement.scalar(ctx, r)
        rhs = SkewElement.scalar(ctx, x) * u2
        assert lhs == rhs
        assert not r.is_zero() and r.is_polynomial()

    def test_gamma_scalar(self):
        ctx = build_shift_algebra(2, 2, group_generators=[(1, 0)])
        gamma = ctx.table.var("x1") * ctx.table.var("x2")
        s = ctx.table.var("x1") + ctx.table.var("x2")
        u = SkewElement.scalar(ctx, gamma)
        u2, r = ore_witness(s, u)
        assert u * SkewElement.scalar(ctx, r) == SkewElement.scalar(ctx, s) * u2
        for g in ctx.group.generator_elements():
            assert g.apply(r) == r

    def test_rational_coefficients_cleared(self):
        ctx = build_shift_algebra(2, 2)
        x1 = ctx.table.var("x1")
        u = SkewElement.generator(ctx, (1, -1), x1.invert())
        s = ctx.table.var("x2")
        u2, r = ore_witness(s, u)
        for c in u2.coeffs.values():
            assert c.is_polynomial()

    def test_preconditions(self):
        ctx = build_shift_algebra(2, 2, group_generators=[(1, 0)])
        u = SkewElement.one(ctx)
        with pytest.raises(PreconditionError):
            ore_witness(RatFunc.zero(2), u)
        with pytest.raises(PreconditionError):
            ore_witness(ctx.table.var("x1"), u)  # not G-invariant
        with pytest.raises(PreconditionError):
            ore_witness(ctx.table.var("x1").invert(), u)  # not polynomial

    def test_randomized_battery(self):
        ctx = build_shift_algebra(2, 2)
        report = ore_witness_trials(ctx, 30, seed=5)
        assert report.passed, report.to_text()

    def test_randomized_with_group(self):
        ctx = build_shift_algebra(2, 2, group_generators=[(1, 0)])
        report = ore_witness_trials(ctx, 15, seed=6)
        assert report.passed, report.to_text()


class TestStandardIdentity:
    def test_commuting_pair_vanishes(self):
        ctx = build_shift_algebra(2, 0)
        a = SkewElement.scalar(ctx, ctx.table.var("x1"))
        b = SkewElement.scalar(ctx, ctx.table.var("x2"))
        assert standard_identity(2, [a, b]).is_zero()

    def test_noncommutative_witness(self):
        ctx = build_shift_algebra(1, 1)
        eps = SkewElement.generator(ctx, (1,))
        xe = SkewElement.scalar(ctx, ctx.table.var("x1"))
        value = standard_identity(2, [eps, xe])
        assert value == -eps
        assert value == commutator(eps, xe)

    def test_repeated_argument_vanishes(self):
        ctx = build_shift_algebra(1, 1)
        rng = random.Random(1)
        for _ in range(5):
            a = SkewElement.generator(ctx, (rng.randint(-1, 1),), random_ratfunc(rng, 1))
            b = SkewElement.generator(ctx, (rng.randint(-1, 1),), random_ratfunc(rng, 1))
            assert standard_identity(3, [a, a, b]).is_zero()

    def test_alternating_and_multilinear(self):
        ctx = build_shift_algebra(1, 1)
        rng = random.Random(2)
        a = SkewElement.generator(ctx, (1,), random_ratfunc(rng, 1))
        b = SkewElement.scalar(ctx, random_ratfunc(rng, 1))
        c = SkewElement.generator(ctx, (-1,), random_ratfunc(rng, 1))
        base = standard_identity(3, [a, b, c])
        assert standard_identity(3, [b, a, c]) == -base
        # multilinearity in the first slot
        d = SkewElement.scalar(ctx, random_ratfunc(rng, 1))
        lhs = standard_identity(3, [a + d, b, c])
        rhs = base + standard_identity(3, [d, b, c])
        assert lhs == rhs

    def test_cost_cap(self):
        ctx = build_shift_algebra(1, 1)
        ones = [SkewElement.one(ctx)] * 7
        with pytest.raises(ResourceCapError):
            standard_identity(7, ones)


class TestGrowth:
    def test_weyl_like_dims(self):
        ctx = build_shift_algebra(1, 1)
        frame = [
            SkewElement.one(ctx),
            SkewElement.scalar(ctx, ctx.table.var("x1")),
            SkewElement.generator(ctx, (1,)),
        ]
        profile = growth_profile(frame, 12)
        assert profile.dims == [(k + 1) * (k + 2) // 2 for k in range(1, 13)]

    def test_polynomial_ring_growth(self):
        ctx = build_shift_algebra(1, 0)
        frame = [SkewElement.one(ctx), SkewElement.scalar(ctx, ctx.table.var("x1"))]
        profile = growth_profile(frame, 10)
        assert profile.dims == list(range(2, 12))
        assert Fraction(4, 5) <= profile.slope <= Fraction(6, 5)

    def test_constant_frame(self):
        ctx = build_shift_algebra(1, 0)
        profile = growth_profile([SkewElement.one(ctx)], 5)
        assert profile.dims == [1] * 5
        assert profile.slope == 0

    def test_requires_identity(self):
        ctx = build_shift_algebra(1, 0)
        with pytest.raises(PreconditionError):
            growth_profile([SkewElement.scalar(ctx, ctx.table.var("x1"))], 4)

    def test_dim_cap(self):
        ctx = build_shift_algebra(1, 1)
        frame = [
            SkewElement.one(ctx),
            SkewElement.scalar(ctx, ctx.table.var("x1")),
            SkewElement.generator(ctx, (1,)),
        ]
        with pytest.raises(ResourceCapError) as info:
            growth_profile(frame, 12, dim_cap=20)
        assert info.value.partial is not None
        assert info.value.partial.dims[0] == 3

    def test_profile_validation(self):
        with pytest.raises(PreconditionError):
            GrowthProfile([3, 2], Fraction(1), (1, 2))
        with pytest.raises(PreconditionError):
            GrowthProfile([2, 5], Fraction(1), (1, 2))  # 5 > 2*2

    def test_rational_coefficient_frame(self):
        # denominators force the per-key common-denominator path
        ctx = build_shift_algebra(1, 1)
        inv_x = SkewElement.scalar(ctx, ctx.table.var("x1").invert())
        frame = [SkewElement.one(ctx), inv_x]
        profile = growth_profile(frame, 6)
        assert profile.dims == [2, 3, 4, 5, 6, 7]


class TestMonoidGrowth:
    def test_z1(self):
        ctx = build_shift_algebra(1, 1)
        gens = [MonoidElement(ctx, (1,)), MonoidElement(ctx, (-1,))]
        assert monoid_growth(gens, 10) == [2 * k + 1 for k in range(1, 11)]

    def test_z2(self):
        sizes = monoid_growth([(1, 0), (-1, 0), (0, 1), (0, -1)], 20)
        assert sizes == [2 * k * k + 2 * k + 1 for k in range(1, 21)]
        slope = fit_loglog_slope(sizes)
        assert Fraction(9, 5) <= slope <= Fraction(11, 5)

    def test_n1_monoid(self):
        assert monoid_growth([(1,)], 8) == list(range(2, 10))
