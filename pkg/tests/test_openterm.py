import pytest

from hobind.binder import Exotic, LAM, abstr, abstr_2, classify
from hobind.expr import APP, ERR, VAR, expr_equal
from hobind.openterm import (
    ArityMismatch,
    ExoticFunction,
    Hole,
    OpenTerm,
    abstr_oracle2_componentwise,
    enumerate_db_terms,
    enumerate_open_terms,
    exotic_library,
    from_text,
    gen_open_term,
    reflect1,
    reflect2,
    reify1,
    to_text,
)
from hobind.terms import Abs, App, Bnd, Con, Err, Var, proper, size


class TestOpenTermInvariants:
    def test_hole_outside_arity(self):
        with pytest.raises(ValueError):
            OpenTerm(1, Hole(1))

    def test_dangling_body(self):
        with pytest.raises(ValueError):
            OpenTerm(1, Bnd(0))

    def test_bound_index_ok(self):
        OpenTerm(1, Abs(App(Bnd(0), Hole(0))))

    def test_garbage_body(self):
        with pytest.raises(ValueError):
            OpenTerm(1, "nope")


class TestReflect:
    def test_substitution(self):
        fn = reflect1(OpenTerm(1, App(Hole(0), Var(3))))
        assert expr_equal(fn(VAR(9)), APP(VAR(9), VAR(3)))

    def test_pair_substitution(self):
        fn = reflect2(OpenTerm(2, App(Hole(0), Hole(1))))
        assert expr_equal(fn(VAR(1), VAR(2)), APP(VAR(1), VAR(2)))

    def test_arity_mismatch(self):
        with pytest.raises(ArityMismatch):
            reflect1(OpenTerm(2, Hole(1)))
        with pytest.raises(ArityMismatch):
            reflect2(OpenTerm(1, Hole(0)))

    def test_reflected_closures_are_syntactic(self):
        for ot in enumerate_open_terms(1, 3):
            assert abstr(reflect1(ot)) is True


class TestReify:
    def test_identity(self):
        assert reify1(lambda x: x) == OpenTerm(1, Hole(0))

    def test_body(self):
        got = reify1(lambda x: APP(x, VAR(3)))
        assert got == OpenTerm(1, App(Hole(0), Var(3)))

    def test_exotic(self):
        from hobind.expr import expr_size

        with pytest.raises(ExoticFunction):
            reify1(lambda x: VAR(expr_size(x)))

    def test_round_trip_exhaustive(self):
        # depth 4 would be ~6.1M terms; depth 3 is exhaustive and fast,
        # the deep cases are covered by the random sweep below
        for ot in enumerate_open_terms(1, 3):
            assert reify1(reflect1(ot)) == ot

    def test_round_trip_random_deep(self):
        for s in range(1000):
            ot = gen_open_term(1, 6, seed=s)
            assert reify1(reflect1(ot)) == ot


class TestComponentwiseOracle:
    def test_examples(self):
        assert abstr_oracle2_componentwise(OpenTerm(2, App(Hole(0), Hole(1)))) is True
        assert (
            abstr_oracle2_componentwise(OpenTerm(2, Abs(App(Bnd(0), Hole(1))))) is True
        )
        assert abstr_oracle2_componentwise(OpenTerm(2, Con("c1"))) is True

    def test_arity_check(self):
        with pytest.raises(ArityMismatch):
            abstr_oracle2_componentwise(OpenTerm(1, Hole(0)))

    def test_agrees_with_closure_check(self):
        for ot in enumerate_open_terms(2, 3):
            assert abstr_2(reflect2(ot)) == abstr_oracle2_componentwise(ot)

    def test_slice_families_are_syntactic(self):
        from hobind.binder import ground_samples

        grounds = ground_samples()
        for i, ot in enumerate(enumerate_open_terms(2, 3)):
            if i % 25:
                continue
            fn = reflect2(ot)
            assert all(abstr(lambda x, g=g: fn(x, g)) for g in grounds)
            assert all(abstr(lambda y, g=g: fn(g, y)) for g in grounds)
        for s in range(100):
            fn = reflect2(gen_open_term(2, 6, seed=50_000 + s))
            assert abstr_2(fn)
            assert all(abstr(lambda x, g=g: fn(x, g)) for g in grounds)


class TestEnumeration:
    def test_depth_one_bodies(self):
        got = list(enumerate_open_terms(1, 1))
        expected = [
            OpenTerm(1, Hole(0)),
            OpenTerm(1, Con("c1")),
            OpenTerm(1, Con("c2")),
            OpenTerm(1, Var(0)),
            OpenTerm(1, Var(1)),
            OpenTerm(1, Err()),
        ]
        assert got == expected

    def test_duplicate_free(self):
        terms = list(enumerate_open_terms(1, 3))
        assert len(terms) == len(set(terms))

    def test_all_valid(self):
        for ot in enumerate_open_terms(2, 3):
            OpenTerm(ot.arity, ot.body)  # revalidates invariants

    def test_bad_depth(self):
        with pytest.raises(ValueError):
            list(enumerate_open_terms(1, 0))

    def test_db_terms_cover_improper_ones(self):
        terms = list(enumerate_db_terms(4))
        assert len(terms) == len(set(terms))
        assert any(not proper(t) for t in terms)
        assert all(size(t) <= 4 for t in terms)


class TestGeneration:
    def test_deterministic(self):
        assert gen_open_term(1, 4, seed=7) == gen_open_term(1, 4, seed=7)

    def test_spread(self):
        got = {gen_open_term(1, 5, seed=s) for s in range(50)}
        assert len(got) > 20

    def test_valid(self):
        for s in range(200):
            ot = gen_open_term(2, 5, seed=s)
            OpenTerm(ot.arity, ot.body)


class TestExoticLibrary:
    def test_unary_all_fail(self):
        for name, fn in exotic_library(1):
            assert abstr(fn) is False, name
            assert expr_equal(LAM(fn), ERR()), name
            assert classify(fn) == Exotic(), name

    def test_binary_all_fail(self):
        for name, fn in exotic_library(2):
            assert abstr_2(fn) is False, name

    def test_binary_has_failing_slice(self):
        from hobind.binder import ground_samples

        for name, fn in exotic_library(2):
            slices = [lambda x, g=g: fn(x, g) for g in ground_samples()]
            slices += [lambda y, g=g: fn(g, y) for g in ground_samples()]
            assert any(not abstr(s) for s in slices), name

    def test_filters(self):
        assert len(exotic_library()) == len(exotic_library(1)) + len(
            exotic_library(2)
        )
        with pytest.raises(ValueError):
            exotic_library(3)


class TestText:
    def test_round_trip(self):
        ot = OpenTerm(1, Abs(App(Bnd(0), Hole(0))))
        assert to_text(ot) == "(ABS (APP (BND 0) (HOLE 0)))"
        assert from_text(to_text(ot)) == ot

    def test_parse_rejects_bad_holes(self):
        from hobind.terms import ParseError

        with pytest.raises(ParseError):
            from_text("(HOLE 1)", arity=1)
