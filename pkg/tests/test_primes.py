import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from adjminors.errors import CapExceeded, MismatchedConfiguration, NotAdmissible, NotSpecial
from adjminors.grid import Cell, Configuration, GeneralMinor, contains_edge, is_special
from adjminors.groebner import (
    configuration_ideal,
    default_ranking,
    format_binomial,
    minor_binomial,
    reduced_basis,
    saturate,
)
from adjminors.primes import (
    COMPLEMENT,
    SUBCONFIG,
    admissible_sets,
    all_components,
    component_contains,
    component_document,
    format_component,
    inner_minors,
    is_admissible,
    minimal_primes,
    prime_component,
)

import oracles
from strategies import make_special


def C(*anchors):
    return Configuration.of(anchors)


small_configs = st.sets(st.tuples(st.integers(1, 3), st.integers(1, 3)), min_size=1, max_size=4).map(
    Configuration.of
)
small_special = st.sets(st.tuples(st.integers(1, 3), st.integers(1, 3)), min_size=1, max_size=4).map(make_special)


def texts(components, names):
    return {format_component(p, names) for p in components}


def binomial_texts(minors, names):
    return {format_binomial(minor_binomial(m), names) for m in minors}


class TestAdmissible:
    def test_l_examples(self, fx):
        L = fx("L")
        sets = {a.cells for a in admissible_sets(L.config)}
        for letters in ["", "cg", "dh", "aei", "bfj", "abc"]:
            assert frozenset(L.cells(letters)) in sets
        assert L.config.vertex_set in sets
        assert not is_admissible(L.config, L.cells("a"))

    def test_single_box(self):
        sets = admissible_sets(C((1, 1)))
        assert len(sets) == 10
        sizes = sorted(len(s) for s in sets)
        assert sizes == [0, 2, 2, 2, 2, 3, 3, 3, 3, 4]
        diagonal = frozenset({Cell(1, 1), Cell(2, 2)})
        assert diagonal not in {s.cells for s in sets}

    def test_canonical_order(self, fx):
        sets = admissible_sets(fx("PLUS").config)
        keys = [(len(s), s.sorted_cells()) for s in sets]
        assert keys == sorted(keys)
        assert sets[0].cells == frozenset()

    def test_cap(self, fx):
        with pytest.raises(CapExceeded):
            admissible_sets(fx("PLUS").config, cap=10)

    @settings(max_examples=120)
    @given(st.sets(st.tuples(st.integers(1, 4), st.integers(1, 4)), min_size=1, max_size=5))
    def test_matches_brute_force(self, anchors):
        config = Configuration.of(anchors)
        if len(config.vertex_set) > 12:
            return
        ours = {a.cells for a in admissible_sets(config)}
        assert ours == oracles.brute_admissible(sorted(anchors))


class TestInnerMinors:
    def test_l(self, fx):
        L = fx("L")
        assert binomial_texts(inner_minors(L.config.vertex_set), L.names) == {
            "af-be", "aj-bi", "ej-fi", "ag-ce", "bg-cf", "di-eh", "dj-fh",
        }

    def test_l_without_dh(self, fx):
        L = fx("L")
        region = L.config.vertex_set - set(L.cells("dh"))
        assert binomial_texts(inner_minors(region), L.names) == {"af-be", "aj-bi", "ej-fi", "ag-ce", "bg-cf"}

    def test_plus_without_centre(self, fx):
        plus = fx("PLUS")
        assert inner_minors(plus.config.vertex_set - set(plus.cells("dehi"))) == frozenset()

    def test_empty(self):
        assert inner_minors(set()) == frozenset()

    @given(st.sets(st.tuples(st.integers(1, 5), st.integers(1, 5)), max_size=14))
    def test_matches_brute_force(self, region):
        ours = {(m.row_lo, m.row_hi, m.col_lo, m.col_hi) for m in inner_minors(Cell(*c) for c in region)}
        assert ours == oracles.brute_inner(region)


class TestPrimeComponent:
    def test_l_empty(self, fx):
        assert len(prime_component(fx("L").config, []).inner) == 7

    def test_plus_centre(self, fx):
        plus = fx("PLUS")
        p = prime_component(plus.config, plus.cells("dehi"))
        assert p.inner == frozenset()
        assert format_component(p, plus.names) == "(d,e,h,i)"

    def test_plus_adhk(self, fx):
        plus = fx("PLUS")
        for mode in (COMPLEMENT, SUBCONFIG):
            p = prime_component(plus.config, plus.cells("adhk"), mode)
            assert p.inner == frozenset({GeneralMinor(2, 3, 3, 4)})
            assert format_component(p, plus.names) == "(a,d,h,k, ej-fi)"

    def test_not_admissible(self, fx):
        with pytest.raises(NotAdmissible):
            prime_component(fx("L").config, fx("L").cells("a"))

    def test_document(self, fx):
        plus = fx("PLUS")
        doc = component_document(prime_component(plus.config, plus.cells("adhk")))
        assert doc == {"W": [[1, 2], [2, 2], [3, 2], [4, 2]], "inner": [[2, 3, 3, 4]]}


class TestContainment:
    def test_dropping_cg(self, fx):
        L = fx("L")
        empty = prime_component(L.config, [])
        cg = prime_component(L.config, L.cells("cg"))
        assert component_contains(empty, cg)
        assert empty.inner - cg.inner == binomial_minors(L, {"ag-ce", "bg-cf"})

    def test_not_contained(self, fx):
        L = fx("L")
        empty = prime_component(L.config, [])
        aei = prime_component(L.config, L.cells("aei"))
        assert not component_contains(empty, aei)
        # dj-fh is dropped but meets W = {a,e,i} in no vertex at all
        dj_fh = next(iter(binomial_minors(L, {"dj-fh"})))
        assert dj_fh in empty.inner - aei.inner
        assert not contains_edge(aei.W, dj_fh)

    def test_reflexive(self, fx):
        L = fx("L")
        for p in all_components(L.config):
            assert component_contains(p, p)

    def test_mismatched(self, fx):
        a = prime_component(fx("L").config, [])
        b = prime_component(fx("PLUS").config, [])
        with pytest.raises(MismatchedConfiguration):
            component_contains(a, b)

    @settings(max_examples=100)
    @given(small_special)
    def test_partial_order(self, config):
        # the laws hold on any sub-family, so large families are truncated
        comps = all_components(config)[:200]
        above = [{j for j, q in enumerate(comps) if component_contains(p, q)} for p in comps]
        for i, p in enumerate(comps):
            assert i in above[i]
            for j in above[i]:
                assert above[j] <= above[i]
                if i in above[j]:
                    assert (p.W, p.inner) == (comps[j].W, comps[j].inner)


def binomial_minors(fixture, wanted):
    every = inner_minors(fixture.config.vertex_set)
    return {m for m in every if format_binomial(minor_binomial(m), fixture.names) in wanted}


class TestMinimalPrimes:
    def test_plus(self, fx):
        plus = fx("PLUS")
        comps = minimal_primes(plus.config)
        assert len(comps) == 10
        assert "(d,e,h,i)" in texts(comps, plus.names)

    def test_l(self, fx):
        L = fx("L")
        comps = minimal_primes(L.config)
        assert {frozenset(p.W) for p in comps} == {
            frozenset(L.cells(w)) for w in ["", "aei", "bfj", "efgi", "befi", "defg", "bdef"]
        }

    def test_single_box(self):
        comps = minimal_primes(C((1, 1)))
        assert [p.W for p in comps] == [frozenset()]

    def test_not_special(self, fx):
        with pytest.raises(NotSpecial):
            minimal_primes(fx("RING4").config)

    @pytest.mark.parametrize("name", ["L", "PLUS", "PIN"])
    def test_region_modes_agree(self, fx, name):
        config = fx(name).config
        a = [(p.W, p.inner) for p in minimal_primes(config, mode=COMPLEMENT)]
        b = [(p.W, p.inner) for p in minimal_primes(config, mode=SUBCONFIG)]
        assert a == b

    def test_region_modes_differ_on_the_ring(self, fx):
        """On the 8-box ring the subconfiguration region finds four more
        components, and a generic point of each lies on no complement-mode
        component although it is a zero of I(C)."""
        cyc = fx("CYC8")
        config = cyc.config
        a = {(p.W, p.inner) for p in minimal_primes(config, mode=COMPLEMENT)}
        b = {(p.W, p.inner) for p in minimal_primes(config, mode=SUBCONFIG)}
        assert (len(a), len(b)) == (21, 25)
        assert a < b
        rng = random.Random(7)
        for W, inner in b - a:
            point = oracles.generic_point(config.vertex_set, W, inner, rng)
            assert all(oracles.vanishes(point, (), [m]) for m in config.minors)
            assert not any(oracles.vanishes(point, W2, inner2) for W2, inner2 in a)

    @settings(max_examples=60)
    @given(small_special)
    def test_generators_lie_in_every_component(self, config):
        for p in all_components(config):
            for m in config.minors:
                assert contains_edge(p.W, m) or m.general() in p.inner

    @settings(max_examples=60)
    @given(small_special)
    def test_full_vertex_set_is_not_minimal(self, config):
        W = [p.W for p in minimal_primes(config)]
        assert config.vertex_set not in W


@pytest.mark.parametrize("name", ["L", "PIN", "PLUS"])
def test_saturation_is_the_empty_component(fx, name):
    config = fx(name).config
    assert is_special(config)
    ranking = default_ranking(config.vertex_set)
    sat = reduced_basis(saturate(configuration_ideal(config), ranking=ranking), ranking)
    inner = reduced_basis([minor_binomial(m) for m in inner_minors(config.vertex_set)], ranking)
    assert sat.as_set() == inner.as_set()
