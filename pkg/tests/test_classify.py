import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from adjminors.classify import (
    RadicalStatus,
    has_quadratic_gb,
    is_prime,
    radical_verdict,
    verify_certificate,
)
from adjminors.grid import Cell, Choice, Configuration, UnitMinor, detect_motifs
from adjminors.groebner import (
    configuration_ideal,
    marked_order,
    nonradical_witness_check,
    reduced_basis,
    s_pairs_reduce_to_zero,
)


def C(*anchors):
    return Configuration.of(anchors)


random_configs = st.sets(
    st.tuples(st.integers(1, 4), st.integers(1, 4)), min_size=0, max_size=7
).map(Configuration.of)


class TestPrimality:
    def test_single_box(self):
        assert is_prime(C((1, 1)))

    def test_empty(self):
        assert is_prime(C())

    def test_edge_sharing_pair(self):
        report = is_prime(C((1, 1), (1, 2)))
        assert not report
        assert report.edge_pair == (Cell(1, 1), Cell(1, 2))

    def test_ring(self, fx):
        report = is_prime(fx("RING4").config)
        assert not report
        assert report.four_cycle is not None

    def test_chessboards_without_four_cycles(self):
        assert is_prime(C((1, 1), (2, 2)))
        assert is_prime(C((1, 1), (2, 2), (3, 3), (2, 4)))
        # three components meeting pairwise still form no 4-cycle
        assert is_prime(C((1, 2), (2, 1), (2, 3)))

    def test_fig1_chessboard_has_four_cycle(self, fx):
        assert not is_prime(fx("FIG1").config)


class TestQuadraticGB:
    def test_strip(self):
        cert = has_quadratic_gb(C((1, 1), (1, 2), (1, 3)))
        assert cert.verified
        assert set(cert.marking.values()) == {Choice.DIAGONAL}

    def test_ring(self, fx):
        ring = fx("RING4")
        cert = has_quadratic_gb(ring.config)
        assert cert is not None and cert.verified
        marks = [set(m) for m in cert.marks().values()]
        assert len(set().union(*marks)) == 8

    def test_se_staircase_uses_antidiagonals(self):
        cert = has_quadratic_gb(C((1, 3), (1, 4), (2, 4)))
        assert set(cert.marking.values()) == {Choice.ANTIDIAGONAL}
        assert {frozenset(m) for m in cert.marks().values()} == {
            frozenset({Cell(1, 4), Cell(2, 3)}),
            frozenset({Cell(1, 5), Cell(2, 4)}),
            frozenset({Cell(2, 5), Cell(3, 4)}),
        }
        # the diagonal marks would clash on x[2,4]
        diag = [UnitMinor(a).diagonal for a in cert.marking]
        assert len({v for m in diag for v in m}) < 6

    def test_ne_path(self, fx):
        cert = has_quadratic_gb(fx("L").config)
        assert set(cert.marking.values()) == {Choice.DIAGONAL}

    @pytest.mark.parametrize(
        "anchors",
        [
            [(1, 1), (1, 2), (2, 1), (2, 2)],
            [(2, 1), (2, 2), (2, 3), (1, 2)],
            [(2, 1), (2, 2), (2, 3), (1, 1), (1, 3)],
        ],
        ids=["square", "pin", "saddle"],
    )
    def test_motifs_have_none(self, anchors):
        assert has_quadratic_gb(Configuration.of(anchors)) is None

    def test_empty_is_vacuous(self):
        cert = has_quadratic_gb(C())
        assert cert.verified and cert.marking == {}

    def test_fig11_fixtures_have_none(self, fx):
        for name in ("FIG11-L", "FIG11-R"):
            assert has_quadratic_gb(fx(name).config) is None
            assert not _brute_force_quadratic(fx(name).config)

    @settings(max_examples=150)
    @given(random_configs)
    def test_certificates_pass_buchberger(self, config):
        cert = has_quadratic_gb(config)
        if cert is None:
            return
        gens = [cert.ranking.normalize(g) for g in configuration_ideal(config)]
        assert s_pairs_reduce_to_zero(gens, cert.ranking)
        assert verify_certificate(config, cert.marking, cert.ranking)
        assert reduced_basis(gens, cert.ranking).max_degree <= 2


def _brute_force_quadratic(config: Configuration) -> bool:
    """Some marking's lex order yields a reduced basis of degree 2.

    Any lex order induces a marking, and orders inducing the same marking
    agree on whether the minors form a Gröbner basis, so trying one order per
    marking covers every lex order."""
    anchors = config.anchors
    for choices in itertools.product((Choice.DIAGONAL, Choice.ANTIDIAGONAL), repeat=len(anchors)):
        marking = dict(zip(anchors, choices))
        ranking = marked_order(config, marking)
        if reduced_basis(configuration_ideal(config), ranking).max_degree <= 2:
            return True
    return False


def test_quadratic_gb_matches_brute_force():
    """Every configuration inside a 2x3 anchor window."""
    cells = [Cell(i, j) for i in (1, 2) for j in (1, 2, 3)]
    for mask in range(1, 1 << len(cells)):
        config = Configuration(tuple(c for k, c in enumerate(cells) if mask >> k & 1))
        assert (has_quadratic_gb(config) is not None) == _brute_force_quadratic(config), config.anchors


class TestRadical:
    def test_monotone(self, fx):
        assert radical_verdict(fx("L").config).status is RadicalStatus.RADICAL

    def test_ring(self, fx):
        assert radical_verdict(fx("RING4").config).status is RadicalStatus.RADICAL

    def test_empty(self):
        assert radical_verdict(C()).status is RadicalStatus.RADICAL

    @pytest.mark.parametrize("name", ["PLUS", "PIN", "CYC8", "FIG3"])
    def test_not_radical_with_witness(self, fx, name):
        config = fx(name).config
        verdict = radical_verdict(config)
        assert verdict.status is RadicalStatus.NOT_RADICAL
        # the lifted witness is checked against the whole configuration
        assert nonradical_witness_check(config, verdict.witness)

    def test_pin_witness_is_the_known_one(self, fx):
        pin = fx("PIN")
        verdict = radical_verdict(pin.config)
        from adjminors.groebner import format_binomial

        assert format_binomial(verdict.witness, pin.names) == "acej-bcfh"

    def test_cycle_witness_is_the_known_one(self, fx):
        cyc = fx("CYC8")
        from adjminors.groebner import format_binomial

        assert format_binomial(radical_verdict(cyc.config).witness, cyc.names) == "b^2hino-abhjno"

    def test_non_monotone_path(self):
        verdict = radical_verdict(C((1, 1), (1, 2), (1, 3), (2, 1), (2, 3)))
        assert verdict.status is RadicalStatus.CONDITIONALLY_RADICAL

    def test_long_cycle_is_unknown(self):
        ring = [(1, j) for j in range(1, 5)] + [(4, j) for j in range(1, 5)] + [(2, 1), (3, 1), (2, 4), (3, 4)]
        verdict = radical_verdict(Configuration.of(ring))
        assert verdict.status is RadicalStatus.UNKNOWN
        assert "12" in verdict.reason

    def test_components_combine(self):
        # a monotone strip next to a separate non-monotone path: the weaker status wins
        config = C((1, 1), (1, 2), (1, 3), (2, 1), (2, 3), (5, 5), (5, 6))
        assert radical_verdict(config).status is RadicalStatus.CONDITIONALLY_RADICAL

    @settings(max_examples=150)
    @given(random_configs)
    def test_prime_never_not_radical(self, config):
        if is_prime(config):
            assert radical_verdict(config).status is not RadicalStatus.NOT_RADICAL


@pytest.mark.parametrize("anchors", [[(1, 1), (1, 2), (2, 1), (2, 2)], [(2, 1), (2, 2), (2, 3), (1, 2), (3, 2)]])
def test_motif_configurations_are_flagged(anchors):
    config = Configuration.of(anchors)
    assert detect_motifs(config)
    assert radical_verdict(config).status is RadicalStatus.NOT_RADICAL
