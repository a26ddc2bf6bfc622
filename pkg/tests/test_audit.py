import pytest

from hcpaudit.audit import (
    CLAIMS,
    CONFIRMED,
    REFUTED,
    UNDECIDED,
    audit,
    completeness_rate,
    format_witness,
    parse_witness,
    replay,
    shrink,
)
from hcpaudit.digraph import is_strongly_connected
from hcpaudit.errors import BudgetTooSmall, SizeOutOfGuard
from hcpaudit.fixtures import DBI4
from hcpaudit.oracle import gen_two_cycles_bridge

EXPECTED_IDS = {
    "THM1_C3", "COR2", "LEMMA2", "LEMMA4", "LEMMA5", "PROP1",
    "THM2_FWD", "THM2_BACK", "THM3_COMPLETE", "THM6_EQUIV", "COR3",
}


def test_registry():
    assert set(CLAIMS) == EXPECTED_IDS
    assert all(c.anchor for c in CLAIMS.values())


def test_witness_roundtrip():
    text = format_witness(DBI4)
    assert text.startswith("4;0-1,")
    assert parse_witness(text) == DBI4


class TestRankBasedStrongConnectivity:
    def test_refuted_with_bridge_witness(self):
        r = audit("COR2", budget=100, sizes=(4, 10), seed=7)
        assert r.verdict == REFUTED
        assert r.witness == gen_two_cycles_bridge(3, 3)
        assert not is_strongly_connected(r.witness)
        assert r.witness_details["rank_cplus"] == "6" and r.witness_details["rank_cminus"] == "6"

    def test_replay(self):
        obs = replay("COR2", gen_two_cycles_bridge(3, 3))
        assert obs.refuted

    def test_shrunk_witness_still_refutes(self):
        w = shrink(CLAIMS["COR2"], gen_two_cycles_bridge(3, 3))
        assert replay("COR2", w).refuted
        assert w.n <= 6


def test_lemma4_confirmed():
    r = audit("LEMMA4", budget=150, seed=3)
    assert r.verdict == CONFIRMED
    assert r.counterexamples == 0 and r.witness is None


def test_thm2_back_exhaustive_small():
    r = audit("THM2_BACK", sizes=(1, 4), exhaustive=True)
    assert r.verdict == CONFIRMED
    assert r.exhaustive and r.trials > 0


@pytest.mark.slow
def test_thm2_back_exhaustive_five():
    assert audit("THM2_BACK", sizes=(1, 5), exhaustive=True).verdict == CONFIRMED


@pytest.mark.parametrize("claim", sorted(EXPECTED_IDS))
def test_every_claim_reaches_a_verdict(claim):
    r = audit(claim, budget=40, seed=1)
    assert r.verdict in (CONFIRMED, REFUTED, UNDECIDED)
    assert r.trials > 0
    if r.verdict == REFUTED:
        assert r.witness is not None
        obs = replay(claim, r.witness)
        assert obs is not None and obs.refuted
        if r.witness_min is not None:
            assert replay(claim, r.witness_min).refuted


@pytest.mark.parametrize("claim", ["COR2", "THM3_COMPLETE", "LEMMA5"])
def test_byte_identical_reports(claim):
    a = audit(claim, budget=60, seed=11).to_text()
    b = audit(claim, budget=60, seed=11).to_text()
    assert a == b
    assert "elapsed_s" not in a


def test_timing_is_opt_in():
    assert "elapsed_s=" in audit("LEMMA4", budget=10, timing=True).to_text()


def test_completeness_rate():
    r = audit("THM3_COMPLETE", budget=100, sizes=(6, 10), seed=2)
    rate = completeness_rate(r)
    assert 0.0 <= rate <= 1.0
    assert completeness_rate(audit("LEMMA4", budget=10)) is None


def test_guards():
    with pytest.raises(SizeOutOfGuard):
        audit("THM2_BACK", sizes=(3, 30))
    with pytest.raises(SizeOutOfGuard):
        audit("LEMMA4", sizes=(3, 6), exhaustive=True)
    with pytest.raises(BudgetTooSmall):
        audit("LEMMA4", budget=0)
    with pytest.raises(KeyError):
        audit("NOPE")


def test_csv_row():
    r = audit("COR2", budget=20, sizes=(4, 8), seed=7)
    row = r.to_csv_row()
    assert row.startswith("COR2,REFUTED,20,")
    assert row.count(",") >= 8
