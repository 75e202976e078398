from fractions import Fraction
from pathlib import Path

import pytest

import ssp

DATA = Path(__file__).resolve().parents[2] / "data"


def one_period(up: str, down: str) -> dict:
    return {
        "n_assets": 1,
        "shortable_count": 0,
        "nodes": [
            {"id": 0, "parent": None, "weight": "1", "prices": ["1"]},
            {"id": 1, "parent": 0, "weight": "1/2", "prices": [up]},
            {"id": 2, "parent": 0, "weight": "1/2", "prices": [down]},
        ],
    }


def test_binomial_has_esmm_with_exact_masses():
    report = ssp.check_arbitrage(one_period("2", "1/2"))
    assert report["status"] == "NFLVR"
    assert report["witness"] == report["measure"]


def test_flat_down_market_admits_arbitrage():
    report = ssp.check_arbitrage(DATA / "flat_down.model.json")
    assert report["status"] == "ARBITRAGE"
    assert "payoff" in report


def test_digital_price_is_one_and_not_attained():
    report = ssp.price(DATA / "binomial.model.json", DATA / "digital.claim.json")
    assert Fraction(report["price"]) == 1
    assert report["attained_by_equivalent"] is False


def test_price_matches_superhedge_capital():
    model, claim = DATA / "two_period.model.json", DATA / "call.claim.json"
    priced = ssp.price(model, claim)
    hedged = ssp.hedge(model, claim)
    assert Fraction(priced["price"]) == Fraction(hedged["x"])
    assert hedged["verified"] is True


def test_signed_claim_needs_flag():
    claim = {"1": "-1", "2": "1"}
    with pytest.raises(ssp.DomainError):
        ssp.price(DATA / "binomial.model.json", claim)
    report = ssp.price(DATA / "binomial.model.json", claim, signed=True)
    assert Fraction(report["price"]) == 1


def test_gains_claim_is_maximal():
    report = ssp.classify(DATA / "two_period.model.json", DATA / "gains.claim.json")
    assert report["ii_sup_attained"]["holds"] == report["iii_martingale_replication"]["holds"]
    assert report["maximal_in_K"]["maximal"] is True


def test_numeraire_checks_agree():
    model, numeraire = DATA / "binomial.model.json", DATA / "numeraire.json"
    assert ssp.numeraire_na(model, numeraire)["agree"] is True
    assert ssp.numeraire_transport(model, numeraire, DATA / "transport.strategy.json")["agree"] is True


def test_malformed_input_raises_structural_error():
    with pytest.raises(ssp.StructuralError):
        ssp.check_arbitrage({"n_assets": 1, "nodes": []})
    with pytest.raises(ValueError):
        ssp.numeraire_na(DATA / "binomial.model.json", DATA / "numeraire.json", scale="x/0")


def test_lattice_put_matches_closed_form():
    report, csv = ssp.experiment_lattice("put", [1, 2, 3])
    assert [row["price"] for row in report["rows"]] == ["1/2", "3/4", "7/8"]
    assert csv.startswith(f"# seed={ssp.DEFAULT_SEED}")


def test_bs_experiment_is_reproducible():
    first, _ = ssp.experiment_bs([0.0, 1.0], seed=5)
    second, _ = ssp.experiment_bs([0.0, 1.0], seed=5)
    assert first == second
    assert all(abs(row["z_score"]) < 4 for row in first["rows"])


def test_stochexp_lp_price_grows_with_alpha():
    report, _ = ssp.experiment_stochexp([0, 2], fine_steps=400, coarse_steps=4)
    low, high = (row["lp_price"] for row in report["rows"])
    assert high >= low
