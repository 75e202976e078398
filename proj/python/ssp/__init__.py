"""Exact superreplication, no-arbitrage and numeraire checks on finite event trees.

Models, claims, strategies and numeraires use the same JSON documents as the
``ssp`` command-line tool. Each argument may be a parsed document (dict) or a
path to a JSON file. Reports come back as dicts with witnesses inline.
"""

from __future__ import annotations

import json
import os
from typing import Any, Iterable, Mapping, Union

from . import _core
from ._core import DomainError, StructuralError

__all__ = [
    "DEFAULT_SEED",
    "DomainError",
    "StructuralError",
    "check_arbitrage",
    "classify",
    "experiment_bs",
    "experiment_lattice",
    "experiment_stochexp",
    "hedge",
    "numeraire_na",
    "numeraire_transport",
    "price",
]

DEFAULT_SEED: int = _core.DEFAULT_SEED

Document = Union[Mapping[str, Any], str, "os.PathLike[str]"]


def _text(doc: Document) -> str:
    if isinstance(doc, Mapping):
        return json.dumps(doc)
    with open(doc, encoding="utf-8") as handle:
        return handle.read()


def check_arbitrage(model: Document) -> dict:
    """NFLVR status with an ESMM or an arbitrage strategy as witness."""
    return json.loads(_core.check_arbitrage(_text(model)))


def price(model: Document, claim: Document, signed: bool = False) -> dict:
    """Superreplication price as an exact ``"p/q"`` string plus witnesses."""
    return json.loads(_core.price(_text(model), _text(claim), signed))


def hedge(model: Document, claim: Document, signed: bool = False) -> dict:
    """Minimal superhedge (x, H, C) and whether it replicates exactly."""
    return json.loads(_core.hedge(_text(model), _text(claim), signed))


def classify(model: Document, claim: Document) -> dict:
    """Maximal-claim conditions (i) to (iv) and maximality in K."""
    return json.loads(_core.classify(_text(model), _text(claim)))


def numeraire_transport(model: Document, numeraire: Document, strategy: Document) -> dict:
    """Self-financing identity before and after deflating by the numeraire."""
    return json.loads(_core.numeraire_transport(_text(model), _text(numeraire), _text(strategy)))


def numeraire_na(model: Document, numeraire: Document, scale: str = "1") -> dict:
    """No arbitrage in the deflated market against maximality of V_T - V_0."""
    return json.loads(_core.numeraire_na(_text(model), _text(numeraire), scale))


def experiment_bs(
    gammas: Iterable[float] = (0.0, 0.5, 1.0, 1.5, 2.0),
    *,
    s0: float = 1.0,
    mu: float = 0.0,
    sigma: float = 0.2,
    maturity: float = 1.0,
    paths: int = 10000,
    sampler: str = "importance",
    seed: int = DEFAULT_SEED,
) -> tuple[dict, str]:
    """Monte-Carlo E[1/S_T] under Girsanov tilts. Returns (report, csv)."""
    report, csv = _core.experiment_bs(list(gammas), s0, mu, sigma, maturity, paths, sampler, seed)
    return json.loads(report), csv


def experiment_stochexp(
    alphas: Iterable[float] = (0, 1, 2, 3, 4, 5, 6, 7, 8),
    *,
    quadratic_variation: float = 1.0,
    fine_steps: int = 20000,
    coarse_steps: int = 8,
    seed: int = DEFAULT_SEED,
) -> tuple[dict, str]:
    """Stochastic-exponential alpha curve. Returns (report, csv)."""
    report, csv = _core.experiment_stochexp(list(alphas), quadratic_variation, fine_steps, coarse_steps, seed)
    return json.loads(report), csv


def experiment_lattice(
    kind: str = "digital",
    depths: Iterable[int] = (1, 2, 3, 4, 5, 6),
    *,
    s0: str = "1",
    up: str = "2",
    down: str = "1/2",
    strike: str = "1",
    crr_sigma: float = 0.0,
    crr_dt: float = 0.0,
    seed: int = DEFAULT_SEED,
) -> tuple[dict, str]:
    """Binomial superreplication family by depth. Returns (report, csv)."""
    report, csv = _core.experiment_lattice(kind, list(depths), s0, up, down, strike, crr_sigma, crr_dt, seed)
    return json.loads(report), csv
