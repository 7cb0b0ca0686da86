"""Unit tests for the certificate module in the fraisse package."""

import pytest

from fraisse.certificate import CertificateStatus, certify_irreducible, generating_pairs
from fraisse.config import RunConfig
from fraisse.runner import run
from fraisse.state import RunState
from models.cube import ordered_pairs_not_contained

# pylint: disable=redefined-outer-name


@pytest.fixture(scope="module")
def square_run():
    return run(RunConfig("bkl", n=3, k=2, rounds=1, seed=2))


def test_generating_pairs():
    assert generating_pairs(1) == [(1, 0)]
    assert generating_pairs(2) == [(1, 0), (1, 2), (2, 0), (2, 1)]


def test_empty_cube_fails_on_the_first_pair():
    certificate = certify_irreducible(RunState.initial(RunConfig("bkl", n=2, k=1)))
    assert certificate.status is CertificateStatus.FAILED
    assert certificate.failed_pair == (1, 0)
    assert certificate.witnesses == ()
    assert certificate.to_document()["failed_pair"] == [1, 0]


def test_pass_certificate_covers_every_ordered_pair(square_run):
    certificate = certify_irreducible(square_run)
    assert certificate.passed
    assert certificate.failed_pair is None
    assert len(certificate.witnesses) == 4
    assert certificate.verify(square_run.cube) == []
    for sigma, tau in ordered_pairs_not_contained(2):
        w = certificate.witness_for(sigma, tau)
        assert w.element in square_run.cube.image(sigma)
        assert w.element not in square_run.cube.image(tau)
    assert certificate.witness_for(1, 3) is None


def test_stale_certificate_fails_on_a_later_cube(square_run):
    early = run(RunConfig("bkl", n=3, k=2, rounds=0))
    certificate = certify_irreducible(early)
    assert certificate.verify(square_run.cube) == ordered_pairs_not_contained(2)


def test_document(square_run):
    doc = certify_irreducible(square_run).to_document()
    assert doc["k"] == 2
    assert doc["status"] == "PASS"
    assert doc["stage"] == square_run.stage
    assert doc["witnesses"][0]["pair"] == "{0} ⊄ ∅"
    assert set(doc["witnesses"][0]) == {"sigma", "tau", "pair", "element", "via", "birth"}
