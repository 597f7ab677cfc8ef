"""The self-check suite must pass clean and notice an injected fault."""

import pytest

from phasecoder import verify


def test_all_checks_pass():
    results = verify.run_all(seed=0)
    failed = [r.name for r in results if not r.passed]
    assert failed == [], f"failing checks: {failed}"
    assert len(results) == len(verify.CHECKS)


def test_results_carry_details():
    results = verify.run_all(seed=1)
    for r in results:
        assert isinstance(r.name, str) and r.name
        assert isinstance(r.detail, str) and r.detail
        assert r.seconds >= 0.0


def test_injected_fault_is_caught():
    results = verify.run_all(seed=0, fault="decode-sign")
    failed = {r.name for r in results if not r.passed}
    # a sign-flipped decode must break the round trip at minimum
    assert "round_trip_single" in failed
    assert failed


def test_unknown_fault_rejected():
    with pytest.raises(ValueError):
        verify.run_all(fault="bitrot")
