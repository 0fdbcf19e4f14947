import logging
import math
import random

import numpy as np
import pytest

from mixedwaring.circle import gamma_main_constant, singular_series
from mixedwaring.counting import rep_count_oracle
from mixedwaring.scanner import (
    PsiSpec,
    ScanReport,
    dyadic_points,
    exponent_fit,
    scan,
    top_block_densities,
)

log = logging.getLogger(__name__)


@pytest.fixture(scope="module")
def scan3():
    return scan(3, 10**5, PsiSpec("LOG"), 200)


def independent_flag(s, n, W, psi):
    R = rep_count_oracle(s, n)
    main = gamma_main_constant(s) * singular_series(s, n, W).value * n ** (s / 4)
    return abs(R - main) > n ** (s / 4) / psi(n)


def test_psi_parse_and_values():
    assert PsiSpec.parse("log") == PsiSpec("LOG")
    p = PsiSpec.parse("pow:0.05")
    assert p.kind == "POWER" and p.delta == 0.05 and p.label() == "pow:0.05"
    assert float(PsiSpec("LOG")(0)) == pytest.approx(math.log(2))
    assert float(p(30)) == pytest.approx(32**0.05)
    for bad in ("pow:0", "pow:0.2", "sqrt", "pow:x"):
        with pytest.raises(ValueError):
            PsiSpec.parse(bad)


def test_psi_increasing():
    t = np.linspace(0, 1e6, 1000)
    for psi in (PsiSpec("LOG"), PsiSpec("POWER", 0.1)):
        assert np.all(np.diff(psi(t)) > 0)


def test_tiny_X():
    for s in (3, 4):
        r = scan(s, s + 1, W=10)
        assert r.counts == [0] * r.E
        # every n below s + 2 has R = 0; the inequality decides the flag on its own
        for n in range(1, s + 2):
            assert (n in r.flagged) == independent_flag(s, n, 10, PsiSpec())


def test_flag_soundness(scan3):
    rng = random.Random(0)
    flagged = set(scan3.flagged)
    unflagged = [n for n in range(1, scan3.X + 1) if n not in flagged]
    sample = rng.sample(sorted(flagged), 100) + rng.sample(unflagged, 100)
    for n in sample:
        assert independent_flag(3, n, 200, scan3.psi) == (n in flagged), n


def test_flag_details_aligned(scan3):
    for n, R, main in list(zip(scan3.flagged, scan3.counts, scan3.mains))[::500]:
        assert R == rep_count_oracle(3, n)
        assert main == pytest.approx(gamma_main_constant(3) * singular_series(3, n, 200).value * n**0.75, rel=1e-12)


def test_psi_monotonicity(scan3):
    # pow:0.05 < log(2 + t) on all of [1, 1e5], so the power window flags more
    t = np.arange(1, 10**5 + 1)
    assert np.all(PsiSpec("POWER", 0.05)(t) <= PsiSpec("LOG")(t))
    wider = scan(3, 10**5, PsiSpec("LOG"), 200)
    narrow = scan(3, 10**5, PsiSpec("POWER", 0.05), 200)
    assert set(wider.flagged) >= set(narrow.flagged)
    assert wider.flagged == scan3.flagged


def test_w_stability_diagnostic(scan3):
    X = scan3.X
    other = scan(3, X, scan3.psi, 400)
    a = {n for n in scan3.flagged if n > X // 2}
    b = {n for n in other.flagged if n > X // 2}
    changed = a ^ b
    frac = len(changed) / (X - X // 2)
    log.info("W 200 -> 400: %d flag changes in (X/2, X] (%.3f%%)", len(changed), 100 * frac)
    for n in sorted(changed)[:20]:
        log.info("  n=%d S(200)=%.6f S(400)=%.6f", n, singular_series(3, n, 200).value, singular_series(3, n, 400).value)
    assert frac < 0.05


def test_report_structure(scan3):
    assert sum(c for _, _, c in scan3.per_dyadic) == scan3.E
    assert sum(scan3.residue_breakdown.values()) == scan3.E
    assert sorted(scan3.residue_breakdown) == list(range(48))
    assert scan3.per_dyadic[0][1] == scan3.X
    assert 0 < scan3.min_singular_series < 2
    assert scan3.cumulative(scan3.X) == scan3.E


def test_worker_invariance():
    ref = scan(4, 20000, W=100)
    for w in (2, 3, 8):
        r = scan(4, 20000, W=100, workers=w)
        assert (r.flagged, r.counts, r.mains, r.min_singular_series) == (ref.flagged, ref.counts, ref.mains, ref.min_singular_series)


def test_top_blocks_density_direction(scan3):
    d = top_block_densities(scan3)
    log.info("s=3 top-block flagged densities (largest block first): %s", d)
    assert all(a <= b for a, b in zip(d, d[1:]))


def test_exponent_fit_synthetic():
    pts = [(X, X**0.5) for X in (1e6 / 2**j for j in range(5))]
    assert exponent_fit(pts) == pytest.approx(0.5, abs=1e-9)
    assert exponent_fit([(X, 0) for X, _ in pts]) is None
    assert exponent_fit(pts[:3]) is None


def test_exponent_fit_real_run(scan3):
    slope = exponent_fit(dyadic_points(scan3))
    log.info("s=3 exponent fit at X=1e5: %.4f (paper exponent 1/2 + eps)", slope)
    assert slope < 1


def test_scan_rejects_bad_ranges():
    with pytest.raises(ValueError):
        scan(3, 10**7 + 1)
    with pytest.raises(ValueError):
        scan(3, 100, W=1001)
