"""Acceptance criteria, one test each, at their stated tolerances.

Every criterion prints a single ``PASS``/``FAIL`` line.  Run directly
(``python3 tests/test_acceptance.py``) for just those lines.
"""

import os
import re
import subprocess
import sys
import tempfile
import time
import warnings

import mpmath
import numpy as np
import pytest

from otlab import suites
from otlab.density import density_series, leaf_closure_experiment
from otlab.errors import MaybeNonMaximal, NoComplexPlace
from otlab.geometry import LCK, NOT_LCK, classify
from otlab.number_field import analyze_polynomial
from otlab.units import ADMISSIBLE_T1, is_totally_positive, search_units, totally_positive

CUBIC = (-1, -1, 0, 1)
QUARTIC = (-1, -1, 0, 0, 1)
QUINTIC = (-1, -1, 0, 0, 0, 1)
SQRT2 = (-2, 0, 1)
SEED = 0


def _field(coeffs):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", MaybeNonMaximal)
        return analyze_polynomial(coeffs)


def _structure(coeffs, height):
    fld = _field(coeffs)
    return classify(fld).with_units(totally_positive(search_units(fld, height), fld))


def criterion_1():
    start = time.perf_counter()
    got = [classify(_field(c)).lck_class for c in (CUBIC, QUARTIC, QUINTIC)]
    try:
        classify(_field(SQRT2))
        totally_real = "no error"
    except NoComplexPlace:
        totally_real = "NoComplexPlace"
    elapsed = time.perf_counter() - start
    ok = got == [LCK, LCK, NOT_LCK] and totally_real == "NoComplexPlace" and elapsed < 1.0
    return ok, f"classes={got} x^2-2={totally_real} time={elapsed:.3f}s"


def criterion_2():
    start = time.perf_counter()
    fld = _field(CUBIC)
    system = search_units(fld, 3)
    sub = totally_positive(system, fld)
    elapsed = time.perf_counter() - start
    # independent root: mpmath's own solver, not the package's isolation
    root = mpmath.findroot(lambda x: x**3 - x - 1, 1.3)
    target = float(mpmath.log(root))
    err = abs(system.regulator_estimate - target)
    ok = (sub.rank == 1 and all(is_totally_positive(u, fld) for u in sub.generators)
          and err <= 1e-6 and sub.verdict == ADMISSIBLE_T1 and elapsed < 5.0)
    return ok, f"rank={sub.rank} regulator={system.regulator_estimate:.12f} |err|={err:.2e} verdict={sub.verdict} time={elapsed:.3f}s"


def criterion_3():
    details = []
    ok = True
    for coeffs, h in ((CUBIC, 3), (QUARTIC, 2)):
        ot = _structure(coeffs, h)
        checks = suites.group_laws(ot, ot.units, 200, SEED)
        ok &= checks["group_laws_exact"].passed and checks["group_laws_embedded"].value <= 1e-10
        details.append(f"deg{ot.field.degree}: exact={checks['group_laws_exact'].passed} "
                       f"residual={checks['group_laws_embedded'].value:.2e}")
    return ok, "; ".join(details)


def criterion_4():
    worst = 0.0
    count = 0
    for coeffs, h in ((CUBIC, 3), (QUARTIC, 2)):
        ot = _structure(coeffs, h)
        rng = np.random.default_rng([SEED, 44])
        units = list(ot.units.generators) + [suites.random_unit(ot, ot.units, rng) for _ in range(50)]
        for u in units:
            sig = ot.sigma(u)
            worst = max(worst, abs(float(np.prod(sig[: ot.s].real)) * abs(sig[ot.s]) ** 2 - 1.0))
            count += 1
    return worst <= 1e-10, f"{count} totally positive units, max |prod - 1| = {worst:.2e}"


def criterion_5():
    worst = {}
    ok = True
    for s in (1, 2):
        for t in (1, 2):
            (c,) = suites.plurisubharmonic(s, t, 1000, SEED).values()
            worst[(s, t)] = c.value
            ok &= c.passed
    return ok, "min eigenvalue " + ", ".join(f"(s={s},t={t}): {v:.3e}" for (s, t), v in worst.items())


def criterion_6():
    ok = True
    worst_spec = worst_kernel = 0.0
    for s in (1, 2):
        for t in (1, 2):
            checks = suites.weight_spectrum(s, t, 1000, SEED)
            ok &= all(c.passed for c in checks.values())
            worst_spec = max(worst_spec, checks[f"omega0_spectrum_s{s}_t{t}"].value)
            worst_kernel = max(worst_kernel, checks[f"omega0_kernel_s{s}_t{t}"].value)
    return ok, f"spectrum err={worst_spec:.1e} kernel err={worst_kernel:.1e} positive count = s for t=1"


def criterion_7():
    ok = True
    parts = []
    for coeffs, h in ((CUBIC, 3), (QUARTIC, 2)):
        ot = _structure(coeffs, h)
        checks = suites.pullbacks(ot, ot.units, 100, SEED, tol=1e-9)
        need = {"pullback_Omega", "pullback_omega", "pullback_omega0", "pullback_psi"}
        ok &= need <= set(checks) and all(c.passed for c in checks.values())
        parts.append(f"deg{ot.field.degree}: " + " ".join(f"{k[9:]}={c.value:.1e}" for k, c in checks.items()))
    return ok, "; ".join(parts)


def criterion_8():
    ot = _structure(CUBIC, 3)
    checks = suites.lck_identities(ot, 50, SEED)
    lck, closed, c0 = checks["lck_equation"], checks["d_theta"], checks["c0_spread"]
    ok = lck.value <= 1e-5 and closed.value <= 1e-6 and c0.value <= 1e-6 and c0.passed
    return ok, (f"d omega - theta^omega={lck.value:.1e} d theta={closed.value:.1e} "
                f"c0={c0.extra['c0']:.10f} spread={c0.value:.1e}")


def criterion_9():
    start = time.perf_counter()
    fld = _field(CUBIC)
    report = density_series(fld, (2, 4, 8, 16), ((-1.0, 1.0),), 201)
    sample, real, _ = leaf_closure_experiment(_structure(CUBIC, 3), (1.0,), (2, 4, 8, 16))
    elapsed = time.perf_counter() - start
    ok = (report.is_strictly_decreasing() and report.covering_radius < 0.01
          and sample.im_invariant and real.covering_radius < 0.01 and elapsed < 60.0)
    series = " ".join(f"{h}:{r:.6f}" for h, r in report.height_series)
    return ok, f"series {series}; leaf Im exact={sample.im_invariant} leaf radius={real.covering_radius:.6f} time={elapsed:.2f}s"


def _report_bytes(path):
    cmd = [sys.executable, "-m", "otlab.cli", "report", "--poly", "-1,-1,0,1", "--height", "8", "--out", path]
    proc = subprocess.run(cmd, capture_output=True, text=True, env={**os.environ, "OTLAB_THREADS": "2"})
    with open(path) as fh:
        return proc.returncode, re.sub(r'\s*"timestamp": "[^"]*"', "", fh.read())


def criterion_10():
    with tempfile.TemporaryDirectory() as tmp:
        code_a, a = _report_bytes(os.path.join(tmp, "a.json"))
        code_b, b = _report_bytes(os.path.join(tmp, "b.json"))
    ok = a == b and code_a == code_b == 0
    return ok, f"exit codes {code_a},{code_b}; identical={a == b} ({len(a)} bytes)"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def _line(i, ok, detail):
    return f"{'PASS' if ok else 'FAIL'} criterion {i}: {detail}"


@pytest.mark.parametrize("index", range(1, len(CRITERIA) + 1))
def test_criterion(index, capsys):
    ok, detail = CRITERIA[index - 1]()
    with capsys.disabled():
        print("\n" + _line(index, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    results = []
    for i, fn in enumerate(CRITERIA, 1):
        ok, detail = fn()
        results.append(ok)
        print(_line(i, ok, detail))
    sys.exit(0 if all(results) else 1)
