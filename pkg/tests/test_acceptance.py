"""One test per acceptance criterion, each with its time budget.

Every test records a line ``[PASS|FAIL] criterion N: ...`` that is printed
directly and again in the terminal summary.
"""

import json
import os
import subprocess
import sys
import time
from contextlib import contextmanager

import pytest

from venlab.arith import MultiPoly
from venlab.derivations import exp_derivation
from venlab.maps import PolyMap, V, W, ZERO_FRAME, p, u, v, w, x, y, z
from venlab import stable, suites
from venlab import venereau as ven

from conftest import ACCEPTANCE_LINES

X = lambda k: MultiPoly.monomial(1, x=k)


@contextmanager
def criterion(number, title, budget_s=None):
    state = {"ok": False, "detail": ""}
    start = time.perf_counter()
    try:
        yield state
    finally:
        elapsed = time.perf_counter() - start
        within = budget_s is None or elapsed < budget_s
        ok = state["ok"] and within
        budget = f" / budget {budget_s:g} s" if budget_s else ""
        detail = f" ({state['detail']})" if state["detail"] else ""
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} [{elapsed:.2f} s{budget}]{detail}"
        ACCEPTANCE_LINES.append((number, line))
        print(line)
    assert state["ok"], state["detail"]
    assert within, f"criterion {number} took {elapsed:.2f} s, budget {budget_s} s"


def _all_verified(certs):
    bad = [c.claim_id + ": " + ", ".join(c.failed_checks() or [c.error or "?"])
           for c in certs if not c.verified]
    return not bad, "; ".join(bad) or f"{len(certs)} certificates verified"


def test_criterion_01_identities():
    timings = []

    def timed_check(fn):
        t0 = time.perf_counter()
        ok = fn()
        timings.append(time.perf_counter() - t0)
        return ok

    with criterion(1, "identity suite") as st:
        p0, v0, w0 = ZERO_FRAME.p, ZERO_FRAME.v, ZERO_FRAME.w
        checks = [
            timed_check(lambda: (y * w + v * v - x * x * p).is_zero()),
            timed_check(lambda: (p0 - (y * w0 + v0 * v0)).is_zero()),
            timed_check(lambda: exp_derivation(ven.nagata_derivation().scaled(p * X(-1)))
                        == PolyMap.from_tuple(y, v * X(-1), w * X(-2))),
            timed_check(lambda: exp_derivation(ven.zero_frame_derivation().scaled(p0 * X(-1)))
                        == PolyMap.from_tuple(y, v0, w0 * X(-1))),
        ]
        cert = ven.verify_identities()
        st["ok"] = all(checks) and cert.verified and max(timings) < 1.0
        st["detail"] = f"4 exact checks, slowest {max(timings) * 1000:.1f} ms; {cert.summary()}"


def test_criterion_02_theta():
    with criterion(2, "theta suite n = 1..5", 10) as st:
        certs = [ven.verify_theta(n) for n in range(1, 6)]
        ok, st["detail"] = _all_verified(certs)
        thresholds = all(any(chk.name == f"integral = {str(n >= 3).lower()}" for chk in c.details)
                         for n, c in zip(range(1, 6), certs))
        st["ok"] = ok and thresholds


def test_criterion_03_phi():
    with criterion(3, "phi suite n = 1..4", 10) as st:
        certs = [ven.verify_phi(n) for n in range(1, 5)]
        ok, st["detail"] = _all_verified(certs)
        thresholds = all(any(chk.name == f"integral = {str(n >= 2).lower()}" for chk in c.details)
                         for n, c in zip(range(1, 5), certs))
        st["ok"] = ok and thresholds


def test_criterion_04_alpha_phi_and_fg():
    with criterion(4, "alpha o phi and fg-equivalence n = 1..3", 10) as st:
        certs = []
        for n in (1, 2, 3):
            certs.append(ven.verify_alpha_phi(n))
            certs.append(ven.verify_fg_equivalence(n))
        st["ok"], st["detail"] = _all_verified(certs)


def test_criterion_05_coordinates():
    with criterion(5, "coordinate construction", 30) as st:
        certs = [ven.coordinate_from_Q(a, b)[1] for a, b in suites.COORDINATE_PAIRS]
        ok, st["detail"] = _all_verified(certs)
        congruences = all(sum("mod x" in chk.name for chk in c.details) == 3 for c in certs)
        st["ok"] = ok and congruences


def test_criterion_06_hyperplane_and_cusp():
    with criterion(6, "hyperplane and cusp", 30) as st:
        certs = [ven.hyperplane_check(q) for q in suites.HYPERPLANE_Q0S]
        certs += [ven.cusp_checks(q) for q in suites.CUSP_QS]
        st["ok"], st["detail"] = _all_verified(certs)


STABLE_SIX = suites.STABLE_CORPUS[:6]


def test_criterion_07_stable():
    stable._CACHE.clear()
    with criterion(7, "stable construction, six Q", 300) as st:
        certs = [stable.verify_stable(q) for q in STABLE_SIX]
        ok, st["detail"] = _all_verified(certs)
        wanted = ("P_-1 = 0", "P_0 = 0", "P_1 in C[y,p]", "phi(z) integral", "phi(u) integral",
                  "phi(t) integral", "phi(z) mod x", "phi(u) mod x", "phi(t) mod x", "J(phi) = 1")
        present = all(all(any(chk.name == name for chk in c.details) for name in wanted)
                      for c in certs)
        st["ok"] = ok and present


def test_criterion_08_lemma_oracle():
    with criterion(8, "lemma ideal oracle sweep", 60) as st:
        cert = suites.lemma_sweep(200, seed=0)
        st["ok"] = cert.verified
        st["detail"] = cert.details[-1].name


def test_criterion_09_properties():
    import test_arith
    import test_maps
    suites_to_run = {
        "ring associativity": test_arith.test_ring_associativity,
        "ring commutativity": test_arith.test_ring_commutativity,
        "ring distributivity": test_arith.test_ring_distributivity,
        "Leibniz": test_arith.test_leibniz,
        "substitution homomorphism": test_arith.test_substitution_homomorphism,
        "valuation additivity": test_arith.test_valuation_additive,
        "Jacobian chain rule": test_maps.test_jacobian_chain_rule,
    }
    with criterion(9, "property suites, 1000 cases each") as st:
        failures = []
        for name, fn in suites_to_run.items():
            assert fn.hypothesis.inner_test is not None
            try:
                fn()
            except Exception as exc:        # a falsifying example
                failures.append(f"{name}: {type(exc).__name__}")
        st["ok"] = not failures
        st["detail"] = "; ".join(failures) or f"{len(suites_to_run)} suites, zero failures"


def _strip_timing(certs):
    for cert in certs:
        cert.pop("ms", None)
    return certs


def test_criterion_10_determinism(tmp_path):
    with criterion(10, "verify-all determinism") as st:
        env = dict(os.environ)
        procs, paths = [], []
        for k in range(2):
            path = tmp_path / f"run{k}.json"
            paths.append(path)
            procs.append(subprocess.Popen(
                [sys.executable, "-m", "venlab.cli", "verify-all", "--json", str(path)],
                stdout=subprocess.PIPE, stderr=subprocess.PIPE, env=env))
        codes = [proc.wait(timeout=900) for proc in procs]
        runs = [_strip_timing(json.loads(path.read_text())) for path in paths]
        texts = [json.dumps(r, indent=2, sort_keys=False) for r in runs]
        st["ok"] = codes == [0, 0] and texts[0] == texts[1]
        st["detail"] = f"exit codes {codes}, {len(runs[0])} certificates, identical={texts[0] == texts[1]}"
