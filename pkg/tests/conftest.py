import time

CRITERIA = {
    "test_ac01_standard_lattices": "AC1 standard lattice invariants",
    "test_ac02_a2_complement": "AC2 A2 complement in the Mukai lattice",
    "test_ac03_fano_mukai_vector": "AC3 Fano Mukai vector squares to 2",
    "test_ac04_hassett_arithmetic": "AC4 admissible discriminants and K Grams",
    "test_ac05_disc_chain": "AC5 |det K| = |det K-perp| on random primitive sublattices",
    "test_ac06_gamma_and_genericity": "AC6 Gamma sets and genericity bound",
    "test_ac07_p0_membership": "AC7 P0 membership",
    "test_ac08_coinvariant_lattices": "AC8 invariant/coinvariant lattices",
    "test_ac09_order_gate": "AC9 K3 symplectic order gate",
    "test_ac10_hyperbolic_plane": "AC10 hyperbolic plane detection",
    "test_ac11_exact_linalg_properties": "AC11 exact linear algebra on 500 random matrices",
}

_results = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if name not in CRITERIA:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _results[name] = (report.outcome, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    total = 0.0
    for name, label in CRITERIA.items():
        if name not in _results:
            continue
        outcome, dur = _results[name]
        total += dur
        mark = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{mark}] {label} ({dur:.2f}s)")
    terminalreporter.write_line(f"acceptance time: {total:.2f}s (budget 60s)")
