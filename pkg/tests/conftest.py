import contextlib
import time

import pytest

# criterion label -> list of (clause, passed, seconds)
CRITERIA = {}


@contextlib.contextmanager
def _record(label: str, clause: str, budget: float):
    start = time.perf_counter()
    passed = False
    try:
        yield
        elapsed = time.perf_counter() - start
        assert elapsed < budget, f"{clause} took {elapsed:.1f}s, budget {budget}s"
        passed = True
    finally:
        CRITERIA.setdefault(label, []).append((clause, passed, time.perf_counter() - start))
        print(f"{label} {'PASS' if passed else 'FAIL'}: {clause}")


@pytest.fixture
def criterion():
    return _record


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(CRITERIA, key=lambda k: int(k[2:])):
        clauses = CRITERIA[label]
        ok = all(passed for _, passed, _ in clauses)
        seconds = sum(s for _, _, s in clauses)
        failed = [clause for clause, passed, _ in clauses if not passed]
        detail = "" if ok else "  failing: " + "; ".join(failed)
        terminalreporter.write_line(f"{label}: {'PASS' if ok else 'FAIL'} ({seconds:.1f}s){detail}")
