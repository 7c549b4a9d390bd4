import os

import pytest
from hypothesis import settings

settings.register_profile("desk", max_examples=60, deadline=None)
settings.load_profile("desk")


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("VERMA_LINK_CACHE", str(tmp_path / "cache"))
    yield
    os.environ.pop("VERMA_LINK_CACHE", None)


ACCEPTANCE = []


def record(number, title, ok, seconds, detail=""):
    ACCEPTANCE.append((number, title, ok, seconds, detail))
    line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'} {seconds:7.1f}s  {title}  {detail}"
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, seconds, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(
            f"criterion {number:>2} {'PASS' if ok else 'FAIL'} {seconds:7.1f}s  {title}  {detail}")
