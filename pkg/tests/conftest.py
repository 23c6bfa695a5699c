import sys
from functools import lru_cache
from pathlib import Path

import pytest

TESTS = Path(__file__).resolve().parent
FIXTURES = TESTS / "fixtures"
sys.path.insert(0, str(FIXTURES))

from schnet.pipeline import process_file  # noqa: E402
from schnet.render import RenderConfig  # noqa: E402

FIXTURE_FILES = sorted(FIXTURES.glob("*.sch"))
FIXTURE_NAMES = [p.stem for p in FIXTURE_FILES]


@lru_cache(maxsize=None)
def rendered(name: str, variation: str = "full_text", downsample: int = 1, scale: float = 10.0):
    return process_file(FIXTURES / f"{name}.sch", RenderConfig(scale=scale, variation=variation, downsample=downsample))


@pytest.fixture(params=FIXTURE_NAMES)
def fixture_name(request):
    return request.param


@pytest.fixture
def fixtures_dir():
    return FIXTURES


# criterion number -> (passed, detail); filled by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {n:2d}: {detail}")
