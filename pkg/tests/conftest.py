import random
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from ncline.field_tower import INSTANCE_KEYS, get_instance

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "ncline",
    derandomize=True,
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ncline")

NUMBER_FIELDS = ["biquadratic", "d4-quartic"]


@pytest.fixture(params=INSTANCE_KEYS)
def instance(request):
    return get_instance(request.param)


@pytest.fixture(params=NUMBER_FIELDS)
def number_field_instance(request):
    return get_instance(request.param)


@pytest.fixture
def qt():
    return get_instance("rational-function")


@pytest.fixture
def rng(request):
    return random.Random(request.node.name)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    RESULTS = module.RESULTS
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        ok, title, detail = RESULTS[number]
        terminalreporter.write_line(f"criterion {number:2d} {'PASS' if ok else 'FAIL'}: {title}{' - ' + detail if detail else ''}")
