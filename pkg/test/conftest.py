from os import getenv

import pytest


def pytest_collection_modifyitems(config, items):
    if getenv('RUN_SLOW_PROOFS') == '1':
        return
    skip = pytest.mark.skip(reason="full refutation search, set RUN_SLOW_PROOFS=1 to run")
    for item in items:
        if 'slow_proof' in item.keywords:
            item.add_marker(skip)


@pytest.fixture(autouse=True)
def auto_timeout(request):
    if request.node.get_closest_marker('slow_proof') or request.node.get_closest_marker('timeout'):
        return
    timeout_seconds = int(getenv("PYTEST_TIMEOUT", "30"))
    if timeout_seconds > 0 and getenv("DISABLE_TEST_TIMEOUT") != '1':
        request.node.add_marker(pytest.mark.timeout(timeout_seconds))
