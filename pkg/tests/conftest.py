import pytest
from hypothesis import settings

from sscosamp import _core, _kernels_py
from sscosamp.dictionary import build

try:
    from sscosamp import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

KERNEL_IMPLS = [pytest.param(_kernels_py, id="numpy")]
if _compiled is not None:
    KERNEL_IMPLS.append(pytest.param(_compiled, id="compiled"))


@pytest.fixture(params=KERNEL_IMPLS)
def kernels(request, monkeypatch):
    """Route the package through one kernel implementation for the test."""
    impl = request.param
    for name in ("eta_dp", "eta_prime_dp", "enumerate_separated", "dr_update"):
        monkeypatch.setattr(_core, name, getattr(impl, name))
    return impl


@pytest.fixture(scope="session")
def big():
    return build(256, 1024)


@pytest.fixture(scope="session")
def small():
    return build(8, 16)


_ACCEPTANCE = pytest.StashKey[dict]()


@pytest.fixture(scope="session")
def acceptance_log(request):
    return request.config.stash.setdefault(_ACCEPTANCE, {})


def pytest_terminal_summary(terminalreporter, config):
    log = config.stash.get(_ACCEPTANCE, {})
    if not log:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(log):
        terminalreporter.write_line(log[number])
