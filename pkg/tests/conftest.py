import pytest

from chaoslab import FIG1A, FIG1B, fig1_initial
from chaoslab._backend import _pycore


def _available_backends():
    names = ["python"]
    try:
        from chaoslab import _core  # noqa: F401
        names.append("cython")
    except ImportError:
        pass
    return names


BACKENDS = _available_backends()


@pytest.fixture(params=BACKENDS)
def backend(request, monkeypatch):
    """Run the test once per available kernel backend."""
    from chaoslab import _backend
    monkeypatch.setattr(_backend, "kernels", _backend.get_kernels(request.param))
    return request.param


@pytest.fixture
def fig1a():
    return FIG1A


@pytest.fixture
def fig1b():
    return FIG1B


@pytest.fixture
def initial():
    return fig1_initial()


@pytest.fixture
def pycore():
    return _pycore
