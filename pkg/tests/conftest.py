import pytest

from qmeaning import _kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # JIT-compile both kernel paths up front so timed tests measure the
    # algorithms, not compilation.
    _kernels.warm_up()
