import pytest

from g2unital import kernels


@pytest.fixture(params=kernels.available_backends())
def backend(request):
    prev = kernels.use_backend(request.param)
    yield request.param
    kernels.use_backend(prev)
