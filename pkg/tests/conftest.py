import pytest

from qhcodes.verify import get_access, get_scheme, get_variety


# The verify module memoizes variety construction, so fixtures here and
# the acceptance tests share one build per configuration.

@pytest.fixture(scope="session")
def tw33():
    return get_variety("twisted", 3, 3)


@pytest.fixture(scope="session")
def tw43():
    return get_variety("twisted", 4, 3)


@pytest.fixture(scope="session")
def herm23():
    return get_variety("hermitian", 2, 3)


@pytest.fixture(scope="session")
def qh33():
    return get_variety("quasi-hermitian", 3, 3)


@pytest.fixture(scope="session")
def access33():
    return get_access("twisted", 3, 3)


@pytest.fixture(scope="session")
def access_h2():
    return get_access("hermitian", 2, 3)


@pytest.fixture(scope="session")
def scheme33():
    return get_scheme("twisted", 3, 3)


@pytest.fixture(scope="session")
def scheme_h2():
    return get_scheme("hermitian", 2, 3)
