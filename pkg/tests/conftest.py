from functools import lru_cache

import pytest

from twistedk.complex import builtin

# every builtin the property tests sweep over
FIXTURE_TAGS = (
    ["point", "rp2"]
    + [f"sphere:{n}" for n in range(0, 5)]
    + [f"moore:{n}" for n in range(2, 7)]
    + [f"susp:moore:{n}" for n in range(2, 7)]
    + ["susp:rp2"]
)


@lru_cache(maxsize=None)
def fixture(tag):
    return builtin(tag)


@pytest.fixture(params=FIXTURE_TAGS)
def any_fixture(request):
    return fixture(request.param)
