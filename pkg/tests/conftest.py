import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from _corpus import random_cc0_language  # noqa: E402

from zcsp.classify import CcspVerdict, OcspVerdict, classify_ccsp, classify_ocsp  # noqa: E402


@pytest.fixture(scope="session")
def corpus():
    """At least 1000 random substitution-closed languages that are tractable
    for at least one of the two problems, with their classifications."""
    rng = random.Random(0xC0FFEE)
    items = []
    while len(items) < 1000:
        g = random_cc0_language(rng)
        ocsp = classify_ocsp(g).verdict is OcspVerdict.FPT
        ccsp = classify_ccsp(g).verdict is CcspVerdict.FPT
        if ocsp or ccsp:
            items.append((g, ocsp, ccsp))
    return items, rng
