import numpy as np
import pytest

from logimg.image import ImageStats, RasterImage
from logimg.logspace import ColorVec


def channel_with_stats(v0, v1, v2, n, rng):
    """``n`` values with mean ``v0``, lower-part mean ``v1`` and upper-part mean ~``v2``.

    The lower part is exact; the upper part absorbs the integer rounding of
    the partition sizes, so its mean is off from ``v2`` by O(1/n).
    """
    n_low = int(round(n * (v2 - v0) / (v2 - v1)))
    n_high = n - n_low
    spread = 0.25 * min(v0 - v1, v2 - v0)
    low = v1 + spread * np.linspace(-1, 1, n_low)
    high_mean = (n * v0 - n_low * v1) / n_high
    high = high_mean + spread * np.linspace(-1, 1, n_high)
    values = np.concatenate([low, high])
    rng.shuffle(values)
    return values


def image_with_stats(v0, v1, v2, width=100, height=100, seed=0):
    rng = np.random.default_rng(seed)
    chans = [channel_with_stats(a, b, c, width * height, rng) for a, b, c in zip(v0, v1, v2)]
    return RasterImage(np.stack(chans, axis=-1).reshape(height, width, 3))


def codes_with_stats(v0, v1, v2, n, rng):
    """8-bit codes whose decoded statistics approximate ``(v0, v1, v2)``.

    Each part mixes the two codes adjacent to its target mean.
    """
    n_low = int(round(n * (v2 - v0) / (v2 - v1)))
    n_high = n - n_low
    high_mean = (n * v0 - n_low * v1) / n_high

    def part(mean, size):
        x = 128.0 * (mean + 1.0) - 0.5
        lo = int(np.floor(x))
        k = int(round((x - lo) * size))
        return np.array([lo + 1] * k + [lo] * (size - k))

    codes = np.concatenate([part(v1, n_low), part(high_mean, n_high)])
    rng.shuffle(codes)
    return codes.astype(np.uint8)


def code_image_with_stats(v0, v1, v2, width=256, height=256, seed=0):
    rng = np.random.default_rng(seed)
    chans = [codes_with_stats(a, b, c, width * height, rng) for a, b, c in zip(v0, v1, v2)]
    return np.stack(chans, axis=-1).reshape(height, width, 3)


def dark_codes(width=64, height=48, seed=7):
    """Random dark image: every channel mean decodes below -0.4."""
    rng = np.random.default_rng(seed)
    codes = rng.beta(2.0, 5.0, size=(height, width, 3)) * 140.0
    return np.clip(codes, 0, 255).astype(np.uint8)


def make_stats(v0, v1, v2):
    return ImageStats(ColorVec(*v0), ColorVec(*v1), ColorVec(*v2), (0, 0, 0), (0, 0, 0))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# ---- acceptance reporting: one PASS/FAIL line per criterion ----

_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_logreport(report):
    props = dict(report.user_properties)
    if "criterion" not in props or report.when == "teardown":
        return
    if report.when == "setup" and report.passed:
        return
    number, title = props["criterion"]
    passed, _ = _ACCEPTANCE.get(number, (True, title))
    _ACCEPTANCE[number] = (passed and report.passed, title)


def pytest_runtest_setup(item):
    m = item.get_closest_marker("criterion")
    if m is not None:
        item.user_properties.append(("criterion", m.args))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        passed, title = _ACCEPTANCE[number]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  criterion {number}: {title}")
