import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from logimg.image import (
    RasterImage,
    compute_stats,
    decode_channel,
    encode_channel,
    image_dot,
    image_norm,
    map_pixels,
)
from logimg.logspace import EPS, THETA, ColorVec, log_smul, vec_neg, vec_smul

U_L = ColorVec.splat(math.tanh(1.0))
ALL_CODES = np.arange(256)


class TestCodec:
    def test_decode_examples(self):
        assert decode_channel(128) == (128.5 / 256) * 2 - 1 == 0.00390625
        assert decode_channel(0) == (0.5 / 256) * 2 - 1 == -0.99609375
        assert decode_channel(255) == 0.99609375

    def test_encode_examples(self):
        assert encode_channel(0.00390625) == 128
        assert encode_channel(-1 + 1e-12) == 0
        assert encode_channel(0.99609375) == 255

    def test_round_trip_all_codes(self):
        assert np.array_equal(encode_channel(decode_channel(ALL_CODES)), ALL_CODES)
        for c in range(256):
            assert encode_channel(decode_channel(c)) == c

    def test_monotone_and_symmetric(self):
        d = decode_channel(ALL_CODES)
        assert np.all(np.diff(d) > 0)
        assert np.array_equal(d, -d[::-1])
        assert np.all(np.abs(d) < 1)

    @pytest.mark.parametrize("bad", [-1, 256, 3.5])
    def test_decode_rejects(self, bad):
        with pytest.raises(ValueError):
            decode_channel(bad)


class TestRasterImage:
    def test_shape_validation(self):
        with pytest.raises(ValueError):
            RasterImage(np.zeros((2, 2)))
        with pytest.raises(ValueError):
            RasterImage(np.zeros((0, 2, 3)))
        with pytest.raises(ValueError):
            RasterImage(np.full((1, 1, 3), np.nan))

    def test_immutable_and_clamped(self):
        img = RasterImage(np.ones((2, 3, 3)))
        assert (img.width, img.height, img.card) == (3, 2, 6)
        assert img.pixels.max() == 1 - EPS
        with pytest.raises(ValueError):
            img.pixels[0, 0, 0] = 0.0

    def test_codes_round_trip(self):
        codes = np.random.default_rng(0).integers(0, 256, (5, 7, 3), dtype=np.uint8)
        assert np.array_equal(RasterImage.from_codes(codes).to_codes(), codes)

    def test_pixel_accessor(self):
        img = RasterImage(np.array([[[0.1, 0.2, 0.3], [0.4, 0.5, 0.6]]]))
        assert img.pixel(1, 0) == ColorVec(0.4, 0.5, 0.6)


class TestMapPixels:
    def test_identity(self):
        img = RasterImage.from_codes(np.arange(24, dtype=np.uint8).reshape(2, 4, 3))
        assert np.array_equal(map_pixels(img, lambda v: v).pixels, img.pixels)

    def test_negation_of_constant(self):
        v = ColorVec(0.2, -0.4, 0.6)
        out = map_pixels(RasterImage.constant(v, 3, 2), vec_neg)
        assert np.array_equal(out.pixels, RasterImage.constant(vec_neg(v), 3, 2).pixels)

    def test_smul_of_constant(self):
        out = map_pixels(RasterImage.constant(ColorVec.splat(0.5), 2, 2), lambda v: vec_smul(2, v))
        assert np.allclose(out.pixels, 0.8, atol=1e-15)

    def test_vectorized_matches_per_pixel(self):
        codes = np.random.default_rng(3).integers(0, 256, (6, 5, 3), dtype=np.uint8)
        img = RasterImage.from_codes(codes)
        slow = map_pixels(img, lambda v: vec_smul(1.7, v))
        fast = map_pixels(img, lambda a: log_smul(1.7, a), vectorized=True)
        assert np.array_equal(slow.pixels, fast.pixels)

    def test_visit_order_independent(self):
        codes = np.random.default_rng(4).integers(0, 256, (4, 4, 3), dtype=np.uint8)
        img = RasterImage.from_codes(codes)
        flipped = RasterImage(img.pixels[::-1, ::-1])
        a = map_pixels(img, lambda v: vec_smul(0.7, v))
        b = map_pixels(flipped, lambda v: vec_smul(0.7, v))
        assert np.array_equal(a.pixels, b.pixels[::-1, ::-1])


class TestHilbert:
    def test_dot_examples(self):
        one = RasterImage.constant(U_L, 1, 1)
        assert image_dot(one, one) == pytest.approx(3.0, abs=1e-14)
        two = RasterImage.constant(U_L, 2, 1)
        assert image_dot(two, two) == pytest.approx(6.0, abs=1e-14)
        f = RasterImage.from_codes(np.full((2, 2, 3), 17, dtype=np.uint8))
        assert image_dot(f, RasterImage.constant(THETA, 2, 2)) == 0.0

    def test_norm_examples(self):
        assert image_norm(RasterImage.constant(THETA, 3, 3)) == 0.0
        assert image_norm(RasterImage.constant(U_L, 1, 1)) == pytest.approx(math.sqrt(3))
        assert image_norm(RasterImage.constant(U_L, 2, 2)) == pytest.approx(math.sqrt(12))

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            image_dot(RasterImage.constant(U_L, 1, 2), RasterImage.constant(U_L, 2, 1))

    @given(arrays(np.uint8, (3, 4, 3)), arrays(np.uint8, (3, 4, 3)))
    def test_symmetry_and_zero_norm(self, c1, c2):
        f, g = RasterImage.from_codes(c1), RasterImage.from_codes(c2)
        assert image_dot(f, g) == image_dot(g, f)
        # no 8-bit code decodes to exactly 0, so code images never have zero norm
        assert image_norm(f) > 0


class TestStats:
    def test_symmetric_pair(self):
        img = RasterImage(np.array([[[-0.5, 0, 0], [0.5, 0, 0]]]))
        s = compute_stats(img)
        assert (s.v0.r, s.v1.r, s.v2.r) == (0.0, -0.5, 0.5)
        assert s.v0 == THETA
        assert s.lower_counts == (1, 2, 2) and s.upper_counts == (1, 2, 2)

    def test_constant_image(self):
        v = ColorVec(0.1, -0.3, 0.7)
        s = compute_stats(RasterImage.constant(v, 3, 5))
        assert s.v0 == s.v1 == s.v2 == v
        assert s.lower_counts == s.upper_counts == (15, 15, 15)

    def test_four_pixel_red_channel(self):
        red = np.array([-0.8, -0.4, 0.2, 0.6])
        px = np.zeros((1, 4, 3))
        px[0, :, 0] = red
        s = compute_stats(RasterImage(px))
        assert s.v0.r == pytest.approx(-0.1, abs=1e-15)
        assert s.v1.r == pytest.approx(-0.6, abs=1e-15)
        assert s.v2.r == pytest.approx(0.4, abs=1e-15)

    @given(arrays(np.uint8, (5, 6, 3)))
    def test_ordering_invariant(self, codes):
        img = RasterImage.from_codes(codes)
        s = compute_stats(img)
        for i in range(3):
            ch = img.pixels[:, :, i]
            assert s.v1.as_array()[i] <= s.v0.as_array()[i] <= s.v2.as_array()[i]
            assert s.lower_counts[i] + s.upper_counts[i] >= img.card
            if ch.min() < ch.max():
                assert s.v1.as_array()[i] < s.v2.as_array()[i]

    @given(arrays(np.uint8, (4, 4, 3)), st.floats(0.1, 3.0))
    def test_monotone_op_mean_band(self, codes, lam):
        # the mapped mean is a convex combination of the op-means over the
        # two partitions; op(v1) itself is not a bound once op is nonlinear
        img = RasterImage.from_codes(codes)
        s = compute_stats(img)
        mapped = map_pixels(img, lambda a: log_smul(lam, a), vectorized=True)
        m = compute_stats(mapped).v0.as_array()
        for i in range(3):
            ch, out = img.pixels[:, :, i], mapped.pixels[:, :, i]
            m0 = s.v0.as_array()[i]
            lo, hi = out[ch <= m0].mean(), out[ch >= m0].mean()
            assert lo - 1e-9 <= m[i] <= hi + 1e-9
            assert log_smul(lam, ch.min()) - 1e-9 <= m[i] <= log_smul(lam, ch.max()) + 1e-9

    def test_affine_op_mean_band(self):
        codes = np.random.default_rng(8).integers(0, 256, (9, 9, 3), dtype=np.uint8)
        img = RasterImage.from_codes(codes)
        s = compute_stats(img)
        m = compute_stats(map_pixels(img, vec_neg)).v0.as_array()
        assert np.all(-s.v2.as_array() - 1e-9 <= m) and np.all(m <= -s.v1.as_array() + 1e-9)
