import numpy as np
import pytest

from fibstego.covers import generate_cover
from fibstego.embed import embed_lsb_binary, embed_mapping
from fibstego.errors import InputError
from fibstego.steganalysis import (
    flip_negative,
    flip_positive,
    rs_estimate_length,
    rs_statistics,
    solve_rs_quadratic,
    ws_estimate,
)


def rs_oracle(img, mask=(0, 1, 1, 0)):
    """Per-group loop straight from the definition."""
    def f(g):
        return sum(abs(g[i + 1] - g[i]) for i in range(len(g) - 1))

    def f1(x):
        return x + 1 if x % 2 == 0 else x - 1

    def fm1(x):
        return x - 1 if x % 2 == 0 else x + 1

    counts = [0, 0, 0, 0]
    total = 0
    for row in img.tolist():
        for s in range(0, len(row) - len(row) % 4, 4):
            g = row[s:s + 4]
            total += 1
            for which, flip in enumerate((f1, fm1)):
                h = [flip(x) if m else x for x, m in zip(g, mask)]
                if f(h) > f(g):
                    counts[2 * which] += 1
                elif f(h) < f(g):
                    counts[2 * which + 1] += 1
    return [c / total for c in counts]


def test_flips_are_involutions():
    x = np.arange(-2, 260)
    np.testing.assert_array_equal(flip_positive(flip_positive(x)), x)
    np.testing.assert_array_equal(flip_negative(flip_negative(x)), x)
    assert flip_positive(np.array([4, 5])).tolist() == [5, 4]
    assert flip_negative(np.array([4, 5, 0, 255])).tolist() == [3, 6, -1, 256]


def test_rs_matches_oracle(rng):
    img = rng.integers(0, 256, size=(9, 23)).astype(np.uint8)
    st = rs_statistics(img)
    assert [st.rm, st.sm, st.rm_neg, st.sm_neg] == pytest.approx(rs_oracle(img))


def test_rs_constant_image():
    img = np.full((8, 8), 100, dtype=np.uint8)
    st = rs_statistics(img)
    assert [st.rm, st.sm, st.rm_neg, st.sm_neg] == rs_oracle(img)
    # flipping the middle pair always roughens a flat group
    assert st.rm == st.rm_neg == 1.0
    assert st.sm == st.sm_neg == 0.0


def test_rs_fraction_invariants(small_covers):
    for c in small_covers:
        st = rs_statistics(c)
        assert st.rm + st.sm <= 1 and st.rm_neg + st.sm_neg <= 1


def test_rs_rejects_bad_input():
    with pytest.raises(InputError):
        rs_statistics(np.zeros((4, 3), dtype=np.uint8))
    with pytest.raises(InputError):
        rs_statistics(np.zeros((4, 8), dtype=np.uint16))


def test_rs_asymmetry_grows_with_lsb(small_covers):
    for i, c in enumerate(small_covers):
        msg = np.random.default_rng(i).integers(0, 2, c.size)
        clean = rs_statistics(c)
        stego = rs_statistics(embed_lsb_binary(c, msg, i).stego)
        assert abs(clean.rm - clean.rm_neg) < 0.05 and abs(clean.sm - clean.sm_neg) < 0.05
        assert abs(stego.rm - stego.rm_neg) > abs(clean.rm - clean.rm_neg)
        assert abs(stego.sm - stego.sm_neg) > abs(clean.sm - clean.sm_neg)


def test_rs_quadratic_degenerate():
    # a = b = 0: no information at all
    assert solve_rs_quadratic(0.0, 0.0, 0.0, 0.0) is None
    # negative discriminant
    assert solve_rs_quadratic(0.2, 0.2, -0.3, -1.1) is None


def covers20():
    return [generate_cover(128, 128, 300 + s) for s in range(20)]


def test_rs_estimates_directional():
    clean, lsb, mapped = [], [], []
    half = []
    for i, c in enumerate(covers20()):
        msg = np.random.default_rng(i).integers(0, 2, c.size)
        clean.append(rs_estimate_length(c).estimated_payload)
        lsb.append(rs_estimate_length(embed_lsb_binary(c, msg, i).stego).estimated_payload)
        mapped.append(rs_estimate_length(embed_mapping(c, msg, i).stego).estimated_payload)
        half.append(rs_estimate_length(embed_lsb_binary(c, msg[: c.size // 2], i).stego).estimated_payload)
    assert None not in clean and None not in mapped and None not in half
    assert np.mean(clean) <= 0.1
    assert np.mean(mapped) <= 0.2
    assert np.mean(half) == pytest.approx(0.5, abs=0.1)
    reliable = [x for x in lsb if x is not None]
    assert len(reliable) >= 5
    assert np.mean(reliable) >= 0.7


def test_ws_estimates_directional():
    clean, lsb, mapped = [], [], []
    for i, c in enumerate(covers20()):
        msg = np.random.default_rng(i).integers(0, 2, c.size)
        clean.append(ws_estimate(c).estimated_payload)
        lsb.append(ws_estimate(embed_lsb_binary(c, msg, i).stego).estimated_payload)
        mapped.append(ws_estimate(embed_mapping(c, msg, i).stego).estimated_payload)
    assert np.mean(clean) <= 0.1
    assert np.mean(lsb) >= 0.8
    assert np.mean(mapped) <= 0.35


def test_ws_clamp_law(rng):
    for _ in range(5):
        img = rng.integers(0, 256, size=(16, 16)).astype(np.uint8)
        rep = ws_estimate(img)
        assert rep.estimated_payload == min(max(rep.raw_estimate, 0.0), 1.0)


def test_ws_matches_loop(rng):
    img = rng.integers(0, 256, size=(7, 9)).astype(np.uint8)
    s = img.astype(float)
    terms, weights = [], []
    for y in range(1, 6):
        for x in range(1, 8):
            nb = [s[y - 1, x], s[y + 1, x], s[y, x - 1], s[y, x + 1]]
            mean = sum(nb) / 4
            var = sum((v - mean) ** 2 for v in nb) / 4
            flip = s[y, x] + 1 if s[y, x] % 2 == 0 else s[y, x] - 1
            weights.append(1 / (5 + var))
            terms.append((s[y, x] - mean) * (s[y, x] - flip))
    expected = 2 * sum(w * t for w, t in zip(weights, terms)) / sum(weights)
    assert ws_estimate(img).raw_estimate == pytest.approx(expected)


def test_ws_rejects_small():
    with pytest.raises(InputError):
        ws_estimate(np.zeros((2, 5), dtype=np.uint8))
