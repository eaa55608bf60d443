import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from revmark.core import GrayImage
from revmark.errors import (
    AmbiguousShiftDirection,
    CentreUnderflow,
    EmptyLogo,
    GridMismatch,
    InvalidConfig,
    ThresholdOutOfRange,
)
from revmark.layer1 import (
    BookKeeping,
    embed_layer1,
    extract_plane,
    narrow_range,
    prng_next,
    restore_lsbs,
    restore_range,
    scramble_order,
    scramble_plane,
    tile_logo,
    unscramble_plane,
)

M64 = (1 << 64) - 1


def splitmix_words(seed, n):
    """Independent oracle written straight from the recurrence."""
    out = []
    for _ in range(n):
        seed = (seed + 0x9E3779B97F4A7C15) % 2**64
        z = seed
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 % 2**64
        z = (z ^ (z >> 27)) * 0x94D049BB133111EB % 2**64
        out.append(z ^ (z >> 31))
    return out


small_images = st.tuples(st.integers(1, 20), st.integers(1, 20)).flatmap(
    lambda hw: arrays(np.uint8, hw).map(GrayImage)
)


def narrowed_images(m, S=1):
    """Images whose values already sit in [S, 255 - S] and span at least one block."""
    return st.tuples(st.integers(m, 4 * m), st.integers(m, 4 * m)).flatmap(
        lambda hw: arrays(np.int64, hw, elements=st.integers(S, 255 - S)).map(GrayImage)
    )


def test_narrow_example():
    img = GrayImage(np.array([[1, 255, 100]]))
    out, bk = narrow_range(img, 2)
    assert out.pixels.tolist() == [[3, 253, 100]]
    assert bk.threshold == 2 and bk.shifted.tolist() == [[0, 0], [0, 1]]


def test_narrow_noop():
    img = GrayImage(np.array([[3, 100], [252, 50]]))
    out, bk = narrow_range(img, 2)
    assert out == img and bk.count == 0


@pytest.mark.parametrize("S", [0, 64])
def test_narrow_threshold_range(S):
    with pytest.raises(ThresholdOutOfRange):
        narrow_range(GrayImage(np.zeros((2, 2))), S)


def test_shift_list_is_raster_order():
    img = GrayImage(np.array([[100, 0], [255, 1]]))
    _, bk = narrow_range(img, 3)
    assert bk.shifted.tolist() == [[0, 1], [1, 0], [1, 1]]


@given(small_images, st.integers(1, 63))
def test_narrow_restore_round_trip(img, S):
    out, bk = narrow_range(img, S)
    assert out.pixels.min() >= S and out.pixels.max() <= 255 - S
    assert restore_range(out, bk) == img


def test_restore_examples():
    img = GrayImage(np.array([[3, 253, 100]]))
    bk = BookKeeping(2, [[0, 0], [0, 1]])
    assert restore_range(img, bk).pixels.tolist() == [[1, 255, 100]]
    assert restore_range(img, BookKeeping(2)) == img
    with pytest.raises(AmbiguousShiftDirection):
        restore_range(img, BookKeeping(2, [[0, 2]]))


def test_tile_logo():
    assert tile_logo([[1]], (3, 3)).tolist() == [[1] * 3] * 3
    assert tile_logo([[1], [0]], (4, 1)).tolist() == [[1], [0], [1], [0]]
    logo = np.random.default_rng(0).integers(0, 2, (51, 51))
    assert np.array_equal(tile_logo(logo, (256 // 5, 256 // 5))[:51, :51], logo)
    assert np.array_equal(tile_logo(logo, (51, 51)), logo)
    with pytest.raises(EmptyLogo):
        tile_logo(np.zeros((0, 3)), (2, 2))


def test_prng_seed0():
    state, word = prng_next(0)
    assert word == 0xE220A8397B1DCDAF
    assert state == 0x9E3779B97F4A7C15


def test_prng_matches_oracle():
    state, words = 12345, []
    for _ in range(50):
        state, w = prng_next(state)
        words.append(w)
    assert words == splitmix_words(12345, 50)
    assert prng_next(0)[1] != prng_next(1)[1]
    assert prng_next(M64)[0] == (M64 + 0x9E3779B97F4A7C15) % 2**64


def test_four_bit_permutation_hand_run():
    w = splitmix_words(0, 3)
    order = [0, 1, 2, 3]
    for step, i in enumerate((3, 2, 1)):
        j = w[step] % (i + 1)
        order[i], order[j] = order[j], order[i]
    assert order == [2, 1, 0, 3]  # frozen from the hand run above
    assert scramble_order(4, 0).tolist() == order
    plane = np.array([[1, 0], [0, 0]], dtype=np.uint8)  # column-major flat: [1, 0, 0, 0]
    scrambled = scramble_plane(plane, 0)
    # flat[order] = [0, 0, 1, 0] -> column-major reshape
    assert scrambled.tolist() == [[0, 1], [0, 0]]
    assert unscramble_plane(scrambled, 0).tolist() == plane.tolist()


def test_single_bit_plane():
    assert scramble_plane([[1]], 99).tolist() == [[1]]
    assert unscramble_plane([[0]], 99).tolist() == [[0]]


@given(
    st.tuples(st.integers(1, 12), st.integers(1, 12)).flatmap(lambda hw: arrays(np.uint8, hw, elements=st.integers(0, 1))),
    st.integers(0, M64),
)
def test_scramble_round_trip(plane, key):
    assert np.array_equal(unscramble_plane(scramble_plane(plane, key), key), plane)
    assert np.array_equal(scramble_plane(unscramble_plane(plane, key), key), plane)


def test_wrong_key_scrambles_differently():
    rng = np.random.default_rng(5)
    differ = 0
    for _ in range(200):
        plane = rng.integers(0, 2, (8, 8)).astype(np.uint8)
        k1, k2 = (int(x) for x in rng.integers(0, 2**63, 2))
        differ += not np.array_equal(unscramble_plane(scramble_plane(plane, k1), k2), plane)
    assert differ >= 198


def test_embed_example_block():
    img = GrayImage(np.full((5, 5), 10))
    out, lmap = embed_layer1(img, [[1]], 5)
    assert lmap.tolist() == [[1]] and out.pixels[2, 2] == 11
    assert int((out.pixels != img.pixels).sum()) == 1
    out0, lmap0 = embed_layer1(img, [[0]], 5)
    assert out0 == img and lmap0.tolist() == [[0]]
    assert restore_lsbs(out, lmap, 5).pixels[2, 2] == 10


def test_partial_blocks_untouched():
    img = GrayImage(np.full((7, 12), 20))
    out, lmap = embed_layer1(img, np.ones((1, 2)), 5)
    assert lmap.shape == (1, 2)
    assert np.array_equal(out.pixels[5:], img.pixels[5:])
    assert np.array_equal(out.pixels[:, 10:], img.pixels[:, 10:])


def test_grid_and_block_errors():
    img = GrayImage(np.full((10, 10), 20))
    with pytest.raises(GridMismatch):
        embed_layer1(img, np.zeros((3, 2)), 5)
    with pytest.raises(GridMismatch):
        restore_lsbs(img, np.zeros((1, 1)), 5)
    with pytest.raises(InvalidConfig):
        embed_layer1(img, np.zeros((2, 2)), 4)
    with pytest.raises(CentreUnderflow):
        restore_lsbs(GrayImage(np.zeros((5, 5))), [[1]], 5)


def test_extract_examples():
    px = np.zeros((5, 5), dtype=np.int64)
    px[0, 0] = 251
    assert extract_plane(GrayImage(px), 5).tolist() == [[1]]
    assert not extract_plane(GrayImage(np.zeros((15, 10))), 5).any()


@pytest.mark.parametrize("m", [3, 5, 7])
@settings(max_examples=30)
@given(data=st.data())
def test_parity_correctness(m, data):
    img = data.draw(narrowed_images(m))
    grid = (img.height // m, img.width // m)
    plane = data.draw(arrays(np.uint8, grid, elements=st.integers(0, 1)))
    out, lmap = embed_layer1(img, plane, m)
    assert np.array_equal(extract_plane(out, m), plane)
    diff = out.pixels.astype(int) - img.pixels
    assert diff.min() >= 0 and diff.max() <= 1
    assert int(diff.sum()) == int(lmap.sum())
    assert restore_lsbs(out, lmap, m) == img


@settings(max_examples=30)
@given(narrowed_images(5), st.data())
def test_single_pixel_flips_block_bit(img, data):
    r = data.draw(st.integers(0, img.height // 5 * 5 - 1))
    c = data.draw(st.integers(0, img.width // 5 * 5 - 1))
    delta = data.draw(st.sampled_from([-1, 1]))
    px = img.pixels.astype(np.int64)
    px[r, c] += delta
    flipped = extract_plane(GrayImage(px), 5) != extract_plane(img, 5)
    assert np.argwhere(flipped).tolist() == [[r // 5, c // 5]]
