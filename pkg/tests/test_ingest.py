import io

import numpy as np
import pytest
from PIL import Image

from gpt2d import MaskError, load_mask, trace_contour
from conftest import make_disk_image, make_square_image


def _png(arr: np.ndarray) -> bytes:
    buf = io.BytesIO()
    Image.fromarray(arr.astype(np.uint8)).save(buf, format="PNG")
    return buf.getvalue()


def test_all_white_image_rejected():
    with pytest.raises(MaskError, match="empty"):
        load_mask(_png(np.full((64, 64), 255)))


def test_disk_mask_area(disk_png):
    mask = load_mask(disk_png)
    expect = np.pi * 200**2
    assert abs(mask.area - expect) / expect < 0.01


def test_two_blobs_keep_largest_with_warning(two_blob_png):
    with pytest.warns(UserWarning, match="components"):
        mask = load_mask(two_blob_png)
    # the small blob is gone: area close to the large one alone
    expect = np.pi * 120**2
    assert abs(mask.area - expect) / expect < 0.02


def test_border_touching_rejected():
    arr = np.full((64, 64), 255)
    arr[0:30, 10:40] = 0  # touches the top border
    with pytest.raises(MaskError, match="border"):
        load_mask(_png(arr))


def test_holes_filled():
    arr = np.full((128, 128), 255)
    arr[30:100, 30:100] = 0
    arr[50:70, 50:70] = 255  # interior hole
    mask = load_mask(_png(arr))
    assert mask.area == 70 * 70


def test_traced_disk_curve_properties(disk_png):
    curve = trace_contour(load_mask(disk_png), 256)
    curve.validate()
    expect = 2.0 * np.pi * 200.0
    assert abs(curve.perimeter - expect) / expect < 0.02
    assert np.allclose(curve.centroid, [255.5, 255.5], atol=2.0)


def test_traced_square_perimeter(square_png):
    curve = trace_contour(load_mask(square_png), 256)
    expect = 4.0 * 300.0
    assert abs(curve.perimeter - expect) / expect < 0.02


def test_pad_translates_curve(disk_png):
    base = trace_contour(load_mask(disk_png), 128)
    img = Image.open(io.BytesIO(disk_png))
    arr = np.asarray(img)
    # pad 32 white pixels on the left and bottom: x and y shift by +32
    padded = np.full((arr.shape[0] + 32, arr.shape[1] + 32), 255, dtype=np.uint8)
    padded[:-32, 32:] = arr
    shifted = trace_contour(load_mask(_png(padded)), 128)
    assert np.allclose(shifted.nodes, base.nodes + [32.0, 32.0], atol=1e-8)


def test_resolution_doubling_reduces_perimeter_error():
    e = []
    for size, radius in ((256, 100.0), (512, 200.0)):
        curve = trace_contour(load_mask(make_disk_image(size, int(radius))), 256)
        expect = 2.0 * np.pi * radius
        e.append(abs(curve.perimeter - expect) / expect)
    assert e[1] < e[0]


def test_thin_shape_rejected():
    arr = np.full((64, 64), 255)
    arr[30, 10:50] = 0  # one-pixel line
    with pytest.raises(MaskError):
        trace_contour(load_mask(_png(arr)), 64)


def test_undecodable_bytes_rejected():
    with pytest.raises(MaskError, match="decode"):
        load_mask(b"this is not an image")
