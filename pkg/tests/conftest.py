"""Shared fixtures: synthetic bitmap generators and reference curves."""

import io

import numpy as np
import pytest
from PIL import Image, ImageDraw


def _png_bytes(img: Image.Image) -> bytes:
    buf = io.BytesIO()
    img.save(buf, format="PNG")
    return buf.getvalue()


def make_disk_image(size: int = 512, radius: int = 200) -> bytes:
    img = Image.new("L", (size, size), 255)
    draw = ImageDraw.Draw(img)
    c = size // 2
    draw.ellipse([c - radius, c - radius, c + radius, c + radius], fill=0)
    return _png_bytes(img)


def make_square_image(size: int = 512, side: int = 300) -> bytes:
    img = Image.new("L", (size, size), 255)
    draw = ImageDraw.Draw(img)
    c = size // 2
    h = side // 2
    draw.rectangle([c - h, c - h, c + h - 1, c + h - 1], fill=0)
    return _png_bytes(img)


def make_two_blob_image(size: int = 512) -> bytes:
    img = Image.new("L", (size, size), 255)
    draw = ImageDraw.Draw(img)
    draw.ellipse([100, 100, 340, 340], fill=0)   # large blob
    draw.ellipse([400, 400, 440, 440], fill=0)   # small distant blob
    return _png_bytes(img)


@pytest.fixture(scope="session")
def disk_png() -> bytes:
    return make_disk_image()


@pytest.fixture(scope="session")
def square_png() -> bytes:
    return make_square_image()


@pytest.fixture(scope="session")
def two_blob_png() -> bytes:
    return make_two_blob_image()
