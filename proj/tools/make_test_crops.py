"""Writes the 64x64 RGB test crops (and a small grayscale file) used by the tests."""
import pathlib
import sys

import numpy as np
from skimage import data, io

CROPS = {
    "astronaut": (data.astronaut, 60, 180),
    "chelsea": (data.chelsea, 80, 160),
    "coffee": (data.coffee, 150, 230),
}

out = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "tests/data")
out.mkdir(parents=True, exist_ok=True)
for name, (load, top, left) in CROPS.items():
    img = load()[top:top + 64, left:left + 64, :3]
    io.imsave(out / f"{name}_64.png", img, check_contrast=False)
    print(name, img.shape, img.dtype)

gray = np.arange(16, dtype=np.uint8).reshape(4, 4) * 16
io.imsave(out / "gray_4.png", gray, check_contrast=False)
