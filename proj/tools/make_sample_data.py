"""Writes the sample rasters under data/."""
import math
import os

import numpy as np

HERE = os.path.dirname(os.path.abspath(__file__))
DATA = os.path.join(HERE, "..", "data")


def write_asc(path, z, cell, nodata=-9999):
    rows, cols = z.shape
    with open(path, "w") as f:
        f.write(f"ncols {cols}\nnrows {rows}\nxllcorner 0\nyllcorner 0\n")
        f.write(f"cellsize {cell}\nNODATA_value {nodata}\n")
        for r in range(rows):
            f.write(" ".join(repr(float(v)) for v in z[r]) + "\n")


def centres(cols, rows, cell):
    x = (np.arange(cols) + 0.5) * cell
    y = (rows - np.arange(rows) - 0.5) * cell  # top row first
    return np.meshgrid(x, y)


def ramp():
    x, y = centres(81, 81, 0.25)
    return -math.tan(math.radians(10.0)) * x


def hills():
    x, y = centres(201, 201, 0.1)
    bumps = [(5.0, 6.0, 2.2, 1.2), (13.0, 4.5, 1.8, -0.9), (9.5, 12.0, 3.0, 1.6),
             (16.0, 15.5, 2.0, 1.0), (4.0, 15.0, 1.6, -0.7)]
    z = np.zeros_like(x)
    for cx, cy, s, a in bumps:
        z += a * np.exp(-0.5 * ((x - cx) ** 2 + (y - cy) ** 2) / s ** 2)
    return z


if __name__ == "__main__":
    os.makedirs(DATA, exist_ok=True)
    write_asc(os.path.join(DATA, "ramp10.asc"), ramp(), 0.25)
    write_asc(os.path.join(DATA, "hills.asc"), hills(), 0.1)
