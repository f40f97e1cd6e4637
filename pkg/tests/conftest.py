"""Shared fixtures: the domain gallery and its cached FEM spectra."""

import numpy as np
import pytest

from spectral_certify.fem import neumann_spectrum
from spectral_certify.geometry import ConvexPolygon, Point2, Rectangle, regular_polygon

# refinement levels chosen so every gallery domain resolves its first
# dozen eigenvalues well below the acceptance tolerances while keeping
# the whole suite fast; the 10:1 rectangle needs two extra rounds because
# the centroid fan gives it sliver triangles that refinement preserves
GALLERY_LEVELS = {
    "square": 6,
    "rect_2x1": 6,
    "rect_10x1": 8,
    "regular_5": 5,
    "regular_6": 5,
    "regular_8": 5,
    "regular_256": 4,
}

GALLERY_EIGENVALUES = 12


def build_gallery() -> dict:
    return {
        "square": Rectangle(Point2(0.0, 0.0), 0.5, 0.5, 0.0).polygon(),
        "rect_2x1": Rectangle(Point2(0.0, 0.0), 1.0, 0.5, 0.0).polygon(),
        "rect_10x1": Rectangle(Point2(0.0, 0.0), 5.0, 0.5, 0.0).polygon(),
        "regular_5": regular_polygon(5),
        "regular_6": regular_polygon(6),
        "regular_8": regular_polygon(8),
        "regular_256": regular_polygon(256),
    }


@pytest.fixture(scope="session")
def gallery() -> dict:
    return build_gallery()


@pytest.fixture(scope="session")
def gallery_fem_spectra(gallery) -> dict:
    """FEM spectra of every gallery domain, solved once per session."""
    out = {}
    for name, poly in gallery.items():
        out[name] = neumann_spectrum(poly, GALLERY_EIGENVALUES, GALLERY_LEVELS[name])
    return out


@pytest.fixture(scope="session")
def random_polygons() -> list:
    """Seeded random convex polygons of varied size and anisotropy."""
    from scipy.spatial import ConvexHull

    rng = np.random.default_rng(20240817)
    polys = []
    while len(polys) < 100:
        n = int(rng.integers(4, 40))
        pts = rng.standard_normal((n, 2))
        pts[:, 0] *= rng.uniform(0.5, 4.0)
        pts = pts @ np.array(
            [
                [np.cos(a := rng.uniform(0, np.pi)), -np.sin(a)],
                [np.sin(a), np.cos(a)],
            ]
        )
        pts += rng.uniform(-2, 2, size=2)
        hull = ConvexHull(pts)
        polys.append(ConvexPolygon(pts[hull.vertices]))
    return polys
