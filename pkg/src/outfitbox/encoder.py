"""Desk-scale reference feature provider.

Any encoder that fills a FeatureStore with consistent shapes satisfies the
decoder's contract; this one renders small synthetic item images from named
attributes and computes deterministic per-patch hue/intensity histograms,
so decoders can be trained end to end in seconds without any CNN stack.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .catalog import FeatureStore, Item

HUE_WHEEL: Mapping[str, tuple[float, float, float]] = {
    "red": (0.86, 0.18, 0.16),
    "orange": (0.95, 0.56, 0.12),
    "yellow": (0.93, 0.86, 0.21),
    "green": (0.22, 0.67, 0.28),
    "blue": (0.17, 0.35, 0.80),
    "purple": (0.55, 0.25, 0.72),
}

PATTERNS = ("solid", "striped", "checked")


def render_item_image(hue: str, pattern: str, seed: int, size: int = 24) -> np.ndarray:
    """(size, size, 3) float image in [0, 1], deterministic in its inputs."""
    if hue not in HUE_WHEEL:
        raise ValueError(f"unknown hue {hue!r}")
    if pattern not in PATTERNS:
        raise ValueError(f"unknown pattern {pattern!r}")
    rng = np.random.default_rng([seed, PATTERNS.index(pattern), sorted(HUE_WHEEL).index(hue)])
    shade = rng.uniform(0.75, 1.0)
    img = np.ones((size, size, 3)) * np.array(HUE_WHEEL[hue]) * shade
    cols = np.arange(size)
    if pattern == "striped":
        img[:, cols % 4 < 2, :] *= 0.55
    elif pattern == "checked":
        rows = cols[:, None]
        img[(rows // 4 + cols[None, :] // 4) % 2 == 0] *= 0.55
    img += rng.normal(0.0, 0.02, size=img.shape)
    return np.clip(img, 0.0, 1.0)


def _rgb_to_hue_sat_val(img: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    r, g, b = img[..., 0], img[..., 1], img[..., 2]
    v = img.max(axis=-1)
    c = v - img.min(axis=-1)
    s = np.where(v > 1e-9, c / np.maximum(v, 1e-9), 0.0)
    hue = np.zeros_like(v)
    nz = c > 1e-9
    rmax = nz & (v == r)
    gmax = nz & ~rmax & (v == g)
    bmax = nz & ~rmax & ~gmax
    hue[rmax] = ((g - b)[rmax] / c[rmax]) % 6
    hue[gmax] = (b - r)[gmax] / c[gmax] + 2
    hue[bmax] = (r - g)[bmax] / c[bmax] + 4
    return hue / 6.0, s, v


@dataclass(frozen=True)
class PatchHistogramEncoder:
    """Splits an image into a grid x grid patch lattice and histograms each
    patch: `hue_bins` saturation-weighted hue bins plus `value_bins` intensity
    bins, L1-normalized per patch. The map has M = grid**2 rows of
    D1 = hue_bins + value_bins entries; the global vector is the same
    histogram over the whole image."""

    grid: int = 3
    hue_bins: int = 8
    value_bins: int = 8

    @property
    def m(self) -> int:
        return self.grid * self.grid

    @property
    def d_1(self) -> int:
        return self.hue_bins + self.value_bins

    @property
    def d_g(self) -> int:
        return self.hue_bins + self.value_bins

    def _histogram(self, hue, sat, val) -> np.ndarray:
        h_hist, _ = np.histogram(
            hue.ravel(), bins=self.hue_bins, range=(0.0, 1.0), weights=sat.ravel()
        )
        v_hist, _ = np.histogram(val.ravel(), bins=self.value_bins, range=(0.0, 1.0))
        out = np.concatenate([h_hist, v_hist]).astype(np.float64)
        norm = out.sum()
        return out / norm if norm > 0 else out

    def encode(self, img: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """(global D_g vector, M x D_1 feature map) for one image."""
        hue, sat, val = _rgb_to_hue_sat_val(np.asarray(img, dtype=np.float64))
        size = img.shape[0]
        edges = np.linspace(0, size, self.grid + 1).astype(int)
        rows = []
        for i in range(self.grid):
            for j in range(self.grid):
                sl = (slice(edges[i], edges[i + 1]), slice(edges[j], edges[j + 1]))
                rows.append(self._histogram(hue[sl], sat[sl], val[sl]))
        return self._histogram(hue, sat, val), np.stack(rows)


def build_feature_store(
    items: Iterable[Item],
    attributes: Mapping[str, tuple[str, str]],
    encoder: PatchHistogramEncoder | None = None,
    seed: int = 0,
) -> FeatureStore:
    """Render and encode every item; `attributes` maps item id to
    (hue, pattern). Item ids hash into per-item image seeds."""
    encoder = encoder or PatchHistogramEncoder()
    globals_: dict[str, np.ndarray] = {}
    maps: dict[str, np.ndarray] = {}
    for n, item in enumerate(sorted(items, key=lambda x: x.id)):
        hue, pattern = attributes[item.id]
        img = render_item_image(hue, pattern, seed=seed + n)
        g, fmap = encoder.encode(img)
        globals_[item.feature_ref] = g
        maps[item.feature_ref] = fmap
    return FeatureStore(globals_, maps)
