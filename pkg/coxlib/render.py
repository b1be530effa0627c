"""SVG tilings of the divided domain for 3×3 realizations.

Group elements stay exact; each vertex is converted to float only when it is
projected to the affine chart Σ y_i x_i = −1 (y = chart weights, unit by
default). The fundamental triangle is spanned by −e₁, −e₂, −e₃, so its image
under g has the negated columns of g as vertices.
"""

from __future__ import annotations

import io
import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import svgwrite

from coxlib import config, linalg
from coxlib.cartan import CartanMatrix
from coxlib.numfield import AlgNumber, sign
from coxlib.realize import Realization, word_ball

_log = logging.getLogger("coxlib.render")

DEFAULT_PALETTE = ("#35618f", "#eef1f5")
_STROKE = "#1b1b1b"
_DIGITS = 6
_SQRT3_HALF = math.sqrt(3) / 2


@dataclass(frozen=True)
class ChartConfig:
    depth: int = 4
    width: int = 800
    height: int = 800
    cull_epsilon: float = field(default_factory=config.get_cull_epsilon)
    palette: tuple[str, str] = DEFAULT_PALETTE
    weights: tuple[Fraction, ...] | None = None

    def __post_init__(self) -> None:
        if self.depth < 0:
            raise ValueError(f"depth must be >= 0, got {self.depth}")
        if not self.cull_epsilon > 0:
            raise ValueError(f"cull_epsilon must be > 0, got {self.cull_epsilon}")
        if self.width <= 0 or self.height <= 0:
            raise ValueError("canvas width and height must be positive")
        if len(self.palette) != 2:
            raise ValueError("palette needs exactly two colors (even, odd)")


@dataclass(frozen=True)
class Tile:
    word: tuple[int, ...]
    points: tuple[tuple[float, float], ...]
    fill: str


@dataclass
class SvgScene:
    tiles: list[Tile] = field(default_factory=list)
    culled: int = 0

    @property
    def viewbox(self) -> tuple[float, float, float, float]:
        """(min_x, min_y, width, height) with a 2 % margin."""
        if not self.tiles:
            return (0.0, 0.0, 1.0, 1.0)
        xs = [p[0] for t in self.tiles for p in t.points]
        ys = [p[1] for t in self.tiles for p in t.points]
        w = max(xs) - min(xs) or 1.0
        h = max(ys) - min(ys) or 1.0
        pad = 0.02 * max(w, h)
        return (
            round(min(xs) - pad, _DIGITS),
            round(min(ys) - pad, _DIGITS),
            round(w + 2 * pad, _DIGITS),
            round(h + 2 * pad, _DIGITS),
        )


def project_chart(
    x: Sequence[AlgNumber],
    cull_epsilon: float | None = None,
    weights: Sequence[Fraction] | None = None,
) -> tuple[float, float] | None:
    """Barycentric chart point (y₁x₁/s, y₂x₂/s), s = Σ y_i x_i; None when culled."""
    if len(x) != 3:
        raise ValueError(f"project_chart needs a 3-vector, got length {len(x)}")
    if all(v.is_zero for v in x):
        raise ValueError("cannot project the zero vector")
    eps = config.get_cull_epsilon() if cull_epsilon is None else cull_epsilon
    ys = tuple(weights) if weights is not None else (Fraction(1),) * 3
    scaled = [float(v * y) for v, y in zip(x, ys, strict=True)]
    s = sum(scaled)
    norm = math.sqrt(sum(float(v) ** 2 for v in x))
    if abs(s) < eps * norm:
        return None
    return (scaled[0] / s, scaled[1] / s)


def to_canvas(point: tuple[float, float]) -> tuple[float, float]:
    """Standard simplex onto an equilateral triangle, y axis pointing down."""
    u, v = point
    return (round(u + v / 2, _DIGITS), round(-v * _SQRT3_HALF, _DIGITS))


def chart_weights(c: CartanMatrix, max_denominator: int = 1000) -> tuple[Fraction, ...]:
    """Positive rational y with yᵀC < 0, or unit weights if none is found.

    The candidate is the Perron vector of 2I − Cᵀ (numpy), rounded to
    fractions; the inequality is then checked exactly.
    """
    n = c.size
    unit = (Fraction(1),) * n
    shifted = 2 * np.eye(n) - np.array([[float(c[i, j]) for i in range(n)] for j in range(n)])
    eigenvalues, eigenvectors = np.linalg.eig(shifted)
    k = int(np.argmax(eigenvalues.real))
    vector = np.abs(eigenvectors[:, k].real)
    if vector.max() <= 0:
        _log.warning("no Perron vector for %s, using unit chart weights", c.name or "matrix")
        return unit
    vector = vector / vector.max()
    weights = tuple(
        max(Fraction(float(v)).limit_denominator(max_denominator), Fraction(1, max_denominator))
        for v in vector
    )
    for j in range(n):
        total = c.spec.zero()
        for i in range(n):
            total = total + c[i, j] * weights[i]
        if sign(total) >= 0:
            _log.warning(
                "rounded chart weights fail at column %d for %s, using unit weights",
                j + 1,
                c.name or "matrix",
            )
            return unit
    return weights


def fundamental_vertices_fixed(real: Realization) -> bool:
    """σ_i fixes −e_j for every i ≠ j (exact)."""
    spec = real.spec
    for j in range(real.rank):
        e = tuple(spec.one() if k == j else spec.zero() for k in range(real.rank))
        for i, sigma in enumerate(real.reflections):
            if i == j:
                continue
            image = tuple(sum((sigma[r][k] * e[k] for k in range(real.rank)), spec.zero()) for r in range(real.rank))
            if image != e:
                return False
    return True


def tile_scene(real: Realization, cfg: ChartConfig) -> SvgScene:
    if real.rank != 3 or real.size != 3:
        raise ValueError(f"tilings need a rank-3 realization of a 3×3 matrix, got rank {real.rank}")
    if real.covectors != linalg.identity(3, real.spec):
        raise ValueError("tilings need the A = I factorization")
    if not fundamental_vertices_fixed(real):
        raise ValueError("fundamental triangle is not fixed by its vertex stabilizers")
    scene = SvgScene()
    for element in word_ball(real, cfg.depth):
        g = element.matrix
        points = []
        for j in range(3):
            projected = project_chart(
                tuple(-g[k][j] for k in range(3)), cfg.cull_epsilon, cfg.weights
            )
            if projected is None:
                break
            points.append(to_canvas(projected))
        if len(points) < 3:
            scene.culled += 1
            continue
        fill = cfg.palette[element.length % 2]
        scene.tiles.append(Tile(element.word, tuple(points), fill))
    if scene.culled:
        _log.info("culled %d tiles at the chart boundary", scene.culled)
    return scene


def scene_to_svg(scene: SvgScene, cfg: ChartConfig) -> bytes:
    min_x, min_y, w, h = scene.viewbox
    stroke_width = round(0.002 * max(w, h), _DIGITS)
    dwg = svgwrite.Drawing(
        size=(f"{cfg.width}px", f"{cfg.height}px"),
        viewBox=f"{min_x} {min_y} {w} {h}",
        profile="full",
    )
    group = dwg.g(stroke=_STROKE, stroke_width=stroke_width, stroke_linejoin="round")
    for tile in scene.tiles:
        group.add(dwg.polygon(points=list(tile.points), fill=tile.fill))
    dwg.add(group)
    buf = io.StringIO()
    dwg.write(buf, pretty=True)
    return buf.getvalue().encode("utf-8")


def tile_svg(real: Realization, cfg: ChartConfig | None = None) -> bytes:
    """Standalone SVG of the word-ball tiling; identical input gives identical bytes."""
    cfg = cfg or ChartConfig()
    return scene_to_svg(tile_scene(real, cfg), cfg)
