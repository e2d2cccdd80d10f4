# cli/figures.py
from fractions import Fraction
from itertools import combinations
from math import atan2
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from divisors.corner_locus import divisor_from_section  # noqa: E402
from divisors.intersection import perturbation_direction, stable_intersection_2d  # noqa: E402
from divisors.models import IntersectionReport, WeightedComplex  # noqa: E402
from lattice.linalg import Vector, rank  # noqa: E402
from polyhedra.models import RationalPolyhedron  # noqa: E402
from theta.bundle import BundleSpec  # noqa: E402
from theta.config import ThetaConfig  # noqa: E402
from theta.generators import GeneratorBasis  # noqa: E402
from theta.section_polyhedron import SectionPolyhedron, section_polyhedron  # noqa: E402
from theta.sections import ThetaSection  # noqa: E402
from utils.errors import TooHighDimensional, UnsupportedDimension  # noqa: E402
from utils.logger import get_logger  # noqa: E402

MAX_SLICE_GENERATORS = 4
SVG_HASH_SALT = "tropical-theta"
CURVE_COLOR = "#1f4e79"
SHIFTED_COLOR = "#b03a2e"
REGION_COLOR = "#7f7f7f"

Point2 = Tuple[float, float]


def _floats(v: Sequence[Fraction]) -> Tuple[float, ...]:
    return tuple(float(a) for a in v)


def _around_centroid(points: Sequence[Point2]) -> List[Point2]:
    """Вершины выпуклого многоугольника в порядке обхода"""
    cx = sum(p[0] for p in points) / len(points)
    cy = sum(p[1] for p in points) / len(points)
    return sorted(points, key=lambda p: atan2(p[1] - cy, p[0] - cx))


def _edges(polyhedron: RationalPolyhedron) -> List[Tuple[Vector, Vector]]:
    """Ребра многогранника: пары вершин с общими активными гранями ранга n − 1"""
    vertices = polyhedron.vrep.vertices
    rows = polyhedron.inequalities
    result = []
    for u, v in combinations(vertices, 2):
        tight = [row.a for row in rows if row.value(u) == row.c and row.value(v) == row.c]
        tight += [row.a for row in polyhedron.equalities]
        if tight and rank(tight) >= polyhedron.ambient_dim - 1:
            result.append((u, v))
    return result


class FigureRenderer:
    """
    Детерминированные SVG-рисунки дивизоров и многогранников сечений

    Одинаковый вход дает побайтно одинаковый файл: соль хеша фиксирована,
    дата в метаданные не пишется.
    """

    def __init__(self, out_dir: str):
        self.logger = get_logger(__name__)
        self.out_dir = Path(out_dir)
        self.out_dir.mkdir(parents=True, exist_ok=True)
        plt.rcParams["svg.hashsalt"] = SVG_HASH_SALT
        plt.rcParams["svg.fonttype"] = "path"

    def _save(self, fig, name: str) -> str:
        path = self.out_dir / f"{name}.svg"
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)
        self.logger.info(f"Сохранен рисунок {path}")
        return str(path)

    @staticmethod
    def _extent(complex_: WeightedComplex, region: Optional[RationalPolyhedron]) -> float:
        points = [v for cell in complex_.cells for v in cell.vertices]
        if region is not None and region.vrep is not None:
            points += list(region.vrep.vertices)
        if not points:
            return 1.0
        return max(1.0, max(abs(float(a)) for p in points for a in p))

    def _draw_curve(self, ax, complex_: WeightedComplex, extent: float, shift: Point2 = (0.0, 0.0),
                    color: str = CURVE_COLOR, labels: bool = True) -> None:
        for cell in complex_.cells:
            start = _floats(cell.vertices[0])
            if cell.lines:
                d = _floats(cell.lines[0])
                a = (start[0] - 2 * extent * d[0], start[1] - 2 * extent * d[1])
                b = (start[0] + 2 * extent * d[0], start[1] + 2 * extent * d[1])
            elif cell.rays:
                d = _floats(cell.rays[0])
                a, b = start, (start[0] + 2 * extent * d[0], start[1] + 2 * extent * d[1])
            else:
                a, b = start, _floats(cell.vertices[1])
            xs = [a[0] + shift[0], b[0] + shift[0]]
            ys = [a[1] + shift[1], b[1] + shift[1]]
            ax.plot(xs, ys, color=color, linewidth=1.5)
            if labels:
                ax.annotate(str(cell.weight), ((xs[0] + xs[1]) / 2, (ys[0] + ys[1]) / 2),
                            color=color, fontsize=8, textcoords="offset points", xytext=(3, 3))

    @staticmethod
    def _draw_region(ax, region: Optional[RationalPolyhedron]) -> None:
        if region is None or region.vrep is None or region.ambient_dim != 2:
            return
        outline = _around_centroid([_floats(v) for v in region.vrep.vertices])
        outline.append(outline[0])
        ax.plot([p[0] for p in outline], [p[1] for p in outline], color=REGION_COLOR, linestyle="--", linewidth=1)

    def divisor(self, complex_: WeightedComplex, name: str, region: Optional[RationalPolyhedron] = None) -> str:
        """
        Дивизор на фундаментальной области с подписями весов

        Raises:
            TooHighDimensional: Если n > 2
        """
        if complex_.ambient_dim > 2:
            raise TooHighDimensional(f"Рисунок дивизора возможен для n ≤ 2, получено {complex_.ambient_dim}")

        fig, ax = plt.subplots(figsize=(5, 5))
        extent = self._extent(complex_, region)
        if complex_.ambient_dim == 1:
            if region is not None and region.vrep is not None:
                ends = sorted(float(v[0]) for v in region.vrep.vertices)
                ax.plot(ends, [0, 0], color=REGION_COLOR, linestyle="--")
            for cell in complex_.cells:
                x = float(cell.vertices[0][0])
                ax.plot([x], [0], marker="o", color=CURVE_COLOR)
                ax.annotate(str(cell.weight), (x, 0), textcoords="offset points", xytext=(0, 6), fontsize=8)
            ax.set_yticks([])
        elif complex_.ambient_dim == 2:
            self._draw_region(ax, region)
            self._draw_curve(ax, complex_, extent)
            ax.set_xlim(-extent, extent)
            ax.set_ylim(-extent, extent)
        ax.set_aspect("equal")
        return self._save(fig, name)

    def slice(self, polyhedron: SectionPolyhedron, name: str) -> str:
        """
        Сечение многогранника сечений t_b = 0 с отмеченными вершинами

        Raises:
            TooHighDimensional: Если |B| > 4
        """
        size = len(polyhedron.reps)
        if size > MAX_SLICE_GENERATORS:
            raise TooHighDimensional(f"Рисунок сечения возможен для |B| ≤ {MAX_SLICE_GENERATORS}, получено {size}")

        piece = polyhedron.slice
        vertices = [_floats(v) for v in piece.vrep.vertices]
        if size == 4:
            fig = plt.figure(figsize=(6, 6))
            ax = fig.add_subplot(projection="3d")
            for u, v in _edges(piece):
                a, b = _floats(u), _floats(v)
                ax.plot([a[0], b[0]], [a[1], b[1]], [a[2], b[2]], color=CURVE_COLOR, linewidth=1)
            ax.scatter([p[0] for p in vertices], [p[1] for p in vertices], [p[2] for p in vertices],
                       color=SHIFTED_COLOR, s=12)
            return self._save(fig, name)

        fig, ax = plt.subplots(figsize=(5, 5))
        if size == 3:
            outline = _around_centroid(vertices)
            ax.fill([p[0] for p in outline], [p[1] for p in outline], color=CURVE_COLOR, alpha=0.25)
            outline.append(outline[0])
            ax.plot([p[0] for p in outline], [p[1] for p in outline], color=CURVE_COLOR)
            ax.scatter([p[0] for p in vertices], [p[1] for p in vertices], color=SHIFTED_COLOR, zorder=3)
            ax.set_aspect("equal")
        else:
            xs = [p[0] if p else 0.0 for p in vertices]
            ax.plot(sorted(xs), [0] * len(xs), color=CURVE_COLOR, marker="o")
            ax.set_yticks([])
        return self._save(fig, name)

    def intersection(self, complex_: WeightedComplex, report: IntersectionReport, direction: Vector,
                     name: str, region: Optional[RationalPolyhedron] = None) -> str:
        """Кривая, ее малый сдвиг вдоль direction и точки устойчивого пересечения"""
        if complex_.ambient_dim != 2:
            raise TooHighDimensional(f"Рисунок пересечения возможен только для n = 2, получено {complex_.ambient_dim}")

        fig, ax = plt.subplots(figsize=(5, 5))
        extent = self._extent(complex_, region)
        step = 0.04 * extent
        self._draw_region(ax, region)
        self._draw_curve(ax, complex_, extent)
        self._draw_curve(ax, complex_, extent, shift=(step * float(direction[0]), step * float(direction[1])),
                         color=SHIFTED_COLOR, labels=False)
        for point in report.points:
            x, y = _floats(point.location)
            ax.plot([x], [y], marker="o", color="black")
            ax.annotate(str(point.multiplicity), (x, y), textcoords="offset points", xytext=(4, -10), fontsize=8)
        ax.set_title(f"D·D = {report.total}, точек: {len(report.points)}", fontsize=9)
        ax.set_xlim(-extent, extent)
        ax.set_ylim(-extent, extent)
        ax.set_aspect("equal")
        return self._save(fig, name)


def emit_figures(spec: BundleSpec, kinds: Sequence[str], out_dir: str, config: Optional[ThetaConfig] = None,
                 slice_index: int = 0, name: str = "bundle") -> Dict[str, str]:
    """
    Рисунки для расслоения: дивизор Ξ, сечение многогранника, самопересечение

    Args:
        spec: Расслоение с сечениями
        kinds: Подмножество ("divisor", "slice", "intersection")
        out_dir: Каталог для SVG
        config: Конфигурация
        slice_index: Координата, фиксируемая в сечении
        name: Префикс имен файлов

    Returns:
        Словарь вид → путь к файлу

    Raises:
        TooHighDimensional: Если рисунок невозможен для данной размерности
    """
    basis = GeneratorBasis(spec, config)
    if "slice" in kinds and basis.size > MAX_SLICE_GENERATORS:
        raise TooHighDimensional(f"Рисунок сечения возможен для |B| ≤ {MAX_SLICE_GENERATORS}, получено {basis.size}")
    renderer = FigureRenderer(out_dir)
    paths: Dict[str, str] = {}

    divisor = None
    if "divisor" in kinds or "intersection" in kinds:
        if basis.dim > 2:
            raise TooHighDimensional(f"Дивизоры рисуются для n ≤ 2, получено {basis.dim}")
        divisor = divisor_from_section(ThetaSection.xi(basis))
    region = basis.voronoi.polyhedron if basis.voronoi is not None else None

    if "divisor" in kinds:
        paths["divisor"] = renderer.divisor(divisor, f"{name}_divisor", region)
    if "slice" in kinds:
        polyhedron = section_polyhedron(spec, config, slice_index, basis=basis)
        paths["slice"] = renderer.slice(polyhedron, f"{name}_slice")
    if "intersection" in kinds:
        if divisor.ambient_dim < 2:
            raise UnsupportedDimension("Самопересечение рисуется только для кривых на 2-торе")
        report = stable_intersection_2d(divisor, divisor)
        direction = perturbation_direction(divisor, divisor)
        paths["intersection"] = renderer.intersection(divisor, report, direction, f"{name}_intersection", region)
    return paths
