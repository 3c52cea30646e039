import logging
from fractions import Fraction
from typing import Dict, List

from app.newton.domain.errors import EmptySpec
from app.newton.domain.plot_spec import LayerStyle, PlotLayer, PlotSpec
from app.newton.domain.repository.plot_renderer_repo import IPlotRenderer

logger = logging.getLogger(__name__)

VERTEX_GLYPH = "*"

# 기울기 부호별 선분 글리프 (음수, 0, 양수)
_SOLID_GLYPHS = {-1: "\\", 0: "_", 1: "/"}
_BOLD_GLYPHS = {-1: "#", 0: "#", 1: "#"}

# 범례 견본: 격자에 그려지는 글리프 그대로 (dashed 는 한 칸 간격)
_LEGEND_SAMPLES = {
    LayerStyle.SOLID: "\\_/",
    LayerStyle.DASHED: "\\ _ /",
    LayerStyle.BOLD: "#",
}


def _sign(value: Fraction) -> int:
    return (value > 0) - (value < 0)


class AsciiPlotRenderer(IPlotRenderer):
    """
    고정폭 문자 격자 렌더러.

    꼭짓점은 ``*``, 선분은 기울기 부호에 따라 ``\\``, ``_``, ``/`` 로 근사합니다.
    dashed 레이어는 한 칸씩 건너뛰고, bold 레이어는 ``#`` 으로 그립니다.
    """

    def __init__(self, max_columns: int = 64, max_rows: int = 20):
        self.max_columns = max_columns
        self.max_rows = max_rows

    def render(self, spec: PlotSpec) -> str:
        if not spec.layers:
            raise EmptySpec()

        (x_min, x_max), (y_min, y_max) = spec.x_span, spec.y_span
        columns_per_unit = max(1, min(8, self.max_columns // max(1, x_max - x_min)))
        rows_per_unit = max(1, min(4, self.max_rows // max(1, y_max - y_min)))
        width = (x_max - x_min) * columns_per_unit + 1
        height = (y_max - y_min) * rows_per_unit + 1
        grid = [[" "] * width for _ in range(height)]

        def row_of(y: Fraction) -> int:
            return round((y_max - y) * rows_per_unit)

        for layer in spec.layers:
            self._draw_segments(grid, layer, x_min, columns_per_unit, row_of)
        for layer in spec.layers:
            for x, y in layer.shape.vertices:
                grid[row_of(Fraction(y))][(x - x_min) * columns_per_unit] = VERTEX_GLYPH

        lines = self._frame(spec, grid, x_min, y_max, columns_per_unit, rows_per_unit)
        lines.extend(self._legend(spec))
        logger.debug("ASCII 렌더링 완료: %d x %d", width, height)
        return "\n".join(lines) + "\n"

    def _draw_segments(self, grid, layer: PlotLayer, x_min: int, columns_per_unit: int, row_of) -> None:
        glyphs = _BOLD_GLYPHS if layer.style == LayerStyle.BOLD else _SOLID_GLYPHS
        for segment in layer.shape.segments:
            start_column = (segment.start[0] - x_min) * columns_per_unit
            end_column = (segment.end[0] - x_min) * columns_per_unit
            glyph = glyphs[_sign(segment.slope)]
            for column in range(start_column + 1, end_column):
                if layer.style == LayerStyle.DASHED and (column - start_column) % 2 == 0:
                    continue
                x = Fraction(column, columns_per_unit) + x_min
                y = segment.start[1] + segment.slope * (x - segment.start[0])
                grid[row_of(y)][column] = glyph

    def _frame(self, spec: PlotSpec, grid, x_min, y_max, columns_per_unit, rows_per_unit) -> List[str]:
        y_labels: Dict[int, str] = {
            (y_max - tick) * rows_per_unit: str(tick) for tick in spec.resolved_y_ticks()
        }
        label_width = max(len(label) for label in y_labels.values()) if y_labels else 1

        lines = [
            f"{y_labels.get(index, ''):>{label_width}} |{''.join(row).rstrip()}"
            for index, row in enumerate(grid)
        ]
        width = len(grid[0])
        lines.append(f"{'':>{label_width}} +{'-' * width}")

        tick_row = [" "] * (width + 8)
        last_end = -1
        for tick in spec.resolved_x_ticks():
            label = str(tick)
            column = (tick - x_min) * columns_per_unit
            if column <= last_end:
                continue
            tick_row[column:column + len(label)] = list(label)
            last_end = column + len(label)
        lines.append(f"{'':>{label_width}}  {''.join(tick_row).rstrip()}")
        return lines

    def _legend(self, spec: PlotSpec) -> List[str]:
        legend = []
        for layer in spec.layers:
            sample = _LEGEND_SAMPLES[layer.style]
            slopes = ", ".join(str(segment.slope) for segment in layer.shape.segments) or "no segments"
            name = layer.label or "polygon"
            legend.append(f"[{layer.style.value} {sample}] {name}: slopes {slopes}")
        return legend
