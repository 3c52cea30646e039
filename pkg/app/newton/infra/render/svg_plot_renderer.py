import logging
from fractions import Fraction
from typing import List
from xml.sax.saxutils import escape, quoteattr

from app.newton.domain.errors import EmptySpec
from app.newton.domain.plot_spec import LayerStyle, PlotSpec, Viewport, quantize
from app.newton.domain.repository.plot_renderer_repo import IPlotRenderer

logger = logging.getLogger(__name__)

PREAMBLE = """\
<?xml version="1.0" encoding="UTF-8" standalone="no"?>
<!DOCTYPE svg PUBLIC "-//W3C//DTD SVG 1.1//EN" "http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd">
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="%(width)d" height="%(height)d" viewBox="0 0 %(width)d %(height)d">
<rect x="0" y="0" width="%(width)d" height="%(height)d" style="fill:#ffffff"/>
"""

POSTAMBLE = """\
</svg>
"""

PALETTE = ("#000000", "#1f4e9c", "#b22222", "#2e7d32", "#6a1b9a")

_STROKE = {
    LayerStyle.SOLID: 'stroke-width="1.5"',
    LayerStyle.DASHED: 'stroke-width="1.5" stroke-dasharray="6,4"',
    LayerStyle.BOLD: 'stroke-width="4"',
}


class SvgPlotRenderer(IPlotRenderer):
    """
    SVG 1.1 렌더러. 좌표는 정확한 유리수에서 소수점 3자리(round-half-even)로 출력하며
    요소 순서가 고정되어 같은 명세는 항상 같은 바이트를 만듭니다.
    """

    def render(self, spec: PlotSpec) -> str:
        if not spec.layers:
            raise EmptySpec()

        viewport = Viewport.for_spec(spec)
        commands: List[str] = []
        commands.extend(self._axes(spec, viewport))
        for index, layer in enumerate(spec.layers):
            commands.extend(self._layer(index, layer, viewport))
        commands.extend(self._legend(spec, viewport))

        document = PREAMBLE % {"width": spec.width, "height": spec.height}
        document += "".join(command + "\n" for command in commands)
        document += POSTAMBLE
        logger.debug("SVG 렌더링 완료: 레이어 %d개, %d바이트", len(spec.layers), len(document))
        return document

    @staticmethod
    def _point(viewport: Viewport, x, y) -> str:
        u, v = viewport.to_view(x, y)
        return f"{quantize(u)},{quantize(v)}"

    def _axes(self, spec: PlotSpec, viewport: Viewport) -> List[str]:
        left, bottom = viewport.to_view(viewport.x_min, viewport.y_min)
        right, top = viewport.to_view(viewport.x_max, viewport.y_max)
        commands = [
            '<g class="axes" stroke="#888888" stroke-width="1" fill="none">',
            f'<line x1="{quantize(left)}" y1="{quantize(bottom)}" x2="{quantize(right)}" y2="{quantize(bottom)}"/>',
            f'<line x1="{quantize(left)}" y1="{quantize(bottom)}" x2="{quantize(left)}" y2="{quantize(top)}"/>',
            "</g>",
            '<g class="ticks" font-family="monospace" font-size="10" fill="#444444">',
        ]
        for tick in spec.resolved_x_ticks():
            u, _ = viewport.to_view(tick, viewport.y_min)
            commands.append(
                f'<text x="{quantize(u)}" y="{quantize(bottom + 14)}" text-anchor="middle">{tick}</text>'
            )
        for tick in spec.resolved_y_ticks():
            _, v = viewport.to_view(viewport.x_min, tick)
            commands.append(
                f'<text x="{quantize(left - 6)}" y="{quantize(v + 3)}" text-anchor="end">{tick}</text>'
            )
        commands.append("</g>")
        return commands

    def _layer(self, index: int, layer, viewport: Viewport) -> List[str]:
        color = PALETTE[index % len(PALETTE)]
        points = " ".join(self._point(viewport, x, y) for x, y in layer.shape.vertices)
        commands = [
            f'<g class="layer" data-layer="{index}" data-style="{layer.style.value}">',
            f'<polyline points="{points}" fill="none" stroke="{color}" {_STROKE[layer.style]}/>',
        ]
        for x, y in layer.shape.vertices:
            u, v = viewport.to_view(x, y)
            commands.append(f'<circle cx="{quantize(u)}" cy="{quantize(v)}" r="3" fill="{color}"/>')
        # 선분 중점 옆에 기약분수 기울기 표기
        for segment in layer.shape.segments:
            middle_x = Fraction(segment.start[0] + segment.end[0], 2)
            middle_y = Fraction(segment.start[1] + segment.end[1], 2)
            u, v = viewport.to_view(middle_x, middle_y)
            commands.append(
                f'<text x="{quantize(u + 4)}" y="{quantize(v - 4)}" font-family="monospace" '
                f'font-size="11" fill="{color}">{escape(str(segment.slope))}</text>'
            )
        commands.append("</g>")
        return commands

    def _legend(self, spec: PlotSpec, viewport: Viewport) -> List[str]:
        commands = ['<g class="legend" font-family="monospace" font-size="11">']
        for index, layer in enumerate(spec.layers):
            color = PALETTE[index % len(PALETTE)]
            label = layer.label or f"layer {index}"
            y = Fraction(14 * (index + 1))
            commands.append(
                f'<text x="{quantize(Fraction(viewport.margin))}" y="{quantize(y)}" fill={quoteattr(color)}>'
                f"{escape(label)} ({layer.style.value})</text>"
            )
        commands.append("</g>")
        return commands
