// Builds the radial figure as SVG DOM straight from engine geometry.
// No re-layout happens here: every coordinate comes from the layout JSON.

import { isSelected, labelsVisible, type ViewerState } from './model';
import type { LayoutDocument, PolygonEntry, SectorEntry } from './types';

const SVG_NS = 'http://www.w3.org/2000/svg';

export interface PointHandlers {
  onHover?: (id: string, snapshot: number, event: MouseEvent) => void;
  onLeave?: () => void;
  onSelect?: (id: string) => void;
}

function el<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string>,
  text?: string,
): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [name, value] of Object.entries(attrs)) node.setAttribute(name, value);
  if (text !== undefined) node.textContent = text;
  return node;
}

function sectorPath(sector: SectorEntry, layout: LayoutDocument): string {
  const [cx, cy] = layout.center;
  const { r_band_inner: ri, r_band_outer: ro } = layout.band;
  const clockwise = layout.direction === 'clockwise';
  const sweep = clockwise ? 1 : 0;
  const large = Math.abs(sector.end_angle - sector.start_angle) > Math.PI ? 1 : 0;
  const p = (angle: number, radius: number) =>
    `${cx + radius * Math.cos(angle)} ${cy + radius * Math.sin(angle)}`;
  return (
    `M ${p(sector.start_angle, ro)} ` +
    `A ${ro} ${ro} 0 ${large} ${sweep} ${p(sector.end_angle, ro)} ` +
    `L ${p(sector.end_angle, ri)} ` +
    `A ${ri} ${ri} 0 ${large} ${1 - sweep} ${p(sector.start_angle, ri)} Z`
  );
}

function polygonPoints(polygon: PolygonEntry): string {
  return polygon.vertices.map((v) => `${v.x},${v.y}`).join(' ');
}

// The complete figure. Zoom is applied by the caller through CSS sizing of the
// returned <svg>; the viewBox (and therefore every geometry attribute) never
// changes with zoom.
export function buildFigure(
  state: ViewerState,
  handlers: PointHandlers = {},
): SVGSVGElement {
  const layout = state.layout;
  const size = layout.canvas_size;
  const [cx, cy] = layout.center;
  const svg = el('svg', {
    viewBox: `0 0 ${size} ${size}`,
    'data-role': 'figure',
  });

  // band circumferences
  for (const radius of [layout.band.r_band_inner, layout.band.r_band_outer]) {
    svg.appendChild(
      el('circle', {
        cx: String(cx),
        cy: String(cy),
        r: String(radius),
        fill: 'none',
        stroke: layout.band.stroke,
        'stroke-width': '1',
      }),
    );
  }

  // group sectors with their always-visible labels
  const style = layout.style;
  const sectors = el('g', { 'data-role': 'sectors' });
  for (const sector of layout.sectors) {
    sectors.appendChild(
      el('path', { d: sectorPath(sector, layout), fill: layout.band.fill, 'data-group': sector.group }),
    );
    sectors.appendChild(
      el(
        'text',
        {
          x: String(sector.label_x),
          y: String(sector.label_y),
          'text-anchor': 'middle',
          'font-size': String(style.group_label_font_size),
          fill: style.detail_text_color,
          'data-role': 'group-label',
        },
        sector.group,
      ),
    );
  }
  svg.appendChild(sectors);

  // polygons oldest-first so the newest stays on top, selected snapshots only
  const polygons = el('g', { 'data-role': 'polygons' });
  for (const polygon of layout.polygons) {
    if (!isSelected(state, polygon.snapshot)) continue;
    if (polygon.vertices.length < 2) continue;
    const shape = polygon.closed
      ? el('polygon', {
          points: polygonPoints(polygon),
          fill: polygon.color,
          'fill-opacity': '0.15',
          stroke: polygon.color,
          'stroke-width': String(style.polygon_stroke_width),
          'stroke-linejoin': 'round',
          'data-snapshot': String(polygon.snapshot),
        })
      : el('polyline', {
          points: polygonPoints(polygon),
          fill: 'none',
          stroke: polygon.color,
          'stroke-width': String(style.polygon_stroke_width),
          'data-snapshot': String(polygon.snapshot),
        });
    polygons.appendChild(shape);
  }
  svg.appendChild(polygons);

  // measurement points; hover detail works on every snapshot's points
  const points = el('g', { 'data-role': 'points' });
  for (const point of layout.points) {
    if (!point.present || !isSelected(state, point.snapshot)) continue;
    const circle = el('circle', {
      cx: String(point.x),
      cy: String(point.y),
      r: String(style.point_radius),
      fill: point.fill ?? style.text_color,
      stroke: '#ffffff',
      'stroke-width': String(style.point_stroke_width),
      'data-id': point.id,
      'data-snapshot': String(point.snapshot),
    });
    circle.addEventListener('mouseenter', (event) =>
      handlers.onHover?.(point.id, point.snapshot, event as MouseEvent),
    );
    circle.addEventListener('mouseleave', () => handlers.onLeave?.());
    circle.addEventListener('click', () => handlers.onSelect?.(point.id));
    points.appendChild(circle);
  }
  svg.appendChild(points);

  // measurement labels: geometry always present, visibility driven by zoom
  const labels = el('g', {
    'data-role': 'labels',
    visibility: labelsVisible(state) ? 'visible' : 'hidden',
  });
  for (const label of layout.labels) {
    const lineHeight = style.label_line_height;
    const top = label.y - label.height / 2;
    label.lines.forEach((line, i) => {
      const text = el(
        'text',
        {
          x: String(label.x),
          y: String(top + (i + 1) * lineHeight - 3),
          'text-anchor': label.text_anchor,
          'font-size': String(style.label_font_size),
          fill: i === 0 ? style.text_color : style.detail_text_color,
          'data-id': label.id,
          'data-role': 'measurement-label',
        },
        line,
      );
      text.addEventListener('click', () => handlers.onSelect?.(label.id));
      labels.appendChild(text);
    });
  }
  svg.appendChild(labels);

  return svg;
}

// Toggle label visibility in place; geometry attributes are untouched.
export function applyLabelVisibility(svg: SVGSVGElement, state: ViewerState): void {
  const group = svg.querySelector('[data-role="labels"]');
  group?.setAttribute('visibility', labelsVisible(state) ? 'visible' : 'hidden');
}
