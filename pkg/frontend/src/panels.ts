// Activity timeline strip and longitudinal measurement chart. Both share one
// time axis so intervention markers line up with the sample series.

import { chartGeometry, formatEpoch, makeTimeAxis, timeToX } from './model';
import type { MeasurementMeta, TimelineEvent } from './types';

const SVG_NS = 'http://www.w3.org/2000/svg';

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

export function buildTimeline(
  events: TimelineEvent[],
  width: number,
  height: number,
  meta: MeasurementMeta | null,
): SVGSVGElement {
  const svg = el('svg', { viewBox: `0 0 ${width} ${height}`, 'data-role': 'timeline' });
  const axisY = height / 2;
  const axis = makeTimeAxis(meta, events, 34, width - 34);
  svg.appendChild(
    el('line', {
      x1: String(axis.x0),
      y1: String(axisY),
      x2: String(axis.x1),
      y2: String(axisY),
      stroke: '#b0bec5',
      'stroke-width': '2',
    }),
  );
  for (const event of events) {
    const x = timeToX(axis, event.timestamp);
    const marker = el('circle', {
      cx: String(x),
      cy: String(axisY),
      r: '6',
      fill: '#00838f',
      stroke: '#ffffff',
      'stroke-width': '1.5',
      'data-role': 'timeline-event',
      'data-timestamp': String(event.timestamp),
    });
    const title = el('title', {});
    title.textContent = `${event.label} (${formatEpoch(event.timestamp)})${
      event.description ? `: ${event.description}` : ''
    }`;
    marker.appendChild(title);
    svg.appendChild(marker);
    svg.appendChild(
      el(
        'text',
        {
          x: String(x),
          y: String(axisY - 12),
          'text-anchor': 'middle',
          'font-size': '11',
          fill: '#37474f',
        },
        event.label,
      ),
    );
  }
  return svg;
}

export function buildLongitudinalChart(
  id: string,
  meta: MeasurementMeta,
  events: TimelineEvent[],
  width: number,
  height: number,
): SVGSVGElement {
  const svg = el('svg', { viewBox: `0 0 ${width} ${height}`, 'data-role': 'longitudinal' });
  const geom = chartGeometry(meta, events, width, height);

  // recommended band shading behind everything
  svg.appendChild(
    el('rect', {
      x: String(geom.axis.x0),
      y: String(geom.bandTop),
      width: String(geom.axis.x1 - geom.axis.x0),
      height: String(Math.max(geom.bandBottom - geom.bandTop, 1)),
      fill: '#e8f0e8',
      'data-role': 'band',
    }),
  );

  // intervention markers on the shared axis
  for (const marker of geom.eventMarkers) {
    svg.appendChild(
      el('line', {
        x1: String(marker.x),
        y1: String(geom.axis.x0 > 0 ? 8 : 0),
        x2: String(marker.x),
        y2: String(height - 22),
        stroke: '#00838f',
        'stroke-dasharray': '4 3',
        'data-role': 'event-marker',
      }),
    );
  }

  // sample series: a line only when there is something to connect
  if (geom.points.length > 1) {
    svg.appendChild(
      el('polyline', {
        points: geom.points.map((p) => `${p.x},${p.y}`).join(' '),
        fill: 'none',
        stroke: '#455a64',
        'stroke-width': '2',
        'data-role': 'series',
      }),
    );
  }
  for (const point of geom.points) {
    const circle = el('circle', {
      cx: String(point.x),
      cy: String(point.y),
      r: '4',
      fill: '#455a64',
      stroke: '#ffffff',
      'stroke-width': '1',
      'data-role': 'sample',
    });
    const title = el('title', {});
    const units = meta.units ? ` ${meta.units}` : '';
    title.textContent = `${point.v}${units} at ${formatEpoch(point.t)}`;
    circle.appendChild(title);
    svg.appendChild(circle);
  }

  svg.appendChild(
    el(
      'text',
      {
        x: String(geom.axis.x0),
        y: '16',
        'font-size': '13',
        fill: '#212121',
        'data-role': 'chart-title',
      },
      `${meta.label}${meta.units ? ` (${meta.units})` : ''}`,
    ),
  );
  svg.setAttribute('data-id', id);
  return svg;
}
