// Pure viewer state and derived values. Everything here is DOM-free so the
// behavior contract (zoom, selection, popups, chart mapping) is directly
// testable; the DOM layer only reflects this module's output.

import type { LayoutDocument, MeasurementMeta, PointEntry, TimelineEvent } from './types';

export const SUPPORTED_LAYOUT_VERSION = 1;

export class LayoutVersionError extends Error {
  constructor(found: number) {
    super(
      `unsupported layout_version ${found} (viewer supports ${SUPPORTED_LAYOUT_VERSION}); ` +
        'regenerate the layout JSON with a matching engine',
    );
    this.name = 'LayoutVersionError';
  }
}

export interface ViewerState {
  layout: LayoutDocument;
  zoom: number;
  labelZoomThreshold: number;
  selectedSnapshots: number[];
  hovered: { id: string; snapshot: number } | null;
}

export function createState(layout: LayoutDocument, labelZoomThreshold = 1.0): ViewerState {
  if (layout.layout_version !== SUPPORTED_LAYOUT_VERSION) {
    throw new LayoutVersionError(layout.layout_version);
  }
  // latest snapshot pre-selected together with its predecessor: the default
  // view is the before/after comparison
  const count = layout.snapshots.length;
  const selected = count >= 2 ? [count - 2, count - 1] : [0];
  return { layout, zoom: 1.0, labelZoomThreshold, selectedSnapshots: selected, hovered: null };
}

export function setZoom(state: ViewerState, zoom: number): ViewerState {
  if (!(zoom > 0)) return state;
  return { ...state, zoom };
}

// Zooming only ever toggles measurement-label visibility; the figure's shape
// is constant by contract.
export function labelsVisible(state: ViewerState): boolean {
  return state.zoom >= state.labelZoomThreshold;
}

export function selectSnapshots(state: ViewerState, subset: number[]): ViewerState {
  const valid = [...new Set(subset)]
    .filter((i) => i >= 0 && i < state.layout.snapshots.length)
    .sort((a, b) => a - b);
  if (valid.length === 0) return state; // deselect-all is rejected, last one stays
  return { ...state, selectedSnapshots: valid };
}

export function toggleSnapshot(state: ViewerState, index: number): ViewerState {
  const current = new Set(state.selectedSnapshots);
  if (current.has(index)) {
    current.delete(index);
  } else {
    current.add(index);
  }
  return selectSnapshots(state, [...current]);
}

export function isSelected(state: ViewerState, snapshot: number): boolean {
  return state.selectedSnapshots.includes(snapshot);
}

// Initial scale that fits the whole square canvas inside the container.
export function fitScale(canvasSize: number, containerW: number, containerH: number): number {
  if (canvasSize <= 0 || containerW <= 0 || containerH <= 0) return 1;
  return Math.min(containerW, containerH) / canvasSize;
}

export function formatEpoch(timestamp: number): string {
  const d = new Date(timestamp * 1000);
  const pad = (n: number) => String(n).padStart(2, '0');
  return (
    `${d.getUTCFullYear()}-${pad(d.getUTCMonth() + 1)}-${pad(d.getUTCDate())} ` +
    `${pad(d.getUTCHours())}:${pad(d.getUTCMinutes())}:${pad(d.getUTCSeconds())} UTC`
  );
}

export function formatValue(value: number): string {
  return Number.isInteger(value) ? String(value) : String(Math.round(value * 1e6) / 1e6);
}

export interface PopupContent {
  title: string;
  group: string;
  valueLine: string;
  rangeLine: string;
  colorClass: 'green' | 'yellow' | 'red';
  dateLine: string;
  snapshotLabel: string;
}

export function findPoint(layout: LayoutDocument, id: string, snapshot: number): PointEntry | null {
  return layout.points.find((p) => p.id === id && p.snapshot === snapshot) ?? null;
}

// Popup detail for any snapshot's point, not just the newest one.
export function popupContent(
  layout: LayoutDocument,
  id: string,
  snapshot: number,
): PopupContent | null {
  const meta = layout.measurements[id];
  const point = findPoint(layout, id, snapshot);
  const snap = layout.snapshots[snapshot];
  if (!meta || !point || !snap || !point.present || point.value === null) return null;
  const units = meta.units ? ` ${meta.units}` : '';
  const rangeLine =
    `recommended ${formatValue(meta.min)}..${formatValue(meta.max)}${units}` +
    (meta.warning_min !== undefined ? `, warn below ${formatValue(meta.warning_min)}` : '') +
    (meta.warning_max !== undefined ? `, warn above ${formatValue(meta.warning_max)}` : '');
  return {
    title: meta.label,
    group: meta.group,
    valueLine: `${formatValue(point.value)}${units}`,
    rangeLine,
    colorClass: point.color_class ?? 'green',
    dateLine: formatEpoch(snap.timestamp),
    snapshotLabel: snap.label,
  };
}

// ---------------------------------------------------------------------------
// Shared time axis for the timeline strip and the longitudinal chart

export interface TimeAxis {
  t0: number;
  t1: number;
  x0: number;
  x1: number;
}

export function makeTimeAxis(
  meta: MeasurementMeta | null,
  events: TimelineEvent[],
  x0: number,
  x1: number,
  extraTimes: number[] = [],
): TimeAxis {
  const times: number[] = [...extraTimes];
  if (meta) for (const [t] of meta.samples) times.push(t);
  for (const e of events) times.push(e.timestamp);
  if (times.length === 0) times.push(0, 1);
  let t0 = Math.min(...times);
  let t1 = Math.max(...times);
  if (t0 === t1) {
    t0 -= 43200;
    t1 += 43200;
  }
  // a little breathing room so markers at the extremes stay visible
  const pad = (t1 - t0) * 0.04;
  return { t0: t0 - pad, t1: t1 + pad, x0, x1 };
}

export function timeToX(axis: TimeAxis, t: number): number {
  return axis.x0 + ((t - axis.t0) / (axis.t1 - axis.t0)) * (axis.x1 - axis.x0);
}

export interface ChartGeometry {
  axis: TimeAxis;
  bandTop: number;
  bandBottom: number;
  points: { x: number; y: number; t: number; v: number }[];
  eventMarkers: { x: number; label: string; description: string }[];
}

// Longitudinal chart: all samples against time with the recommended band
// shaded, plus intervention markers on the same axis.
export function chartGeometry(
  meta: MeasurementMeta,
  events: TimelineEvent[],
  width: number,
  height: number,
  margin = 34,
): ChartGeometry {
  const axis = makeTimeAxis(meta, events, margin, width - margin);
  const values = meta.samples.map(([, v]) => v);
  const lo = Math.min(...values, meta.min);
  const hi = Math.max(...values, meta.max);
  const spread = hi - lo || 1;
  const yTop = margin / 2;
  const yBottom = height - margin;
  const valueToY = (v: number) => yBottom - ((v - lo) / spread) * (yBottom - yTop);
  return {
    axis,
    bandTop: valueToY(meta.max),
    bandBottom: valueToY(meta.min),
    points: meta.samples.map(([t, v]) => ({ x: timeToX(axis, t), y: valueToY(v), t, v })),
    eventMarkers: events.map((e) => ({
      x: timeToX(axis, e.timestamp),
      label: e.label,
      description: e.description,
    })),
  };
}

export function parseTimeline(data: unknown): TimelineEvent[] {
  if (typeof data !== 'object' || data === null || !Array.isArray((data as any).events)) {
    throw new Error("timeline JSON must be an object with an 'events' array");
  }
  const events = (data as { events: unknown[] }).events.map((raw, i) => {
    const e = raw as Partial<TimelineEvent>;
    if (typeof e.timestamp !== 'number' || typeof e.label !== 'string') {
      throw new Error(`timeline event ${i} needs a numeric timestamp and a label`);
    }
    return { timestamp: e.timestamp, label: e.label, description: e.description ?? '' };
  });
  return events.sort((a, b) => a.timestamp - b.timestamp);
}
