// Layout JSON contract (see docs/layout_json.md in the repo root).
// The engine resolves all geometry and styling; the viewer only draws it.

export interface BandGeometry {
  r_plot_min: number;
  r_band_inner: number;
  r_band_outer: number;
  r_plot_max: number;
  fill: string;
  stroke: string;
}

export interface SnapshotEntry {
  index: number;
  timestamp: number;
  label: string;
  color: string;
}

export interface SectorEntry {
  group: string;
  start_angle: number;
  end_angle: number;
  label_x: number;
  label_y: number;
}

export interface PointEntry {
  id: string;
  snapshot: number;
  present: boolean;
  angle: number;
  radius: number | null;
  x: number | null;
  y: number | null;
  value: number | null;
  color_class: 'green' | 'yellow' | 'red' | null;
  fill: string | null;
}

export interface PolygonVertex {
  angle: number;
  radius: number;
  x: number;
  y: number;
}

export interface PolygonEntry {
  snapshot: number;
  closed: boolean;
  color: string;
  vertices: PolygonVertex[];
}

export interface LabelEntry {
  id: string;
  lines: [string, string];
  x: number;
  y: number;
  width: number;
  height: number;
  quadrant: string;
  label_radius: number;
  text_anchor: 'start' | 'end';
}

export interface MeasurementMeta {
  label: string;
  units: string;
  group: string;
  min: number;
  max: number;
  warning_min?: number;
  warning_max?: number;
  samples: [number, number][];
}

export interface StyleConstants {
  point_radius: number;
  point_stroke_width: number;
  polygon_stroke_width: number;
  label_font_size: number;
  label_line_height: number;
  group_label_font_size: number;
  text_color: string;
  detail_text_color: string;
}

export interface LayoutDocument {
  layout_version: number;
  canvas_size: number;
  center: [number, number];
  band: BandGeometry;
  slot_width: number;
  total_slots: number;
  start_angle: number;
  direction: string;
  style: StyleConstants;
  subject: string | null;
  snapshots: SnapshotEntry[];
  sectors: SectorEntry[];
  points: PointEntry[];
  polygons: PolygonEntry[];
  labels: LabelEntry[];
  measurements: Record<string, MeasurementMeta>;
  show_labels: string;
}

export interface TimelineEvent {
  timestamp: number;
  label: string;
  description: string;
}
