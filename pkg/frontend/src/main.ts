// App wiring: load layout JSON (local file first-class, or POST a data source
// to a running render service), then keep the figure, popup, timeline, and
// longitudinal panel in sync with the viewer state.

import { applyLabelVisibility, buildFigure } from './figure';
import {
  createState,
  fitScale,
  formatEpoch,
  parseTimeline,
  popupContent,
  setZoom,
  toggleSnapshot,
  type ViewerState,
} from './model';
import { buildLongitudinalChart, buildTimeline } from './panels';
import type { LayoutDocument, TimelineEvent } from './types';

interface App {
  state: ViewerState | null;
  events: TimelineEvent[];
  focusedMeasurement: string | null;
}

const app: App = { state: null, events: [], focusedMeasurement: null };

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function showBanner(message: string): void {
  const banner = byId<HTMLDivElement>('banner');
  banner.textContent = message;
  banner.hidden = false;
}

function clearBanner(): void {
  byId<HTMLDivElement>('banner').hidden = true;
}

function renderSnapshotList(): void {
  const state = app.state;
  const list = byId<HTMLDivElement>('snapshots');
  list.replaceChildren();
  if (!state) return;
  for (const snap of state.layout.snapshots) {
    const label = document.createElement('label');
    const box = document.createElement('input');
    box.type = 'checkbox';
    box.checked = state.selectedSnapshots.includes(snap.index);
    box.addEventListener('change', () => {
      app.state = toggleSnapshot(state, snap.index);
      render();
    });
    const swatch = document.createElement('span');
    swatch.className = 'swatch';
    swatch.style.background = snap.color;
    label.append(box, swatch, ` ${snap.label}`);
    list.appendChild(label);
  }
}

function renderFigure(): void {
  const state = app.state;
  const container = byId<HTMLDivElement>('figure');
  container.replaceChildren();
  if (!state) return;

  const svg = buildFigure(state, {
    onHover: (id, snapshot, event) => showPopup(id, snapshot, event),
    onLeave: hidePopup,
    onSelect: (id) => {
      app.focusedMeasurement = id;
      renderPanels();
    },
  });
  // fit-to-container at zoom 1, scaled by the user's zoom from there
  const base = fitScale(
    state.layout.canvas_size,
    container.clientWidth || 720,
    container.clientHeight || 720,
  );
  const side = state.layout.canvas_size * base * state.zoom;
  svg.style.width = `${side}px`;
  svg.style.height = `${side}px`;
  container.appendChild(svg);
  applyLabelVisibility(svg, state);
}

function showPopup(id: string, snapshot: number, event: MouseEvent): void {
  const state = app.state;
  if (!state) return;
  const content = popupContent(state.layout, id, snapshot);
  if (!content) return;
  const popup = byId<HTMLDivElement>('popup');
  popup.replaceChildren();
  const title = document.createElement('strong');
  title.textContent = `${content.title} (${content.group})`;
  const lines = [
    `${content.valueLine} [${content.colorClass}]`,
    content.rangeLine,
    `${content.snapshotLabel}`,
  ];
  popup.appendChild(title);
  for (const line of lines) {
    const p = document.createElement('div');
    p.textContent = line;
    popup.appendChild(p);
  }
  popup.hidden = false;
  popup.style.left = `${event.pageX + 14}px`;
  popup.style.top = `${event.pageY + 14}px`;
}

function hidePopup(): void {
  byId<HTMLDivElement>('popup').hidden = true;
}

function renderPanels(): void {
  const state = app.state;
  const timelineBox = byId<HTMLDivElement>('timeline');
  const chartBox = byId<HTMLDivElement>('longitudinal');
  timelineBox.replaceChildren();
  chartBox.replaceChildren();
  if (!state) return;

  const focused =
    app.focusedMeasurement && state.layout.measurements[app.focusedMeasurement]
      ? app.focusedMeasurement
      : Object.keys(state.layout.measurements)[0];
  const meta = focused ? state.layout.measurements[focused] : undefined;

  timelineBox.appendChild(buildTimeline(app.events, 960, 70, meta ?? null));
  if (focused && meta) {
    chartBox.appendChild(buildLongitudinalChart(focused, meta, app.events, 960, 220));
  }
}

function render(): void {
  renderSnapshotList();
  renderFigure();
  renderPanels();
  const state = app.state;
  byId<HTMLSpanElement>('zoom-level').textContent = state ? `${state.zoom.toFixed(2)}x` : '';
  byId<HTMLDivElement>('subject').textContent = state?.layout.subject ?? '';
}

function loadLayout(doc: LayoutDocument): void {
  try {
    app.state = createState(doc);
    clearBanner();
  } catch (error) {
    app.state = null;
    showBanner(error instanceof Error ? error.message : String(error));
  }
  app.focusedMeasurement = null;
  render();
}

function adjustZoom(factor: number): void {
  if (!app.state) return;
  app.state = setZoom(app.state, Math.max(0.1, Math.min(8, app.state.zoom * factor)));
  render();
}

async function fetchFromService(): Promise<void> {
  const url = byId<HTMLInputElement>('service-url').value.trim() || 'http://127.0.0.1:8080';
  const file = byId<HTMLInputElement>('datasource-file').files?.[0];
  if (!file) {
    showBanner('choose a data-source JSON file to post to the service');
    return;
  }
  try {
    const response = await fetch(`${url.replace(/\/$/, '')}/layout?latest=2`, {
      method: 'POST',
      body: await file.text(),
      headers: { 'content-type': 'application/json' },
    });
    if (!response.ok) {
      const body = await response.json().catch(() => ({ message: response.statusText }));
      showBanner(`service error ${response.status}: ${body.message ?? ''}`);
      return;
    }
    loadLayout((await response.json()) as LayoutDocument);
  } catch (error) {
    showBanner(`service unreachable: ${error instanceof Error ? error.message : error}`);
  }
}

function wire(): void {
  byId<HTMLInputElement>('layout-file').addEventListener('change', async (event) => {
    const file = (event.target as HTMLInputElement).files?.[0];
    if (!file) return;
    try {
      loadLayout(JSON.parse(await file.text()) as LayoutDocument);
    } catch (error) {
      showBanner(`not a layout JSON file: ${error instanceof Error ? error.message : error}`);
    }
  });
  byId<HTMLInputElement>('timeline-file').addEventListener('change', async (event) => {
    const file = (event.target as HTMLInputElement).files?.[0];
    if (!file) return;
    try {
      app.events = parseTimeline(JSON.parse(await file.text()));
      renderPanels();
    } catch (error) {
      showBanner(`not a timeline file: ${error instanceof Error ? error.message : error}`);
    }
  });
  byId<HTMLButtonElement>('fetch-service').addEventListener('click', () => void fetchFromService());
  byId<HTMLButtonElement>('zoom-in').addEventListener('click', () => adjustZoom(1.25));
  byId<HTMLButtonElement>('zoom-out').addEventListener('click', () => adjustZoom(1 / 1.25));
  byId<HTMLButtonElement>('zoom-reset').addEventListener('click', () => {
    if (!app.state) return;
    app.state = setZoom(app.state, 1.0);
    render();
  });
}

async function loadDemo(): Promise<void> {
  // offline demo: bundled layout + timeline served next to the app
  try {
    const layout = await fetch('demo/modeled_patient_layout.json');
    if (layout.ok) loadLayout((await layout.json()) as LayoutDocument);
    const timeline = await fetch('demo/timeline.json');
    if (timeline.ok) {
      app.events = parseTimeline(await timeline.json());
      renderPanels();
    }
  } catch {
    // no demo files; wait for the user to load something
  }
}

if (typeof document !== 'undefined' && document.getElementById('figure')) {
  wire();
  render();
  void loadDemo();
}

export { formatEpoch };
