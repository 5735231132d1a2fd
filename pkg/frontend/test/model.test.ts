import { readFileSync } from 'node:fs';
import { describe, expect, it } from 'vitest';

import {
  LayoutVersionError,
  chartGeometry,
  createState,
  fitScale,
  formatEpoch,
  labelsVisible,
  makeTimeAxis,
  parseTimeline,
  popupContent,
  selectSnapshots,
  setZoom,
  timeToX,
  toggleSnapshot,
} from '../src/model';
import type { LayoutDocument } from '../src/types';

const layout: LayoutDocument = JSON.parse(
  readFileSync('test/fixtures/modeled_patient_layout.json', 'utf-8'),
);

describe('createState', () => {
  it('accepts the supported layout version', () => {
    const state = createState(layout);
    expect(state.layout.sectors).toHaveLength(9);
  });

  it('rejects unsupported versions with a descriptive error', () => {
    expect(() => createState({ ...layout, layout_version: 99 })).toThrow(LayoutVersionError);
  });

  it('pre-selects the latest snapshot with its predecessor', () => {
    expect(createState(layout).selectedSnapshots).toEqual([0, 1]);
  });
});

describe('zoom', () => {
  it('shows labels at or above the threshold and hides below', () => {
    let state = createState(layout);
    expect(labelsVisible(state)).toBe(true); // 1.0 is inclusive
    state = setZoom(state, 0.5);
    expect(labelsVisible(state)).toBe(false);
    state = setZoom(state, 1.0);
    expect(labelsVisible(state)).toBe(true);
    state = setZoom(state, 3.2);
    expect(labelsVisible(state)).toBe(true);
  });

  it('ignores non-positive zoom', () => {
    const state = createState(layout);
    expect(setZoom(state, 0)).toBe(state);
    expect(setZoom(state, -2)).toBe(state);
  });
});

describe('snapshot selection', () => {
  it('keeps only valid indices, sorted', () => {
    const state = selectSnapshots(createState(layout), [1, 0, 7, -1]);
    expect(state.selectedSnapshots).toEqual([0, 1]);
  });

  it('rejects deselect-all: the last snapshot stays', () => {
    let state = selectSnapshots(createState(layout), [1]);
    state = toggleSnapshot(state, 1); // would empty the selection
    expect(state.selectedSnapshots).toEqual([1]);
  });

  it('toggles membership', () => {
    let state = createState(layout);
    state = toggleSnapshot(state, 0);
    expect(state.selectedSnapshots).toEqual([1]);
    state = toggleSnapshot(state, 0);
    expect(state.selectedSnapshots).toEqual([0, 1]);
  });
});

describe('fitScale', () => {
  it('fits the whole square canvas into the container', () => {
    expect(fitScale(1400, 700, 1000)).toBeCloseTo(0.5);
    expect(fitScale(1400, 2800, 1400)).toBeCloseTo(1.0);
  });

  it('falls back to 1 for degenerate inputs', () => {
    expect(fitScale(0, 700, 700)).toBe(1);
  });
});

describe('popupContent', () => {
  it('builds detail for the newest snapshot', () => {
    const content = popupContent(layout, 'systolic', 1);
    expect(content).not.toBeNull();
    expect(content!.title).toBe('Systolic');
    expect(content!.valueLine).toBe('128 mmHg');
    expect(content!.rangeLine).toContain('90..120');
    expect(content!.dateLine).toBe('2015-02-12 12:05:20 UTC');
  });

  it('works on the older snapshot too', () => {
    const content = popupContent(layout, 'systolic', 0);
    expect(content).not.toBeNull();
    expect(content!.valueLine).toBe('145 mmHg');
    expect(content!.colorClass).toBe('red');
    expect(content!.dateLine).toBe('2015-01-09 10:10:24 UTC');
  });

  it('returns null for unknown ids or absent points', () => {
    expect(popupContent(layout, 'nope', 0)).toBeNull();
    expect(popupContent(layout, 'systolic', 9)).toBeNull();
  });
});

describe('formatEpoch', () => {
  it('matches the reference timestamps', () => {
    expect(formatEpoch(1420798224)).toBe('2015-01-09 10:10:24 UTC');
    expect(formatEpoch(1423742720)).toBe('2015-02-12 12:05:20 UTC');
  });
});

describe('time axis and chart geometry', () => {
  const meta = layout.measurements['steps_per_day']!;

  it('maps a timeline event between two samples to an x between theirs', () => {
    const events = [{ timestamp: 1422270472, label: 'mid', description: '' }];
    const geom = chartGeometry(meta, events, 960, 220);
    const [a, b] = geom.points;
    expect(geom.eventMarkers[0]!.x).toBeGreaterThan(a!.x);
    expect(geom.eventMarkers[0]!.x).toBeLessThan(b!.x);
  });

  it('shades the recommended band between min and max', () => {
    const geom = chartGeometry(meta, [], 960, 220);
    expect(geom.bandTop).toBeLessThan(geom.bandBottom);
    // every in-range sample y falls inside the shaded band
    for (const p of geom.points) {
      if (p.v >= meta.min && p.v <= meta.max) {
        expect(p.y).toBeGreaterThanOrEqual(geom.bandTop - 1e-9);
        expect(p.y).toBeLessThanOrEqual(geom.bandBottom + 1e-9);
      }
    }
  });

  it('keeps one shared axis across samples and events', () => {
    const events = [{ timestamp: 1419000000, label: 'early', description: '' }];
    const axis = makeTimeAxis(meta, events, 34, 926);
    expect(timeToX(axis, 1419000000)).toBeGreaterThanOrEqual(34);
    expect(timeToX(axis, meta.samples.at(-1)![0])).toBeLessThanOrEqual(926);
  });

  it('handles a single-sample measurement without a degenerate axis', () => {
    const single = { ...meta, samples: [[1420798224, 9000]] as [number, number][] };
    const geom = chartGeometry(single, [], 960, 220);
    expect(geom.points).toHaveLength(1);
    expect(Number.isFinite(geom.points[0]!.x)).toBe(true);
  });
});

describe('parseTimeline', () => {
  it('sorts events by timestamp', () => {
    const events = parseTimeline({
      events: [
        { timestamp: 200, label: 'b', description: '' },
        { timestamp: 100, label: 'a', description: '' },
      ],
    });
    expect(events.map((e) => e.label)).toEqual(['a', 'b']);
  });

  it('rejects malformed documents', () => {
    expect(() => parseTimeline({})).toThrow();
    expect(() => parseTimeline({ events: [{ label: 'x' }] })).toThrow();
  });
});
