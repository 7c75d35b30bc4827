// The demonstration fan truss: exact node coordinates, loads and members.
// Rafter half-segments are 1.35 m; the three upward 10 kN loads arrive via
// the 1.5(DL+LL) combination (DL = 20/3 kN).

import { Model, DEFAULT_COMBOS, DEFAULT_SECTION, STEEL } from '../src/types';

const U = 1 / Math.sqrt(7.25);
export const SPAN = 13.5 * U;          // 5.01377...
export const HEIGHT = 2.7 * U;         // 1.00275...
const DL: [number, number] = [0, 20 / 3];

export const DEMO_NODES: { id: number; x: number; y: number;
  support: 'free' | 'hinged' | 'roller_x'; loaded: boolean }[] = [
  { id: 1, x: 0, y: 0, support: 'hinged', loaded: false },
  { id: 2, x: 1.66, y: 0, support: 'free', loaded: false },
  { id: 3, x: SPAN - 1.66, y: 0, support: 'free', loaded: false },
  { id: 4, x: SPAN, y: 0, support: 'roller_x', loaded: false },
  { id: 5, x: SPAN / 4, y: HEIGHT / 2, support: 'free', loaded: true },
  { id: 6, x: SPAN / 2, y: HEIGHT, support: 'free', loaded: true },
  { id: 7, x: 3 * SPAN / 4, y: HEIGHT / 2, support: 'free', loaded: true },
];

export const DEMO_MEMBERS: [number, number][] = [
  [1, 2], [2, 3], [3, 4], [1, 5], [5, 6], [5, 2], [2, 6], [6, 7], [6, 3],
  [3, 7], [7, 4],
];

export function demonstrationModel(): Model {
  return {
    nodes: DEMO_NODES.map((n) => ({
      id: n.id, x: n.x, y: n.y, support: n.support,
      loads: n.loaded ? { DL: [...DL] as [number, number] } : {},
    })),
    members: DEMO_MEMBERS.map(([ni, nj], k) => ({
      id: k + 1, ni, nj, material: 'steel', section: 'default',
      classification: 'auto' as const,
    })),
    materials: [{ ...STEEL }],
    sections: [{ ...DEFAULT_SECTION }],
    combos: DEFAULT_COMBOS.map((c) => ({ ...c })),
  };
}

export const DEMO_COMPARISON = [
  { member: 1, force_kn: -37.5, length_m: 1.66, designation: '2 x ISA 20 x 20 x 4', area_mm2: 290, optimized_area_mm2: 150 },
  { member: 2, force_kn: -25.0, length_m: 1.69, designation: '2 x ISA 20 x 20 x 4', area_mm2: 290, optimized_area_mm2: 100 },
  { member: 3, force_kn: -37.5, length_m: 1.66, designation: '2 x ISA 20 x 20 x 4', area_mm2: 290, optimized_area_mm2: 150 },
  { member: 4, force_kn: 40.39, length_m: 1.35, designation: '2 x ISA 25 x 25 x 5', area_mm2: 450, optimized_area_mm2: 161.55 },
  { member: 5, force_kn: 33.79, length_m: 1.35, designation: '2 x ISA 40 x 25 x 3', area_mm2: 376, optimized_area_mm2: 135.18 },
  { member: 6, force_kn: 9.72, length_m: 0.65, designation: '1 x ISA 20 x 20 x 4', area_mm2: 145, optimized_area_mm2: 47.23 },
  { member: 7, force_kn: -9.88, length_m: 1.31, designation: '1 x ISA 20 x 20 x 4', area_mm2: 145, optimized_area_mm2: 51.65 },
  { member: 8, force_kn: 33.79, length_m: 1.35, designation: '2 x ISA 40 x 25 x 3', area_mm2: 376, optimized_area_mm2: 135.18 },
  { member: 9, force_kn: -9.88, length_m: 1.31, designation: '1 x ISA 20 x 20 x 4', area_mm2: 145, optimized_area_mm2: 51.65 },
  { member: 10, force_kn: 9.72, length_m: 0.65, designation: '1 x ISA 20 x 20 x 4', area_mm2: 145, optimized_area_mm2: 47.23 },
  { member: 11, force_kn: 40.39, length_m: 1.35, designation: '2 x ISA 25 x 25 x 5', area_mm2: 450, optimized_area_mm2: 161.55 },
];

/** A tiny binary PGM (P5) the fake service returns for gusset images. */
export function tinyPgm(width = 4, height = 3): Uint8Array {
  const header = `P5\n${width} ${height}\n255\n`;
  const bytes = new Uint8Array(header.length + width * height);
  for (let i = 0; i < header.length; i++) bytes[i] = header.charCodeAt(i);
  for (let i = 0; i < width * height; i++) bytes[header.length + i] = (i * 37) % 256;
  return bytes;
}

/** Canned service for UI tests: accepts a submission, then reports done with
 * the demonstration results. */
export function fakeFetch() {
  const calls: { url: string; body?: any }[] = [];
  let polls = 0;
  const fn = async (url: any, init?: any): Promise<any> => {
    const u = String(url);
    const body = init?.body ? JSON.parse(init.body) : undefined;
    calls.push({ url: u, body });
    const json = (data: any, ok = true, status = 200) => ({
      ok, status, json: async () => data, text: async () => JSON.stringify(data),
    });
    if (u.includes('/gusset/') && u.endsWith('.img')) {
      const pgm = tinyPgm();
      return { ok: true, status: 200, arrayBuffer: async () => pgm.buffer };
    }
    if (u.endsWith('/api/jobs') && init?.method === 'POST') {
      return json({ id: 'job-1' });
    }
    if (u.endsWith('/api/jobs/job-1')) {
      polls += 1;
      if (polls < 2) return json({ id: 'job-1', status: 'running' });
      return json({
        id: 'job-1',
        status: 'done',
        results: {
          combinations: [{ name: '1.5(DL+LL)', forces: DEMO_COMPARISON.map(
            (r) => ({ member: r.member, force_kn: r.force_kn })), reactions: {} }],
          comparison: DEMO_COMPARISON,
          gussets: [1, 2, 3, 4, 5, 6, 7].map((n) => ({
            node: n, iterations: 40, compliance: 1.0,
            mirror_metric: n === 6 ? 1e-12 : 0.004,
          })),
        },
      });
    }
    if (u.includes('/api/advisor')) {
      return json([]);
    }
    return json({ detail: 'not found' }, false, 404);
  };
  return { fn: fn as typeof fetch, calls };
}
