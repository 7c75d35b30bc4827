// Model types mirroring the service's CSV document.

export type Support = 'free' | 'roller_x' | 'roller_y' | 'hinged';
export type LoadCase = 'DL' | 'LL' | 'WL';
export type Classification = 'peripheral' | 'interior' | 'auto';

export interface NodeRow {
  id: number;
  x: number;
  y: number;
  support: Support;
  loads: Partial<Record<LoadCase, [number, number]>>;
}

export interface MaterialRow {
  name: string;
  E: number;
  nu: number;
  fy: number;
  fu: number;
}

export interface SectionRow {
  name: string;
  area: number;
}

export interface MemberRow {
  id: number;
  ni: number;
  nj: number;
  material: string;
  section: string;
  classification: Classification;
}

export interface ComboRow {
  name: string;
  fdl: number;
  fll: number;
  fwl: number;
}

export interface Model {
  nodes: NodeRow[];
  members: MemberRow[];
  materials: MaterialRow[];
  sections: SectionRow[];
  combos: ComboRow[];
}

export const STEEL: MaterialRow = { name: 'steel', E: 2e5, nu: 0.3, fy: 250, fu: 410 };
export const DEFAULT_SECTION: SectionRow = { name: 'default', area: 0.01 };
export const DEFAULT_COMBOS: ComboRow[] = [
  { name: '1.5(DL+LL)', fdl: 1.5, fll: 1.5, fwl: 0 },
  { name: '1.2(DL+LL+WL)', fdl: 1.2, fll: 1.2, fwl: 1.2 },
  { name: '1.5WL+0.9DL', fdl: 0.9, fll: 0, fwl: 1.5 },
];

export function emptyModel(): Model {
  return {
    nodes: [],
    members: [],
    materials: [{ ...STEEL }],
    sections: [{ ...DEFAULT_SECTION }],
    combos: DEFAULT_COMBOS.map((c) => ({ ...c })),
  };
}

export type Analysis = 'static' | 'is800_design' | 'size_opt' | 'gusset_topopt';

export interface ComparisonRow {
  member: number;
  force_kn: number;
  length_m: number;
  designation: string;
  area_mm2: number;
  optimized_area_mm2: number;
}

export interface JobResults {
  combinations: {
    name: string;
    forces: { member: number; force_kn: number }[];
    reactions: Record<string, number>;
  }[];
  design?: { member: number; force_kn: number; mode: string; designation: string; area_mm2: number }[];
  comparison?: ComparisonRow[];
  size_opt?: { weight_kg: number; converged: boolean; areas: Record<string, number> };
  gussets?: { node: number; iterations: number; compliance: number; mirror_metric: number }[];
}

export interface JobRecord {
  id: string;
  status: 'queued' | 'running' | 'done' | 'failed';
  error?: string;
  results?: JobResults;
}
