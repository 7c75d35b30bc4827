// Model document codec: the same sectioned CSV the service reads and writes.

import {
  ComboRow, MaterialRow, MemberRow, Model, NodeRow, SectionRow, Support,
} from './types';

const MAGIC = 'TRUSSLAB_MODEL';

const HEADERS: Record<string, string> = {
  '[NODES]': 'id,x,y,support,roller_axis,DLx,DLy,LLx,LLy,WLx,WLy',
  '[MATERIALS]': 'name,E,nu,fy,fu',
  '[SECTIONS]': 'name,area',
  '[MEMBERS]': 'id,ni,nj,material,section,classification',
  '[COMBOS]': 'name,fdl,fll,fwl',
};

export class CsvError extends Error {}

const num = (x: number) => String(x);

export function serializeModel(m: Model): string {
  const out: string[] = [`${MAGIC},1`];
  out.push('[NODES]', HEADERS['[NODES]']);
  for (const n of m.nodes) {
    let support = n.support as string;
    let axis = '';
    if (support.startsWith('roller_')) {
      axis = support.slice(-1);
      support = 'roller';
    }
    const dl = n.loads.DL ?? [0, 0];
    const ll = n.loads.LL ?? [0, 0];
    const wl = n.loads.WL ?? [0, 0];
    out.push([n.id, num(n.x), num(n.y), support, axis,
      num(dl[0]), num(dl[1]), num(ll[0]), num(ll[1]), num(wl[0]), num(wl[1])].join(','));
  }
  out.push('[MATERIALS]', HEADERS['[MATERIALS]']);
  for (const mat of m.materials) {
    out.push([mat.name, num(mat.E), num(mat.nu), num(mat.fy), num(mat.fu)].join(','));
  }
  out.push('[SECTIONS]', HEADERS['[SECTIONS]']);
  for (const s of m.sections) out.push([s.name, num(s.area)].join(','));
  out.push('[MEMBERS]', HEADERS['[MEMBERS]']);
  for (const mm of m.members) {
    out.push([mm.id, mm.ni, mm.nj, mm.material, mm.section, mm.classification].join(','));
  }
  out.push('[COMBOS]', HEADERS['[COMBOS]']);
  for (const c of m.combos) {
    out.push([c.name, num(c.fdl), num(c.fll), num(c.fwl)].join(','));
  }
  return out.join('\n') + '\n';
}

function parseNum(token: string, lineno: number, column: string): number {
  const v = Number(token);
  if (token.trim() === '' || Number.isNaN(v)) {
    throw new CsvError(`line ${lineno}: column '${column}' is not a number: '${token}'`);
  }
  return v;
}

export function parseModel(text: string): Model {
  const lines = text.split(/\r?\n/);
  if (!lines.length || !lines[0].startsWith(MAGIC)) {
    throw new CsvError(`line 1: missing ${MAGIC} header`);
  }
  const nodes: NodeRow[] = [];
  const materials: MaterialRow[] = [];
  const sections: SectionRow[] = [];
  const members: MemberRow[] = [];
  const combos: ComboRow[] = [];
  let section: string | null = null;
  let expectHeader = false;
  for (let i = 1; i < lines.length; i++) {
    const lineno = i + 1;
    const line = lines[i].trim();
    if (!line) continue;
    if (line.startsWith('[')) {
      if (!(line in HEADERS)) throw new CsvError(`line ${lineno}: unknown section header ${line}`);
      section = line;
      expectHeader = true;
      continue;
    }
    if (expectHeader) {
      if (line !== HEADERS[section!]) {
        throw new CsvError(`line ${lineno}: expected column header '${HEADERS[section!]}'`);
      }
      expectHeader = false;
      continue;
    }
    const parts = line.split(',');
    const ncols = HEADERS[section!].split(',').length;
    if (parts.length !== ncols) {
      throw new CsvError(`line ${lineno}: expected ${ncols} fields, found ${parts.length}`);
    }
    if (section === '[NODES]') {
      let support = parts[3] as string;
      if (support === 'roller') {
        if (parts[4] !== 'x' && parts[4] !== 'y') {
          throw new CsvError(`line ${lineno}: roller needs axis x or y`);
        }
        support = `roller_${parts[4]}`;
      } else if (support !== 'free' && support !== 'hinged') {
        throw new CsvError(`line ${lineno}: unknown support '${parts[3]}'`);
      }
      const vals = ['DLx', 'DLy', 'LLx', 'LLy', 'WLx', 'WLy'].map(
        (c, k) => parseNum(parts[5 + k], lineno, c));
      const loads: NodeRow['loads'] = {};
      (['DL', 'LL', 'WL'] as const).forEach((cs, k) => {
        const fx = vals[2 * k];
        const fy = vals[2 * k + 1];
        if (fx !== 0 || fy !== 0) loads[cs] = [fx, fy];
      });
      nodes.push({
        id: parseNum(parts[0], lineno, 'id'),
        x: parseNum(parts[1], lineno, 'x'),
        y: parseNum(parts[2], lineno, 'y'),
        support: support as Support,
        loads,
      });
    } else if (section === '[MATERIALS]') {
      materials.push({
        name: parts[0],
        E: parseNum(parts[1], lineno, 'E'),
        nu: parseNum(parts[2], lineno, 'nu'),
        fy: parseNum(parts[3], lineno, 'fy'),
        fu: parseNum(parts[4], lineno, 'fu'),
      });
    } else if (section === '[SECTIONS]') {
      sections.push({ name: parts[0], area: parseNum(parts[1], lineno, 'area') });
    } else if (section === '[MEMBERS]') {
      members.push({
        id: parseNum(parts[0], lineno, 'id'),
        ni: parseNum(parts[1], lineno, 'ni'),
        nj: parseNum(parts[2], lineno, 'nj'),
        material: parts[3],
        section: parts[4],
        classification: parts[5] as MemberRow['classification'],
      });
    } else if (section === '[COMBOS]') {
      combos.push({
        name: parts[0],
        fdl: parseNum(parts[1], lineno, 'fdl'),
        fll: parseNum(parts[2], lineno, 'fll'),
        fwl: parseNum(parts[3], lineno, 'fwl'),
      });
    } else {
      throw new CsvError(`line ${lineno}: data before any section header`);
    }
  }
  return { nodes, members, materials, sections, combos };
}

export function modelsEqual(a: Model, b: Model): boolean {
  return JSON.stringify(normalize(a)) === JSON.stringify(normalize(b));
}

function normalize(m: Model) {
  return {
    nodes: m.nodes.map((n) => [n.id, n.x, n.y, n.support,
      n.loads.DL ?? [0, 0], n.loads.LL ?? [0, 0], n.loads.WL ?? [0, 0]]),
    members: m.members.map((x) => [x.id, x.ni, x.nj, x.material, x.section, x.classification]),
    materials: m.materials.map((x) => [x.name, x.E, x.nu, x.fy, x.fu]),
    sections: m.sections.map((x) => [x.name, x.area]),
    combos: m.combos.map((x) => [x.name, x.fdl, x.fll, x.fwl]),
  };
}
