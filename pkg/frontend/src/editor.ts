// Canvas-editor state: the model under construction plus the view transform
// and display toggles.  Zoom/pan only change how the model is drawn; every
// gesture mutates the model through the methods here so the tables and the
// canvas always agree.

import { Classification, LoadCase, Model, NodeRow, Support, emptyModel } from './types';

export interface Toggles {
  dimensions: boolean;
  nodeNumbers: boolean;
  memberNumbers: boolean;
  grid: boolean;
  showMaterials: boolean;
  showSections: boolean;
}

export interface View {
  scale: number;     // px per m
  offsetX: number;   // px
  offsetY: number;
}

export class EditorState {
  model: Model = emptyModel();
  gridSpacing = 0.5;  // m
  view: View = { scale: 80, offsetX: 60, offsetY: 340 };
  toggles: Toggles = {
    dimensions: true, nodeNumbers: true, memberNumbers: true,
    grid: true, showMaterials: false, showSections: false,
  };
  violations: string[] = [];
  private dragFrom: number | null = null;

  // ---- coordinate transforms (view only, never the model) ----

  toScreen(x: number, y: number): [number, number] {
    return [this.view.offsetX + x * this.view.scale,
      this.view.offsetY - y * this.view.scale];
  }

  toWorld(px: number, py: number): [number, number] {
    return [(px - this.view.offsetX) / this.view.scale,
      (this.view.offsetY - py) / this.view.scale];
  }

  snap(x: number, y: number): [number, number] {
    const g = this.gridSpacing;
    return [Math.round(x / g) * g, Math.round(y / g) * g];
  }

  zoom(factor: number): void {
    this.view.scale *= factor;
  }

  pan(dx: number, dy: number): void {
    this.view.offsetX += dx;
    this.view.offsetY += dy;
  }

  fitToScreen(width: number, height: number, margin = 40): void {
    if (!this.model.nodes.length) return;
    const xs = this.model.nodes.map((n) => n.x);
    const ys = this.model.nodes.map((n) => n.y);
    const spanX = Math.max(...xs) - Math.min(...xs) || 1;
    const spanY = Math.max(...ys) - Math.min(...ys) || 1;
    this.view.scale = Math.min((width - 2 * margin) / spanX, (height - 2 * margin) / spanY);
    this.view.offsetX = margin - Math.min(...xs) * this.view.scale;
    this.view.offsetY = height - margin + Math.min(...ys) * this.view.scale;
  }

  // ---- gestures ----

  /** Right-click: add a node at the snapped position, returns its id. */
  addNodeAt(px: number, py: number): NodeRow {
    const [wx, wy] = this.toWorld(px, py);
    return this.addNode(...this.snap(wx, wy));
  }

  addNode(x: number, y: number): NodeRow {
    const id = this.model.nodes.reduce((m, n) => Math.max(m, n.id), 0) + 1;
    const node: NodeRow = { id, x, y, support: 'free', loads: {} };
    this.model.nodes.push(node);
    this.revalidate();
    return node;
  }

  nodeAt(px: number, py: number, tolPx = 10): NodeRow | null {
    for (const n of this.model.nodes) {
      const [sx, sy] = this.toScreen(n.x, n.y);
      if (Math.hypot(sx - px, sy - py) <= tolPx) return n;
    }
    return null;
  }

  /** Left-press on a node starts a member drag. */
  beginMemberDrag(px: number, py: number): boolean {
    const n = this.nodeAt(px, py);
    this.dragFrom = n ? n.id : null;
    return this.dragFrom !== null;
  }

  /** Release over another node closes the member; rejects duplicates. */
  endMemberDrag(px: number, py: number): { member?: number; error?: string } {
    const from = this.dragFrom;
    this.dragFrom = null;
    if (from === null) return { error: 'drag did not start on a node' };
    const target = this.nodeAt(px, py);
    if (!target) return { error: 'release the drag on a node' };
    return this.addMember(from, target.id);
  }

  addMember(ni: number, nj: number): { member?: number; error?: string } {
    if (ni === nj) return { error: 'member ends must differ' };
    const dup = this.model.members.some(
      (m) => (m.ni === ni && m.nj === nj) || (m.ni === nj && m.nj === ni));
    if (dup) return { error: `member between nodes ${ni} and ${nj} already exists` };
    const id = this.model.members.reduce((m, x) => Math.max(m, x.id), 0) + 1;
    this.model.members.push({
      id, ni, nj,
      material: this.model.materials[0]?.name ?? 'steel',
      section: this.model.sections[0]?.name ?? 'default',
      classification: 'auto',
    });
    this.revalidate();
    return { member: id };
  }

  deleteNode(id: number): void {
    this.model.nodes = this.model.nodes.filter((n) => n.id !== id);
    this.model.members = this.model.members.filter((m) => m.ni !== id && m.nj !== id);
    this.revalidate();
  }

  deleteMember(id: number): void {
    this.model.members = this.model.members.filter((m) => m.id !== id);
    this.revalidate();
  }

  /** Table 'Split' link: insert the midpoint node and two half members. */
  splitMember(id: number): void {
    const m = this.model.members.find((x) => x.id === id);
    if (!m) return;
    const a = this.node(m.ni);
    const b = this.node(m.nj);
    const mid = this.addNode((a.x + b.x) / 2, (a.y + b.y) / 2);
    const nextId = this.model.members.reduce((mx, x) => Math.max(mx, x.id), 0) + 1;
    this.model.members = this.model.members.filter((x) => x.id !== id);
    this.model.members.push({ ...m, nj: mid.id });
    this.model.members.push({ ...m, id: nextId, ni: mid.id, nj: m.nj });
    this.revalidate();
  }

  node(id: number): NodeRow {
    const n = this.model.nodes.find((x) => x.id === id);
    if (!n) throw new Error(`unknown node ${id}`);
    return n;
  }

  setCoordinates(id: number, x: number, y: number): void {
    const n = this.node(id);
    n.x = x;
    n.y = y;
    this.revalidate();
  }

  setSupport(id: number, support: Support): void {
    this.node(id).support = support;
    this.revalidate();
  }

  setLoad(id: number, caseTag: LoadCase, fx: number, fy: number): void {
    const n = this.node(id);
    if (fx === 0 && fy === 0) delete n.loads[caseTag];
    else n.loads[caseTag] = [fx, fy];
    this.revalidate();
  }

  setMemberProps(id: number, props: { material?: string; section?: string;
    classification?: Classification }): void {
    const m = this.model.members.find((x) => x.id === id);
    if (!m) return;
    Object.assign(m, props);
    this.revalidate();
  }

  memberLength(id: number): number {
    const m = this.model.members.find((x) => x.id === id)!;
    const a = this.node(m.ni);
    const b = this.node(m.nj);
    return Math.hypot(b.x - a.x, b.y - a.y);
  }

  /** Inline validation mirroring the server-side checks the submit will run. */
  revalidate(): string[] {
    const v: string[] = [];
    if (!this.model.members.length) v.push('structure has no members');
    const ids = new Set(this.model.nodes.map((n) => n.id));
    for (const m of this.model.members) {
      for (const end of [m.ni, m.nj]) {
        if (!ids.has(end)) v.push(`member ${m.id}: unknown node ${end}`);
      }
    }
    let constrained = 0;
    for (const n of this.model.nodes) {
      if (n.support === 'hinged') constrained += 2;
      else if (n.support === 'roller_x' || n.support === 'roller_y') constrained += 1;
    }
    if (constrained < 3) v.push('insufficient supports');
    this.violations = v;
    return v;
  }
}
