// Screen wiring: input editor (blocks A-G), analysis selection (H-J),
// advisor, and results.  All service traffic goes through ApiClient.

import { ApiClient } from './api';
import { CsvError, modelsEqual, parseModel, serializeModel } from './csv';
import { EditorState } from './editor';
import { paintPgm, parsePgm } from './pgm';
import { captureCanvas, drawEditor } from './render';
import { Analysis, JobRecord, LoadCase, Model, Support } from './types';

const ANALYSES: { key: Analysis; label: string }[] = [
  { key: 'static', label: 'Static analysis' },
  { key: 'is800_design', label: 'Limit-state design' },
  { key: 'size_opt', label: 'Size optimization' },
  { key: 'gusset_topopt', label: 'Gusset topology optimization' },
];

export class App {
  editor = new EditorState();
  screen: 'input' | 'analysis' | 'advisor' | 'results' = 'input';
  selectedAnalyses = new Set<Analysis>(['static']);
  topopt = { volfrac: 0.4, nelx: 60, nely: 60 };
  job: JobRecord | null = null;
  jobId: string | null = null;
  statusLine = '';
  pending = false;

  constructor(public root: HTMLElement, public api: ApiClient,
              public doc: Document = document) {
    this.render();
  }

  // ---- gestures plumbed from DOM events ----

  canvas(): HTMLCanvasElement | null {
    return this.root.querySelector('#canvas');
  }

  handleRightClick(px: number, py: number): void {
    this.editor.addNodeAt(px, py);
    this.render();
  }

  handleDrag(fromPx: number, fromPy: number, toPx: number, toPy: number): void {
    if (!this.editor.beginMemberDrag(fromPx, fromPy)) return;
    const out = this.editor.endMemberDrag(toPx, toPy);
    this.statusLine = out.error ?? '';
    this.render();
  }

  exportCsv(): string {
    return serializeModel(this.editor.model);
  }

  uploadCsv(text: string): void {
    try {
      this.editor.model = parseModel(text);
      this.editor.revalidate();
      this.statusLine = '';
    } catch (e) {
      this.statusLine = e instanceof CsvError ? e.message : String(e);
    }
    this.render();
  }

  capture(): string {
    const canvas = this.canvas();
    return canvas ? captureCanvas(canvas) : '';
  }

  async submit(): Promise<void> {
    if (this.pending) return;
    const violations = this.editor.revalidate();
    if (violations.length) {
      this.statusLine = 'fix violations before submitting: ' + violations.join('; ');
      this.render();
      return;
    }
    this.pending = true;
    this.statusLine = 'submitting...';
    this.render();
    try {
      const analyses = [...this.selectedAnalyses];
      this.jobId = await this.api.submitJob(this.editor.model, analyses,
        this.selectedAnalyses.has('gusset_topopt') ? this.topopt : undefined);
      this.statusLine = `job ${this.jobId} running...`;
      this.job = await this.api.pollJob(this.jobId);
      this.screen = 'results';
      this.statusLine = '';
    } catch (e) {
      this.statusLine = `analysis failed: ${e instanceof Error ? e.message : e}`;
    } finally {
      this.pending = false;
      this.render();
    }
  }

  async loadAdvisor(span: number): Promise<void> {
    try {
      const subs = await this.api.advisor(span);
      this.advisorResults = subs;
      this.statusLine = '';
    } catch (e) {
      this.advisorResults = [];
      this.statusLine = `advisor failed: ${e instanceof Error ? e.message : e}`;
    }
    this.render();
  }

  advisorResults: { name: string; description: string; model_csv: string }[] = [];

  chooseSuggestion(index: number): void {
    const pick = this.advisorResults[index];
    if (!pick) return;
    this.editor.model = parseModel(pick.model_csv);
    this.editor.revalidate();
    this.screen = 'input';
    this.render();
  }

  // ---- rendering ----

  render(): void {
    const d = this.doc;
    this.root.innerHTML = '';
    const nav = d.createElement('nav');
    for (const s of ['input', 'analysis', 'advisor', 'results'] as const) {
      const b = d.createElement('button');
      b.textContent = s;
      b.dataset.screen = s;
      b.onclick = () => { this.screen = s; this.render(); };
      nav.appendChild(b);
    }
    this.root.appendChild(nav);
    const status = d.createElement('div');
    status.id = 'status';
    status.textContent = this.statusLine;
    this.root.appendChild(status);
    const violations = d.createElement('div');
    violations.id = 'violations';
    violations.textContent = this.editor.violations.join('; ');
    this.root.appendChild(violations);

    if (this.screen === 'input') this.renderInput();
    else if (this.screen === 'analysis') this.renderAnalysis();
    else if (this.screen === 'advisor') this.renderAdvisor();
    else this.renderResults();

    const canvas = this.canvas();
    const ctx = canvas?.getContext?.('2d');
    if (canvas && ctx) drawEditor(ctx, this.editor, canvas.width, canvas.height);
  }

  private table(id: string, header: string[], rows: (string | HTMLElement)[][]): HTMLElement {
    const d = this.doc;
    const t = d.createElement('table');
    t.id = id;
    const hr = d.createElement('tr');
    for (const h of header) {
      const th = d.createElement('th');
      th.textContent = h;
      hr.appendChild(th);
    }
    t.appendChild(hr);
    for (const row of rows) {
      const tr = d.createElement('tr');
      for (const cell of row) {
        const td = d.createElement('td');
        if (typeof cell === 'string') td.textContent = cell;
        else td.appendChild(cell);
        tr.appendChild(td);
      }
      t.appendChild(tr);
    }
    return t;
  }

  private link(label: string, onclick: () => void): HTMLElement {
    const a = this.doc.createElement('a');
    a.textContent = label;
    a.href = '#';
    a.onclick = (e) => { e.preventDefault?.(); onclick(); };
    return a;
  }

  private renderInput(): void {
    const d = this.doc;
    const canvas = d.createElement('canvas');
    canvas.id = 'canvas';
    canvas.width = 900;
    canvas.height = 420;
    canvas.oncontextmenu = (e: MouseEvent) => {
      e.preventDefault?.();
      this.handleRightClick((e as any).offsetX ?? 0, (e as any).offsetY ?? 0);
    };
    this.root.appendChild(canvas);

    // block E: nodes
    const nodeRows = this.editor.model.nodes.map((n) => {
      const dl = n.loads.DL ?? [0, 0];
      return [String(n.id), String(n.x), String(n.y), n.support,
        String(dl[0]), String(dl[1]),
        this.link('Delete', () => { this.editor.deleteNode(n.id); this.render(); })];
    });
    this.root.appendChild(this.table('nodes', ['id', 'x', 'y', 'support', 'DLx', 'DLy', ''], nodeRows));

    // block F: members
    const memberRows = this.editor.model.members.map((m) => [
      String(m.id), String(m.ni), String(m.nj), m.material, m.section, m.classification,
      this.link('Split', () => { this.editor.splitMember(m.id); this.render(); }),
      this.link('Delete', () => { this.editor.deleteMember(m.id); this.render(); }),
    ]);
    this.root.appendChild(this.table('members',
      ['id', 'ni', 'nj', 'material', 'section', 'class', '', ''], memberRows));

    // blocks C & D: materials / sections
    this.root.appendChild(this.table('materials', ['name', 'E', 'nu', 'fy', 'fu'],
      this.editor.model.materials.map((m) => [m.name, String(m.E), String(m.nu),
        String(m.fy), String(m.fu)])));
    this.root.appendChild(this.table('sections', ['name', 'area'],
      this.editor.model.sections.map((s) => [s.name, String(s.area)])));

    // block G: combinations + proceed
    this.root.appendChild(this.table('combos', ['name', 'fdl', 'fll', 'fwl'],
      this.editor.model.combos.map((c) => [c.name, String(c.fdl), String(c.fll),
        String(c.fwl)])));
    const proceed = d.createElement('button');
    proceed.id = 'proceed';
    proceed.textContent = 'Proceed';
    proceed.onclick = () => { this.screen = 'analysis'; this.render(); };
    this.root.appendChild(proceed);
  }

  private renderAnalysis(): void {
    const d = this.doc;
    const block = d.createElement('div');
    block.id = 'analysis-options';
    for (const { key, label } of ANALYSES) {
      const cb = d.createElement('input');
      cb.type = 'checkbox';
      cb.id = `analysis-${key}`;
      cb.checked = this.selectedAnalyses.has(key);
      cb.onchange = () => {
        if (cb.checked) this.selectedAnalyses.add(key);
        else this.selectedAnalyses.delete(key);
        if (key !== 'static' && cb.checked) this.selectedAnalyses.add('static');
      };
      const lab = d.createElement('label');
      lab.textContent = label;
      block.appendChild(cb);
      block.appendChild(lab);
    }
    this.root.appendChild(block);

    const params = d.createElement('div');
    params.id = 'topopt-params';
    for (const key of ['volfrac', 'nelx', 'nely'] as const) {
      const input = d.createElement('input');
      input.id = `topopt-${key}`;
      input.value = String(this.topopt[key]);
      input.onchange = () => { this.topopt[key] = Number(input.value); };
      params.appendChild(input);
    }
    this.root.appendChild(params);

    const go = d.createElement('button');
    go.id = 'analyze';
    go.textContent = 'Analyze';
    go.disabled = this.pending;
    go.onclick = () => { void this.submit(); };
    this.root.appendChild(go);
  }

  private renderAdvisor(): void {
    const d = this.doc;
    const span = d.createElement('input');
    span.id = 'span';
    span.value = '8';
    const fetchBtn = d.createElement('button');
    fetchBtn.id = 'advise';
    fetchBtn.textContent = 'Suggest';
    fetchBtn.onclick = () => { void this.loadAdvisor(Number(span.value)); };
    this.root.appendChild(span);
    this.root.appendChild(fetchBtn);
    const list = d.createElement('div');
    list.id = 'suggestions';
    this.advisorResults.forEach((s, i) => {
      const item = d.createElement('div');
      item.className = 'suggestion';
      item.textContent = `${s.name}: ${s.description} `;
      item.appendChild(this.link('Use this', () => this.chooseSuggestion(i)));
      list.appendChild(item);
    });
    this.root.appendChild(list);
  }

  private renderResults(): void {
    const d = this.doc;
    if (!this.job?.results) {
      const p = d.createElement('p');
      p.textContent = 'no results yet';
      this.root.appendChild(p);
      return;
    }
    const res = this.job.results;
    for (const combo of res.combinations) {
      this.root.appendChild(this.table(`forces-${combo.name}`,
        ['member', 'force (kN)'],
        combo.forces.map((f) => [String(f.member), f.force_kn.toFixed(2)])));
    }
    if (res.comparison) {
      this.root.appendChild(this.table('comparison',
        ['member', 'force (kN)', 'length (m)', 'section', 'area (mm^2)', 'optimized (mm^2)'],
        res.comparison.map((r) => [String(r.member), r.force_kn.toFixed(2),
          r.length_m.toFixed(2), r.designation, r.area_mm2.toFixed(0),
          r.optimized_area_mm2.toFixed(2)])));
    }
    if (this.jobId) {
      const dl = d.createElement('div');
      dl.id = 'downloads';
      const report = d.createElement('a');
      report.id = 'download-report';
      report.href = `/api/jobs/${this.jobId}/report.txt`;
      report.textContent = 'Download detailed design report';
      const model = d.createElement('a');
      model.id = 'download-model';
      model.href = `/api/jobs/${this.jobId}/model.csv`;
      model.textContent = 'Download model CSV';
      dl.appendChild(report);
      dl.appendChild(model);
      this.root.appendChild(dl);
    }
    if (res.gussets) {
      const grid = d.createElement('div');
      grid.id = 'gussets';
      const paints: Promise<void>[] = [];
      for (const g of res.gussets) {
        const fig = d.createElement('figure');
        const canvas = d.createElement('canvas');
        canvas.className = 'gusset-image';
        canvas.dataset.node = String(g.node);
        canvas.dataset.src = this.api.gussetImageUrl(this.jobId!, g.node);
        const cap = d.createElement('figcaption');
        cap.textContent = `Gusset Plate ${g.node}`;
        fig.appendChild(canvas);
        fig.appendChild(cap);
        grid.appendChild(fig);
        paints.push(this.paintGusset(canvas, g.node));
      }
      this.gussetPainting = Promise.all(paints).then(() => undefined);
      this.root.appendChild(grid);
    }
  }

  /** Resolved once every gusset raster of the current results is painted. */
  gussetPainting: Promise<void> = Promise.resolve();

  private async paintGusset(canvas: HTMLCanvasElement, node: number): Promise<void> {
    try {
      const bytes = await this.api.gussetImageBytes(this.jobId!, node);
      paintPgm(canvas, parsePgm(bytes));
    } catch {
      canvas.dataset.error = 'failed to load';
    }
  }
}

export function roundTripHoldsAfterUpload(app: App, downloaded: string): boolean {
  const before: Model = JSON.parse(JSON.stringify(app.editor.model));
  return modelsEqual(before, parseModel(downloaded));
}

export { ANALYSES };
export type { Support, LoadCase };
