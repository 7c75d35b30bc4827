// Scripted end-to-end UI exercise: build the demonstration truss with
// editor gestures, submit it, and read the results page.

import { beforeEach, describe, expect, it } from 'vitest';

import { ApiClient } from '../src/api';
import { App } from '../src/app';
import { modelsEqual, parseModel, serializeModel } from '../src/csv';
import { DEMO_MEMBERS, DEMO_NODES, demonstrationModel, fakeFetch } from './fixtures';

function makeApp(fetchFn: typeof fetch) {
  const root = document.createElement('div');
  document.body.appendChild(root);
  return new App(root, new ApiClient('', fetchFn));
}

function buildDemonstrationTruss(app: App) {
  const ed = app.editor;
  for (const spec of DEMO_NODES) {
    // right-click on the canvas near the target point, then fine-tune the
    // coordinates through the block-E table, as the workflow intends
    const [px, py] = ed.toScreen(spec.x, spec.y);
    const node = ed.addNodeAt(px + 3, py - 2);
    ed.setCoordinates(node.id, spec.x, spec.y);
    if (spec.support !== 'free') ed.setSupport(node.id, spec.support);
    if (spec.loaded) ed.setLoad(node.id, 'DL', 0, 20 / 3);
  }
  for (const [ni, nj] of DEMO_MEMBERS) {
    const a = ed.node(ni);
    const b = ed.node(nj);
    const [ax, ay] = ed.toScreen(a.x, a.y);
    const [bx, by] = ed.toScreen(b.x, b.y);
    expect(ed.beginMemberDrag(ax, ay)).toBe(true);
    const out = ed.endMemberDrag(bx, by);
    expect(out.error).toBeUndefined();
  }
  app.render();
}

describe('scripted browser session', () => {
  beforeEach(() => {
    document.body.innerHTML = '';
  });

  it('gesture-built demonstration truss matches the reference model', () => {
    const app = makeApp(fakeFetch().fn);
    buildDemonstrationTruss(app);
    expect(app.editor.model.nodes).toHaveLength(7);
    expect(app.editor.model.members).toHaveLength(11);
    expect(app.editor.revalidate()).toEqual([]);
    expect(modelsEqual(app.editor.model, demonstrationModel())).toBe(true);
    // the block-E table shows the populated rows
    const rows = app.root.querySelectorAll('#nodes tr');
    expect(rows).toHaveLength(1 + 7);
  });

  it('submit walks to a results page with 11 comparison rows and 7 gusset images', async () => {
    const { fn, calls } = fakeFetch();
    const app = makeApp(fn);
    buildDemonstrationTruss(app);
    app.selectedAnalyses = new Set(['static', 'is800_design', 'size_opt', 'gusset_topopt']);
    await app.submit();
    expect(app.screen).toBe('results');
    const submitted = calls.find((c) => c.url.endsWith('/api/jobs') && c.body);
    expect(submitted!.body.analyses).toContain('gusset_topopt');
    expect(modelsEqual(parseModel(submitted!.body.model_csv), demonstrationModel())).toBe(true);

    const comparison = app.root.querySelectorAll('#comparison tr');
    expect(comparison).toHaveLength(1 + 11);
    const firstCells = comparison[1].querySelectorAll('td');
    expect(firstCells[0].textContent).toBe('1');
    expect(firstCells[1].textContent).toBe('-37.50');
    expect(firstCells[3].textContent).toBe('2 x ISA 20 x 20 x 4');

    const images = app.root.querySelectorAll('canvas.gusset-image');
    expect(images).toHaveLength(7);
    expect((images[5] as HTMLCanvasElement).dataset.src)
      .toContain('/api/jobs/job-1/gusset/6.img');
    await app.gussetPainting;  // every raster fetched and decoded
    expect(calls.filter((c) => c.url.endsWith('.img'))).toHaveLength(7);
    for (const c of images) {
      expect((c as HTMLCanvasElement).dataset.error).toBeUndefined();
      expect((c as HTMLCanvasElement).width).toBe(4);  // decoded tinyPgm size
    }

    const report = app.root.querySelector('#download-report') as HTMLAnchorElement;
    expect(report.getAttribute('href')).toBe('/api/jobs/job-1/report.txt');
  });

  it('refuses to submit an invalid model and shows the violations', async () => {
    const { fn, calls } = fakeFetch();
    const app = makeApp(fn);
    app.editor.addNode(0, 0);
    await app.submit();
    expect(app.screen).toBe('input');
    expect(app.statusLine).toMatch(/structure has no members/);
    expect(calls.filter((c) => c.body)).toHaveLength(0);
  });

  it('export then upload restores an identical canvas model', () => {
    const app = makeApp(fakeFetch().fn);
    buildDemonstrationTruss(app);
    const doc = app.exportCsv();
    const before = JSON.parse(JSON.stringify(app.editor.model));
    app.editor.model.nodes = [];
    app.editor.model.members = [];
    app.uploadCsv(doc);
    expect(modelsEqual(app.editor.model, before)).toBe(true);
    expect(serializeModel(app.editor.model)).toBe(doc);
  });

  it('upload surfaces parse errors with their line number', () => {
    const app = makeApp(fakeFetch().fn);
    const doc = app.exportCsv().replace('steel,200000', 'steel,abc');
    app.uploadCsv(doc);
    expect(app.statusLine).toMatch(/line \d+/);
  });

  it('advisor suggestion loads into the editor', async () => {
    const suggestion = serializeModel(demonstrationModel());
    const fn = (async (url: any) => ({
      ok: true, status: 200,
      json: async () => [{ name: 'Fink', description: 'fan truss',
        model_csv: suggestion }],
    })) as unknown as typeof fetch;
    const app = makeApp(fn);
    app.screen = 'advisor';
    app.render();
    await app.loadAdvisor(8);
    expect(app.root.querySelectorAll('.suggestion')).toHaveLength(1);
    app.chooseSuggestion(0);
    expect(app.screen).toBe('input');
    expect(modelsEqual(app.editor.model, demonstrationModel())).toBe(true);
  });

  it('analysis screen keeps static selected when a dependent analysis is on', () => {
    const app = makeApp(fakeFetch().fn);
    app.screen = 'analysis';
    app.render();
    const sizeOpt = app.root.querySelector('#analysis-size_opt') as HTMLInputElement;
    sizeOpt.checked = true;
    sizeOpt.onchange!(new Event('change'));
    expect(app.selectedAnalyses.has('size_opt')).toBe(true);
    expect(app.selectedAnalyses.has('static')).toBe(true);
  });
});
