// 2D canvas rendering of the editor state.  Pure drawing: reads the editor,
// never mutates it.

import { EditorState } from './editor';
import { NodeRow } from './types';

const PALETTE = ['#1f77b4', '#ff7f0e', '#2ca02c', '#d62728', '#9467bd',
  '#8c564b', '#e377c2', '#7f7f7f', '#bcbd22', '#17becf'];

/** Deterministic color for a material/section name. */
export function colorFor(name: string): string {
  let h = 0;
  for (let i = 0; i < name.length; i++) h = (h * 31 + name.charCodeAt(i)) >>> 0;
  return PALETTE[h % PALETTE.length];
}

export function drawEditor(ctx: CanvasRenderingContext2D, state: EditorState,
                           width: number, height: number): void {
  ctx.clearRect(0, 0, width, height);
  if (state.toggles.grid) drawGrid(ctx, state, width, height);

  for (const m of state.model.members) {
    const a = state.node(m.ni);
    const b = state.node(m.nj);
    const [ax, ay] = state.toScreen(a.x, a.y);
    const [bx, by] = state.toScreen(b.x, b.y);
    ctx.strokeStyle = '#222';
    if (state.toggles.showMaterials) ctx.strokeStyle = colorFor(m.material);
    if (state.toggles.showSections) ctx.strokeStyle = colorFor(m.section);
    ctx.lineWidth = 2;
    ctx.beginPath();
    ctx.moveTo(ax, ay);
    ctx.lineTo(bx, by);
    ctx.stroke();
    if (state.toggles.memberNumbers) {
      ctx.fillStyle = '#555';
      ctx.fillText(String(m.id), (ax + bx) / 2 + 4, (ay + by) / 2 - 4);
    }
    if (state.toggles.dimensions) {
      ctx.fillStyle = '#999';
      ctx.fillText(state.memberLength(m.id).toFixed(2) + ' m',
        (ax + bx) / 2 + 4, (ay + by) / 2 + 12);
    }
  }

  for (const n of state.model.nodes) drawNode(ctx, state, n);
}

function drawGrid(ctx: CanvasRenderingContext2D, state: EditorState,
                  width: number, height: number): void {
  const g = state.gridSpacing * state.view.scale;
  if (g < 4) return;
  ctx.strokeStyle = '#eee';
  ctx.lineWidth = 1;
  const x0 = state.view.offsetX % g;
  for (let x = x0; x < width; x += g) {
    ctx.beginPath();
    ctx.moveTo(x, 0);
    ctx.lineTo(x, height);
    ctx.stroke();
  }
  const y0 = state.view.offsetY % g;
  for (let y = y0; y < height; y += g) {
    ctx.beginPath();
    ctx.moveTo(0, y);
    ctx.lineTo(width, y);
    ctx.stroke();
  }
}

function drawNode(ctx: CanvasRenderingContext2D, state: EditorState, n: NodeRow): void {
  const [x, y] = state.toScreen(n.x, n.y);
  ctx.fillStyle = n.support === 'free' ? '#1f77b4' : '#d62728';
  ctx.beginPath();
  ctx.arc(x, y, 5, 0, 2 * Math.PI);
  ctx.fill();
  if (n.support === 'hinged') {
    ctx.strokeStyle = '#d62728';
    ctx.beginPath();
    ctx.moveTo(x, y);
    ctx.lineTo(x - 7, y + 12);
    ctx.lineTo(x + 7, y + 12);
    ctx.closePath();
    ctx.stroke();
  } else if (n.support.startsWith('roller')) {
    ctx.strokeStyle = '#d62728';
    ctx.beginPath();
    ctx.arc(x, y + 10, 4, 0, 2 * Math.PI);
    ctx.stroke();
  }
  if (state.toggles.nodeNumbers) {
    ctx.fillStyle = '#000';
    ctx.fillText(String(n.id), x + 7, y - 7);
  }
  const total = (['DL', 'LL', 'WL'] as const)
    .map((c) => n.loads[c] ?? [0, 0])
    .reduce((acc, v) => [acc[0] + v[0], acc[1] + v[1]], [0, 0]);
  if (total[0] !== 0 || total[1] !== 0) {
    const len = Math.hypot(total[0], total[1]);
    ctx.strokeStyle = '#2ca02c';
    ctx.beginPath();
    ctx.moveTo(x, y);
    ctx.lineTo(x + (total[0] / len) * 24, y - (total[1] / len) * 24);
    ctx.stroke();
  }
}

/** 'Capture' button: the current canvas as a PNG data URL. */
export function captureCanvas(canvas: HTMLCanvasElement): string {
  return canvas.toDataURL('image/png');
}
