import { ApiClient } from './api';
import { App } from './app';

const root = document.getElementById('app');
if (root) {
  const app = new App(root, new ApiClient(''));
  const canvas = () => root.querySelector<HTMLCanvasElement>('#canvas');
  root.addEventListener('contextmenu', (e) => {
    const c = canvas();
    if (c && e.target === c) {
      e.preventDefault();
      const rect = c.getBoundingClientRect();
      app.handleRightClick(e.clientX - rect.left, e.clientY - rect.top);
    }
  });
  let dragStart: [number, number] | null = null;
  root.addEventListener('mousedown', (e) => {
    const c = canvas();
    if (c && e.target === c && e.button === 0) {
      const rect = c.getBoundingClientRect();
      dragStart = [e.clientX - rect.left, e.clientY - rect.top];
    }
  });
  root.addEventListener('mouseup', (e) => {
    const c = canvas();
    if (c && dragStart) {
      const rect = c.getBoundingClientRect();
      app.handleDrag(dragStart[0], dragStart[1],
        e.clientX - rect.left, e.clientY - rect.top);
    }
    dragStart = null;
  });
}
