// Decoder for the binary PGM rasters the service serves (P5, maxval 255).

export interface PgmImage {
  width: number;
  height: number;
  gray: Uint8Array;   // row-major, 0 = black (solid material)
}

export class PgmError extends Error {}

export function parsePgm(bytes: Uint8Array): PgmImage {
  let pos = 0;
  const token = (): string => {
    while (pos < bytes.length && isSpace(bytes[pos])) pos++;
    const start = pos;
    while (pos < bytes.length && !isSpace(bytes[pos])) pos++;
    if (start === pos) throw new PgmError('truncated PGM header');
    return String.fromCharCode(...bytes.subarray(start, pos));
  };
  if (token() !== 'P5') throw new PgmError('not a binary PGM');
  const width = Number(token());
  const height = Number(token());
  const maxval = Number(token());
  if (!(width > 0 && height > 0)) throw new PgmError('bad PGM dimensions');
  if (maxval !== 255) throw new PgmError(`unsupported maxval ${maxval}`);
  pos++; // single whitespace after maxval
  const gray = bytes.subarray(pos, pos + width * height);
  if (gray.length !== width * height) throw new PgmError('truncated PGM data');
  return { width, height, gray: new Uint8Array(gray) };
}

/** Paint a decoded raster onto a canvas (1 density element = 1 pixel). */
export function paintPgm(canvas: HTMLCanvasElement, image: PgmImage): boolean {
  canvas.width = image.width;
  canvas.height = image.height;
  const ctx = canvas.getContext?.('2d');
  if (!ctx) return false;   // e.g. headless test environments
  const data = ctx.createImageData(image.width, image.height);
  for (let i = 0; i < image.gray.length; i++) {
    data.data[4 * i] = data.data[4 * i + 1] = data.data[4 * i + 2] = image.gray[i];
    data.data[4 * i + 3] = 255;
  }
  ctx.putImageData(data, 0, 0);
  return true;
}

function isSpace(b: number): boolean {
  return b === 0x20 || b === 0x0a || b === 0x0d || b === 0x09;
}
