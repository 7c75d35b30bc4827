import { describe, expect, it } from 'vitest';

import { CsvError, modelsEqual, parseModel, serializeModel } from '../src/csv';
import { emptyModel } from '../src/types';
import { demonstrationModel } from './fixtures';

describe('model CSV codec', () => {
  it('round-trips the empty model', () => {
    const m = emptyModel();
    expect(modelsEqual(parseModel(serializeModel(m)), m)).toBe(true);
  });

  it('round-trips the demonstration truss exactly', () => {
    const m = demonstrationModel();
    const again = parseModel(serializeModel(m));
    expect(modelsEqual(again, m)).toBe(true);
    expect(again.nodes[4].x).toBe(m.nodes[4].x); // full float precision kept
  });

  it('keeps the section layout the service expects', () => {
    const doc = serializeModel(demonstrationModel());
    expect(doc.startsWith('TRUSSLAB_MODEL,1\n')).toBe(true);
    for (const h of ['[NODES]', '[MATERIALS]', '[SECTIONS]', '[MEMBERS]', '[COMBOS]']) {
      expect(doc).toContain(h);
    }
    expect(doc).toContain('id,x,y,support,roller_axis,DLx,DLy,LLx,LLy,WLx,WLy');
  });

  it('reports the line of a malformed number', () => {
    const doc = serializeModel(demonstrationModel());
    const broken = doc.replace('steel,200000', 'steel,soft');
    const lineno = broken.split('\n').findIndex((l) => l.startsWith('steel,soft')) + 1;
    expect(() => parseModel(broken)).toThrowError(new RegExp(`line ${lineno}`));
  });

  it('rejects unknown section headers', () => {
    expect(() => parseModel('TRUSSLAB_MODEL,1\n[WEIRD]\nx\n')).toThrow(CsvError);
  });

  it('rejects a missing magic line', () => {
    expect(() => parseModel('[NODES]\n')).toThrowError(/line 1/);
  });

  it('preserves roller axes', () => {
    const m = demonstrationModel();
    m.nodes[3].support = 'roller_y';
    const again = parseModel(serializeModel(m));
    expect(again.nodes[3].support).toBe('roller_y');
  });
});
