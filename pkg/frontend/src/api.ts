// Thin client for the analysis service.

import { Analysis, JobRecord, Model } from './types';
import { serializeModel } from './csv';

export interface TopOptOptions {
  volfrac: number;
  nelx: number;
  nely: number;
}

export interface AdvisorSuggestion {
  name: string;
  description: string;
  model_csv: string;
}

async function asJson(resp: Response): Promise<any> {
  if (!resp.ok) {
    let detail = `${resp.status}`;
    try {
      const body = await resp.json();
      detail = JSON.stringify(body.detail ?? body);
    } catch { /* keep the status code */ }
    throw new Error(`request failed: ${detail}`);
  }
  return resp.json();
}

export class ApiClient {
  constructor(private base = '', private fetchFn: typeof fetch = fetch) {}

  async submitJob(model: Model, analyses: Analysis[],
                  topopt?: TopOptOptions): Promise<string> {
    const body: any = { model_csv: serializeModel(model), analyses };
    if (topopt) body.topopt = topopt;
    const resp = await this.fetchFn(`${this.base}/api/jobs`, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(body),
    });
    const data = await asJson(resp);
    return data.id;
  }

  async getJob(jobId: string): Promise<JobRecord> {
    return asJson(await this.fetchFn(`${this.base}/api/jobs/${jobId}`));
  }

  /** Poll until the job leaves the queue; resolves on done, rejects on failed. */
  async pollJob(jobId: string, intervalMs = 500,
                sleep: (ms: number) => Promise<void> = defaultSleep): Promise<JobRecord> {
    for (;;) {
      const rec = await this.getJob(jobId);
      if (rec.status === 'done') return rec;
      if (rec.status === 'failed') throw new Error(rec.error ?? 'job failed');
      await sleep(intervalMs);
    }
  }

  async downloadModelCsv(jobId: string): Promise<string> {
    const resp = await this.fetchFn(`${this.base}/api/jobs/${jobId}/model.csv`);
    if (!resp.ok) throw new Error(`model.csv unavailable (${resp.status})`);
    return resp.text();
  }

  async downloadReport(jobId: string): Promise<string> {
    const resp = await this.fetchFn(`${this.base}/api/jobs/${jobId}/report.txt`);
    if (!resp.ok) throw new Error(`report.txt unavailable (${resp.status})`);
    return resp.text();
  }

  gussetImageUrl(jobId: string, node: number): string {
    return `${this.base}/api/jobs/${jobId}/gusset/${node}.img`;
  }

  async gussetImageBytes(jobId: string, node: number): Promise<Uint8Array> {
    const resp = await this.fetchFn(this.gussetImageUrl(jobId, node));
    if (!resp.ok) throw new Error(`gusset image unavailable (${resp.status})`);
    return new Uint8Array(await resp.arrayBuffer());
  }

  async advisor(span: number): Promise<AdvisorSuggestion[]> {
    return asJson(await this.fetchFn(`${this.base}/api/advisor?span=${span}`));
  }
}

function defaultSleep(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}
