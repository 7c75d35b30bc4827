"""HTTP facade for the solvers: job submission, polling and artifact
download, plus the span advisor.

Each job owns a directory under the job root: request.json, job.json
(status), and on success model.csv, report.txt, results.json and one
gusset/<node>.pgm per optimized joint.  Writes go through a temp file and
rename so readers never see partial state.  Jobs execute on a small worker
pool; results are a pure function of the request, so identical submissions
produce byte-identical artifacts.
"""
from __future__ import annotations

import argparse
import json
import os
import tempfile
import uuid
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.responses import PlainTextResponse, Response
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from . import advisor, gusset, report_io, size_opt
from .design_is800 import design_truss
from .model import validate
from .topopt import TopOptParams
from .truss_solver import deflected_shape, solve_all

ANALYSES = ("static", "is800_design", "size_opt", "gusset_topopt")


class TopOptRequest(BaseModel):
    volfrac: float = Field(0.4, gt=0.0, le=1.0)
    nelx: int = Field(60, ge=4, le=200)
    nely: int = Field(60, ge=4, le=200)


class AnalysisRequest(BaseModel):
    model_csv: str
    analyses: list
    topopt: TopOptRequest = TopOptRequest()


def _atomic_write(path: Path, data):
    mode = "wb" if isinstance(data, bytes) else "w"
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp_")
    try:
        with os.fdopen(fd, mode) as f:
            f.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


class JobStore:
    def __init__(self, root):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def job_dir(self, job_id):
        return self.root / job_id

    def create(self, request: AnalysisRequest) -> str:
        job_id = uuid.uuid4().hex
        d = self.job_dir(job_id)
        d.mkdir(parents=True)
        (d / "gusset").mkdir()
        _atomic_write(d / "request.json", json.dumps(request.model_dump(), indent=1))
        self.set_status(job_id, "queued")
        return job_id

    def set_status(self, job_id, status, error=None):
        payload = {"id": job_id, "status": status}
        if error:
            payload["error"] = error
        _atomic_write(self.job_dir(job_id) / "job.json", json.dumps(payload, indent=1))

    def record(self, job_id) -> dict:
        path = self.job_dir(job_id) / "job.json"
        if not path.exists():
            return None
        rec = json.loads(path.read_text())
        results = self.job_dir(job_id) / "results.json"
        if rec["status"] == "done" and results.exists():
            rec["results"] = json.loads(results.read_text())
        return rec


def run_job(store: JobStore, job_id: str):
    d = store.job_dir(job_id)
    store.set_status(job_id, "running")
    try:
        request = AnalysisRequest(**json.loads((d / "request.json").read_text()))
        model = report_io.parse(request.model_csv)
        violations = validate(model)
        if violations:
            raise ValueError("invalid model: " + "; ".join(violations))
        analyses = set(request.analyses)

        results = solve_all(model)
        payload = {
            "combinations": [
                {"name": r.combination,
                 "forces": report_io.forces_table(r),
                 "displacements": {str(k): [float(v[0]), float(v[1])]
                                   for k, v in sorted(r.displacements.items())},
                 "reactions": {f"{nid}{axis}": round(float(v), 6)
                               for (nid, axis), v in sorted(r.reactions.items())},
                 "deflected_shape": {str(k): [float(x), float(y)] for k, (x, y)
                                     in deflected_shape(model, r, 1.0).items()}}
                for r in results
            ],
        }
        report = None
        if "is800_design" in analyses or "size_opt" in analyses or "gusset_topopt" in analyses:
            report = design_truss(model, results)
            payload["design"] = [
                {"member": mid,
                 "force_kn": round(float(e.force_kn), 6),
                 "mode": e.mode,
                 "designation": e.designation,
                 "area_mm2": round(float(e.total_area), 2)}
                for mid, e in sorted(report.entries.items())
            ]
            _atomic_write(d / "report.txt", report_io.design_report_text(report))
        if "size_opt" in analyses:
            opt = size_opt.optimize_sizes(size_opt.build_problem(model, results, report))
            payload["size_opt"] = {
                "weight_kg": round(float(opt.weight_kg), 6),
                "converged": opt.converged,
                "areas": {str(k): round(float(v), 4) for k, v in sorted(opt.areas.items())},
            }
            payload["comparison"] = report_io.comparison_table(report, opt)
        if "gusset_topopt" in analyses:
            # governing combination: the one holding the envelope for most members
            env_result = max(results, key=lambda r: sum(abs(f) for f in r.member_forces.values()))
            params = TopOptParams(volfrac=request.topopt.volfrac, max_iters=80)
            images = []
            for node in model.nodes:
                n_members = sum(1 for m in model.members
                                if node.id in (m.node_i, m.node_j))
                if n_members < 2:
                    continue
                gp, field = gusset.optimize_joint(
                    model, env_result, node.id, report,
                    volfrac=request.topopt.volfrac,
                    mesh=min(request.topopt.nelx, request.topopt.nely),
                    params=params)
                _atomic_write(d / "gusset" / f"{node.id}.pgm",
                              report_io.density_image(field))
                images.append({"node": node.id,
                               "iterations": field.iterations,
                               "compliance": float(field.compliance),
                               "mirror_metric": gusset.mirror_metric(field)})
            payload["gussets"] = images
        _atomic_write(d / "model.csv", report_io.serialize(model))
        _atomic_write(d / "results.json", json.dumps(payload, indent=1, sort_keys=True))
        store.set_status(job_id, "done")
    except Exception as exc:  # report failures through the job record
        store.set_status(job_id, "failed", error=str(exc))


def create_app(job_dir=None, workers=None, frontend_dir=None) -> FastAPI:
    store = JobStore(job_dir or os.environ.get("TRUSSLAB_JOBS", "./jobs"))
    pool = ThreadPoolExecutor(max_workers=workers or os.cpu_count() or 2)
    app = FastAPI(title="trusslab")
    app.state.store = store

    @app.post("/api/jobs", status_code=202)
    def submit(request: AnalysisRequest):
        unknown = [a for a in request.analyses if a not in ANALYSES]
        if unknown:
            raise HTTPException(400, detail=f"unknown analyses: {unknown}")
        if not request.analyses:
            raise HTTPException(400, detail="no analyses selected")
        dependent = {"size_opt", "gusset_topopt"} & set(request.analyses)
        if dependent and "static" not in request.analyses:
            raise HTTPException(
                400, detail=f"{sorted(dependent)} require the static analysis")
        try:
            model = report_io.parse(request.model_csv)
        except report_io.ReportIOError as exc:
            raise HTTPException(400, detail=str(exc))
        violations = validate(model)
        if violations:
            raise HTTPException(400, detail={"violations": violations})
        job_id = store.create(request)
        pool.submit(run_job, store, job_id)
        return {"id": job_id}

    @app.get("/api/jobs/{job_id}")
    def status(job_id: str):
        rec = store.record(job_id)
        if rec is None:
            raise HTTPException(404, detail="unknown job")
        return rec

    def _artifact(job_id, name):
        path = store.job_dir(job_id) / name
        if not path.exists():
            raise HTTPException(404, detail=f"artifact {name} not available")
        return path

    @app.get("/api/jobs/{job_id}/report.txt", response_class=PlainTextResponse)
    def report(job_id: str):
        return _artifact(job_id, "report.txt").read_text()

    @app.get("/api/jobs/{job_id}/model.csv", response_class=PlainTextResponse)
    def model_csv(job_id: str):
        return _artifact(job_id, "model.csv").read_text()

    @app.get("/api/jobs/{job_id}/gusset/{node}.img")
    def gusset_image(job_id: str, node: int):
        path = _artifact(job_id, f"gusset/{node}.pgm")
        return Response(path.read_bytes(), media_type="image/x-portable-graymap")

    @app.get("/api/advisor")
    def advise(span: float):
        try:
            subs = advisor.suggestions(span)
        except advisor.AdvisorError as exc:
            raise HTTPException(400, detail=str(exc))
        return [{"name": name, "description": desc,
                 "model_csv": report_io.serialize(model)}
                for name, desc, model in subs]

    front = frontend_dir or os.environ.get("TRUSSLAB_FRONTEND")
    if front and Path(front).is_dir():
        app.mount("/", StaticFiles(directory=front, html=True), name="ui")
    return app


def main(argv=None):
    parser = argparse.ArgumentParser(description="trusslab analysis service")
    parser.add_argument("--port", type=int, default=8080)
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--job-dir", default=os.environ.get("TRUSSLAB_JOBS", "./jobs"))
    parser.add_argument("--workers", type=int, default=None)
    parser.add_argument("--frontend", default=None,
                        help="directory with the built web UI to serve at /")
    args = parser.parse_args(argv)
    import uvicorn
    app = create_app(args.job_dir, args.workers, args.frontend)
    uvicorn.run(app, host=args.host, port=args.port)


if __name__ == "__main__":
    main()
