"""HTTP service exposing datasets and on-demand embedding.

The service is stateless apart from a dataset directory; dataset ids are
derived from filenames so they survive restarts. Embeddings run in a
worker thread with a hard timeout, since solver cost grows steeply with
dataset size.
"""

from __future__ import annotations

import asyncio
import json
import logging
import threading
import time
import uuid
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request
from fastapi.encoders import jsonable_encoder
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import dataset as ds
from .dissimilarity import EstimatorKind
from .embedding import EmbeddingConfig, embed, sweep
from .errors import BifoldError, DataError, NumericError
from .joint import ScalingParams, default_params
from .render import coordinates_payload
from .schemas import (
    DatasetInfo,
    EmbedRequest,
    EmbedResponse,
    SweepRequest,
    SweepResponse,
    UploadResponse,
)

log = logging.getLogger("bifold.server")

EMBED_TIMEOUT_S = 60.0


def _parse_method(name: str) -> EstimatorKind:
    try:
        return EstimatorKind(name)
    except ValueError:
        valid = ", ".join(k.value for k in EstimatorKind)
        raise HTTPException(400, f"unknown method {name!r}; expected one of: {valid}")


def _dataset_files(directory: Path) -> list[Path]:
    return sorted(
        p for p in directory.iterdir() if p.suffix.lower() in (".csv", ".json")
    )


def _resolve_params(req: EmbedRequest, method: EstimatorKind, m: int, n: int) -> ScalingParams:
    base = default_params(method, m, n)
    try:
        return ScalingParams(
            alpha_x=req.alpha_x if req.alpha_x is not None else base.alpha_x,
            alpha_y=req.alpha_y if req.alpha_y is not None else base.alpha_y,
            alpha_xy=req.alpha_xy if req.alpha_xy is not None else base.alpha_xy,
            beta=req.beta if req.beta is not None else base.beta,
        )
    except DataError as e:
        raise HTTPException(400, f"{e.code}: {e}")


def create_app(dataset_dir: str | Path) -> FastAPI:
    directory = Path(dataset_dir)
    app = FastAPI(title="bifold", version="0.1.0")
    app.state.dataset_dir = directory
    app.state.embed_timeout = EMBED_TIMEOUT_S
    write_lock = threading.Lock()

    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(RequestValidationError)
    async def _validation_error(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"detail": jsonable_encoder(exc.errors())})

    def load_by_id(dataset_id: str) -> ds.Dataset:
        for suffix in (".csv", ".json"):
            path = directory / (dataset_id + suffix)
            if path.exists():
                try:
                    return ds.load(path)
                except BifoldError as e:
                    raise HTTPException(500, f"{e.code}: dataset {dataset_id} unreadable")
        raise HTTPException(404, f"unknown dataset_id {dataset_id!r}")

    def resolve_dataset(req: EmbedRequest) -> ds.Dataset:
        if req.dataset_id is not None:
            return load_by_id(req.dataset_id)
        try:
            return ds.parse_json(json.dumps(req.dataset))
        except DataError as e:
            raise HTTPException(400, f"{e.code}: {e}")

    async def run_bounded(fn):
        loop = asyncio.get_running_loop()
        try:
            return await asyncio.wait_for(
                loop.run_in_executor(None, fn), timeout=app.state.embed_timeout
            )
        except asyncio.TimeoutError:
            raise HTTPException(504, "embedding timed out")

    @app.get("/api/datasets", response_model=list[DatasetInfo])
    def list_datasets():
        if not directory.is_dir():
            raise HTTPException(500, f"dataset directory {directory} unreadable")
        infos = []
        for path in _dataset_files(directory):
            try:
                d = ds.load(path)
            except BifoldError as e:
                log.warning("skipping %s: %s", path.name, e)
                continue
            infos.append(
                DatasetInfo(id=path.stem, name=d.name or path.stem, m=d.m, n=d.n)
            )
        return infos

    @app.get("/api/datasets/{dataset_id}")
    def get_dataset(dataset_id: str):
        d = load_by_id(dataset_id)
        return json.loads(ds.serialize_json(d))

    @app.post("/api/datasets", response_model=UploadResponse, status_code=201)
    async def upload_dataset(request: Request):
        body = (await request.body()).decode("utf-8", errors="replace")
        content_type = request.headers.get("content-type", "")
        try:
            if "json" in content_type or body.lstrip().startswith("{"):
                d = ds.parse_json(body)
            else:
                d = ds.parse_csv(body)
        except DataError as e:
            raise HTTPException(400, f"{e.code}: {e}")
        dataset_id = f"upload-{uuid.uuid4().hex[:12]}"
        with write_lock:
            path = directory / f"{dataset_id}.json"
            tmp = path.with_suffix(".json.tmp")
            tmp.write_text(ds.serialize_json(d), encoding="utf-8")
            tmp.replace(path)
        return UploadResponse(id=dataset_id)

    @app.post("/api/embed", response_model=EmbedResponse)
    async def embed_endpoint(req: EmbedRequest):
        method = _parse_method(req.method)
        data = resolve_dataset(req)
        params = _resolve_params(req, method, data.m, data.n)
        cfg = EmbeddingConfig(
            dim=req.dim, max_iter=req.max_iter, rel_tol=req.rel_tol, restarts=req.restarts
        )
        start = time.perf_counter()

        def work():
            return embed(
                data, method, params, cfg,
                paper_literal_membership_weights=req.paper_literal_membership_weights,
            )

        try:
            result = await run_bounded(work)
        except BifoldError as e:
            if isinstance(e, NumericError):
                raise HTTPException(500, f"{e.code}: {e}")
            raise HTTPException(422, f"{e.code}: {e}")
        elapsed = (time.perf_counter() - start) * 1000.0
        payload = coordinates_payload(result, data)
        return EmbedResponse(
            name=data.name,
            method=method.value,
            params={
                "alpha_x": params.alpha_x,
                "alpha_y": params.alpha_y,
                "alpha_xy": params.alpha_xy,
                "beta": params.beta,
            },
            stress=result.stress,
            iterations=result.iterations,
            converged=result.converged,
            disconnected=result.disconnected,
            objects=payload["objects"],
            stress_trace=list(result.stress_trace),
            elapsed_ms=elapsed,
        )

    @app.post("/api/sweep", response_model=SweepResponse)
    async def sweep_endpoint(req: SweepRequest):
        method = _parse_method(req.method)
        data = resolve_dataset(req)
        params = _resolve_params(req, method, data.m, data.n)
        cfg = EmbeddingConfig(
            dim=req.dim, max_iter=req.max_iter, rel_tol=req.rel_tol, restarts=req.restarts
        )
        start = time.perf_counter()

        def work():
            return sweep(
                data, method, params, cfg, req.dims,
                paper_literal_membership_weights=req.paper_literal_membership_weights,
            )

        try:
            result = await run_bounded(work)
        except BifoldError as e:
            if isinstance(e, NumericError):
                raise HTTPException(500, f"{e.code}: {e}")
            raise HTTPException(422, f"{e.code}: {e}")
        elapsed = (time.perf_counter() - start) * 1000.0
        return SweepResponse(
            name=data.name,
            method=method.value,
            dims=list(result.dims),
            stresses=list(result.stresses),
            normalized_stresses=list(result.normalized_stresses),
            elapsed_ms=elapsed,
        )

    explorer_dist = Path(__file__).resolve().parents[2] / "frontend" / "dist"
    if explorer_dist.is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=explorer_dist, html=True), name="explorer")

    return app
