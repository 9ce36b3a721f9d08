"""HTTP facade over data + render + metrics for the companion UI.

Stateless apart from the in-memory dataset store: every response is a
pure function of (stored dataset, request body), and /render output is
byte-identical to the CLI for the same inputs because both call the same
pipeline.
"""

from __future__ import annotations

import json
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from . import metrics as metrics_mod
from . import presets as presets_mod
from .data import DataError, Dataset, flip_axis, load_csv, normalize, reorder_axes
from .render import ConfigError, PlotConfig, render_raster, render_svg, write_image

MAX_UPLOAD_BYTES = 10 * 1024 * 1024


class ConfigBody(BaseModel):
    width_px: int = 960
    height_px: int = 480
    margin_px: int = 40
    h: float = 2.0
    p: float = 1.0
    color: tuple[int, int, int] = (0, 0, 0)
    opacity: float = 1.0
    draw_axes: bool = True
    min_width: float = 0.0

    def to_plot_config(self) -> PlotConfig:
        try:
            return PlotConfig(**self.model_dump())
        except ConfigError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc


class RenderRequest(BaseModel):
    dataset_id: str
    config: ConfigBody = Field(default_factory=ConfigBody)
    axis_order: list[int] | None = None
    flips: list[int] | None = None


class DatasetStore:
    """Read-mostly in-memory store; presets are always present."""

    def __init__(self, data_dir: str | None = None) -> None:
        self._datasets: dict[str, tuple[str, Dataset]] = {}
        self._counter = 0
        self._data_dir = Path(data_dir) if data_dir else None
        if self._data_dir:
            self._data_dir.mkdir(parents=True, exist_ok=True)
        for name in presets_mod.available_presets():
            self._datasets[name] = (name, presets_mod.load_preset(name))

    def add(self, body: bytes) -> tuple[str, Dataset]:
        dataset = load_csv(body)
        self._counter += 1
        dataset_id = f"upload-{self._counter}"
        self._datasets[dataset_id] = (dataset_id, dataset)
        if self._data_dir:
            (self._data_dir / f"{dataset_id}.csv").write_bytes(body)
        return dataset_id, dataset

    def get(self, dataset_id: str) -> Dataset:
        if dataset_id not in self._datasets:
            raise HTTPException(status_code=404, detail=f"unknown dataset {dataset_id!r}")
        return self._datasets[dataset_id][1]

    def list(self) -> list[dict]:
        return [
            {"id": did, "name": name, "n": ds.n, "d": ds.d}
            for did, (name, ds) in self._datasets.items()
        ]


def _prepare(store: DatasetStore, req: RenderRequest):
    norm = normalize(store.get(req.dataset_id))
    try:
        if req.axis_order is not None:
            norm = reorder_axes(norm, req.axis_order)
        if req.flips is not None:
            for idx in req.flips:
                norm = flip_axis(norm, idx)
    except DataError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    return norm, req.config.to_plot_config()


def create_app(data_dir: str | None = None, ui_dir: str | None = None,
               max_upload_bytes: int = MAX_UPLOAD_BYTES) -> FastAPI:
    app = FastAPI(title="slopepcp service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],  # local single-user tool, no auth by design
        allow_methods=["*"],
        allow_headers=["*"],
        expose_headers=["X-Config-Echo"],
    )
    store = DatasetStore(data_dir=data_dir)

    @app.post("/datasets", status_code=201)
    async def upload_dataset(request: Request) -> dict:
        body = await request.body()
        if len(body) > max_upload_bytes:
            raise HTTPException(status_code=413, detail="upload exceeds size cap")
        try:
            dataset_id, dataset = store.add(body)
        except DataError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return {
            "id": dataset_id,
            "n": dataset.n,
            "d": dataset.d,
            "dimension_names": list(dataset.dimension_names),
        }

    @app.get("/datasets")
    def list_datasets() -> list[dict]:
        return store.list()

    @app.post("/render")
    def render(req: RenderRequest, request: Request) -> Response:
        norm, config = _prepare(store, req)
        echo = json.dumps(req.config.model_dump(), sort_keys=True)
        accept = request.headers.get("accept", "")
        if "image/png" in accept:
            payload = write_image(render_raster(norm, config), config, fmt="png")
            return Response(payload, media_type="image/png",
                            headers={"X-Config-Echo": echo})
        svg = render_svg(norm, config)
        return Response(svg, media_type="image/svg+xml",
                        headers={"X-Config-Echo": echo})

    @app.post("/metrics")
    def metrics(req: RenderRequest) -> Response:
        norm, config = _prepare(store, req)
        report = metrics_mod.analytic_report(norm, config)
        return Response(metrics_mod.report_to_json(report),
                        media_type="application/json")

    if ui_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
