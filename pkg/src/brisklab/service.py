"""JSON-over-HTTP facade for the assessment engine.

Endpoints: POST /assess, POST /map-weights, POST /contours, GET /case-study.
Stateless; each request computes on its own RNG stream derived from the
request seed. Malformed bodies get 400 with field-level messages; weight-space
infeasibility gets 422. Samples per request are capped (BRISKLAB_SAMPLE_CAP,
default 200000) to keep the service at interactive latency; long simulation
grids are CLI-only by design.

If a built workbench bundle is present (frontend/dist next to the repository
source, or BRISKLAB_UI_DIR), it is served at /ui.
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Any

from fastapi import Body, FastAPI
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from brisklab import __version__
from brisklab.assess import assess
from brisklab.contours import MAX_GRID, contour_grid, grid_as_json
from brisklab.datasets import DatasetError, case_study_dataset, dataset_from_dict
from brisklab.scoring import MODELS
from brisklab.weights import WeightError, map_all_models

app = FastAPI(title="brisklab", version=__version__)


def _sample_cap() -> int:
    return int(os.environ.get("BRISKLAB_SAMPLE_CAP", "200000"))


def _bad_request(fields: list[dict[str, str]]) -> JSONResponse:
    return JSONResponse(
        status_code=400,
        content={"detail": {"error": "invalid request", "fields": fields}},
    )


def _infeasible(message: str) -> JSONResponse:
    return JSONResponse(
        status_code=422,
        content={"detail": {"error": "infeasible weights", "message": message}},
    )


@app.exception_handler(RequestValidationError)
async def _malformed_body(request, exc: RequestValidationError) -> JSONResponse:
    fields = [
        {"field": ".".join(str(p) for p in err.get("loc", []) if p != "body"),
         "message": err.get("msg", "invalid")}
        for err in exc.errors()
    ]
    return _bad_request(fields or [{"field": "", "message": "malformed request body"}])


@app.exception_handler(DatasetError)
async def _dataset_error(request, exc: DatasetError) -> JSONResponse:
    return _bad_request([{"field": i.field, "message": i.message} for i in exc.issues])


@app.exception_handler(WeightError)
async def _weight_error(request, exc: WeightError) -> JSONResponse:
    return _infeasible(str(exc))


@app.get("/")
def root() -> dict[str, Any]:
    return {
        "service": "brisklab",
        "version": __version__,
        "endpoints": ["POST /assess", "POST /map-weights", "POST /contours", "GET /case-study"],
    }


@app.get("/case-study")
def get_case_study() -> dict[str, Any]:
    """The bundled dataset, in the same JSON shape /assess accepts. Includes
    all three elicited weight scenarios under weight_scenarios."""
    return case_study_dataset().to_json_dict()


@app.post("/assess")
def post_assess(payload: dict = Body(...)) -> JSONResponse:
    dataset = dataset_from_dict(payload)
    cap = _sample_cap()
    if dataset.samples > cap:
        return _bad_request(
            [{"field": "samples", "message": f"exceeds the per-request cap of {cap}"}]
        )
    include = payload.get("include_samples", False)
    if not isinstance(include, bool):
        return _bad_request([{"field": "include_samples", "message": "must be a boolean"}])
    report = assess(dataset, include_sample_head=include)
    return JSONResponse(report.to_json_dict())


@app.post("/map-weights")
def post_map_weights(payload: dict = Body(...)) -> JSONResponse:
    linear = payload.get("linear")
    if (
        not isinstance(linear, list)
        or len(linear) < 2
        or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in linear)
    ):
        return _bad_request(
            [{"field": "linear", "message": "must be an array of at least two numbers"}]
        )
    c = payload.get("c", 0.2)
    if not isinstance(c, (int, float)) or isinstance(c, bool):
        return _bad_request([{"field": "c", "message": "must be a number"}])
    total = sum(linear)
    if abs(total - 1.0) > 0.02:
        raise WeightError(f"linear weights sum to {total:.4f}, expected 1")
    mapped = map_all_models([float(x) for x in linear], float(c))
    return JSONResponse(
        {
            m: {
                "weights": list(mapped[m].weights),
                "interaction_mass": mapped[m].interaction_mass if m == "multilinear" else 0.0,
            }
            for m in MODELS
        }
    )


@app.post("/contours")
def post_contours(payload: dict = Body(...)) -> JSONResponse:
    fields = []
    model = payload.get("model")
    if model not in MODELS:
        fields.append({"field": "model", "message": f"must be one of {', '.join(MODELS)}"})
    w = payload.get("w")
    if not isinstance(w, (int, float)) or isinstance(w, bool):
        fields.append({"field": "w", "message": "must be a number"})
    grid = payload.get("grid", 101)
    if not isinstance(grid, int) or isinstance(grid, bool) or not 2 <= grid <= MAX_GRID:
        fields.append({"field": "grid", "message": f"must be an integer in [2, {MAX_GRID}]"})
    c = payload.get("c", 0.2)
    if not isinstance(c, (int, float)) or isinstance(c, bool):
        fields.append({"field": "c", "message": "must be a number"})
    if fields:
        return _bad_request(fields)
    g = contour_grid(model, float(w), int(grid), float(c))
    return JSONResponse(grid_as_json(g))


def _ui_dir() -> Path | None:
    env = os.environ.get("BRISKLAB_UI_DIR")
    if env:
        p = Path(env)
        return p if p.is_dir() else None
    p = Path(__file__).resolve().parents[2] / "frontend" / "dist"
    return p if p.is_dir() else None


_ui = _ui_dir()
if _ui is not None:
    app.mount("/ui", StaticFiles(directory=_ui, html=True), name="ui")
