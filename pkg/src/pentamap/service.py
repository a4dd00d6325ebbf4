"""Local HTTP endpoint serving point-to-linkage evaluation and tiling data.

The evaluation context (harmonic field, tiling patches) is built once at
startup and never mutated, so concurrent requests share it freely.  The
wire schema matches the CLI's JSON frames and carries a protocolVersion.
"""

from __future__ import annotations

import hashlib
import math
import os
import threading
from typing import Annotated

from fastapi import FastAPI, HTTPException, Query
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from . import __version__
from .conformal import build_quad, fold, geometry_hash, load_field, solve_field
from .errors import OutOfRangeError, OutsideDiskError, ValidationError
from .linkage import DEFAULT_MESH_SIZE, evaluate
from .render import frame_payload, tiling_json
from .tiling import generate_tiling

PROTOCOL_VERSION = 1

MAX_TILING_RADIUS = 0.996  # keeps the patch under ~1000 faces


class EvalRequest(BaseModel):
    point: Annotated[list[float], Field(min_length=2, max_length=2)]
    wantTrace: bool = False


def _field_hash(field) -> str:
    digest = hashlib.sha256()
    digest.update(geometry_hash(field.quad).encode())
    digest.update(field.values.tobytes())
    return digest.hexdigest()[:16]


def create_app(field=None, cache_path: str | None = None,
               mesh_size: float = DEFAULT_MESH_SIZE) -> FastAPI:
    """Build the application; the field loads from cache_path when given."""
    if field is None:
        quad = build_quad()
        path = cache_path or os.environ.get("PENTAMAP_CACHE")
        if path and os.path.exists(path):
            field = load_field(path, quad)
        else:
            field = solve_field(quad, mesh_size)

    app = FastAPI(title="pentamap", version=__version__)
    app.add_middleware(
        CORSMiddleware,
        allow_origin_regex=r"^https?://(localhost|127\.0\.0\.1)(:\d+)?$",
        allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.field = field
    app.state.field_hash = _field_hash(field)
    tiling_cache: dict[float, dict] = {}
    tiling_lock = threading.Lock()

    @app.get("/health")
    def health() -> dict:
        return {
            "status": "ok",
            "protocolVersion": PROTOCOL_VERSION,
            "version": __version__,
            "modulus": field.modulus,
            "meshSize": field.mesh_size,
            "triangleCount": len(field.triangles),
            "cacheHash": app.state.field_hash,
        }

    @app.get("/tiling")
    def tiling(radius: Annotated[float, Query(gt=0.0, lt=1.0)] = 0.95) -> dict:
        radius = min(radius, MAX_TILING_RADIUS)
        key = round(radius, 6)
        with tiling_lock:
            cached = tiling_cache.get(key)
        if cached is None:
            cached = tiling_json(generate_tiling(2.0 * math.atanh(key)))
            cached["protocolVersion"] = PROTOCOL_VERSION
            with tiling_lock:
                tiling_cache[key] = cached
        return cached

    @app.post("/eval")
    def eval_point(request: EvalRequest) -> dict:
        z = complex(request.point[0], request.point[1])
        if not all(math.isfinite(c) for c in (z.real, z.imag)) or abs(z) >= 1.0:
            raise HTTPException(
                status_code=422,
                detail="point must lie strictly inside the unit disk",
            )
        try:
            trace = evaluate(z, field)
        except (OutsideDiskError, OutOfRangeError, ValidationError) as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from None
        payload = frame_payload(trace)
        payload["protocolVersion"] = PROTOCOL_VERSION
        if request.wantTrace:
            reflections = [
                fold(p.z, field.quad).reflections for p in trace.sample_points
            ]
            payload["trace"] = {
                "psi": list(trace.psi_values),
                "mobius": [trace.mobius_param.real, trace.mobius_param.imag],
                "foldReflections": reflections,
            }
        return payload

    return app


def serve(host: str = "127.0.0.1", port: int = 8765,
          cache_path: str | None = None,
          mesh_size: float = DEFAULT_MESH_SIZE) -> None:
    """Run the endpoint until interrupted."""
    import uvicorn

    app = create_app(cache_path=cache_path, mesh_size=mesh_size)
    uvicorn.run(app, host=host, port=port, log_level="warning")
