"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from typing import Any, Optional

from pydantic import BaseModel, Field, model_validator


class DatasetInfo(BaseModel):
    id: str
    name: str
    m: int
    n: int


class UploadResponse(BaseModel):
    id: str


class ObjectCoordinate(BaseModel):
    label: str
    obj_class: str = Field(alias="class")
    category: Optional[str] = None
    coords: list[float]

    model_config = {"populate_by_name": True}


class EmbedRequest(BaseModel):
    dataset_id: Optional[str] = None
    dataset: Optional[dict[str, Any]] = None  # inline dataset JSON document
    method: str = "bernoulli-uniform"
    alpha_x: Optional[float] = None
    alpha_y: Optional[float] = None
    alpha_xy: Optional[float] = None
    beta: Optional[float] = None
    dim: int = Field(default=2, ge=1)
    max_iter: int = Field(default=500, ge=1)
    rel_tol: float = Field(default=1e-6, gt=0)
    restarts: int = Field(default=0, ge=0)
    paper_literal_membership_weights: bool = False

    @model_validator(mode="after")
    def _exactly_one_source(self):
        if (self.dataset_id is None) == (self.dataset is None):
            raise ValueError("provide exactly one of dataset_id or dataset")
        return self


class EmbedResponse(BaseModel):
    name: str
    method: str
    params: dict[str, float]
    stress: float
    iterations: int
    converged: bool
    disconnected: bool
    objects: list[ObjectCoordinate]
    stress_trace: list[float]
    elapsed_ms: float


class SweepRequest(EmbedRequest):
    dims: list[int] = Field(default=[1, 2, 3, 4, 5, 6], min_length=1)


class SweepResponse(BaseModel):
    name: str
    method: str
    dims: list[int]
    stresses: list[float]
    normalized_stresses: list[float]
    elapsed_ms: float
