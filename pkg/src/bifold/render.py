"""Serialization of embeddings to coordinate files and SVG scatter plots."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from .dataset import Dataset, ObjectClass
from .embedding import EmbeddingResult
from .errors import DataError


def coordinates_payload(result: EmbeddingResult, dataset: Dataset) -> dict:
    """Per-object coordinate records plus run summary, as a plain dict."""
    if result.coords.shape[0] != dataset.m + dataset.n:
        raise DataError("result does not match dataset size", code="DIMENSION_MISMATCH")
    meta_by_key = {(e.obj_class, e.index): e for e in dataset.meta}
    objects = []
    labels = dataset.labels()
    for k in range(dataset.m + dataset.n):
        cls = ObjectClass.ROW if k < dataset.m else ObjectClass.COLUMN
        idx = k if k < dataset.m else k - dataset.m
        meta = meta_by_key[(cls, idx)]
        objects.append(
            {
                "label": labels[k],
                "class": cls.value,
                "category": meta.category,
                "coords": [float(v) for v in result.coords[k]],
            }
        )
    return {
        "name": dataset.name,
        "stress": result.stress,
        "iterations": result.iterations,
        "converged": result.converged,
        "objects": objects,
    }


def to_coordinates_json(
    result: EmbeddingResult, dataset: Dataset, method=None, params=None
) -> str:
    payload = coordinates_payload(result, dataset)
    if method is not None:
        payload["method"] = getattr(method, "value", str(method))
    if params is not None:
        payload["params"] = {
            "alpha_x": params.alpha_x,
            "alpha_y": params.alpha_y,
            "alpha_xy": params.alpha_xy,
            "beta": params.beta,
        }
    return json.dumps(payload, indent=2)


def to_coordinates_csv(result: EmbeddingResult, dataset: Dataset) -> str:
    payload = coordinates_payload(result, dataset)
    d = result.coords.shape[1]
    lines = ["label,class,category," + ",".join(f"x{i + 1}" for i in range(d))]
    for obj in payload["objects"]:
        cat = obj["category"] or ""
        coords = ",".join(repr(v) for v in obj["coords"])
        lines.append(f"{obj['label']},{obj['class']},{cat},{coords}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class PlotSpec:
    width: int = 800
    height: int = 600
    marker_size: float = 6.0
    show_labels: bool = False
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise DataError("plot dimensions must be positive", code="BAD_PARAM")


def edges_from_dataset(dataset: Dataset) -> tuple[tuple[int, int], ...]:
    """All (row, column) pairs with a positive relation."""
    cells = dataset.matrix.cells
    return tuple(
        (int(i), int(j)) for i, j in zip(*(cells == 1).nonzero())
    )


def _category_color(category: str | None, cls: ObjectClass) -> str:
    if category is None:
        return "#4878a8" if cls is ObjectClass.ROW else "#b8544f"
    digest = hashlib.md5(category.encode("utf-8")).digest()
    hue = int.from_bytes(digest[:2], "big") % 360
    return f"hsl({hue},65%,45%)"


def to_svg(result: EmbeddingResult, dataset: Dataset, spec: PlotSpec = PlotSpec()) -> str:
    """Deterministic SVG scatter: circles for rows, squares for columns.

    Only the first two aligned axes are drawn; 1-D embeddings are plotted
    against a zero second axis with a diagnostic comment.
    """
    size = dataset.m + dataset.n
    if result.coords.shape[0] != size:
        raise DataError("result does not match dataset size", code="DIMENSION_MISMATCH")
    for i, j in spec.edges:
        if not (0 <= i < dataset.m and 0 <= j < dataset.n):
            raise DataError(f"edge ({i},{j}) out of range", code="BAD_EDGE")
    coords = result.coords
    dim = coords.shape[1]
    xs = coords[:, 0]
    ys = coords[:, 1] if dim >= 2 else xs * 0.0

    pad = 0.06
    span_x = float(xs.max() - xs.min()) or 1.0
    span_y = float(ys.max() - ys.min()) or 1.0
    x0 = float(xs.min()) - pad * span_x
    y0 = float(ys.min()) - pad * span_y
    sx = spec.width / (span_x * (1 + 2 * pad))
    sy = spec.height / (span_y * (1 + 2 * pad))

    def px(v: float) -> str:
        return f"{(v - x0) * sx:.3f}"

    def py(v: float) -> str:
        # SVG y grows downward
        return f"{spec.height - (v - y0) * sy:.3f}"

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{spec.width}" '
        f'height="{spec.height}" viewBox="0 0 {spec.width} {spec.height}">'
    ]
    if dim < 2:
        parts.append("<!-- 1-D embedding plotted against a zero second axis -->")
    for i, j in spec.edges:
        parts.append(
            f'<line x1="{px(xs[i])}" y1="{py(ys[i])}" '
            f'x2="{px(xs[dataset.m + j])}" y2="{py(ys[dataset.m + j])}" '
            'stroke="#cccccc" stroke-width="0.5"/>'
        )
    meta_by_key = {(e.obj_class, e.index): e for e in dataset.meta}
    labels = dataset.labels()
    r = spec.marker_size / 2
    for k in range(size):
        cls = ObjectClass.ROW if k < dataset.m else ObjectClass.COLUMN
        idx = k if k < dataset.m else k - dataset.m
        meta = meta_by_key[(cls, idx)]
        color = meta.display_color or _category_color(meta.category, cls)
        cx, cy = px(xs[k]), py(ys[k])
        if cls is ObjectClass.ROW:
            parts.append(f'<circle cx="{cx}" cy="{cy}" r="{r}" fill="{color}"/>')
        else:
            parts.append(
                f'<rect x="{float(cx) - r:.3f}" y="{float(cy) - r:.3f}" '
                f'width="{spec.marker_size}" height="{spec.marker_size}" fill="{color}"/>'
            )
        if spec.show_labels:
            text = labels[k].replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
            parts.append(
                f'<text x="{cx}" y="{float(cy) - r - 2:.3f}" font-size="9" '
                f'text-anchor="middle">{text}</text>'
            )
    parts.append("</svg>")
    return "\n".join(parts)
