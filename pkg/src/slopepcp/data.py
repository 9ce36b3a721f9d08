"""Dataset model, CSV ingestion, normalization, axis manipulation and
seeded synthetic generators."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .rng import Xorshift64Star

LABEL_COLUMN = "label"
NOISE_LABEL = -1


class DataError(ValueError):
    """Base class for dataset construction and parsing failures."""


class ParseError(DataError):
    pass


class StructureError(DataError):
    pass


class DimensionalityError(DataError):
    pass


@dataclass(frozen=True)
class Dataset:
    """Named dimensions x records of raw finite values, optional labels.

    labels, when present, assign an integer cluster id per record; -1
    marks background noise.
    """

    dimension_names: tuple[str, ...]
    records: np.ndarray  # (n, d) float64
    labels: np.ndarray | None = None  # (n,) int

    def __post_init__(self) -> None:
        rec = np.asarray(self.records, dtype=np.float64)
        object.__setattr__(self, "records", rec)
        if rec.ndim != 2:
            raise StructureError(f"records must be 2-D, got shape {rec.shape}")
        n, d = rec.shape
        if d < 2:
            raise DimensionalityError(f"need at least 2 dimensions, got {d}")
        if n < 1:
            raise StructureError("need at least one record")
        if len(self.dimension_names) != d:
            raise StructureError(
                f"{len(self.dimension_names)} names for {d} dimensions"
            )
        if not np.all(np.isfinite(rec)):
            raise DataError("records contain non-finite values")
        if self.labels is not None:
            lab = np.asarray(self.labels, dtype=np.int64)
            object.__setattr__(self, "labels", lab)
            if lab.shape != (n,):
                raise StructureError("labels length must match record count")

    @property
    def n(self) -> int:
        return self.records.shape[0]

    @property
    def d(self) -> int:
        return self.records.shape[1]


@dataclass(frozen=True)
class NormalizedDataset:
    """Dataset with values min-max scaled into [0, 1] per dimension.

    ranges keeps the original (min, max) per dimension for tick labels;
    flipped marks axes whose values have been mirrored (v -> 1 - v).
    """

    dimension_names: tuple[str, ...]
    values: np.ndarray  # (n, d) in [0, 1]
    ranges: tuple[tuple[float, float], ...]
    labels: np.ndarray | None = None
    flipped: tuple[bool, ...] = field(default=())

    def __post_init__(self) -> None:
        vals = np.asarray(self.values, dtype=np.float64)
        object.__setattr__(self, "values", vals)
        if not self.flipped:
            object.__setattr__(self, "flipped", (False,) * vals.shape[1])
        if vals.min(initial=0.0) < 0.0 or vals.max(initial=1.0) > 1.0:
            raise DataError("normalized values must lie in [0, 1]")

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def d(self) -> int:
        return self.values.shape[1]


def load_csv(data: bytes | str) -> Dataset:
    """Parse CSV text: header row, numeric cells, optional 'label' column."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not valid UTF-8: {exc}") from exc
    reader = csv.reader(io.StringIO(data))
    try:
        header = next(reader)
    except StopIteration:
        raise StructureError("empty file") from None
    header = [name.strip() for name in header]

    label_idx = header.index(LABEL_COLUMN) if LABEL_COLUMN in header else None
    names = tuple(name for i, name in enumerate(header) if i != label_idx)
    if len(names) < 2:
        raise DimensionalityError(
            f"need at least 2 value columns, got {len(names)}"
        )

    rows: list[list[float]] = []
    labels: list[int] = []
    for rownum, row in enumerate(reader, start=2):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue  # ignore trailing blank lines
        if len(row) != len(header):
            raise StructureError(
                f"row {rownum}: expected {len(header)} cells, got {len(row)}"
            )
        values = []
        for colnum, cell in enumerate(row):
            if colnum == label_idx:
                try:
                    labels.append(int(float(cell)))
                except ValueError:
                    raise ParseError(
                        f"row {rownum}, column '{header[colnum]}': "
                        f"non-integer label {cell!r}"
                    ) from None
                continue
            try:
                v = float(cell)
            except ValueError:
                raise ParseError(
                    f"row {rownum}, column '{header[colnum]}': "
                    f"non-numeric cell {cell!r}"
                ) from None
            if not math.isfinite(v):
                raise DataError(
                    f"row {rownum}, column '{header[colnum]}': "
                    f"non-finite value {cell!r}"
                )
            values.append(v)
        rows.append(values)

    if not rows:
        raise StructureError("no data rows")
    return Dataset(
        dimension_names=names,
        records=np.array(rows, dtype=np.float64),
        labels=np.array(labels, dtype=np.int64) if label_idx is not None else None,
    )


def serialize_csv(dataset: Dataset) -> str:
    """Dataset back to CSV text; floats printed with 17 significant digits
    so values round-trip exactly."""
    out = io.StringIO()
    header = list(dataset.dimension_names)
    if dataset.labels is not None:
        header.append(LABEL_COLUMN)
    out.write(",".join(header) + "\n")
    for i in range(dataset.n):
        cells = [f"{v:.17g}" for v in dataset.records[i]]
        if dataset.labels is not None:
            cells.append(str(int(dataset.labels[i])))
        out.write(",".join(cells) + "\n")
    return out.getvalue()


def normalize(dataset: Dataset) -> NormalizedDataset:
    """Per-dimension min-max scaling; a constant dimension maps to 0.5."""
    rec = dataset.records
    lo = rec.min(axis=0)
    hi = rec.max(axis=0)
    span = hi - lo
    vals = np.empty_like(rec)
    for j in range(rec.shape[1]):
        if span[j] == 0.0:
            vals[:, j] = 0.5
        else:
            vals[:, j] = (rec[:, j] - lo[j]) / span[j]
    return NormalizedDataset(
        dimension_names=dataset.dimension_names,
        values=vals,
        ranges=tuple((float(lo[j]), float(hi[j])) for j in range(rec.shape[1])),
        labels=dataset.labels,
    )


def reorder_axes(data: NormalizedDataset, permutation) -> NormalizedDataset:
    """Permute dimensions; permutation[i] is the source index of new axis i."""
    perm = list(permutation)
    if sorted(perm) != list(range(data.d)):
        raise DataError(f"not a permutation of 0..{data.d - 1}: {perm}")
    return replace(
        data,
        dimension_names=tuple(data.dimension_names[j] for j in perm),
        values=data.values[:, perm],
        ranges=tuple(data.ranges[j] for j in perm),
        flipped=tuple(data.flipped[j] for j in perm),
    )


def flip_axis(data: NormalizedDataset, index: int) -> NormalizedDataset:
    """Mirror one axis (v -> 1 - v) and record the flip for tick rendering."""
    if not 0 <= index < data.d:
        raise DataError(f"axis index {index} out of range [0, {data.d})")
    vals = data.values.copy()
    vals[:, index] = 1.0 - vals[:, index]
    flipped = list(data.flipped)
    flipped[index] = not flipped[index]
    return replace(data, values=vals, flipped=tuple(flipped))


@dataclass(frozen=True)
class ClusterDef:
    count: int
    center: tuple[float, ...]   # per-dimension, in [0, 1]
    spread: tuple[float, ...]   # per-dimension uniform half-width


@dataclass(frozen=True)
class ClusterSpec:
    clusters: tuple[ClusterDef, ...]
    noise_count: int = 0

    def __post_init__(self) -> None:
        if not self.clusters and self.noise_count == 0:
            raise DataError("spec generates no records")
        dims = {len(c.center) for c in self.clusters}
        if len(dims) > 1:
            raise DataError("all cluster centers must have the same dimension")
        for c in self.clusters:
            if c.count < 0 or self.noise_count < 0:
                raise DataError("counts must be >= 0")
            if len(c.spread) != len(c.center):
                raise DataError("spread length must match center length")

    @property
    def d(self) -> int:
        return len(self.clusters[0].center)


def gen_uniform_noise(n: int, d: int, seed: int) -> Dataset:
    """n x d i.i.d. uniform [0, 1) values from the documented xorshift64*
    generator; row-major fill order, no labels."""
    if n < 1 or d < 2:
        raise DataError(f"need n >= 1 and d >= 2, got n={n}, d={d}")
    rng = Xorshift64Star(seed)
    vals = np.fromiter(
        (rng.next_float() for _ in range(n * d)), dtype=np.float64, count=n * d
    ).reshape(n, d)
    names = tuple(f"dim{j + 1}" for j in range(d))
    return Dataset(dimension_names=names, records=vals)


def gen_clustered(spec: ClusterSpec, seed: int) -> Dataset:
    """Clusters as uniform boxes [center-spread, center+spread] clipped to
    [0, 1], labelled by cluster index; noise records labelled -1."""
    rng = Xorshift64Star(seed)
    d = spec.d
    rows: list[list[float]] = []
    labels: list[int] = []
    for cid, cluster in enumerate(spec.clusters):
        for _ in range(cluster.count):
            row = []
            for c, s in zip(cluster.center, cluster.spread):
                v = rng.uniform(c - s, c + s)
                row.append(min(1.0, max(0.0, v)))
            rows.append(row)
            labels.append(cid)
    for _ in range(spec.noise_count):
        rows.append([rng.next_float() for _ in range(d)])
        labels.append(NOISE_LABEL)
    names = tuple(f"dim{j + 1}" for j in range(d))
    return Dataset(
        dimension_names=names,
        records=np.array(rows, dtype=np.float64),
        labels=np.array(labels, dtype=np.int64),
    )
