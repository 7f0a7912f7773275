"""
CSV instance files.

Clustering file:   header `point,color,cluster`, one row per point.
Consensus file:    header `point,color,c1,...,cm`, one clustering per c-column.
Correlation file:  first line `nodes,N`, then one `u,v` line (u < v) per "+" edge.

All files are UTF-8 with LF line endings and hold non-negative integers only. Clusterings
are written in normalized form, so write(read(f)) reproduces a normalized file byte for byte.
"""
import csv
import logging
import re
from pathlib import Path
from typing import List, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from ..config import CSV_ENCODING, CSV_LINE_TERMINATOR
from ..consensus import ConsensusInstance, Norm
from ..core import Clustering
from ..correlation import CorrelationInstance
from ..errors import FileFormatError, ValidationError
from ..fairness import ColorAssignment

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

CLUSTERING_HEADER = ["point", "color", "cluster"]

# at most 18 digits, so every accepted value fits in int64
INTEGER_CELL = r"[0-9]{1,18}"


def _read_table(path: PathLike) -> pd.DataFrame:
    try:
        return pd.read_csv(path, dtype=str, keep_default_na=False, encoding=CSV_ENCODING)
    except pd.errors.EmptyDataError:
        raise FileFormatError("no points", path)
    except pd.errors.ParserError as e:
        raise FileFormatError(f"malformed row ({e})", path)
    except UnicodeDecodeError as e:
        raise FileFormatError(f"not valid {CSV_ENCODING} ({e})", path)


def _integer_columns(frame: pd.DataFrame, path: PathLike) -> pd.DataFrame:
    """Every cell must be a non-negative int64; line numbers count the header as line 1."""
    if frame.empty:
        raise FileFormatError("no points", path)
    valid = frame.apply(lambda column: column.str.fullmatch(INTEGER_CELL))
    bad_rows = np.flatnonzero(~valid.to_numpy().all(axis=1))
    if bad_rows.size:
        row = int(bad_rows[0])
        raise FileFormatError(f"malformed row {','.join(frame.iloc[row].tolist())!r}", path, row + 2)
    return frame.astype(np.int64)


def _order_points(frame: pd.DataFrame, path: PathLike) -> pd.DataFrame:
    """Rows sorted by point id; ids must be exactly 0..n-1."""
    duplicated = np.flatnonzero(frame["point"].duplicated().to_numpy())
    if duplicated.size:
        row = int(duplicated[0])
        raise FileFormatError(f"duplicate point {int(frame['point'].iloc[row])}", path, row + 2)
    ordered = frame.sort_values("point", kind="stable").reset_index(drop=True)
    expected = np.arange(len(ordered), dtype=np.int64)
    gaps = np.flatnonzero(ordered["point"].to_numpy() != expected)
    if gaps.size:
        raise FileFormatError(f"gap in point ids: point {int(expected[gaps[0]])} is missing", path)
    return ordered


def _check_header(frame: pd.DataFrame, expected: Sequence[str], path: PathLike) -> None:
    if list(frame.columns[:len(expected)]) != list(expected):
        raise FileFormatError(f"expected header {','.join(expected)}, got {','.join(map(str, frame.columns))}", path, 1)


def read_clustering(path: PathLike) -> Tuple[Clustering, ColorAssignment]:
    frame = _read_table(path)
    _check_header(frame, CLUSTERING_HEADER, path)
    if len(frame.columns) != len(CLUSTERING_HEADER):
        raise FileFormatError(f"expected exactly the columns {','.join(CLUSTERING_HEADER)}", path, 1)
    ordered = _order_points(_integer_columns(frame, path), path)
    colors = ColorAssignment(ordered["color"].to_numpy())
    clustering = Clustering(ordered["cluster"].to_numpy())
    logger.debug(f"read {path}: n={clustering.n}, k={colors.k}, clusters={clustering.num_clusters}")
    return clustering, colors


def write_clustering(path: PathLike, c: Clustering, colors: ColorAssignment) -> None:
    if c.n != colors.n:
        raise ValidationError(f"clustering has {c.n} points but {colors.n} points are colored")
    frame = pd.DataFrame({
        "point": np.arange(c.n, dtype=np.int64),
        "color": colors.colors,
        "cluster": c.labels,
    })
    frame.to_csv(path, index=False, encoding=CSV_ENCODING, lineterminator=CSV_LINE_TERMINATOR)


def read_consensus(path: PathLike, norm: Norm = 1) -> Tuple[ConsensusInstance, ColorAssignment]:
    frame = _read_table(path)
    _check_header(frame, ["point", "color"], path)
    columns = list(frame.columns[2:])
    expected = [f"c{i}" for i in range(1, len(columns) + 1)]
    if not columns or columns != expected:
        raise FileFormatError(f"expected input columns c1,...,cm after point,color, got {','.join(columns)}", path, 1)
    ordered = _order_points(_integer_columns(frame, path), path)
    colors = ColorAssignment(ordered["color"].to_numpy())
    inputs = tuple(Clustering(ordered[column].to_numpy()) for column in columns)
    return ConsensusInstance(inputs, norm), colors


def write_consensus(path: PathLike, inst: ConsensusInstance, colors: ColorAssignment) -> None:
    if inst.n != colors.n:
        raise ValidationError(f"instance has {inst.n} points but {colors.n} points are colored")
    data = {"point": np.arange(inst.n, dtype=np.int64), "color": colors.colors}
    for i, clustering in enumerate(inst.inputs, start=1):
        data[f"c{i}"] = clustering.labels
    pd.DataFrame(data).to_csv(path, index=False, encoding=CSV_ENCODING, lineterminator=CSV_LINE_TERMINATOR)


def _parse_int(text: str, path: PathLike, line: int) -> int:
    text = text.strip()
    if re.fullmatch(INTEGER_CELL, text) is None:
        raise FileFormatError(f"malformed value {text!r}", path, line)
    return int(text)


def read_correlation(path: PathLike) -> CorrelationInstance:
    with open(path, "r", encoding=CSV_ENCODING, newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None or len(header) != 2 or header[0].strip() != "nodes":
            raise FileFormatError("first line must be 'nodes,N'", path, 1)
        n = _parse_int(header[1], path, 1)

        edges: List[Tuple[int, int]] = []
        seen = set()
        for line, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 2:
                raise FileFormatError(f"malformed row {','.join(row)!r}", path, line)
            u, v = _parse_int(row[0], path, line), _parse_int(row[1], path, line)
            if u == v:
                raise FileFormatError(f"self-loop on node {u}", path, line)
            if u > v:
                raise FileFormatError(f"edge {u},{v} must be written with u < v", path, line)
            if v >= n:
                raise FileFormatError(f"node {v} out of range 0..{n - 1}", path, line)
            if (u, v) in seen:
                raise FileFormatError(f"duplicate edge {u},{v}", path, line)
            seen.add((u, v))
            edges.append((u, v))
    return CorrelationInstance(n, frozenset(edges))


def write_correlation(path: PathLike, inst: CorrelationInstance) -> None:
    with open(path, "w", encoding=CSV_ENCODING, newline="") as handle:
        writer = csv.writer(handle, lineterminator=CSV_LINE_TERMINATOR)
        writer.writerow(["nodes", inst.n])
        writer.writerows(sorted(inst.plus_edges))
