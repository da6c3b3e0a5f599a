"""
File formats: ideal files, JSON documents, JSON-lines traces and epoch logs,
and the benchmark CSV written through pandas.
"""

import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Union

import pandas as pd

from ..algebra import Polynomial, parse_polynomial
from ..core import FieldConstants, ParseError, get_logger, log_performance
from ..ideals import DistributionSpec, IdealSample

# Get logger for this module
logger = get_logger("file_utils")

PathLike = Union[str, Path]

BENCHMARK_COLUMNS = ["seed_index", "strategy", "additions", "basis_size", "deg_max", "dimension"]

_VARIABLE = re.compile(r"x(\d+)")


@dataclass(frozen=True)
class IdealFile:
    """Generators read from disk, with the distribution metadata if present."""

    generators: List[Polynomial]
    spec: Optional[DistributionSpec] = None
    seed: Optional[int] = None


def _infer_variable_count(lines: Sequence[str]) -> int:
    indices = [int(m) for line in lines for m in _VARIABLE.findall(line)]
    return max(indices, default=0) + 1


def parse_ideal_text(text: str, n: Optional[int] = None, p: int = FieldConstants.DEFAULT_PRIME) -> List[Polynomial]:
    """
    Parse one polynomial per line. Blank lines and lines starting with '#'
    are skipped; parse errors report the line in the file.
    """
    numbered = [
        (k + 1, line)
        for k, line in enumerate(text.splitlines())
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if n is None:
        n = _infer_variable_count([line for _, line in numbered])
    return [parse_polynomial(line, n, p, line=number) for number, line in numbered]


def read_ideal_file(path: PathLike, n: Optional[int] = None, p: int = FieldConstants.DEFAULT_PRIME) -> IdealFile:
    """
    Read an ideal from a JSON record {spec, seed, generators} or from a
    plain text file with one polynomial per line.

    Raises:
        ParseError: If the file cannot be parsed
    """
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() == ".json" or text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(f"invalid JSON in {path}: {e.msg}", line=e.lineno, column=e.colno) from e
        if not isinstance(data, dict) or "generators" not in data:
            raise ParseError(f"{path} has no 'generators' list")
        if "spec" in data:
            sample = IdealSample.from_dict(data, p)
            ideal = IdealFile(list(sample.generators), sample.spec, sample.seed)
        else:
            generators = parse_ideal_text("\n".join(data["generators"]), data.get("n", n), p)
            ideal = IdealFile(generators)
    else:
        ideal = IdealFile(parse_ideal_text(text, n, p))

    if not ideal.generators:
        raise ParseError(f"{path} contains no polynomials")
    logger.debug(f"Read {len(ideal.generators)} generators from {path}")
    return ideal


def write_ideal_file(path: PathLike, sample: IdealSample):
    write_json(path, sample.to_dict())


def write_json(path: PathLike, data: dict):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(data, indent=2) + "\n", encoding="utf-8")


def read_json(path: PathLike) -> dict:
    path = Path(path)
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON in {path}: {e.msg}", line=e.lineno, column=e.colno) from e


def write_jsonl(path: PathLike, records: Iterable[dict], append: bool = False):
    """Write one JSON object per line."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("a" if append else "w", encoding="utf-8") as handle:
        for record in records:
            handle.write(json.dumps(record) + "\n")


def read_jsonl(path: PathLike) -> List[dict]:
    records = []
    with Path(path).open(encoding="utf-8") as handle:
        for number, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                records.append(json.loads(line))
            except json.JSONDecodeError as e:
                raise ParseError(f"invalid JSON line in {path}: {e.msg}", line=number, column=e.colno) from e
    return records


def append_epoch_log(path: PathLike, record: dict):
    write_jsonl(path, [record], append=True)


def benchmark_frame(rows: Iterable[dict]) -> pd.DataFrame:
    """Per-sample benchmark rows in the fixed column order."""
    frame = pd.DataFrame(list(rows), columns=BENCHMARK_COLUMNS)
    frame["dimension"] = frame["dimension"].astype("Int64")
    return frame


def write_benchmark_csv(path: PathLike, frame: pd.DataFrame):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with log_performance(logger, f"Writing {len(frame)} benchmark rows"):
        frame.to_csv(path, index=False)
