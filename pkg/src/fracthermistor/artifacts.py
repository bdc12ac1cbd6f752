"""Writers for CSV tables and run manifests.

Numbers are written with 17 significant digits so that every double
round-trips exactly; the output never depends on the locale. Manifests
record the SHA-256 digest of every output so that tampering is detected by
:func:`verify_manifest`.
"""

from __future__ import annotations

import csv
import hashlib
import json
import logging
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Sequence, Union

import numpy as np

from fracthermistor.models.records import ConvergenceStudy, RunManifest, RunRecord
from fracthermistor.spectral_basis import synthesize

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

TRAJECTORY_COLUMNS = ("k", "t", "l2_norm", "h1_norm", "picard_iters", "picard_residual")
SOLUTION_COLUMNS = ("x", "u")
STUDY_COLUMNS = ("axis_value", "error_h1", "error_l2")

#: Uniform points at which final solutions are tabulated.
SOLUTION_POINTS = 201


def format_value(value: Any) -> str:
    """Format one CSV cell: integers as is, floats with 17 significant digits."""
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return "%.17g" % float(value)
    return str(value)


def write_csv(path: PathLike, columns: Sequence[str], rows: Iterable[Mapping[str, Any]]) -> Path:
    """Write rows as CSV with a header line and ``\\n`` line ends.

    Args:
        path: Output file.
        columns: Column names, in order.
        rows: Mappings holding at least ``columns``.

    Returns:
        The path written.
    """
    target = Path(path)
    with target.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_value(row[column]) for column in columns])
    logger.debug("Wrote %s", target)
    return target


def read_csv(path: PathLike) -> List[Dict[str, str]]:
    """Read a CSV written by :func:`write_csv` as a list of string rows."""
    with Path(path).open(encoding="utf-8", newline="") as handle:
        return list(csv.DictReader(handle))


def trajectory_rows(record: RunRecord) -> List[Dict[str, Any]]:
    """Rows of ``trajectory.csv``."""
    return record.rows()


def solution_rows(record: RunRecord, points: int = SOLUTION_POINTS) -> List[Dict[str, Any]]:
    """Rows of ``solution_final.csv``: u_N(T) at uniform points of [-1, 1]."""
    x = np.linspace(-1.0, 1.0, points)
    values = synthesize(record.final, x)
    return [{"x": xi, "u": ui} for xi, ui in zip(x, values)]


def study_rows(study: ConvergenceStudy) -> List[Dict[str, Any]]:
    """Rows of ``study.csv``, closed by a footer row carrying the fitted order."""
    rows: List[Dict[str, Any]] = list(study.rows())
    rows.append({"axis_value": "fitted_order", "error_h1": study.fitted_order, "error_l2": study.mode})
    return rows


def sha256_file(path: PathLike) -> str:
    """Return the hex SHA-256 digest of a file."""
    digest = hashlib.sha256()
    with Path(path).open("rb") as handle:
        for chunk in iter(lambda: handle.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()


def utc_now() -> str:
    """Return the current UTC time in ISO-8601 form."""
    return datetime.now(timezone.utc).isoformat()


def write_manifest(out_dir: PathLike, manifest: RunManifest, outputs: Sequence[PathLike]) -> Path:
    """Checksum ``outputs`` into the manifest and write ``manifest.json``.

    Args:
        out_dir: Directory holding the outputs.
        manifest: Manifest without checksums.
        outputs: Files to checksum; recorded by name relative to ``out_dir``.

    Returns:
        The manifest path.
    """
    directory = Path(out_dir)
    checksums = {Path(p).name: sha256_file(directory / Path(p).name) for p in outputs}
    completed = manifest.model_copy(update={"outputs": checksums})
    target = directory / "manifest.json"
    target.write_text(json.dumps(completed.model_dump(), indent=2, sort_keys=True) + "\n", encoding="utf-8")
    logger.info("Wrote manifest with %d outputs to %s", len(checksums), target)
    return target


def load_manifest(path: PathLike) -> RunManifest:
    """Read a manifest written by :func:`write_manifest`."""
    return RunManifest.model_validate_json(Path(path).read_text(encoding="utf-8"))


def verify_manifest(path: PathLike) -> List[str]:
    """Recompute the output checksums of a manifest.

    Args:
        path: Path of ``manifest.json``.

    Returns:
        Names of outputs that are missing or whose digest changed; empty
        when every output is intact.
    """
    manifest_path = Path(path)
    manifest = load_manifest(manifest_path)
    mismatched = []
    for name, expected in sorted(manifest.outputs.items()):
        output = manifest_path.parent / name
        if not output.exists() or sha256_file(output) != expected:
            mismatched.append(name)
    if mismatched:
        logger.warning("Manifest %s: %d outputs changed", manifest_path, len(mismatched))
    return mismatched
