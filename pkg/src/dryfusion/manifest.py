"""Dataset manifest: CSV schema, writing, ingestion and validation.

The manifest is the interchange format between the simulator (or a lab
spreadsheet) and the experiment harness: UTF-8 CSV, header row, '.' decimal
separator, one row per slice. Floats are written with ``repr`` so a
write -> ingest -> write round trip is byte-identical.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

from .domain import (
    DryingConditions,
    DryingRecord,
    MoistureContentError,
    SliceSample,
    compute_final_mc,
    validate_record,
)

MANIFEST_COLUMNS = (
    "sample_id",
    "run_id",
    "temperature_C",
    "air_velocity_mps",
    "drying_time_min",
    "initial_weight_g",
    "final_weight_g",
    "initial_mc",
    "slices_in_run",
    "image_path",
)


class ManifestError(ValueError):
    """Structural manifest problem: missing file, bad header, unparsable cell."""


class ManifestValidationError(ValueError):
    """Manifest parsed but one or more rows violate dataset invariants."""

    def __init__(self, violations: list[str]):
        self.violations = violations
        super().__init__(
            f"{len(violations)} manifest violation(s):\n  " + "\n  ".join(violations)
        )


@dataclass(frozen=True)
class ManifestRow:
    sample_id: str
    run_id: str
    temperature_c: float
    air_velocity_mps: float
    drying_time_min: float
    initial_weight_g: float
    final_weight_g: float
    initial_mc: float
    slices_in_run: int
    image_path: str


def _format_value(value: Union[str, int, float]) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_manifest(rows: list[ManifestRow], path: Path) -> None:
    """Write rows in manifest column order; newline handling is pinned so
    output bytes depend only on row content."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(MANIFEST_COLUMNS)
        for row in rows:
            writer.writerow(
                [
                    row.sample_id,
                    row.run_id,
                    _format_value(row.temperature_c),
                    _format_value(row.air_velocity_mps),
                    _format_value(row.drying_time_min),
                    _format_value(row.initial_weight_g),
                    _format_value(row.final_weight_g),
                    _format_value(row.initial_mc),
                    str(row.slices_in_run),
                    row.image_path,
                ]
            )


def read_manifest(path: Path) -> list[ManifestRow]:
    """Parse a manifest file, reporting the row and column of any bad cell."""
    path = Path(path)
    if not path.exists():
        raise ManifestError(f"manifest not found: {path}")
    rows: list[ManifestRow] = []
    with open(path, "r", encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise ManifestError(f"manifest {path} is empty") from None
        if tuple(header) != MANIFEST_COLUMNS:
            raise ManifestError(
                f"manifest header mismatch: expected {list(MANIFEST_COLUMNS)}, "
                f"got {header}"
            )
        for line_no, raw in enumerate(reader, start=2):
            if len(raw) != len(MANIFEST_COLUMNS):
                raise ManifestError(
                    f"line {line_no}: expected {len(MANIFEST_COLUMNS)} columns, "
                    f"got {len(raw)}"
                )
            values = dict(zip(MANIFEST_COLUMNS, raw))
            parsed: dict[str, Union[str, int, float]] = {}
            for column in (
                "temperature_C",
                "air_velocity_mps",
                "drying_time_min",
                "initial_weight_g",
                "final_weight_g",
                "initial_mc",
            ):
                try:
                    parsed[column] = float(values[column])
                except ValueError:
                    raise ManifestError(
                        f"line {line_no}, column {column!r}: "
                        f"cannot parse {values[column]!r} as a number"
                    ) from None
            try:
                parsed["slices_in_run"] = int(values["slices_in_run"])
            except ValueError:
                raise ManifestError(
                    f"line {line_no}, column 'slices_in_run': "
                    f"cannot parse {values['slices_in_run']!r} as an integer"
                ) from None
            rows.append(
                ManifestRow(
                    sample_id=values["sample_id"],
                    run_id=values["run_id"],
                    temperature_c=parsed["temperature_C"],
                    air_velocity_mps=parsed["air_velocity_mps"],
                    drying_time_min=parsed["drying_time_min"],
                    initial_weight_g=parsed["initial_weight_g"],
                    final_weight_g=parsed["final_weight_g"],
                    initial_mc=parsed["initial_mc"],
                    slices_in_run=parsed["slices_in_run"],
                    image_path=values["image_path"],
                )
            )
    return rows


def row_to_record(row: ManifestRow, base_dir: Path) -> DryingRecord:
    """Build a DryingRecord with ground-truth MC derived from the weights."""
    sample = SliceSample(
        sample_id=row.sample_id,
        run_id=row.run_id,
        initial_weight_g=row.initial_weight_g,
        final_weight_g=row.final_weight_g,
        initial_mc=row.initial_mc,
    )
    try:
        mc = compute_final_mc(sample)
    except MoistureContentError:
        mc = float("nan")
    return DryingRecord(
        conditions=DryingConditions(
            row.temperature_c, row.air_velocity_mps, row.drying_time_min
        ),
        sample=sample,
        image_ref=str(Path(base_dir) / row.image_path),
        ground_truth_mc=mc,
    )


def record_to_row(record: DryingRecord, slices_in_run: int, image_path: str) -> ManifestRow:
    return ManifestRow(
        sample_id=record.sample.sample_id,
        run_id=record.sample.run_id,
        temperature_c=record.conditions.temperature_c,
        air_velocity_mps=record.conditions.air_velocity_mps,
        drying_time_min=record.conditions.drying_time_min,
        initial_weight_g=record.sample.initial_weight_g,
        final_weight_g=record.sample.final_weight_g,
        initial_mc=record.sample.initial_mc,
        slices_in_run=slices_in_run,
        image_path=image_path,
    )


def ingest_manifest(
    path: Path, strict: bool = False, lenient: bool = False
) -> tuple[list[DryingRecord], list[str]]:
    """Load and validate a manifest into drying records.

    Every violation names its manifest line. With ``lenient`` the records
    are returned alongside the violation list; otherwise any violation
    raises :class:`ManifestValidationError`.
    """
    path = Path(path)
    rows = read_manifest(path)
    base_dir = path.parent
    violations: list[str] = []

    seen_ids: dict[str, int] = {}
    run_conditions: dict[str, tuple[tuple[float, float, float], int, int]] = {}
    records: list[DryingRecord] = []

    for line_no, row in enumerate(rows, start=2):
        if row.sample_id in seen_ids:
            violations.append(
                f"line {line_no}: duplicate sample_id {row.sample_id!r} "
                f"(first seen line {seen_ids[row.sample_id]})"
            )
        else:
            seen_ids[row.sample_id] = line_no

        conditions_key = (row.temperature_c, row.air_velocity_mps, row.drying_time_min)
        known = run_conditions.get(row.run_id)
        if known is None:
            run_conditions[row.run_id] = (conditions_key, row.slices_in_run, line_no)
        else:
            if known[0] != conditions_key:
                violations.append(
                    f"line {line_no}: run {row.run_id!r} conditions disagree "
                    f"with line {known[2]}"
                )
            if known[1] != row.slices_in_run:
                violations.append(
                    f"line {line_no}: run {row.run_id!r} slices_in_run disagrees "
                    f"with line {known[2]}"
                )

        image_file = base_dir / row.image_path
        if not image_file.exists():
            violations.append(
                f"line {line_no}: image file missing: {image_file}"
            )

        record = row_to_record(row, base_dir)
        for problem in validate_record(record, strict=strict):
            violations.append(f"line {line_no}: {problem}")
        records.append(record)

    per_run_counts: dict[str, int] = {}
    for row in rows:
        per_run_counts[row.run_id] = per_run_counts.get(row.run_id, 0) + 1
    for run_id, count in per_run_counts.items():
        declared = run_conditions[run_id][1]
        if count != declared:
            violations.append(
                f"run {run_id!r}: declares {declared} slices but has {count} rows"
            )

    if violations and not lenient:
        raise ManifestValidationError(violations)
    return records, violations
