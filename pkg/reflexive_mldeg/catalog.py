"""Catalog runs: ML degrees for every block of a vertex file, stored as JSON lines.

Entries are computed by a pool of worker threads and written strictly in input
order, so an interrupted run can be resumed by skipping the ids already present
in the output file.
"""

from __future__ import annotations

import csv
import functools
import json
import logging
import pathlib
import time
from dataclasses import dataclass, field

import anyio

from reflexive_mldeg.exceptions import MLDegreeError
from reflexive_mldeg.formats import VertexBlock, iter_ks_blocks
from reflexive_mldeg.lattice import Polytope, f_vector, is_reflexive
from reflexive_mldeg.likelihood import ml_degree
from reflexive_mldeg.score import design_matrix
from reflexive_mldeg.types import CatalogConfig, CatalogRecord, TrackerConfig

log = logging.getLogger("reflexive_mldeg")

CSV_FIELDS = list(CatalogRecord.__annotations__)


@dataclass
class CatalogOutcome:
    """Records in input order, plus the entries that could not be processed."""

    records: list[CatalogRecord] = field(default_factory=list)
    resumed: int = 0
    skipped: list[tuple[str, str]] = field(default_factory=list)


def entry_id(stem: str, block: VertexBlock) -> str:
    return f"{stem}:{block.index}"


def catalog_record(
    block: VertexBlock, record_id: str, tracker: TrackerConfig, timings: bool = True
) -> CatalogRecord:
    """Compute one record; raises :class:`MLDegreeError` for unusable polytopes."""
    start = time.perf_counter()
    polytope = Polytope(block.points, name=record_id)
    report = ml_degree(design_matrix(polytope), None, tracker)
    elapsed = int((time.perf_counter() - start) * 1000)
    return CatalogRecord(
        id=record_id,
        dim=polytope.dim,
        n_lattice_points=len(polytope.lattice_points),
        f_vector=f_vector(polytope),
        degree=report["degree"],
        ml_degree=report["ml_degree"],
        drop=report["drop"],
        reflexive=is_reflexive(polytope),
        seeds=len(report["seeds"]),
        consistent=report["consistent"],
        runtime_ms=elapsed if timings else 0,
    )


def load_records(path: pathlib.Path) -> list[CatalogRecord]:
    """Complete records of an earlier run.

    A trailing partial line, left by an interrupted write, is cut off the file.
    """
    if not path.exists():
        return []
    records: list[CatalogRecord] = []
    valid_bytes = 0
    with path.open("rb") as fh:
        for raw in fh:
            if not raw.endswith(b"\n"):
                break
            try:
                records.append(json.loads(raw))
            except json.JSONDecodeError:
                break
            valid_bytes += len(raw)
    if valid_bytes != path.stat().st_size:
        log.warning("dropping an incomplete trailing record from %s", path)
        with path.open("r+b") as fh:
            fh.truncate(valid_bytes)
    return records


def dump_record(record: CatalogRecord) -> str:
    return json.dumps(record) + "\n"


def write_csv(records: list[CatalogRecord], path: pathlib.Path) -> None:
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_FIELDS)
        writer.writeheader()
        for record in records:
            row = dict(record)
            row["f_vector"] = " ".join(str(x) for x in record["f_vector"])
            writer.writerow(row)


async def run_catalog(config: CatalogConfig) -> CatalogOutcome:
    """Process the vertex file in *config*, appending to its JSON-lines output."""
    source = pathlib.Path(config["input_path"])
    output = pathlib.Path(config["output_path"])
    stem = source.stem

    blocks = list(iter_ks_blocks(source, config["transpose"]))
    if config["limit"] is not None:
        blocks = blocks[: config["limit"]]

    previous = {r["id"]: r for r in load_records(output)}
    pending = [b for b in blocks if entry_id(stem, b) not in previous]
    outcome = CatalogOutcome(resumed=len(blocks) - len(pending))
    if outcome.resumed:
        log.info("resuming: %d of %d entries already in %s", outcome.resumed, len(blocks), output)

    finished: dict[int, CatalogRecord | None] = {}
    cursor = 0
    limiter = anyio.CapacityLimiter(config["concurrency"])
    output.parent.mkdir(parents=True, exist_ok=True)

    with output.open("a", encoding="utf-8") as fh:

        def flush() -> None:
            nonlocal cursor
            while cursor in finished:
                record = finished.pop(cursor)
                if record is not None:
                    fh.write(dump_record(record))
                    fh.flush()
                cursor += 1

        async def work(position: int, block: VertexBlock) -> None:
            record_id = entry_id(stem, block)
            compute = functools.partial(
                catalog_record, block, record_id, config["tracker"], config["timings"]
            )
            try:
                record: CatalogRecord | None = await anyio.to_thread.run_sync(
                    compute, limiter=limiter
                )
            except MLDegreeError as exc:
                log.warning("skipping %s: %s", record_id, exc)
                outcome.skipped.append((record_id, str(exc)))
                record = None
            except Exception as exc:
                log.exception("unexpected error on %s", record_id)
                outcome.skipped.append((record_id, f"Unexpected error: {exc}"))
                record = None
            finished[position] = record
            flush()
            log.info("catalog progress %d/%d", cursor, len(pending))

        async with anyio.create_task_group() as tg:
            for position, block in enumerate(pending):
                tg.start_soon(work, position, block)

    by_id = {**previous, **{r["id"]: r for r in load_records(output)}}
    outcome.records = [by_id[entry_id(stem, b)] for b in blocks if entry_id(stem, b) in by_id]
    if config["output_format"] == "csv":
        write_csv(outcome.records, output.with_suffix(".csv"))
    return outcome
