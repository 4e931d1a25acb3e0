"""JSON Lines persistence for trajectories and run manifests."""

from __future__ import annotations

import json
import time
from pathlib import Path
from typing import Any

import numpy as np
from pydantic import ValidationError

from bpskit.exceptions import TrajectoryFormatError
from bpskit.logging import LoggingService
from bpskit.sampler import EventKind, Trajectory

from .run_models import RunManifest, TrajectoryHeader

MANIFEST_FILE = "manifest.json"
CHAIN_FILE_PATTERN = "chain-{chain:03d}.jsonl"
CHAIN_FILE_GLOB = "chain-*.jsonl"
RECORD_KEYS = frozenset({"t", "kind", "x", "v"})

# Error messages
ERROR_EMPTY_FILE = "Trajectory file is empty"
ERROR_BAD_HEADER = "Invalid trajectory header: {error}"
ERROR_BAD_RECORD = "Invalid event record on line {line}: {error}"
ERROR_RECORD_DIMENSION = "Event record on line {line} has dimension {actual}, header says {expected}"
ERROR_NO_EVENTS = "Trajectory file contains a header but no events"
ERROR_NO_CHAIN_FILES = "No trajectory files found in {path}"


def chain_path(directory: Path, chain: int) -> Path:
    """Location of a chain's trajectory file inside a run directory."""
    return directory / CHAIN_FILE_PATTERN.format(chain=chain)


def _dumps(obj: Any) -> str:
    return json.dumps(obj, separators=(",", ":"), allow_nan=False)


def _record(time_: float, kind: EventKind, x: np.ndarray, v: np.ndarray) -> str:
    # tolist() yields Python floats, whose repr is the shortest round-tripping form
    return _dumps({"t": float(time_), "kind": kind.value, "x": x.tolist(), "v": v.tolist()})


class TrajectoryStore:
    """Reads and writes trajectory files and run manifests.

    A trajectory file has one JSON header line followed by one event record
    per line. Writing the same trajectory twice yields identical bytes.
    """

    def __init__(self, logger: LoggingService) -> None:
        """Initialize the store.

        Args:
            logger: LoggingService instance for structured logging
        """
        self.log = logger

    def write(self, path: Path, header: TrajectoryHeader, trajectory: Trajectory) -> Path:
        """Write a trajectory with its header, replacing any existing file.

        Args:
            path: Destination file
            header: Provenance header
            trajectory: Trajectory to persist

        Returns:
            The path written
        """
        started = time.perf_counter()
        path.parent.mkdir(parents=True, exist_ok=True)
        try:
            with path.open("w", encoding="utf-8", newline="\n") as handle:
                handle.write(_dumps(header.model_dump(mode="json")) + "\n")
                for t, kind, x, v in zip(
                    trajectory.times,
                    trajectory.kinds,
                    trajectory.positions,
                    trajectory.velocities,
                    strict=True,
                ):
                    handle.write(_record(t, kind, x, v) + "\n")
        except Exception:
            self.log.exception("Failed to write trajectory", path=str(path))
            raise

        self.log.info(
            "Trajectory written",
            path=str(path),
            chain=header.chain,
            events=len(trajectory),
            elapsed_ms=round((time.perf_counter() - started) * 1000, 2),
        )
        return path

    def read(self, path: Path) -> tuple[TrajectoryHeader, Trajectory]:
        """Load a trajectory file.

        Raises:
            TrajectoryFormatError: If the header or any record is malformed
            OSError: If the file cannot be read
        """
        where = str(path)
        with path.open(encoding="utf-8") as handle:
            first = handle.readline()
            if not first.strip():
                raise TrajectoryFormatError(ERROR_EMPTY_FILE, "read_trajectory", where)
            try:
                header = TrajectoryHeader.model_validate_json(first)
            except ValidationError as e:
                raise TrajectoryFormatError(
                    ERROR_BAD_HEADER.format(error=e), "read_trajectory", where
                ) from e

            times: list[float] = []
            kinds: list[EventKind] = []
            positions: list[list[float]] = []
            velocities: list[list[float]] = []
            for line_no, line in enumerate(handle, start=2):
                if not line.strip():
                    continue
                t, kind, x, v = self._parse_record(line, line_no, where)
                if len(x) != header.d or len(v) != header.d:
                    msg = ERROR_RECORD_DIMENSION.format(
                        line=line_no, actual=max(len(x), len(v)), expected=header.d
                    )
                    raise TrajectoryFormatError(msg, "read_trajectory", where)
                times.append(t)
                kinds.append(kind)
                positions.append(x)
                velocities.append(v)

        if not times:
            raise TrajectoryFormatError(ERROR_NO_EVENTS, "read_trajectory", where)

        trajectory = Trajectory(
            times=np.array(times),
            kinds=tuple(kinds),
            positions=np.array(positions),
            velocities=np.array(velocities),
            policy=header.policy,
            target=header.target,
            seed=header.seed,
            chain=header.chain,
        )
        self.log.debug("Trajectory read", path=where, events=len(trajectory))
        return header, trajectory

    @staticmethod
    def _parse_record(
        line: str, line_no: int, where: str
    ) -> tuple[float, EventKind, list[float], list[float]]:
        try:
            record = json.loads(line)
            if not isinstance(record, dict) or set(record) != RECORD_KEYS:
                msg = f"expected keys {sorted(RECORD_KEYS)}"
                raise ValueError(msg)
            return (
                float(record["t"]),
                EventKind(record["kind"]),
                [float(c) for c in record["x"]],
                [float(c) for c in record["v"]],
            )
        except (ValueError, TypeError) as e:
            msg = ERROR_BAD_RECORD.format(line=line_no, error=e)
            raise TrajectoryFormatError(msg, "read_trajectory", where) from e

    def write_manifest(self, directory: Path, manifest: RunManifest) -> Path:
        """Write manifest.json into a run directory."""
        path = directory / MANIFEST_FILE
        directory.mkdir(parents=True, exist_ok=True)
        path.write_text(manifest.model_dump_json(indent=2) + "\n", encoding="utf-8")
        self.log.info("Manifest written", path=str(path), chains=len(manifest.chains))
        return path

    def read_manifest(self, directory: Path) -> RunManifest:
        """Load manifest.json from a run directory.

        Raises:
            TrajectoryFormatError: If the manifest does not validate
        """
        path = directory / MANIFEST_FILE
        try:
            return RunManifest.model_validate_json(path.read_text(encoding="utf-8"))
        except ValidationError as e:
            raise TrajectoryFormatError(str(e), "read_manifest", str(path)) from e

    def expand_paths(self, paths: list[Path]) -> list[Path]:
        """Replace run directories by their chain files, keeping plain files as given.

        Raises:
            TrajectoryFormatError: If a directory holds no chain files
        """
        expanded: list[Path] = []
        for path in paths:
            if path.is_dir():
                found = sorted(path.glob(CHAIN_FILE_GLOB))
                if not found:
                    msg = ERROR_NO_CHAIN_FILES.format(path=path)
                    raise TrajectoryFormatError(msg, "expand_paths", str(path))
                expanded.extend(found)
            else:
                expanded.append(path)
        return expanded
