"""Run manifest: stage completion flags and artifact checksums.

A stage is marked complete only after its outputs are fully written and
checksummed, so an interrupted run resumes cleanly: completed stages with
intact outputs are skipped, anything else is recomputed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .ioutil import atomic_write_text, sha256_file, sha256_text

__all__ = ["RunManifest", "atomic_write_text", "sha256_file", "sha256_text"]

MANIFEST_NAME = "manifest.json"


@dataclass
class RunManifest:
    output_dir: Path
    config_checksum: str
    tool_version: str
    stages: dict[str, dict[str, str]] = field(default_factory=dict)
    fingerprints: dict[str, str] = field(default_factory=dict)

    @property
    def path(self) -> Path:
        return self.output_dir / MANIFEST_NAME

    def is_complete(self, stage: str) -> bool:
        outputs = self.stages.get(stage)
        if outputs is None:
            return False
        for rel, checksum in outputs.items():
            full = self.output_dir / rel
            if not full.exists() or sha256_file(full) != checksum:
                return False
        return True

    def mark_complete(self, stage: str, outputs: list[Path]) -> None:
        self.stages[stage] = {
            str(path.relative_to(self.output_dir)): sha256_file(path)
            for path in sorted(outputs)
        }
        self.save()

    def invalidate_from(self, stages_in_order: list[str], stage: str) -> None:
        """Clear completion flags of `stage` and everything after it."""
        if stage not in stages_in_order:
            return
        for name in stages_in_order[stages_in_order.index(stage):]:
            self.stages.pop(name, None)

    def save(self) -> None:
        payload = {
            "config_checksum": self.config_checksum,
            "tool_version": self.tool_version,
            "stages": self.stages,
            "fingerprints": self.fingerprints,
        }
        atomic_write_text(self.path, json.dumps(payload, sort_keys=True, indent=2) + "\n")

    @classmethod
    def load(cls, output_dir: str | Path) -> "RunManifest | None":
        output_dir = Path(output_dir)
        path = output_dir / MANIFEST_NAME
        if not path.exists():
            return None
        payload = json.loads(path.read_text(encoding="utf-8"))
        return cls(
            output_dir=output_dir,
            config_checksum=payload["config_checksum"],
            tool_version=payload["tool_version"],
            stages=payload.get("stages", {}),
            fingerprints=payload.get("fingerprints", {}),
        )
