"""Result serialization: JSON for machines, one-page Markdown for humans."""
from __future__ import annotations

import json
from dataclasses import asdict
from pathlib import Path

from .train import ToyRunResult


def write_report(result: ToyRunResult, out_dir: str | Path) -> tuple[Path, Path]:
    """Write result.json and result.md under out_dir (created if missing)."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    json_path = out / "result.json"
    json_path.write_text(json.dumps(asdict(result), indent=2) + "\n", encoding="ascii")

    chance = 1.0 / 4**result.k
    lines = [
        "# Next-k-mer toy run",
        "",
        f"- k: {result.k} ({4 ** result.k} classes, chance {chance:.4f})",
        f"- train examples: {result.n_train}",
        f"- test examples: {result.n_test}",
        f"- train accuracy: {result.train_accuracy:.4f}",
        f"- test accuracy: {result.test_accuracy:.4f}",
        f"- wall time: {result.wall_seconds:.1f}s (seed {result.seed}, "
        f"{result.epochs} epochs)",
    ]
    if result.digests:
        lines.append("")
        lines.append("## Dataset provenance")
        for key, value in result.digests.items():
            lines.append(f"- {key}: `{value}`")
    md_path = out / "result.md"
    md_path.write_text("\n".join(lines) + "\n", encoding="ascii")
    return json_path, md_path
