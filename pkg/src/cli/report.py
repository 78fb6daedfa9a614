"""
Report files for one scenario run and their manifest.
"""
import hashlib
import json
from pathlib import Path
from typing import Any, Dict

import pandas as pd
from pydantic import BaseModel

from ..common.schemas.scenario import ScenarioConfig
from ..netmodel.domain import NetworkGraph
from ..netmodel.export import to_dict, to_dot
from ..simharness.repository import CSVResultRepository

MANIFEST = "manifest.json"


class ReportWriter:
    """
    Writes deterministic report files; tables follow the selected format (csv or json).
    """

    def __init__(self, output_dir: str, fmt: str = "csv"):
        if fmt not in ("csv", "json"):
            raise ValueError(f"Unknown report format: {fmt}")
        self.output_dir = Path(output_dir)
        self.output_dir.mkdir(parents=True, exist_ok=True)
        self.fmt = fmt
        self.tables = CSVResultRepository(str(self.output_dir))
        self.files: Dict[str, Path] = {}

    def write_json(self, name: str, data: Any) -> Path:
        if isinstance(data, BaseModel):
            data = data.model_dump(mode="json")
        path = self.output_dir / name
        path.write_text(json.dumps(data, indent=2) + "\n", encoding="utf-8")
        self.files[name] = path
        return path

    def write_text(self, name: str, text: str) -> Path:
        path = self.output_dir / name
        path.write_text(text, encoding="utf-8")
        self.files[name] = path
        return path

    def write_table(self, stem: str, df: pd.DataFrame) -> Path:
        if self.fmt == "csv":
            path = Path(self.tables.save(stem, df))
            self.files[path.name] = path
            return path
        # to_json converts numpy scalars that json.dumps rejects
        return self.write_json(f"{stem}.json", json.loads(df.to_json(orient="records", double_precision=15)))

    def write_config(self, config: ScenarioConfig) -> Path:
        return self.write_json("config.json", config.model_dump(mode="json"))

    def write_graph(self, graph: NetworkGraph) -> None:
        self.write_json("graph.json", to_dict(graph))
        self.write_text("graph.dot", to_dot(graph))

    def write_manifest(self) -> Dict[str, str]:
        digests = {
            name: hashlib.sha256(path.read_bytes()).hexdigest()
            for name, path in sorted(self.files.items())
            if name != MANIFEST
        }
        self.write_json(MANIFEST, digests)
        return digests
