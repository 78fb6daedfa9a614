import os
from typing import List

import pandas as pd


class CSVResultRepository:
    """
    Saves result tables as CSV files under one output directory.
    """
    def __init__(self, output_dir: str):
        self.output_dir = output_dir
        os.makedirs(self.output_dir, exist_ok=True)

    def _path(self, name: str) -> str:
        return os.path.join(self.output_dir, f"{name}.csv")

    def save(self, name: str, df: pd.DataFrame) -> str:
        path = self._path(name)
        # Fixed float format keeps files byte-identical across runs
        df.to_csv(path, index=False, float_format="%.12g", lineterminator="\n")
        return path

    def load(self, name: str) -> pd.DataFrame:
        return pd.read_csv(self._path(name))

    def list(self) -> List[str]:
        return sorted(f[:-4] for f in os.listdir(self.output_dir) if f.endswith(".csv"))
