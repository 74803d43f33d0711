"""Dataset ingestion and model files."""

from rbig_kit.storage.dataset import Dataset, format_value, load_csv, write_csv
from rbig_kit.storage.model_file import (
    FORMAT_VERSION,
    MAGIC,
    ModelFile,
    load_model,
    load_model_file,
    save_model,
)

__all__ = [
    "Dataset",
    "load_csv",
    "write_csv",
    "format_value",
    "FORMAT_VERSION",
    "MAGIC",
    "ModelFile",
    "save_model",
    "load_model",
    "load_model_file",
]
