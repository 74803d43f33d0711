"""
Single-file model persistence.

Layout:
    RBIGMODEL\\n
    <one line of JSON header, keys sorted>\\n
    <payload: little-endian float64 arrays, concatenated>

The header describes every payload array (name and length), records the
payload size and a SHA-256 over the header and payload, and echoes the fit configuration and trace
(without wall times). Marginals are stored as their histograms and rebuilt
through the same constructor used at fit time, so a loaded model evaluates
bitwise like the saved one.
"""
import hashlib
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np
from pydantic import ValidationError

from rbig_kit.config import FitConfig, RotationKind
from rbig_kit.flow.model import RbigLayer, RbigModel, Standardizer
from rbig_kit.marginal import MarginalGaussianizer
from rbig_kit.numcore import Histogram1D
from rbig_kit.rotations import OrthonormalRotation
from rbig_kit.sdk.exceptions import CorruptModelError, ModelFileError, ModelVersionError
from rbig_kit.sdk.models import FitTrace

logger = logging.getLogger(__name__)

MAGIC = b"RBIGMODEL\n"
FORMAT_VERSION = 1
_DTYPE = np.dtype("<f8")

PathLike = Union[str, Path]


def _canonical(header: Dict[str, Any]) -> bytes:
    return json.dumps(header, sort_keys=True, separators=(",", ":"), allow_nan=False).encode("utf-8")


def _digest(header: Dict[str, Any], payload: bytes) -> str:
    """SHA-256 of the canonical header, without its sha256 key, followed by the payload."""
    unsigned = {key: value for key, value in header.items() if key != "sha256"}
    return hashlib.sha256(_canonical(unsigned) + b"\n" + payload).hexdigest()


@dataclass
class ModelFile:
    """A loaded model with its header and optional one-class block."""

    model: RbigModel
    header: Dict[str, Any]
    one_class: Optional[Dict[str, float]] = field(default=None)


class _PayloadWriter:
    def __init__(self):
        self.specs: List[Dict[str, Any]] = []
        self.chunks: List[bytes] = []

    def add(self, name: str, values) -> None:
        arr = np.ascontiguousarray(values, dtype=_DTYPE).ravel()
        self.specs.append({"name": name, "length": int(arr.shape[0])})
        self.chunks.append(arr.tobytes())

    def payload(self) -> bytes:
        return b"".join(self.chunks)


def _encode(model: RbigModel, one_class: Optional[Dict[str, float]]) -> bytes:
    writer = _PayloadWriter()
    writer.add("standardizer.mean", model.standardizer.mean)
    writer.add("standardizer.scale", model.standardizer.scale)

    layers = []
    for k, layer in enumerate(model.layers):
        hists = [m.pdf for m in layer.marginals]
        writer.add(f"layer{k}.edges", np.concatenate([h.bin_edges for h in hists]))
        writer.add(f"layer{k}.counts", np.concatenate([h.counts for h in hists]))
        writer.add(f"layer{k}.tail_scale", [m.cdf.tail_scale for m in layer.marginals])
        writer.add(f"layer{k}.rotation", layer.rotation.matrix)
        layers.append(
            {
                "bins": [int(h.counts.shape[0]) for h in hists],
                "totals": [int(h.total) for h in hists],
                "eps": [m.eps for m in layer.marginals],
                "floor": [m.floor for m in layer.marginals],
                "delta_j": layer.delta_j,
                "delta_i": layer.delta_i,
                "rotation_kind": layer.rotation.provenance.value,
                "rotation_seed": layer.rotation.seed,
            }
        )

    payload = writer.payload()
    header: Dict[str, Any] = {
        "format_version": FORMAT_VERSION,
        "dim": model.dim,
        "config": model.config.model_dump(mode="json"),
        "trace": model.trace.without_timing().model_dump(mode="json"),
        "layers": layers,
        "arrays": writer.specs,
        "payload_bytes": len(payload),
    }
    if one_class is not None:
        header["one_class"] = {key: float(value) for key, value in one_class.items()}
    header["sha256"] = _digest(header, payload)

    return MAGIC + _canonical(header) + b"\n" + payload


def save_model(model: RbigModel, path: PathLike, one_class: Optional[Dict[str, float]] = None) -> Path:
    """
    Write a model file; identical models produce identical bytes.

    Args:
        model: Fitted model
        path: Output path
        one_class: Optional {nu, log_threshold} block for one-class models
    """
    path = Path(path)
    data = _encode(model, one_class)
    try:
        path.write_bytes(data)
    except OSError as e:
        raise ModelFileError(f"Cannot write model file {path}: {e}") from e
    logger.info("Saved %d-layer model to %s (%d bytes)", model.n_layers, path, len(data))
    return path


def _split(data: bytes) -> Tuple[Dict[str, Any], bytes]:
    if not data.startswith(MAGIC):
        raise CorruptModelError("not a model file (bad magic line)")
    end = data.find(b"\n", len(MAGIC))
    if end < 0:
        raise CorruptModelError("model header is truncated")
    try:
        header = json.loads(data[len(MAGIC):end].decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise CorruptModelError(f"model header is not valid JSON: {e}") from e
    if not isinstance(header, dict):
        raise CorruptModelError("model header must be a JSON object")
    return header, data[end + 1:]


def _check(header: Dict[str, Any], payload: bytes) -> None:
    version = header.get("format_version")
    if not isinstance(version, int):
        raise CorruptModelError("model header has no format version")
    if version > FORMAT_VERSION:
        raise ModelVersionError(
            f"model format version {version} is newer than the supported version {FORMAT_VERSION}",
            found=version,
            supported=FORMAT_VERSION,
        )
    if version < 1:
        raise CorruptModelError(f"invalid model format version {version}")
    if len(payload) != header.get("payload_bytes"):
        raise CorruptModelError(
            f"payload has {len(payload)} bytes, header declares {header.get('payload_bytes')}"
        )
    if _digest(header, payload) != header.get("sha256"):
        raise CorruptModelError("model checksum mismatch")


def _read_arrays(header: Dict[str, Any], payload: bytes) -> Dict[str, np.ndarray]:
    arrays: Dict[str, np.ndarray] = {}
    offset = 0
    for entry in header["arrays"]:
        length = int(entry["length"])
        arrays[entry["name"]] = np.frombuffer(payload, dtype=_DTYPE, count=length, offset=offset).astype(
            np.float64
        )
        offset += length * _DTYPE.itemsize
    if offset != len(payload):
        raise CorruptModelError("payload size does not match the array table")
    return arrays


def _decode(header: Dict[str, Any], arrays: Dict[str, np.ndarray]) -> RbigModel:
    d = int(header["dim"])
    standardizer = Standardizer(mean=arrays["standardizer.mean"], scale=arrays["standardizer.scale"])

    layers = []
    for k, meta in enumerate(header["layers"]):
        edges = arrays[f"layer{k}.edges"]
        counts = arrays[f"layer{k}.counts"]
        tail_scale = arrays[f"layer{k}.tail_scale"]
        marginals = []
        edge_at = count_at = 0
        for i, bins in enumerate(meta["bins"]):
            hist = Histogram1D(
                bin_edges=edges[edge_at:edge_at + bins + 1],
                counts=counts[count_at:count_at + bins],
                total=meta["totals"][i],
            )
            edge_at += bins + 1
            count_at += bins
            marginals.append(
                MarginalGaussianizer.from_histogram(
                    hist,
                    tail_scale=float(tail_scale[i]),
                    eps=meta["eps"][i],
                    floor=meta["floor"][i],
                )
            )
        rotation = OrthonormalRotation(
            arrays[f"layer{k}.rotation"].reshape(d, d),
            RotationKind(meta["rotation_kind"]),
            seed=meta["rotation_seed"],
        )
        layers.append(
            RbigLayer(
                marginals=tuple(marginals),
                rotation=rotation,
                delta_j=meta["delta_j"],
                delta_i=meta["delta_i"],
            )
        )

    return RbigModel(
        layers=tuple(layers),
        dim=d,
        standardizer=standardizer,
        config=FitConfig(**header["config"]),
        trace=FitTrace(**header["trace"]),
    )


def load_model_file(path: PathLike) -> ModelFile:
    """
    Read a model file with its header.

    Raises:
        ModelFileError: If the file cannot be read
        ModelVersionError: If the file was written by a newer format
        CorruptModelError: On a bad magic line, header, length or checksum
    """
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as e:
        raise ModelFileError(f"Cannot read model file {path}: {e}") from e

    header, payload = _split(data)
    _check(header, payload)
    try:
        model = _decode(header, _read_arrays(header, payload))
    except (KeyError, IndexError, TypeError, ValueError, ValidationError) as e:
        raise CorruptModelError(f"model file {path} is inconsistent: {e}") from e
    logger.debug("Loaded %d-layer model from %s", model.n_layers, path)
    return ModelFile(model=model, header=header, one_class=header.get("one_class"))


def load_model(path: PathLike) -> RbigModel:
    """Read a model file. See load_model_file for errors."""
    return load_model_file(path).model
