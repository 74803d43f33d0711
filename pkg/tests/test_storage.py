"""
Tests for dataset ingestion and model files.
"""
import json

import numpy as np
import pytest

from rbig_kit.flow import log_density, transform
from rbig_kit.sdk.exceptions import (
    CorruptModelError,
    DatasetError,
    DatasetParseError,
    ModelFileError,
    ModelVersionError,
)
from rbig_kit.storage import (
    MAGIC,
    format_value,
    load_csv,
    load_model,
    load_model_file,
    save_model,
    write_csv,
)
from tests.conftest import make_rotated_cube


# ============================================================================
# CSV Datasets
# ============================================================================

@pytest.mark.unit
class TestLoadCsv:
    """Test numeric CSV ingestion."""

    def test_plain_matrix(self, tmp_path):
        path = tmp_path / "data.csv"
        path.write_text("1,2\n3,4\n5,6\n", encoding="utf-8")

        dataset = load_csv(path)

        assert dataset.rows == 3
        assert dataset.dim == 2
        assert dataset.rejected_rows == 0
        assert dataset.column_names is None
        assert np.array_equal(dataset.values, [[1, 2], [3, 4], [5, 6]])

    def test_non_finite_rows_are_rejected(self, tmp_path, caplog):
        path = tmp_path / "data.csv"
        path.write_text("1,2\nnan,4\n5,6\n", encoding="utf-8")

        dataset = load_csv(path)

        assert dataset.rows == 2
        assert dataset.rejected_rows == 1
        assert "Rejected 1 rows" in caplog.text

    def test_header(self, tmp_path):
        path = tmp_path / "data.csv"
        path.write_text("x, y\n1,2\n3,4\n", encoding="utf-8")

        dataset = load_csv(path, has_header=True)

        assert dataset.column_names == ["x", "y"]
        assert dataset.rows == 2

    def test_blank_lines_are_skipped(self, tmp_path):
        path = tmp_path / "data.csv"
        path.write_text("1,2\n\n3,4\n\n", encoding="utf-8")
        assert load_csv(path).rows == 2

    def test_ragged_row_reports_line(self, tmp_path):
        path = tmp_path / "data.csv"
        path.write_text("1,2\n3,4\n5\n", encoding="utf-8")

        with pytest.raises(DatasetParseError) as exc_info:
            load_csv(path)

        assert exc_info.value.line == 3

    def test_non_numeric_cell(self, tmp_path):
        path = tmp_path / "data.csv"
        path.write_text("1,2\n3,abc\n", encoding="utf-8")
        with pytest.raises(DatasetParseError, match="line 2"):
            load_csv(path)

    def test_empty_file(self, tmp_path):
        path = tmp_path / "data.csv"
        path.write_text("", encoding="utf-8")
        with pytest.raises(DatasetError):
            load_csv(path)

    def test_all_rows_rejected(self, tmp_path):
        path = tmp_path / "data.csv"
        path.write_text("nan,1\ninf,2\n", encoding="utf-8")
        with pytest.raises(DatasetError):
            load_csv(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(DatasetError):
            load_csv(tmp_path / "missing.csv")


@pytest.mark.unit
class TestWriteCsv:
    """Test CSV output."""

    def test_values_read_back_exactly(self, tmp_path):
        values = np.random.default_rng(70).standard_normal((20, 3))
        path = tmp_path / "out.csv"

        write_csv(path, values, column_names=["a", "b", "c"])

        assert np.array_equal(load_csv(path, has_header=True).values, values)

    def test_vector_is_one_column(self, tmp_path):
        path = tmp_path / "out.csv"
        write_csv(path, np.array([0.5, 1.5]))
        assert path.read_text(encoding="utf-8") == "0.5\n1.5\n"

    def test_format_value(self):
        assert format_value(0.1) == "0.1"
        assert float(format_value(1.0 / 3.0)) == 1.0 / 3.0


# ============================================================================
# Model Files
# ============================================================================

@pytest.mark.unit
class TestModelFile:
    """Test model persistence."""

    @pytest.fixture
    def saved(self, fitted_cube, tmp_path):
        return save_model(fitted_cube, tmp_path / "cube.rbig")

    def test_starts_with_magic_line(self, saved):
        assert saved.read_bytes().startswith(MAGIC)

    def test_round_trip_is_bitwise(self, fitted_cube, saved):
        loaded = load_model(saved)
        x = make_rotated_cube(200, seed=71)

        assert loaded.n_layers == fitted_cube.n_layers
        assert loaded.config == fitted_cube.config
        assert np.array_equal(transform(loaded, x), transform(fitted_cube, x))
        assert np.array_equal(log_density(loaded, x), log_density(fitted_cube, x))

    def test_resave_is_byte_identical(self, saved, tmp_path):
        again = save_model(load_model(saved), tmp_path / "again.rbig")
        assert again.read_bytes() == saved.read_bytes()

    def test_header_is_sorted_json_without_timing(self, saved):
        header_line = saved.read_bytes().split(b"\n")[1]
        header = json.loads(header_line)

        assert header["format_version"] == 1
        assert header["dim"] == 2
        assert list(header) == sorted(header)
        assert all(record["wall_time_s"] is None for record in header["trace"]["records"])

    def test_one_class_block(self, fitted_cube, tmp_path):
        path = save_model(fitted_cube, tmp_path / "oc.rbig", one_class={"nu": 0.1, "log_threshold": -3.5})
        model_file = load_model_file(path)
        assert model_file.one_class == {"nu": 0.1, "log_threshold": -3.5}
        assert load_model_file(tmp_path / "oc.rbig").model.dim == 2

    def test_truncated_file(self, saved):
        data = saved.read_bytes()
        saved.write_bytes(data[:-16])
        with pytest.raises(CorruptModelError):
            load_model(saved)

    def test_flipped_payload_byte(self, saved):
        data = bytearray(saved.read_bytes())
        data[-1] ^= 0xFF
        saved.write_bytes(bytes(data))
        with pytest.raises(CorruptModelError, match="checksum"):
            load_model(saved)

    def test_edited_header_field(self, saved):
        head, header_line, payload = saved.read_bytes().split(b"\n", 2)
        header = json.loads(header_line)
        header["layers"][0]["eps"] = [0.001] * len(header["layers"][0]["eps"])
        text = json.dumps(header, sort_keys=True, separators=(",", ":")).encode("utf-8")
        saved.write_bytes(head + b"\n" + text + b"\n" + payload)

        with pytest.raises(CorruptModelError, match="checksum"):
            load_model(saved)

    def test_edited_trace(self, saved):
        head, header_line, payload = saved.read_bytes().split(b"\n", 2)
        header = json.loads(header_line)
        header["trace"]["converged"] = not header["trace"]["converged"]
        text = json.dumps(header, sort_keys=True, separators=(",", ":")).encode("utf-8")
        saved.write_bytes(head + b"\n" + text + b"\n" + payload)

        with pytest.raises(CorruptModelError, match="checksum"):
            load_model(saved)

    def test_bad_magic(self, tmp_path):
        path = tmp_path / "bad.rbig"
        path.write_bytes(b"NOTAMODEL\n{}\n")
        with pytest.raises(CorruptModelError):
            load_model(path)

    def test_bad_header(self, tmp_path):
        path = tmp_path / "bad.rbig"
        path.write_bytes(MAGIC + b"{not json\n")
        with pytest.raises(CorruptModelError):
            load_model(path)

    def test_future_version(self, saved):
        head, header_line, payload = saved.read_bytes().split(b"\n", 2)
        header = json.loads(header_line)
        header["format_version"] = 2
        text = json.dumps(header, sort_keys=True, separators=(",", ":")).encode("utf-8")
        saved.write_bytes(head + b"\n" + text + b"\n" + payload)

        with pytest.raises(ModelVersionError) as exc_info:
            load_model(saved)

        assert exc_info.value.found == 2
        assert exc_info.value.supported == 1

    def test_missing_file(self, tmp_path):
        with pytest.raises(ModelFileError):
            load_model(tmp_path / "missing.rbig")
