import json

import numpy as np
import pytest

from smoothspec.datasets import BlobSpec, CsvParseError, generate_multiscale, load_blob_specs, load_csv


def _write(tmp_path, text, name="data.csv"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


class TestLoadCsv:
    def test_plain_matrix(self, tmp_path):
        X, labels = load_csv(_write(tmp_path, "0,0\n1,0\n0,1\n"))
        assert X.shape == (3, 2)
        assert labels is None
        np.testing.assert_array_equal(X, [[0, 0], [1, 0], [0, 1]])

    def test_label_column_split(self, tmp_path):
        X, labels = load_csv(_write(tmp_path, "0,0,1\n9,9,2\n"), label_column=True)
        assert X.shape == (2, 2)
        np.testing.assert_array_equal(labels, [1, 2])

    def test_non_numeric_cell_names_position(self, tmp_path):
        with pytest.raises(CsvParseError, match="row 1, column 1"):
            load_csv(_write(tmp_path, "a,b\n"))

    def test_ragged_rows(self, tmp_path):
        with pytest.raises(CsvParseError, match="ragged"):
            load_csv(_write(tmp_path, "1,2\n1,2,3\n"))

    def test_skip_header(self, tmp_path):
        X, _ = load_csv(_write(tmp_path, "x,y\n1,2\n3,4\n"), skip_header=True)
        assert X.shape == (2, 2)

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            load_csv(str(tmp_path / "nope.csv"))


class TestGenerateMultiscale:
    def test_single_blob(self):
        X, labels = generate_multiscale(
            [{"center": [0.0], "spread": 1.0, "count": 5}], seed=1
        )
        assert X.shape == (5, 1)
        np.testing.assert_array_equal(labels, np.zeros(5, dtype=int))

    def test_density_ratio_by_construction(self):
        X, labels = generate_multiscale(
            [{"center": [0, 0], "spread": 0.1, "count": 100},
             {"center": [50, 0], "spread": 10.0, "count": 100}],
            seed=0,
        )
        spread0 = X[labels == 0].std(axis=0).mean()
        spread1 = X[labels == 1].std(axis=0).mean()
        assert spread1 / spread0 > 50

    def test_deterministic_for_fixed_seed(self):
        spec = [{"center": [1, 2], "spread": [0.5, 3.0], "count": 17}]
        X1, l1 = generate_multiscale(spec, seed=42)
        X2, l2 = generate_multiscale(spec, seed=42)
        assert X1.tobytes() == X2.tobytes()
        np.testing.assert_array_equal(l1, l2)

    def test_empty_spec_rejected(self):
        with pytest.raises(ValueError):
            generate_multiscale([], seed=0)

    def test_scalar_spread_broadcasts(self):
        spec = BlobSpec.from_dict({"center": [0, 0, 0], "spread": 2.0, "count": 3})
        assert spec.spread == (2.0, 2.0, 2.0)

    def test_spread_dimension_mismatch(self):
        with pytest.raises(ValueError):
            BlobSpec.from_dict({"center": [0, 0], "spread": [1.0], "count": 3})


def test_load_blob_specs_roundtrip(tmp_path):
    path = tmp_path / "spec.json"
    path.write_text(json.dumps([
        {"center": [0, 0], "spread": 0.1, "count": 4},
        {"center": [9, 9], "spread": [1, 2], "count": 6},
    ]))
    specs = load_blob_specs(str(path))
    assert [s.count for s in specs] == [4, 6]
    X, labels = generate_multiscale(specs, seed=0)
    assert X.shape == (10, 2)
    assert np.bincount(labels).tolist() == [4, 6]
