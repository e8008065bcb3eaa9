# Copyright 2026 The hgbt Authors. All Rights Reserved.
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#     http://www.apache.org/licenses/LICENSE-2.0
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Smoke tests for the python module."""

import math

import numpy as np
import pytest

import hgbt


def xor_matrix():
    x = np.array([[0, 0], [0, 1], [0, 1], [1, 0], [1, 1]], dtype=np.float32)
    y = np.logical_xor(x[:, 0], x[:, 1]).astype(np.float64)
    return hgbt.DataMatrix(x, y)


def test_data_matrix_missing_cells():
    x = np.array([[1.0, np.nan], [2.0, 3.0]], dtype=np.float32)
    d = hgbt.DataMatrix(x, np.array([0.0, 1.0]))
    assert d.n_rows == 2
    assert d.n_features == 2
    assert d.n_missing == 1
    np.testing.assert_array_equal(d.to_dense(), x)
    np.testing.assert_array_equal(d.labels, [0.0, 1.0])


def test_csv_and_libsvm_round_trip(tmp_path):
    csv = tmp_path / "a.csv"
    csv.write_text("1,0.5,,2\n0,1.5,3,\n")
    d = hgbt.load_csv(str(csv))
    assert (d.n_rows, d.n_features, d.n_missing) == (2, 3, 2)
    svm = tmp_path / "a.svm"
    hgbt.save_libsvm(d, str(svm))
    assert hgbt.load_libsvm(str(svm)) == d


def test_errors_map_to_exception_hierarchy(tmp_path):
    with pytest.raises(hgbt.IoError):
        hgbt.load_csv(str(tmp_path / "missing.csv"))
    bad = tmp_path / "bad.csv"
    bad.write_text("1,abc\n")
    with pytest.raises(hgbt.ParseError):
        hgbt.load_csv(str(bad))
    assert issubclass(hgbt.ParseError, hgbt.Error)
    assert issubclass(hgbt.Error, RuntimeError)


def test_bit_packing():
    assert hgbt.symbol_bits(255) == 8
    assert hgbt.symbol_bits(256) == 9
    symbols = np.arange(100, dtype=np.uint32) % 7
    buf = hgbt.compress(symbols, 3)
    assert len(buf) == 100
    np.testing.assert_array_equal(buf.unpack(), symbols)
    assert hgbt.read_symbol(buf, 42) == 42 % 7
    assert buf.size_bytes * 8 <= 100 * 3 + 64


def test_quantize_compression_ratio():
    d = hgbt.make_synthetic("regression", 4000, 20, 3)
    cuts = hgbt.build_cuts(d, 255)
    q = hgbt.quantize(d, cuts)
    assert q.bits == 8
    assert q.compression_ratio() >= 3.98
    sym = q.symbols()
    assert sym.shape == (4000, 20)
    assert sym.max() < q.sentinel
    assert q.symbol(5, 2) == sym[5, 2]


def test_bin_of():
    cuts = [1.0, 2.0, 3.0]
    assert hgbt.bin_of(0.5, cuts) == 0
    assert hgbt.bin_of(1.0, cuts) == 0
    assert hgbt.bin_of(2.5, cuts) == 2
    assert hgbt.bin_of(9.0, cuts) == 2
    assert hgbt.bin_of(1.0, []) is None


def test_objectives():
    p = hgbt.sigmoid(np.array([0.0, 50.0, -50.0]))
    assert p[0] == 0.5
    assert 1 - 1e-20 <= p[1] <= 1.0
    assert 0.0 < p[2] < 1e-20
    g, h = hgbt.logistic_gradients(np.array([0.0]), np.array([1.0]))
    assert g[0] == pytest.approx(-0.5)
    assert h[0] == pytest.approx(0.25)
    g, h = hgbt.squared_error_gradients(np.array([2.0]), np.array([0.5]))
    assert (g[0], h[0]) == (1.5, 1.0)
    rmse = hgbt.eval_metric(np.array([1.0, 3.0]), np.array([0.0, 0.0]), "rmse")
    assert rmse == pytest.approx(math.sqrt(5.0))


def test_train_predict_and_serialize(tmp_path):
    d = hgbt.make_synthetic("classification", 2000, 10, 1)
    model, report = hgbt.train(d, objective="binary:logistic", n_rounds=20, max_depth=4)
    assert model.n_trees == 20
    assert report["metric"] == "accuracy"
    assert report["evals"][-1]["train"] >= 0.95
    prob = model.predict(d, output_prob=True)
    assert prob.shape == (2000,)
    assert np.all((prob > 0) & (prob < 1))
    margin = model.predict(d)
    np.testing.assert_allclose(hgbt.sigmoid(margin), prob)
    leaves = model.predict_leaf(d)
    assert leaves.shape == (2000, 20)
    path = tmp_path / "m.json"
    model.save(str(path))
    assert hgbt.Model.load(str(path)) == model
    assert hgbt.Model.from_json(model.to_json()).to_json() == model.to_json()
    np.testing.assert_array_equal(model.predict(d, tree_limit=0), np.full(2000, model.base_margin))


def test_workers_give_identical_models():
    d = hgbt.make_synthetic("regression", 3000, 8, 7)
    texts = {hgbt.train(d, n_rounds=5, n_workers=p)[0].to_json() for p in (1, 2, 4)}
    assert len(texts) == 1


def test_xor_fit():
    d = xor_matrix()
    model, _ = hgbt.train(d, n_rounds=1, max_depth=2, max_bins=2, learning_rate=1.0,
                          reg_lambda=0.0, min_child_weight=0.0)
    pred = model.predict(d)
    assert np.sqrt(np.mean((pred - d.labels) ** 2)) < 1e-6
