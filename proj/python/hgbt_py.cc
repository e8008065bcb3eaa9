// Copyright 2026 The hgbt Authors. All Rights Reserved.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/*!
 * \file hgbt_py.cc
 * \brief python bindings: data loading, quantization, packing, gradients, training, prediction
 */
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hgbt/booster.h"
#include "hgbt/compressed.h"
#include "hgbt/data.h"
#include "hgbt/objective.h"
#include "hgbt/quantile.h"
#include "hgbt/tree_model.h"

namespace py = pybind11;

namespace {

using F64Array = py::array_t<double, py::array::c_style | py::array::forcecast>;
using F32Array = py::array_t<float, py::array::c_style | py::array::forcecast>;
using U32Array = py::array_t<std::uint32_t, py::array::c_style | py::array::forcecast>;

template <typename T>
py::array_t<T> ToArray(std::vector<T> const& v) {
  py::array_t<T> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

template <typename T>
py::array_t<T> ToArray(std::span<T const> v) {
  return ToArray(std::vector<T>(v.begin(), v.end()));
}

std::span<double const> AsSpan(F64Array const& a) {
  if (a.ndim() != 1) throw py::value_error("expected a 1-d array");
  return {a.data(), static_cast<std::size_t>(a.shape(0))};
}

hgbt::DataMatrix FromNumpy(F32Array const& x, F64Array const& y) {
  if (x.ndim() != 2) throw py::value_error("X must be 2-d");
  auto const n_rows = static_cast<std::size_t>(x.shape(0));
  auto const n_features = static_cast<std::size_t>(x.shape(1));
  auto labels = AsSpan(y);
  return hgbt::DataMatrix::FromDense({x.data(), n_rows * n_features}, n_rows, n_features, labels);
}

py::array_t<float> ToDense(hgbt::DataMatrix const& m) {
  py::array_t<float> out({static_cast<py::ssize_t>(m.NumRows()), static_cast<py::ssize_t>(m.NumFeatures())});
  float* p = out.mutable_data();
  std::fill(p, p + m.NumRows() * m.NumFeatures(), std::numeric_limits<float>::quiet_NaN());
  for (std::size_t i = 0; i < m.NumRows(); ++i) {
    for (auto const& e : m.Row(i)) p[i * m.NumFeatures() + e.index] = e.fvalue;
  }
  return out;
}

hgbt::IndexBase Base(bool zero_based) {
  return zero_based ? hgbt::IndexBase::kZero : hgbt::IndexBase::kOne;
}

py::tuple GradientsToNumpy(std::vector<hgbt::GradientPair> const& gp) {
  py::array_t<double> g(static_cast<py::ssize_t>(gp.size()));
  py::array_t<double> h(static_cast<py::ssize_t>(gp.size()));
  for (std::size_t i = 0; i < gp.size(); ++i) {
    g.mutable_data()[i] = gp[i].grad;
    h.mutable_data()[i] = gp[i].hess;
  }
  return py::make_tuple(g, h);
}

py::dict ReportToDict(hgbt::TrainReport const& r) {
  py::list evals;
  for (auto const& e : r.evals) {
    py::dict d;
    d["round"] = e.round;
    d["train"] = e.train;
    d["valid"] = e.valid ? py::cast(*e.valid) : py::none();
    evals.append(d);
  }
  py::dict times;
  times["quantize"] = r.times.quantize;
  times["histogram"] = r.times.histogram;
  times["evaluate"] = r.times.evaluate;
  times["predict"] = r.times.predict;
  times["gradient"] = r.times.gradient;
  py::dict out;
  out["metric"] = r.metric;
  out["evals"] = evals;
  out["times"] = times;
  out["wall_seconds"] = r.wall_seconds;
  return out;
}

}  // namespace

PYBIND11_MODULE(_hgbt, m) {
  m.doc() = "histogram gradient boosted trees";

  auto error = py::register_exception<hgbt::Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<hgbt::IoError>(m, "IoError", error.ptr());
  py::register_exception<hgbt::ParseError>(m, "ParseError", error.ptr());
  py::register_exception<hgbt::ContractError>(m, "ContractError", error.ptr());
  py::register_exception<hgbt::ValidationError>(m, "ValidationError", error.ptr());
  py::register_exception<hgbt::SchemaError>(m, "SchemaError", error.ptr());

  // data

  py::class_<hgbt::DataMatrix>(m, "DataMatrix")
      .def(py::init(&FromNumpy), py::arg("X"), py::arg("y"),
           "dense matrix; NaN cells are missing")
      .def_property_readonly("n_rows", &hgbt::DataMatrix::NumRows)
      .def_property_readonly("n_features", &hgbt::DataMatrix::NumFeatures)
      .def_property_readonly("n_missing", &hgbt::DataMatrix::NumMissing)
      .def_property_readonly("labels", [](hgbt::DataMatrix const& d) { return ToArray(d.Labels()); })
      .def("to_dense", &ToDense, "features as a float32 array with NaN for missing")
      .def("__eq__", [](hgbt::DataMatrix const& a, hgbt::DataMatrix const& b) { return a == b; })
      .def("__repr__", [](hgbt::DataMatrix const& d) {
        return "DataMatrix(n_rows=" + std::to_string(d.NumRows()) +
               ", n_features=" + std::to_string(d.NumFeatures()) + ")";
      });

  m.def("load_csv",
        [](std::string const& path, std::size_t label_column, bool header) {
          return hgbt::LoadCsv(path, hgbt::CsvOptions{label_column, header});
        },
        py::arg("path"), py::arg("label_column") = 0, py::arg("header") = false);
  m.def("load_libsvm",
        [](std::string const& path, bool zero_based) { return hgbt::LoadLibsvm(path, Base(zero_based)); },
        py::arg("path"), py::arg("zero_based") = false);
  m.def("save_libsvm",
        [](hgbt::DataMatrix const& d, std::string const& path, bool zero_based) {
          hgbt::SaveLibsvm(d, path, Base(zero_based));
        },
        py::arg("data"), py::arg("path"), py::arg("zero_based") = false);
  m.def("make_synthetic",
        [](std::string const& kind, std::size_t n_rows, std::size_t n_features, std::uint64_t seed) {
          if (kind != "regression" && kind != "classification") {
            throw py::value_error("kind must be 'regression' or 'classification'");
          }
          return hgbt::MakeSynthetic(kind == "regression" ? hgbt::SyntheticKind::kRegression
                                                          : hgbt::SyntheticKind::kClassification,
                                     n_rows, n_features, seed);
        },
        py::arg("kind"), py::arg("n_rows"), py::arg("n_features"), py::arg("seed") = 0);

  // quantization

  py::class_<hgbt::CutMatrix, std::shared_ptr<hgbt::CutMatrix>>(m, "CutMatrix")
      .def_property_readonly("n_features", &hgbt::CutMatrix::NumFeatures)
      .def_property_readonly("max_bins", &hgbt::CutMatrix::MaxBins)
      .def_property_readonly("total_bins", &hgbt::CutMatrix::TotalBins)
      .def_property_readonly("offsets", [](hgbt::CutMatrix const& c) { return ToArray(c.Ptrs()); })
      .def("feature_cuts", [](hgbt::CutMatrix const& c, std::size_t f) {
        if (f >= c.NumFeatures()) throw py::index_error("feature out of range");
        return ToArray(c.FeatureCuts(f));
      });

  m.def("build_cuts",
        [](hgbt::DataMatrix const& d, std::uint32_t max_bins) {
          return std::make_shared<hgbt::CutMatrix>(hgbt::BuildCuts(d, max_bins));
        },
        py::arg("data"), py::arg("max_bins") = hgbt::kDefaultMaxBins);
  m.def("bin_of",
        [](float value, std::vector<float> const& cuts) -> std::optional<std::uint32_t> {
          return hgbt::BinOf(value, cuts);
        },
        py::arg("value"), py::arg("cuts"));

  py::class_<hgbt::PackedBuffer>(m, "PackedBuffer")
      .def("read_symbol", &hgbt::PackedBuffer::ReadSymbol, py::arg("index"))
      .def("__len__", &hgbt::PackedBuffer::Size)
      .def_property_readonly("bits", &hgbt::PackedBuffer::Bits)
      .def_property_readonly("size_bytes", &hgbt::PackedBuffer::SizeBytes)
      .def("unpack", [](hgbt::PackedBuffer const& b) {
        py::array_t<std::uint32_t> out(static_cast<py::ssize_t>(b.Size()));
        for (std::size_t i = 0; i < b.Size(); ++i) out.mutable_data()[i] = b[i];
        return out;
      });

  m.def("symbol_bits", &hgbt::SymbolBits, py::arg("max_value"));
  m.def("compress",
        [](U32Array const& symbols, unsigned bits) {
          if (symbols.ndim() != 1) throw py::value_error("expected a 1-d array");
          return hgbt::PackedBuffer::Compress(
              {symbols.data(), static_cast<std::size_t>(symbols.shape(0))}, bits);
        },
        py::arg("symbols"), py::arg("bits"));
  m.def("read_symbol", [](hgbt::PackedBuffer const& b, std::size_t i) { return b.ReadSymbol(i); },
        py::arg("buffer"), py::arg("index"));

  py::class_<hgbt::QuantizedMatrix>(m, "QuantizedMatrix")
      .def_property_readonly("n_rows", &hgbt::QuantizedMatrix::NumRows)
      .def_property_readonly("n_features", &hgbt::QuantizedMatrix::NumFeatures)
      .def_property_readonly("sentinel", &hgbt::QuantizedMatrix::Sentinel)
      .def_property_readonly("bits", [](hgbt::QuantizedMatrix const& q) { return q.Buffer().Bits(); })
      .def_property_readonly("size_bytes",
                             [](hgbt::QuantizedMatrix const& q) { return q.Buffer().SizeBytes(); })
      .def("compression_ratio", &hgbt::QuantizedMatrix::CompressionRatio)
      .def("symbol",
           [](hgbt::QuantizedMatrix const& q, std::size_t row, std::size_t f) {
             if (row >= q.NumRows() || f >= q.NumFeatures()) throw py::index_error("out of range");
             return q.Symbol(row, f);
           },
           py::arg("row"), py::arg("feature"))
      .def("symbols",
           [](hgbt::QuantizedMatrix const& q) {
             py::array_t<std::uint32_t> out(
                 {static_cast<py::ssize_t>(q.NumRows()), static_cast<py::ssize_t>(q.NumFeatures())});
             auto const& b = q.Buffer();
             for (std::size_t i = 0; i < b.Size(); ++i) out.mutable_data()[i] = b[i];
             return out;
           })
      .def("save_cache", &hgbt::QuantizedMatrix::SaveCache, py::arg("path"));

  m.def("quantize",
        [](hgbt::DataMatrix const& d, std::shared_ptr<hgbt::CutMatrix> const& cuts) {
          return hgbt::Quantize(d, cuts);
        },
        py::arg("data"), py::arg("cuts"));

  // objectives and metrics

  m.def("sigmoid", py::vectorize(&hgbt::Sigmoid), py::arg("x"));
  m.def("logistic_gradients",
        [](F64Array const& margins, F64Array const& labels) {
          std::vector<hgbt::GradientPair> out(AsSpan(margins).size());
          hgbt::LogisticGradients(AsSpan(margins), AsSpan(labels), out);
          return GradientsToNumpy(out);
        },
        py::arg("margins"), py::arg("labels"), "returns (grad, hess)");
  m.def("squared_error_gradients",
        [](F64Array const& margins, F64Array const& labels) {
          std::vector<hgbt::GradientPair> out(AsSpan(margins).size());
          hgbt::SquaredErrorGradients(AsSpan(margins), AsSpan(labels), out);
          return GradientsToNumpy(out);
        },
        py::arg("margins"), py::arg("labels"), "returns (grad, hess)");
  m.def("eval_metric",
        [](F64Array const& margins, F64Array const& labels, std::string const& metric) {
          return hgbt::EvalMetric(AsSpan(margins), AsSpan(labels), hgbt::ParseMetric(metric));
        },
        py::arg("margins"), py::arg("labels"), py::arg("metric"));

  // model and training

  py::class_<hgbt::Model>(m, "Model")
      .def_property_readonly("n_trees", [](hgbt::Model const& md) { return md.trees.size(); })
      .def_property_readonly("n_features", &hgbt::Model::NumFeatures)
      .def_property_readonly("base_margin", [](hgbt::Model const& md) { return md.base_margin; })
      .def_property_readonly("objective", [](hgbt::Model const& md) { return md.objective; })
      .def_property_readonly("cuts", [](hgbt::Model const& md) {
        return std::make_shared<hgbt::CutMatrix>(md.cuts);
      })
      .def(
          "predict",
          [](hgbt::Model const& md, hgbt::DataMatrix const& d, std::optional<std::size_t> tree_limit,
             bool output_prob) {
            std::vector<double> out;
            {
              py::gil_scoped_release release;
              out = hgbt::Predict(md, d, tree_limit);
              if (output_prob) {
                auto obj = hgbt::Objective::Create(md.objective);
                for (double& v : out) v = obj->Transform(v);
              }
            }
            return ToArray(out);
          },
          py::arg("data"), py::arg("tree_limit") = py::none(), py::arg("output_prob") = false)
      .def("predict_leaf",
           [](hgbt::Model const& md, hgbt::DataMatrix const& d) {
             auto leaves = hgbt::PredictLeaf(md, d);
             py::array_t<std::int32_t> out(
                 {static_cast<py::ssize_t>(d.NumRows()), static_cast<py::ssize_t>(md.trees.size())});
             std::copy(leaves.begin(), leaves.end(), out.mutable_data());
             return out;
           },
           py::arg("data"))
      .def("save", [](hgbt::Model const& md, std::string const& path) { hgbt::SaveModel(md, path); },
           py::arg("path"))
      .def_static("load", &hgbt::LoadModel, py::arg("path"))
      .def("to_json", &hgbt::SerializeModel)
      .def_static("from_json", &hgbt::ParseModel, py::arg("text"))
      .def("__eq__", [](hgbt::Model const& a, hgbt::Model const& b) { return a == b; });

  m.def(
      "train",
      [](hgbt::DataMatrix const& dtrain, hgbt::DataMatrix const* dvalid, std::string const& objective,
         std::string const& metric, std::uint32_t n_rounds, std::uint32_t max_depth,
         std::uint32_t max_leaves, double learning_rate, double reg_lambda, double gamma,
         double min_child_weight, std::string const& grow_policy, std::uint32_t max_bins,
         std::uint32_t n_workers, std::uint32_t n_threads, std::uint64_t seed,
         std::uint32_t eval_period) {
        hgbt::BoosterConfig cfg;
        cfg.objective = objective;
        cfg.metric = metric;
        cfg.n_rounds = n_rounds;
        cfg.tree.max_depth = max_depth;
        cfg.tree.max_leaves = max_leaves;
        cfg.tree.learning_rate = learning_rate;
        cfg.tree.reg_lambda = reg_lambda;
        cfg.tree.gamma = gamma;
        cfg.tree.min_child_weight = min_child_weight;
        cfg.tree.grow_policy = hgbt::ParseGrowPolicy(grow_policy);
        cfg.max_bins = max_bins;
        cfg.n_workers = n_workers;
        cfg.n_threads = n_threads;
        cfg.seed = seed;
        cfg.eval_period = eval_period;
        hgbt::TrainResult res;
        {
          py::gil_scoped_release release;
          res = hgbt::Train(cfg, dtrain, dvalid);
        }
        return py::make_tuple(std::move(res.model), ReportToDict(res.report));
      },
      py::arg("dtrain"), py::arg("dvalid") = nullptr, py::kw_only(),
      py::arg("objective") = "reg:squarederror", py::arg("metric") = "", py::arg("n_rounds") = 10,
      py::arg("max_depth") = 6, py::arg("max_leaves") = 0, py::arg("learning_rate") = 0.3,
      py::arg("reg_lambda") = 1.0, py::arg("gamma") = 0.0, py::arg("min_child_weight") = 1.0,
      py::arg("grow_policy") = "depthwise", py::arg("max_bins") = hgbt::kDefaultMaxBins,
      py::arg("n_workers") = 1, py::arg("n_threads") = 0, py::arg("seed") = 0,
      py::arg("eval_period") = 1, "returns (Model, report dict)");
}
