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

#include <fstream>
#include <sstream>

#include "hgbt/booster.h"
#include "hgbt/objective.h"
#include "json.hpp"

namespace hgbt {

using nlohmann::json;

namespace {

json ParamsToJson(Model const& model) {
  TrainParams const& p = model.params;
  return json{{"max_depth", p.max_depth},
              {"max_leaves", p.max_leaves},
              {"learning_rate", p.learning_rate},
              {"reg_lambda", p.reg_lambda},
              {"gamma", p.gamma},
              {"min_child_weight", p.min_child_weight},
              {"grow_policy", std::string(GrowPolicyName(p.grow_policy))},
              {"max_bins", model.max_bins},
              {"n_rounds", model.n_rounds}};
}

json CutsToJson(CutMatrix const& cuts) {
  json features = json::array();
  for (std::size_t f = 0; f < cuts.NumFeatures(); ++f) {
    json values = json::array();
    for (float v : cuts.FeatureCuts(f)) values.push_back(static_cast<double>(v));
    features.push_back(std::move(values));
  }
  return json{{"max_bins", cuts.MaxBins()}, {"features", std::move(features)}};
}

json TreeToJson(RegTree const& tree) {
  json nodes = json::array();
  for (auto const& n : tree.Nodes()) {
    if (n.IsLeaf()) {
      nodes.push_back(json{{"type", "leaf"}, {"weight", n.weight}});
    } else {
      nodes.push_back(json{{"type", "split"},
                           {"feature", n.feature},
                           {"threshold", static_cast<double>(n.threshold)},
                           {"default_left", n.default_left},
                           {"left", n.left},
                           {"right", n.right}});
    }
  }
  return json{{"nodes", std::move(nodes)}};
}

[[noreturn]] void Bad(std::string const& what) { throw SchemaError("invalid model: " + what); }

json const& Field(json const& obj, char const* key) {
  if (!obj.is_object()) Bad(std::string("expected an object holding '") + key + "'");
  auto it = obj.find(key);
  if (it == obj.end()) Bad(std::string("missing field '") + key + "'");
  return *it;
}

double Number(json const& obj, char const* key) {
  json const& v = Field(obj, key);
  if (!v.is_number()) Bad(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

template <typename T>
T Unsigned(json const& obj, char const* key) {
  json const& v = Field(obj, key);
  if (!v.is_number_unsigned()) Bad(std::string("field '") + key + "' must be a non-negative integer");
  auto const raw = v.get<std::uint64_t>();
  if (raw > std::numeric_limits<T>::max()) Bad(std::string("field '") + key + "' out of range");
  return static_cast<T>(raw);
}

std::string String(json const& obj, char const* key) {
  json const& v = Field(obj, key);
  if (!v.is_string()) Bad(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

bool Bool(json const& obj, char const* key) {
  json const& v = Field(obj, key);
  if (!v.is_boolean()) Bad(std::string("field '") + key + "' must be a boolean");
  return v.get<bool>();
}

json const& Array(json const& obj, char const* key) {
  json const& v = Field(obj, key);
  if (!v.is_array()) Bad(std::string("field '") + key + "' must be an array");
  return v;
}

float ToFloat(double v, char const* what) {
  auto const f = static_cast<float>(v);
  if (!std::isfinite(f) || static_cast<double>(f) != v) {
    Bad(std::string(what) + " is not an exactly representable finite float");
  }
  return f;
}

RegTree TreeFromJson(json const& jtree, std::size_t n_features) {
  std::vector<RegTree::Node> nodes;
  for (json const& jn : Array(jtree, "nodes")) {
    RegTree::Node n;
    std::string const type = String(jn, "type");
    if (type == "leaf") {
      n.weight = Number(jn, "weight");
    } else if (type == "split") {
      n.feature = Unsigned<bst_feature_t>(jn, "feature");
      if (n.feature >= n_features) Bad("split feature " + std::to_string(n.feature) + " out of range");
      n.threshold = ToFloat(Number(jn, "threshold"), "threshold");
      n.default_left = Bool(jn, "default_left");
      n.left = Unsigned<bst_node_t>(jn, "left");
      n.right = Unsigned<bst_node_t>(jn, "right");
    } else {
      Bad("unknown node type '" + type + "'");
    }
    nodes.push_back(n);
  }
  return RegTree::FromNodes(std::move(nodes));
}

}  // namespace

std::string SerializeModel(Model const& model) {
  json trees = json::array();
  for (auto const& t : model.trees) trees.push_back(TreeToJson(t));
  json doc{{"format_version", Model::kFormatVersion},
           {"objective", model.objective},
           {"base_margin", model.base_margin},
           {"params", ParamsToJson(model)},
           {"cuts", CutsToJson(model.cuts)},
           {"trees", std::move(trees)}};
  return doc.dump();
}

Model ParseModel(std::string const& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (json::exception const& e) {
    throw SchemaError(std::string("invalid model: not valid JSON (") + e.what() + ")");
  }
  auto const version = Unsigned<std::uint32_t>(doc, "format_version");
  if (version != Model::kFormatVersion) {
    throw SchemaError("unsupported model format_version " + std::to_string(version) +
                      " (expected " + std::to_string(Model::kFormatVersion) + ")");
  }
  Model model;
  model.objective = String(doc, "objective");
  try {
    Objective::Create(model.objective);
  } catch (ValidationError const& e) {
    Bad(e.what());
  }
  model.base_margin = Number(doc, "base_margin");
  if (!std::isfinite(model.base_margin)) Bad("base_margin must be finite");

  json const& params = Field(doc, "params");
  TrainParams& p = model.params;
  p.max_depth = Unsigned<std::uint32_t>(params, "max_depth");
  p.max_leaves = Unsigned<std::uint32_t>(params, "max_leaves");
  p.learning_rate = Number(params, "learning_rate");
  p.reg_lambda = Number(params, "reg_lambda");
  p.gamma = Number(params, "gamma");
  p.min_child_weight = Number(params, "min_child_weight");
  try {
    p.grow_policy = ParseGrowPolicy(String(params, "grow_policy"));
  } catch (ValidationError const& e) {
    Bad(e.what());
  }
  model.max_bins = Unsigned<std::uint32_t>(params, "max_bins");
  model.n_rounds = Unsigned<std::uint32_t>(params, "n_rounds");

  json const& jcuts = Field(doc, "cuts");
  std::vector<std::vector<float>> per_feature;
  for (json const& jf : Array(jcuts, "features")) {
    if (!jf.is_array()) Bad("cuts.features entries must be arrays");
    std::vector<float> values;
    for (json const& v : jf) {
      if (!v.is_number()) Bad("cut values must be numbers");
      values.push_back(ToFloat(v.get<double>(), "cut value"));
    }
    per_feature.push_back(std::move(values));
  }
  try {
    model.cuts = CutMatrix(per_feature, Unsigned<std::uint32_t>(jcuts, "max_bins"));
  } catch (ContractError const& e) {
    Bad(e.what());
  }

  for (json const& jt : Array(doc, "trees")) {
    model.trees.push_back(TreeFromJson(jt, model.cuts.NumFeatures()));
  }
  return model;
}

void SaveModel(Model const& model, std::string const& path) {
  std::ofstream fo(path, std::ios::binary);
  if (!fo) throw IoError("cannot open file for writing: " + path);
  fo << SerializeModel(model) << '\n';
  if (!fo) throw IoError("failed writing file: " + path);
}

Model LoadModel(std::string const& path) {
  std::ifstream fi(path, std::ios::binary);
  if (!fi) throw IoError("cannot open file: " + path);
  std::ostringstream ss;
  ss << fi.rdbuf();
  return ParseModel(ss.str());
}

}  // namespace hgbt
