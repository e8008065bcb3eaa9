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

#include "hgbt/cli.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "hgbt/booster.h"
#include "hgbt/data.h"
#include "hgbt/objective.h"
#include "hgbt/threading.h"

namespace hgbt {

std::string FormatDouble(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

struct DataFlags {
  std::string path;
  std::string format{"csv"};
  std::size_t label_column{0};
  bool header{false};
  bool zero_based{false};
};

struct TrainFlags {
  DataFlags data;
  std::string valid_path;
  std::string model_out;
  std::string grow_policy{"depthwise"};
  BoosterConfig config;
};

DataMatrix LoadData(DataFlags const& flags, std::string const& path) {
  if (flags.format == "libsvm") {
    return LoadLibsvm(path, flags.zero_based ? IndexBase::kZero : IndexBase::kOne);
  }
  return LoadCsv(path, CsvOptions{flags.label_column, flags.header});
}

void AddDataFlags(CLI::App* cmd, DataFlags* flags, bool data_required) {
  auto* opt = cmd->add_option("--data", flags->path, "input data file");
  if (data_required) opt->required();
  cmd->add_option("--format", flags->format, "input format")
      ->check(CLI::IsMember({"csv", "libsvm"}))
      ->capture_default_str();
  cmd->add_option("--label-column", flags->label_column, "label column of csv input")
      ->capture_default_str();
  cmd->add_flag("--header", flags->header, "csv input has a header line");
  cmd->add_flag("--zero-based", flags->zero_based, "libsvm feature indices start at 0");
}

void AddTrainFlags(CLI::App* cmd, TrainFlags* flags) {
  BoosterConfig& c = flags->config;
  cmd->add_option("--objective", c.objective, "reg:squarederror | binary:logistic")
      ->capture_default_str();
  cmd->add_option("--metric", c.metric, "rmse | accuracy | logloss (default: per objective)");
  cmd->add_option("--rounds", c.n_rounds, "boosting rounds")->capture_default_str();
  cmd->add_option("--max-depth", c.tree.max_depth, "maximum tree depth")->capture_default_str();
  cmd->add_option("--max-leaves", c.tree.max_leaves, "leaf budget for lossguide, 0 = none")
      ->capture_default_str();
  cmd->add_option("--grow-policy", flags->grow_policy, "depthwise | lossguide")
      ->check(CLI::IsMember({"depthwise", "lossguide"}))
      ->capture_default_str();
  cmd->add_option("--eta", c.tree.learning_rate, "learning rate")->capture_default_str();
  cmd->add_option("--lambda", c.tree.reg_lambda, "L2 regularization on leaf weights")
      ->capture_default_str();
  cmd->add_option("--gamma", c.tree.gamma, "minimum gain to split")->capture_default_str();
  cmd->add_option("--min-child-weight", c.tree.min_child_weight, "minimum child hessian")
      ->capture_default_str();
  cmd->add_option("--max-bins", c.max_bins, "quantile bins per feature")->capture_default_str();
  cmd->add_option("--threads", c.n_threads, "OS threads, 0 = one per worker");
  cmd->add_option("--seed", c.seed, "random seed")->capture_default_str();
  cmd->add_option("--eval-period", c.eval_period, "rounds between metric lines")
      ->capture_default_str();
}

void PrintStageTimes(StageTimes const& t, double wall, std::ostream& out) {
  out << std::fixed << std::setprecision(4) << "stage times (s): quantize=" << t.quantize
      << " histogram=" << t.histogram << " evaluate=" << t.evaluate << " predict=" << t.predict
      << " gradient=" << t.gradient << " total=" << wall << '\n';
  out.unsetf(std::ios::floatfield);
  out << std::setprecision(6);
}

int CmdTrain(TrainFlags flags, std::ostream& out, std::ostream& err) {
  flags.config.tree.grow_policy = ParseGrowPolicy(flags.grow_policy);
  DataMatrix const dtrain = LoadData(flags.data, flags.data.path);
  std::optional<DataMatrix> dvalid;
  if (!flags.valid_path.empty()) {
    dvalid = LoadData(flags.data, flags.valid_path);
  }
  TrainResult const res = Train(flags.config, dtrain, dvalid ? &*dvalid : nullptr);
  std::string const& m = res.report.metric;
  out << "round,train_" << m << (dvalid ? ",valid_" + m : std::string{}) << '\n';
  for (auto const& e : res.report.evals) {
    out << e.round << ',' << FormatDouble(e.train);
    if (e.valid) out << ',' << FormatDouble(*e.valid);
    out << '\n';
  }
  PrintStageTimes(res.report.times, res.report.wall_seconds, out);
  if (!flags.model_out.empty()) {
    SaveModel(res.model, flags.model_out);
    err << "model written to " << flags.model_out << '\n';
  }
  return kExitOk;
}

void NoteExtraFeatures(DataMatrix const& data, Model const& model, std::ostream& err) {
  if (data.NumFeatures() > model.NumFeatures()) {
    err << "note: data has " << data.NumFeatures() << " features, model uses "
        << model.NumFeatures() << "; extra features are treated as missing\n";
  }
}

int CmdPredict(DataFlags const& data_flags, std::string const& model_in, std::string const& out_path,
               bool output_prob, std::ostream& out, std::ostream& err) {
  Model const model = LoadModel(model_in);
  DataMatrix const data = LoadData(data_flags, data_flags.path);
  NoteExtraFeatures(data, model, err);
  ThreadPool pool;
  std::vector<double> margins = Predict(model, data, std::nullopt, &pool);
  if (output_prob) {
    auto const obj = Objective::Create(model.objective);
    for (double& m : margins) m = obj->Transform(m);
  }
  std::ofstream file;
  std::ostream* sink = &out;
  if (!out_path.empty() && out_path != "-") {
    file.open(out_path);
    if (!file) throw IoError("cannot open file for writing: " + out_path);
    sink = &file;
  }
  for (double m : margins) *sink << FormatDouble(m) << '\n';
  if (!*sink) throw IoError("failed writing predictions");
  return kExitOk;
}

int CmdEval(DataFlags const& data_flags, std::string const& model_in, std::string metric_name,
            std::ostream& out, std::ostream& err) {
  Model const model = LoadModel(model_in);
  DataMatrix const data = LoadData(data_flags, data_flags.path);
  NoteExtraFeatures(data, model, err);
  if (metric_name.empty()) {
    metric_name = std::string(Objective::Create(model.objective)->DefaultMetric());
  }
  Metric const metric = ParseMetric(metric_name);
  ThreadPool pool;
  auto const margins = Predict(model, data, std::nullopt, &pool);
  out << MetricName(metric) << ',' << FormatDouble(EvalMetric(margins, data.Labels(), metric))
      << '\n';
  return kExitOk;
}

struct BenchFlags {
  BenchFlags() {
    train.config.n_rounds = 500;
    train.config.tree.max_depth = 8;
    train.config.tree.learning_rate = 0.1;
  }
  TrainFlags train;
  std::string synthetic{"regression"};
  std::size_t rows{100000};
  std::size_t features{50};
  std::vector<std::uint32_t> workers_list{1, 2, 4};
  std::string out_path;
};

int CmdBench(BenchFlags flags, std::ostream& out, std::ostream& err) {
  flags.train.config.tree.grow_policy = ParseGrowPolicy(flags.train.grow_policy);
  DataMatrix data;
  if (!flags.train.data.path.empty()) {
    data = LoadData(flags.train.data, flags.train.data.path);
  } else {
    if (flags.train.config.objective == "reg:squarederror" && flags.synthetic != "regression") {
      err << "note: synthetic classification data with a regression objective\n";
    }
    auto kind = flags.synthetic == "classification" ? SyntheticKind::kClassification
                                                    : SyntheticKind::kRegression;
    data = MakeSynthetic(kind, flags.rows, flags.features, flags.train.config.seed);
  }

  struct Row {
    std::uint32_t workers;
    TrainReport report;
  };
  std::vector<Row> rows;
  std::string metric_name;
  for (std::uint32_t p : flags.workers_list) {
    BoosterConfig cfg = flags.train.config;
    cfg.n_workers = p;
    cfg.eval_period = cfg.n_rounds;
    TrainResult res = Train(cfg, data);
    metric_name = res.report.metric;
    rows.push_back({p, std::move(res.report)});
  }

  std::ostringstream csv;
  csv << "workers,total_s,quantize_s,histogram_s,evaluate_s,predict_s,gradient_s,metric\n";
  for (auto const& r : rows) {
    auto const& t = r.report.times;
    csv << r.workers << ',' << r.report.wall_seconds << ',' << t.quantize << ',' << t.histogram
        << ',' << t.evaluate << ',' << t.predict << ',' << t.gradient << ','
        << FormatDouble(r.report.evals.back().train) << '\n';
  }

  out << std::left << std::setw(8) << "workers" << std::right << std::setw(10) << "total_s"
      << std::setw(12) << "quantize_s" << std::setw(13) << "histogram_s" << std::setw(12)
      << "evaluate_s" << std::setw(11) << "predict_s" << std::setw(12) << "gradient_s"
      << std::setw(22) << metric_name << '\n';
  out << std::fixed << std::setprecision(3);
  for (auto const& r : rows) {
    auto const& t = r.report.times;
    out << std::left << std::setw(8) << r.workers << std::right << std::setw(10)
        << r.report.wall_seconds << std::setw(12) << t.quantize << std::setw(13) << t.histogram
        << std::setw(12) << t.evaluate << std::setw(11) << t.predict << std::setw(12) << t.gradient
        << std::setw(22) << FormatDouble(r.report.evals.back().train) << '\n';
  }
  out.unsetf(std::ios::floatfield);
  out << std::setprecision(6);

  bool identical = std::all_of(rows.begin(), rows.end(), [&](Row const& r) {
    return r.report.evals.back().train == rows.front().report.evals.back().train;
  });
  out << "metrics identical across worker counts: " << (identical ? "yes" : "no") << '\n';

  if (!flags.out_path.empty() && flags.out_path != "-") {
    std::ofstream fo(flags.out_path);
    if (!fo) throw IoError("cannot open file for writing: " + flags.out_path);
    fo << csv.str();
  } else {
    out << '\n' << csv.str();
  }
  return kExitOk;
}

}  // namespace

int RunCli(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"hgbt: histogram gradient boosted trees", "hgbt"};
  app.require_subcommand(1);

  TrainFlags train;
  auto* cmd_train = app.add_subcommand("train", "train a model");
  AddDataFlags(cmd_train, &train.data, true);
  AddTrainFlags(cmd_train, &train);
  cmd_train->add_option("--valid", train.valid_path, "validation data file");
  cmd_train->add_option("--workers", train.config.n_workers, "logical workers (row shards)")
      ->capture_default_str();
  cmd_train->add_option("--model-out", train.model_out, "where to write the model JSON");

  DataFlags pred_data;
  std::string pred_model;
  std::string pred_out;
  bool output_prob = false;
  auto* cmd_predict = app.add_subcommand("predict", "write one prediction per input row");
  AddDataFlags(cmd_predict, &pred_data, true);
  cmd_predict->add_option("--model-in", pred_model, "model JSON")->required();
  cmd_predict->add_option("--out", pred_out, "output file ('-' or empty for stdout)");
  cmd_predict->add_flag("--output-prob", output_prob, "emit probabilities for logistic models");

  DataFlags eval_data;
  std::string eval_model;
  std::string eval_metric;
  auto* cmd_eval = app.add_subcommand("eval", "evaluate a model on a dataset");
  AddDataFlags(cmd_eval, &eval_data, true);
  cmd_eval->add_option("--model-in", eval_model, "model JSON")->required();
  cmd_eval->add_option("--metric", eval_metric, "rmse | accuracy | logloss");

  BenchFlags bench;
  auto* cmd_bench = app.add_subcommand("bench", "time training across worker counts");
  AddDataFlags(cmd_bench, &bench.train.data, false);
  AddTrainFlags(cmd_bench, &bench.train);
  cmd_bench->add_option("--synthetic", bench.synthetic, "synthetic data when --data is absent")
      ->check(CLI::IsMember({"regression", "classification"}))
      ->capture_default_str();
  cmd_bench->add_option("--rows", bench.rows, "synthetic rows")->capture_default_str();
  cmd_bench->add_option("--features", bench.features, "synthetic features")->capture_default_str();
  cmd_bench->add_option("--workers-list", bench.workers_list, "comma separated worker counts")
      ->delimiter(',')
      ->capture_default_str();
  cmd_bench->add_option("--out", bench.out_path, "CSV report path ('-' or empty for stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (CLI::CallForHelp const&) {
    auto const* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    out << sub->help();
    return kExitOk;
  } catch (CLI::ParseError const& e) {
    err << "error: " << e.what() << "\n\n";
    auto const* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help();
    return kExitUsage;
  }

  try {
    if (cmd_train->parsed()) return CmdTrain(train, out, err);
    if (cmd_predict->parsed()) {
      return CmdPredict(pred_data, pred_model, pred_out, output_prob, out, err);
    }
    if (cmd_eval->parsed()) return CmdEval(eval_data, eval_model, eval_metric, out, err);
    if (cmd_bench->parsed()) {
      if (bench.workers_list.empty()) throw ValidationError("--workers-list is empty");
      return CmdBench(bench, out, err);
    }
  } catch (std::exception const& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace hgbt
