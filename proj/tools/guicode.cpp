// Copyright 2026 The guicode Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// guicode: synthesize, render and compile GUI datasets; train, sample and
// evaluate image-to-DSL models.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "guicode/checkpoint.hpp"
#include "guicode/compile.hpp"
#include "guicode/config.hpp"
#include "guicode/dataset.hpp"
#include "guicode/decode.hpp"
#include "guicode/render.hpp"
#include "guicode/train.hpp"

namespace fs = std::filesystem;
using namespace guicode;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumerical = 3;

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out << text;
}

struct SynthArgs {
  std::size_t count = 250;
  std::size_t test_count = 50;
  std::uint64_t seed = 0;
  std::string out;
  int max_rows = SynthParams::desk().max_rows;
};

int run_synth(const SynthArgs& a) {
  SynthParams p = SynthParams::desk();
  p.max_rows = a.max_rows;
  const Manifest m = synth_dataset(a.out, a.count, a.test_count, a.seed, p);
  std::cout << "wrote " << m.count << " files (" << m.train_count() << " train, " << m.test_count << " test) to "
            << a.out << '\n';
  return kExitOk;
}

struct RenderArgs {
  std::string in;
  int size = 64;
  std::string theme = "default";
};

int run_render(const RenderArgs& a) {
  render_dataset(a.in, a.size, a.theme);
  std::cout << "rendered " << read_manifest(a.in).count << " images at " << a.size << "x" << a.size << '\n';
  return kExitOk;
}

struct CompileArgs {
  std::string target;
  std::string in;
  std::string out;
};

int run_compile(const CompileArgs& a) {
  const Target target = target_from_name(a.target);
  if (fs::is_directory(a.in)) {
    compile_dataset(a.in, target);
    return kExitOk;
  }
  const std::string doc = compile(read_gui(a.in), target);
  if (a.out.empty()) {
    std::cout << doc;
  } else {
    write_file(a.out, doc);
  }
  return kExitOk;
}

struct TrainArgs {
  std::string data;
  std::string config;
  std::uint64_t seed = 0;
  std::string out;
  std::optional<int> epochs;
  std::string loss_csv;
};

int run_train(const TrainArgs& a) {
  RunConfig rc;
  if (!a.config.empty()) rc = load_run_config(a.config);
  if (a.epochs) rc.train.epochs = *a.epochs;
  rc.train.validate();

  const LoadedFiles files = load_split(a.data, Split::kTrain, rc.model.image_size);
  if (files.ids.empty()) throw DataError("no training files in " + a.data);
  const Dataset data = make_dataset(files.images, files.tokens, static_cast<std::size_t>(rc.model.window));
  std::cerr << files.ids.size() << " files, " << data.samples.size() << " samples, "
            << param_count(rc.model) << " parameters\n";

  Model<float> model(rc.model);
  const auto t0 = std::chrono::steady_clock::now();
  std::string csv = "epoch,mean_loss\n";
  train(model, data, rc.train, a.seed, [&](int epoch, double loss) {
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << "epoch " << epoch << " loss " << format_number(loss) << " (" << static_cast<long>(secs) << " s)\n";
    csv += std::to_string(epoch) + "," + format_number(loss) + "\n";
  });
  save_checkpoint(a.out, model, Vocabulary::standard());
  write_file(a.loss_csv.empty() ? a.out + ".loss.csv" : a.loss_csv, csv);
  return kExitOk;
}

struct SampleArgs {
  std::string image;
  std::string ckpt;
  std::size_t beam = 1;
  std::size_t max_len = kDefaultMaxLen;
};

int run_sample(const SampleArgs& a) {
  Checkpoint ck = load_checkpoint(a.ckpt);
  const int size = ck.model.config().image_size;
  const GuiImage image = resize_normalize(read_png(a.image), size, size);
  const std::vector<std::size_t> raw =
      a.beam <= 1 ? sample_greedy(ck.model, image, a.max_len) : sample_beam(ck.model, image, a.beam, a.max_len).tokens;
  std::cout << join_lexemes(to_tokens(raw, ck.vocab)) << '\n';
  return kExitOk;
}

struct EvalArgs {
  std::string data;
  std::string ckpt;
  std::size_t beam = 1;
  std::size_t max_len = kDefaultMaxLen;
  std::string split = "test";
  std::string report;
  std::string roc;
};

int run_eval(const EvalArgs& a) {
  Checkpoint ck = load_checkpoint(a.ckpt);
  const Split split = a.split == "train" ? Split::kTrain : a.split == "all" ? Split::kAll : Split::kTest;
  const LoadedFiles files = load_split(a.data, split, ck.model.config().image_size);
  if (files.ids.empty()) throw DataError("no files in the " + a.split + " split of " + a.data);
  const EvalReport report = evaluate_files(ck.model, files, a.beam, a.max_len, !a.roc.empty());
  const std::string csv = report_csv(report);
  if (a.report.empty()) {
    std::cout << csv;
  } else {
    write_file(a.report, csv);
  }
  if (!a.roc.empty()) write_file(a.roc, roc_csv(report.roc));
  std::cerr << "mean token error " << format_number(report.mean_error) << " over " << files.ids.size() << " files";
  if (!a.roc.empty()) std::cerr << ", ROC area " << format_number(report.roc.area);
  std::cerr << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"guicode: GUI screenshots to DSL code"};
  app.require_subcommand(1);

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Synthesize random GUI files");
  synth_cmd->add_option("--count", synth.count, "Number of files")->check(CLI::PositiveNumber);
  synth_cmd->add_option("--test-count", synth.test_count, "Trailing ids reserved for the test split");
  synth_cmd->add_option("--seed", synth.seed, "Generator seed");
  synth_cmd->add_option("--max-rows", synth.max_rows, "Maximum rows per GUI")->check(CLI::PositiveNumber);
  synth_cmd->add_option("--out", synth.out, "Output directory")->required();

  RenderArgs render;
  auto* render_cmd = app.add_subcommand("render", "Rasterize every .gui file of a dataset to .png");
  render_cmd->add_option("--in", render.in, "Dataset directory")->required();
  render_cmd->add_option("--size", render.size, "Square canvas size")->check(CLI::Range(kMinCanvas, 4096));
  render_cmd->add_option("--theme", render.theme, "Theme name")->check(CLI::IsMember(theme_names()));

  CompileArgs comp;
  auto* compile_cmd = app.add_subcommand("compile", "Compile .gui files to target markup");
  compile_cmd->add_option("--target", comp.target, "web, android or ios")
      ->required()
      ->check(CLI::IsMember({"web", "android", "ios"}));
  compile_cmd->add_option("--in", comp.in, "A .gui file or a dataset directory")->required();
  compile_cmd->add_option("--out", comp.out, "Output file for single-file input (default stdout)");

  TrainArgs tr;
  auto* train_cmd = app.add_subcommand("train", "Train a model on the train split");
  train_cmd->add_option("--data", tr.data, "Dataset directory")->required();
  train_cmd->add_option("--config", tr.config, "key=value config file (default: desk preset)");
  train_cmd->add_option("--seed", tr.seed, "Initialization, shuffling and dropout seed");
  train_cmd->add_option("--out", tr.out, "Checkpoint path")->required();
  train_cmd->add_option("--epochs", tr.epochs, "Override the configured epoch count");
  train_cmd->add_option("--loss-csv", tr.loss_csv, "Loss trace path (default: <out>.loss.csv)");

  SampleArgs smp;
  auto* sample_cmd = app.add_subcommand("sample", "Decode one screenshot to DSL");
  sample_cmd->add_option("--image", smp.image, "PNG screenshot")->required();
  sample_cmd->add_option("--ckpt", smp.ckpt, "Checkpoint")->required();
  sample_cmd->add_option("--beam", smp.beam, "Beam width; 1 is greedy")->check(CLI::PositiveNumber);
  sample_cmd->add_option("--max-len", smp.max_len, "Token cap")->check(CLI::PositiveNumber);

  EvalArgs ev;
  auto* eval_cmd = app.add_subcommand("eval", "Token error of a checkpoint on a dataset split");
  eval_cmd->add_option("--data", ev.data, "Dataset directory")->required();
  eval_cmd->add_option("--ckpt", ev.ckpt, "Checkpoint")->required();
  eval_cmd->add_option("--beam", ev.beam, "Beam width; 1 is greedy")->check(CLI::PositiveNumber);
  eval_cmd->add_option("--max-len", ev.max_len, "Token cap")->check(CLI::PositiveNumber);
  eval_cmd->add_option("--split", ev.split, "test, train or all")->check(CLI::IsMember({"test", "train", "all"}));
  eval_cmd->add_option("--report", ev.report, "Report CSV path (default stdout)");
  eval_cmd->add_option("--roc", ev.roc, "Write the teacher-forced micro-average ROC curve here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (synth_cmd->parsed()) return run_synth(synth);
    if (render_cmd->parsed()) return run_render(render);
    if (compile_cmd->parsed()) return run_compile(comp);
    if (train_cmd->parsed()) return run_train(tr);
    if (sample_cmd->parsed()) return run_sample(smp);
    if (eval_cmd->parsed()) return run_eval(ev);
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << " (batch " << e.batch() << ", max |grad| "
              << format_number(e.max_abs_grad()) << ")\n";
    return kExitNumerical;
  } catch (const nn::TensorError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == nn::TensorError::Kind::kNonFinite ? kExitNumerical : kExitData;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
