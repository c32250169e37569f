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

#include "guicode/dataset.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "guicode/decode.hpp"
#include "guicode/render.hpp"
#include "guicode/rng.hpp"
#include "guicode/train.hpp"

namespace guicode {
namespace fs = std::filesystem;

namespace {

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out << text;
  if (!out) throw DataError("write failed for " + path.string());
}

template <typename N>
N manifest_number(const std::string& key, const std::string& value) {
  N out{};
  const auto r = std::from_chars(value.data(), value.data() + value.size(), out);
  if (r.ec != std::errc{} || r.ptr != value.data() + value.size()) {
    throw DataError("manifest: bad value for " + key + ": '" + value + "'");
  }
  return out;
}

}  // namespace

std::string file_id(std::size_t index) {
  std::string s = std::to_string(index);
  if (s.size() < 4) s.insert(0, 4 - s.size(), '0');
  return s;
}

Manifest read_manifest(const fs::path& dir) {
  Manifest m;
  std::istringstream in(read_text(dir / "manifest.txt"));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw DataError("manifest: malformed line '" + line + "'");
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    if (key == "seed") m.seed = manifest_number<std::uint64_t>(key, value);
    else if (key == "count") m.count = manifest_number<std::size_t>(key, value);
    else if (key == "test_count") m.test_count = manifest_number<std::size_t>(key, value);
    else if (key == "train_count") continue;  // derived
    else if (key == "theme") m.theme = value;
    else if (key == "theme_version") m.theme_version = value;
    else if (key == "image_size") m.image_size = manifest_number<int>(key, value);
    else throw DataError("manifest: unknown key '" + key + "'");
  }
  if (m.test_count > m.count) throw DataError("manifest: test_count exceeds count");
  return m;
}

void write_manifest(const fs::path& dir, const Manifest& m) {
  std::ostringstream out;
  out << "seed=" << m.seed << '\n'
      << "count=" << m.count << '\n'
      << "train_count=" << m.train_count() << '\n'
      << "test_count=" << m.test_count << '\n'
      << "theme=" << m.theme << '\n'
      << "theme_version=" << m.theme_version << '\n'
      << "image_size=" << m.image_size << '\n';
  write_text(dir / "manifest.txt", out.str());
}

Manifest synth_dataset(const fs::path& dir, std::size_t count, std::size_t test_count, std::uint64_t seed,
                       const SynthParams& params) {
  if (count == 0) throw DataError("synth: count must be positive");
  if (test_count > count) throw DataError("synth: test count exceeds count");
  fs::create_directories(dir);
  for (std::size_t i = 0; i < count; ++i) {
    SynthParams p = params;
    p.seed = derive_seed(seed, {i});
    write_text(dir / (file_id(i) + ".gui"), serialize(synthesize_ast(p)) + "\n");
  }
  Manifest m;
  m.seed = seed;
  m.count = count;
  m.test_count = test_count;
  write_manifest(dir, m);
  return m;
}

GuiAst read_gui(const fs::path& path) { return parse(tokenize(read_text(path))); }

void render_dataset(const fs::path& dir, int size, const std::string& theme_name) {
  Manifest m = read_manifest(dir);
  const RenderTheme theme = theme_by_name(theme_name);
  for (std::size_t i = 0; i < m.count; ++i) {
    const GuiAst ast = read_gui(dir / (file_id(i) + ".gui"));
    write_png(dir / (file_id(i) + ".png"), rasterize_raster(ast, size, size, theme));
  }
  m.theme = theme.name;
  m.theme_version = theme.version;
  m.image_size = size;
  write_manifest(dir, m);
}

void compile_dataset(const fs::path& dir, Target target) {
  const Manifest m = read_manifest(dir);
  for (std::size_t i = 0; i < m.count; ++i) {
    const GuiAst ast = read_gui(dir / (file_id(i) + ".gui"));
    write_text(dir / (file_id(i) + std::string(file_extension(target))), compile(ast, target));
  }
}

LoadedFiles load_split(const fs::path& dir, Split split, int image_size) {
  const Manifest m = read_manifest(dir);
  if (m.image_size == 0) throw DataError("dataset " + dir.string() + " has not been rendered");
  std::size_t lo = 0, hi = m.count;
  if (split == Split::kTrain) hi = m.train_count();
  if (split == Split::kTest) lo = m.train_count();
  LoadedFiles out;
  for (std::size_t i = lo; i < hi; ++i) {
    const std::string id = file_id(i);
    out.ids.push_back(id);
    out.tokens.push_back(tokenize(read_text(dir / (id + ".gui"))));
    parse(out.tokens.back());  // validates
    try {
      out.images.push_back(resize_normalize(read_png(dir / (id + ".png")), image_size, image_size));
    } catch (const ImageError& e) {
      throw DataError(e.what());
    }
  }
  return out;
}

EvalReport evaluate_files(Model<float>& model, const LoadedFiles& files, std::size_t beam, std::size_t max_len,
                          bool with_roc) {
  const Vocabulary& vocab = Vocabulary::standard();
  EvalReport report;
  std::vector<double> errors;
  for (std::size_t i = 0; i < files.ids.size(); ++i) {
    const std::vector<std::size_t> raw = beam <= 1 ? sample_greedy(model, files.images[i], max_len)
                                                   : sample_beam(model, files.images[i], beam, max_len).tokens;
    const std::vector<Token> generated = to_tokens(raw, vocab);
    FileResult r;
    r.id = files.ids[i];
    r.expected_len = files.tokens[i].size();
    r.generated_len = generated.size();
    r.error = token_error(generated, files.tokens[i]);
    errors.push_back(r.error);
    report.files.push_back(std::move(r));
  }
  if (!errors.empty()) report.mean_error = mean_error(errors);
  if (with_roc && !files.ids.empty()) {
    const Dataset data = make_dataset(files.images, files.tokens, static_cast<std::size_t>(model.config().window));
    const TeacherForced tf = teacher_forced(model, data);
    report.roc = roc_micro_average(tf.distributions, tf.targets);
  }
  return report;
}

std::string format_number(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string report_csv(const EvalReport& report) {
  std::ostringstream out;
  out << "file_id,expected_len,generated_len,error\n";
  for (const auto& f : report.files) {
    out << f.id << ',' << f.expected_len << ',' << f.generated_len << ',' << format_number(f.error) << '\n';
  }
  out << "# mean_error=" << format_number(report.mean_error) << " files=" << report.files.size() << '\n';
  return out.str();
}

std::string roc_csv(const RocCurve& curve) {
  std::ostringstream out;
  out << "threshold,fpr,tpr\n";
  for (const auto& p : curve.points) {
    out << format_number(p.threshold) << ',' << format_number(p.fpr) << ',' << format_number(p.tpr) << '\n';
  }
  out << "# area=" << format_number(curve.area) << '\n';
  return out.str();
}

}  // namespace guicode
