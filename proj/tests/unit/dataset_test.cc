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

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "guicode/dataset.hpp"
#include "guicode/render.hpp"
#include "test_util.hpp"

namespace guicode {
namespace {

namespace fs = std::filesystem;
using guicode::testing::TempDir;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(Dataset, FileIds) {
  EXPECT_EQ(file_id(0), "0000");
  EXPECT_EQ(file_id(42), "0042");
  EXPECT_EQ(file_id(12345), "12345");
}

TEST(Dataset, ManifestRoundTrip) {
  TempDir dir;
  Manifest m{17, 30, 5, "default", "1", 64};
  write_manifest(dir.path(), m);
  EXPECT_EQ(read_manifest(dir.path()), m);
  EXPECT_EQ(m.train_count(), 25u);
  EXPECT_THROW(read_manifest(dir.path() / "nope"), DataError);
}

TEST(Dataset, SynthIsSeededPerFile) {
  TempDir a, b;
  const Manifest m = synth_dataset(a.path(), 12, 3, 99);
  synth_dataset(b.path(), 12, 3, 99);
  EXPECT_EQ(m.count, 12u);
  EXPECT_EQ(m.test_count, 3u);
  for (std::size_t i = 0; i < 12; ++i) {
    const fs::path f = a.path() / (file_id(i) + ".gui");
    ASSERT_TRUE(fs::exists(f));
    EXPECT_EQ(slurp(f), slurp(b.path() / (file_id(i) + ".gui")));
    SynthParams sp = SynthParams::desk();
    sp.seed = derive_seed(99, {i});
    EXPECT_EQ(read_gui(f), synthesize_ast(sp));
    EXPECT_EQ(slurp(f), serialize(synthesize_ast(sp)) + "\n");
  }
  EXPECT_THROW(synth_dataset(a.path() / "x", 3, 4, 1), std::exception);
}

TEST(Dataset, RenderCompileAndLoad) {
  TempDir dir;
  synth_dataset(dir.path(), 6, 2, 5);
  render_dataset(dir.path(), 64, "default");
  const Manifest m = read_manifest(dir.path());
  EXPECT_EQ(m.image_size, 64);
  EXPECT_EQ(m.theme, "web");
  for (std::size_t i = 0; i < 6; ++i) ASSERT_TRUE(fs::exists(dir.path() / (file_id(i) + ".png")));

  compile_dataset(dir.path(), Target::kWeb);
  const GuiAst ast0 = read_gui(dir.path() / "0000.gui");
  bool found = false;
  for (const auto& e : fs::recursive_directory_iterator(dir.path())) {
    if (e.path().filename() == "0000.html") {
      EXPECT_EQ(slurp(e.path()), compile(ast0, Target::kWeb));
      found = true;
    }
  }
  EXPECT_TRUE(found);

  const LoadedFiles train = load_split(dir.path(), Split::kTrain, 32);
  const LoadedFiles test = load_split(dir.path(), Split::kTest, 32);
  const LoadedFiles all = load_split(dir.path(), Split::kAll, 16);
  EXPECT_EQ(train.ids, (std::vector<std::string>{"0000", "0001", "0002", "0003"}));
  EXPECT_EQ(test.ids, (std::vector<std::string>{"0004", "0005"}));
  EXPECT_EQ(all.ids.size(), 6u);
  EXPECT_EQ(all.images[0].width, 16);
  EXPECT_EQ(train.tokens[0], flatten(ast0));
  const GuiImage direct = resize_normalize(rasterize_raster(ast0, 64, 64, theme_by_name("default")), 32, 32);
  EXPECT_EQ(train.images[0].data, direct.data);
}

TEST(Dataset, MissingFilesReported) {
  TempDir dir;
  EXPECT_THROW(load_split(dir.path(), Split::kAll, 16), DataError);
  synth_dataset(dir.path(), 2, 1, 1);
  EXPECT_THROW(load_split(dir.path(), Split::kAll, 16), DataError);  // not rendered
  std::ofstream(dir.path() / "bad.gui") << "header { row }\n";
  EXPECT_THROW(read_gui(dir.path() / "bad.gui"), DslError);
}

TEST(Dataset, ReportCsv) {
  EvalReport r;
  r.files = {{"0003", 10, 12, 0.3}, {"0004", 4, 4, 0.0}};
  r.mean_error = 0.15;
  const std::string csv = report_csv(r);
  EXPECT_EQ(csv,
            "file_id,expected_len,generated_len,error\n"
            "0003,10,12,0.3\n"
            "0004,4,4,0\n"
            "# mean_error=0.15 files=2\n");
  RocCurve roc;
  roc.points = {{INFINITY, 0, 0}, {0.5, 0.25, 1}, {0.1, 1, 1}};
  roc.area = 0.875;
  const std::string rc = roc_csv(roc);
  EXPECT_NE(rc.find("0.5,0.25,1\n"), std::string::npos);
  EXPECT_NE(rc.find("# area=0.875"), std::string::npos);
  EXPECT_EQ(format_number(0.1), "0.1");
}

TEST(Dataset, EvaluateFilesIsDeterministic) {
  TempDir dir;
  synth_dataset(dir.path(), 3, 1, 8);
  render_dataset(dir.path(), 64, "default");
  const LoadedFiles files = load_split(dir.path(), Split::kAll, 16);
  Model<float> model(ModelConfig::micro());
  model.initialize(2);
  const EvalReport a = evaluate_files(model, files, 1, 30, true);
  const EvalReport b = evaluate_files(model, files, 1, 30, true);
  EXPECT_EQ(report_csv(a), report_csv(b));
  EXPECT_EQ(roc_csv(a.roc), roc_csv(b.roc));
  ASSERT_EQ(a.files.size(), 3u);
  double total = 0;
  for (const auto& f : a.files) {
    EXPECT_LE(f.generated_len, 30u);
    EXPECT_EQ(f.expected_len, files.tokens[&f - a.files.data()].size());
    total += f.error;
  }
  EXPECT_NEAR(a.mean_error, total / 3.0, 1e-12);
  EXPECT_FALSE(a.roc.points.empty());
  EXPECT_TRUE(evaluate_files(model, files, 2, 30, false).roc.points.empty());
}

}  // namespace
}  // namespace guicode
