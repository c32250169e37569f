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

#include "guicode/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace guicode {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string format_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

template <typename N>
N parse_number(std::string_view key, std::string_view value) {
  N out{};
  const auto r = std::from_chars(value.data(), value.data() + value.size(), out);
  if (r.ec != std::errc{} || r.ptr != value.data() + value.size()) {
    throw ConfigError("config: bad value for " + std::string(key) + ": '" + std::string(value) + "'");
  }
  return out;
}

std::vector<int> parse_int_list(std::string_view key, std::string_view value) {
  std::vector<int> out;
  while (!value.empty()) {
    const auto comma = value.find(',');
    out.push_back(parse_number<int>(key, trim(value.substr(0, comma))));
    if (comma == std::string_view::npos) break;
    value = value.substr(comma + 1);
  }
  if (out.empty()) throw ConfigError("config: empty list for " + std::string(key));
  return out;
}

struct Entry {
  std::string key;
  std::string value;
  int line;
};

std::vector<Entry> split_entries(std::string_view text) {
  std::vector<Entry> entries;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    const std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config: line " + std::to_string(line_no) + ": expected key = value");
    }
    entries.push_back({std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))), line_no});
  }
  return entries;
}

bool apply_model_key(ModelConfig& c, const std::string& k, std::string_view v) {
  if (k == "image_size") c.image_size = parse_number<int>(k, v);
  else if (k == "conv_widths") c.conv_widths = parse_int_list(k, v);
  else if (k == "fc_width") c.fc_width = parse_number<int>(k, v);
  else if (k == "fc_layers") c.fc_layers = parse_number<int>(k, v);
  else if (k == "language_layers") c.language_layers = parse_number<int>(k, v);
  else if (k == "language_cells") c.language_cells = parse_number<int>(k, v);
  else if (k == "decoder_layers") c.decoder_layers = parse_number<int>(k, v);
  else if (k == "decoder_cells") c.decoder_cells = parse_number<int>(k, v);
  else if (k == "vocab_size") c.vocab_size = parse_number<int>(k, v);
  else if (k == "window") c.window = parse_number<int>(k, v);
  else if (k == "dropout_pool") c.dropout.pool = parse_number<double>(k, v);
  else if (k == "dropout_fc") c.dropout.fc = parse_number<double>(k, v);
  else if (k == "dropout_lstm") c.dropout.lstm = parse_number<double>(k, v);
  else return false;
  return true;
}

bool apply_train_key(TrainConfig& c, const std::string& k, std::string_view v) {
  if (k == "learning_rate") c.learning_rate = parse_number<double>(k, v);
  else if (k == "rho") c.rho = parse_number<double>(k, v);
  else if (k == "epsilon") c.epsilon = parse_number<double>(k, v);
  else if (k == "clip") c.clip = parse_number<double>(k, v);
  else if (k == "batch_size") c.batch_size = parse_number<int>(k, v);
  else if (k == "epochs") c.epochs = parse_number<int>(k, v);
  else if (k == "shuffle") {
    if (v == "samples") c.shuffle = Shuffle::kSamples;
    else if (v == "images") c.shuffle = Shuffle::kImages;
    else throw ConfigError("config: shuffle must be samples or images");
  } else return false;
  return true;
}

RunConfig parse(std::string_view text, bool allow_train) {
  RunConfig rc;
  const auto entries = split_entries(text);
  for (const auto& e : entries) {
    if (e.key == "preset") {
      rc.model = preset(e.value);
      rc.train = train_preset(e.value);
    }
  }
  for (const auto& e : entries) {
    if (e.key == "preset") continue;
    if (apply_model_key(rc.model, e.key, e.value)) continue;
    if (allow_train && apply_train_key(rc.train, e.key, e.value)) continue;
    throw ConfigError("config: line " + std::to_string(e.line) + ": unknown key '" + e.key + "'");
  }
  try {
    rc.model.validate();
    rc.train.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return rc;
}

}  // namespace

ModelConfig preset(std::string_view name) {
  if (name == "paper") return ModelConfig::paper();
  if (name == "desk") return ModelConfig::desk();
  if (name == "micro") return ModelConfig::micro();
  throw ConfigError("config: unknown preset '" + std::string(name) + "'");
}

TrainConfig train_preset(std::string_view name) {
  TrainConfig t;
  if (name == "paper") return t;
  if (name == "desk" || name == "micro") {
    t.learning_rate = 1e-3;
    t.batch_size = 16;
    return t;
  }
  throw ConfigError("config: unknown preset '" + std::string(name) + "'");
}

std::string to_text(const ModelConfig& c) {
  std::ostringstream out;
  out << "image_size = " << c.image_size << '\n' << "conv_widths = ";
  for (std::size_t i = 0; i < c.conv_widths.size(); ++i) out << (i ? "," : "") << c.conv_widths[i];
  out << '\n'
      << "fc_width = " << c.fc_width << '\n'
      << "fc_layers = " << c.fc_layers << '\n'
      << "language_layers = " << c.language_layers << '\n'
      << "language_cells = " << c.language_cells << '\n'
      << "decoder_layers = " << c.decoder_layers << '\n'
      << "decoder_cells = " << c.decoder_cells << '\n'
      << "vocab_size = " << c.vocab_size << '\n'
      << "window = " << c.window << '\n'
      << "dropout_pool = " << format_double(c.dropout.pool) << '\n'
      << "dropout_fc = " << format_double(c.dropout.fc) << '\n'
      << "dropout_lstm = " << format_double(c.dropout.lstm) << '\n';
  return out.str();
}

std::string to_text(const RunConfig& c) {
  std::ostringstream out;
  out << to_text(c.model) << "learning_rate = " << format_double(c.train.learning_rate) << '\n'
      << "rho = " << format_double(c.train.rho) << '\n'
      << "epsilon = " << format_double(c.train.epsilon) << '\n'
      << "clip = " << format_double(c.train.clip) << '\n'
      << "batch_size = " << c.train.batch_size << '\n'
      << "epochs = " << c.train.epochs << '\n'
      << "shuffle = " << (c.train.shuffle == Shuffle::kSamples ? "samples" : "images") << '\n';
  return out.str();
}

RunConfig parse_run_config(std::string_view text) { return parse(text, true); }

ModelConfig parse_model_config(std::string_view text) { return parse(text, false).model; }

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str());
}

}  // namespace guicode
