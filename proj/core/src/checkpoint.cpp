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

#include "guicode/checkpoint.hpp"

#include <zlib.h>

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "guicode/config.hpp"

namespace guicode {
namespace {

constexpr char kMagic[8] = {'G', 'U', 'I', 'C', 'K', 'P', 'T', '\0'};

static_assert(std::endian::native == std::endian::little, "checkpoint I/O assumes a little-endian host");

std::uint32_t crc32_of(const std::uint8_t* data, std::size_t n) {
  uLong crc = crc32(0L, Z_NULL, 0);
  while (n > 0) {
    const auto chunk = static_cast<uInt>(std::min<std::size_t>(n, 1u << 30));
    crc = crc32(crc, data, chunk);
    data += chunk;
    n -= chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

class Writer {
 public:
  template <typename N>
  void num(N v) {
    const auto* p = reinterpret_cast<const std::uint8_t*>(&v);
    out.insert(out.end(), p, p + sizeof v);
  }
  void str(const std::string& s) {
    num(static_cast<std::uint32_t>(s.size()));
    out.insert(out.end(), s.begin(), s.end());
  }
  std::vector<std::uint8_t> out;
};

class Reader {
 public:
  Reader(const std::uint8_t* data, std::size_t size) : data_(data), size_(size) {}

  template <typename N>
  N num() {
    N v;
    std::memcpy(&v, take(sizeof v), sizeof v);
    return v;
  }
  std::string str() {
    const auto n = num<std::uint32_t>();
    const auto* p = take(n);
    return std::string(reinterpret_cast<const char*>(p), n);
  }
  const std::uint8_t* take(std::size_t n) {
    if (n > size_ - pos_) throw CheckpointError(CheckpointError::Kind::kChecksumMismatch, "checkpoint: truncated payload");
    const auto* p = data_ + pos_;
    pos_ += n;
    return p;
  }
  bool done() const { return pos_ == size_; }

 private:
  const std::uint8_t* data_;
  std::size_t size_;
  std::size_t pos_ = 0;
};

[[noreturn]] void mismatch(const std::string& what) {
  throw CheckpointError(CheckpointError::Kind::kConfigMismatch, "checkpoint: " + what);
}

}  // namespace

std::vector<std::uint8_t> encode_checkpoint(const Model<float>& model, const Vocabulary& vocab) {
  Writer w;
  w.out.insert(w.out.end(), std::begin(kMagic), std::end(kMagic));
  w.num(kCheckpointVersion);
  w.str(to_text(model.config()));
  w.num(static_cast<std::uint32_t>(vocab.size()));
  for (const auto& lexeme : vocab.lexemes()) w.str(lexeme);
  const auto& params = model.params().all();
  w.num(static_cast<std::uint32_t>(params.size()));
  for (const auto& p : params) {
    w.str(p.name);
    w.num(static_cast<std::uint32_t>(p.value.rank()));
    for (std::size_t d : p.value.shape()) w.num(static_cast<std::uint64_t>(d));
    const auto* bytes = reinterpret_cast<const std::uint8_t*>(p.value.data());
    w.out.insert(w.out.end(), bytes, bytes + p.value.size() * sizeof(float));
  }
  w.num(crc32_of(w.out.data(), w.out.size()));
  return std::move(w.out);
}

Checkpoint decode_checkpoint(const std::vector<std::uint8_t>& bytes, const std::optional<ModelConfig>& expected) {
  using Kind = CheckpointError::Kind;
  if (bytes.size() < sizeof kMagic || std::memcmp(bytes.data(), kMagic, sizeof kMagic) != 0) {
    throw CheckpointError(Kind::kBadMagic, "checkpoint: bad magic");
  }
  if (bytes.size() < sizeof kMagic + 8) throw CheckpointError(Kind::kChecksumMismatch, "checkpoint: truncated header");
  std::uint32_t version;
  std::memcpy(&version, bytes.data() + sizeof kMagic, 4);
  if (version != kCheckpointVersion) {
    throw CheckpointError(Kind::kVersionUnsupported, "checkpoint: unsupported version " + std::to_string(version));
  }
  const std::size_t body = bytes.size() - 4;
  std::uint32_t stored;
  std::memcpy(&stored, bytes.data() + body, 4);
  if (crc32_of(bytes.data(), body) != stored) throw CheckpointError(Kind::kChecksumMismatch, "checkpoint: checksum mismatch");

  Reader r(bytes.data() + sizeof kMagic + 4, body - sizeof kMagic - 4);
  ModelConfig config;
  try {
    config = parse_model_config(r.str());
  } catch (const ConfigError& e) {
    mismatch(std::string("embedded config: ") + e.what());
  }
  if (expected && !(*expected == config)) mismatch("config differs from the expected one");

  std::vector<std::string> lexemes(r.num<std::uint32_t>());
  for (auto& l : lexemes) l = r.str();
  std::optional<Vocabulary> vocab;
  try {
    vocab = Vocabulary::from_lexemes(lexemes);
  } catch (const DslError& e) {
    mismatch(std::string("vocabulary: ") + e.what());
  }
  if (vocab->size() != static_cast<std::size_t>(config.vocab_size)) mismatch("vocabulary size differs from config");

  Model<float> model(config);
  auto& params = model.params().all();
  const auto count = r.num<std::uint32_t>();
  if (count != params.size()) mismatch("tensor count " + std::to_string(count) + " != " + std::to_string(params.size()));
  for (auto& p : params) {
    const std::string name = r.str();
    if (name != p.name) mismatch("tensor '" + name + "' where '" + p.name + "' was expected");
    const auto rank = r.num<std::uint32_t>();
    nn::Shape shape(rank);
    for (auto& d : shape) d = static_cast<std::size_t>(r.num<std::uint64_t>());
    if (shape != p.value.shape()) {
      mismatch("tensor " + name + " has shape " + nn::shape_string(shape) + ", config implies " +
               nn::shape_string(p.value.shape()));
    }
    std::memcpy(p.value.data(), r.take(p.value.size() * sizeof(float)), p.value.size() * sizeof(float));
  }
  if (!r.done()) mismatch("trailing bytes after tensors");
  return Checkpoint{std::move(model), std::move(*vocab)};
}

void save_checkpoint(const std::filesystem::path& path, const Model<float>& model, const Vocabulary& vocab) {
  const auto bytes = encode_checkpoint(model, vocab);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CheckpointError(CheckpointError::Kind::kIo, "checkpoint: cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw CheckpointError(CheckpointError::Kind::kIo, "checkpoint: write failed for " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path, const std::optional<ModelConfig>& expected) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError(CheckpointError::Kind::kIo, "checkpoint: cannot read " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_checkpoint(bytes, expected);
}

}  // namespace guicode
