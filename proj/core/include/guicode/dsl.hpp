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

#pragma once

// The GUI description language: token set, vocabulary, syntax tree, and the
// lexer/parser/serializer between text and trees.
//
// Grammar (whitespace separates tokens; braces and commas are always
// standalone tokens):
//
//   gui       := [ block { block } ]
//   block     := container "{" [ node { "," node } ] "}"
//   node      := leaf | block
//
// Containment:
//   root      admits at most one `header`, first, then any number of `row`s
//   header    admits btn-active | btn-inactive
//   row       admits single | double | quadruple
//   single, double, quadruple admit any leaf

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace guicode {

enum class Token : std::uint8_t {
  kHeader,
  kRow,
  kSingle,
  kDouble,
  kQuadruple,
  kBtnActive,
  kBtnInactive,
  kBtnGreen,
  kBtnOrange,
  kBtnRed,
  kText,
  kSmallTitle,
  kOpenBrace,
  kCloseBrace,
  kComma,
  kStart,
  kEnd,
  kPad,
};

inline constexpr std::size_t kTokenKindCount = 18;

std::string_view lexeme(Token token);
std::optional<Token> token_from_lexeme(std::string_view text);

bool is_container(Token token);
bool is_leaf(Token token);
inline bool is_element(Token token) { return is_container(token) || is_leaf(token); }
// START, END and PAD: sequence-control symbols, never part of a .gui file.
bool is_control(Token token);

// Number of columns a row child lays out (1, 2 or 4); 0 for other kinds.
int column_count(Token kind);

// Containment rule. `parent` is nullopt for the root.
bool admits(std::optional<Token> parent, Token child);

class DslError : public std::runtime_error {
 public:
  enum class Kind { kUnknownSymbol, kUnbalancedBraces, kIllegalChild, kUnexpectedToken };

  DslError(Kind kind, std::size_t position, std::string detail);

  Kind kind() const { return kind_; }
  // Character offset for lexer errors, token index for parser errors.
  std::size_t position() const { return position_; }
  const std::string& detail() const { return detail_; }

 private:
  Kind kind_;
  std::size_t position_;
  std::string detail_;
};

// Fixed, ordered token set. index_of(symbols()[i]) == i.
class Vocabulary {
 public:
  explicit Vocabulary(std::vector<Token> symbols);

  // All 18 kinds in enum declaration order. Stable across runs and builds.
  static const Vocabulary& standard();
  static Vocabulary from_lexemes(std::span<const std::string> lexemes);

  std::size_t size() const { return symbols_.size(); }
  const std::vector<Token>& symbols() const { return symbols_; }
  Token at(std::size_t index) const { return symbols_.at(index); }
  bool contains(Token token) const;
  // Throws DslError(kUnknownSymbol) for tokens outside the vocabulary.
  std::size_t index_of(Token token) const;
  std::vector<std::string> lexemes() const;

  bool operator==(const Vocabulary& other) const = default;

 private:
  std::vector<Token> symbols_;
  std::vector<int> index_;  // by Token value, -1 when absent
};

struct GuiNode {
  Token kind = Token::kText;
  std::vector<GuiNode> children;

  bool operator==(const GuiNode& other) const = default;
};

// The root container. An empty `children` list is the empty GUI.
struct GuiAst {
  std::vector<GuiNode> children;

  bool operator==(const GuiAst& other) const = default;

  // Number of element nodes, root excluded.
  std::size_t node_count() const;
};

std::vector<Token> tokenize(std::string_view text);
GuiAst parse(std::span<const Token> tokens);
std::string serialize(const GuiAst& ast);

// Token form of serialize(ast) without going through text.
std::vector<Token> flatten(const GuiAst& ast);

// Throws DslError(kIllegalChild) if any containment rule is violated.
void validate(const GuiAst& ast);

std::string join_lexemes(std::span<const Token> tokens);

template <typename Real>
std::vector<Real> encode_one_hot(Token token, const Vocabulary& vocab) {
  std::vector<Real> out(vocab.size(), Real{0});
  out[vocab.index_of(token)] = Real{1};
  return out;
}

}  // namespace guicode
