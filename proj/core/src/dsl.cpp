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

#include "guicode/dsl.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <utility>

namespace guicode {
namespace {

constexpr std::array<std::string_view, kTokenKindCount> kLexemes = {
    "header",     "row",         "single",    "double",     "quadruple",
    "btn-active", "btn-inactive", "btn-green", "btn-orange", "btn-red",
    "text",       "small-title", "{",         "}",          ",",
    "<START>",    "<END>",       "<PAD>",
};

std::string describe(std::optional<Token> parent) {
  return parent ? std::string(lexeme(*parent)) : std::string("root");
}

bool is_structural(char c) { return c == '{' || c == '}' || c == ','; }

}  // namespace

std::string_view lexeme(Token token) {
  return kLexemes.at(static_cast<std::size_t>(token));
}

std::optional<Token> token_from_lexeme(std::string_view text) {
  for (std::size_t i = 0; i < kLexemes.size(); ++i) {
    if (kLexemes[i] == text) return static_cast<Token>(i);
  }
  return std::nullopt;
}

bool is_container(Token token) {
  switch (token) {
    case Token::kHeader:
    case Token::kRow:
    case Token::kSingle:
    case Token::kDouble:
    case Token::kQuadruple:
      return true;
    default:
      return false;
  }
}

bool is_leaf(Token token) {
  return token >= Token::kBtnActive && token <= Token::kSmallTitle;
}

bool is_control(Token token) {
  return token == Token::kStart || token == Token::kEnd || token == Token::kPad;
}

int column_count(Token kind) {
  switch (kind) {
    case Token::kSingle:
      return 1;
    case Token::kDouble:
      return 2;
    case Token::kQuadruple:
      return 4;
    default:
      return 0;
  }
}

bool admits(std::optional<Token> parent, Token child) {
  if (!parent) return child == Token::kHeader || child == Token::kRow;
  switch (*parent) {
    case Token::kHeader:
      return child == Token::kBtnActive || child == Token::kBtnInactive;
    case Token::kRow:
      return column_count(child) > 0;
    case Token::kSingle:
    case Token::kDouble:
    case Token::kQuadruple:
      return is_leaf(child);
    default:
      return false;
  }
}

DslError::DslError(Kind kind, std::size_t position, std::string detail)
    : std::runtime_error([&] {
        std::string prefix;
        switch (kind) {
          case Kind::kUnknownSymbol:
            prefix = "unknown symbol";
            break;
          case Kind::kUnbalancedBraces:
            prefix = "unbalanced braces";
            break;
          case Kind::kIllegalChild:
            prefix = "illegal child";
            break;
          case Kind::kUnexpectedToken:
            prefix = "unexpected token";
            break;
        }
        return prefix + " at " + std::to_string(position) + ": " + detail;
      }()),
      kind_(kind),
      position_(position),
      detail_(std::move(detail)) {}

Vocabulary::Vocabulary(std::vector<Token> symbols)
    : symbols_(std::move(symbols)), index_(kTokenKindCount, -1) {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    auto& slot = index_.at(static_cast<std::size_t>(symbols_[i]));
    if (slot != -1) {
      throw std::invalid_argument("duplicate vocabulary symbol " +
                                  std::string(lexeme(symbols_[i])));
    }
    slot = static_cast<int>(i);
  }
}

const Vocabulary& Vocabulary::standard() {
  static const Vocabulary vocab = [] {
    std::vector<Token> all;
    for (std::size_t i = 0; i < kTokenKindCount; ++i) all.push_back(static_cast<Token>(i));
    return Vocabulary(std::move(all));
  }();
  return vocab;
}

Vocabulary Vocabulary::from_lexemes(std::span<const std::string> lexemes) {
  std::vector<Token> symbols;
  for (std::size_t i = 0; i < lexemes.size(); ++i) {
    auto token = token_from_lexeme(lexemes[i]);
    if (!token) throw DslError(DslError::Kind::kUnknownSymbol, i, lexemes[i]);
    symbols.push_back(*token);
  }
  return Vocabulary(std::move(symbols));
}

bool Vocabulary::contains(Token token) const {
  return index_.at(static_cast<std::size_t>(token)) >= 0;
}

std::size_t Vocabulary::index_of(Token token) const {
  const int i = index_.at(static_cast<std::size_t>(token));
  if (i < 0) throw DslError(DslError::Kind::kUnknownSymbol, 0, std::string(lexeme(token)));
  return static_cast<std::size_t>(i);
}

std::vector<std::string> Vocabulary::lexemes() const {
  std::vector<std::string> out;
  out.reserve(symbols_.size());
  for (Token t : symbols_) out.emplace_back(lexeme(t));
  return out;
}

namespace {

std::size_t count_nodes(const std::vector<GuiNode>& nodes) {
  std::size_t n = nodes.size();
  for (const auto& node : nodes) n += count_nodes(node.children);
  return n;
}

}  // namespace

std::size_t GuiAst::node_count() const { return count_nodes(children); }

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (is_structural(c)) {
      out.push_back(c == '{' ? Token::kOpenBrace
                             : c == '}' ? Token::kCloseBrace : Token::kComma);
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
           !is_structural(text[i])) {
      ++i;
    }
    const std::string_view word = text.substr(start, i - start);
    auto token = token_from_lexeme(word);
    if (!token || is_control(*token)) {
      throw DslError(DslError::Kind::kUnknownSymbol, start, std::string(word));
    }
    out.push_back(*token);
  }
  return out;
}

namespace {

class Parser {
 public:
  explicit Parser(std::span<const Token> tokens) : tokens_(tokens) {}

  GuiAst run() {
    check_braces();
    GuiAst ast;
    while (pos_ < tokens_.size()) {
      ast.children.push_back(node(std::nullopt));
    }
    validate_root(ast);
    return ast;
  }

 private:
  void check_braces() const {
    std::size_t depth = 0;
    std::size_t last_open = 0;
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
      if (tokens_[i] == Token::kOpenBrace) {
        ++depth;
        last_open = i;
      } else if (tokens_[i] == Token::kCloseBrace) {
        if (depth == 0) throw DslError(DslError::Kind::kUnbalancedBraces, i, "unmatched '}'");
        --depth;
      }
    }
    if (depth != 0) {
      throw DslError(DslError::Kind::kUnbalancedBraces, last_open, "unclosed '{'");
    }
  }

  [[noreturn]] void unexpected(std::string_view what) const {
    const std::string got = pos_ < tokens_.size()
                                ? std::string(lexeme(tokens_[pos_]))
                                : std::string("end of input");
    throw DslError(DslError::Kind::kUnexpectedToken, pos_,
                   "expected " + std::string(what) + ", got " + got);
  }

  void expect(Token token) {
    if (pos_ >= tokens_.size() || tokens_[pos_] != token) unexpected(lexeme(token));
    ++pos_;
  }

  GuiNode node(std::optional<Token> parent) {
    if (pos_ >= tokens_.size() || !is_element(tokens_[pos_])) unexpected("element");
    const std::size_t at = pos_;
    GuiNode n{tokens_[pos_++], {}};
    if (!admits(parent, n.kind)) {
      throw DslError(DslError::Kind::kIllegalChild, at,
                     describe(parent) + " cannot contain " + std::string(lexeme(n.kind)));
    }
    if (is_leaf(n.kind)) return n;
    expect(Token::kOpenBrace);
    if (pos_ < tokens_.size() && tokens_[pos_] == Token::kCloseBrace) {
      ++pos_;
      return n;
    }
    for (;;) {
      n.children.push_back(node(n.kind));
      if (pos_ < tokens_.size() && tokens_[pos_] == Token::kComma) {
        ++pos_;
        continue;
      }
      expect(Token::kCloseBrace);
      return n;
    }
  }

  static void validate_root(const GuiAst& ast) {
    for (std::size_t i = 0; i < ast.children.size(); ++i) {
      if (ast.children[i].kind == Token::kHeader && i != 0) {
        throw DslError(DslError::Kind::kIllegalChild, i,
                       "header must be the first root child");
      }
    }
  }

  std::span<const Token> tokens_;
  std::size_t pos_ = 0;
};

void validate_node(const GuiNode& node, std::optional<Token> parent, std::size_t index) {
  if (!admits(parent, node.kind)) {
    throw DslError(DslError::Kind::kIllegalChild, index,
                   describe(parent) + " cannot contain " + std::string(lexeme(node.kind)));
  }
  if (is_leaf(node.kind) && !node.children.empty()) {
    throw DslError(DslError::Kind::kIllegalChild, index,
                   std::string(lexeme(node.kind)) + " is a leaf");
  }
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    validate_node(node.children[i], node.kind, i);
  }
}

void flatten_into(const GuiNode& node, std::vector<Token>& out) {
  out.push_back(node.kind);
  if (is_leaf(node.kind)) return;
  out.push_back(Token::kOpenBrace);
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    if (i > 0) out.push_back(Token::kComma);
    flatten_into(node.children[i], out);
  }
  out.push_back(Token::kCloseBrace);
}

}  // namespace

GuiAst parse(std::span<const Token> tokens) { return Parser(tokens).run(); }

void validate(const GuiAst& ast) {
  for (std::size_t i = 0; i < ast.children.size(); ++i) {
    validate_node(ast.children[i], std::nullopt, i);
    if (ast.children[i].kind == Token::kHeader && i != 0) {
      throw DslError(DslError::Kind::kIllegalChild, i, "header must be the first root child");
    }
  }
}

std::vector<Token> flatten(const GuiAst& ast) {
  std::vector<Token> out;
  for (const auto& child : ast.children) flatten_into(child, out);
  return out;
}

std::string join_lexemes(std::span<const Token> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += lexeme(tokens[i]);
  }
  return out;
}

std::string serialize(const GuiAst& ast) { return join_lexemes(flatten(ast)); }

}  // namespace guicode
