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

#include "guicode/compile.hpp"

#include <array>
#include <stdexcept>

#include "guicode/rng.hpp"

namespace guicode {

Target target_from_name(std::string_view name) {
  if (name == "web") return Target::kWeb;
  if (name == "android") return Target::kAndroid;
  if (name == "ios") return Target::kIos;
  throw std::invalid_argument("unknown compile target: " + std::string(name));
}

std::string_view target_name(Target target) {
  switch (target) {
    case Target::kWeb:
      return "web";
    case Target::kAndroid:
      return "android";
    case Target::kIos:
      return "ios";
  }
  return "";
}

std::string_view file_extension(Target target) {
  switch (target) {
    case Target::kWeb:
      return ".html";
    case Target::kAndroid:
      return ".axml";
    case Target::kIos:
      return ".storyboard.xml";
  }
  return "";
}

std::size_t skeleton_element_count(Target target) {
  switch (target) {
    case Target::kWeb:
      return 6;  // html head title style body main
    case Target::kAndroid:
      return 1;  // root LinearLayout
    case Target::kIos:
      return 7;  // document scenes scene objects viewController view subviews
  }
  return 0;
}

namespace {

constexpr std::array<std::string_view, 12> kWords = {
    "Lorem", "Ipsum", "Dolor", "Amet", "Sed",   "Magna",
    "Vitae", "Nulla", "Porta", "Felis", "Proin", "Donec",
};

struct Emitter {
  std::string out;
  std::uint64_t counter = 0;
  std::uint64_t nodes = 0;

  void line(int depth, std::string_view text) {
    out.append(static_cast<std::size_t>(depth) * 2, ' ');
    out += text;
    out += '\n';
  }

  std::string label(int words) {
    Rng rng(derive_seed(0x1abe1, {counter++}));
    std::string s;
    for (int i = 0; i < words; ++i) {
      if (i > 0) s += ' ';
      s += kWords[rng.uniform_index(kWords.size())];
    }
    return s;
  }
};

struct Element {
  std::string open;   // full opening tag
  std::string close;  // full closing tag
  std::string text;   // inline content for leaves
};

Element web_element(const GuiNode& node, Emitter& e) {
  switch (node.kind) {
    case Token::kHeader:
      return {R"(<div class="header">)", "</div>", {}};
    case Token::kRow:
      return {R"(<div class="row">)", "</div>", {}};
    case Token::kSingle:
      return {R"(<div class="col-lg-12">)", "</div>", {}};
    case Token::kDouble:
      return {R"(<div class="col-lg-6">)", "</div>", {}};
    case Token::kQuadruple:
      return {R"(<div class="col-lg-3">)", "</div>", {}};
    case Token::kBtnActive:
      return {R"(<a class="btn btn-primary" href="#">)", "</a>", e.label(1)};
    case Token::kBtnInactive:
      return {R"(<a class="btn btn-default" href="#">)", "</a>", e.label(1)};
    case Token::kBtnGreen:
      return {R"(<button class="btn btn-success">)", "</button>", e.label(1)};
    case Token::kBtnOrange:
      return {R"(<button class="btn btn-warning">)", "</button>", e.label(1)};
    case Token::kBtnRed:
      return {R"(<button class="btn btn-danger">)", "</button>", e.label(1)};
    case Token::kText:
      return {"<p>", "</p>", e.label(8)};
    case Token::kSmallTitle:
      return {"<h4>", "</h4>", e.label(2)};
    default:
      throw std::invalid_argument("not an element");
  }
}

Element android_element(const GuiNode& node, Emitter& e) {
  auto button = [&](std::string_view color) {
    return Element{R"(<Button android:layout_width="wrap_content" android:layout_height="wrap_content" android:background="@color/)" +
                       std::string(color) + R"(" android:text=")" + e.label(1) + R"(">)",
                   "</Button>",
                   {}};
  };
  switch (node.kind) {
    case Token::kHeader:
      return {R"(<LinearLayout android:id="@+id/header" android:layout_width="match_parent" android:layout_height="wrap_content" android:orientation="horizontal">)",
              "</LinearLayout>", {}};
    case Token::kRow:
      return {R"(<LinearLayout android:layout_width="match_parent" android:layout_height="0dp" android:layout_weight="1" android:orientation="horizontal">)",
              "</LinearLayout>", {}};
    case Token::kSingle:
    case Token::kDouble:
    case Token::kQuadruple:
      return {R"(<LinearLayout android:layout_width="0dp" android:layout_height="match_parent" android:layout_weight="1" android:orientation="vertical">)",
              "</LinearLayout>", {}};
    case Token::kBtnActive:
      return button("active");
    case Token::kBtnInactive:
      return button("inactive");
    case Token::kBtnGreen:
      return button("green");
    case Token::kBtnOrange:
      return button("orange");
    case Token::kBtnRed:
      return button("red");
    case Token::kText:
      return {R"(<TextView android:layout_width="match_parent" android:layout_height="wrap_content" android:text=")" +
                  e.label(8) + R"(">)",
              "</TextView>", {}};
    case Token::kSmallTitle:
      return {R"(<TextView android:layout_width="match_parent" android:layout_height="wrap_content" android:textStyle="bold" android:text=")" +
                  e.label(2) + R"(">)",
              "</TextView>", {}};
    default:
      throw std::invalid_argument("not an element");
  }
}

Element ios_element(const GuiNode& node, Emitter& e) {
  const std::string id = R"( id="n)" + std::to_string(e.nodes++) + R"(")";
  auto button = [&](std::string_view color) {
    return Element{R"(<button)" + id + R"( buttonType="system" tintColor=")" + std::string(color) +
                       R"(" title=")" + e.label(1) + R"(">)",
                   "</button>",
                   {}};
  };
  switch (node.kind) {
    case Token::kHeader:
      return {"<navigationBar" + id + R"( contentMode="scaleToFill">)", "</navigationBar>", {}};
    case Token::kRow:
      return {"<stackView" + id + R"( axis="horizontal" distribution="fillEqually">)",
              "</stackView>", {}};
    case Token::kSingle:
    case Token::kDouble:
    case Token::kQuadruple:
      return {"<view" + id + R"( contentMode="scaleToFill">)", "</view>", {}};
    case Token::kBtnActive:
      return button("systemBlue");
    case Token::kBtnInactive:
      return button("systemGray");
    case Token::kBtnGreen:
      return button("systemGreen");
    case Token::kBtnOrange:
      return button("systemOrange");
    case Token::kBtnRed:
      return button("systemRed");
    case Token::kText:
      return {"<label" + id + R"( numberOfLines="0" text=")" + e.label(8) + R"(">)", "</label>", {}};
    case Token::kSmallTitle:
      return {"<label" + id + R"( fontStyle="headline" text=")" + e.label(2) + R"(">)", "</label>",
              {}};
    default:
      throw std::invalid_argument("not an element");
  }
}

void emit_node(const GuiNode& node, Target target, int depth, Emitter& e) {
  Element el = target == Target::kWeb       ? web_element(node, e)
               : target == Target::kAndroid ? android_element(node, e)
                                            : ios_element(node, e);
  if (is_leaf(node.kind)) {
    e.line(depth, el.open + el.text + el.close);
    return;
  }
  e.line(depth, el.open);
  for (const auto& child : node.children) emit_node(child, target, depth + 1, e);
  e.line(depth, el.close);
}

}  // namespace

std::string compile(const GuiAst& ast, Target target) {
  validate(ast);
  Emitter e;
  int depth = 0;
  switch (target) {
    case Target::kWeb:
      e.line(0, "<html>");
      e.line(1, "<head>");
      e.line(2, "<title>GUI</title>");
      e.line(2, "<style>.header{margin-bottom:20px}.row{margin-top:15px}</style>");
      e.line(1, "</head>");
      e.line(1, "<body>");
      e.line(2, R"(<main class="container">)");
      depth = 3;
      break;
    case Target::kAndroid:
      e.line(0, R"(<?xml version="1.0" encoding="utf-8"?>)");
      e.line(0, R"(<LinearLayout xmlns:android="http://schemas.android.com/apk/res/android" android:layout_width="match_parent" android:layout_height="match_parent" android:orientation="vertical">)");
      depth = 1;
      break;
    case Target::kIos:
      e.line(0, R"(<?xml version="1.0" encoding="UTF-8"?>)");
      e.line(0, R"(<document type="com.apple.InterfaceBuilder3.CocoaTouch.Storyboard.XIB" version="3.0">)");
      e.line(1, "<scenes>");
      e.line(2, R"(<scene sceneID="scene0">)");
      e.line(3, "<objects>");
      e.line(4, R"(<viewController id="controller0">)");
      e.line(5, R"(<view key="view" id="root">)");
      e.line(6, "<subviews>");
      depth = 7;
      break;
  }

  for (const auto& child : ast.children) emit_node(child, target, depth, e);

  switch (target) {
    case Target::kWeb:
      e.line(2, "</main>");
      e.line(1, "</body>");
      e.line(0, "</html>");
      break;
    case Target::kAndroid:
      e.line(0, "</LinearLayout>");
      break;
    case Target::kIos:
      e.line(6, "</subviews>");
      e.line(5, "</view>");
      e.line(4, "</viewController>");
      e.line(3, "</objects>");
      e.line(2, "</scene>");
      e.line(1, "</scenes>");
      e.line(0, "</document>");
      break;
  }
  return std::move(e.out);
}

}  // namespace guicode
