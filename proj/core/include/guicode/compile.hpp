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

#include <cstddef>
#include <string>
#include <string_view>

#include "guicode/dsl.hpp"

namespace guicode {

enum class Target { kWeb, kAndroid, kIos };

// Accepts "web", "android", "ios".
Target target_from_name(std::string_view name);
std::string_view target_name(Target target);
// ".html", ".axml", ".storyboard.xml"
std::string_view file_extension(Target target);

// Emits one explicitly closed element per tree node inside a fixed document
// skeleton. Label strings are filler chosen deterministically from the node
// position, so the output is a pure function of (ast, target).
std::string compile(const GuiAst& ast, Target target);

// Elements of the document skeleton (everything that is not a tree node).
std::size_t skeleton_element_count(Target target);

}  // namespace guicode
