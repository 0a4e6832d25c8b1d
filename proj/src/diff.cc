// Copyright 2026 The Modmut Project Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "modmut/diff.h"

#include <algorithm>
#include <vector>

namespace modmut {
namespace {

// Lines keep their terminating '\n'; a final line without one is kept too.
std::vector<std::string_view> SplitLines(std::string_view text) {
  std::vector<std::string_view> lines;
  size_t start = 0;
  while (start < text.size()) {
    size_t nl = text.find('\n', start);
    size_t end = nl == std::string_view::npos ? text.size() : nl + 1;
    lines.push_back(text.substr(start, end - start));
    start = end;
  }
  return lines;
}

std::string Range(size_t start, size_t count) {
  // An empty range names the line before it.
  if (count == 0) return std::to_string(start == 0 ? 0 : start - 1) + ",0";
  if (count == 1) return std::to_string(start);
  return std::to_string(start) + "," + std::to_string(count);
}

void AppendLine(std::string& out, char tag, std::string_view line) {
  out += tag;
  out += line;
  if (line.empty() || line.back() != '\n') {
    out += "\n\\ No newline at end of file\n";
  }
}

}  // namespace

std::string UnifiedDiff(std::string_view old_label, std::string_view new_label,
                        std::string_view before, std::string_view after,
                        int context) {
  if (before == after) return "";
  std::vector<std::string_view> a = SplitLines(before);
  std::vector<std::string_view> b = SplitLines(after);

  size_t prefix = 0;
  while (prefix < a.size() && prefix < b.size() && a[prefix] == b[prefix]) {
    ++prefix;
  }
  size_t suffix = 0;
  while (suffix < a.size() - prefix && suffix < b.size() - prefix &&
         a[a.size() - 1 - suffix] == b[b.size() - 1 - suffix]) {
    ++suffix;
  }
  size_t ctx = static_cast<size_t>(std::max(context, 0));
  size_t lead = std::min(prefix, ctx);
  size_t trail = std::min(suffix, ctx);
  size_t first = prefix - lead;  // 0-based first line of the hunk
  size_t a_changed = a.size() - prefix - suffix;
  size_t b_changed = b.size() - prefix - suffix;
  size_t a_count = lead + a_changed + trail;
  size_t b_count = lead + b_changed + trail;

  std::string out;
  out += "--- ";
  out += old_label;
  out += "\n+++ ";
  out += new_label;
  out += "\n@@ -" + Range(first + 1, a_count) + " +" + Range(first + 1, b_count) +
         " @@\n";
  for (size_t i = first; i < prefix; ++i) AppendLine(out, ' ', a[i]);
  for (size_t i = prefix; i < prefix + a_changed; ++i) AppendLine(out, '-', a[i]);
  for (size_t i = prefix; i < prefix + b_changed; ++i) AppendLine(out, '+', b[i]);
  for (size_t i = a.size() - suffix; i < a.size() - suffix + trail; ++i) {
    AppendLine(out, ' ', a[i]);
  }
  return out;
}

std::string EditPatch(const SourceFile& file, const Edit& edit) {
  std::string mutated = ApplyEditToText(file.text(), edit);
  return UnifiedDiff("a/" + file.path(), "b/" + file.path(), file.text(),
                     mutated);
}

}  // namespace modmut
