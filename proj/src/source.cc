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

#include "modmut/source.h"

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

namespace modmut {

SourceFile::SourceFile(std::string path, std::string text)
    : path_(std::move(path)), text_(std::move(text)), line_index_{0} {
  for (uint32_t i = 0; i < text_.size(); ++i) {
    if (text_[i] == '\n') line_index_.push_back(i + 1);
  }
}

SourceFile SourceFile::Read(const std::filesystem::path& disk_path,
                            std::string display_path) {
  if (display_path.empty()) display_path = disk_path.generic_string();
  return SourceFile(std::move(display_path), ReadFileBytes(disk_path));
}

std::pair<uint32_t, uint32_t> SourceFile::Position(uint32_t offset) const {
  auto it = std::upper_bound(line_index_.begin(), line_index_.end(), offset);
  auto line = static_cast<uint32_t>(it - line_index_.begin());
  return {line, offset - line_index_[line - 1] + 1};
}

uint32_t SourceFile::LineStart(uint32_t line) const {
  if (line == 0) return 0;
  if (line > line_index_.size()) return static_cast<uint32_t>(text_.size());
  return line_index_[line - 1];
}

SourceSpan SourceSpan::Of(const SourceFile& file, uint32_t start_byte,
                          uint32_t end_byte) {
  if (start_byte > end_byte || end_byte > file.size()) {
    throw std::out_of_range("span outside of file " + file.path());
  }
  SourceSpan span;
  span.path = file.path();
  span.start_byte = start_byte;
  span.end_byte = end_byte;
  std::tie(span.start_line, span.start_col) = file.Position(start_byte);
  std::tie(span.end_line, span.end_col) = file.Position(end_byte);
  return span;
}

Edit Edit::Inverse() const {
  Edit inverse;
  inverse.span = span;
  inverse.span.end_byte =
      span.start_byte + static_cast<uint32_t>(replacement.size());
  auto newlines = static_cast<uint32_t>(
      std::count(replacement.begin(), replacement.end(), '\n'));
  inverse.span.end_line = span.start_line + newlines;
  if (newlines == 0) {
    inverse.span.end_col =
        span.start_col + static_cast<uint32_t>(replacement.size());
  } else {
    inverse.span.end_col =
        static_cast<uint32_t>(replacement.size() - replacement.rfind('\n'));
  }
  inverse.original = replacement;
  inverse.replacement = original;
  return inverse;
}

std::string ApplyEditToText(std::string_view text, const Edit& edit) {
  const auto& span = edit.span;
  if (span.start_byte > span.end_byte || span.end_byte > text.size() ||
      text.substr(span.start_byte, span.length()) != edit.original) {
    throw SpanMismatchError("stale edit at " + span.path + ":" +
                            std::to_string(span.start_line) + ":" +
                            std::to_string(span.start_col) + ": expected '" +
                            edit.original + "'");
  }
  std::string out;
  out.reserve(text.size() + edit.replacement.size());
  out.append(text.substr(0, span.start_byte));
  out.append(edit.replacement);
  out.append(text.substr(span.end_byte));
  return out;
}

SourceFile ApplyEdit(const SourceFile& file, const Edit& edit) {
  return SourceFile(file.path(), ApplyEditToText(file.text(), edit));
}

std::string ReadFileBytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot read " + path.string() + ": " +
                  std::strerror(errno));
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path.string());
  return std::move(buffer).str();
}

void WriteFileBytes(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot write " + path.string() + ": " +
                  std::strerror(errno));
  }
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace modmut
