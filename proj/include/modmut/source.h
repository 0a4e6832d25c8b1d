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

#ifndef MODMUT_SOURCE_H_
#define MODMUT_SOURCE_H_

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace modmut {

// A source file held as raw bytes. Offsets everywhere are byte offsets, so
// multi-byte characters never split an edit.
class SourceFile {
 public:
  SourceFile() : line_index_{0} {}
  SourceFile(std::string path, std::string text);

  // Reads the file as bytes. Throws IoError on failure.
  static SourceFile Read(const std::filesystem::path& disk_path,
                         std::string display_path = {});

  const std::string& path() const { return path_; }
  const std::string& text() const { return text_; }
  std::size_t size() const { return text_.size(); }

  // Offsets of line starts; strictly increasing, first entry 0.
  const std::vector<uint32_t>& line_index() const { return line_index_; }

  // 1-based line and column (in bytes) for a byte offset <= size().
  std::pair<uint32_t, uint32_t> Position(uint32_t offset) const;

  // Byte offset of the start of a 1-based line.
  uint32_t LineStart(uint32_t line) const;
  uint32_t line_count() const {
    return static_cast<uint32_t>(line_index_.size());
  }

  std::string_view Slice(uint32_t begin, uint32_t end) const {
    return std::string_view(text_).substr(begin, end - begin);
  }

 private:
  std::string path_;
  std::string text_;
  std::vector<uint32_t> line_index_;
};

struct SourceSpan {
  std::string path;
  uint32_t start_byte = 0;
  uint32_t end_byte = 0;
  uint32_t start_line = 1;
  uint32_t start_col = 1;
  uint32_t end_line = 1;
  uint32_t end_col = 1;

  uint32_t length() const { return end_byte - start_byte; }

  static SourceSpan Of(const SourceFile& file, uint32_t start_byte,
                       uint32_t end_byte);

  bool operator==(const SourceSpan&) const = default;
};

// A reversible, byte-anchored replacement within one file.
struct Edit {
  SourceSpan span;
  std::string original;
  std::string replacement;

  // The edit that undoes this one once it has been applied.
  Edit Inverse() const;

  bool operator==(const Edit&) const = default;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an edit's original text no longer matches the file.
class SpanMismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Returns a new file with the edit applied; `file` is left untouched.
SourceFile ApplyEdit(const SourceFile& file, const Edit& edit);

// Text-level variant used by the workspace code.
std::string ApplyEditToText(std::string_view text, const Edit& edit);

std::string ReadFileBytes(const std::filesystem::path& path);
void WriteFileBytes(const std::filesystem::path& path, std::string_view bytes);

}  // namespace modmut

#endif  // MODMUT_SOURCE_H_
