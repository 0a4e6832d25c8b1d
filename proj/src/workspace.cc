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

#include "modmut/workspace.h"

#include <fcntl.h>
#include <unistd.h>

#include <system_error>

#include "modmut/process.h"

namespace modmut {
namespace {

namespace fs = std::filesystem;

// Write to a sibling temp file, fsync, rename.
void WriteDurably(const fs::path& path, std::string_view bytes) {
  fs::path tmp = path;
  tmp += ".modmut-tmp";
  int fd = open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
  if (fd < 0) throw InfrastructureError("cannot write " + tmp.string());
  size_t done = 0;
  while (done < bytes.size()) {
    ssize_t n = write(fd, bytes.data() + done, bytes.size() - done);
    if (n <= 0) {
      close(fd);
      throw InfrastructureError("short write to " + tmp.string());
    }
    done += static_cast<size_t>(n);
  }
  fsync(fd);
  close(fd);
  std::error_code ec;
  // Keep the original permission bits.
  if (fs::exists(path, ec)) {
    fs::permissions(tmp, fs::status(path, ec).permissions(), ec);
  }
  fs::rename(tmp, path, ec);
  if (ec) throw InfrastructureError("cannot replace " + path.string());
}

std::string ReadOrThrow(const fs::path& path) {
  try {
    return ReadFileBytes(path);
  } catch (const IoError& e) {
    throw InfrastructureError(e.what());
  }
}

class FileWorkspace : public Workspace {
 public:
  // `journal_dir` empty: copy-tree mode, nothing persisted.
  FileWorkspace(fs::path root, fs::path journal_dir)
      : root_(std::move(root)), journal_dir_(std::move(journal_dir)) {}
  ~FileWorkspace() override {
    try {
      Revert();
    } catch (...) {
      // Left for RecoverInPlace.
    }
  }

  const fs::path& root() const override { return root_; }

  void Apply(const Edit& edit) override {
    if (live_) throw InfrastructureError("workspace already holds an edit");
    fs::path file = root_ / edit.span.path;
    std::string original = ReadOrThrow(file);
    std::string mutated = ApplyEditToText(original, edit);
    if (!journal_dir_.empty()) {
      fs::create_directories(journal_dir_);
      WriteDurably(journal_dir_ / "backup", original);
      // The journal names the file last; its presence means the backup is
      // complete.
      WriteDurably(journal_dir_ / "journal", edit.span.path);
    }
    live_ = true;
    path_ = file;
    original_ = std::move(original);
    WriteDurably(file, mutated);
  }

  void Revert() override {
    if (!live_) return;
    WriteDurably(path_, original_);
    if (ReadOrThrow(path_) != original_) {
      throw InfrastructureError("workspace corrupted: " + path_.string() +
                                " differs from its original after revert");
    }
    live_ = false;
    if (!journal_dir_.empty()) {
      std::error_code ec;
      fs::remove(journal_dir_ / "journal", ec);
      fs::remove(journal_dir_ / "backup", ec);
    }
  }

 private:
  fs::path root_;
  fs::path journal_dir_;
  bool live_ = false;
  fs::path path_;
  std::string original_;
};

fs::path JournalDir(const CampaignConfig& config) {
  return config.WorkDir() / "in-place";
}

bool Inside(const fs::path& child, const fs::path& parent) {
  auto rel = child.lexically_relative(parent);
  return !rel.empty() && *rel.begin() != "..";
}

void CopyTree(const fs::path& from, const fs::path& to, const fs::path& skip) {
  fs::create_directories(to);
  for (auto it = fs::recursive_directory_iterator(from);
       it != fs::recursive_directory_iterator(); ++it) {
    const fs::path& src = it->path();
    if (src == skip) {
      it.disable_recursion_pending();
      continue;
    }
    fs::path dst = to / src.lexically_relative(from);
    if (it->is_symlink()) {
      fs::copy_symlink(src, dst);
    } else if (it->is_directory()) {
      fs::create_directories(dst);
    } else if (it->is_regular_file()) {
      fs::copy_file(src, dst, fs::copy_options::overwrite_existing);
    }
  }
}

}  // namespace

ScopedEdit::~ScopedEdit() {
  if (reverted_) return;
  try {
    ws_.Revert();
  } catch (...) {
    // Journal recovery takes over.
  }
}

void ScopedEdit::Revert() {
  reverted_ = true;
  ws_.Revert();
}

std::optional<std::string> RecoverInPlace(const CampaignConfig& config) {
  fs::path dir = JournalDir(config);
  std::error_code ec;
  if (!fs::exists(dir / "journal", ec)) {
    fs::remove(dir / "backup", ec);
    return std::nullopt;
  }
  std::string rel = ReadOrThrow(dir / "journal");
  std::string backup = ReadOrThrow(dir / "backup");
  fs::path file = config.project_root / rel;
  WriteDurably(file, backup);
  fs::path tmp = file;
  tmp += ".modmut-tmp";
  fs::remove(tmp, ec);
  fs::remove(dir / "journal", ec);
  fs::remove(dir / "backup", ec);
  return rel;
}

std::vector<std::unique_ptr<Workspace>> PrepareWorkspaces(
    const CampaignConfig& config) {
  std::error_code ec;
  fs::path root = fs::absolute(config.project_root, ec);
  if (ec || !fs::is_directory(root, ec)) {
    throw InfrastructureError("project root " + config.project_root.string() +
                              " is not a directory");
  }
  fs::path work = fs::absolute(config.WorkDir(), ec).lexically_normal();
  std::vector<std::unique_ptr<Workspace>> out;

  if (config.workspace_mode == WorkspaceMode::kInPlace) {
    RecoverInPlace(config);
    out.push_back(std::make_unique<FileWorkspace>(root, JournalDir(config)));
    return out;
  }

  std::vector<fs::path> created;
  try {
    for (int i = 0; i < config.parallelism; ++i) {
      fs::path dest = work / ("ws-" + std::to_string(i));
      fs::remove_all(dest);
      created.push_back(dest);
      CopyTree(root, dest, Inside(work, root) ? work : fs::path());
      out.push_back(std::make_unique<FileWorkspace>(dest, fs::path()));
    }
  } catch (const fs::filesystem_error& e) {
    out.clear();
    for (const fs::path& p : created) fs::remove_all(p, ec);
    throw InfrastructureError(std::string("cannot create workspace: ") +
                              e.what());
  }
  return out;
}

}  // namespace modmut
