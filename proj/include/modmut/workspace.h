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

#ifndef MODMUT_WORKSPACE_H_
#define MODMUT_WORKSPACE_H_

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "modmut/config.h"
#include "modmut/source.h"

namespace modmut {

// A tree where one mutant edit at a time is applied and reverted. Edit
// paths are relative to root().
class Workspace {
 public:
  virtual ~Workspace() = default;

  virtual const std::filesystem::path& root() const = 0;

  // Throws SpanMismatchError if the file no longer holds the original
  // text, InfrastructureError on I/O failure. At most one edit is live.
  virtual void Apply(const Edit& edit) = 0;
  // Restores the file and checks its bytes. No-op without a live edit.
  virtual void Revert() = 0;
};

// Reverts the live edit when it goes out of scope.
class ScopedEdit {
 public:
  ScopedEdit(Workspace& ws, const Edit& edit) : ws_(ws) { ws_.Apply(edit); }
  ~ScopedEdit();
  ScopedEdit(const ScopedEdit&) = delete;
  ScopedEdit& operator=(const ScopedEdit&) = delete;

  // Reverts now so errors surface as exceptions.
  void Revert();

 private:
  Workspace& ws_;
  bool reverted_ = false;
};

// One workspace per worker. copy-tree: <work_dir>/ws-<i>, fresh copies of
// project_root (without the work dir itself). in-place: a single workspace
// on project_root whose edits are journaled under <work_dir>/in-place, and
// any journal left by an interrupted run is rolled back first. Throws
// InfrastructureError before touching anything if project_root is missing,
// and removes partial copies on failure.
std::vector<std::unique_ptr<Workspace>> PrepareWorkspaces(
    const CampaignConfig& config);

// Rolls back an edit journaled by an in-place run that did not finish.
// Returns the restored relative path, if any.
std::optional<std::string> RecoverInPlace(const CampaignConfig& config);

}  // namespace modmut

#endif  // MODMUT_WORKSPACE_H_
