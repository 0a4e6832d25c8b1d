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

#ifndef MODMUT_LEDGER_H_
#define MODMUT_LEDGER_H_

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "modmut/mutant.h"

namespace modmut {

// Manual classifications, one per line:
//
//   <fingerprint> <label> [author=<name>] [date=<yyyy-mm-dd>] [note...]
//
// with label one of equivalent, not-equivalent, note. Blank lines and lines
// starting with '#' are ignored. A later line for the same fingerprint
// replaces an earlier one.
enum class LedgerLabel : uint8_t { kEquivalent, kNotEquivalent, kNote };

std::string_view LedgerLabelName(LedgerLabel label);

struct LedgerEntry {
  std::string fingerprint;
  LedgerLabel label = LedgerLabel::kNote;
  std::string author;
  std::string date;
  std::string note;
  int line = 0;
};

class LedgerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Ledger {
  std::vector<LedgerEntry> entries;

  // Throws LedgerError naming the line.
  static Ledger Parse(std::string_view text);
  static Ledger Load(const std::filesystem::path& path);
};

struct LedgerResult {
  int applied = 0;
  // Entries whose fingerprint matches no mutant.
  std::vector<LedgerEntry> dangling;
  // Entries that matched but could not change the status, with why.
  std::vector<std::pair<LedgerEntry, std::string>> ignored;
};

// 'equivalent' turns a Generated or Survived mutant into
// ManualEquivalent. 'not-equivalent' sends a DetectableEquivalent mutant
// back to Generated so it gets evaluated. Every matching entry's note is
// attached to the mutant.
LedgerResult ApplyLedger(const Ledger& ledger, std::vector<Mutant>& mutants);

}  // namespace modmut

#endif  // MODMUT_LEDGER_H_
