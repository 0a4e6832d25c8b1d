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

#include "modmut/ledger.h"

#include <map>
#include <sstream>

#include "modmut/source.h"

namespace modmut {
namespace {

bool IsHex(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    bool hex = (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
    if (!hex) return false;
  }
  return true;
}

}  // namespace

std::string_view LedgerLabelName(LedgerLabel label) {
  switch (label) {
    case LedgerLabel::kEquivalent:
      return "equivalent";
    case LedgerLabel::kNotEquivalent:
      return "not-equivalent";
    case LedgerLabel::kNote:
      return "note";
  }
  return "note";
}

Ledger Ledger::Parse(std::string_view text) {
  Ledger ledger;
  std::map<std::string, size_t> index;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream words(line);
    LedgerEntry e;
    e.line = line_no;
    if (!(words >> e.fingerprint) || e.fingerprint[0] == '#') continue;
    std::string where = "ledger line " + std::to_string(line_no);
    if (!IsHex(e.fingerprint)) {
      throw LedgerError(where + ": '" + e.fingerprint +
                        "' is not a mutant fingerprint");
    }
    std::string label;
    if (!(words >> label)) throw LedgerError(where + ": missing label");
    if (label == "equivalent") {
      e.label = LedgerLabel::kEquivalent;
    } else if (label == "not-equivalent") {
      e.label = LedgerLabel::kNotEquivalent;
    } else if (label == "note") {
      e.label = LedgerLabel::kNote;
    } else {
      throw LedgerError(where + ": unknown label '" + label +
                        "' (expected equivalent, not-equivalent or note)");
    }
    std::string word;
    std::string note;
    while (words >> word) {
      if (note.empty() && word.rfind("author=", 0) == 0 && e.author.empty()) {
        e.author = word.substr(7);
      } else if (note.empty() && word.rfind("date=", 0) == 0 &&
                 e.date.empty()) {
        e.date = word.substr(5);
      } else {
        if (!note.empty()) note += ' ';
        note += word;
      }
    }
    e.note = std::move(note);
    auto [it, inserted] = index.emplace(e.fingerprint, ledger.entries.size());
    if (inserted) {
      ledger.entries.push_back(std::move(e));
    } else {
      ledger.entries[it->second] = std::move(e);
    }
  }
  return ledger;
}

Ledger Ledger::Load(const std::filesystem::path& path) {
  try {
    return Parse(ReadFileBytes(path));
  } catch (const IoError& e) {
    throw LedgerError(std::string("cannot read ledger: ") + e.what());
  }
}

LedgerResult ApplyLedger(const Ledger& ledger, std::vector<Mutant>& mutants) {
  std::map<std::string, Mutant*> by_fingerprint;
  for (Mutant& m : mutants) by_fingerprint.emplace(m.point.fingerprint, &m);

  LedgerResult result;
  for (const LedgerEntry& e : ledger.entries) {
    auto it = by_fingerprint.find(e.fingerprint);
    if (it == by_fingerprint.end()) {
      result.dangling.push_back(e);
      continue;
    }
    Mutant& m = *it->second;
    std::string note(LedgerLabelName(e.label));
    if (!e.author.empty()) note += " by " + e.author;
    if (!e.date.empty()) note += " on " + e.date;
    if (!e.note.empty()) note += ": " + e.note;
    m.ledger_note = note;

    switch (e.label) {
      case LedgerLabel::kEquivalent:
        if (m.status == MutantStatus::kGenerated ||
            m.status == MutantStatus::kSurvived) {
          m.status = MutantStatus::kManualEquivalent;
          ++result.applied;
        } else if (m.status != MutantStatus::kManualEquivalent &&
                   m.status != MutantStatus::kDetectableEquivalent) {
          result.ignored.emplace_back(
              e, "mutant is " + std::string(StatusName(m.status)));
        }
        break;
      case LedgerLabel::kNotEquivalent:
        if (m.status == MutantStatus::kDetectableEquivalent) {
          m.status = MutantStatus::kGenerated;
          ++result.applied;
        } else if (m.status == MutantStatus::kManualEquivalent) {
          result.ignored.emplace_back(e, "mutant is manual-equivalent");
        }
        break;
      case LedgerLabel::kNote:
        break;
    }
  }
  return result;
}

}  // namespace modmut
