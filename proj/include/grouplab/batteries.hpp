#pragma once

#include <string>
#include <vector>

#include "grouplab/harness.hpp"
#include "grouplab/io.hpp"

namespace grouplab {

struct CheckContext {
  const Corpus* corpus = nullptr;
  unsigned long long seed = 42;
  int samples = 12;
  int threads = 0;  // 0 = hardware concurrency
};

// One selectable check: an opaque stable id (what the CLI's --lemma takes)
// and a role-based title.
struct CheckInfo {
  std::string id;
  std::string title;
};

const std::vector<CheckInfo>& check_registry();
bool known_check(const std::string& id);

// Run the selected checks (all registered ids when empty) across the corpus.
// Batteries shared by several ids run once; the merged report order is
// deterministic and independent of scheduling.
std::vector<LemmaReport> run_checks(const std::vector<std::string>& ids, const CheckContext& ctx);

// Line-oriented rendering: one record line per report plus indented detail
// lines; `summary` appends per-id rollups. Contains no timestamps, so equal
// inputs render to identical bytes.
std::string render_reports(const std::vector<LemmaReport>& reports, bool summary);
bool all_pass(const std::vector<LemmaReport>& reports);

}  // namespace grouplab
