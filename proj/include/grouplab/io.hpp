#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "grouplab/abelian.hpp"
#include "grouplab/lie_algebra.hpp"
#include "grouplab/model.hpp"

namespace grouplab {

// One parsed corpus entry: a named group description of one of the five
// kinds, plus any subgroup pairs declared alongside it. Parsing validates
// the description (group-table laws, bracket identities, action
// compatibility, weight grading); failures throw std::runtime_error with a
// witness message.
struct CorpusEntry {
  std::string name;
  std::string kind;  // finite | nilpotent | lbf | tbu | abelian
  std::shared_ptr<const GroupModel> model;      // null for kind == abelian
  std::optional<FiniteGroup> finite;            // for kind == finite
  std::optional<NilpotentLieAlgebra> algebra;   // for nilpotent and tbu kinds
  std::optional<AbelianGroup> abelian;          // for kind == abelian
  std::vector<std::pair<SubgroupHandle, SubgroupHandle>> pairs;
  std::string source;  // file the entry came from
};

struct Corpus {
  std::vector<CorpusEntry> entries;

  const CorpusEntry* find(const std::string& name) const;
  std::vector<const CorpusEntry*> of_kind(const std::string& kind) const;
  std::vector<const CorpusEntry*> models() const;  // every entry with a model
};

// Subgroup specs name a canonical subgroup ("full", "component", "trivial",
// "derived", "center", "fitting", "radical") or give an explicit description
// as a JSON object: {"span": [[...], ...]} rows of rationals,
// {"members": [...]} finite-part element indices, {"torus": "trivial" |
// "torsion" | "positive" | "full"}. The resulting handle is validated.
SubgroupHandle parse_subgroup_spec(const GroupModel& m, const std::string& spec);

// Parse a single entry, one file (an entry object or an array of them), or a
// whole directory of *.json files (sorted by filename for determinism).
CorpusEntry parse_entry_json(const std::string& json_text, const std::string& source);
std::vector<CorpusEntry> load_corpus_file(const std::string& path);
Corpus load_corpus(const std::string& root);

// GROUPLAB_CORPUS environment override, else "corpus".
std::string default_corpus_root();

}  // namespace grouplab
