#include "grouplab/io.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "grouplab/harness.hpp"

namespace grouplab {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& source, const std::string& what) {
  throw std::runtime_error(source + ": " + what);
}

Rational rational_from_json(const json& j, const std::string& source) {
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  fail(source, "expected an integer or a \"p/q\" string, got " + j.dump());
}

Vec vec_from_json(const json& j, const std::string& source) {
  if (!j.is_array()) fail(source, "expected an array of rationals, got " + j.dump());
  Vec v;
  v.reserve(j.size());
  for (const json& c : j) v.push_back(rational_from_json(c, source));
  return v;
}

Matrix matrix_from_json(const json& j, const std::string& source) {
  if (!j.is_array() || j.empty()) fail(source, "expected a nonempty array of rows");
  const size_t cols = j.front().size();
  Matrix m(static_cast<int>(j.size()), static_cast<int>(cols));
  for (size_t r = 0; r < j.size(); ++r) {
    const Vec row = vec_from_json(j[r], source);
    if (row.size() != cols) fail(source, "ragged matrix rows");
    for (size_t c = 0; c < cols; ++c) m.at(static_cast<int>(r), static_cast<int>(c)) = row[c];
  }
  return m;
}

// `{"kind":"finite","perm_gens":[[2,1,3],[2,3,1]]}` (1-based images) or
// `{"kind":"finite","table":[[...]]}` (element indices).
FiniteGroup finite_from_json(const json& j, const std::string& name, const std::string& source) {
  if (j.contains("perm_gens")) {
    std::vector<std::vector<int>> gens;
    for (const json& g : j.at("perm_gens")) gens.push_back(g.get<std::vector<int>>());
    return FiniteGroup::from_permutations(gens, name);
  }
  if (j.contains("table")) {
    return FiniteGroup::from_table(j.at("table").get<std::vector<std::vector<int>>>(), name);
  }
  fail(source, "finite group needs \"perm_gens\" or \"table\"");
}

// `"brackets": {"1,2": [0,0,1], ...}` with 1-based basis indices; omitted
// pairs are zero and the antisymmetric completion is automatic.
std::map<std::pair<int, int>, Vec> brackets_from_json(const json& j, int dim,
                                                      const std::string& source) {
  std::map<std::pair<int, int>, Vec> out;
  if (j.is_null()) return out;
  if (!j.is_object()) fail(source, "\"brackets\" must be an object keyed by \"i,j\"");
  for (const auto& [key, value] : j.items()) {
    const size_t comma = key.find(',');
    if (comma == std::string::npos) fail(source, "bracket key \"" + key + "\" is not \"i,j\"");
    int i = 0, k = 0;
    try {
      i = std::stoi(key.substr(0, comma));
      k = std::stoi(key.substr(comma + 1));
    } catch (const std::exception&) {
      fail(source, "bracket key \"" + key + "\" is not \"i,j\"");
    }
    if (i < 1 || i > dim || k < 1 || k > dim)
      fail(source, "bracket key \"" + key + "\" out of range for dim " + std::to_string(dim));
    const Vec v = vec_from_json(value, source);
    if (static_cast<int>(v.size()) != dim)
      fail(source, "bracket value for \"" + key + "\" has wrong length");
    out[{i - 1, k - 1}] = v;
  }
  return out;
}

NilpotentLieAlgebra algebra_from_json(const json& j, const std::string& name,
                                      const std::string& source) {
  if (j.contains("ut")) return ut_algebra(j.at("ut").get<int>(), name);
  const int dim = j.at("dim").get<int>();
  return NilpotentLieAlgebra(
      dim, brackets_from_json(j.contains("brackets") ? j.at("brackets") : json(), dim, source),
      name);
}

SubgroupHandle subgroup_from_json(const GroupModel& m, const json& j, const std::string& source);

std::vector<std::pair<SubgroupHandle, SubgroupHandle>> pairs_from_json(
    const GroupModel& m, const json& j, const std::string& source) {
  std::vector<std::pair<SubgroupHandle, SubgroupHandle>> out;
  for (const json& p : j) {
    out.emplace_back(subgroup_from_json(m, p.at("a"), source),
                     subgroup_from_json(m, p.at("b"), source));
  }
  return out;
}

SubgroupHandle named_subgroup(const GroupModel& m, const std::string& which,
                              const std::string& source) {
  if (which == "full") return m.full_subgroup();
  if (which == "trivial") return m.trivial_subgroup();
  if (which == "component") return m.connected_component(m.full_subgroup());
  if (which == "derived")
    return m.commutator_closure(m.full_subgroup(), m.full_subgroup()).subgroup;
  if (which == "center") return m.center();
  if (which == "fitting") return m.fitting_subgroup();
  if (which == "radical") return m.solvable_radical();
  fail(source, "unknown subgroup name \"" + which + "\"");
}

int ambient_dim(const GroupModel& m) { return m.dim(m.full_subgroup()); }

TorusPart torus_part_from_string(const std::string& s, const std::string& source) {
  if (s == "trivial") return TorusPart::Trivial;
  if (s == "torsion") return TorusPart::Torsion;
  if (s == "positive") return TorusPart::Positive;
  if (s == "full") return TorusPart::Full;
  fail(source, "unknown torus part \"" + s + "\"");
}

SubgroupHandle subgroup_from_json(const GroupModel& m, const json& j, const std::string& source) {
  if (j.is_string()) return named_subgroup(m, j.get<std::string>(), source);
  if (!j.is_object()) fail(source, "subgroup spec must be a name or an object");

  std::vector<Vec> rows;
  if (j.contains("span")) {
    for (const json& r : j.at("span")) rows.push_back(vec_from_json(r, source));
  }
  std::vector<Element> finite_gens;
  if (j.contains("members")) {
    for (const json& e : j.at("members")) {
      const int idx = e.get<int>();
      if (m.kind() == "finite") {
        finite_gens.push_back(Element{idx});
      } else if (m.kind() == "lbf") {
        finite_gens.push_back(Element{LbfElement{vec_zero(ambient_dim(m)), idx}});
      } else {
        fail(source, "\"members\" only applies to finite and lbf groups");
      }
    }
  }

  SubgroupHandle h = m.trivial_subgroup();
  const std::string kind = m.kind();
  if (kind == "finite") {
    h = finite_gens.empty() ? m.trivial_subgroup() : m.hull_of(finite_gens);
  } else if (kind == "malcev") {
    h = Subspace::span(ambient_dim(m), rows);
  } else if (kind == "lbf") {
    const Subspace w = Subspace::span(ambient_dim(m), rows);
    FiniteSubgroup s =
        std::get<LbfSubgroup>(finite_gens.empty() ? m.trivial_subgroup() : m.hull_of(finite_gens))
            .s;
    h = LbfSubgroup{w, std::move(s)};
  } else if (kind == "tbu") {
    const TorusPart t = j.contains("torus")
                            ? torus_part_from_string(j.at("torus").get<std::string>(), source)
                            : TorusPart::Trivial;
    // the torus contributes one to the full dimension; spans live in the base
    h = TbuSubgroup{t, Subspace::span(ambient_dim(m) - 1, rows)};
  } else {
    fail(source, "cannot build subgroups for model kind \"" + kind + "\"");
  }
  if (!m.valid_handle(h))
    fail(source, "subgroup spec " + j.dump() + " is not a subgroup of " + m.name() +
                     " (not action-invariant, not bracket-closed, or not closed)");
  return h;
}

void build_entry(CorpusEntry& e, const json& j, const std::string& source);

CorpusEntry entry_from_json(const json& j, const std::string& source) {
  if (!j.is_object()) fail(source, "corpus entry must be an object");
  CorpusEntry e;
  e.source = source;
  e.name = j.value("name", std::string{});
  if (e.name.empty()) fail(source, "corpus entry needs a \"name\"");
  e.kind = j.value("kind", std::string{});

  // group construction validates its input; re-home those errors on the entry
  try {
    build_entry(e, j, source);
  } catch (const std::runtime_error&) {
    throw;  // already carries the source
  } catch (const std::exception& ex) {
    fail(source, e.name + ": " + ex.what());
  }
  return e;
}

void build_entry(CorpusEntry& e, const json& j, const std::string& source) {
  if (e.kind == "finite") {
    e.finite = finite_from_json(j, e.name, source);
    e.model = make_finite_model(*e.finite);
  } else if (e.kind == "nilpotent") {
    e.algebra = algebra_from_json(j, e.name, source);
    e.model = make_malcev_model(*e.algebra);
  } else if (e.kind == "lbf") {
    const int d = j.at("d").get<int>();
    FiniteGroup f = finite_from_json(j.at("finite"), e.name + " finite part", source);
    std::vector<Matrix> rep;
    const json& r = j.at("rep");
    if (r.is_array()) {
      for (const json& mat : r) rep.push_back(matrix_from_json(mat, source));
    } else if (r.is_object()) {
      rep.assign(static_cast<size_t>(f.order()), Matrix::identity(d));
      for (const auto& [key, mat] : r.items()) {
        if (key.size() < 2 || key[0] != 'g')
          fail(source, "rep keys must look like \"g1\" (1-based element index)");
        const int idx = std::stoi(key.substr(1)) - 1;
        if (idx < 0 || idx >= f.order()) fail(source, "rep key \"" + key + "\" out of range");
        rep[static_cast<size_t>(idx)] = matrix_from_json(mat, source);
      }
    } else {
      fail(source, "\"rep\" must be an array of matrices or an object of \"g<i>\" keys");
    }
    e.model = make_lbf_model(d, std::move(f), std::move(rep), e.name);
  } else if (e.kind == "tbu") {
    const std::vector<int> weights = j.at("weights").get<std::vector<int>>();
    const int dim = static_cast<int>(weights.size());
    e.algebra = NilpotentLieAlgebra(
        dim, brackets_from_json(j.contains("brackets") ? j.at("brackets") : json(), dim, source),
        e.name + " base");
    e.model = make_tbu_model(*e.algebra, weights, e.name, j.value("connected_full_torus", false));
  } else if (e.kind == "abelian") {
    e.abelian = AbelianGroup::parse(j.at("blocks").get<std::vector<std::string>>());
  } else {
    fail(source, "unknown kind \"" + e.kind + "\" (expected finite | nilpotent | lbf | tbu | abelian)");
  }

  if (j.contains("expect_order")) {
    if (!e.model || e.model->kind() != "finite")
      fail(source, "\"expect_order\" only applies to finite groups");
    const int want = j.at("expect_order").get<int>();
    const int got = static_cast<int>(std::get<FiniteSubgroup>(e.model->full_subgroup()).order());
    if (got != want)
      fail(source, e.name + ": asserts order " + std::to_string(want) + " but the group has order " +
                       std::to_string(got));
  }
  if (j.contains("pairs")) {
    if (!e.model) fail(source, "\"pairs\" needs a group model");
    e.pairs = pairs_from_json(*e.model, j.at("pairs"), source + " [" + e.name + "]");
  }
}

}  // namespace

const CorpusEntry* Corpus::find(const std::string& name) const {
  for (const CorpusEntry& e : entries) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

std::vector<const CorpusEntry*> Corpus::of_kind(const std::string& kind) const {
  std::vector<const CorpusEntry*> out;
  for (const CorpusEntry& e : entries) {
    if (e.kind == kind) out.push_back(&e);
  }
  return out;
}

std::vector<const CorpusEntry*> Corpus::models() const {
  std::vector<const CorpusEntry*> out;
  for (const CorpusEntry& e : entries) {
    if (e.model) out.push_back(&e);
  }
  return out;
}

SubgroupHandle parse_subgroup_spec(const GroupModel& m, const std::string& spec) {
  const std::string trimmed = spec;
  if (!trimmed.empty() && (trimmed.front() == '{' || trimmed.front() == '[' ||
                           trimmed.front() == '"')) {
    json j;
    try {
      j = json::parse(trimmed);
    } catch (const json::exception& ex) {
      fail("subgroup spec", ex.what());
    }
    return subgroup_from_json(m, j, "subgroup spec");
  }
  return named_subgroup(m, trimmed, "subgroup spec");
}

CorpusEntry parse_entry_json(const std::string& json_text, const std::string& source) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& ex) {
    fail(source, ex.what());
  }
  return entry_from_json(j, source);
}

std::vector<CorpusEntry> load_corpus_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(path, "cannot open");
  json j;
  try {
    in >> j;
  } catch (const json::exception& ex) {
    fail(path, ex.what());
  }
  std::vector<CorpusEntry> out;
  if (j.is_array()) {
    for (const json& e : j) out.push_back(entry_from_json(e, path));
  } else {
    out.push_back(entry_from_json(j, path));
  }
  return out;
}

Corpus load_corpus(const std::string& root) {
  namespace fs = std::filesystem;
  Corpus corpus;
  std::vector<std::string> files;
  if (fs::is_directory(root)) {
    for (const fs::directory_entry& de : fs::directory_iterator(root)) {
      if (de.path().extension() == ".json") files.push_back(de.path().string());
    }
    std::sort(files.begin(), files.end());
  } else if (fs::exists(root)) {
    files.push_back(root);
  } else {
    fail(root, "no such file or directory");
  }
  std::set<std::string> seen;
  for (const std::string& f : files) {
    for (CorpusEntry& e : load_corpus_file(f)) {
      if (!seen.insert(e.name).second) fail(f, "duplicate entry name \"" + e.name + "\"");
      corpus.entries.push_back(std::move(e));
    }
  }
  return corpus;
}

std::string default_corpus_root() {
  if (const char* env = std::getenv("GROUPLAB_CORPUS"); env && *env) return env;
  return "corpus";
}

}  // namespace grouplab
