// grouplab: exact structure checks for definable groups.
//
// Subcommands:
//   validate    load every corpus entry and report per-entry health
//   series      print the central and derived series of one group
//   commutator  compute [A,B] with its decomposition data
//   width       sample width certificates for [A,B]
//   check       run named checks (or all of them) across the corpus
//
// All reports go to stdout and contain no timestamps; timing and progress
// notes go to stderr so report files are byte-reproducible.

#include <CLI11.hpp>

#include <chrono>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "grouplab/batteries.hpp"
#include "grouplab/harness.hpp"
#include "grouplab/io.hpp"
#include "grouplab/model.hpp"

namespace {

using namespace grouplab;

constexpr int kUsageError = 2;

// --- validate ---------------------------------------------------------------

int cmd_validate(const std::string& root) {
  namespace fs = std::filesystem;
  std::vector<std::string> files;
  if (fs::is_directory(root)) {
    for (const auto& de : fs::directory_iterator(root)) {
      if (de.path().extension() == ".json") files.push_back(de.path().string());
    }
    std::sort(files.begin(), files.end());
  } else {
    files.push_back(root);
  }
  if (files.empty()) {
    std::cerr << "no corpus files under " << root << "\n";
    return kUsageError;
  }

  int bad = 0;
  for (const std::string& file : files) {
    try {
      const Corpus c = load_corpus(file);
      for (const CorpusEntry& e : c.entries) {
        std::cout << "ok " << e.name << " (" << e.kind;
        if (e.model) std::cout << ", dim " << e.model->dim(e.model->full_subgroup());
        if (!e.pairs.empty()) std::cout << ", " << e.pairs.size() << " pairs";
        std::cout << ")\n";
      }
    } catch (const std::exception& ex) {
      std::cout << "FAIL " << ex.what() << "\n";
      ++bad;
    }
  }
  return bad == 0 ? 0 : 1;
}

// --- model lookup -----------------------------------------------------------

const CorpusEntry& find_model_entry(const Corpus& corpus, const std::string& name) {
  const CorpusEntry* e = corpus.find(name);
  if (!e) throw std::runtime_error("no corpus entry named \"" + name + "\"");
  if (!e->model)
    throw std::runtime_error("entry \"" + name + "\" (" + e->kind +
                             ") does not carry a group model");
  return *e;
}

void print_series_line(const GroupModel& m, const std::string& label,
                       const std::vector<SubgroupHandle>& terms) {
  std::cout << label << ":\n";
  for (size_t i = 0; i < terms.size(); ++i)
    std::cout << "  [" << i << "] " << m.subgroup_str(terms[i]) << "\n";
}

int cmd_series(const Corpus& corpus, const std::string& name) {
  const GroupModel& m = *find_model_entry(corpus, name).model;
  const SeriesData data = series_and_solvable_checks(m);
  std::cout << "group " << m.name() << " (dim " << m.dim(m.full_subgroup()) << ")\n";
  print_series_line(m, "lower central", data.lower_central);
  print_series_line(m, "derived", data.derived);
  print_series_line(m, "upper central", data.upper_central);
  bool ok = true;
  for (const LemmaReport& r : data.reports) {
    std::cout << "check " << r.id << " " << (r.pass ? "PASS" : "FAIL") << " :: " << r.title
              << "\n";
    ok = ok && r.pass;
  }
  return ok ? 0 : 1;
}

// --- commutator -------------------------------------------------------------

int cmd_commutator(const Corpus& corpus, const std::string& name, const std::string& a_spec,
                   const std::string& b_spec) {
  const GroupModel& m = *find_model_entry(corpus, name).model;
  const SubgroupHandle a = parse_subgroup_spec(m, a_spec);
  const SubgroupHandle b = parse_subgroup_spec(m, b_spec);

  const GroupModel::Closure closure = m.commutator_closure(a, b);
  const SubgroupHandle comp = m.connected_component(closure.subgroup);
  const SubgroupHandle from_a = m.commutator_closure(m.connected_component(a), b).subgroup;
  const SubgroupHandle from_b = m.commutator_closure(a, m.connected_component(b)).subgroup;

  std::cout << "A            = " << m.subgroup_str(a) << "\n";
  std::cout << "B            = " << m.subgroup_str(b) << "\n";
  std::cout << "[A,B]        = " << m.subgroup_str(closure.subgroup) << "\n";
  std::cout << "width bound  = " << closure.width_bound << "\n";
  std::cout << "component    = " << m.subgroup_str(comp) << "\n";
  std::cout << "finite index = " << m.component_index(closure.subgroup) << "\n";
  std::cout << "[A°,B]       = " << m.subgroup_str(from_a) << "\n";
  std::cout << "[A,B°]       = " << m.subgroup_str(from_b) << "\n";
  std::cout << "product of the component factors "
            << (m.product_subgroup(m.connected_component(from_a),
                                   m.connected_component(from_b)) == comp
                    ? "equals"
                    : "DIFFERS FROM")
            << " the component\n";
  return 0;
}

// --- width ------------------------------------------------------------------

int cmd_width(const Corpus& corpus, const std::string& name, const std::string& a_spec,
              const std::string& b_spec, unsigned long long seed, int samples) {
  const GroupModel& m = *find_model_entry(corpus, name).model;
  const SubgroupHandle a = parse_subgroup_spec(m, a_spec);
  const SubgroupHandle b = parse_subgroup_spec(m, b_spec);
  std::mt19937_64 rng(seed);

  const MainTheoremData data = main_theorem_check(m, a, b, rng, samples);
  std::cout << "[A,B]        = " << m.subgroup_str(data.closure.subgroup) << "\n";
  std::cout << "width bound  = " << data.closure.width_bound << "\n";
  std::cout << "finite index = " << data.finite_index << "\n";
  if (data.finite_correction_width > 0)
    std::cout << "finite correction width = " << data.finite_correction_width << "\n";
  std::cout << "certificates:\n";
  for (const WidthCertificate& cert : data.certificates) {
    std::cout << "  " << m.element_str(cert.target) << "  =  ";
    if (cert.factors.empty()) std::cout << "identity (empty product)";
    for (size_t i = 0; i < cert.factors.size(); ++i) {
      const CommutatorFactor& f = cert.factors[i];
      if (i) std::cout << " * ";
      std::cout << "[" << m.element_str(f.a) << ", " << m.element_str(f.b) << "]"
                << (f.sign < 0 ? "^-1" : "");
    }
    std::cout << "\n    (" << cert.length() << " factors, replay "
              << (cert.verify(m) ? "ok" : "MISMATCH") << ")\n";
  }
  std::cout << "report " << data.report.id << " " << (data.report.pass ? "PASS" : "FAIL")
            << " instances=" << data.report.instances << "\n";
  return data.report.pass ? 0 : 1;
}

// --- check ------------------------------------------------------------------

int cmd_check(const Corpus& corpus, const std::vector<std::string>& ids, bool all,
              unsigned long long seed, int samples, int threads, const std::string& out_path,
              bool summary_only) {
  if (!all && ids.empty()) {
    std::cerr << "check: pass --lemma <id> (repeatable) or --all; known ids:\n";
    for (const CheckInfo& c : check_registry())
      std::cerr << "  " << c.id << "  " << c.title << "\n";
    return kUsageError;
  }

  CheckContext ctx;
  ctx.corpus = &corpus;
  ctx.seed = seed;
  ctx.samples = samples;
  ctx.threads = threads;

  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<LemmaReport> reports = run_checks(all ? std::vector<std::string>{} : ids, ctx);
  const auto dt =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
  std::cerr << reports.size() << " reports in " << dt.count() << " ms\n";

  const std::string full = render_reports(reports, /*summary=*/true);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return kUsageError;
    }
    out << full;
    // keep stdout to the rollup so the full file stays the single artifact
    const size_t cut = full.find("summary ");
    std::cout << (cut == std::string::npos ? full : full.substr(cut));
  } else if (summary_only) {
    const size_t cut = full.find("summary ");
    std::cout << (cut == std::string::npos ? full : full.substr(cut));
  } else {
    std::cout << full;
  }
  return all_pass(reports) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact commutator-structure checks for definable groups"};
  app.require_subcommand(1);

  std::string corpus_root = default_corpus_root();
  app.add_option("--corpus", corpus_root, "corpus file or directory")
      ->envname("GROUPLAB_CORPUS");

  auto* validate = app.add_subcommand("validate", "load every corpus entry, report health");

  std::string model_name, a_spec = "full", b_spec = "full";
  auto* series = app.add_subcommand("series", "print central and derived series");
  series->add_option("--model", model_name, "corpus entry name")->required();

  auto* commutator = app.add_subcommand("commutator", "compute [A,B] and its decomposition");
  commutator->add_option("--model", model_name, "corpus entry name")->required();
  commutator->add_option("--a", a_spec, "subgroup spec (name or JSON)");
  commutator->add_option("--b", b_spec, "subgroup spec (name or JSON)");

  unsigned long long seed = 42;
  int samples = 12, threads = 0;
  auto* width = app.add_subcommand("width", "sample width certificates for [A,B]");
  width->add_option("--model", model_name, "corpus entry name")->required();
  width->add_option("--a", a_spec, "subgroup spec (name or JSON)");
  width->add_option("--b", b_spec, "subgroup spec (name or JSON)");
  width->add_option("--seed", seed, "rng seed");
  width->add_option("--samples", samples, "targets to certify");

  std::vector<std::string> lemma_ids;
  bool run_all = false, summary_only = false;
  std::string out_path;
  auto* check = app.add_subcommand("check", "run named checks across the corpus");
  check->add_option("--lemma", lemma_ids, "check id (repeatable)");
  check->add_flag("--all", run_all, "run every registered check");
  check->add_option("--seed", seed, "rng seed");
  check->add_option("--samples", samples, "sampling effort per randomized check");
  check->add_option("--threads", threads, "worker threads (0 = hardware)");
  check->add_option("--out", out_path, "write the full report here; stdout gets the rollup");
  check->add_flag("--summary", summary_only, "print only the rollup");

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return cmd_validate(corpus_root);
    const Corpus corpus = load_corpus(corpus_root);
    if (series->parsed()) return cmd_series(corpus, model_name);
    if (commutator->parsed()) return cmd_commutator(corpus, model_name, a_spec, b_spec);
    if (width->parsed()) return cmd_width(corpus, model_name, a_spec, b_spec, seed, samples);
    if (check->parsed())
      return cmd_check(corpus, lemma_ids, run_all, seed, samples, threads, out_path,
                       summary_only);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}
