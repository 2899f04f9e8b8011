#include "grouplab/batteries.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace grouplab {

namespace {

// deterministic per-(battery, entry) stream regardless of scheduling
std::mt19937_64 battery_rng(const CheckContext& ctx, const std::string& battery,
                            const std::string& entry) {
  unsigned long long h = 1469598103934665603ull;
  for (const std::string& s : {battery, entry}) {
    for (char c : s) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ull;
    }
    h ^= 0x9e3779b97f4a7c15ull;
  }
  std::seed_seq seq{ctx.seed, h};
  return std::mt19937_64(seq);
}

std::string order_str(const FiniteSubgroup& s) { return std::to_string(s.order()); }

// ---------------------------------------------------------------- finite ---

std::vector<LemmaReport> finite_oracle_battery(const CorpusEntry& entry, const CheckContext&) {
  const FiniteGroup& g = *entry.finite;
  const std::vector<FiniteSubgroup> subs = g.all_subgroups();
  const std::vector<FiniteSubgroup> normals = g.normal_subgroups();

  LemmaReport r21{"2.1", "width additivity across a normal subgroup"};
  LemmaReport r22{"2.2", "commutator subgroups of normalizing pairs, by coset representatives"};
  LemmaReport r23{"2.3", "commutation maps are homomorphisms with centralizer kernels"};
  LemmaReport r24{"2.4", "descending and ascending central series mirror each other"};
  LemmaReport r35{"3.5", "the Fitting subgroup is nilpotent"};
  LemmaReport r55{"5.5", "the solvable radical is solvable"};

  std::vector<std::pair<const FiniteSubgroup*, const FiniteSubgroup*>> normalizing;
  for (const FiniteSubgroup& a : subs) {
    for (const FiniteSubgroup& b : subs) {
      if (g.normalizes(a, b)) normalizing.emplace_back(&a, &b);
    }
  }

  int noted = 0;
  for (const auto& [a, b] : normalizing) {
    const BaerReport br = baer_check(g, *a, *b);
    r22.check(br.ok(), "pair |A|=" + order_str(*a) + " |B|=" + order_str(*b) +
                           " commutator order " + order_str(br.commutator));
    if (noted < 6) {
      r22.note("sample pair |A|=" + order_str(*a) + " |B|=" + order_str(*b) + " -> [A,B] order " +
               order_str(br.commutator));
      ++noted;
    }
    if (!g.normalizes(*b, *a)) continue;
    for (const FiniteSubgroup& n : normals) {
      const WidthAdditivityReport wr = width_additivity_check(g, n, *a, *b);
      r21.check(wr.ok(), "|A|=" + order_str(*a) + " |B|=" + order_str(*b) + " |N|=" +
                             order_str(n) + ": width " + std::to_string(wr.width) + " > " +
                             std::to_string(wr.k) + "+" + std::to_string(wr.s));
    }
  }

  for (const FiniteSubgroup& h : subs) {
    for (int x = 0; x < g.order(); ++x) {
      const AdMapReport ar = ad_map_check(g, h, x);
      if (!ar.premise_holds) continue;
      r23.check(ar.homomorphism_ok, "|H|=" + order_str(h) + " x=" + g.element_name(x) +
                                        ": map is not a homomorphism");
      r23.check(ar.kernel_is_centralizer,
                "|H|=" + order_str(h) + " x=" + g.element_name(x) + ": kernel != centralizer");
    }
  }

  const SeriesReport sr = series(g);
  r24.check(sr.nilpotent_inclusions_ok, "descending terms escape the ascending ones");
  r24.check(sr.class_characterization_ok, "class characterization through the center fails");
  if (sr.nilpotent) {
    const NilpotentAnalogReport nr = nilpotent_analog_checks(g);
    r24.check(nr.center_intersections_ok, "a nontrivial normal subgroup avoids the center");
    r24.check(nr.normalizer_growth_ok, "a proper subgroup equals its normalizer");
  } else {
    r24.note("not nilpotent: class characterization skipped beyond series inclusions");
  }

  const FittingReport fr = fitting_and_radical(g);
  r35.check(fr.fitting_nilpotent, "Fitting subgroup of order " + order_str(fr.fitting));
  r35.check(fr.fitting_in_radical, "Fitting subgroup escapes the radical");
  r55.check(fr.radical_solvable, "radical of order " + order_str(fr.radical));

  return {r21, r22, r23, r24, r35, r55};
}

// ---------------------------------------------------------------- axioms ---

std::vector<LemmaReport> axiom_runner(const CorpusEntry& entry, const CheckContext& ctx) {
  std::mt19937_64 rng = battery_rng(ctx, "axioms", entry.name);
  return axiom_battery(*entry.model, rng, ctx.samples);
}

std::vector<LemmaReport> series_runner(const CorpusEntry& entry, const CheckContext&) {
  return series_and_solvable_checks(*entry.model).reports;
}

// ---------------------------------------------------------- main theorem ---

std::vector<LemmaReport> main_theorem_battery(const CorpusEntry& entry, const CheckContext& ctx) {
  const GroupModel& m = *entry.model;
  std::mt19937_64 rng = battery_rng(ctx, "main-theorem", entry.name);

  std::vector<std::pair<SubgroupHandle, SubgroupHandle>> pairs = entry.pairs;
  if (pairs.empty()) pairs.emplace_back(m.full_subgroup(), m.full_subgroup());

  std::vector<LemmaReport> out;
  LemmaReport r82{"8.2", "commutator subgroups of connected pairs are connected"};
  for (const auto& [a, b] : pairs) {
    const std::string tag = " | pair " + m.subgroup_str(a) + " ~ " + m.subgroup_str(b);
    try {
      MainTheoremData data = main_theorem_check(m, a, b, rng, ctx.samples);
      data.report.title += tag;
      if (entry.finite) {
        const WidthProfile profile =
            commutator_profile(*entry.finite, std::get<FiniteSubgroup>(a),
                               std::get<FiniteSubgroup>(b));
        data.report.check(profile.subgroup == std::get<FiniteSubgroup>(data.closure.subgroup),
                          "exhaustive profile disagrees with the computed closure");
        data.report.check(data.closure.width_bound >= profile.width,
                          "witnessed width bound " + std::to_string(data.closure.width_bound) +
                              " below exhaustive width " + std::to_string(profile.width));
      }
      out.push_back(std::move(data.report));
    } catch (const std::exception& ex) {
      LemmaReport bad{"8.1", "decomposition and width of commutator subgroups" + tag};
      bad.check(false, ex.what());
      out.push_back(std::move(bad));
    }
  }
  // connectedness consequence, rechecked from scratch per connected pair
  for (const auto& [a, b] : pairs) {
    if (m.component_index(a) != 1 || m.component_index(b) != 1) continue;
    try {
      const SubgroupHandle c = m.commutator_closure(a, b).subgroup;
      r82.check(m.component_index(c) == 1,
                "pair " + m.subgroup_str(a) + " ~ " + m.subgroup_str(b) + ": index " +
                    std::to_string(m.component_index(c)));
    } catch (const std::exception& ex) {
      r82.check(false, ex.what());
    }
  }
  out.push_back(std::move(r82));
  return out;
}

// ----------------------------------------------------------------- parts ---

// deterministic connected, normal, nontrivial parts of the model
std::vector<SubgroupHandle> normal_connected_parts(const GroupModel& m) {
  std::vector<SubgroupHandle> parts;
  auto add = [&](const SubgroupHandle& h) {
    const SubgroupHandle c = m.connected_component(h);
    if (c == m.trivial_subgroup()) return;
    if (!m.normalizes_subgroup(m.full_subgroup(), c)) return;
    if (std::find(parts.begin(), parts.end(), c) != parts.end()) return;
    parts.push_back(c);
  };
  add(m.full_subgroup());
  add(m.commutator_closure(m.full_subgroup(), m.full_subgroup()).subgroup);
  add(m.center());
  add(m.fitting_subgroup());
  add(m.solvable_radical());
  for (const SubgroupHandle& t : upper_central_series(m)) add(t);
  for (const SubgroupHandle& t : lower_central_series(m, m.full_subgroup())) add(t);
  return parts;
}

std::vector<LemmaReport> greedy_battery(const CorpusEntry& entry, const CheckContext& ctx) {
  const GroupModel& m = *entry.model;
  std::mt19937_64 rng = battery_rng(ctx, "greedy", entry.name);
  LemmaReport r{"5.2", "greedy generation uses at most dimension-many parts"};

  std::vector<std::vector<SubgroupHandle>> instances;
  const std::vector<SubgroupHandle> pool = normal_connected_parts(m);
  instances.push_back(pool);
  for (const SubgroupHandle& p : pool) instances.push_back({p});
  // a few random central lines on top of the pool
  const SubgroupHandle zc = m.connected_component(m.center());
  if (m.dim(zc) > 0) {
    std::vector<SubgroupHandle> spiced = pool;
    for (int i = 0; i < 2; ++i) spiced.push_back(m.hull_of({m.random_member(zc, rng)}));
    instances.push_back(std::move(spiced));
  }

  for (const std::vector<SubgroupHandle>& parts : instances) {
    if (parts.empty()) continue;
    try {
      const GreedyResult gr = greedy_generate(m, parts);
      r.check(static_cast<int>(gr.chosen.size()) <= std::max(1, m.dim(gr.subgroup)),
              "chose " + std::to_string(gr.chosen.size()) + " parts for a dim " +
                  std::to_string(m.dim(gr.subgroup)) + " product");
      std::vector<Element> gens;
      for (const SubgroupHandle& p : parts) {
        for (Element e : generating_elements(m, p)) gens.push_back(std::move(e));
      }
      r.check(gr.subgroup == m.hull_of(gens), "greedy product differs from the envelope");
    } catch (const std::domain_error& ex) {
      r.check(false, std::string("parts rejected: ") + ex.what());
    }
  }
  if (r.instances == 0) r.note("no nontrivial connected normal parts: vacuous here");
  return {r};
}

std::vector<LemmaReport> central_battery(const CorpusEntry& entry, const CheckContext& ctx) {
  const GroupModel& m = *entry.model;
  std::mt19937_64 rng = battery_rng(ctx, "central", entry.name);
  LemmaReport r{"5.3", "central commutator stages have width at most their dimension"};

  std::vector<SubgroupHandle> candidates;
  candidates.push_back(
      m.connected_component(m.commutator_closure(m.full_subgroup(), m.full_subgroup()).subgroup));
  candidates.push_back(m.connected_component(m.center()));
  const std::vector<SubgroupHandle> lcs = lower_central_series(m, m.full_subgroup());
  if (lcs.size() >= 2) candidates.push_back(m.connected_component(lcs[lcs.size() - 2]));
  if (is_nilpotent_subgroup(m, m.full_subgroup()) && lcs.size() <= 3)
    candidates.push_back(m.connected_component(m.full_subgroup()));

  std::vector<Element> xs = generating_elements(m, m.full_subgroup());
  if (xs.size() > 12) xs.resize(12);

  std::set<std::string> seen;
  for (const SubgroupHandle& h : candidates) {
    if (!seen.insert(m.subgroup_str(h)).second) continue;
    try {
      const CentralCommutatorResult probe = central_commutator(m, h, xs, {});
      std::vector<Element> targets;
      for (int i = 0; i < 3; ++i) targets.push_back(m.random_member(probe.subgroup, rng));
      const CentralCommutatorResult cc = central_commutator(m, h, xs, targets);
      const int d = m.dim(cc.subgroup);
      for (const WidthCertificate& cert : cc.certificates) {
        r.check(cert.verify(m), "certificate replay mismatch");
        r.check(static_cast<int>(cert.length()) <= std::max(d, 0),
                "certificate length " + std::to_string(cert.length()) + " over dim " +
                    std::to_string(d));
      }
    } catch (const std::domain_error&) {
      r.note("stage " + m.subgroup_str(h) + ": centrality premise absent, skipped");
    }
  }
  return {r};
}

// ----------------------------------------------------------------- hulls ---

std::vector<LemmaReport> hull_battery(const CorpusEntry& entry, const CheckContext& ctx) {
  const GroupModel& m = *entry.model;
  std::mt19937_64 rng = battery_rng(ctx, "hulls", entry.name);

  LemmaReport r31{"3.1", "finite handles are totally disconnected; components are connected"};
  LemmaReport r32{"3.2", "products of connected normalizing subgroups are connected"};
  LemmaReport r33{"3.3", "hulls are conjugation-equivariant"};
  LemmaReport r34{"3.4", "hulls of commutator sets lie in the commutator of the normal hulls"};

  for (int i = 0; i < ctx.samples; ++i) {
    const SubgroupHandle h = m.random_subgroup(rng);
    const SubgroupHandle c = m.connected_component(h);
    if (m.is_finite_subgroup(h)) {
      r31.check(c == m.trivial_subgroup(), "finite handle with nontrivial component");
      r31.check(m.component_index(h) == static_cast<long>(m.enumerate(h).size()),
                "finite handle index != order");
    } else {
      r31.check(m.dim(c) == m.dim(h), "component dropped dimension");
      r31.check(m.component_index(c) == 1, "component is not connected");
    }

    const SubgroupHandle a = m.connected_component(m.normal_closure(m.random_subgroup(rng)));
    const SubgroupHandle b = m.connected_component(m.normal_closure(m.random_subgroup(rng)));
    const SubgroupHandle p = m.product_subgroup(a, b);
    r32.check(m.component_index(p) == 1,
              m.subgroup_str(a) + " * " + m.subgroup_str(b) + " has index " +
                  std::to_string(m.component_index(p)));
  }

  // Conjugation maps representable subgroups to representable subgroups only
  // on the finite and malcev models; on the split-form models the hull of a
  // conjugated set can grow, but it always stays inside the normal closure.
  const bool conjugation_closed = m.kind() == "finite" || m.kind() == "malcev";
  for (int i = 0; i < ctx.samples; ++i) {
    std::vector<Element> xs;
    for (int k = 0; k <= i % 3; ++k) xs.push_back(m.random_element(rng));
    const Element g = m.random_element(rng);
    std::vector<Element> conj;
    for (const Element& x : xs) conj.push_back(m.conj(x, g));
    const SubgroupHandle hx = m.hull_of(xs);
    const SubgroupHandle hconj = m.hull_of(conj);
    if (conjugation_closed) {
      r33.check(conjugate_subgroup(m, hx, g) == hconj,
                "hull of conjugates differs from conjugate of hull");
    } else {
      r33.check(m.contains_subgroup(m.normal_closure(hx), hconj),
                "hull of conjugates escapes the normal closure of the hull");
      r33.check(m.hull_of(generating_elements(m, hx)) == hx, "hull is not idempotent");
    }
  }
  if (!conjugation_closed)
    r33.note("split-form hulls are not conjugation-closed: checked containment in the "
             "normal closure instead of equivariance");

  for (int i = 0; i < ctx.samples; ++i) {
    std::vector<Element> xs, ys;
    for (int k = 0; k < 2; ++k) {
      xs.push_back(m.random_element(rng));
      ys.push_back(m.random_element(rng));
    }
    const SubgroupHandle nx = m.normal_closure(m.hull_of(xs));
    const SubgroupHandle ny = m.normal_closure(m.hull_of(ys));
    std::vector<Element> comm;
    for (const Element& x : xs)
      for (const Element& y : ys) comm.push_back(m.comm(x, y));
    const SubgroupHandle hull_comm = m.hull_of(comm);
    try {
      const SubgroupHandle closure = m.commutator_closure(nx, ny).subgroup;
      r34.check(m.contains_subgroup(closure, hull_comm),
                "hull of the commutators escapes the commutator of the normal hulls");
      if (m.kind() == "malcev" && entry.algebra) {
        // independent route: bracket the subspaces, then close under brackets
        const NilpotentLieAlgebra& l = *entry.algebra;
        const Subspace brackets =
            l.bracket_subspace(std::get<Subspace>(nx), std::get<Subspace>(ny));
        std::vector<Vec> gens;
        for (int k = 0; k < brackets.dim(); ++k) gens.push_back(brackets.basis_vector(k));
        r34.check(std::get<Subspace>(closure) == l.subalgebra_closure(gens),
                  "group closure disagrees with the algebra-side bracket closure");
      }
    } catch (const std::exception& ex) {
      r34.check(false, std::string("normal hulls rejected: ") + ex.what());
    }
  }

  return {r31, r32, r33, r34};
}

// --------------------------------------------------------- lbf structure ---

std::vector<LemmaReport> lbf_structure_battery(const CorpusEntry& entry, const CheckContext& ctx) {
  const GroupModel& m = *entry.model;
  std::mt19937_64 rng = battery_rng(ctx, "lbf-structure", entry.name);
  LemmaReport r47{"4.7", "normal nilpotent subgroups split over center and component"};
  LemmaReport r49{"4.9", "a normal subgroup is central exactly when its component is"};

  std::vector<SubgroupHandle> candidates{
      m.full_subgroup(),
      m.connected_component(m.full_subgroup()),
      m.center(),
      m.commutator_closure(m.full_subgroup(), m.full_subgroup()).subgroup,
      m.fitting_subgroup(),
  };
  for (int i = 0; i < ctx.samples; ++i) candidates.push_back(m.random_subgroup(rng));

  const SubgroupHandle z = m.center();
  std::set<std::string> seen;
  for (const SubgroupHandle& h : candidates) {
    if (!m.normalizes_subgroup(m.full_subgroup(), h)) continue;  // only normal subgroups
    if (!seen.insert(m.subgroup_str(h)).second) continue;
    const SubgroupHandle comp = m.connected_component(h);

    const bool h_central = m.contains_subgroup(z, h);
    const bool comp_central = m.contains_subgroup(z, comp);
    r49.check(h_central == comp_central,
              m.subgroup_str(h) + ": central=" + std::to_string(h_central) +
                  " component central=" + std::to_string(comp_central));

    if (is_nilpotent_subgroup(m, h)) {
      const SubgroupHandle zh = m.intersect_subgroups(z, h);
      const SubgroupHandle prod = m.product_subgroup(zh, comp);
      r47.check(prod == h, m.subgroup_str(h) + " != (Z&H) * component " + m.subgroup_str(prod));
    }
  }
  return {r47, r49};
}

// ------------------------------------------------------------- inversion ---

std::vector<LemmaReport> inversion_battery(const CorpusEntry&, const CheckContext& ctx) {
  const FiniteGroup c2 = FiniteGroup::from_table({{0, 1}, {1, 0}}, "c2");
  Matrix plus(1, 1), minus(1, 1);
  plus.at(0, 0) = Rational(1);
  minus.at(0, 0) = Rational(-1);
  const auto m = make_lbf_model(1, c2, {plus, minus}, "line flipped by an involution");
  std::mt19937_64 rng = battery_rng(ctx, "inversion", "-");

  LemmaReport r{"8.3", "inversion action: trivial against the component, everything in full"};
  r.model = m->name();
  const SubgroupHandle a = m->connected_component(m->full_subgroup());
  const SubgroupHandle b = m->full_subgroup();

  const GroupModel::Closure full_closure = m->commutator_closure(a, b);
  r.check(full_closure.subgroup == a, "closure against the full group is not the whole line");
  const GroupModel::Closure comp_closure = m->commutator_closure(a, m->connected_component(b));
  r.check(comp_closure.subgroup == m->trivial_subgroup(),
          "closure against the component is nontrivial");

  MainTheoremData data = main_theorem_check(*m, a, b, rng, std::max(4, ctx.samples));
  r.check(data.report.pass, "decomposition report failed");
  r.check(data.component == a, "component of the closure is not the line");
  r.check(data.from_b_component == m->trivial_subgroup(), "component-side factor not trivial");
  r.check(data.finite_index == 1, "closure has a finite part");
  for (const WidthCertificate& cert : data.certificates) {
    r.check(cert.verify(*m) && cert.length() <= 1,
            "a target needed more than one commutator");
  }
  return {r};
}

// -------------------------------------------------------------------- hx ---

std::vector<LemmaReport> hx_battery(const CorpusEntry& entry, const CheckContext& ctx) {
  const GroupModel& m = *entry.model;
  std::mt19937_64 rng = battery_rng(ctx, "hx", entry.name);

  std::vector<SubgroupHandle> hs;
  const SubgroupHandle rad = m.connected_component(m.solvable_radical());
  const SubgroupHandle der =
      m.connected_component(m.commutator_closure(m.full_subgroup(), m.full_subgroup()).subgroup);
  hs.push_back(rad);
  if (!(der == rad)) hs.push_back(der);

  std::vector<LemmaReport> out;
  for (const SubgroupHandle& h : hs) {
    std::vector<Element> xs;
    for (int i = 0; i < 3; ++i) xs.push_back(m.random_element(rng));
    try {
      HxData data = hx_check(m, h, xs, rng, std::min(ctx.samples, 6));
      data.report.title += " | H = " + m.subgroup_str(h);
      out.push_back(std::move(data.report));
    } catch (const std::exception& ex) {
      LemmaReport bad{"9.3", "commutator with a normalizing overset | H = " + m.subgroup_str(h)};
      bad.check(false, ex.what());
      out.push_back(std::move(bad));
    }
  }
  return out;
}

// ----------------------------------------------------- structure handles ---

std::vector<LemmaReport> structure_battery(const CorpusEntry& entry, const CheckContext&) {
  const GroupModel& m = *entry.model;
  LemmaReport r35{"3.5", "the Fitting subgroup is nilpotent"};
  LemmaReport r55{"5.5", "the solvable radical is solvable"};

  const SubgroupHandle f = m.fitting_subgroup();
  const SubgroupHandle rad = m.solvable_radical();
  r35.check(is_nilpotent_subgroup(m, f), "Fitting handle " + m.subgroup_str(f));
  r35.check(m.normalizes_subgroup(m.full_subgroup(), f), "Fitting handle is not normal");
  r35.check(m.contains_subgroup(f, m.center()), "Fitting handle misses the center");
  r55.check(is_solvable_subgroup(m, rad), "radical handle " + m.subgroup_str(rad));
  r55.check(m.normalizes_subgroup(m.full_subgroup(), rad), "radical handle is not normal");
  r55.check(m.contains_subgroup(rad, f), "radical misses the Fitting subgroup");
  return {r35, r55};
}

// ---------------------------------------------------------------- runner ---

enum class Scope { Finite, Models, Lbf, Standalone };

struct BatterySpec {
  std::string name;
  Scope scope;
  std::vector<std::string> ids;
  std::vector<LemmaReport> (*run)(const CorpusEntry&, const CheckContext&);
};

const std::vector<BatterySpec>& batteries() {
  static const std::vector<BatterySpec> list{
      {"finite-oracle", Scope::Finite, {"2.1", "2.2", "2.3", "2.4", "3.5", "5.5"},
       finite_oracle_battery},
      {"axioms", Scope::Models, {"A2", "A3", "5.1", "dcc"}, axiom_runner},
      {"series", Scope::Models, {"8.5", "2.4", "7.1", "7.2", "7.3", "7.6"}, series_runner},
      {"main-theorem", Scope::Models, {"8.1", "8.2"}, main_theorem_battery},
      {"greedy", Scope::Models, {"5.2"}, greedy_battery},
      {"central", Scope::Models, {"5.3"}, central_battery},
      {"hulls", Scope::Models, {"3.1", "3.2", "3.3", "3.4"}, hull_battery},
      {"lbf-structure", Scope::Lbf, {"4.7", "4.9"}, lbf_structure_battery},
      {"inversion", Scope::Standalone, {"8.3"}, inversion_battery},
      {"hx", Scope::Models, {"9.3"}, hx_battery},
      {"structure", Scope::Models, {"3.5", "5.5"}, structure_battery},
  };
  return list;
}

const std::map<std::string, std::string>& check_titles() {
  static const std::map<std::string, std::string> titles{
      {"2.1", "width additivity across a normal subgroup"},
      {"2.2", "commutator subgroups of normalizing pairs, by coset representatives"},
      {"2.3", "commutation maps are homomorphisms with centralizer kernels"},
      {"2.4", "descending and ascending central series mirror each other"},
      {"3.1", "finite handles are totally disconnected; components are connected"},
      {"3.2", "products of connected normalizing subgroups are connected"},
      {"3.3", "hulls are conjugation-equivariant"},
      {"3.4", "hulls of commutator sets lie in the commutator of the normal hulls"},
      {"3.5", "the Fitting subgroup is nilpotent"},
      {"4.7", "normal nilpotent subgroups split over center and component"},
      {"4.9", "a normal subgroup is central exactly when its component is"},
      {"5.1", "dimension formula for products of normalizing subgroups"},
      {"5.2", "greedy generation uses at most dimension-many parts"},
      {"5.3", "central commutator stages have width at most their dimension"},
      {"5.5", "the solvable radical is solvable"},
      {"7.1", "derived subgroups of connected solvable groups are nilpotent"},
      {"7.2", "the derived subgroup lies inside the connected Fitting subgroup"},
      {"7.3", "nonabelian connected solvable groups have a nontrivial connected Fitting part"},
      {"7.6", "a proper connected normal subgroup contains the derived subgroup"},
      {"8.1", "decomposition and width of commutator subgroups"},
      {"8.2", "commutator subgroups of connected pairs are connected"},
      {"8.3", "inversion action: trivial against the component, everything in full"},
      {"8.5", "derived and central series terms stay representable"},
      {"9.3", "commutators with a normalizing overset stay inside the subgroup"},
      {"A2", "dimension is additive along quotient maps"},
      {"A3", "dimension zero exactly for the finite subgroups"},
      {"dcc", "descending chains of representable subgroups terminate"},
  };
  return titles;
}

}  // namespace

const std::vector<CheckInfo>& check_registry() {
  static const std::vector<CheckInfo> reg = [] {
    std::vector<CheckInfo> out;
    for (const auto& [id, title] : check_titles()) out.push_back({id, title});
    return out;
  }();
  return reg;
}

bool known_check(const std::string& id) { return check_titles().count(id) != 0; }

std::vector<LemmaReport> run_checks(const std::vector<std::string>& ids, const CheckContext& ctx) {
  std::set<std::string> wanted;
  if (ids.empty()) {
    for (const CheckInfo& c : check_registry()) wanted.insert(c.id);
  } else {
    for (const std::string& id : ids) {
      if (!known_check(id)) throw std::invalid_argument("unknown check id \"" + id + "\"");
      wanted.insert(id);
    }
  }

  struct Task {
    const BatterySpec* battery;
    const CorpusEntry* entry;  // null for standalone batteries
  };
  std::vector<Task> tasks;
  static const CorpusEntry kNoEntry{};
  for (const BatterySpec& b : batteries()) {
    const bool relevant = std::any_of(b.ids.begin(), b.ids.end(),
                                      [&](const std::string& id) { return wanted.count(id); });
    if (!relevant) continue;
    if (b.scope == Scope::Standalone) {
      tasks.push_back({&b, nullptr});
      continue;
    }
    if (!ctx.corpus) continue;
    for (const CorpusEntry& e : ctx.corpus->entries) {
      if (!e.model) continue;
      if (b.scope == Scope::Finite && e.kind != "finite") continue;
      if (b.scope == Scope::Lbf && e.kind != "lbf") continue;
      tasks.push_back({&b, &e});
    }
  }

  std::vector<std::vector<LemmaReport>> results(tasks.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1)) {
      const Task& t = tasks[i];
      const CorpusEntry& entry = t.entry ? *t.entry : kNoEntry;
      std::vector<LemmaReport> reports;
      try {
        reports = t.battery->run(entry, ctx);
      } catch (const std::exception& ex) {
        LemmaReport bad{t.battery->ids.front(), "battery \"" + t.battery->name + "\" aborted"};
        bad.check(false, ex.what());
        reports.push_back(std::move(bad));
      }
      for (LemmaReport& r : reports) {
        if (r.model.empty() && t.entry) r.model = t.entry->name;
        if (r.model.empty()) r.model = "-";
      }
      results[i] = std::move(reports);
    }
  };
  unsigned nthreads = ctx.threads > 0 ? static_cast<unsigned>(ctx.threads)
                                      : std::max(1u, std::thread::hardware_concurrency());
  nthreads = std::min<unsigned>(nthreads, std::max<size_t>(tasks.size(), 1));
  std::vector<std::thread> pool;
  for (unsigned i = 0; i + 1 < nthreads; ++i) pool.emplace_back(worker);
  worker();
  for (std::thread& th : pool) th.join();

  std::vector<LemmaReport> merged;
  for (std::vector<LemmaReport>& rs : results) {
    for (LemmaReport& r : rs) {
      if (wanted.count(r.id)) merged.push_back(std::move(r));
    }
  }
  return merged;
}

std::string render_reports(const std::vector<LemmaReport>& reports, bool summary) {
  std::ostringstream out;
  for (const LemmaReport& r : reports) {
    out << "check " << r.id << " [" << r.model << "] " << (r.pass ? "PASS" : "FAIL")
        << " instances=" << r.instances << " :: " << r.title << "\n";
    for (const std::string& d : r.details) out << "  | " << d << "\n";
  }
  if (summary) {
    std::map<std::string, std::array<long, 3>> rollup;  // id -> {reports, instances, failures}
    for (const LemmaReport& r : reports) {
      auto& row = rollup[r.id];
      row[0] += 1;
      row[1] += r.instances;
      row[2] += r.pass ? 0 : 1;
    }
    long failures = 0;
    for (const auto& [id, row] : rollup) {
      out << "summary " << id << " reports=" << row[0] << " instances=" << row[1]
          << " failing_reports=" << row[2] << "\n";
      failures += row[2];
    }
    out << "total reports=" << reports.size() << " failing=" << failures << "\n";
  }
  return out.str();
}

bool all_pass(const std::vector<LemmaReport>& reports) {
  return std::all_of(reports.begin(), reports.end(),
                     [](const LemmaReport& r) { return r.pass; });
}

}  // namespace grouplab
