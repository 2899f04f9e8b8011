#include "grouplab/harness.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <stdexcept>
#include <utility>

namespace grouplab {

namespace {

constexpr size_t kMaxDetailLines = 64;

bool is_finite_kind(const GroupModel& m) { return std::holds_alternative<int>(m.identity()); }

int lbf_identity_f(const GroupModel& m) { return std::get<LbfElement>(m.identity()).f; }

// Vector coordinates of an element whose discrete part is trivial.
std::optional<Vec> maybe_vec_part(const GroupModel& m, const Element& e) {
  if (const Vec* v = std::get_if<Vec>(&e)) return *v;
  if (const LbfElement* l = std::get_if<LbfElement>(&e)) {
    if (l->f != lbf_identity_f(m)) return std::nullopt;
    return l->v;
  }
  if (const TbuElement* t = std::get_if<TbuElement>(&e)) {
    if (!(t->t == Rational(1))) return std::nullopt;
    return t->u;
  }
  return std::nullopt;
}

Vec vec_part(const GroupModel& m, const Element& e) {
  std::optional<Vec> v = maybe_vec_part(m, e);
  if (!v) throw std::domain_error("vec_part: the element has a nontrivial discrete part");
  return *v;
}

// Element with the given vector coordinates and trivial discrete part.
Element element_from_vec(const GroupModel& m, const Vec& v) {
  const Element id = m.identity();
  if (std::holds_alternative<Vec>(id)) return v;
  if (std::holds_alternative<LbfElement>(id)) return LbfElement{v, lbf_identity_f(m)};
  if (std::holds_alternative<TbuElement>(id)) return TbuElement{Rational(1), v};
  throw std::domain_error("element_from_vec: the model has no vector coordinates");
}

std::optional<Subspace> vector_space_of(const SubgroupHandle& h) {
  if (const Subspace* s = std::get_if<Subspace>(&h)) return *s;
  if (const LbfSubgroup* l = std::get_if<LbfSubgroup>(&h)) return l->w;
  if (const TbuSubgroup* t = std::get_if<TbuSubgroup>(&h)) return t->u;
  return std::nullopt;
}

bool contains_element(const GroupModel& m, const std::vector<Element>& xs, const Element& e) {
  for (const Element& x : xs) {
    if (m.eq(x, e)) return true;
  }
  return false;
}

// t as a product of one element from each of the given abelian connected (or
// finite) subgroups, in order. Linear algebra proposes, exact multiplication
// verifies.
std::vector<Element> split_abelian(const GroupModel& m, const std::vector<SubgroupHandle>& parts,
                                   const Element& t) {
  std::vector<Element> out(parts.size(), m.identity());
  if (is_finite_kind(m)) {
    std::function<bool(size_t, const Element&)> go = [&](size_t k, const Element& acc) {
      if (k == parts.size()) return m.eq(acc, t);
      for (const Element& e : m.enumerate(parts[k])) {
        out[k] = e;
        if (go(k + 1, m.mul(acc, e))) return true;
      }
      return false;
    };
    if (!go(0, m.identity())) {
      throw std::domain_error("split: the target is not a product over the given subgroups");
    }
    return out;
  }
  const Vec tv = vec_part(m, t);
  const int rows = static_cast<int>(tv.size());
  std::vector<std::pair<size_t, int>> columns;  // (part index, basis index)
  for (size_t i = 0; i < parts.size(); ++i) {
    std::optional<Subspace> vs = vector_space_of(parts[i]);
    if (!vs) throw std::domain_error("split: a factor has no vector part");
    for (int j = 0; j < vs->dim(); ++j) columns.emplace_back(i, j);
  }
  Matrix a(rows, static_cast<int>(columns.size()));
  for (size_t c = 0; c < columns.size(); ++c) {
    const Vec bv = vector_space_of(parts[columns[c].first])->basis_vector(columns[c].second);
    for (int r = 0; r < rows; ++r) a.at(r, static_cast<int>(c)) = bv[static_cast<size_t>(r)];
  }
  std::optional<Vec> sol = solve_linear(a, tv);
  if (!sol) throw std::domain_error("split: the target is not a product over the given subgroups");
  for (size_t i = 0; i < parts.size(); ++i) {
    const Subspace vs = *vector_space_of(parts[i]);
    Vec v = vec_zero(vs.ambient());
    for (size_t c = 0; c < columns.size(); ++c) {
      if (columns[c].first == i) {
        v = vec_add(v, vec_scale((*sol)[c], vs.basis_vector(columns[c].second)));
      }
    }
    out[i] = element_from_vec(m, v);
  }
  Element acc = m.identity();
  for (const Element& e : out) acc = m.mul(acc, e);
  if (!m.eq(acc, t)) throw std::logic_error("split: exact product check failed");
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// certificates and reports
// ---------------------------------------------------------------------------

Element WidthCertificate::replay(const GroupModel& m) const {
  Element acc = m.identity();
  for (const CommutatorFactor& f : factors) {
    Element c = m.comm(f.a, f.b);
    if (f.sign < 0) c = m.inv(c);
    acc = m.mul(acc, c);
  }
  return acc;
}

bool WidthCertificate::verify(const GroupModel& m) const { return m.eq(replay(m), target); }

void LemmaReport::check(bool ok, const std::string& what) {
  ++instances;
  if (!ok) {
    pass = false;
    if (details.size() < kMaxDetailLines) details.push_back("FAIL " + what);
  }
}

void LemmaReport::absorb(const LemmaReport& other) {
  instances += other.instances;
  if (!other.pass) pass = false;
  for (const std::string& line : other.details) {
    if (details.size() >= kMaxDetailLines) break;
    details.push_back(other.id.empty() ? line : other.id + ": " + line);
  }
}

// ---------------------------------------------------------------------------
// element / subgroup toolkit
// ---------------------------------------------------------------------------

std::vector<Element> generating_elements(const GroupModel& m, const SubgroupHandle& h) {
  std::vector<Element> out;
  if (const FiniteSubgroup* f = std::get_if<FiniteSubgroup>(&h)) {
    (void)f;
    for (const Element& e : m.enumerate(h)) {
      if (!m.is_identity(e)) out.push_back(e);
    }
    return out;
  }
  if (const Subspace* s = std::get_if<Subspace>(&h)) {
    for (int i = 0; i < s->dim(); ++i) out.push_back(s->basis_vector(i));
    return out;
  }
  if (const LbfSubgroup* l = std::get_if<LbfSubgroup>(&h)) {
    const int idf = lbf_identity_f(m);
    const int d = l->w.ambient();
    for (int i = 0; i < l->w.dim(); ++i) out.push_back(LbfElement{l->w.basis_vector(i), idf});
    for (int f : l->s.members) {
      if (f != idf) out.push_back(LbfElement{vec_zero(d), f});
    }
    return out;
  }
  const TbuSubgroup& t = std::get<TbuSubgroup>(h);
  const int d = t.u.ambient();
  for (int i = 0; i < t.u.dim(); ++i) out.push_back(TbuElement{Rational(1), t.u.basis_vector(i)});
  if (t.torus == TorusPart::Positive || t.torus == TorusPart::Full) {
    out.push_back(TbuElement{Rational(2), vec_zero(d)});
  }
  if (t.torus == TorusPart::Torsion || t.torus == TorusPart::Full) {
    out.push_back(TbuElement{Rational(-1), vec_zero(d)});
  }
  return out;
}

SubgroupHandle conjugate_subgroup(const GroupModel& m, const SubgroupHandle& h, const Element& g) {
  const std::string k = m.kind();
  if (k != "finite" && k != "malcev") {
    // a conjugate of a semidirect handle need not split again, so it can fall
    // outside the representable family
    throw std::domain_error("conjugate_subgroup: unsupported for semidirect models");
  }
  std::vector<Element> gens;
  for (const Element& x : generating_elements(m, h)) gens.push_back(m.conj(x, g));
  return m.hull_of(gens);
}

bool element_normalizes(const GroupModel& m, const SubgroupHandle& h, const Element& x) {
  const Element xi = m.inv(x);
  for (const Element& g : generating_elements(m, h)) {
    if (!m.contains(h, m.conj(g, x))) return false;
    if (!m.contains(h, m.conj(g, xi))) return false;
  }
  return true;
}

bool is_abelian_subgroup(const GroupModel& m, const SubgroupHandle& h) {
  return m.contains_subgroup(m.centralizer_of(h), h);
}

bool is_solvable_subgroup(const GroupModel& m, const SubgroupHandle& h) {
  return derived_series(m, h).back() == m.trivial_subgroup();
}

bool is_nilpotent_subgroup(const GroupModel& m, const SubgroupHandle& h) {
  return lower_central_series(m, h).back() == m.trivial_subgroup();
}

std::vector<SubgroupHandle> derived_series(const GroupModel& m, const SubgroupHandle& h) {
  std::vector<SubgroupHandle> out{h};
  for (int i = 0; i < 16; ++i) {
    SubgroupHandle next = m.commutator_closure(out.back(), out.back()).subgroup;
    if (next == out.back()) break;
    out.push_back(std::move(next));
  }
  return out;
}

std::vector<SubgroupHandle> lower_central_series(const GroupModel& m, const SubgroupHandle& h) {
  std::vector<SubgroupHandle> out{h};
  for (int i = 0; i < 16; ++i) {
    SubgroupHandle next = m.commutator_closure(out.front(), out.back()).subgroup;
    if (next == out.back()) break;
    out.push_back(std::move(next));
  }
  return out;
}

std::vector<SubgroupHandle> upper_central_series(const GroupModel& m) {
  std::vector<SubgroupHandle> out{m.trivial_subgroup()};
  for (int i = 0; i < 16; ++i) {
    QuotientResult q;
    try {
      q = m.quotient_by(out.back());
    } catch (const std::exception&) {
      break;  // the quotient can leave the representable family; stop early
    }
    const GroupModel& qm = *q.model;
    SubgroupHandle zbar = qm.intersect_subgroups(qm.centralizer_of(q.image), q.image);
    SubgroupHandle next = q.lift_subgroup(zbar);
    if (next == out.back()) break;
    out.push_back(std::move(next));
  }
  return out;
}

Element lift_into(const GroupModel& m, const QuotientResult& q, const SubgroupHandle& s,
                  const Element& image) {
  const GroupModel& qm = *q.model;
  if (is_finite_kind(m)) {
    for (const Element& e : m.enumerate(s)) {
      if (qm.eq(q.project(e), image)) return e;
    }
    throw std::domain_error("lift_into: no preimage inside the subgroup");
  }
  // candidate discrete parts; the vector part is corrected by a linear solve
  std::vector<Element> candidates;
  if (const LbfSubgroup* l = std::get_if<LbfSubgroup>(&s)) {
    const int d = l->w.ambient();
    for (int f : l->s.members) candidates.push_back(LbfElement{vec_zero(d), f});
  } else if (const TbuSubgroup* t = std::get_if<TbuSubgroup>(&s)) {
    const int d = t->u.ambient();
    if (const TbuElement* ti = std::get_if<TbuElement>(&image)) {
      candidates.push_back(TbuElement{ti->t, vec_zero(d)});
    } else {
      candidates.push_back(TbuElement{Rational(1), vec_zero(d)});
      candidates.push_back(TbuElement{Rational(-1), vec_zero(d)});
    }
  } else {
    candidates.push_back(m.identity());
  }
  const std::optional<Subspace> vs = vector_space_of(s);
  for (const Element& cand : candidates) {
    if (!m.contains(s, cand)) continue;
    const Element delta = qm.mul(qm.inv(q.project(cand)), image);
    if (std::holds_alternative<int>(qm.identity())) {
      if (qm.is_identity(delta)) return cand;
      continue;
    }
    const std::optional<Vec> dv = maybe_vec_part(qm, delta);
    if (!dv) continue;
    if (!vs) break;
    const int rows = static_cast<int>(dv->size());
    Matrix a(rows, vs->dim());
    for (int j = 0; j < vs->dim(); ++j) {
      const Element w = element_from_vec(m, vs->basis_vector(j));
      const std::optional<Vec> col = maybe_vec_part(qm, q.project(w));
      if (!col) throw std::logic_error("lift_into: a divisible generator projects discretely");
      for (int r = 0; r < rows; ++r) a.at(r, j) = (*col)[static_cast<size_t>(r)];
    }
    const std::optional<Vec> sol = solve_linear(a, *dv);
    if (!sol) continue;
    Vec v = vec_zero(vs->ambient());
    for (int j = 0; j < vs->dim(); ++j) v = vec_add(v, vec_scale((*sol)[j], vs->basis_vector(j)));
    const Element out = m.mul(cand, element_from_vec(m, v));
    if (m.contains(s, out) && qm.eq(q.project(out), image)) return out;
  }
  throw std::domain_error("lift_into: no preimage inside the subgroup");
}

std::pair<Element, Element> split_through(const GroupModel& m, const SubgroupHandle& p1,
                                          const SubgroupHandle& p2, const Element& t) {
  const SubgroupHandle prod = m.product_subgroup(p1, p2);
  const QuotientResult q = m.quotient(prod, p2);
  Element u = lift_into(m, q, p1, q.project(t));
  Element v = m.mul(m.inv(u), t);
  if (!m.contains(p2, v)) throw std::logic_error("split_through: residue escaped the second factor");
  return {std::move(u), std::move(v)};
}

// ---------------------------------------------------------------------------
// greedy generation
// ---------------------------------------------------------------------------

GreedyResult greedy_generate(const GroupModel& m, const std::vector<SubgroupHandle>& parts) {
  for (const SubgroupHandle& p : parts) {
    if (m.component_index(p) != 1) {
      throw std::domain_error("greedy_generate: every part must be connected");
    }
  }
  for (size_t i = 0; i < parts.size(); ++i) {
    for (size_t j = i + 1; j < parts.size(); ++j) {
      if (!m.normalizes_subgroup(parts[i], parts[j]) ||
          !m.normalizes_subgroup(parts[j], parts[i])) {
        throw std::domain_error("greedy_generate: the parts must pairwise normalize");
      }
    }
  }
  GreedyResult out{m.trivial_subgroup(), {}};
  std::vector<bool> used(parts.size(), false);
  while (true) {
    int best = -1;
    int best_dim = m.dim(out.subgroup);
    SubgroupHandle best_handle = out.subgroup;
    for (size_t i = 0; i < parts.size(); ++i) {
      if (used[i]) continue;
      SubgroupHandle cand = m.product_subgroup(out.subgroup, parts[i]);
      const int d = m.dim(cand);
      if (d > best_dim) {
        best = static_cast<int>(i);
        best_dim = d;
        best_handle = std::move(cand);
      }
    }
    if (best < 0) break;
    used[static_cast<size_t>(best)] = true;
    out.chosen.push_back(best);
    out.subgroup = std::move(best_handle);
  }
  return out;
}

// ---------------------------------------------------------------------------
// central commutator stage
// ---------------------------------------------------------------------------

CentralCommutatorResult central_commutator(const GroupModel& m, const SubgroupHandle& h,
                                           const std::vector<Element>& xs,
                                           const std::vector<Element>& targets,
                                           const std::string& tag) {
  if (m.component_index(h) != 1) {
    throw std::domain_error("central stage: the acting subgroup must be connected");
  }
  const SubgroupHandle zh = m.centralizer_of(h);
  std::vector<SubgroupHandle> images;
  images.reserve(xs.size());
  for (const Element& x : xs) {
    SubgroupHandle img = m.ad_image(h, x);
    if (!m.contains_subgroup(zh, img)) {
      throw std::domain_error("central stage: an image fails to centralize the subgroup");
    }
    images.push_back(std::move(img));
  }
  CentralCommutatorResult out{m.trivial_subgroup(), {}, {}};
  std::vector<bool> used(xs.size(), false);
  while (true) {
    int best = -1;
    int best_dim = m.dim(out.subgroup);
    SubgroupHandle best_handle = out.subgroup;
    for (size_t i = 0; i < images.size(); ++i) {
      if (used[i]) continue;
      SubgroupHandle cand = m.product_subgroup(out.subgroup, images[i]);
      const int d = m.dim(cand);
      if (d > best_dim) {
        best = static_cast<int>(i);
        best_dim = d;
        best_handle = std::move(cand);
      }
    }
    if (best < 0) break;
    used[static_cast<size_t>(best)] = true;
    out.chosen.push_back(best);
    out.subgroup = std::move(best_handle);
  }
  if (!m.contains_subgroup(m.centralizer_of(out.subgroup), out.subgroup)) {
    throw std::logic_error("central stage: the image product is not abelian");
  }
  // saturation: every image sits inside the product, so the product is the
  // whole subgroup generated by the images
  for (const SubgroupHandle& img : images) {
    if (!m.contains_subgroup(out.subgroup, img)) {
      throw std::logic_error("central stage: greedy selection missed an image");
    }
  }
  std::vector<SubgroupHandle> chosen_images;
  for (int i : out.chosen) chosen_images.push_back(images[static_cast<size_t>(i)]);
  for (const Element& t : targets) {
    if (!m.contains(out.subgroup, t)) {
      throw std::domain_error("central stage: a target lies outside the image product");
    }
    const std::vector<Element> parts = split_abelian(m, chosen_images, t);
    WidthCertificate cert{t, {}};
    for (size_t k = 0; k < parts.size(); ++k) {
      if (m.is_identity(parts[k])) continue;
      const Element& x = xs[static_cast<size_t>(out.chosen[k])];
      const std::optional<Element> a =
          m.solve_commutator(h, x, parts[k]);
      if (!a) throw std::logic_error("central stage: an image member has no preimage");
      cert.factors.push_back(CommutatorFactor{*a, x, 1, tag});
    }
    if (!cert.verify(m)) throw std::logic_error("central stage: certificate replay mismatch");
    out.certificates.push_back(std::move(cert));
  }
  return out;
}

// ---------------------------------------------------------------------------
// staged width solver
// ---------------------------------------------------------------------------

WidthCertificate finite_width_certificate(const GroupModel& m, const SubgroupHandle& a,
                                          const SubgroupHandle& b, const Element& target,
                                          const std::string& tag) {
  if (!is_finite_kind(m)) {
    throw std::domain_error("finite width: only available on finite models");
  }
  if (m.is_identity(target)) return WidthCertificate{target, {}};
  std::vector<std::pair<int, CommutatorFactor>> mults;
  std::map<int, bool> seen;
  for (const Element& x : m.enumerate(a)) {
    for (const Element& y : m.enumerate(b)) {
      const Element c = m.comm(x, y);
      const int ci = std::get<int>(c);
      if (!seen.count(ci)) {
        seen[ci] = true;
        mults.emplace_back(ci, CommutatorFactor{x, y, 1, tag});
      }
      const int ici = std::get<int>(m.inv(c));
      if (!seen.count(ici)) {
        seen[ici] = true;
        mults.emplace_back(ici, CommutatorFactor{x, y, -1, tag});
      }
    }
  }
  const int id = std::get<int>(m.identity());
  const int goal = std::get<int>(target);
  std::map<int, std::pair<int, int>> parent;  // state -> (previous state, multiplier)
  std::deque<int> frontier{id};
  parent[id] = {-1, -1};
  while (!frontier.empty()) {
    const int s = frontier.front();
    frontier.pop_front();
    for (size_t k = 0; k < mults.size(); ++k) {
      const int ns = std::get<int>(m.mul(Element{s}, Element{mults[k].first}));
      if (parent.count(ns)) continue;
      parent[ns] = {s, static_cast<int>(k)};
      if (ns == goal) {
        WidthCertificate cert{target, {}};
        int cur = ns;
        while (parent[cur].first >= 0) {
          cert.factors.push_back(mults[static_cast<size_t>(parent[cur].second)].second);
          cur = parent[cur].first;
        }
        std::reverse(cert.factors.begin(), cert.factors.end());
        if (!cert.verify(m)) throw std::logic_error("finite width: replay mismatch");
        return cert;
      }
      frontier.push_back(ns);
    }
  }
  throw std::domain_error("finite width: the target is not a product of pair commutators");
}

namespace {

WidthCertificate certify(const GroupModel& m, const SubgroupHandle& a, const SubgroupHandle& b,
                         const Element& t, const std::string& tag, int depth);

// Single central stage: grow a generating pool from xsrc until the image
// product reaches `expected`, then express t in one pass.
WidthCertificate central_path(const GroupModel& m, const SubgroupHandle& h,
                              const SubgroupHandle& xsrc, const SubgroupHandle& expected,
                              const Element& t, const std::string& tag) {
  const std::vector<Element> gens = generating_elements(m, xsrc);
  std::vector<Element> pool = gens;
  for (int round = 0; round < 3; ++round) {
    const CentralCommutatorResult probe = central_commutator(m, h, pool, {}, tag);
    if (probe.subgroup == expected) {
      CentralCommutatorResult res = central_commutator(m, h, pool, {t}, tag);
      return std::move(res.certificates.front());
    }
    std::vector<Element> grown = pool;
    for (const Element& x : pool) {
      for (const Element& g : gens) {
        const Element p = m.mul(x, g);
        if (!contains_element(m, grown, p) && grown.size() < 96) grown.push_back(p);
      }
    }
    pool = std::move(grown);
  }
  throw std::logic_error("central stage: the pool never spans the commutator subgroup");
}

CommutatorFactor lift_factor(const GroupModel& m, const QuotientResult& q, const SubgroupHandle& a,
                             const SubgroupHandle& b, const SubgroupHandle& pa,
                             const SubgroupHandle& pb, const CommutatorFactor& f) {
  const GroupModel& qm = *q.model;
  if (qm.contains(pa, f.a) && qm.contains(pb, f.b)) {
    return CommutatorFactor{lift_into(m, q, a, f.a), lift_into(m, q, b, f.b), f.sign, f.source};
  }
  if (qm.contains(pb, f.a) && qm.contains(pa, f.b)) {
    return CommutatorFactor{lift_into(m, q, b, f.a), lift_into(m, q, a, f.b), f.sign, f.source};
  }
  throw std::logic_error("staged width: a lifted factor matches neither side");
}

// Solve modulo u (normal in the product of the pair), lift the factors, then
// correct the residue with the pair (cres, sres), whose commutators are still
// commutators of the original pair.
WidthCertificate descend(const GroupModel& m, const SubgroupHandle& a, const SubgroupHandle& b,
                         const SubgroupHandle& cres, const SubgroupHandle& sres,
                         const SubgroupHandle& u, const Element& t, const std::string& tag,
                         int depth) {
  const SubgroupHandle ab = m.product_subgroup(a, b);
  const QuotientResult q = m.quotient(ab, u);
  const SubgroupHandle pa = q.push_subgroup(a);
  const SubgroupHandle pb = q.push_subgroup(b);
  const WidthCertificate top = certify(*q.model, pa, pb, q.project(t), tag, depth + 1);
  WidthCertificate out{t, {}};
  for (const CommutatorFactor& f : top.factors) {
    out.factors.push_back(lift_factor(m, q, a, b, pa, pb, f));
  }
  const Element partial = out.replay(m);
  const Element residue = m.mul(m.inv(partial), t);
  if (!m.contains(u, residue)) throw std::logic_error("staged width: residue escaped the kernel");
  WidthCertificate rest = certify(m, cres, sres, residue, tag, depth + 1);
  for (CommutatorFactor& f : rest.factors) out.factors.push_back(std::move(f));
  if (!out.verify(m)) throw std::logic_error("staged width: replay mismatch after descent");
  return out;
}

WidthCertificate certify(const GroupModel& m, const SubgroupHandle& a, const SubgroupHandle& b,
                         const Element& t, const std::string& tag, int depth) {
  if (depth > 48) throw std::logic_error("staged width: recursion depth exceeded");
  if (m.is_identity(t)) return WidthCertificate{t, {}};
  if (is_finite_kind(m)) return finite_width_certificate(m, a, b, t, tag);
  const SubgroupHandle d = m.commutator_closure(a, b).subgroup;
  if (!m.contains(d, t)) throw std::domain_error("staged width: the target is outside [A,B]");
  const bool conn_a = m.component_index(a) == 1;
  const bool conn_b = m.component_index(b) == 1;
  if (!conn_a && conn_b) return certify(m, b, a, t, tag, depth + 1);
  if (!conn_a) throw std::domain_error("staged width: at least one side must be connected");
  if (!conn_b) {
    // solve against the discrete side: modulo [A, Bo] the commutator subgroup
    // centralizes the connected side, so a single central stage applies
    const SubgroupHandle bo = m.connected_component(b);
    const SubgroupHandle p2 = m.commutator_closure(a, bo).subgroup;
    if (p2 == m.trivial_subgroup()) return central_path(m, a, b, d, t, tag);
    const SubgroupHandle ab = m.product_subgroup(a, b);
    const QuotientResult q = m.quotient(ab, p2);
    const SubgroupHandle pa = q.push_subgroup(a);
    const SubgroupHandle pb = q.push_subgroup(b);
    const SubgroupHandle dbar = q.model->commutator_closure(pa, pb).subgroup;
    const WidthCertificate top = central_path(*q.model, pa, pb, dbar, q.project(t), tag);
    WidthCertificate out{t, {}};
    for (const CommutatorFactor& f : top.factors) {
      out.factors.push_back(lift_factor(m, q, a, b, pa, pb, f));
    }
    const Element partial = out.replay(m);
    const Element residue = m.mul(m.inv(partial), t);
    if (!m.contains(p2, residue)) throw std::logic_error("staged width: residue escaped the kernel");
    WidthCertificate rest = certify(m, bo, a, residue, tag, depth + 1);
    for (CommutatorFactor& f : rest.factors) out.factors.push_back(std::move(f));
    if (!out.verify(m)) throw std::logic_error("staged width: replay mismatch after descent");
    return out;
  }
  if (m.contains_subgroup(m.centralizer_of(a), d)) return central_path(m, a, b, d, t, tag);
  if (m.contains_subgroup(m.centralizer_of(b), d)) return central_path(m, b, a, d, t, tag);
  if (a == b) {
    if (d == a) throw std::domain_error("staged width: a perfect connected side is unsupported");
    const SubgroupHandle u = m.commutator_closure(d, a).subgroup;
    if (u == m.trivial_subgroup()) {
      throw std::logic_error("staged width: central case escaped detection");
    }
    return descend(m, a, b, d, a, u, t, tag, depth);
  }
  const SubgroupHandle c = m.connected_component(m.intersect_subgroups(a, b));
  if (c == a) {
    // A lies inside B; divide by A' to make the A-side abelian
    const SubgroupHandle u = m.commutator_closure(a, a).subgroup;
    if (u == m.trivial_subgroup()) {
      throw std::logic_error("staged width: abelian case escaped detection");
    }
    return descend(m, a, b, a, a, u, t, tag, depth);
  }
  if (c == b) return certify(m, b, a, t, tag, depth + 1);
  SubgroupHandle u = m.commutator_closure(c, b).subgroup;
  SubgroupHandle sres = b;
  if (u == m.trivial_subgroup()) {
    u = m.commutator_closure(c, a).subgroup;
    sres = a;
  }
  if (u == m.trivial_subgroup()) {
    throw std::logic_error("staged width: descent stalled on a central intersection");
  }
  return descend(m, a, b, c, sres, u, t, tag, depth);
}

}  // namespace

WidthCertificate staged_width(const GroupModel& m, const SubgroupHandle& a,
                              const SubgroupHandle& b, const Element& target,
                              const std::string& tag) {
  if (!m.normalizes_subgroup(a, b) || !m.normalizes_subgroup(b, a)) {
    throw std::domain_error("staged width: the subgroups must normalize each other");
  }
  WidthCertificate cert = certify(m, a, b, target, tag.empty() ? "staged" : tag, 0);
  if (!cert.verify(m)) throw std::logic_error("staged width: replay mismatch");
  return cert;
}

// ---------------------------------------------------------------------------
// main theorem verifier
// ---------------------------------------------------------------------------

namespace {

// Certificate for t in C = [Ao,B].[A,Bo]: solve modulo [A,Bo] (where the
// image of [Ao,B] is everything), lift, then correct inside [A,Bo]. Lengths
// add up to dim(C) by the dimension formula.
WidthCertificate component_certificate(const GroupModel& m, const SubgroupHandle& a,
                                       const SubgroupHandle& b, const SubgroupHandle& ao,
                                       const SubgroupHandle& bo, const SubgroupHandle& p1,
                                       const SubgroupHandle& p2, const Element& t) {
  if (p2 == m.trivial_subgroup()) return certify(m, ao, b, t, "from [Ao,B]", 0);
  if (p1 == m.trivial_subgroup()) return certify(m, bo, a, t, "from [A,Bo]", 0);
  const SubgroupHandle ab = m.product_subgroup(a, b);
  const QuotientResult q = m.quotient(ab, p2);
  const SubgroupHandle qa = q.push_subgroup(ao);
  const SubgroupHandle qb = q.push_subgroup(b);
  const WidthCertificate top = certify(*q.model, qa, qb, q.project(t), "from [Ao,B]", 0);
  WidthCertificate out{t, {}};
  for (const CommutatorFactor& f : top.factors) {
    out.factors.push_back(lift_factor(m, q, ao, b, qa, qb, f));
  }
  const Element partial = out.replay(m);
  const Element residue = m.mul(m.inv(partial), t);
  if (!m.contains(p2, residue)) {
    throw std::logic_error("main theorem: residue escaped the second component");
  }
  WidthCertificate rest = certify(m, bo, a, residue, "from [A,Bo]", 0);
  for (CommutatorFactor& f : rest.factors) out.factors.push_back(std::move(f));
  if (!out.verify(m)) throw std::logic_error("main theorem: certificate replay mismatch");
  return out;
}

// Finite-correction prefix for a semidirect target: match the discrete part
// by breadth-first search over generator commutators (exact, since the
// discrete part of a product is the product of discrete parts).
std::vector<CommutatorFactor> lbf_discrete_prefix(const GroupModel& m, const SubgroupHandle& a,
                                                  const SubgroupHandle& b, const Element& t) {
  const int idf = lbf_identity_f(m);
  const int goal = std::get<LbfElement>(t).f;
  if (goal == idf) return {};
  const int d = static_cast<int>(std::get<LbfElement>(m.identity()).v.size());
  struct Mult {
    int f;
    CommutatorFactor factor;
  };
  std::vector<Mult> mults;
  std::map<int, bool> seen;
  for (const Element& x : generating_elements(m, a)) {
    for (const Element& y : generating_elements(m, b)) {
      const Element c = m.comm(x, y);
      const int cf = std::get<LbfElement>(c).f;
      if (cf != idf && !seen.count(cf)) {
        seen[cf] = true;
        mults.push_back({cf, CommutatorFactor{x, y, 1, "finite-correction"}});
      }
      const int icf = std::get<LbfElement>(m.inv(c)).f;
      if (icf != idf && !seen.count(icf)) {
        seen[icf] = true;
        mults.push_back({icf, CommutatorFactor{x, y, -1, "finite-correction"}});
      }
    }
  }
  std::map<int, std::pair<int, int>> parent;
  std::deque<int> frontier{idf};
  parent[idf] = {-1, -1};
  while (!frontier.empty()) {
    const int s = frontier.front();
    frontier.pop_front();
    for (size_t k = 0; k < mults.size(); ++k) {
      // the discrete part of a product is the product of discrete parts
      const Element prod =
          m.mul(Element{LbfElement{vec_zero(d), s}}, Element{LbfElement{vec_zero(d), mults[k].f}});
      const int ns = std::get<LbfElement>(prod).f;
      if (parent.count(ns)) continue;
      parent[ns] = {s, static_cast<int>(k)};
      if (ns == goal) {
        std::vector<CommutatorFactor> factors;
        int cur = ns;
        while (parent[cur].first >= 0) {
          factors.push_back(mults[static_cast<size_t>(parent[cur].second)].factor);
          cur = parent[cur].first;
        }
        std::reverse(factors.begin(), factors.end());
        return factors;
      }
      frontier.push_back(ns);
    }
  }
  throw std::domain_error("main theorem: discrete part unreachable by pair commutators");
}

int correction_count(const WidthCertificate& cert) {
  int n = 0;
  for (const CommutatorFactor& f : cert.factors) {
    if (f.source == "finite-correction") ++n;
  }
  return n;
}

bool factor_sides_valid(const GroupModel& m, const SubgroupHandle& a, const SubgroupHandle& b,
                        const WidthCertificate& cert) {
  for (const CommutatorFactor& f : cert.factors) {
    const bool direct = m.contains(a, f.a) && m.contains(b, f.b);
    const bool swapped = m.contains(b, f.a) && m.contains(a, f.b);
    if (!direct && !swapped) return false;
  }
  return true;
}

}  // namespace

MainTheoremData main_theorem_check(const GroupModel& m, const SubgroupHandle& a,
                                   const SubgroupHandle& b, std::mt19937_64& rng, int samples) {
  if (!m.normalizes_subgroup(a, b) || !m.normalizes_subgroup(b, a)) {
    throw std::domain_error("main theorem: the subgroups must normalize each other");
  }
  MainTheoremData out;
  out.report.id = "8.1";
  out.report.title =
      "commutator decomposition: connected part from the components, finite index, width within "
      "dimension";
  out.closure = m.commutator_closure(a, b);
  const SubgroupHandle d = out.closure.subgroup;
  const SubgroupHandle ao = m.connected_component(a);
  const SubgroupHandle bo = m.connected_component(b);
  out.from_a_component = m.commutator_closure(ao, b).subgroup;
  out.from_b_component = m.commutator_closure(a, bo).subgroup;
  const SubgroupHandle c = m.product_subgroup(out.from_a_component, out.from_b_component);
  out.component = m.connected_component(d);
  out.finite_index = m.component_index(d);
  out.report.check(m.component_index(c) == 1, "the component product is connected");
  out.report.check(c == out.component, "[Ao,B].[A,Bo] equals the connected part of [A,B]");
  out.report.check(m.contains_subgroup(d, c), "the component product sits inside [A,B]");
  out.report.check(out.finite_index >= 1, "the component has finite index in [A,B]");

  if (samples <= 0) return out;

  if (is_finite_kind(m)) {
    // everything is a finite correction; widths come from the exact oracle
    for (int i = 0; i < samples; ++i) {
      const Element t = m.random_member(d, rng);
      WidthCertificate cert = finite_width_certificate(m, a, b, t, "finite-correction");
      out.report.check(cert.verify(m), "certificate replays to its target");
      out.report.check(factor_sides_valid(m, a, b, cert), "factors stay inside the pair");
      out.finite_correction_width = std::max(out.finite_correction_width, correction_count(cert));
      out.certificates.push_back(std::move(cert));
    }
    return out;
  }

  const bool solvable = is_solvable_subgroup(m, ao) && is_solvable_subgroup(m, bo);
  if (!solvable) {
    out.report.note("width sampling skipped: a component is not solvable");
    return out;
  }
  for (int i = 0; i < samples; ++i) {
    const Element t = m.random_member(c, rng);
    WidthCertificate cert =
        component_certificate(m, a, b, ao, bo, out.from_a_component, out.from_b_component, t);
    out.report.check(cert.verify(m), "certificate replays to its target");
    out.report.check(cert.length() <= m.dim(c), "certificate length within dim of the component");
    out.report.check(factor_sides_valid(m, a, b, cert), "factors stay inside the pair");
    out.certificates.push_back(std::move(cert));
  }
  if (out.finite_index > 1) {
    if (m.kind() != "lbf") {
      out.report.check(false, "unexpected finite index outside the linear-by-finite models");
      return out;
    }
    const int corrections = std::min(samples, 5);
    const LbfSubgroup& ld = std::get<LbfSubgroup>(d);
    std::vector<int> nontrivial;
    for (int f : ld.s.members) {
      if (f != lbf_identity_f(m)) nontrivial.push_back(f);
    }
    out.report.check(!nontrivial.empty(), "a finite index is witnessed by a discrete member");
    for (int i = 0; i < corrections && !nontrivial.empty(); ++i) {
      const int f = nontrivial[static_cast<size_t>(rng() % nontrivial.size())];
      const Element t =
          m.mul(LbfElement{vec_zero(ld.w.ambient()), f}, m.random_member(c, rng));
      WidthCertificate cert{t, lbf_discrete_prefix(m, a, b, t)};
      const Element partial = cert.replay(m);
      const Element residue = m.mul(m.inv(partial), t);
      out.report.check(m.contains(c, residue),
                       "after the discrete prefix the residue is in the component");
      WidthCertificate rest = component_certificate(m, a, b, ao, bo, out.from_a_component,
                                                    out.from_b_component, residue);
      for (CommutatorFactor& g : rest.factors) cert.factors.push_back(std::move(g));
      out.report.check(cert.verify(m), "corrected certificate replays to its target");
      out.report.check(cert.length() - correction_count(cert) <= m.dim(c),
                       "non-correction factors stay within dim of the component");
      out.report.check(factor_sides_valid(m, a, b, cert), "factors stay inside the pair");
      out.finite_correction_width = std::max(out.finite_correction_width, correction_count(cert));
      out.certificates.push_back(std::move(cert));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// series and solvable structure
// ---------------------------------------------------------------------------

SeriesData series_and_solvable_checks(const GroupModel& m) {
  SeriesData out;
  const SubgroupHandle full = m.full_subgroup();
  const SubgroupHandle triv = m.trivial_subgroup();
  out.lower_central = lower_central_series(m, full);
  out.derived = derived_series(m, full);
  out.upper_central = upper_central_series(m);
  const bool connected = m.component_index(full) == 1;

  LemmaReport r85{"8.5", "iterated commutator subgroups stay representable and nested"};
  for (const std::vector<SubgroupHandle>* series : {&out.lower_central, &out.derived}) {
    for (size_t k = 0; k < series->size(); ++k) {
      const SubgroupHandle& term = (*series)[k];
      r85.check(m.valid_handle(term), "series term is a valid handle");
      if (k > 0) {
        r85.check(m.contains_subgroup((*series)[k - 1], term), "series terms are nested");
        if (connected) {
          r85.check(m.component_index(term) == 1,
                    "series terms of a connected group are connected");
        }
      }
    }
  }
  for (size_t k = 1; k < out.upper_central.size(); ++k) {
    const SubgroupHandle& zk = out.upper_central[k];
    r85.check(m.valid_handle(zk), "ascending term is a valid handle");
    r85.check(m.contains_subgroup(zk, out.upper_central[k - 1]), "ascending terms are nested");
    r85.check(m.contains_subgroup(out.upper_central[k - 1],
                                  m.commutator_closure(full, zk).subgroup),
              "ascending term is central modulo the previous one");
  }
  std::mt19937_64 rng0(0);
  for (size_t k = 1; k < out.lower_central.size(); ++k) {
    MainTheoremData stage = main_theorem_check(m, full, out.lower_central[k - 1], rng0, 0);
    r85.check(stage.closure.subgroup == out.lower_central[k],
              "stage closure matches the series term");
    r85.absorb(stage.report);
  }
  out.reports.push_back(std::move(r85));

  LemmaReport r24{"2.4", "descending terms sit inside mirrored ascending terms; class is mirrored"};
  const bool nilpotent = out.lower_central.back() == triv;
  if (nilpotent) {
    const size_t n = out.lower_central.size() - 1;  // nilpotency class
    r24.check(out.upper_central.size() == n + 1, "ascending series reaches the group in class steps");
    if (out.upper_central.size() == n + 1) {
      for (size_t i = 0; i <= n; ++i) {
        r24.check(m.contains_subgroup(out.upper_central[n - i], out.lower_central[i]),
                  "descending term inside the mirrored ascending term");
      }
      r24.check(out.upper_central[n] == full, "the ascending series terminates at the group");
      if (n >= 1) {
        r24.check(!(out.upper_central[n - 1] == full), "the previous ascending term is proper");
        try {
          const QuotientResult q = m.quotient_by(out.upper_central[1]);
          const std::vector<SubgroupHandle> qlcs = lower_central_series(*q.model, q.image);
          r24.check(qlcs.size() == n, "the central quotient drops the class by one");
        } catch (const std::exception& e) {
          r24.check(false, std::string("central quotient unavailable: ") + e.what());
        }
      }
    }
  } else {
    r24.note("skipped: the group is not nilpotent");
  }
  out.reports.push_back(std::move(r24));

  const bool solvable = out.derived.back() == triv;
  const bool abelian = is_abelian_subgroup(m, full);
  const SubgroupHandle derived1 = out.derived.size() > 1 ? out.derived[1] : triv;

  LemmaReport r71{"7.1", "derived subgroup of a connected solvable group is nilpotent"};
  if (connected && solvable) {
    r71.check(is_nilpotent_subgroup(m, derived1), "derived subgroup nilpotent");
  } else {
    r71.note("skipped: needs a connected solvable group");
  }
  out.reports.push_back(std::move(r71));

  LemmaReport r72{"7.2", "derived subgroup lies inside the connected Fitting subgroup"};
  if (connected && solvable) {
    const SubgroupHandle fo = m.connected_component(m.fitting_subgroup());
    r72.check(m.contains_subgroup(fo, derived1), "derived inside the connected Fitting subgroup");
  } else {
    r72.note("skipped: needs a connected solvable group");
  }
  out.reports.push_back(std::move(r72));

  LemmaReport r73{"7.3", "connected Fitting subgroup of a nontrivial connected solvable group"};
  if (connected && solvable && !(full == triv)) {
    const SubgroupHandle fo = m.connected_component(m.fitting_subgroup());
    r73.check(!(fo == triv), "connected Fitting subgroup is nontrivial");
  } else {
    r73.note("skipped: needs a nontrivial connected solvable group");
  }
  out.reports.push_back(std::move(r73));

  LemmaReport r76{"7.6", "a proper nontrivial connected normal subgroup exists"};
  if (connected && solvable && !abelian) {
    bool found = false;
    const SubgroupHandle candidates[] = {m.connected_component(m.center()), derived1,
                                         m.connected_component(m.fitting_subgroup())};
    for (const SubgroupHandle& w : candidates) {
      if (w == triv || w == full) continue;
      if (m.component_index(w) != 1) continue;
      if (!m.normalizes_subgroup(full, w)) continue;
      r76.note("witness: " + m.subgroup_str(w));
      found = true;
      break;
    }
    r76.check(found, "no proper nontrivial connected normal witness found");
  } else {
    r76.note("skipped: needs a connected solvable nonabelian group");
  }
  out.reports.push_back(std::move(r76));

  return out;
}

// ---------------------------------------------------------------------------
// [H, X] for X = H together with extra normalizing elements
// ---------------------------------------------------------------------------

HxData hx_check(const GroupModel& m, const SubgroupHandle& h, const std::vector<Element>& xs,
                std::mt19937_64& rng, int samples) {
  if (m.component_index(h) != 1) {
    throw std::domain_error("hx: the subgroup must be connected");
  }
  for (const Element& x : xs) {
    if (!element_normalizes(m, h, x)) {
      throw std::domain_error("hx: every extra element must normalize the subgroup");
    }
  }
  HxData out;
  out.report.id = "9.3";
  out.report.title = "commutator with a normalizing overset of the subgroup";

  // the overset X = H union xs; its extra part plus a generating family of H
  std::vector<Element> pool = xs;
  for (const Element& g : generating_elements(m, h)) pool.push_back(g);

  const SubgroupHandle hprime = m.commutator_closure(h, h).subgroup;
  std::vector<Element> targets;
  bool width_ok = true;
  std::string width_skip;
  if (const TbuSubgroup* th = std::get_if<TbuSubgroup>(&h)) {
    if (th->torus != TorusPart::Trivial) {
      width_ok = false;
      width_skip = "width sampling skipped: the subgroup has an infinite torus part";
    }
  }
  if (!is_solvable_subgroup(m, h)) {
    width_ok = false;
    width_skip = "width sampling skipped: the subgroup is not solvable";
  }

  if (hprime == m.trivial_subgroup()) {
    CentralCommutatorResult cc = central_commutator(m, h, pool, {});
    out.commutator = cc.subgroup;
    out.report.check(m.component_index(out.commutator) == 1, "[H,X] is connected");
    out.report.check(m.contains_subgroup(h, out.commutator), "[H,X] lies inside H");
    if (width_ok) {
      for (int i = 0; i < samples; ++i) targets.push_back(m.random_member(out.commutator, rng));
      CentralCommutatorResult with = central_commutator(m, h, pool, targets);
      for (WidthCertificate& cert : with.certificates) {
        out.report.check(cert.verify(m), "certificate replays to its target");
        out.report.check(cert.length() <= m.dim(out.commutator),
                         "certificate length within dim([H,X])");
        out.certificates.push_back(std::move(cert));
      }
    } else if (samples > 0) {
      out.report.note(width_skip);
    }
    return out;
  }

  // divide by the derived subgroup of H, whose image makes H abelian; scope
  // the quotient to the envelope of H and the extra elements, falling back to
  // the whole model
  QuotientResult q;
  bool have_q = false;
  try {
    q = m.quotient(m.hull_of(pool), hprime);
    have_q = true;
  } catch (const std::exception&) {
  }
  if (!have_q) q = m.quotient_by(hprime);
  const GroupModel& qm = *q.model;
  const SubgroupHandle hbar = q.push_subgroup(h);
  std::vector<Element> pool_bar;
  for (const Element& x : pool) pool_bar.push_back(q.project(x));
  CentralCommutatorResult cc = central_commutator(qm, hbar, pool_bar, {});
  out.commutator = q.lift_subgroup(cc.subgroup);
  out.report.check(m.component_index(out.commutator) == 1, "[H,X] is connected");
  out.report.check(m.contains_subgroup(h, out.commutator), "[H,X] lies inside H");
  out.report.check(m.contains_subgroup(out.commutator, hprime), "[H,X] contains [H,H]");
  for (int i = 0; i < std::min(samples, 8); ++i) {
    const Element y = m.random_member(h, rng);
    for (const Element& x : xs) {
      out.report.check(m.contains(out.commutator, m.comm(y, x)),
                       "a sampled pair commutator lands in [H,X]");
    }
  }
  if (!width_ok) {
    if (samples > 0) out.report.note(width_skip);
    return out;
  }
  for (int i = 0; i < samples; ++i) targets.push_back(m.random_member(out.commutator, rng));
  std::vector<Element> targets_bar;
  for (const Element& t : targets) targets_bar.push_back(q.project(t));
  CentralCommutatorResult with = central_commutator(qm, hbar, pool_bar, targets_bar);
  for (size_t i = 0; i < targets.size(); ++i) {
    const WidthCertificate& top = with.certificates[i];
    WidthCertificate cert{targets[i], {}};
    for (const CommutatorFactor& f : top.factors) {
      // map the acting element back to the parent pool entry it came from
      int j = -1;
      for (size_t p = 0; p < pool_bar.size(); ++p) {
        if (qm.eq(pool_bar[p], f.b)) {
          j = static_cast<int>(p);
          break;
        }
      }
      if (j < 0) throw std::logic_error("hx: an acting element is outside the pool");
      cert.factors.push_back(CommutatorFactor{lift_into(m, q, h, f.a),
                                              pool[static_cast<size_t>(j)], f.sign, f.source});
    }
    const Element partial = cert.replay(m);
    const Element residue = m.mul(m.inv(partial), targets[i]);
    out.report.check(m.contains(hprime, residue), "residue falls into [H,H]");
    WidthCertificate rest = certify(m, h, h, residue, "hx residue", 0);
    for (CommutatorFactor& f : rest.factors) cert.factors.push_back(std::move(f));
    out.report.check(cert.verify(m), "certificate replays to its target");
    out.report.check(cert.length() <= m.dim(out.commutator),
                     "certificate length within dim([H,X])");
    out.certificates.push_back(std::move(cert));
  }
  return out;
}

// ---------------------------------------------------------------------------
// dimension axiom battery
// ---------------------------------------------------------------------------

std::vector<LemmaReport> axiom_battery(const GroupModel& m, std::mt19937_64& rng, int samples) {
  LemmaReport a3{"A3", "dimension zero exactly on the finite subgroups; component behavior"};
  LemmaReport dimf{"5.1", "dimension formula for products of normalizing subgroups"};
  LemmaReport a2{"A2", "dimension is additive across quotients"};
  LemmaReport dcc{"dcc", "descending chains of subgroups stabilize"};

  for (int i = 0; i < samples; ++i) {
    const SubgroupHandle h = m.random_subgroup(rng);
    a3.check((m.dim(h) == 0) == m.is_finite_subgroup(h),
             "dim zero iff finite: " + m.subgroup_str(h));
    const SubgroupHandle ho = m.connected_component(h);
    a3.check(m.dim(ho) == m.dim(h), "the component keeps the dimension: " + m.subgroup_str(h));
    a3.check(m.component_index(h) >= 1, "component index is finite and positive");
    a3.check(m.connected_component(ho) == ho, "taking the component is idempotent");
    a3.check(m.component_index(ho) == 1, "the component is connected");
  }

  for (int i = 0; i < samples; ++i) {
    const SubgroupHandle x = m.normal_closure(m.random_subgroup(rng));
    const SubgroupHandle y = m.normal_closure(m.random_subgroup(rng));
    const SubgroupHandle p = m.product_subgroup(x, y);
    const SubgroupHandle n = m.intersect_subgroups(x, y);
    dimf.check(m.dim(p) + m.dim(n) == m.dim(x) + m.dim(y),
               "dim(XY) + dim(X meet Y) = dim(X) + dim(Y) on " + m.subgroup_str(x) + " and " +
                   m.subgroup_str(y));
  }

  for (int i = 0; i < samples; ++i) {
    const SubgroupHandle n = m.normal_closure(m.random_subgroup(rng));
    try {
      const QuotientResult q = m.quotient_by(n);
      a2.check(q.model->dim(q.image) + m.dim(n) == m.dim(m.full_subgroup()),
               "dim(G/N) + dim(N) = dim(G) for N = " + m.subgroup_str(n));
    } catch (const std::exception& e) {
      a2.note(std::string("quotient unavailable: ") + e.what());
    }
  }

  const int full_dim = m.dim(m.full_subgroup());
  for (int i = 0; i < samples; ++i) {
    SubgroupHandle h = m.full_subgroup();
    int drops = 0;
    for (int s = 0; s < 32; ++s) {
      const SubgroupHandle next = m.intersect_subgroups(h, m.random_subgroup(rng));
      if (next == h) continue;
      dcc.check(m.dim(next) <= m.dim(h), "intersection cannot raise dimension");
      ++drops;
      h = next;
    }
    // dimension can drop at most dim(G) times; the discrete tail is short
    dcc.check(drops <= full_dim + 8, "chain length stays bounded");
  }

  std::vector<LemmaReport> out;
  out.push_back(std::move(a3));
  out.push_back(std::move(dimf));
  out.push_back(std::move(a2));
  out.push_back(std::move(dcc));
  return out;
}

}  // namespace grouplab
