#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>

#include "grouplab/model.hpp"
#include "model_detail.hpp"

namespace grouplab {
namespace {

const TbuElement& as_tbu(const Element& a) {
  const TbuElement* p = std::get_if<TbuElement>(&a);
  if (p == nullptr) throw std::domain_error("tbu model: element of a different kind");
  return *p;
}

const TbuSubgroup& as_tbu_sub(const SubgroupHandle& h) {
  const TbuSubgroup* p = std::get_if<TbuSubgroup>(&h);
  if (p == nullptr) throw std::domain_error("tbu model: subgroup handle of a different kind");
  return *p;
}

bool flag_infinite(TorusPart t) { return t == TorusPart::Positive || t == TorusPart::Full; }

TorusPart flag_meet(TorusPart a, TorusPart b) {
  if (a == b) return a;
  if (a == TorusPart::Trivial || b == TorusPart::Trivial) return TorusPart::Trivial;
  if (a == TorusPart::Full) return b;
  if (b == TorusPart::Full) return a;
  return TorusPart::Trivial;  // Torsion meet Positive
}

TorusPart flag_join(TorusPart a, TorusPart b) {
  if (a == b) return a;
  if (a == TorusPart::Trivial) return b;
  if (b == TorusPart::Trivial) return a;
  return TorusPart::Full;  // any two distinct nontrivial flags generate everything
}

bool flag_contains(TorusPart a, TorusPart b) { return flag_meet(a, b) == b; }

// Q^x semidirect exp(g), law (t, u)(s, v) = (ts, bch(u, t.v)) where t scales
// the weight-w coordinates by t^w. Subgroups split as a torus flag plus a
// flag-stable subalgebra.
class TbuModel final : public GroupModel {
 public:
  TbuModel(NilpotentLieAlgebra base, std::vector<int> weights, std::string name,
           bool connected_full_torus)
      : l_(std::move(base)),
        weights_(std::move(weights)),
        name_(std::move(name)),
        connected_full_torus_(connected_full_torus) {
    if (weights_.size() != static_cast<size_t>(l_.dim())) {
      throw std::invalid_argument("tbu model: one weight per coordinate required");
    }
    for (int i = 0; i < l_.dim(); ++i) {
      for (int j = i + 1; j < l_.dim(); ++j) {
        const Vec& b = l_.basis_bracket(i, j);
        for (int k = 0; k < l_.dim(); ++k) {
          if (!b[static_cast<size_t>(k)].is_zero() &&
              weights_[static_cast<size_t>(k)] !=
                  weights_[static_cast<size_t>(i)] + weights_[static_cast<size_t>(j)]) {
            throw std::invalid_argument("tbu model: weights are not additive under the bracket");
          }
        }
      }
    }
    if (name_.empty()) name_ = "torus by " + l_.name();
  }

  std::string kind() const override { return "tbu"; }
  const std::string& name() const override { return name_; }
  const NilpotentLieAlgebra& base() const { return l_; }
  const std::vector<int>& weights() const { return weights_; }

  Vec scale(const Rational& t, const Vec& v) const {
    Vec out = v;
    for (int i = 0; i < l_.dim(); ++i) {
      out[static_cast<size_t>(i)] *= t.pow(weights_[static_cast<size_t>(i)]);
    }
    return out;
  }

  Element identity() const override { return TbuElement{1, vec_zero(l_.dim())}; }

  Element mul(const Element& a, const Element& b) const override {
    const TbuElement& x = as_tbu(a);
    const TbuElement& y = as_tbu(b);
    return TbuElement{x.t * y.t, l_.bch(x.u, scale(x.t, y.u))};
  }

  Element inv(const Element& a) const override {
    const TbuElement& x = as_tbu(a);
    Rational ti = x.t.inverse();
    return TbuElement{ti, l_.inverse(scale(ti, x.u))};
  }

  bool eq(const Element& a, const Element& b) const override { return as_tbu(a) == as_tbu(b); }

  std::string element_str(const Element& a) const override {
    const TbuElement& x = as_tbu(a);
    return "(" + x.t.str() + ", exp" + vec_str(x.u) + ")";
  }

  SubgroupHandle trivial_subgroup() const override {
    return TbuSubgroup{TorusPart::Trivial, Subspace(l_.dim())};
  }
  SubgroupHandle full_subgroup() const override {
    return TbuSubgroup{TorusPart::Full, Subspace::full(l_.dim())};
  }

  bool valid_handle(const SubgroupHandle& h) const override {
    const TbuSubgroup* p = std::get_if<TbuSubgroup>(&h);
    if (p == nullptr || p->u.ambient() != l_.dim()) return false;
    if (!l_.is_subalgebra(p->u)) return false;
    if (flag_infinite(p->torus) && !stable_under_scale(p->u, 2)) return false;
    if (p->torus == TorusPart::Torsion && !stable_under_scale(p->u, -1)) return false;
    return true;
  }

  bool contains(const SubgroupHandle& h, const Element& a) const override {
    const TbuSubgroup& s = as_tbu_sub(h);
    const TbuElement& x = as_tbu(a);
    return torus_has(s.torus, x.t) && s.u.contains(x.u);
  }

  bool contains_subgroup(const SubgroupHandle& h, const SubgroupHandle& k) const override {
    const TbuSubgroup& a = as_tbu_sub(h);
    const TbuSubgroup& b = as_tbu_sub(k);
    return flag_contains(a.torus, b.torus) && a.u.contains(b.u);
  }

  int dim(const SubgroupHandle& h) const override {
    const TbuSubgroup& s = as_tbu_sub(h);
    return (flag_infinite(s.torus) ? 1 : 0) + s.u.dim();
  }

  bool is_finite_subgroup(const SubgroupHandle& h) const override {
    const TbuSubgroup& s = as_tbu_sub(h);
    return !flag_infinite(s.torus) && s.u.dim() == 0;
  }

  std::vector<Element> enumerate(const SubgroupHandle& h) const override {
    const TbuSubgroup& s = as_tbu_sub(h);
    if (!is_finite_subgroup(h)) throw std::domain_error("enumerate: the subgroup is infinite");
    std::vector<Element> out{identity()};
    if (s.torus == TorusPart::Torsion) out.push_back(TbuElement{-1, vec_zero(l_.dim())});
    return out;
  }

  SubgroupHandle intersect_subgroups(const SubgroupHandle& a,
                                     const SubgroupHandle& b) const override {
    const TbuSubgroup& x = as_tbu_sub(a);
    const TbuSubgroup& y = as_tbu_sub(b);
    return TbuSubgroup{flag_meet(x.torus, y.torus), intersect(x.u, y.u)};
  }

  // a normalizes b iff the torus of a stabilizes U_b, every (alpha_s - 1)
  // with s in the torus of b maps U_a into U_b, and [U_a, U_b] <= U_b
  bool normalizes_subgroup(const SubgroupHandle& ah, const SubgroupHandle& bh) const override {
    const TbuSubgroup& a = as_tbu_sub(ah);
    const TbuSubgroup& b = as_tbu_sub(bh);
    if (flag_infinite(a.torus) && !stable_under_scale(b.u, 2)) return false;
    if (a.torus == TorusPart::Torsion && !stable_under_scale(b.u, -1)) return false;
    for (const Vec& img : twist_images(b.torus, a.u)) {
      if (!b.u.contains(img)) return false;
    }
    if (!b.u.contains(l_.bracket_subspace(a.u, b.u))) return false;
    return true;
  }

  SubgroupHandle product_subgroup(const SubgroupHandle& ah, const SubgroupHandle& bh) const override {
    if (!normalizes_subgroup(ah, bh) && !normalizes_subgroup(bh, ah)) {
      throw std::domain_error("product_subgroup: neither factor normalizes the other");
    }
    const TbuSubgroup& a = as_tbu_sub(ah);
    const TbuSubgroup& b = as_tbu_sub(bh);
    TbuSubgroup out{flag_join(a.torus, b.torus), sum(a.u, b.u)};
    if (!valid_handle(out)) {
      throw std::logic_error("product_subgroup: result failed the handle invariants");
    }
    return out;
  }

  SubgroupHandle connected_component(const SubgroupHandle& h) const override {
    const TbuSubgroup& s = as_tbu_sub(h);
    TorusPart t = s.torus;
    if (t == TorusPart::Torsion) t = TorusPart::Trivial;
    if (t == TorusPart::Full && !connected_full_torus_) t = TorusPart::Positive;
    return TbuSubgroup{t, s.u};
  }

  long component_index(const SubgroupHandle& h) const override {
    const TbuSubgroup& s = as_tbu_sub(h);
    if (s.torus == TorusPart::Torsion) return 2;
    if (s.torus == TorusPart::Full && !connected_full_torus_) return 2;
    return 1;
  }

  SubgroupHandle centralizer_of(const SubgroupHandle& h) const override {
    const TbuSubgroup& s = as_tbu_sub(h);
    Subspace c = fixed_points(s.torus);
    if (s.u.dim() > 0) {
      Matrix stacked = l_.ad(s.u.basis_vector(0));
      for (int i = 1; i < s.u.dim(); ++i) stacked = Matrix::stack(stacked, l_.ad(s.u.basis_vector(i)));
      c = intersect(c, Subspace::from_rows(stacked.kernel()));
    }
    std::set<int> support = weight_support(s.u);
    TorusPart t = TorusPart::Full;
    for (int w : support) {
      if (w == 0) continue;
      t = (w % 2 == 0) ? flag_meet(t, TorusPart::Torsion) : TorusPart::Trivial;
    }
    return TbuSubgroup{t, c};
  }

  SubgroupHandle normal_closure(const SubgroupHandle& h) const override {
    const TbuSubgroup& s = as_tbu_sub(h);
    Subspace u = s.u;
    for (const Vec& img : twist_images(s.torus, Subspace::full(l_.dim()))) {
      u = sum(u, Subspace::span(l_.dim(), {img}));
    }
    u = saturate_normal(u);
    return TbuSubgroup{s.torus, u};
  }

  SubgroupHandle hull_of(const std::vector<Element>& xs) const override {
    TorusPart t = TorusPart::Trivial;
    std::vector<Vec> gens;
    for (const Element& x : xs) {
      const TbuElement& e = as_tbu(x);
      TorusPart part = e.t == Rational(1)    ? TorusPart::Trivial
                       : e.t == Rational(-1) ? TorusPart::Torsion
                       : e.t.sign() > 0      ? TorusPart::Positive
                                             : TorusPart::Full;
      t = flag_join(t, part);
      gens.push_back(e.u);
    }
    Subspace u = l_.subalgebra_closure(gens);
    while (true) {
      Subspace next = u;
      if (flag_infinite(t)) {
        for (int i = 0; i < u.dim(); ++i) {
          next = sum(next, Subspace::span(l_.dim(), {scale(2, u.basis_vector(i))}));
        }
      }
      if (t == TorusPart::Torsion) {
        for (int i = 0; i < u.dim(); ++i) {
          next = sum(next, Subspace::span(l_.dim(), {scale(-1, u.basis_vector(i))}));
        }
      }
      next = l_.subalgebra_closure(basis_list(next));
      if (next == u) break;
      u = next;
    }
    return TbuSubgroup{t, u};
  }

  SubgroupHandle fitting_subgroup() const override {
    bool all_zero = true;
    bool all_even = true;
    for (int w : weights_) {
      all_zero = all_zero && w == 0;
      all_even = all_even && w % 2 == 0;
    }
    TorusPart t = TorusPart::Trivial;
    if (all_zero) {
      t = TorusPart::Full;
    } else if (all_even) {
      t = TorusPart::Torsion;
    }
    return TbuSubgroup{t, Subspace::full(l_.dim())};
  }

  SubgroupHandle solvable_radical() const override { return full_subgroup(); }

  Element random_member(const SubgroupHandle& h, std::mt19937_64& rng) const override {
    const TbuSubgroup& s = as_tbu_sub(h);
    return TbuElement{random_torus(s.torus, rng), detail::random_vector_in(s.u, rng)};
  }

  SubgroupHandle random_subgroup(std::mt19937_64& rng) const override {
    TorusPart flags[4] = {TorusPart::Trivial, TorusPart::Torsion, TorusPart::Positive,
                          TorusPart::Full};
    TorusPart t = flags[rng() % 4];
    int picks = static_cast<int>(rng() % 3);
    std::vector<Vec> gens;
    for (int i = 0; i < picks; ++i) {
      gens.push_back(detail::random_vector_in(Subspace::full(l_.dim()), rng));
    }
    Subspace u = l_.subalgebra_closure(gens);
    while (true) {
      Subspace next = u;
      if (flag_infinite(t)) {
        for (int i = 0; i < u.dim(); ++i) {
          next = sum(next, Subspace::span(l_.dim(), {scale(2, u.basis_vector(i))}));
        }
      }
      if (t == TorusPart::Torsion) {
        for (int i = 0; i < u.dim(); ++i) {
          next = sum(next, Subspace::span(l_.dim(), {scale(-1, u.basis_vector(i))}));
        }
      }
      next = l_.subalgebra_closure(basis_list(next));
      if (next == u) break;
      u = next;
    }
    return TbuSubgroup{t, u};
  }

  std::string subgroup_str(const SubgroupHandle& h) const override {
    const TbuSubgroup& s = as_tbu_sub(h);
    return "torus " + torus_part_str(s.torus) + ", unipotent dimension " +
           std::to_string(s.u.dim());
  }

  // the torus coordinate of every commutator is 1, so [A,B] is the stable
  // span of the twist images and brackets, saturated inside <A,B>
  Closure commutator_closure(const SubgroupHandle& ah, const SubgroupHandle& bh) const override {
    if (!normalizes_subgroup(ah, bh) || !normalizes_subgroup(bh, ah)) {
      throw std::domain_error("commutator_closure: the subgroups must normalize each other");
    }
    const TbuSubgroup& a = as_tbu_sub(ah);
    const TbuSubgroup& b = as_tbu_sub(bh);
    Subspace c = l_.bracket_subspace(a.u, b.u);
    for (const Vec& img : twist_images(b.torus, a.u)) {
      c = sum(c, Subspace::span(l_.dim(), {img}));
    }
    for (const Vec& img : twist_images(a.torus, b.u)) {
      c = sum(c, Subspace::span(l_.dim(), {img}));
    }
    TorusPart joined = flag_join(a.torus, b.torus);
    while (true) {
      Subspace next = sum(c, sum(l_.bracket_subspace(a.u, c), l_.bracket_subspace(b.u, c)));
      if (flag_infinite(joined)) {
        for (int i = 0; i < c.dim(); ++i) {
          next = sum(next, Subspace::span(l_.dim(), {scale(2, c.basis_vector(i))}));
        }
      }
      if (joined == TorusPart::Torsion || joined == TorusPart::Full) {
        for (int i = 0; i < c.dim(); ++i) {
          next = sum(next, Subspace::span(l_.dim(), {scale(-1, c.basis_vector(i))}));
        }
      }
      next = l_.subalgebra_closure(basis_list(next));
      if (next == c) break;
      c = next;
    }
    return Closure{TbuSubgroup{TorusPart::Trivial, c}, c.dim()};
  }

  SubgroupHandle ad_image(const SubgroupHandle& h_connected, const Element& x) const override {
    const TbuSubgroup& h = as_tbu_sub(h_connected);
    require_connected(h);
    check_torus_direction(h, x);
    std::vector<Vec> images;
    for (int i = 0; i < h.u.dim(); ++i) {
      images.push_back(as_tbu(comm(TbuElement{1, h.u.basis_vector(i)}, x)).u);
    }
    return TbuSubgroup{TorusPart::Trivial, l_.subalgebra_closure(images)};
  }

  std::optional<Element> solve_commutator(const SubgroupHandle& h_connected, const Element& x,
                                          const Element& target) const override {
    const TbuSubgroup& h = as_tbu_sub(h_connected);
    require_connected(h);
    check_torus_direction(h, x);
    const TbuElement& te = as_tbu(target);
    if (te.t != Rational(1)) return std::nullopt;
    if (h.u.dim() == 0) {
      return is_identity(target) ? std::optional<Element>(identity()) : std::nullopt;
    }
    Matrix columns(l_.dim(), h.u.dim());
    for (int j = 0; j < h.u.dim(); ++j) {
      Vec img = as_tbu(comm(TbuElement{1, h.u.basis_vector(j)}, x)).u;
      for (int i = 0; i < l_.dim(); ++i) columns.at(i, j) = img[static_cast<size_t>(i)];
    }
    std::optional<Vec> coeff = solve_linear(columns, te.u);
    if (!coeff) return std::nullopt;
    Vec u = vec_zero(l_.dim());
    for (int j = 0; j < h.u.dim(); ++j) {
      u = vec_add(u, vec_scale((*coeff)[static_cast<size_t>(j)], h.u.basis_vector(j)));
    }
    Element candidate = TbuElement{1, u};
    if (!eq(comm(candidate, x), target)) return std::nullopt;
    return candidate;
  }

  QuotientResult quotient(const SubgroupHandle& gh, const SubgroupHandle& nh) const override;

 private:
  bool stable_under_scale(const Subspace& s, const Rational& t) const {
    for (int i = 0; i < s.dim(); ++i) {
      if (!s.contains(scale(t, s.basis_vector(i)))) return false;
    }
    return true;
  }

  bool torus_has(TorusPart flag, const Rational& t) const {
    switch (flag) {
      case TorusPart::Trivial: return t == Rational(1);
      case TorusPart::Torsion: return t == Rational(1) || t == Rational(-1);
      case TorusPart::Positive: return t.sign() > 0;
      case TorusPart::Full: return !t.is_zero();
    }
    return false;
  }

  Rational random_torus(TorusPart flag, std::mt19937_64& rng) const {
    static const Rational pool[6] = {Rational(1), Rational(2), Rational(1, 2), Rational(3),
                                     Rational(2, 3), Rational(5)};
    switch (flag) {
      case TorusPart::Trivial: return 1;
      case TorusPart::Torsion: return (rng() % 2 == 0) ? Rational(1) : Rational(-1);
      case TorusPart::Positive: return pool[rng() % 6];
      case TorusPart::Full: {
        Rational t = pool[rng() % 6];
        return (rng() % 2 == 0) ? t : -t;
      }
    }
    return 1;
  }

  // coordinates carrying the given weight
  Vec weight_component(const Vec& v, int w) const {
    Vec out = vec_zero(l_.dim());
    for (int i = 0; i < l_.dim(); ++i) {
      if (weights_[static_cast<size_t>(i)] == w) out[static_cast<size_t>(i)] = v[static_cast<size_t>(i)];
    }
    return out;
  }

  std::set<int> weight_support(const Subspace& s) const {
    std::set<int> out;
    for (int i = 0; i < s.dim(); ++i) {
      Vec b = s.basis_vector(i);
      for (int k = 0; k < l_.dim(); ++k) {
        if (!b[static_cast<size_t>(k)].is_zero()) out.insert(weights_[static_cast<size_t>(k)]);
      }
    }
    return out;
  }

  std::set<int> distinct_weights() const { return {weights_.begin(), weights_.end()}; }

  // span of the (alpha_s - 1)-images of s over the whole flag: the nonzero
  // weight components for an infinite torus, the odd parts for torsion
  std::vector<Vec> twist_images(TorusPart flag, const Subspace& s) const {
    std::vector<Vec> out;
    if (flag == TorusPart::Trivial) return out;
    for (int i = 0; i < s.dim(); ++i) {
      Vec b = s.basis_vector(i);
      if (flag_infinite(flag)) {
        for (int w : distinct_weights()) {
          if (w == 0) continue;
          Vec c = weight_component(b, w);
          if (!vec_is_zero(c)) out.push_back(c);
        }
      } else {  // torsion: a single involution is available
        Vec odd = vec_zero(l_.dim());
        for (int w : distinct_weights()) {
          if (w % 2 != 0) odd = vec_add(odd, weight_component(b, w));
        }
        if (!vec_is_zero(odd)) out.push_back(odd);
      }
    }
    return out;
  }

  Subspace fixed_points(TorusPart flag) const {
    if (flag == TorusPart::Trivial) return Subspace::full(l_.dim());
    std::vector<Vec> gens;
    for (int i = 0; i < l_.dim(); ++i) {
      int w = weights_[static_cast<size_t>(i)];
      bool fixed = flag == TorusPart::Torsion ? (w % 2 == 0) : (w == 0);
      if (fixed) gens.push_back(vec_unit(i, l_.dim()));
    }
    return Subspace::span(l_.dim(), gens);
  }

  std::vector<Vec> basis_list(const Subspace& s) const {
    std::vector<Vec> out;
    for (int i = 0; i < s.dim(); ++i) out.push_back(s.basis_vector(i));
    return out;
  }

  // smallest fully stable ideal-like subspace: graded, bracket-stable
  Subspace saturate_normal(Subspace u) const {
    while (true) {
      Subspace next = sum(u, l_.bracket_subspace(Subspace::full(l_.dim()), u));
      for (int i = 0; i < u.dim(); ++i) {
        for (int w : distinct_weights()) {
          Vec c = weight_component(u.basis_vector(i), w);
          if (!vec_is_zero(c)) next = sum(next, Subspace::span(l_.dim(), {c}));
        }
      }
      if (next == u) return u;
      u = next;
    }
  }

  void require_connected(const TbuSubgroup& h) const {
    SubgroupHandle hh = h;
    if (!(connected_component(hh) == hh)) {
      throw std::domain_error("a connected subgroup is required");
    }
  }

  // inside the centralize-the-image premise, the torus direction of H
  // contributes no commutators; insist on that so the linear parametrization
  // by the unipotent coordinates is complete
  void check_torus_direction(const TbuSubgroup& h, const Element& x) const {
    if (!flag_infinite(h.torus)) return;
    Element probe = comm(TbuElement{2, vec_zero(l_.dim())}, x);
    if (!is_identity(probe)) {
      throw std::domain_error("commutator parametrization: the torus direction acts nontrivially");
    }
  }

  NilpotentLieAlgebra l_;
  std::vector<int> weights_;
  std::string name_;
  bool connected_full_torus_;
};

QuotientResult TbuModel::quotient(const SubgroupHandle& gh, const SubgroupHandle& nh) const {
  if (!contains_subgroup(gh, nh)) {
    throw std::domain_error("quotient: the denominator is not contained");
  }
  if (!normalizes_subgroup(gh, nh)) {
    throw std::domain_error("quotient: the denominator is not normal");
  }
  const TbuSubgroup& g = as_tbu_sub(gh);
  const TbuSubgroup& n = as_tbu_sub(nh);

  if (n.torus == TorusPart::Torsion || n.torus == TorusPart::Positive) {
    throw std::domain_error(
        "quotient: torsion or positive torus denominators are not representable in the model "
        "family");
  }

  bool torus_dies = n.torus == TorusPart::Full || g.torus == TorusPart::Trivial;
  bool need_grading = !torus_dies && g.torus != TorusPart::Trivial;
  if (need_grading && (!stable_under_scale(g.u, 2) || !stable_under_scale(n.u, 2))) {
    throw std::domain_error("quotient: the torus action does not descend, subspaces not graded");
  }

  // weight-homogeneous basis of U_g with U_n sitting inside block by block;
  // without a surviving torus a plain basis does the same job
  std::vector<Vec> g_basis;
  std::vector<int> g_weights;
  if (need_grading) {
    for (int w : distinct_weights()) {
      std::vector<Vec> coord_gens;
      for (int i = 0; i < l_.dim(); ++i) {
        if (weights_[static_cast<size_t>(i)] == w) coord_gens.push_back(vec_unit(i, l_.dim()));
      }
      Subspace block = intersect(g.u, Subspace::span(l_.dim(), coord_gens));
      for (int i = 0; i < block.dim(); ++i) {
        g_basis.push_back(block.basis_vector(i));
        g_weights.push_back(w);
      }
    }
    if (static_cast<int>(g_basis.size()) != g.u.dim()) {
      throw std::logic_error("quotient: graded basis assembly failed");
    }
  } else {
    for (int i = 0; i < g.u.dim(); ++i) {
      g_basis.push_back(g.u.basis_vector(i));
      g_weights.push_back(0);
    }
  }
  int k = static_cast<int>(g_basis.size());

  // coordinates with respect to g_basis via one linear solve per vector
  Matrix basis_cols(l_.dim(), k);
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i < l_.dim(); ++i) {
      basis_cols.at(i, j) = g_basis[static_cast<size_t>(j)][static_cast<size_t>(i)];
    }
  }
  auto g_coords = [basis_cols](const Vec& v) {
    std::optional<Vec> c = solve_linear(basis_cols, v);
    if (!c) throw std::domain_error("quotient projection: element outside the numerator");
    return *c;
  };
  auto from_g_coords = [g_basis, this](const Vec& c) {
    Vec v = vec_zero(l_.dim());
    for (size_t j = 0; j < g_basis.size(); ++j) {
      v = vec_add(v, vec_scale(c[j], g_basis[j]));
    }
    return v;
  };

  std::vector<Vec> n_coords;
  for (int i = 0; i < n.u.dim(); ++i) n_coords.push_back(g_coords(n.u.basis_vector(i)));
  Subspace n_in_g = Subspace::span(k, n_coords);
  detail::CoordinateSplit cs = detail::split_off(n_in_g, k);
  int qd = cs.project.rows();

  std::vector<int> q_weights;
  {
    // quotient coordinate i corresponds to the complement column with weight
    // g_weights[col]; recover the columns from the section matrix
    for (int i = 0; i < qd; ++i) {
      int col = -1;
      for (int r = 0; r < k; ++r) {
        if (!cs.section.at(r, i).is_zero()) {
          col = r;
          break;
        }
      }
      q_weights.push_back(g_weights[static_cast<size_t>(col)]);
    }
  }

  // structure constants of U_g in g_basis coordinates, then pushed down
  std::map<std::pair<int, int>, Vec> q_brackets;
  for (int i = 0; i < qd; ++i) {
    for (int j = i + 1; j < qd; ++j) {
      Vec bi = from_g_coords(cs.section.apply(vec_unit(i, qd)));
      Vec bj = from_g_coords(cs.section.apply(vec_unit(j, qd)));
      Vec br = cs.project.apply(g_coords(l_.bracket(bi, bj)));
      if (!vec_is_zero(br)) q_brackets[{i, j}] = br;
    }
  }

  struct Maps {
    Subspace gu;
    TorusPart gt;
    Matrix project;
    Matrix section;
    std::function<Vec(const Vec&)> coords;
    std::function<Vec(const Vec&)> uncoords;
  };
  auto maps = std::make_shared<Maps>(Maps{g.u, g.torus, cs.project, cs.section, g_coords,
                                          from_g_coords});
  auto check_member = [maps, this](const TbuElement& x) {
    if (!torus_has(maps->gt, x.t) || !maps->gu.contains(x.u)) {
      throw std::domain_error("quotient projection: element outside the numerator");
    }
  };
  auto project_vec = [maps](const Vec& u) { return maps->project.apply(maps->coords(u)); };
  auto lift_vec = [maps](const Vec& q) { return maps->uncoords(maps->section.apply(q)); };

  QuotientResult qr;
  if (torus_dies) {
    if (qd == 0) {
      qr.model = make_finite_model(FiniteGroup::from_table({{0}}, name_ + " quotient"));
      qr.image = std::get<FiniteSubgroup>(qr.model->full_subgroup());
      qr.project = [check_member](const Element& a) -> Element {
        check_member(as_tbu(a));
        return 0;
      };
      qr.lift = [this](const Element&) -> Element { return identity(); };
      qr.push_subgroup = [qr_model = qr.model](const SubgroupHandle&) -> SubgroupHandle {
        return qr_model->full_subgroup();
      };
      qr.lift_subgroup = [g](const SubgroupHandle&) -> SubgroupHandle { return g; };
      return qr;
    }
    qr.model = make_malcev_model(NilpotentLieAlgebra(qd, q_brackets, name_ + " quotient"));
    qr.image = std::get<Subspace>(qr.model->full_subgroup());
    qr.project = [check_member, project_vec](const Element& a) -> Element {
      const TbuElement& x = as_tbu(a);
      check_member(x);
      return project_vec(x.u);
    };
    qr.lift = [lift_vec](const Element& a) -> Element {
      return TbuElement{1, lift_vec(std::get<Vec>(a))};
    };
    qr.push_subgroup = [project_vec, qd](const SubgroupHandle& h) -> SubgroupHandle {
      const TbuSubgroup& s = std::get<TbuSubgroup>(h);
      std::vector<Vec> rows;
      for (int i = 0; i < s.u.dim(); ++i) rows.push_back(project_vec(s.u.basis_vector(i)));
      return Subspace::span(qd, rows);
    };
    qr.lift_subgroup = [lift_vec, n, g, this](const SubgroupHandle& h) -> SubgroupHandle {
      const Subspace& s = std::get<Subspace>(h);
      std::vector<Vec> gens;
      for (int i = 0; i < s.dim(); ++i) gens.push_back(lift_vec(s.basis_vector(i)));
      for (int i = 0; i < n.u.dim(); ++i) gens.push_back(n.u.basis_vector(i));
      return TbuSubgroup{g.torus, Subspace::span(l_.dim(), gens)};
    };
    return qr;
  }

  // the torus survives: a new group of the same kind, or the bare torus
  if (g.torus == TorusPart::Torsion && qd == 0) {
    qr.model = make_finite_model(FiniteGroup::from_table({{0, 1}, {1, 0}}, name_ + " quotient"));
    qr.image = std::get<FiniteSubgroup>(qr.model->full_subgroup());
    qr.project = [check_member](const Element& a) -> Element {
      const TbuElement& x = as_tbu(a);
      check_member(x);
      return x.t == Rational(1) ? 0 : 1;
    };
    qr.lift = [this](const Element& a) -> Element {
      return TbuElement{std::get<int>(a) == 0 ? 1 : -1, vec_zero(l_.dim())};
    };
    qr.push_subgroup = [qr_model = qr.model](const SubgroupHandle& h) -> SubgroupHandle {
      const TbuSubgroup& s = std::get<TbuSubgroup>(h);
      if (s.torus == TorusPart::Trivial) {
        return FiniteSubgroup{{0}};
      }
      return qr_model->full_subgroup();
    };
    qr.lift_subgroup = [g, n](const SubgroupHandle& h) -> SubgroupHandle {
      const FiniteSubgroup& s = std::get<FiniteSubgroup>(h);
      return TbuSubgroup{s.order() == 2 ? g.torus : TorusPart::Trivial, n.u};
    };
    return qr;
  }

  // keep a TBU shell even when no unipotent part survives
  NilpotentLieAlgebra qalg = qd == 0
                                 ? NilpotentLieAlgebra(1, {}, name_ + " quotient shell")
                                 : NilpotentLieAlgebra(qd, q_brackets, name_ + " quotient");
  std::vector<int> shell_weights = qd == 0 ? std::vector<int>{0} : q_weights;
  int image_dim = qd;
  qr.model = std::make_shared<TbuModel>(std::move(qalg), shell_weights, name_ + " quotient",
                                        connected_full_torus_);
  const auto* qmodel = static_cast<const TbuModel*>(qr.model.get());
  qr.image = TbuSubgroup{g.torus, qd == 0 ? Subspace(1) : Subspace::full(qd)};
  int qdim_model = qmodel->base().dim();
  qr.project = [check_member, project_vec, qd, qdim_model](const Element& a) -> Element {
    const TbuElement& x = as_tbu(a);
    check_member(x);
    return TbuElement{x.t, qd == 0 ? vec_zero(qdim_model) : project_vec(x.u)};
  };
  qr.lift = [lift_vec, qd, this](const Element& a) -> Element {
    const TbuElement& x = std::get<TbuElement>(a);
    return TbuElement{x.t, qd == 0 ? vec_zero(l_.dim()) : lift_vec(x.u)};
  };
  qr.push_subgroup = [project_vec, qd, qdim_model](const SubgroupHandle& h) -> SubgroupHandle {
    const TbuSubgroup& s = std::get<TbuSubgroup>(h);
    if (qd == 0) return TbuSubgroup{s.torus, Subspace(qdim_model)};
    std::vector<Vec> rows;
    for (int i = 0; i < s.u.dim(); ++i) rows.push_back(project_vec(s.u.basis_vector(i)));
    return TbuSubgroup{s.torus, Subspace::span(qd, rows)};
  };
  qr.lift_subgroup = [lift_vec, qd, n, this](const SubgroupHandle& h) -> SubgroupHandle {
    const TbuSubgroup& s = std::get<TbuSubgroup>(h);
    std::vector<Vec> gens;
    if (qd > 0) {
      for (int i = 0; i < s.u.dim(); ++i) gens.push_back(lift_vec(s.u.basis_vector(i)));
    }
    for (int i = 0; i < n.u.dim(); ++i) gens.push_back(n.u.basis_vector(i));
    return TbuSubgroup{s.torus, Subspace::span(l_.dim(), gens)};
  };
  return qr;
}

}  // namespace

std::shared_ptr<const GroupModel> make_tbu_model(NilpotentLieAlgebra base, std::vector<int> weights,
                                                 std::string name, bool connected_full_torus) {
  return std::make_shared<TbuModel>(std::move(base), std::move(weights), std::move(name),
                                    connected_full_torus);
}

}  // namespace grouplab
