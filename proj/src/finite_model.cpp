#include <algorithm>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>

#include "grouplab/model.hpp"
#include "model_detail.hpp"

namespace grouplab {
namespace {

int as_index(const Element& a) {
  const int* p = std::get_if<int>(&a);
  if (p == nullptr) throw std::domain_error("finite model: element of a different kind");
  return *p;
}

const FiniteSubgroup& as_finite(const SubgroupHandle& h) {
  const FiniteSubgroup* p = std::get_if<FiniteSubgroup>(&h);
  if (p == nullptr) throw std::domain_error("finite model: subgroup handle of a different kind");
  return *p;
}

class FiniteModel final : public GroupModel, public std::enable_shared_from_this<FiniteModel> {
 public:
  explicit FiniteModel(FiniteGroup group) : g_(std::move(group)) {}

  std::string kind() const override { return "finite"; }
  const std::string& name() const override { return g_.name(); }
  const FiniteGroup& group() const { return g_; }

  Element identity() const override { return g_.identity(); }
  Element mul(const Element& a, const Element& b) const override {
    return g_.mul(as_index(a), as_index(b));
  }
  Element inv(const Element& a) const override { return g_.inv(as_index(a)); }
  bool eq(const Element& a, const Element& b) const override { return as_index(a) == as_index(b); }
  std::string element_str(const Element& a) const override {
    return g_.element_name(as_index(a));
  }

  SubgroupHandle trivial_subgroup() const override { return g_.trivial_subgroup(); }
  SubgroupHandle full_subgroup() const override { return g_.full_subgroup(); }

  bool valid_handle(const SubgroupHandle& h) const override {
    const FiniteSubgroup* p = std::get_if<FiniteSubgroup>(&h);
    if (p == nullptr) return false;
    try {
      g_.subgroup(p->members);
      return true;
    } catch (const std::exception&) {
      return false;
    }
  }

  bool contains(const SubgroupHandle& h, const Element& a) const override {
    return as_finite(h).contains(as_index(a));
  }
  bool contains_subgroup(const SubgroupHandle& h, const SubgroupHandle& k) const override {
    return as_finite(h).contains(as_finite(k));
  }
  int dim(const SubgroupHandle&) const override { return 0; }
  bool is_finite_subgroup(const SubgroupHandle&) const override { return true; }

  std::vector<Element> enumerate(const SubgroupHandle& h) const override {
    std::vector<Element> out;
    for (int m : as_finite(h).members) out.emplace_back(m);
    return out;
  }

  SubgroupHandle intersect_subgroups(const SubgroupHandle& a,
                                     const SubgroupHandle& b) const override {
    return g_.intersect(as_finite(a), as_finite(b));
  }

  bool normalizes_subgroup(const SubgroupHandle& a, const SubgroupHandle& b) const override {
    return g_.normalizes(as_finite(a), as_finite(b));
  }

  SubgroupHandle product_subgroup(const SubgroupHandle& a, const SubgroupHandle& b) const override {
    const FiniteSubgroup& sa = as_finite(a);
    const FiniteSubgroup& sb = as_finite(b);
    if (!g_.normalizes(sa, sb) && !g_.normalizes(sb, sa)) {
      throw std::domain_error("product_subgroup: neither factor normalizes the other");
    }
    std::vector<int> prod;
    for (int x : sa.members) {
      for (int y : sb.members) prod.push_back(g_.mul(x, y));
    }
    std::sort(prod.begin(), prod.end());
    prod.erase(std::unique(prod.begin(), prod.end()), prod.end());
    return g_.subgroup(std::move(prod));
  }

  SubgroupHandle connected_component(const SubgroupHandle&) const override {
    return g_.trivial_subgroup();
  }
  long component_index(const SubgroupHandle& h) const override { return as_finite(h).order(); }

  SubgroupHandle centralizer_of(const SubgroupHandle& h) const override {
    return g_.centralizer(g_.full_subgroup(), as_finite(h));
  }

  SubgroupHandle normal_closure(const SubgroupHandle& h) const override {
    return g_.normal_closure(as_finite(h).members);
  }

  SubgroupHandle hull_of(const std::vector<Element>& xs) const override {
    std::vector<int> seed;
    for (const Element& x : xs) seed.push_back(std::get<int>(x));
    return g_.closure(std::move(seed));
  }

  SubgroupHandle fitting_subgroup() const override { return fitting_report().fitting; }
  SubgroupHandle solvable_radical() const override { return fitting_report().radical; }

  Element random_member(const SubgroupHandle& h, std::mt19937_64& rng) const override {
    const FiniteSubgroup& s = as_finite(h);
    return s.members[rng() % s.members.size()];
  }

  SubgroupHandle random_subgroup(std::mt19937_64& rng) const override {
    int picks = static_cast<int>(rng() % 3);  // 0, 1 or 2 generators
    std::vector<int> seed;
    for (int i = 0; i < picks; ++i) seed.push_back(static_cast<int>(rng() % g_.order()));
    return g_.closure(std::move(seed));
  }

  std::string subgroup_str(const SubgroupHandle& h) const override {
    const FiniteSubgroup& s = as_finite(h);
    std::string out = "subgroup of order " + std::to_string(s.order());
    if (s.order() <= 8) {
      out += " {";
      for (size_t i = 0; i < s.members.size(); ++i) {
        if (i > 0) out += ", ";
        out += g_.element_name(s.members[i]);
      }
      out += "}";
    }
    return out;
  }

  Closure commutator_closure(const SubgroupHandle& a, const SubgroupHandle& b) const override {
    const FiniteSubgroup& sa = as_finite(a);
    const FiniteSubgroup& sb = as_finite(b);
    if (!g_.normalizes(sa, sb) || !g_.normalizes(sb, sa)) {
      throw std::domain_error("commutator_closure: the subgroups must normalize each other");
    }
    WidthProfile p = commutator_profile(g_, sa, sb);
    return Closure{p.subgroup, p.width};
  }

  SubgroupHandle ad_image(const SubgroupHandle& h_connected, const Element& x) const override {
    const FiniteSubgroup& s = as_finite(h_connected);
    std::vector<int> seed;
    for (int m : s.members) seed.push_back(g_.comm(m, as_index(x)));
    return g_.closure(std::move(seed));
  }

  std::optional<Element> solve_commutator(const SubgroupHandle& h_connected, const Element& x,
                                          const Element& target) const override {
    const FiniteSubgroup& s = as_finite(h_connected);
    int xi = as_index(x);
    int ti = as_index(target);
    for (int m : s.members) {
      if (g_.comm(m, xi) == ti) return Element(m);
    }
    return std::nullopt;
  }

  QuotientResult quotient(const SubgroupHandle& gh, const SubgroupHandle& nh) const override;

 private:
  const FittingReport& fitting_report() const {
    std::call_once(fitting_once_, [this] { fitting_ = fitting_and_radical(g_); });
    return fitting_;
  }

  FiniteGroup g_;
  mutable std::once_flag fitting_once_;
  mutable FittingReport fitting_;
};

QuotientResult FiniteModel::quotient(const SubgroupHandle& gh, const SubgroupHandle& nh) const {
  const FiniteSubgroup& num = as_finite(gh);
  const FiniteSubgroup& den = as_finite(nh);
  if (!num.contains(den)) throw std::domain_error("quotient: the denominator is not contained");
  if (!g_.normalizes(num, den)) throw std::domain_error("quotient: the denominator is not normal");

  auto view = std::make_shared<detail::FiniteRestriction>(
      detail::restrict_finite(g_, num, g_.name() + " section"));
  std::vector<int> den_in_view;
  for (int m : den.members) den_in_view.push_back(view->from_parent[static_cast<size_t>(m)]);
  std::sort(den_in_view.begin(), den_in_view.end());
  auto fq = std::make_shared<FiniteQuotient>(view->group.quotient(
      view->group.subgroup(std::move(den_in_view))));

  QuotientResult qr;
  qr.model = std::make_shared<FiniteModel>(fq->group);
  qr.image = fq->group.full_subgroup();
  qr.project = [view, fq](const Element& a) -> Element {
    int sub = view->from_parent[static_cast<size_t>(as_index(a))];
    if (sub < 0) throw std::domain_error("quotient projection: element outside the numerator");
    return fq->proj[static_cast<size_t>(sub)];
  };
  qr.lift = [view, fq](const Element& a) -> Element {
    return view->to_parent[static_cast<size_t>(fq->reps[static_cast<size_t>(as_index(a))])];
  };
  qr.push_subgroup = [view, fq](const SubgroupHandle& h) -> SubgroupHandle {
    std::vector<int> members;
    for (int m : as_finite(h).members) {
      int sub = view->from_parent[static_cast<size_t>(m)];
      if (sub < 0) throw std::domain_error("quotient projection: subgroup outside the numerator");
      members.push_back(fq->proj[static_cast<size_t>(sub)]);
    }
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    return fq->group.subgroup(std::move(members));
  };
  qr.lift_subgroup = [view, fq](const SubgroupHandle& h) -> SubgroupHandle {
    const FiniteSubgroup& s = std::get<FiniteSubgroup>(h);
    std::vector<int> members;
    for (size_t sub = 0; sub < fq->proj.size(); ++sub) {
      if (s.contains(fq->proj[sub])) members.push_back(view->to_parent[sub]);
    }
    std::sort(members.begin(), members.end());
    return FiniteSubgroup{std::move(members)};
  };
  return qr;
}

}  // namespace

std::shared_ptr<const GroupModel> make_finite_model(FiniteGroup group) {
  return std::make_shared<FiniteModel>(std::move(group));
}

}  // namespace grouplab
