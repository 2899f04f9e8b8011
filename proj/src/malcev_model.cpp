#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <utility>

#include "grouplab/model.hpp"
#include "model_detail.hpp"

namespace grouplab {
namespace {

const Vec& as_vec(const Element& a) {
  const Vec* p = std::get_if<Vec>(&a);
  if (p == nullptr) throw std::domain_error("malcev model: element of a different kind");
  return *p;
}

const Subspace& as_space(const SubgroupHandle& h) {
  const Subspace* p = std::get_if<Subspace>(&h);
  if (p == nullptr) throw std::domain_error("malcev model: subgroup handle of a different kind");
  return *p;
}

// Structure constants of a bracket-closed subspace in its canonical basis.
NilpotentLieAlgebra restricted_algebra(const NilpotentLieAlgebra& l, const Subspace& h,
                                       const std::string& name) {
  std::map<std::pair<int, int>, Vec> brackets;
  for (int i = 0; i < h.dim(); ++i) {
    for (int j = i + 1; j < h.dim(); ++j) {
      Vec b = l.bracket(h.basis_vector(i), h.basis_vector(j));
      std::optional<Vec> coords = h.coordinates(b);
      if (!coords) throw std::domain_error("restricted_algebra: subspace not bracket-closed");
      if (!vec_is_zero(*coords)) brackets[{i, j}] = *coords;
    }
  }
  return NilpotentLieAlgebra(h.dim(), brackets, name);
}

class MalcevModel final : public GroupModel {
 public:
  explicit MalcevModel(NilpotentLieAlgebra algebra) : l_(std::move(algebra)) {}

  std::string kind() const override { return "malcev"; }
  const std::string& name() const override { return l_.name(); }
  const NilpotentLieAlgebra& algebra() const { return l_; }

  Element identity() const override { return vec_zero(l_.dim()); }
  Element mul(const Element& a, const Element& b) const override {
    return l_.bch(as_vec(a), as_vec(b));
  }
  Element inv(const Element& a) const override { return l_.inverse(as_vec(a)); }
  bool eq(const Element& a, const Element& b) const override { return as_vec(a) == as_vec(b); }
  std::string element_str(const Element& a) const override { return "exp" + vec_str(as_vec(a)); }

  SubgroupHandle trivial_subgroup() const override { return Subspace(l_.dim()); }
  SubgroupHandle full_subgroup() const override { return Subspace::full(l_.dim()); }

  bool valid_handle(const SubgroupHandle& h) const override {
    const Subspace* p = std::get_if<Subspace>(&h);
    return p != nullptr && p->ambient() == l_.dim() && l_.is_subalgebra(*p);
  }

  bool contains(const SubgroupHandle& h, const Element& a) const override {
    return as_space(h).contains(as_vec(a));
  }
  bool contains_subgroup(const SubgroupHandle& h, const SubgroupHandle& k) const override {
    return as_space(h).contains(as_space(k));
  }
  int dim(const SubgroupHandle& h) const override { return as_space(h).dim(); }
  bool is_finite_subgroup(const SubgroupHandle& h) const override {
    return as_space(h).dim() == 0;
  }

  std::vector<Element> enumerate(const SubgroupHandle& h) const override {
    if (as_space(h).dim() != 0) {
      throw std::domain_error("enumerate: the subgroup is infinite");
    }
    return {identity()};
  }

  SubgroupHandle intersect_subgroups(const SubgroupHandle& a,
                                     const SubgroupHandle& b) const override {
    return intersect(as_space(a), as_space(b));
  }

  bool normalizes_subgroup(const SubgroupHandle& a, const SubgroupHandle& b) const override {
    return l_.normalizes(as_space(a), as_space(b));
  }

  SubgroupHandle product_subgroup(const SubgroupHandle& a, const SubgroupHandle& b) const override {
    return l_.subgroup_product(as_space(a), as_space(b));
  }

  SubgroupHandle connected_component(const SubgroupHandle& h) const override {
    return as_space(h);
  }
  long component_index(const SubgroupHandle&) const override { return 1; }

  SubgroupHandle centralizer_of(const SubgroupHandle& h) const override {
    const Subspace& s = as_space(h);
    if (s.dim() == 0) return Subspace::full(l_.dim());
    Matrix stacked = l_.ad(s.basis_vector(0));
    for (int i = 1; i < s.dim(); ++i) stacked = Matrix::stack(stacked, l_.ad(s.basis_vector(i)));
    return Subspace::from_rows(stacked.kernel());
  }

  SubgroupHandle normal_closure(const SubgroupHandle& h) const override {
    Subspace n = as_space(h);
    Subspace g = Subspace::full(l_.dim());
    while (true) {
      Subspace next = sum(n, l_.bracket_subspace(g, n));
      if (next == n) return n;
      n = next;
    }
  }

  SubgroupHandle hull_of(const std::vector<Element>& xs) const override {
    std::vector<Vec> gens;
    for (const Element& x : xs) gens.push_back(std::get<Vec>(x));
    return l_.subalgebra_closure(gens);
  }

  SubgroupHandle fitting_subgroup() const override { return Subspace::full(l_.dim()); }
  SubgroupHandle solvable_radical() const override { return Subspace::full(l_.dim()); }

  Element random_member(const SubgroupHandle& h, std::mt19937_64& rng) const override {
    return detail::random_vector_in(as_space(h), rng);
  }

  SubgroupHandle random_subgroup(std::mt19937_64& rng) const override {
    int picks = static_cast<int>(rng() % 3);
    std::vector<Vec> gens;
    for (int i = 0; i < picks; ++i) {
      gens.push_back(detail::random_vector_in(Subspace::full(l_.dim()), rng));
    }
    return l_.subalgebra_closure(gens);
  }

  std::string subgroup_str(const SubgroupHandle& h) const override {
    const Subspace& s = as_space(h);
    return "connected of dimension " + std::to_string(s.dim());
  }

  Closure commutator_closure(const SubgroupHandle& ah, const SubgroupHandle& bh) const override {
    const Subspace& a = as_space(ah);
    const Subspace& b = as_space(bh);
    if (!l_.normalizes(a, b) || !l_.normalizes(b, a)) {
      throw std::domain_error("commutator_closure: the subgroups must normalize each other");
    }
    Subspace c = l_.bracket_subspace(a, b);
    while (true) {
      Subspace next = sum(c, sum(l_.bracket_subspace(a, c), l_.bracket_subspace(b, c)));
      if (next == c) break;
      c = next;
    }
    return Closure{c, c.dim()};
  }

  SubgroupHandle ad_image(const SubgroupHandle& h_connected, const Element& x) const override {
    const Subspace& h = as_space(h_connected);
    std::vector<Vec> images;
    for (int i = 0; i < h.dim(); ++i) {
      images.push_back(l_.group_commutator(h.basis_vector(i), as_vec(x)));
    }
    return l_.subalgebra_closure(images);
  }

  std::optional<Element> solve_commutator(const SubgroupHandle& h_connected, const Element& x,
                                          const Element& target) const override {
    const Subspace& h = as_space(h_connected);
    if (h.dim() == 0) {
      return is_identity(target) ? std::optional<Element>(identity()) : std::nullopt;
    }
    Matrix columns(l_.dim(), h.dim());
    for (int j = 0; j < h.dim(); ++j) {
      Vec img = l_.group_commutator(h.basis_vector(j), as_vec(x));
      for (int i = 0; i < l_.dim(); ++i) columns.at(i, j) = img[static_cast<size_t>(i)];
    }
    std::optional<Vec> coeff = solve_linear(columns, as_vec(target));
    if (!coeff) return std::nullopt;
    Vec candidate = vec_zero(l_.dim());
    for (int j = 0; j < h.dim(); ++j) {
      candidate = vec_add(candidate, vec_scale((*coeff)[static_cast<size_t>(j)], h.basis_vector(j)));
    }
    if (l_.group_commutator(candidate, as_vec(x)) != as_vec(target)) return std::nullopt;
    return Element(candidate);
  }

  QuotientResult quotient(const SubgroupHandle& gh, const SubgroupHandle& nh) const override;

 private:
  NilpotentLieAlgebra l_;
};

QuotientResult MalcevModel::quotient(const SubgroupHandle& gh, const SubgroupHandle& nh) const {
  const Subspace& g = as_space(gh);
  const Subspace& n = as_space(nh);
  if (!g.contains(n)) throw std::domain_error("quotient: the denominator is not contained");
  if (!l_.normalizes(g, n)) throw std::domain_error("quotient: the denominator is not normal");

  std::vector<Vec> n_coords;
  for (int i = 0; i < n.dim(); ++i) n_coords.push_back(*g.coordinates(n.basis_vector(i)));
  Subspace n_in_g = Subspace::span(g.dim(), n_coords);
  detail::CoordinateSplit cs = detail::split_off(n_in_g, g.dim());
  int qdim = cs.project.rows();

  if (qdim == 0) {  // dividing out everything leaves the one point group
    QuotientResult qr;
    qr.model = make_finite_model(FiniteGroup::from_table({{0}}, l_.name() + " quotient"));
    qr.image = std::get<FiniteSubgroup>(qr.model->full_subgroup());
    qr.project = [g](const Element& a) -> Element {
      if (!g.contains(std::get<Vec>(a))) {
        throw std::domain_error("quotient projection: element outside the numerator");
      }
      return 0;
    };
    qr.lift = [d = l_.dim()](const Element&) -> Element { return vec_zero(d); };
    qr.push_subgroup = [qm = qr.model](const SubgroupHandle&) -> SubgroupHandle {
      return qm->full_subgroup();
    };
    qr.lift_subgroup = [g](const SubgroupHandle&) -> SubgroupHandle { return g; };
    return qr;
  }

  NilpotentLieAlgebra section = restricted_algebra(l_, g, l_.name() + " section");

  std::map<std::pair<int, int>, Vec> brackets;
  for (int i = 0; i < qdim; ++i) {
    for (int j = i + 1; j < qdim; ++j) {
      Vec lifted = section.bracket(cs.section.apply(vec_unit(i, qdim)),
                                   cs.section.apply(vec_unit(j, qdim)));
      Vec b = cs.project.apply(lifted);
      if (!vec_is_zero(b)) brackets[{i, j}] = b;
    }
  }
  auto quotient_algebra = NilpotentLieAlgebra(qdim, brackets, l_.name() + " quotient");

  // save the coordinate maps: ambient <-> section coordinates <-> quotient
  struct Maps {
    Subspace g;
    Matrix project;  // section coords -> quotient coords
    Matrix section;  // quotient coords -> section coords
  };
  auto maps = std::make_shared<Maps>(Maps{g, cs.project, cs.section});
  auto to_ambient = [maps](const Vec& g_coords) {
    Vec v = vec_zero(maps->g.ambient());
    for (int i = 0; i < maps->g.dim(); ++i) {
      v = vec_add(v, vec_scale(g_coords[static_cast<size_t>(i)], maps->g.basis_vector(i)));
    }
    return v;
  };

  QuotientResult qr;
  qr.model = make_malcev_model(std::move(quotient_algebra));
  qr.image = std::get<Subspace>(qr.model->full_subgroup());
  qr.project = [maps](const Element& a) -> Element {
    std::optional<Vec> coords = maps->g.coordinates(std::get<Vec>(a));
    if (!coords) throw std::domain_error("quotient projection: element outside the numerator");
    return maps->project.apply(*coords);
  };
  qr.lift = [maps, to_ambient](const Element& a) -> Element {
    return to_ambient(maps->section.apply(std::get<Vec>(a)));
  };
  qr.push_subgroup = [maps](const SubgroupHandle& h) -> SubgroupHandle {
    const Subspace& s = std::get<Subspace>(h);
    std::vector<Vec> rows;
    for (int i = 0; i < s.dim(); ++i) {
      std::optional<Vec> coords = maps->g.coordinates(s.basis_vector(i));
      if (!coords) throw std::domain_error("quotient projection: subgroup outside the numerator");
      rows.push_back(maps->project.apply(*coords));
    }
    return Subspace::span(maps->project.rows(), rows);
  };
  qr.lift_subgroup = [maps, to_ambient, n](const SubgroupHandle& h) -> SubgroupHandle {
    const Subspace& s = std::get<Subspace>(h);
    std::vector<Vec> gens;
    for (int i = 0; i < s.dim(); ++i) {
      gens.push_back(to_ambient(maps->section.apply(s.basis_vector(i))));
    }
    for (int i = 0; i < n.dim(); ++i) gens.push_back(n.basis_vector(i));
    return Subspace::span(maps->g.ambient(), gens);
  };
  return qr;
}

}  // namespace

std::shared_ptr<const GroupModel> make_malcev_model(NilpotentLieAlgebra algebra) {
  return std::make_shared<MalcevModel>(std::move(algebra));
}

}  // namespace grouplab
