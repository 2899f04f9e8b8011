#include <algorithm>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <utility>

#include "grouplab/model.hpp"
#include "model_detail.hpp"

namespace grouplab {
namespace {

const LbfElement& as_lbf(const Element& a) {
  const LbfElement* p = std::get_if<LbfElement>(&a);
  if (p == nullptr) throw std::domain_error("lbf model: element of a different kind");
  return *p;
}

const LbfSubgroup& as_lbf_sub(const SubgroupHandle& h) {
  const LbfSubgroup* p = std::get_if<LbfSubgroup>(&h);
  if (p == nullptr) throw std::domain_error("lbf model: subgroup handle of a different kind");
  return *p;
}

// (v, f)(w, g) = (v + rep(f) w, fg): a vector group extended by a finite
// group acting rationally. Subgroups split as (W, S) with W rep(S)-stable.
class LbfModel final : public GroupModel {
 public:
  LbfModel(int d, FiniteGroup finite, std::vector<Matrix> rep, std::string name)
      : d_(d), f_(std::move(finite)), rep_(std::move(rep)), name_(std::move(name)) {
    if (d_ < 0) throw std::invalid_argument("lbf model: negative dimension");
    if (rep_.size() != static_cast<size_t>(f_.order())) {
      throw std::invalid_argument("lbf model: one matrix per finite element required");
    }
    for (const Matrix& m : rep_) {
      if (m.rows() != d_ || m.cols() != d_) {
        throw std::invalid_argument("lbf model: representation matrices must be d x d");
      }
    }
    if (rep_[static_cast<size_t>(f_.identity())] != Matrix::identity(d_)) {
      throw std::invalid_argument("lbf model: the identity must act trivially");
    }
    for (int a = 0; a < f_.order(); ++a) {
      for (int b = 0; b < f_.order(); ++b) {
        if (rho(a) * rho(b) != rho(f_.mul(a, b))) {
          throw std::invalid_argument("lbf model: the action is not a homomorphism");
        }
      }
    }
    if (name_.empty()) name_ = "Q^" + std::to_string(d_) + " by " + f_.name();
  }

  std::string kind() const override { return "lbf"; }
  const std::string& name() const override { return name_; }
  const FiniteGroup& finite_part() const { return f_; }
  const Matrix& rho(int f) const { return rep_[static_cast<size_t>(f)]; }

  Element identity() const override { return LbfElement{vec_zero(d_), f_.identity()}; }

  Element mul(const Element& a, const Element& b) const override {
    const LbfElement& x = as_lbf(a);
    const LbfElement& y = as_lbf(b);
    return LbfElement{vec_add(x.v, rho(x.f).apply(y.v)), f_.mul(x.f, y.f)};
  }

  Element inv(const Element& a) const override {
    const LbfElement& x = as_lbf(a);
    int fi = f_.inv(x.f);
    return LbfElement{vec_scale(-1, rho(fi).apply(x.v)), fi};
  }

  bool eq(const Element& a, const Element& b) const override { return as_lbf(a) == as_lbf(b); }

  std::string element_str(const Element& a) const override {
    const LbfElement& x = as_lbf(a);
    return "(" + vec_str(x.v) + ", " + f_.element_name(x.f) + ")";
  }

  SubgroupHandle trivial_subgroup() const override {
    return LbfSubgroup{Subspace(d_), f_.trivial_subgroup()};
  }
  SubgroupHandle full_subgroup() const override {
    return LbfSubgroup{Subspace::full(d_), f_.full_subgroup()};
  }

  bool valid_handle(const SubgroupHandle& h) const override {
    const LbfSubgroup* p = std::get_if<LbfSubgroup>(&h);
    if (p == nullptr || p->w.ambient() != d_) return false;
    try {
      f_.subgroup(p->s.members);
    } catch (const std::exception&) {
      return false;
    }
    return stable_under(p->w, p->s);
  }

  bool contains(const SubgroupHandle& h, const Element& a) const override {
    const LbfSubgroup& s = as_lbf_sub(h);
    const LbfElement& x = as_lbf(a);
    return s.s.contains(x.f) && s.w.contains(x.v);
  }

  bool contains_subgroup(const SubgroupHandle& h, const SubgroupHandle& k) const override {
    const LbfSubgroup& a = as_lbf_sub(h);
    const LbfSubgroup& b = as_lbf_sub(k);
    return a.s.contains(b.s) && a.w.contains(b.w);
  }

  int dim(const SubgroupHandle& h) const override { return as_lbf_sub(h).w.dim(); }
  bool is_finite_subgroup(const SubgroupHandle& h) const override {
    return as_lbf_sub(h).w.dim() == 0;
  }

  std::vector<Element> enumerate(const SubgroupHandle& h) const override {
    const LbfSubgroup& s = as_lbf_sub(h);
    if (s.w.dim() != 0) throw std::domain_error("enumerate: the subgroup is infinite");
    std::vector<Element> out;
    for (int m : s.s.members) out.push_back(LbfElement{vec_zero(d_), m});
    return out;
  }

  SubgroupHandle intersect_subgroups(const SubgroupHandle& a,
                                     const SubgroupHandle& b) const override {
    const LbfSubgroup& x = as_lbf_sub(a);
    const LbfSubgroup& y = as_lbf_sub(b);
    return LbfSubgroup{intersect(x.w, y.w), f_.intersect(x.s, y.s)};
  }

  // a normalizes b iff S_b is S_a-stable, rep(S_a) fixes W_b, and every
  // (rep(g) - 1) with g in S_b maps W_a into W_b
  bool normalizes_subgroup(const SubgroupHandle& ah, const SubgroupHandle& bh) const override {
    const LbfSubgroup& a = as_lbf_sub(ah);
    const LbfSubgroup& b = as_lbf_sub(bh);
    for (int fa : a.s.members) {
      for (int gb : b.s.members) {
        if (!b.s.contains(f_.conj_by(gb, fa))) return false;
      }
      if (!maps_into(rho(fa), b.w, b.w)) return false;
    }
    for (int gb : b.s.members) {
      if (!maps_into(rho(gb) - Matrix::identity(d_), a.w, b.w)) return false;
    }
    return true;
  }

  SubgroupHandle product_subgroup(const SubgroupHandle& ah, const SubgroupHandle& bh) const override {
    if (!normalizes_subgroup(ah, bh) && !normalizes_subgroup(bh, ah)) {
      throw std::domain_error("product_subgroup: neither factor normalizes the other");
    }
    const LbfSubgroup& a = as_lbf_sub(ah);
    const LbfSubgroup& b = as_lbf_sub(bh);
    return LbfSubgroup{sum(a.w, b.w), f_.join(a.s, b.s)};
  }

  SubgroupHandle connected_component(const SubgroupHandle& h) const override {
    return LbfSubgroup{as_lbf_sub(h).w, f_.trivial_subgroup()};
  }
  long component_index(const SubgroupHandle& h) const override {
    return as_lbf_sub(h).s.order();
  }

  SubgroupHandle centralizer_of(const SubgroupHandle& h) const override {
    const LbfSubgroup& s = as_lbf_sub(h);
    Subspace vc = Subspace::full(d_);
    for (int g : s.s.members) {
      vc = intersect(vc, kernel_of(rho(g) - Matrix::identity(d_)));
    }
    std::vector<int> sc;
    FiniteSubgroup cf = f_.centralizer(f_.full_subgroup(), s.s);
    for (int g : cf.members) {
      if (fixes_pointwise(rho(g), s.w)) sc.push_back(g);
    }
    return LbfSubgroup{vc, f_.subgroup(std::move(sc))};
  }

  SubgroupHandle normal_closure(const SubgroupHandle& h) const override {
    const LbfSubgroup& s = as_lbf_sub(h);
    FiniteSubgroup sbar = f_.normal_closure(s.s.members);
    Subspace w = s.w;
    for (int n : sbar.members) {
      w = sum(w, image_of(rho(n) - Matrix::identity(d_), Subspace::full(d_)));
    }
    w = saturate(w, f_.full_subgroup());
    return LbfSubgroup{w, sbar};
  }

  SubgroupHandle hull_of(const std::vector<Element>& xs) const override {
    std::vector<int> fs;
    std::vector<Vec> vs;
    for (const Element& x : xs) {
      const LbfElement& e = as_lbf(x);
      fs.push_back(e.f);
      vs.push_back(e.v);
    }
    FiniteSubgroup s = f_.closure(std::move(fs));
    Subspace w = saturate(Subspace::span(d_, vs), s);
    return LbfSubgroup{w, std::move(s)};
  }

  SubgroupHandle fitting_subgroup() const override {
    build_kernel_analysis();
    return LbfSubgroup{Subspace::full(d_), kernel_fitting_};
  }

  SubgroupHandle solvable_radical() const override {
    std::call_once(radical_once_, [this] { radical_ = fitting_and_radical(f_).radical; });
    return LbfSubgroup{Subspace::full(d_), radical_};
  }

  Element random_member(const SubgroupHandle& h, std::mt19937_64& rng) const override {
    const LbfSubgroup& s = as_lbf_sub(h);
    return LbfElement{detail::random_vector_in(s.w, rng),
                      s.s.members[rng() % s.s.members.size()]};
  }

  SubgroupHandle random_subgroup(std::mt19937_64& rng) const override {
    int picks = static_cast<int>(rng() % 3);
    std::vector<int> seed;
    for (int i = 0; i < picks; ++i) seed.push_back(static_cast<int>(rng() % f_.order()));
    FiniteSubgroup s = f_.closure(std::move(seed));
    std::vector<Vec> gens;
    int vpicks = static_cast<int>(rng() % 3);
    for (int i = 0; i < vpicks; ++i) {
      gens.push_back(detail::random_vector_in(Subspace::full(d_), rng));
    }
    return LbfSubgroup{saturate(Subspace::span(d_, gens), s), s};
  }

  std::string subgroup_str(const SubgroupHandle& h) const override {
    const LbfSubgroup& s = as_lbf_sub(h);
    return "dimension " + std::to_string(s.w.dim()) + ", finite index part of order " +
           std::to_string(s.s.order());
  }

  // [A,B] = (V, [S_A,S_B]) where V is spanned by the (rep(g)-1) W_A and
  // (rep(f)-1) W_B images, saturated under the action of <S_A, S_B>
  Closure commutator_closure(const SubgroupHandle& ah, const SubgroupHandle& bh) const override {
    if (!normalizes_subgroup(ah, bh) || !normalizes_subgroup(bh, ah)) {
      throw std::domain_error("commutator_closure: the subgroups must normalize each other");
    }
    const LbfSubgroup& a = as_lbf_sub(ah);
    const LbfSubgroup& b = as_lbf_sub(bh);
    Subspace v(d_);
    for (int g : b.s.members) {
      v = sum(v, image_of(rho(g) - Matrix::identity(d_), a.w));
    }
    for (int f : a.s.members) {
      v = sum(v, image_of(rho(f) - Matrix::identity(d_), b.w));
    }
    v = saturate(v, f_.join(a.s, b.s));
    FiniteSubgroup q = f_.commutator_subgroup(a.s, b.s);
    int finite_width = commutator_profile(f_, a.s, b.s).width;
    return Closure{LbfSubgroup{v, q}, v.dim() + finite_width};
  }

  SubgroupHandle ad_image(const SubgroupHandle& h_connected, const Element& x) const override {
    const LbfSubgroup& h = as_lbf_sub(h_connected);
    if (h.s.order() != 1) throw std::domain_error("ad_image: connected subgroup required");
    const LbfElement& xe = as_lbf(x);
    Subspace img = image_of(rho(f_.inv(xe.f)) - Matrix::identity(d_), h.w);
    return LbfSubgroup{img, f_.trivial_subgroup()};
  }

  std::optional<Element> solve_commutator(const SubgroupHandle& h_connected, const Element& x,
                                          const Element& target) const override {
    const LbfSubgroup& h = as_lbf_sub(h_connected);
    if (h.s.order() != 1) throw std::domain_error("solve_commutator: connected subgroup required");
    const LbfElement& xe = as_lbf(x);
    const LbfElement& te = as_lbf(target);
    if (te.f != f_.identity()) return std::nullopt;
    if (h.w.dim() == 0) return vec_is_zero(te.v) ? std::optional<Element>(identity()) : std::nullopt;
    Matrix m = rho(f_.inv(xe.f)) - Matrix::identity(d_);
    Matrix columns(d_, h.w.dim());
    for (int j = 0; j < h.w.dim(); ++j) {
      Vec img = m.apply(h.w.basis_vector(j));
      for (int i = 0; i < d_; ++i) columns.at(i, j) = img[static_cast<size_t>(i)];
    }
    std::optional<Vec> coeff = solve_linear(columns, te.v);
    if (!coeff) return std::nullopt;
    Vec w = vec_zero(d_);
    for (int j = 0; j < h.w.dim(); ++j) {
      w = vec_add(w, vec_scale((*coeff)[static_cast<size_t>(j)], h.w.basis_vector(j)));
    }
    Element candidate = LbfElement{w, f_.identity()};
    if (!eq(comm(candidate, x), target)) return std::nullopt;
    return candidate;
  }

  QuotientResult quotient(const SubgroupHandle& gh, const SubgroupHandle& nh) const override;

 private:
  bool maps_into(const Matrix& m, const Subspace& from, const Subspace& to) const {
    for (int i = 0; i < from.dim(); ++i) {
      if (!to.contains(m.apply(from.basis_vector(i)))) return false;
    }
    return true;
  }

  bool fixes_pointwise(const Matrix& m, const Subspace& s) const {
    for (int i = 0; i < s.dim(); ++i) {
      Vec b = s.basis_vector(i);
      if (m.apply(b) != b) return false;
    }
    return true;
  }

  bool stable_under(const Subspace& w, const FiniteSubgroup& s) const {
    for (int g : s.members) {
      if (!maps_into(rho(g), w, w)) return false;
    }
    return true;
  }

  Subspace image_of(const Matrix& m, const Subspace& s) const {
    std::vector<Vec> rows;
    for (int i = 0; i < s.dim(); ++i) rows.push_back(m.apply(s.basis_vector(i)));
    return Subspace::span(d_, rows);
  }

  Subspace kernel_of(const Matrix& m) const { return Subspace::from_rows(m.kernel()); }

  // smallest rep(S)-stable subspace containing w
  Subspace saturate(Subspace w, const FiniteSubgroup& s) const {
    while (true) {
      Subspace next = w;
      for (int g : s.members) next = sum(next, image_of(rho(g), w));
      if (next == w) return w;
      w = next;
    }
  }

  void build_kernel_analysis() const {
    std::call_once(kernel_once_, [this] {
      std::vector<int> kernel;
      for (int g = 0; g < f_.order(); ++g) {
        if (rho(g) == Matrix::identity(d_)) kernel.push_back(g);
      }
      FiniteSubgroup ker = f_.subgroup(std::move(kernel));
      detail::FiniteRestriction r = detail::restrict_finite(f_, ker, "action kernel");
      FiniteSubgroup fit = fitting_and_radical(r.group).fitting;
      std::vector<int> lifted;
      for (int m : fit.members) lifted.push_back(r.to_parent[static_cast<size_t>(m)]);
      std::sort(lifted.begin(), lifted.end());
      kernel_fitting_ = FiniteSubgroup{std::move(lifted)};
    });
  }

  int d_;
  FiniteGroup f_;
  std::vector<Matrix> rep_;
  std::string name_;
  mutable std::once_flag kernel_once_;
  mutable FiniteSubgroup kernel_fitting_;
  mutable std::once_flag radical_once_;
  mutable FiniteSubgroup radical_;
};

QuotientResult LbfModel::quotient(const SubgroupHandle& gh, const SubgroupHandle& nh) const {
  if (!contains_subgroup(gh, nh)) {
    throw std::domain_error("quotient: the denominator is not contained");
  }
  if (!normalizes_subgroup(gh, nh)) {
    throw std::domain_error("quotient: the denominator is not normal");
  }
  const LbfSubgroup& g = as_lbf_sub(gh);
  const LbfSubgroup& n = as_lbf_sub(nh);

  // finite side: S_g / S_n on canonical representatives
  auto view = std::make_shared<detail::FiniteRestriction>(
      detail::restrict_finite(f_, g.s, name_ + " finite section"));
  std::vector<int> den;
  for (int m : n.s.members) den.push_back(view->from_parent[static_cast<size_t>(m)]);
  std::sort(den.begin(), den.end());
  auto fq = std::make_shared<FiniteQuotient>(view->group.quotient(view->group.subgroup(std::move(den))));

  // vector side: W_g / W_n in the coordinates of W_g
  std::vector<Vec> n_coords;
  for (int i = 0; i < n.w.dim(); ++i) n_coords.push_back(*g.w.coordinates(n.w.basis_vector(i)));
  Subspace n_in_g = Subspace::span(g.w.dim(), n_coords);
  detail::CoordinateSplit cs = detail::split_off(n_in_g, g.w.dim());
  int qd = cs.project.rows();

  struct Maps {
    Subspace gw;
    Matrix project;
    Matrix section;
    std::shared_ptr<detail::FiniteRestriction> view;
    std::shared_ptr<FiniteQuotient> fq;
    int parent_d;
  };
  auto maps = std::make_shared<Maps>(Maps{g.w, cs.project, cs.section, view, fq, d_});

  // the matrix of rho(p) restricted to W_g, in W_g coordinates
  auto action_on_g = [this, maps](int p) {
    Matrix m(maps->gw.dim(), maps->gw.dim());
    for (int j = 0; j < maps->gw.dim(); ++j) {
      Vec img = *maps->gw.coordinates(rho(p).apply(maps->gw.basis_vector(j)));
      for (int i = 0; i < maps->gw.dim(); ++i) m.at(i, j) = img[static_cast<size_t>(i)];
    }
    return m;
  };

  auto project_elt = [maps](const LbfElement& x) {
    std::optional<Vec> coords = maps->gw.coordinates(x.v);
    int sub = maps->view->from_parent[static_cast<size_t>(x.f)];
    if (!coords || sub < 0) {
      throw std::domain_error("quotient projection: element outside the numerator");
    }
    return std::make_pair(maps->project.apply(*coords), maps->fq->proj[static_cast<size_t>(sub)]);
  };
  auto lift_vec = [maps](const Vec& qv) {
    Vec g_coords = maps->section.apply(qv);
    Vec v = vec_zero(maps->parent_d);
    for (int i = 0; i < maps->gw.dim(); ++i) {
      v = vec_add(v, vec_scale(g_coords[static_cast<size_t>(i)], maps->gw.basis_vector(i)));
    }
    return v;
  };
  auto lift_f = [maps](int qf) {
    return maps->view->to_parent[static_cast<size_t>(maps->fq->reps[static_cast<size_t>(qf)])];
  };

  QuotientResult qr;
  if (qd == 0) {
    qr.model = make_finite_model(fq->group);
    qr.image = fq->group.full_subgroup();
    qr.project = [project_elt](const Element& a) -> Element { return project_elt(as_lbf(a)).second; };
    qr.lift = [maps, lift_f](const Element& a) -> Element {
      return LbfElement{vec_zero(maps->parent_d), lift_f(std::get<int>(a))};
    };
    qr.push_subgroup = [maps](const SubgroupHandle& h) -> SubgroupHandle {
      const LbfSubgroup& s = std::get<LbfSubgroup>(h);
      std::vector<int> members;
      for (int m : s.s.members) {
        int sub = maps->view->from_parent[static_cast<size_t>(m)];
        if (sub < 0) throw std::domain_error("quotient projection: subgroup outside the numerator");
        members.push_back(maps->fq->proj[static_cast<size_t>(sub)]);
      }
      std::sort(members.begin(), members.end());
      members.erase(std::unique(members.begin(), members.end()), members.end());
      return maps->fq->group.subgroup(std::move(members));
    };
    qr.lift_subgroup = [maps, n](const SubgroupHandle& h) -> SubgroupHandle {
      const FiniteSubgroup& s = std::get<FiniteSubgroup>(h);
      std::vector<int> members;
      for (size_t sub = 0; sub < maps->fq->proj.size(); ++sub) {
        if (s.contains(maps->fq->proj[sub])) members.push_back(maps->view->to_parent[sub]);
      }
      std::sort(members.begin(), members.end());
      return LbfSubgroup{n.w, FiniteSubgroup{std::move(members)}};
    };
    return qr;
  }

  // induced representation of the finite quotient on W_g / W_n
  std::vector<Matrix> qrep;
  for (int j = 0; j < fq->group.order(); ++j) {
    int parent = view->to_parent[static_cast<size_t>(fq->reps[static_cast<size_t>(j)])];
    qrep.push_back(cs.project * action_on_g(parent) * cs.section);
  }
  qr.model = std::make_shared<LbfModel>(qd, fq->group, std::move(qrep), name_ + " quotient");
  qr.image = std::get<LbfSubgroup>(qr.model->full_subgroup());
  qr.project = [project_elt](const Element& a) -> Element {
    auto [qv, qf] = project_elt(as_lbf(a));
    return LbfElement{qv, qf};
  };
  qr.lift = [lift_vec, lift_f](const Element& a) -> Element {
    const LbfElement& x = std::get<LbfElement>(a);
    return LbfElement{lift_vec(x.v), lift_f(x.f)};
  };
  qr.push_subgroup = [maps](const SubgroupHandle& h) -> SubgroupHandle {
    const LbfSubgroup& s = std::get<LbfSubgroup>(h);
    std::vector<Vec> rows;
    for (int i = 0; i < s.w.dim(); ++i) {
      std::optional<Vec> coords = maps->gw.coordinates(s.w.basis_vector(i));
      if (!coords) throw std::domain_error("quotient projection: subgroup outside the numerator");
      rows.push_back(maps->project.apply(*coords));
    }
    std::vector<int> members;
    for (int m : s.s.members) {
      int sub = maps->view->from_parent[static_cast<size_t>(m)];
      if (sub < 0) throw std::domain_error("quotient projection: subgroup outside the numerator");
      members.push_back(maps->fq->proj[static_cast<size_t>(sub)]);
    }
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    return LbfSubgroup{Subspace::span(maps->project.rows(), rows),
                       maps->fq->group.subgroup(std::move(members))};
  };
  qr.lift_subgroup = [maps, lift_vec, n](const SubgroupHandle& h) -> SubgroupHandle {
    const LbfSubgroup& s = std::get<LbfSubgroup>(h);
    std::vector<Vec> gens;
    for (int i = 0; i < s.w.dim(); ++i) gens.push_back(lift_vec(s.w.basis_vector(i)));
    for (int i = 0; i < n.w.dim(); ++i) gens.push_back(n.w.basis_vector(i));
    std::vector<int> members;
    for (size_t sub = 0; sub < maps->fq->proj.size(); ++sub) {
      if (s.s.contains(maps->fq->proj[sub])) members.push_back(maps->view->to_parent[sub]);
    }
    std::sort(members.begin(), members.end());
    return LbfSubgroup{Subspace::span(maps->parent_d, gens), FiniteSubgroup{std::move(members)}};
  };
  return qr;
}

}  // namespace

std::shared_ptr<const GroupModel> make_lbf_model(int d, FiniteGroup finite, std::vector<Matrix> rep,
                                                 std::string name) {
  return std::make_shared<LbfModel>(d, std::move(finite), std::move(rep), std::move(name));
}

}  // namespace grouplab
