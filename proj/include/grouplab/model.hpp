#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "grouplab/finite_group.hpp"
#include "grouplab/lie_algebra.hpp"
#include "grouplab/subspace.hpp"

namespace grouplab {

// Element payloads per model kind. The finite model indexes into its table;
// the Malcev model works in logarithmic coordinates; the two solvable-by-
// finite models are semidirect pairs.
struct LbfElement {
  Vec v;
  int f = 0;
  bool operator==(const LbfElement&) const = default;
};

struct TbuElement {
  Rational t;  // nonzero
  Vec u;
  bool operator==(const TbuElement&) const = default;
};

using Element = std::variant<int, Vec, LbfElement, TbuElement>;

// Subgroup handles, canonical per kind so equality is structural.
struct LbfSubgroup {
  Subspace w;
  FiniteSubgroup s;
  bool operator==(const LbfSubgroup&) const = default;
};

enum class TorusPart { Trivial, Torsion, Positive, Full };

std::string torus_part_str(TorusPart t);

struct TbuSubgroup {
  TorusPart torus = TorusPart::Trivial;
  Subspace u;
  bool operator==(const TbuSubgroup&) const = default;
};

using SubgroupHandle = std::variant<FiniteSubgroup, Subspace, LbfSubgroup, TbuSubgroup>;

class GroupModel;

// Quotient of a representable subgroup by a representable normal subgroup,
// packaged as a model of its own together with the projection, a section of
// it, and the transfer of subgroup handles in both directions.
struct QuotientResult {
  std::shared_ptr<const GroupModel> model;
  // image of the numerator subgroup inside `model` (the whole model except
  // when a subgroup with a finite-index torus part is divided)
  SubgroupHandle image;
  std::function<Element(const Element&)> project;
  std::function<Element(const Element&)> lift;  // section: project(lift(x)) = x
  std::function<SubgroupHandle(const SubgroupHandle&)> push_subgroup;
  std::function<SubgroupHandle(const SubgroupHandle&)> lift_subgroup;  // full preimage
};

// A group together with an exact dimension on its representable subgroups.
// Dimension zero characterizes the finite handles, products of normalizing
// pairs are representable, and every strictly descending chain of handles is
// finite, so the commutator machinery terminates.
class GroupModel {
 public:
  virtual ~GroupModel() = default;

  virtual std::string kind() const = 0;
  virtual const std::string& name() const = 0;

  // ---- elements ----
  virtual Element identity() const = 0;
  virtual Element mul(const Element& a, const Element& b) const = 0;
  virtual Element inv(const Element& a) const = 0;
  virtual bool eq(const Element& a, const Element& b) const = 0;
  virtual std::string element_str(const Element& a) const = 0;

  bool is_identity(const Element& a) const { return eq(a, identity()); }
  Element conj(const Element& a, const Element& g) const;  // a^g = g^{-1} a g
  Element comm(const Element& a, const Element& b) const;  // a^{-1} a^b
  Element pow(const Element& a, long n) const;

  // ---- subgroup handles ----
  virtual SubgroupHandle trivial_subgroup() const = 0;
  virtual SubgroupHandle full_subgroup() const = 0;
  virtual bool valid_handle(const SubgroupHandle& h) const = 0;
  virtual bool contains(const SubgroupHandle& h, const Element& a) const = 0;
  virtual bool contains_subgroup(const SubgroupHandle& h, const SubgroupHandle& k) const = 0;
  virtual int dim(const SubgroupHandle& h) const = 0;
  virtual bool is_finite_subgroup(const SubgroupHandle& h) const = 0;
  virtual std::vector<Element> enumerate(const SubgroupHandle& h) const = 0;  // finite only
  virtual SubgroupHandle intersect_subgroups(const SubgroupHandle& a,
                                             const SubgroupHandle& b) const = 0;
  // every conjugate of b under members of a stays in b
  virtual bool normalizes_subgroup(const SubgroupHandle& a, const SubgroupHandle& b) const = 0;
  // requires one factor to normalize the other
  virtual SubgroupHandle product_subgroup(const SubgroupHandle& a,
                                          const SubgroupHandle& b) const = 0;
  virtual SubgroupHandle connected_component(const SubgroupHandle& h) const = 0;
  virtual long component_index(const SubgroupHandle& h) const = 0;  // |H : H deg|
  virtual SubgroupHandle centralizer_of(const SubgroupHandle& h) const = 0;
  virtual SubgroupHandle normal_closure(const SubgroupHandle& h) const = 0;
  // smallest representable subgroup containing the given elements
  virtual SubgroupHandle hull_of(const std::vector<Element>& xs) const = 0;
  virtual SubgroupHandle fitting_subgroup() const = 0;
  virtual SubgroupHandle solvable_radical() const = 0;
  virtual Element random_member(const SubgroupHandle& h, std::mt19937_64& rng) const = 0;
  virtual SubgroupHandle random_subgroup(std::mt19937_64& rng) const = 0;
  virtual std::string subgroup_str(const SubgroupHandle& h) const = 0;

  SubgroupHandle center() const { return centralizer_of(full_subgroup()); }
  Element random_element(std::mt19937_64& rng) const { return random_member(full_subgroup(), rng); }

  // ---- commutators ----
  struct Closure {
    SubgroupHandle subgroup;
    int width_bound = 0;  // witnessed bound on the commutator width
  };
  // the subgroup generated by {[a,b]}; requires mutual normalization
  virtual Closure commutator_closure(const SubgroupHandle& a, const SubgroupHandle& b) const = 0;

  // Linear side of the map h -> [h, x] on a connected subgroup, used when the
  // image centralizes H (so the map is a homomorphism): the image subgroup,
  // and an exact solver producing h in H with [h, x] = target.
  virtual SubgroupHandle ad_image(const SubgroupHandle& h_connected, const Element& x) const = 0;
  virtual std::optional<Element> solve_commutator(const SubgroupHandle& h_connected,
                                                  const Element& x,
                                                  const Element& target) const = 0;

  // ---- quotients ----
  // quotient of the representable subgroup g by n (normal in g, checked)
  virtual QuotientResult quotient(const SubgroupHandle& g, const SubgroupHandle& n) const = 0;

  QuotientResult quotient_by(const SubgroupHandle& n) const { return quotient(full_subgroup(), n); }
};

std::shared_ptr<const GroupModel> make_finite_model(FiniteGroup group);
std::shared_ptr<const GroupModel> make_malcev_model(NilpotentLieAlgebra algebra);
std::shared_ptr<const GroupModel> make_lbf_model(int d, FiniteGroup finite,
                                                 std::vector<Matrix> rep, std::string name = "");
std::shared_ptr<const GroupModel> make_tbu_model(NilpotentLieAlgebra base, std::vector<int> weights,
                                                 std::string name = "",
                                                 bool connected_full_torus = false);

}  // namespace grouplab
