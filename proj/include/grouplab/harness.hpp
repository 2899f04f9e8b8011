#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "grouplab/model.hpp"

namespace grouplab {

// One commutator in a product expression: [a,b] when sign is +1, and its
// inverse [b,a] when sign is -1. The source string names the stage that
// produced the factor (e.g. "from [Ao,B]", "finite-correction").
struct CommutatorFactor {
  Element a;
  Element b;
  int sign = 1;
  std::string source;
};

// An exact expression of `target` as a short product of commutators, with a
// replay that recomputes the product from the stored factors.
struct WidthCertificate {
  Element target;
  std::vector<CommutatorFactor> factors;

  int length() const { return static_cast<int>(factors.size()); }
  Element replay(const GroupModel& m) const;
  bool verify(const GroupModel& m) const;  // replay(m) == target, exactly
};

// Verdict of one named check: a stable id, a role description, a pass flag,
// the number of instances exercised, and diff-friendly detail lines.
struct LemmaReport {
  std::string id;
  std::string title;
  std::string model;  // name of the group the report is about, when it has one
  bool pass = true;
  long instances = 0;
  std::vector<std::string> details;

  void check(bool ok, const std::string& what);
  void note(std::string line) { details.push_back(std::move(line)); }
  void absorb(const LemmaReport& other);  // fold a sub-report into this one
};

// ---------------------------------------------------------------------------
// element / subgroup toolkit
// ---------------------------------------------------------------------------

// A finite generating family for the handle: basis elements of the divisible
// part followed by generators of the discrete part.
std::vector<Element> generating_elements(const GroupModel& m, const SubgroupHandle& h);

// Image of a handle under conjugation by one element.
SubgroupHandle conjugate_subgroup(const GroupModel& m, const SubgroupHandle& h, const Element& g);

// Conjugation by x maps h into h (hence onto h, conjugation being an
// automorphism that preserves the dimension and the discrete part).
bool element_normalizes(const GroupModel& m, const SubgroupHandle& h, const Element& x);

bool is_abelian_subgroup(const GroupModel& m, const SubgroupHandle& h);
bool is_solvable_subgroup(const GroupModel& m, const SubgroupHandle& h);
bool is_nilpotent_subgroup(const GroupModel& m, const SubgroupHandle& h);

// Derived series h >= [h,h] >= ... until stable; lower central series
// h >= [h,h] >= [h,[h,h]] >= ...; ascending central series of the full group.
std::vector<SubgroupHandle> derived_series(const GroupModel& m, const SubgroupHandle& h);
std::vector<SubgroupHandle> lower_central_series(const GroupModel& m, const SubgroupHandle& h);
std::vector<SubgroupHandle> upper_central_series(const GroupModel& m);

// Member of `s` projecting onto `image` under q (a membership-respecting
// section; requires image to lie in the push of s). Exact; throws when no
// preimage inside s exists.
Element lift_into(const GroupModel& m, const QuotientResult& q, const SubgroupHandle& s,
                  const Element& image);

// t = u * v with u in p1 and v in p2, where p2 is normal in the product
// p1 * p2 and t lies in that product.
std::pair<Element, Element> split_through(const GroupModel& m, const SubgroupHandle& p1,
                                          const SubgroupHandle& p2, const Element& t);

// ---------------------------------------------------------------------------
// greedy generation
// ---------------------------------------------------------------------------

struct GreedyResult {
  SubgroupHandle subgroup;   // product of the chosen parts, in input order
  std::vector<int> chosen;   // indices into `parts`; size <= dim(subgroup) + #finite picks
};

// Product of a family of connected pairwise-normalizing subgroups, assembled
// greedily: each step keeps the part giving the largest dimension increase
// (ties broken by input order) until no part adds dimension. The number of
// chosen parts is at most the dimension of the result.
GreedyResult greedy_generate(const GroupModel& m, const std::vector<SubgroupHandle>& parts);

// ---------------------------------------------------------------------------
// central commutator stage
// ---------------------------------------------------------------------------

struct CentralCommutatorResult {
  SubgroupHandle subgroup;                     // [H, X]
  std::vector<int> chosen;                     // indices of the selected x's
  std::vector<WidthCertificate> certificates;  // one per requested target
};

// [H, X] for a connected H and a finite element set X whose commutators with
// H all centralize H. Each map h -> [h, x] is then a homomorphism with a
// connected image; [H, X] is the product of at most dim([H, X]) of these
// images (greedy selection), and every requested target splits into one
// commutator per selected image. Throws when the centrality premise fails or
// a target is outside the computed product.
CentralCommutatorResult central_commutator(const GroupModel& m, const SubgroupHandle& h,
                                           const std::vector<Element>& xs,
                                           const std::vector<Element>& targets,
                                           const std::string& tag = "central stage");

// ---------------------------------------------------------------------------
// staged width solver
// ---------------------------------------------------------------------------

// Exact expression of `target` as a product of at most dim([A,B]) commutators
// of the pair, A and B mutually normalizing with at least one of them
// connected (and, through the descent, the connected one solvable).
// The solver mirrors the structure theorem: solve centrally after dividing by
// the next term of the relevant series, lift the factors, and correct the
// residue recursively; finite groups use the exact breadth-first oracle.
WidthCertificate staged_width(const GroupModel& m, const SubgroupHandle& a,
                              const SubgroupHandle& b, const Element& target,
                              const std::string& tag = "staged");

// Minimal-length certificate for a finite-model target via breadth-first
// search over commutator multiplications.
WidthCertificate finite_width_certificate(const GroupModel& m, const SubgroupHandle& a,
                                          const SubgroupHandle& b, const Element& target,
                                          const std::string& tag = "finite-correction");

// ---------------------------------------------------------------------------
// main theorem verifier
// ---------------------------------------------------------------------------

struct MainTheoremData {
  GroupModel::Closure closure;      // [A,B] with the model's witnessed width bound
  SubgroupHandle component;         // ([A,B]) degree-connected part
  SubgroupHandle from_a_component;  // [Ao, B]
  SubgroupHandle from_b_component;  // [A, Bo]
  long finite_index = 1;            // |[A,B] : [A,B]o|
  std::vector<WidthCertificate> certificates;
  int finite_correction_width = 0;  // observed extra factors beyond the bound
  LemmaReport report;               // id "8.1"
};

// Computes [Ao,B], [A,Bo], their product C, and [A,B]; checks that C is
// connected and equals [A,B]-connected-part and that the quotient [A,B]/C is
// finite. When Ao or Bo is solvable, emits verified width certificates of
// length <= dim(C) for `samples` sampled elements of C (plus unbounded
// finite-correction certificates for sampled non-component elements).
MainTheoremData main_theorem_check(const GroupModel& m, const SubgroupHandle& a,
                                   const SubgroupHandle& b, std::mt19937_64& rng, int samples);

// ---------------------------------------------------------------------------
// series and solvable structure
// ---------------------------------------------------------------------------

struct SeriesData {
  std::vector<SubgroupHandle> lower_central;  // G = G^1 >= G^2 >= ...
  std::vector<SubgroupHandle> derived;        // G = G^(0) >= G' >= ...
  std::vector<SubgroupHandle> upper_central;  // 1 <= Z(G) <= Z_2(G) <= ...
  std::vector<LemmaReport> reports;           // ids 8.5, 2.4, 7.1, 7.2, 7.3, 7.6
};

// Computes the three series of the full group and checks: every term is a
// valid handle, connected when the group is connected; for nilpotent groups
// the lower central terms sit inside the mirrored ascending terms and the
// class is witnessed on both sides; for connected solvable nonabelian groups
// the derived subgroup is nilpotent and sits inside the connected Fitting
// subgroup, which is nontrivial, and a proper connected normal subgroup
// containing the derived subgroup is exhibited.
SeriesData series_and_solvable_checks(const GroupModel& m);

// ---------------------------------------------------------------------------
// [H, X] for H inside the group generated by X
// ---------------------------------------------------------------------------

struct HxData {
  SubgroupHandle commutator;  // [H, X]
  std::vector<WidthCertificate> certificates;
  LemmaReport report;  // id "9.3"
};

// For a connected H and extra elements xs normalizing H, checks [H, X] for
// the overset X = H (as a set) together with xs: the commutator is computed
// as the preimage of the central stage modulo H' and verified to be
// representable, connected, contained in H, and containing H'. Sampled
// elements receive certificates of length <= dim([H,X]) whose factors draw
// from H x X (residues use pairs inside H, which X contains).
HxData hx_check(const GroupModel& m, const SubgroupHandle& h, const std::vector<Element>& xs,
                std::mt19937_64& rng, int samples);

// ---------------------------------------------------------------------------
// dimension axiom battery
// ---------------------------------------------------------------------------

// Reports: "A3" (dimension zero exactly on the finite handles, component
// behavior), "5.1" (product dimension formula on random pairs), "A2"
// (additivity across supported quotients), "dcc" (bounded descent probe).
std::vector<LemmaReport> axiom_battery(const GroupModel& m, std::mt19937_64& rng, int samples);

}  // namespace grouplab
