#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "grouplab/finite_group.hpp"
#include "grouplab/harness.hpp"
#include "grouplab/lie_algebra.hpp"
#include "grouplab/model.hpp"

using namespace grouplab;

namespace {

Rational q(long n, long d = 1) { return Rational(n, d); }

Matrix m1(const Rational& a) {
  Matrix m(1, 1);
  m.at(0, 0) = a;
  return m;
}

Matrix m2(const Rational& a, const Rational& b, const Rational& c, const Rational& d) {
  Matrix m(2, 2);
  m.at(0, 0) = a;
  m.at(0, 1) = b;
  m.at(1, 0) = c;
  m.at(1, 1) = d;
  return m;
}

Vec v3(long a, long b, long c) { return {q(a), q(b), q(c)}; }

FiniteGroup c2() { return FiniteGroup::from_table({{0, 1}, {1, 0}}, "c2"); }

FiniteGroup q8() {
  return FiniteGroup::from_table({{0, 1, 2, 3, 4, 5, 6, 7},
                                  {1, 0, 3, 2, 5, 4, 7, 6},
                                  {2, 3, 1, 0, 6, 7, 5, 4},
                                  {3, 2, 0, 1, 7, 6, 4, 5},
                                  {4, 5, 7, 6, 1, 0, 2, 3},
                                  {5, 4, 6, 7, 0, 1, 3, 2},
                                  {6, 7, 4, 5, 3, 2, 1, 0},
                                  {7, 6, 5, 4, 2, 3, 0, 1}},
                                 "q8");
}

// dihedral group of order six: index 3e + k encodes s^e r^k
FiniteGroup d3() {
  std::vector<std::vector<int>> t(6, std::vector<int>(6));
  for (int e = 0; e < 2; ++e) {
    for (int k = 0; k < 3; ++k) {
      for (int f = 0; f < 2; ++f) {
        for (int l = 0; l < 3; ++l) {
          const int re = (e + f) % 2;
          const int rk = (f == 0) ? (k + l) % 3 : ((l - k) % 3 + 3) % 3;
          t[static_cast<size_t>(3 * e + k)][static_cast<size_t>(3 * f + l)] = 3 * re + rk;
        }
      }
    }
  }
  return FiniteGroup::from_table(t, "d3");
}

NilpotentLieAlgebra h3() {
  return NilpotentLieAlgebra(3, {{{0, 1}, v3(0, 0, 1)}}, "h3");
}

std::shared_ptr<const GroupModel> heisenberg_model() { return make_malcev_model(h3()); }

std::shared_ptr<const GroupModel> ut4_model() { return make_malcev_model(ut_algebra(4)); }

std::shared_ptr<const GroupModel> inversion_model() {
  return make_lbf_model(1, c2(), {m1(1), m1(-1)}, "line by inversion");
}

std::shared_ptr<const GroupModel> swap_model() {
  return make_lbf_model(2, c2(), {Matrix::identity(2), m2(0, 1, 1, 0)}, "plane by swap");
}

// the plane acted on faithfully by the dihedral group of order six
std::shared_ptr<const GroupModel> lbf_d3_model() {
  const Matrix i2 = Matrix::identity(2);
  const Matrix r = m2(0, -1, 1, -1);
  const Matrix r2 = m2(-1, 1, -1, 0);
  const Matrix s = m2(0, 1, 1, 0);
  const Matrix sr = m2(1, -1, 0, -1);
  const Matrix sr2 = m2(-1, 0, -1, 1);
  return make_lbf_model(2, d3(), {i2, r, r2, s, sr, sr2}, "plane by d3");
}

std::shared_ptr<const GroupModel> axb_model() {
  return make_tbu_model(NilpotentLieAlgebra(1, {}, "line"), {1}, "affine line");
}

std::shared_ptr<const GroupModel> axb_connected_model() {
  return make_tbu_model(NilpotentLieAlgebra(1, {}, "line"), {1}, "connected affine line", true);
}

std::shared_ptr<const GroupModel> graded_h3_model() {
  return make_tbu_model(h3(), {1, 1, 2}, "graded h3");
}

std::shared_ptr<const GroupModel> s4_model() {
  return make_finite_model(
      FiniteGroup::from_permutations({{2, 1, 3, 4}, {2, 3, 4, 1}}, "s4"));
}

std::vector<std::shared_ptr<const GroupModel>> all_models() {
  return {make_finite_model(d3()),  make_finite_model(q8()), heisenberg_model(),
          ut4_model(),              inversion_model(),       swap_model(),
          lbf_d3_model(),           axb_model(),             axb_connected_model(),
          graded_h3_model()};
}

std::string factor_string(const GroupModel& m, const WidthCertificate& cert) {
  std::string out;
  for (const CommutatorFactor& f : cert.factors) {
    out += (f.sign < 0 ? "-[" : "+[") + m.element_str(f.a) + "," + m.element_str(f.b) + "] ";
  }
  return out;
}

}  // namespace

TEST_CASE("width certificates replay exactly") {
  auto m = make_finite_model(d3());
  const Element r{1};
  const Element s{3};
  WidthCertificate cert{m->comm(r, s), {CommutatorFactor{r, s, 1, "test"}}};
  CHECK(cert.verify(*m));
  WidthCertificate inv{m->inv(m->comm(r, s)), {CommutatorFactor{r, s, -1, "test"}}};
  CHECK(inv.verify(*m));
  WidthCertificate bad{s, {CommutatorFactor{r, s, 1, "test"}}};  // [r,s] = r, not s
  CHECK_FALSE(bad.verify(*m));
  CHECK(cert.length() == 1);
}

TEST_CASE("generating elements regenerate their subgroup") {
  std::mt19937_64 rng(20260815);
  for (const auto& m : all_models()) {
    CAPTURE(m->name());
    std::vector<SubgroupHandle> handles{m->full_subgroup(), m->trivial_subgroup()};
    for (int i = 0; i < 4; ++i) handles.push_back(m->random_subgroup(rng));
    for (const SubgroupHandle& h : handles) {
      const std::vector<Element> gens = generating_elements(*m, h);
      for (const Element& g : gens) CHECK(m->contains(h, g));
      CHECK(m->hull_of(gens) == h);
    }
  }
}

TEST_CASE("element normalization probes") {
  auto inv = inversion_model();
  const SubgroupHandle line = LbfSubgroup{Subspace::full(1), c2().trivial_subgroup()};
  CHECK(element_normalizes(*inv, line, Element{LbfElement{{q(0)}, 1}}));

  auto swp = swap_model();
  const SubgroupHandle e1 =
      LbfSubgroup{Subspace::span(2, {{q(1), q(0)}}), c2().trivial_subgroup()};
  CHECK(element_normalizes(*swp, e1, Element{LbfElement{{q(0), q(0)}, 0}}));
  CHECK_FALSE(element_normalizes(*swp, e1, Element{LbfElement{{q(0), q(0)}, 1}}));
}

TEST_CASE("conjugate subgroups on finite and nilpotent models") {
  auto s4 = s4_model();
  std::mt19937_64 rng(7);
  const SubgroupHandle d = s4->commutator_closure(s4->full_subgroup(), s4->full_subgroup()).subgroup;
  for (int i = 0; i < 5; ++i) {
    const Element g = s4->random_element(rng);
    CHECK(conjugate_subgroup(*s4, d, g) == d);  // the derived subgroup is normal
  }
  auto h = heisenberg_model();
  const SubgroupHandle plane = Subspace::span(3, {v3(1, 0, 0), v3(0, 0, 1)});
  for (int i = 0; i < 5; ++i) {
    const Element g = h->random_element(rng);
    const SubgroupHandle c = conjugate_subgroup(*h, plane, g);
    CHECK(h->dim(c) == 2);
    // conjugation by anything fixes this plane: it contains the center and
    // commutators land there
    CHECK(c == plane);
  }
  auto inv = inversion_model();
  CHECK_THROWS_AS(conjugate_subgroup(*inv, inv->full_subgroup(), inv->identity()),
                  std::domain_error);
}

TEST_CASE("series on small groups") {
  auto d3m = make_finite_model(d3());
  const auto der = derived_series(*d3m, d3m->full_subgroup());
  REQUIRE(der.size() == 3);
  CHECK(d3m->dim(der[1]) == 0);
  CHECK(is_solvable_subgroup(*d3m, d3m->full_subgroup()));
  CHECK_FALSE(is_nilpotent_subgroup(*d3m, d3m->full_subgroup()));

  auto q8m = make_finite_model(q8());
  CHECK(is_nilpotent_subgroup(*q8m, q8m->full_subgroup()));
  const auto ucs = upper_central_series(*q8m);
  REQUIRE(ucs.size() == 3);
  CHECK(ucs.back() == q8m->full_subgroup());

  auto hm = heisenberg_model();
  const auto lcs = lower_central_series(*hm, hm->full_subgroup());
  REQUIRE(lcs.size() == 3);
  CHECK(hm->dim(lcs[1]) == 1);
  CHECK(lcs[2] == hm->trivial_subgroup());
}

TEST_CASE("lift_into produces members of the subgroup with the right image") {
  auto hm = heisenberg_model();
  const SubgroupHandle center = Subspace::span(3, {v3(0, 0, 1)});
  const QuotientResult qr = hm->quotient_by(center);
  const SubgroupHandle plane = Subspace::span(3, {v3(1, 0, 0), v3(0, 0, 1)});
  const Element img = qr.project(Element{v3(5, 0, 7)});
  const Element lifted = lift_into(*hm, qr, plane, img);
  CHECK(hm->contains(plane, lifted));
  CHECK(qr.model->eq(qr.project(lifted), img));
  // an element outside the pushed subgroup has no preimage inside it
  const Element bad = qr.project(Element{v3(0, 3, 0)});
  CHECK_THROWS_AS(lift_into(*hm, qr, plane, bad), std::domain_error);

  auto d3lbf = lbf_d3_model();
  const SubgroupHandle full = d3lbf->full_subgroup();
  const SubgroupHandle planepart = d3lbf->connected_component(full);
  const QuotientResult qf = d3lbf->quotient_by(planepart);  // finite quotient d3
  const Element rim = qf.project(Element{LbfElement{{q(0), q(0)}, 1}});
  const Element rlift = lift_into(*d3lbf, qf, full, rim);
  CHECK(d3lbf->contains(full, rlift));
  CHECK(qf.model->eq(qf.project(rlift), rim));
}

TEST_CASE("split_through separates a product along its normal factor") {
  auto hm = heisenberg_model();
  const SubgroupHandle e1 = Subspace::span(3, {v3(1, 0, 0)});
  const SubgroupHandle center = Subspace::span(3, {v3(0, 0, 1)});
  const Element t{v3(4, 0, 9)};
  const auto [u, v] = split_through(*hm, e1, center, t);
  CHECK(hm->contains(e1, u));
  CHECK(hm->contains(center, v));
  CHECK(hm->eq(hm->mul(u, v), t));
}

TEST_CASE("greedy generation over normalizing connected parts") {
  auto hm = heisenberg_model();
  const SubgroupHandle e1 = Subspace::span(3, {v3(1, 0, 0)});
  const SubgroupHandle z = Subspace::span(3, {v3(0, 0, 1)});
  const SubgroupHandle plane = Subspace::span(3, {v3(1, 0, 0), v3(0, 0, 1)});
  const GreedyResult g = greedy_generate(*hm, {e1, z, plane});
  CHECK(g.subgroup == plane);
  CHECK(static_cast<int>(g.chosen.size()) <= hm->dim(g.subgroup));
  // oracle: the product equals the envelope of all the parts together
  std::vector<Element> gens;
  for (const SubgroupHandle& p : {e1, z, plane}) {
    for (const Element& x : generating_elements(*hm, p)) gens.push_back(x);
  }
  CHECK(g.subgroup == hm->hull_of(gens));

  const SubgroupHandle e2 = Subspace::span(3, {v3(0, 1, 0)});
  CHECK_THROWS_AS(greedy_generate(*hm, {e1, e2}), std::domain_error);  // [e1,e2] leaves both
}

TEST_CASE("central commutator stage on the heisenberg group") {
  auto hm = heisenberg_model();
  const SubgroupHandle full = hm->full_subgroup();
  const std::vector<Element> xs{Element{v3(1, 0, 0)}, Element{v3(0, 1, 0)}};
  const Element t{v3(0, 0, 5)};
  const CentralCommutatorResult cc = central_commutator(*hm, full, xs, {t});
  CHECK(hm->dim(cc.subgroup) == 1);
  REQUIRE(cc.certificates.size() == 1);
  CHECK(cc.certificates[0].verify(*hm));
  CHECK(cc.certificates[0].length() == 1);

  // in a class-three group the commutators with a generator of the bottom
  // layer do not centralize the whole group
  auto u4 = ut4_model();
  std::vector<Element> gen1{Element{Subspace::full(6).basis_vector(0)}};
  CHECK_THROWS_AS(central_commutator(*u4, u4->full_subgroup(), gen1, {}), std::domain_error);
}

TEST_CASE("staged width on the heisenberg group has width one") {
  auto hm = heisenberg_model();
  std::mt19937_64 rng(42);
  const SubgroupHandle full = hm->full_subgroup();
  const SubgroupHandle d = hm->commutator_closure(full, full).subgroup;
  for (int i = 0; i < 20; ++i) {
    const Element t = hm->random_member(d, rng);
    const WidthCertificate cert = staged_width(*hm, full, full, t);
    CHECK(cert.verify(*hm));
    CHECK(cert.length() <= 1);
  }
}

TEST_CASE("staged width on the class-three triangular model stays within dimension") {
  auto u4 = ut4_model();
  std::mt19937_64 rng(20260815);
  const SubgroupHandle full = u4->full_subgroup();
  const SubgroupHandle d = u4->commutator_closure(full, full).subgroup;
  REQUIRE(u4->dim(d) == 3);
  std::vector<std::string> first_run;
  for (int i = 0; i < 15; ++i) {
    const Element t = u4->random_member(d, rng);
    const WidthCertificate cert = staged_width(*u4, full, full, t);
    CHECK(cert.verify(*u4));
    CHECK(cert.length() <= 3);
    first_run.push_back(factor_string(*u4, cert));
  }
  // the solver is deterministic: replaying the same targets rebuilds the
  // same factor lists
  std::mt19937_64 rng2(20260815);
  for (int i = 0; i < 15; ++i) {
    const Element t = u4->random_member(d, rng2);
    const WidthCertificate cert = staged_width(*u4, full, full, t);
    CHECK(factor_string(*u4, cert) == first_run[static_cast<size_t>(i)]);
  }
}

TEST_CASE("staged width descends through the affine line") {
  auto g = axb_connected_model();
  const SubgroupHandle full = g->full_subgroup();
  REQUIRE(g->component_index(full) == 1);
  const SubgroupHandle d = g->commutator_closure(full, full).subgroup;
  REQUIRE(g->dim(d) == 1);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 10; ++i) {
    const Element t = g->random_member(d, rng);
    const WidthCertificate cert = staged_width(*g, full, full, t);
    CHECK(cert.verify(*g));
    CHECK(cert.length() <= 1);
  }
}

TEST_CASE("staged width solves a disconnected side through the central stage") {
  auto inv = inversion_model();
  const SubgroupHandle full = inv->full_subgroup();
  const SubgroupHandle line = inv->connected_component(full);
  std::mt19937_64 rng(99);
  const SubgroupHandle d = inv->commutator_closure(line, full).subgroup;
  CHECK(inv->dim(d) == 1);
  for (int i = 0; i < 10; ++i) {
    const Element t = inv->random_member(d, rng);
    const WidthCertificate cert = staged_width(*inv, line, full, t);
    CHECK(cert.verify(*inv));
    CHECK(cert.length() <= 1);
    // starting from the disconnected side swaps internally
    const WidthCertificate swapped = staged_width(*inv, full, line, t);
    CHECK(swapped.verify(*inv));
    CHECK(swapped.length() <= 1);
  }
}

TEST_CASE("staged width rejects unusable inputs") {
  auto hm = heisenberg_model();
  const SubgroupHandle e1 = Subspace::span(3, {v3(1, 0, 0)});
  const SubgroupHandle e2 = Subspace::span(3, {v3(0, 1, 0)});
  CHECK_THROWS_AS(staged_width(*hm, e1, e2, Element{v3(0, 0, 1)}), std::domain_error);
  const SubgroupHandle z = Subspace::span(3, {v3(0, 0, 1)});
  CHECK_THROWS_AS(staged_width(*hm, z, z, Element{v3(1, 0, 0)}), std::domain_error);
}

TEST_CASE("finite width oracle produces minimal certificates") {
  auto s4 = s4_model();
  const SubgroupHandle full = s4->full_subgroup();
  const SubgroupHandle a4 = s4->commutator_closure(full, full).subgroup;
  CHECK(std::get<FiniteSubgroup>(a4).order() == 12);
  const SubgroupHandle v4 = s4->commutator_closure(a4, a4).subgroup;
  CHECK(std::get<FiniteSubgroup>(v4).order() == 4);
  for (const Element& t : s4->enumerate(v4)) {
    const WidthCertificate cert = finite_width_certificate(*s4, a4, a4, t);
    CHECK(cert.verify(*s4));
    if (s4->is_identity(t)) {
      CHECK(cert.length() == 0);
    } else {
      CHECK(cert.length() == 1);  // every nonidentity member is one commutator
    }
  }
}

TEST_CASE("main theorem check on bundled models") {
  std::mt19937_64 rng(0xA55A5AA5);

  SUBCASE("graded nilpotent base with a disconnected torus") {
    auto g = graded_h3_model();
    MainTheoremData data = main_theorem_check(*g, g->full_subgroup(), g->full_subgroup(), rng, 6);
    CHECK(data.report.pass);
    CHECK(data.finite_index == 1);
    CHECK(g->dim(data.component) == 3);
    for (const WidthCertificate& cert : data.certificates) {
      CHECK(cert.verify(*g));
      CHECK(cert.length() <= g->dim(data.component));
    }
  }

  SUBCASE("plane acted on by the dihedral group: genuine finite index") {
    auto g = lbf_d3_model();
    MainTheoremData data = main_theorem_check(*g, g->full_subgroup(), g->full_subgroup(), rng, 6);
    CHECK(data.report.pass);
    CHECK(data.finite_index == 3);
    CHECK(g->dim(data.component) == 2);
    CHECK(data.finite_correction_width >= 1);
    bool saw_correction = false;
    for (const WidthCertificate& cert : data.certificates) {
      CHECK(cert.verify(*g));
      int plain = 0;
      for (const CommutatorFactor& f : cert.factors) {
        if (f.source == "finite-correction") {
          saw_correction = true;
        } else {
          ++plain;
        }
      }
      CHECK(plain <= g->dim(data.component));
    }
    CHECK(saw_correction);
  }

  SUBCASE("finite symmetric group") {
    auto g = s4_model();
    MainTheoremData data = main_theorem_check(*g, g->full_subgroup(), g->full_subgroup(), rng, 8);
    CHECK(data.report.pass);
    CHECK(std::get<FiniteSubgroup>(data.closure.subgroup).order() == 12);
    for (const WidthCertificate& cert : data.certificates) CHECK(cert.verify(*g));
  }

  SUBCASE("inversion action: the closure is all of the acted-on line") {
    auto g = inversion_model();
    const SubgroupHandle line = g->connected_component(g->full_subgroup());
    MainTheoremData data = main_theorem_check(*g, line, g->full_subgroup(), rng, 6);
    CHECK(data.report.pass);
    CHECK(g->dim(data.closure.subgroup) == 1);
    CHECK(data.finite_index == 1);
  }
}

TEST_CASE("series and solvable structure reports pass on every bundled model") {
  for (const auto& m : all_models()) {
    CAPTURE(m->name());
    const SeriesData data = series_and_solvable_checks(*m);
    for (const LemmaReport& r : data.reports) {
      CAPTURE(r.id);
      CAPTURE(r.details.empty() ? std::string("-") : r.details.front());
      CHECK(r.pass);
    }
  }
}

TEST_CASE("hx commutator with a normalizing overset") {
  std::mt19937_64 rng(20260815);

  SUBCASE("translations of the affine line") {
    auto g = axb_connected_model();
    const SubgroupHandle h = TbuSubgroup{TorusPart::Trivial, Subspace::full(1)};
    const std::vector<Element> xs{Element{TbuElement{q(2), {q(0)}}}};
    HxData data = hx_check(*g, h, xs, rng, 6);
    CHECK(data.report.pass);
    CHECK(g->dim(data.commutator) == 1);
    CHECK(g->contains_subgroup(h, data.commutator));
    for (const WidthCertificate& cert : data.certificates) {
      CHECK(cert.verify(*g));
      CHECK(cert.length() <= 1);
    }
  }

  SUBCASE("unipotent part of the graded model: nonabelian subgroup") {
    auto g = graded_h3_model();
    const SubgroupHandle h = TbuSubgroup{TorusPart::Trivial, Subspace::full(3)};
    const std::vector<Element> xs{Element{TbuElement{q(2), v3(0, 0, 0)}}};
    HxData data = hx_check(*g, h, xs, rng, 6);
    CHECK(data.report.pass);
    CHECK(g->contains_subgroup(h, data.commutator));
    CHECK(g->dim(data.commutator) == 3);
    for (const WidthCertificate& cert : data.certificates) {
      CHECK(cert.verify(*g));
      CHECK(cert.length() <= 3);
    }
  }

  SUBCASE("premise violations throw") {
    auto g = graded_h3_model();
    const SubgroupHandle h = TbuSubgroup{TorusPart::Trivial, Subspace::full(3)};
    std::mt19937_64 r2(1);
    CHECK_THROWS_AS(hx_check(*g, g->full_subgroup(), {}, r2, 0), std::domain_error);
    (void)h;
  }
}

TEST_CASE("axiom battery passes on every bundled model") {
  for (const auto& m : all_models()) {
    CAPTURE(m->name());
    std::mt19937_64 rng(20260815);
    for (const LemmaReport& r : axiom_battery(*m, rng, 12)) {
      CAPTURE(r.id);
      CAPTURE(r.details.empty() ? std::string("-") : r.details.front());
      CHECK(r.pass);
    }
  }
}
