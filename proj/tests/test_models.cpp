#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>
#include <random>
#include <stdexcept>
#include <vector>

#include "grouplab/finite_group.hpp"
#include "grouplab/lie_algebra.hpp"
#include "grouplab/model.hpp"

using namespace grouplab;

namespace {

Rational q(long n, long d = 1) { return Rational(n, d); }

FiniteGroup c2() { return FiniteGroup::from_table({{0, 1}, {1, 0}}, "c2"); }

FiniteGroup klein() {
  return FiniteGroup::from_table(
      {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}}, "c2 x c2");
}

FiniteGroup q8() {
  // 1, -1, i, -i, j, -j, k, -k
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

FiniteGroup s3() { return FiniteGroup::from_permutations({{2, 1, 3}, {2, 3, 1}}, "s3"); }

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

// the line acted on by inversion
std::shared_ptr<const GroupModel> inversion_model() {
  return make_lbf_model(1, c2(), {m1(1), m1(-1)}, "line by inversion");
}

// the plane acted on by the coordinate swap: fixed line and antidiagonal line
std::shared_ptr<const GroupModel> swap_model() {
  return make_lbf_model(2, c2(), {Matrix::identity(2), m2(0, 1, 1, 0)}, "plane by swap");
}

// klein four group acting through a quotient: one factor acts by inversion,
// the other is a genuinely finite central direction
std::shared_ptr<const GroupModel> klein_model() {
  return make_lbf_model(1, klein(), {m1(1), m1(1), m1(-1), m1(-1)}, "line by klein");
}

NilpotentLieAlgebra h3() {
  return NilpotentLieAlgebra(3, {{{0, 1}, {q(0), q(0), q(1)}}}, "h3");
}

std::shared_ptr<const GroupModel> axb_model() {
  return make_tbu_model(NilpotentLieAlgebra(1, {}, "line"), {1}, "affine line");
}

std::shared_ptr<const GroupModel> graded_h3_model() {
  return make_tbu_model(h3(), {1, 1, 2}, "graded h3");
}

std::shared_ptr<const GroupModel> even_weight_model() {
  return make_tbu_model(NilpotentLieAlgebra(1, {}, "line"), {2}, "even weight line");
}

Vec v3(long a, long b, long c) { return {q(a), q(b), q(c)}; }

}  // namespace

TEST_CASE("finite model wraps the table group") {
  auto m = make_finite_model(q8());
  CHECK(m->kind() == "finite");
  CHECK(m->dim(m->full_subgroup()) == 0);
  CHECK(m->is_finite_subgroup(m->full_subgroup()));
  CHECK(m->enumerate(m->full_subgroup()).size() == 8);
  CHECK(m->component_index(m->full_subgroup()) == 8);
  CHECK(m->connected_component(m->full_subgroup()) == m->trivial_subgroup());

  SUBCASE("group law against the table") {
    // i * j = k, i^2 = -1
    CHECK(m->eq(m->mul(2, 4), 6));
    CHECK(m->eq(m->mul(2, 2), 1));
    CHECK(m->eq(m->inv(2), 3));
    CHECK(m->is_identity(m->mul(2, m->inv(2))));
    CHECK(m->eq(m->pow(2, 4), 0));
    CHECK(m->eq(m->pow(2, -1), 3));
  }

  SUBCASE("commutator closure is the derived subgroup with exact width") {
    GroupModel::Closure c = m->commutator_closure(m->full_subgroup(), m->full_subgroup());
    CHECK(m->dim(c.subgroup) == 0);
    CHECK(m->enumerate(c.subgroup).size() == 2);  // {1, -1}
    CHECK(c.width_bound == 1);
    CHECK(m->contains(c.subgroup, 1));
  }

  SUBCASE("centralizer and center") {
    SubgroupHandle z = m->center();
    CHECK(m->enumerate(z).size() == 2);
    CHECK(m->contains(z, 1));
  }

  SUBCASE("quotient by the center is the klein four group") {
    QuotientResult qr = m->quotient(m->full_subgroup(), m->center());
    REQUIRE(qr.model->kind() == "finite");
    CHECK(qr.model->enumerate(qr.model->full_subgroup()).size() == 4);
    GroupModel::Closure derived =
        qr.model->commutator_closure(qr.model->full_subgroup(), qr.model->full_subgroup());
    CHECK(qr.model->enumerate(derived.subgroup).size() == 1);
    for (const Element& a : m->enumerate(m->full_subgroup())) {
      for (const Element& b : m->enumerate(m->full_subgroup())) {
        CHECK(qr.model->eq(qr.project(m->mul(a, b)),
                           qr.model->mul(qr.project(a), qr.project(b))));
      }
      CHECK(qr.model->eq(qr.project(qr.lift(qr.project(a))), qr.project(a)));
    }
    CHECK(qr.push_subgroup(m->center()) == qr.model->trivial_subgroup());
    CHECK(qr.lift_subgroup(qr.model->full_subgroup()) == m->full_subgroup());
  }

  SUBCASE("fitting and radical of a nilpotent group are everything") {
    CHECK(m->fitting_subgroup() == m->full_subgroup());
    CHECK(m->solvable_radical() == m->full_subgroup());
  }
}

TEST_CASE("malcev model carries the nilpotent group exactly") {
  auto m = make_malcev_model(h3());
  SubgroupHandle full = m->full_subgroup();
  SubgroupHandle center = Subspace::span(3, {v3(0, 0, 1)});

  CHECK(m->kind() == "malcev");
  CHECK(m->dim(full) == 3);
  CHECK(m->dim(m->trivial_subgroup()) == 0);
  CHECK(m->is_finite_subgroup(m->trivial_subgroup()));
  CHECK_FALSE(m->is_finite_subgroup(full));
  CHECK(m->component_index(full) == 1);
  CHECK(m->connected_component(full) == full);

  SUBCASE("bch law, inverses, and commutators") {
    Element x = Vec{q(1), q(0), q(0)};
    Element y = Vec{q(0), q(1), q(0)};
    CHECK(m->eq(m->mul(x, y), Vec{q(1), q(1), q(1, 2)}));
    CHECK(m->is_identity(m->mul(x, m->inv(x))));
    CHECK(m->eq(m->comm(x, y), v3(0, 0, 1)));
  }

  SUBCASE("centralizer of the whole group is the center line") {
    CHECK(m->centralizer_of(full) == center);
    CHECK(m->centralizer_of(center) == full);
  }

  SUBCASE("commutator closure: the derived subgroup is the center, one step") {
    GroupModel::Closure c = m->commutator_closure(full, full);
    CHECK(c.subgroup == center);
    CHECK(c.width_bound == 1);
    GroupModel::Closure central = m->commutator_closure(full, center);
    CHECK(central.subgroup == m->trivial_subgroup());
    CHECK(central.width_bound == 0);
  }

  SUBCASE("ad image and commutator solving") {
    Element x = Vec{q(1), q(0), q(0)};
    CHECK(m->ad_image(full, x) == center);
    std::optional<Element> s = m->solve_commutator(full, x, v3(0, 0, 5));
    REQUIRE(s.has_value());
    CHECK(m->eq(m->comm(*s, x), v3(0, 0, 5)));
    CHECK_FALSE(m->solve_commutator(full, x, v3(0, 1, 0)).has_value());
  }

  SUBCASE("normal closure grows a line to an ideal") {
    SubgroupHandle line = Subspace::span(3, {v3(1, 0, 0)});
    SubgroupHandle nc = m->normal_closure(line);
    CHECK(m->dim(nc) == 2);
    CHECK(m->normalizes_subgroup(full, nc));
    CHECK(m->normal_closure(nc) == nc);
  }

  SUBCASE("product of the two coordinate planes is the whole group") {
    SubgroupHandle p1 = Subspace::span(3, {v3(1, 0, 0), v3(0, 0, 1)});
    SubgroupHandle p2 = Subspace::span(3, {v3(0, 1, 0), v3(0, 0, 1)});
    CHECK(m->normalizes_subgroup(p1, p2));
    CHECK(m->product_subgroup(p1, p2) == full);
    CHECK(m->dim(m->product_subgroup(p1, p2)) == 3);
  }

  SUBCASE("quotient by the center is the abelian plane") {
    QuotientResult qr = m->quotient(full, center);
    REQUIRE(qr.model->kind() == "malcev");
    CHECK(qr.model->dim(qr.image) == 2);
    GroupModel::Closure derived =
        qr.model->commutator_closure(qr.model->full_subgroup(), qr.model->full_subgroup());
    CHECK(derived.subgroup == qr.model->trivial_subgroup());
    std::mt19937_64 rng(7);
    for (int i = 0; i < 25; ++i) {
      Element a = m->random_element(rng);
      Element b = m->random_element(rng);
      CHECK(qr.model->eq(qr.project(m->mul(a, b)),
                         qr.model->mul(qr.project(a), qr.project(b))));
      CHECK(qr.model->eq(qr.project(qr.lift(qr.project(a))), qr.project(a)));
    }
    CHECK(qr.lift_subgroup(qr.model->trivial_subgroup()) == center);
    CHECK(qr.push_subgroup(full) == qr.model->full_subgroup());
  }

  SUBCASE("quotient by the trivial subgroup keeps the kind and dimension") {
    QuotientResult qr = m->quotient(full, m->trivial_subgroup());
    CHECK(qr.model->kind() == "malcev");
    CHECK(qr.model->dim(qr.model->full_subgroup()) == 3);
  }

  SUBCASE("fitting and radical of a nilpotent model are everything") {
    CHECK(m->fitting_subgroup() == full);
    CHECK(m->solvable_radical() == full);
  }
}

TEST_CASE("lbf model: the line acted on by inversion") {
  auto m = inversion_model();
  SubgroupHandle full = m->full_subgroup();
  SubgroupHandle a = LbfSubgroup{Subspace::full(1), FiniteSubgroup{{0}}};

  CHECK(m->kind() == "lbf");
  CHECK(m->dim(full) == 1);
  CHECK(m->component_index(full) == 2);
  CHECK(m->connected_component(full) == a);

  SUBCASE("semidirect law") {
    Element g = LbfElement{{q(3)}, 1};   // translate by 3 then invert
    Element h = LbfElement{{q(1)}, 0};   // translate by 1
    CHECK(m->eq(m->mul(g, h), LbfElement{{q(2)}, 1}));
    CHECK(m->is_identity(m->mul(g, m->inv(g))));
    // conjugating a translation by the inversion flips it
    CHECK(m->eq(m->conj(h, g), LbfElement{{q(-1)}, 0}));
  }

  SUBCASE("the commutator of the component with the full group is the component") {
    GroupModel::Closure ab = m->commutator_closure(a, full);
    CHECK(ab.subgroup == a);
    CHECK(ab.width_bound == 1);
    SubgroupHandle b0 = m->connected_component(full);
    GroupModel::Closure abo = m->commutator_closure(a, b0);
    CHECK(abo.subgroup == m->trivial_subgroup());
    CHECK(m->dim(abo.subgroup) == 0);
  }

  SUBCASE("main decomposition instance") {
    GroupModel::Closure ab = m->commutator_closure(full, full);
    SubgroupHandle lhs = m->connected_component(ab.subgroup);
    SubgroupHandle c1 = m->commutator_closure(m->connected_component(full), full).subgroup;
    SubgroupHandle c2 = m->commutator_closure(full, m->connected_component(full)).subgroup;
    CHECK(m->normalizes_subgroup(c1, c2));
    CHECK(lhs == m->product_subgroup(c1, c2));
  }

  SUBCASE("the center is trivial and the fitting subgroup is the line") {
    CHECK(m->center() == m->trivial_subgroup());
    CHECK(m->fitting_subgroup() == a);
    CHECK(m->solvable_radical() == full);
  }

  SUBCASE("dividing out the line leaves the finite bit") {
    QuotientResult qr = m->quotient(full, a);
    REQUIRE(qr.model->kind() == "finite");
    CHECK(qr.model->enumerate(qr.model->full_subgroup()).size() == 2);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 20; ++i) {
      Element x = m->random_element(rng);
      Element y = m->random_element(rng);
      CHECK(qr.model->eq(qr.project(m->mul(x, y)),
                         qr.model->mul(qr.project(x), qr.project(y))));
    }
    CHECK(qr.lift_subgroup(qr.model->full_subgroup()) == full);
    CHECK(qr.push_subgroup(a) == qr.model->trivial_subgroup());
  }

  SUBCASE("dividing by the trivial subgroup keeps the kind") {
    QuotientResult qr = m->quotient(full, m->trivial_subgroup());
    CHECK(qr.model->kind() == "lbf");
    CHECK(qr.model->dim(qr.model->full_subgroup()) == 1);
    CHECK(qr.model->component_index(qr.model->full_subgroup()) == 2);
  }
}

TEST_CASE("lbf model: the plane acted on by the swap") {
  auto m = swap_model();
  SubgroupHandle full = m->full_subgroup();
  Subspace fixed = Subspace::span(2, {{q(1), q(1)}});
  Subspace anti = Subspace::span(2, {{q(1), q(-1)}});

  CHECK(m->dim(full) == 2);

  SUBCASE("center is the fixed line") {
    CHECK(m->center() == SubgroupHandle(LbfSubgroup{fixed, FiniteSubgroup{{0}}}));
  }

  SUBCASE("derived subgroup is the antidiagonal line with width one") {
    GroupModel::Closure c = m->commutator_closure(full, full);
    CHECK(c.subgroup == SubgroupHandle(LbfSubgroup{anti, FiniteSubgroup{{0}}}));
    CHECK(c.width_bound == 1);
    CHECK(m->connected_component(c.subgroup) == c.subgroup);
  }

  SUBCASE("centralizer of the antidiagonal line") {
    SubgroupHandle h = LbfSubgroup{anti, FiniteSubgroup{{0}}};
    SubgroupHandle c = m->centralizer_of(h);
    // translations all commute; the swap moves the antidiagonal
    CHECK(c == SubgroupHandle(LbfSubgroup{Subspace::full(2), FiniteSubgroup{{0}}}));
  }

  SUBCASE("solving a commutator against the swap") {
    Element swap = LbfElement{{q(0), q(0)}, 1};
    SubgroupHandle comp = m->connected_component(full);
    SubgroupHandle img = m->ad_image(comp, swap);
    CHECK(img == SubgroupHandle(LbfSubgroup{anti, FiniteSubgroup{{0}}}));
    std::optional<Element> s = m->solve_commutator(comp, swap, LbfElement{{q(2), q(-2)}, 0});
    REQUIRE(s.has_value());
    CHECK(m->eq(m->comm(*s, swap), LbfElement{{q(2), q(-2)}, 0}));
    CHECK_FALSE(m->solve_commutator(comp, swap, LbfElement{{q(1), q(1)}, 0}).has_value());
  }
}

TEST_CASE("lbf model: central finite bits behave like the structure theory says") {
  auto m = klein_model();
  SubgroupHandle full = m->full_subgroup();
  auto rep = std::vector<Matrix>{m1(1), m1(1), m1(-1), m1(-1)};
  FiniteGroup f = klein();

  SUBCASE("center picks out the kernel direction") {
    // elements (0, f) with rep(f) = 1 and f central: the first factor
    CHECK(m->center() == SubgroupHandle(LbfSubgroup{Subspace(1), FiniteSubgroup{{0, 1}}}));
  }

  SUBCASE("a normal subgroup is central exactly when its component is") {
    std::mt19937_64 rng(20260815);
    SubgroupHandle z = m->center();
    int nontrivial = 0;
    for (int i = 0; i < 60; ++i) {
      SubgroupHandle h = m->normal_closure(m->random_subgroup(rng));
      SubgroupHandle comp = m->connected_component(h);
      bool central = m->contains_subgroup(z, h);
      bool comp_central = m->contains_subgroup(z, comp);
      CHECK(central == comp_central);
      if (comp_central && m->component_index(h) > 1) ++nontrivial;
    }
    CHECK(nontrivial > 0);  // the battery saw cases with a genuine finite bit
  }

  SUBCASE("normal nilpotent subgroups split into center times component") {
    std::mt19937_64 rng(0xA55A5AA5);
    SubgroupHandle z = m->center();
    int nontrivial = 0;
    for (int i = 0; i < 60; ++i) {
      SubgroupHandle h = m->normal_closure(m->random_subgroup(rng));
      const auto& hs = std::get<LbfSubgroup>(h);
      bool acts_trivially = true;
      for (int member : hs.s.members) {
        for (int r = 0; r < hs.w.dim(); ++r) {
          acts_trivially =
              acts_trivially && hs.w.basis_vector(r) == rep[static_cast<size_t>(member)].apply(
                                                            hs.w.basis_vector(r));
        }
      }
      if (!acts_trivially || !f.is_nilpotent(hs.s)) continue;
      SubgroupHandle comp = m->connected_component(h);
      SubgroupHandle zh = m->intersect_subgroups(z, h);
      CHECK(m->product_subgroup(zh, comp) == h);
      if (m->component_index(h) > 1) ++nontrivial;
    }
    CHECK(nontrivial > 0);
  }
}

TEST_CASE("tbu model: the affine line") {
  auto m = axb_model();
  SubgroupHandle full = m->full_subgroup();
  SubgroupHandle translations = TbuSubgroup{TorusPart::Trivial, Subspace::full(1)};

  CHECK(m->kind() == "tbu");
  CHECK(m->dim(full) == 2);
  CHECK(m->component_index(full) == 2);
  CHECK(m->connected_component(full) ==
        SubgroupHandle(TbuSubgroup{TorusPart::Positive, Subspace::full(1)}));

  SUBCASE("group law: scaling composes with translation") {
    Element g = TbuElement{q(2), {q(0)}};
    Element h = TbuElement{q(1), {q(3)}};
    CHECK(m->eq(m->mul(g, h), TbuElement{q(2), {q(6)}}));
    CHECK(m->eq(m->mul(h, g), TbuElement{q(2), {q(3)}}));
    CHECK(m->is_identity(m->mul(g, m->inv(g))));
  }

  SUBCASE("derived subgroup is the translation line") {
    GroupModel::Closure c = m->commutator_closure(full, full);
    CHECK(c.subgroup == translations);
    CHECK(c.width_bound == 1);
    CHECK(m->connected_component(c.subgroup) == c.subgroup);
    SubgroupHandle comp = m->connected_component(full);
    SubgroupHandle c1 = m->commutator_closure(comp, full).subgroup;
    SubgroupHandle c2 = m->commutator_closure(full, comp).subgroup;
    CHECK(m->connected_component(c.subgroup) == m->product_subgroup(c1, c2));
  }

  SUBCASE("the center is trivial, the fitting subgroup is the translation line") {
    CHECK(m->center() == m->trivial_subgroup());
    CHECK(m->fitting_subgroup() == translations);
    CHECK(m->solvable_radical() == full);
    CHECK(m->normalizes_subgroup(full, m->fitting_subgroup()));
  }

  SUBCASE("solving a commutator against a pure scaling") {
    Element x = TbuElement{q(3), {q(0)}};
    SubgroupHandle comp = m->connected_component(full);
    CHECK(m->ad_image(comp, x) == SubgroupHandle(TbuSubgroup{TorusPart::Trivial, Subspace::full(1)}));
    std::optional<Element> s = m->solve_commutator(comp, x, TbuElement{q(1), {q(1)}});
    REQUIRE(s.has_value());
    CHECK(m->eq(m->comm(*s, x), TbuElement{q(1), {q(1)}}));
  }

  SUBCASE("the commutator parametrization refuses a torus that acts") {
    SubgroupHandle comp = m->connected_component(full);
    Element x = TbuElement{q(1), {q(1)}};  // a translation: the torus direction of H acts on it
    CHECK_THROWS_AS((void)m->ad_image(comp, x), std::domain_error);
  }

  SUBCASE("dividing by the translations leaves the torus") {
    QuotientResult qr = m->quotient(full, translations);
    REQUIRE(qr.model->kind() == "tbu");
    CHECK(qr.model->dim(qr.image) == 1);
    std::mt19937_64 rng(42);
    for (int i = 0; i < 20; ++i) {
      Element x = m->random_element(rng);
      Element y = m->random_element(rng);
      CHECK(qr.model->eq(qr.project(m->mul(x, y)),
                         qr.model->mul(qr.project(x), qr.project(y))));
      CHECK(qr.model->eq(qr.project(qr.lift(qr.project(x))), qr.project(x)));
    }
    CHECK(qr.lift_subgroup(qr.image) == full);
  }

  SUBCASE("dividing by everything leaves the one point group") {
    QuotientResult qr = m->quotient(full, full);
    REQUIRE(qr.model->kind() == "finite");
    CHECK(qr.model->enumerate(qr.model->full_subgroup()).size() == 1);
  }

  SUBCASE("the torsion flag carries the finite bit") {
    SubgroupHandle torsion = TbuSubgroup{TorusPart::Torsion, Subspace::full(1)};
    CHECK(m->valid_handle(torsion));
    CHECK(m->dim(torsion) == 1);
    CHECK(m->component_index(torsion) == 2);
    CHECK(m->connected_component(torsion) == translations);
    QuotientResult qr = m->quotient(torsion, translations);
    REQUIRE(qr.model->kind() == "finite");
    CHECK(qr.model->enumerate(qr.model->full_subgroup()).size() == 2);
  }
}

TEST_CASE("tbu model: the graded heisenberg group") {
  auto m = graded_h3_model();
  SubgroupHandle full = m->full_subgroup();

  CHECK(m->dim(full) == 4);
  CHECK(m->center() == m->trivial_subgroup());

  SUBCASE("weights must be additive under the bracket") {
    CHECK_THROWS_AS(make_tbu_model(h3(), {1, 1, 3}, "bad"), std::invalid_argument);
    CHECK_THROWS_AS(make_tbu_model(h3(), {1, 1}, "bad"), std::invalid_argument);
  }

  SUBCASE("derived subgroup is the full unipotent part") {
    GroupModel::Closure c = m->commutator_closure(full, full);
    CHECK(c.subgroup == SubgroupHandle(TbuSubgroup{TorusPart::Trivial, Subspace::full(3)}));
    CHECK(c.width_bound == 3);
    CHECK(m->contains_subgroup(m->fitting_subgroup(), c.subgroup));
  }

  SUBCASE("unipotent commutators still work through the group law") {
    SubgroupHandle line = TbuSubgroup{TorusPart::Trivial, Subspace::span(3, {v3(1, 0, 0)})};
    Element x = TbuElement{q(1), v3(0, 1, 0)};
    SubgroupHandle img = m->ad_image(line, x);
    CHECK(img == SubgroupHandle(TbuSubgroup{TorusPart::Trivial, Subspace::span(3, {v3(0, 0, 1)})}));
    std::optional<Element> s = m->solve_commutator(line, x, TbuElement{q(1), v3(0, 0, 2)});
    REQUIRE(s.has_value());
    CHECK(m->eq(m->comm(*s, x), TbuElement{q(1), v3(0, 0, 2)}));
  }

  SUBCASE("graded quotient keeps the torus and the surviving weights") {
    SubgroupHandle center_line =
        TbuSubgroup{TorusPart::Trivial, Subspace::span(3, {v3(0, 0, 1)})};
    CHECK(m->normalizes_subgroup(full, center_line));
    QuotientResult qr = m->quotient(full, center_line);
    REQUIRE(qr.model->kind() == "tbu");
    CHECK(qr.model->dim(qr.image) == 3);
    GroupModel::Closure derived =
        qr.model->commutator_closure(qr.model->full_subgroup(), qr.model->full_subgroup());
    // the image is abelian as a unipotent group but the torus still twists it
    CHECK(qr.model->dim(derived.subgroup) == 2);
    std::mt19937_64 rng(99);
    for (int i = 0; i < 20; ++i) {
      Element x = m->random_element(rng);
      Element y = m->random_element(rng);
      CHECK(qr.model->eq(qr.project(m->mul(x, y)),
                         qr.model->mul(qr.project(x), qr.project(y))));
      CHECK(qr.model->eq(qr.project(qr.lift(qr.project(x))), qr.project(x)));
    }
    // restricted additivity: dim G = dim image + dim kernel
    CHECK(m->dim(full) == qr.model->dim(qr.image) + m->dim(center_line));
  }

  SUBCASE("quotient by the unipotent part keeps a bare torus") {
    SubgroupHandle uni = TbuSubgroup{TorusPart::Trivial, Subspace::full(3)};
    QuotientResult qr = m->quotient(full, uni);
    REQUIRE(qr.model->kind() == "tbu");
    CHECK(qr.model->dim(qr.image) == 1);
    CHECK(qr.model->component_index(qr.image) == 2);
    Element g = TbuElement{q(5), v3(1, 2, 3)};
    Element lifted = qr.lift(qr.project(g));
    CHECK(qr.model->eq(qr.project(lifted), qr.project(g)));
  }
}

TEST_CASE("tbu model: unsupported quotients are refused with a reason") {
  SUBCASE("a non graded subgroup cannot keep its torus") {
    auto m = make_tbu_model(NilpotentLieAlgebra(2, {}, "plane"), {1, 3}, "mixed odd weights");
    SubgroupHandle g = TbuSubgroup{TorusPart::Torsion, Subspace::span(2, {{q(1), q(1)}})};
    REQUIRE(m->valid_handle(g));
    CHECK_THROWS_WITH_AS(
        (void)m->quotient(g, TbuSubgroup{TorusPart::Trivial, Subspace(2)}),
        "quotient: the torus action does not descend, subspaces not graded", std::domain_error);
  }
  SUBCASE("a torsion denominator leaves the model family") {
    auto m = even_weight_model();
    SubgroupHandle n = TbuSubgroup{TorusPart::Torsion, Subspace(1)};
    REQUIRE(m->normalizes_subgroup(m->full_subgroup(), n));
    CHECK_THROWS_AS((void)m->quotient(m->full_subgroup(), n), std::domain_error);
  }
}

TEST_CASE("axioms and dimension laws hold across all models") {
  std::vector<std::shared_ptr<const GroupModel>> models = {
      make_finite_model(q8()),
      make_finite_model(s3()),
      make_malcev_model(h3()),
      make_malcev_model(ut_algebra(4)),
      inversion_model(),
      swap_model(),
      klein_model(),
      axb_model(),
      graded_h3_model(),
      even_weight_model(),
  };

  for (const auto& m : models) {
    CAPTURE(m->name());
    std::mt19937_64 rng(20260815);

    SUBCASE("handles are valid and dimension zero characterizes finiteness") {
      CHECK(m->valid_handle(m->full_subgroup()));
      CHECK(m->valid_handle(m->trivial_subgroup()));
      CHECK(m->is_finite_subgroup(m->trivial_subgroup()));
      CHECK(m->dim(m->trivial_subgroup()) == 0);
      for (int i = 0; i < 20; ++i) {
        SubgroupHandle h = m->random_subgroup(rng);
        CHECK(m->valid_handle(h));
        CHECK((m->dim(h) == 0) == m->is_finite_subgroup(h));
        if (m->is_finite_subgroup(h)) {
          CHECK(m->enumerate(h).size() >= 1);
        }
      }
    }

    SUBCASE("members sampled from a handle stay inside it") {
      for (int i = 0; i < 12; ++i) {
        SubgroupHandle h = m->random_subgroup(rng);
        Element a = m->random_member(h, rng);
        Element b = m->random_member(h, rng);
        CHECK(m->contains(h, a));
        CHECK(m->contains(h, m->mul(a, b)));
        CHECK(m->contains(h, m->inv(a)));
        CHECK(m->contains(h, m->identity()));
      }
    }

    SUBCASE("generic word helpers agree with the law") {
      for (int i = 0; i < 8; ++i) {
        Element a = m->random_element(rng);
        Element b = m->random_element(rng);
        CHECK(m->eq(m->conj(a, b), m->mul(m->inv(b), m->mul(a, b))));
        CHECK(m->eq(m->comm(a, b), m->mul(m->inv(a), m->conj(a, b))));
        CHECK(m->eq(m->pow(a, -3), m->inv(m->pow(a, 3))));
        CHECK(m->is_identity(m->comm(a, a)));
      }
    }

    SUBCASE("the dimension is additive on products with a normal factor") {
      for (int i = 0; i < 100; ++i) {
        SubgroupHandle h = m->random_subgroup(rng);
        SubgroupHandle n = m->normal_closure(m->random_subgroup(rng));
        REQUIRE(m->normalizes_subgroup(h, n));
        SubgroupHandle hn = m->product_subgroup(h, n);
        SubgroupHandle cap = m->intersect_subgroups(h, n);
        CHECK(m->dim(hn) == m->dim(h) + m->dim(n) - m->dim(cap));
        CHECK(m->contains_subgroup(hn, h));
        CHECK(m->contains_subgroup(hn, n));
        CHECK(m->contains_subgroup(h, cap));
      }
    }

    SUBCASE("connected components are idempotent and the product of connected is connected") {
      for (int i = 0; i < 30; ++i) {
        SubgroupHandle h = m->random_subgroup(rng);
        SubgroupHandle comp = m->connected_component(h);
        CHECK(m->contains_subgroup(h, comp));
        CHECK(m->connected_component(comp) == comp);
        CHECK(m->component_index(comp) == 1);
        CHECK((m->component_index(h) == 1) == (comp == h));
        SubgroupHandle n = m->connected_component(m->normal_closure(m->random_subgroup(rng)));
        SubgroupHandle p = m->product_subgroup(comp, n);
        CHECK(m->component_index(p) == 1);
      }
    }

    SUBCASE("centralizers centralize") {
      for (int i = 0; i < 10; ++i) {
        SubgroupHandle h = m->random_subgroup(rng);
        SubgroupHandle c = m->centralizer_of(h);
        CHECK(m->valid_handle(c));
        for (int j = 0; j < 6; ++j) {
          Element x = m->random_member(c, rng);
          Element y = m->random_member(h, rng);
          CHECK(m->is_identity(m->comm(x, y)));
        }
      }
    }

    SUBCASE("normal closures are normal and idempotent") {
      for (int i = 0; i < 10; ++i) {
        SubgroupHandle h = m->random_subgroup(rng);
        SubgroupHandle n = m->normal_closure(h);
        CHECK(m->contains_subgroup(n, h));
        CHECK(m->normalizes_subgroup(m->full_subgroup(), n));
        CHECK(m->normal_closure(n) == n);
      }
    }

    SUBCASE("fitting and radical are normal and nested") {
      SubgroupHandle f = m->fitting_subgroup();
      SubgroupHandle r = m->solvable_radical();
      CHECK(m->valid_handle(f));
      CHECK(m->valid_handle(r));
      CHECK(m->normalizes_subgroup(m->full_subgroup(), f));
      CHECK(m->normalizes_subgroup(m->full_subgroup(), r));
      CHECK(m->contains_subgroup(r, f));
    }

    SUBCASE("commutators of normal pairs land in the computed closure") {
      for (int i = 0; i < 12; ++i) {
        SubgroupHandle a = m->normal_closure(m->random_subgroup(rng));
        SubgroupHandle b = m->normal_closure(m->random_subgroup(rng));
        GroupModel::Closure c = m->commutator_closure(a, b);
        CHECK(m->valid_handle(c.subgroup));
        CHECK(c.width_bound >= 0);
        CHECK(m->commutator_closure(b, a).subgroup == c.subgroup);
        CHECK(m->contains_subgroup(m->intersect_subgroups(a, b), c.subgroup));
        for (int j = 0; j < 5; ++j) {
          Element x = m->random_member(a, rng);
          Element y = m->random_member(b, rng);
          CHECK(m->contains(c.subgroup, m->comm(x, y)));
        }
      }
    }

    SUBCASE("the component of a commutator factors through the components") {
      for (int i = 0; i < 12; ++i) {
        SubgroupHandle a = m->normal_closure(m->random_subgroup(rng));
        SubgroupHandle b = m->normal_closure(m->random_subgroup(rng));
        SubgroupHandle ao = m->connected_component(a);
        SubgroupHandle bo = m->connected_component(b);
        SubgroupHandle lhs = m->connected_component(m->commutator_closure(a, b).subgroup);
        SubgroupHandle c1 = m->commutator_closure(ao, b).subgroup;
        SubgroupHandle c2 = m->commutator_closure(a, bo).subgroup;
        SubgroupHandle rhs = m->product_subgroup(c1, c2);
        CHECK(lhs == rhs);
      }
    }

    SUBCASE("descending chains shrink in dimension then index") {
      SubgroupHandle chain = m->full_subgroup();
      for (int i = 0; i < 25; ++i) {
        SubgroupHandle next = m->intersect_subgroups(chain, m->random_subgroup(rng));
        CHECK(m->dim(next) <= m->dim(chain));
        if (m->dim(next) == m->dim(chain)) {
          CHECK(m->component_index(next) <= m->component_index(chain));
        }
        chain = next;
      }
    }

    SUBCASE("quotients by connected normal subgroups satisfy restricted additivity") {
      SubgroupHandle n = m->connected_component(m->fitting_subgroup());
      QuotientResult qr = m->quotient(m->full_subgroup(), n);
      CHECK(m->dim(m->full_subgroup()) == qr.model->dim(qr.image) + m->dim(n));
      for (int i = 0; i < 15; ++i) {
        Element x = m->random_element(rng);
        Element y = m->random_element(rng);
        CHECK(qr.model->eq(qr.project(m->mul(x, y)),
                           qr.model->mul(qr.project(x), qr.project(y))));
        Element down = qr.project(x);
        CHECK(qr.model->eq(qr.project(qr.lift(down)), down));
      }
      SubgroupHandle up = qr.lift_subgroup(qr.push_subgroup(n));
      CHECK(m->contains_subgroup(up, n));
      CHECK(qr.push_subgroup(up) == qr.push_subgroup(n));
    }
  }
}
