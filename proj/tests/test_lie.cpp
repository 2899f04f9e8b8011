#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "grouplab/lie_algebra.hpp"

using namespace grouplab;

namespace {

Vec v3(long a, long b, long c) { return {Rational(a), Rational(b), Rational(c)}; }

Vec random_vec(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<long> num(-6, 6);
  std::uniform_int_distribution<long> den(1, 3);
  Vec v(static_cast<size_t>(n));
  for (auto& x : v) x = Rational(num(rng), den(rng));
  return v;
}

NilpotentLieAlgebra abelian(int dim) { return NilpotentLieAlgebra(dim, {}, "abelian"); }

// dim 3, [X,Y] = Z, Z central
NilpotentLieAlgebra heisenberg() {
  return NilpotentLieAlgebra(3, {{{0, 1}, v3(0, 0, 1)}}, "h3");
}

// dim 4, [e0,e1] = e2, [e0,e2] = e3: one maximal-length chain, class 3
NilpotentLieAlgebra filiform4() {
  return NilpotentLieAlgebra(4,
                             {{{0, 1}, {Rational(0), Rational(0), Rational(1), Rational(0)}},
                              {{0, 2}, {Rational(0), Rational(0), Rational(0), Rational(1)}}},
                             "l4");
}

// strict-upper-triangular basis position of (i,j), i < j, lexicographic
int utpos(int size, int i, int j) {
  int idx = 0;
  for (int r = 0; r < i; ++r) idx += size - 1 - r;
  return idx + (j - i - 1);
}

Vec ut_unit(int size, int i, int j) {
  return vec_unit(utpos(size, i, j), size * (size - 1) / 2);
}

std::vector<int> series_dims(const std::vector<Subspace>& chain) {
  std::vector<int> d;
  for (const auto& s : chain) d.push_back(s.dim());
  return d;
}

}  // namespace

TEST_CASE("structure constants validate and the class is derived") {
  CHECK(abelian(1).nilpotency_class() == 1);
  CHECK(abelian(3).nilpotency_class() == 1);
  CHECK(abelian(3).dim() == 3);

  const auto h3 = heisenberg();
  CHECK(h3.nilpotency_class() == 2);
  CHECK(h3.basis_bracket(0, 1) == v3(0, 0, 1));
  CHECK(h3.basis_bracket(1, 0) == v3(0, 0, -1));  // antisymmetric completion

  CHECK(filiform4().nilpotency_class() == 3);

  const auto u4 = ut_algebra(4);
  CHECK(u4.dim() == 6);
  CHECK(u4.nilpotency_class() == 3);
  CHECK(ut_algebra(5).nilpotency_class() == 4);

  // redundant but consistent lower-triangle input is accepted
  const NilpotentLieAlgebra dup(3, {{{0, 1}, v3(0, 0, 1)}, {{1, 0}, v3(0, 0, -1)}});
  CHECK(dup.nilpotency_class() == 2);
  CHECK(dup.basis_bracket(0, 1) == v3(0, 0, 1));
}

TEST_CASE("malformed structure constants are rejected with the witness") {
  CHECK_THROWS_WITH_AS(NilpotentLieAlgebra(0, {}), doctest::Contains("dimension"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(NilpotentLieAlgebra(3, {{{0, 3}, v3(0, 0, 1)}}),
                       doctest::Contains("index out of range"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(NilpotentLieAlgebra(3, {{{0, 1}, {Rational(1)}}}),
                       doctest::Contains("wrong length"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(NilpotentLieAlgebra(3, {{{1, 1}, v3(0, 0, 1)}}),
                       doctest::Contains("[e_i, e_i]"), std::invalid_argument);
  // both triangles given but not antisymmetric
  CHECK_THROWS_WITH_AS(NilpotentLieAlgebra(3, {{{0, 1}, v3(0, 0, 1)}, {{1, 0}, v3(0, 0, 1)}}),
                       doctest::Contains("antisymmetry fails at (0,1)"), std::invalid_argument);
  // antisymmetric but [e0,[e1,e2]] + [e1,[e2,e0]] + [e2,[e0,e1]] != 0
  CHECK_THROWS_WITH_AS(
      NilpotentLieAlgebra(3, {{{0, 1}, v3(0, 0, 1)}, {{0, 2}, v3(1, 0, 0)}}),
      doctest::Contains("Jacobi identity fails at ("), std::invalid_argument);
  // sl2 is a genuine Lie algebra but its lower central series never drops
  CHECK_THROWS_WITH_AS(
      NilpotentLieAlgebra(3, {{{0, 1}, v3(0, 2, 0)},    // [h,e] = 2e
                              {{0, 2}, v3(0, 0, -2)},   // [h,f] = -2f
                              {{1, 2}, v3(1, 0, 0)}}),  // [e,f] = h
      doctest::Contains("not nilpotent"), std::invalid_argument);
  // class 7 is over the engine cap
  CHECK_THROWS_WITH_AS(ut_algebra(8), doctest::Contains("exceeds the cap"),
                       std::invalid_argument);
}

TEST_CASE("aggregated series coefficients match the classical low-degree terms") {
  const auto& d1 = dynkin_words(1);
  REQUIRE(d1.size() == 2);
  CHECK(d1[0] == std::pair<unsigned, Rational>{0u, Rational(1)});
  CHECK(d1[1] == std::pair<unsigned, Rational>{1u, Rational(1)});

  // degree 2 aggregates to (1/2)[X,Y]: word XY carries 1/4 and YX carries -1/4
  const auto& d2 = dynkin_words(2);
  REQUIRE(d2.size() == 2);
  CHECK(d2[0] == std::pair<unsigned, Rational>{0b01u, Rational(-1, 4)});
  CHECK(d2[1] == std::pair<unsigned, Rational>{0b10u, Rational(1, 4)});

  for (int degree = 1; degree <= NilpotentLieAlgebra::kClassCap; ++degree) {
    for (const auto& [word, coeff] : dynkin_words(degree)) {
      CHECK(word < (1u << degree));
      CHECK(!coeff.is_zero());
      if (degree >= 2)  // words ending in a repeated letter evaluate to zero
        CHECK(((word >> (degree - 1)) & 1u) != ((word >> (degree - 2)) & 1u));
    }
  }
  CHECK_THROWS_AS(dynkin_words(0), std::invalid_argument);
  CHECK_THROWS_AS(dynkin_words(NilpotentLieAlgebra::kClassCap + 1), std::invalid_argument);
}

TEST_CASE("the product has ground-truth values and group axioms") {
  const auto h3 = heisenberg();
  const Vec x = vec_unit(0, 3), y = vec_unit(1, 3), z = vec_unit(2, 3);

  CHECK(h3.bch(x, vec_zero(3)) == x);
  CHECK(h3.bch(vec_zero(3), y) == y);
  CHECK(h3.bch(x, y) == Vec{Rational(1), Rational(1), Rational(1, 2)});

  const auto ab = abelian(4);
  std::mt19937_64 rng(20260815);
  for (int t = 0; t < 20; ++t) {
    const Vec u = random_vec(rng, 4), v = random_vec(rng, 4);
    CHECK(ab.bch(u, v) == vec_add(u, v));
  }

  const std::vector<NilpotentLieAlgebra> algs = {heisenberg(), filiform4(), ut_algebra(4)};
  for (const auto& g : algs) {
    const int n = g.dim();
    for (int t = 0; t < 200; ++t) {
      const Vec u = random_vec(rng, n), v = random_vec(rng, n), w = random_vec(rng, n);
      CHECK(g.bch(g.bch(u, v), w) == g.bch(u, g.bch(v, w)));
    }
    for (int t = 0; t < 25; ++t) {
      const Vec u = random_vec(rng, n);
      CHECK(vec_is_zero(g.bch(u, g.inverse(u))));
      CHECK(vec_is_zero(g.bch(g.inverse(u), u)));
      CHECK(g.bch(u, vec_zero(n)) == u);
    }
  }
  CHECK_THROWS_AS(h3.bch(x, vec_zero(4)), std::invalid_argument);
}

TEST_CASE("group commutators: ground truth, class-2 bracket law, expansion identities") {
  const auto h3 = heisenberg();
  const Vec x = vec_unit(0, 3), y = vec_unit(1, 3), z = vec_unit(2, 3);

  CHECK(h3.group_commutator(x, y) == z);
  CHECK(vec_is_zero(h3.group_commutator(x, z)));  // z is central
  CHECK(vec_is_zero(h3.group_commutator(z, y)));
  CHECK(vec_is_zero(h3.group_commutator(x, x)));

  std::mt19937_64 rng(7);
  for (int t = 0; t < 50; ++t) {  // in class 2 the group commutator IS the bracket
    const Vec u = random_vec(rng, 3), v = random_vec(rng, 3);
    CHECK(h3.group_commutator(u, v) == h3.bracket(u, v));
  }

  const auto u4 = ut_algebra(4);
  for (int t = 0; t < 60; ++t) {
    const Vec a = random_vec(rng, 6), b = random_vec(rng, 6), c = random_vec(rng, 6);
    // conjugation distributes over the commutator
    CHECK(u4.conjugate(u4.group_commutator(a, b), c) ==
          u4.group_commutator(u4.conjugate(a, c), u4.conjugate(b, c)));
    // [a, bc] = [a,c] [a,b]^c
    CHECK(u4.group_commutator(a, u4.bch(b, c)) ==
          u4.bch(u4.group_commutator(a, c), u4.conjugate(u4.group_commutator(a, b), c)));
    // [ab, c] = [a,c]^b [b,c]
    CHECK(u4.group_commutator(u4.bch(a, b), c) ==
          u4.bch(u4.conjugate(u4.group_commutator(a, c), b), u4.group_commutator(b, c)));
    CHECK(u4.conjugate(a, vec_zero(6)) == a);
  }
}

TEST_CASE("the hull is the smallest bracket-closed subspace and absorbs products") {
  const auto h3 = heisenberg();
  const Vec x = vec_unit(0, 3), y = vec_unit(1, 3), z = vec_unit(2, 3);

  CHECK(h3.subalgebra_closure({}) == Subspace(3));
  CHECK(h3.subalgebra_closure({vec_zero(3)}) == Subspace(3));
  CHECK(h3.subalgebra_closure({x}) == Subspace::span(3, {x}));
  CHECK(h3.subalgebra_closure({x, z}) == Subspace::span(3, {x, z}));  // already closed
  CHECK(h3.subalgebra_closure({x, y}) == Subspace::full(3));  // closure adds the bracket

  const auto u4 = ut_algebra(4);
  const std::vector<Vec> superdiag = {ut_unit(4, 0, 1), ut_unit(4, 1, 2), ut_unit(4, 2, 3)};
  CHECK(u4.subalgebra_closure(superdiag) == Subspace::full(6));

  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    std::vector<Vec> gens = {random_vec(rng, 6), random_vec(rng, 6)};
    const Subspace hull = u4.subalgebra_closure(gens);
    CHECK(u4.is_subalgebra(hull));
    for (const auto& g : gens) CHECK(hull.contains(g));
    // the hull contains the generated subgroup: sample random words
    Vec word = vec_zero(6);
    std::uniform_int_distribution<int> pick(0, 3);
    for (int step = 0; step < 12; ++step) {
      const int c = pick(rng);
      const Vec& g = gens[static_cast<size_t>(c % 2)];
      word = u4.bch(word, c < 2 ? g : u4.inverse(g));
      CHECK(hull.contains(word));
    }
  }
}

TEST_CASE("algebra series: known chains, duality, and the central inclusions") {
  const auto ab = abelian(3);
  auto s = ab.algebra_series();
  CHECK(series_dims(s.lower_central) == std::vector<int>{3, 0});
  CHECK(series_dims(s.derived) == std::vector<int>{3, 0});
  CHECK(series_dims(s.upper_central) == std::vector<int>{0, 3});

  const auto h3 = heisenberg();
  s = h3.algebra_series();
  CHECK(series_dims(s.lower_central) == std::vector<int>{3, 1, 0});
  CHECK(s.lower_central[1] == Subspace::span(3, {vec_unit(2, 3)}));
  CHECK(series_dims(s.derived) == std::vector<int>{3, 1, 0});
  CHECK(series_dims(s.upper_central) == std::vector<int>{0, 1, 3});
  CHECK(s.upper_central[1] == Subspace::span(3, {vec_unit(2, 3)}));

  const auto u4 = ut_algebra(4);
  s = u4.algebra_series();
  CHECK(series_dims(s.lower_central) == std::vector<int>{6, 3, 1, 0});
  CHECK(series_dims(s.derived) == std::vector<int>{6, 3, 0});
  CHECK(series_dims(s.upper_central) == std::vector<int>{0, 1, 3, 6});
  CHECK(s.upper_central[1] == Subspace::span(6, {ut_unit(4, 0, 3)}));

  CHECK(series_dims(ut_algebra(5).algebra_series().lower_central) ==
        std::vector<int>{10, 6, 3, 1, 0});

  for (const auto& g : {heisenberg(), filiform4(), ut_algebra(4), ut_algebra(5)}) {
    const auto ser = g.algebra_series();
    const int n = g.nilpotency_class();
    // both chains take exactly `class` steps to cross the algebra
    CHECK(static_cast<int>(ser.lower_central.size()) == n + 1);
    CHECK(static_cast<int>(ser.upper_central.size()) == n + 1);
    CHECK(ser.upper_central.back() == Subspace::full(g.dim()));
    for (int i = 0; i <= n; ++i) {
      // i-th lower term sits inside the (n-i)-th upper term
      CHECK(ser.upper_central[static_cast<size_t>(n - i)].contains(
          ser.lower_central[static_cast<size_t>(i)]));
      // every term is an ideal
      const auto& t = ser.lower_central[static_cast<size_t>(i)];
      CHECK(t.contains(g.bracket_subspace(Subspace::full(g.dim()), t)));
      if (i > 0)
        CHECK(ser.upper_central[static_cast<size_t>(i)].contains(g.bracket_subspace(
            Subspace::full(g.dim()), ser.upper_central[static_cast<size_t>(i)])));
    }
  }
}

TEST_CASE("connected subgroup operations: product, intersection, normalization") {
  const auto h3 = heisenberg();
  const Vec x = vec_unit(0, 3), y = vec_unit(1, 3), z = vec_unit(2, 3);
  const Subspace line_x = Subspace::span(3, {x});
  const Subspace line_y = Subspace::span(3, {y});
  const Subspace line_z = Subspace::span(3, {z});
  const Subspace plane_xz = Subspace::span(3, {x, z});
  const Subspace plane_yz = Subspace::span(3, {y, z});

  CHECK(h3.subgroup_product(plane_xz, plane_xz) == plane_xz);
  CHECK(h3.subgroup_product(line_x, line_z) == plane_xz);  // z central
  CHECK(h3.normalizes(Subspace::full(3), line_z));
  CHECK(h3.normalizes(line_x, plane_yz));  // [x, y] = z lands back in the plane
  CHECK_FALSE(h3.normalizes(line_x, line_y));

  const Subspace cut = intersect(plane_xz, plane_yz);
  CHECK(cut == line_z);
  CHECK(h3.is_subalgebra(cut));

  // the full product x-line * yz-plane is the whole group
  CHECK(h3.subgroup_product(line_x, plane_yz) == Subspace::full(3));

  // exp-level membership: products of members stay in the subgroup
  std::mt19937_64 rng(99);
  for (int t = 0; t < 30; ++t) {
    std::uniform_int_distribution<long> num(-6, 6);
    const Vec a = vec_add(vec_scale(Rational(num(rng)), x), vec_scale(Rational(num(rng)), z));
    const Vec b = vec_add(vec_scale(Rational(num(rng)), x), vec_scale(Rational(num(rng)), z));
    CHECK(plane_xz.contains(h3.bch(a, b)));
  }

  const auto u4 = ut_algebra(4);
  const Subspace e01 = Subspace::span(6, {ut_unit(4, 0, 1)});
  const Subspace e12 = Subspace::span(6, {ut_unit(4, 1, 2)});
  CHECK_FALSE(u4.normalizes(e01, e12));
  CHECK_FALSE(u4.normalizes(e12, e01));
  CHECK_THROWS_WITH_AS(u4.subgroup_product(e01, e12), doctest::Contains("normalizes"),
                       std::domain_error);
}

TEST_CASE("the product agrees with the matrix exp/log oracle") {
  std::mt19937_64 rng(20260815);
  for (int size = 2; size <= 5; ++size) {
    const auto g = ut_algebra(size);
    const int n = g.dim();
    for (int t = 0; t < 25; ++t) {
      const Vec u = random_vec(rng, n), v = random_vec(rng, n);
      CHECK(g.bch(u, v) == ut_oracle_bch(size, u, v));
    }
  }
  // spot checks at the deep end of the degree tables
  for (int size : {6, 7}) {
    const auto g = ut_algebra(size);
    const int n = g.dim();
    for (int t = 0; t < 3; ++t) {
      const Vec u = random_vec(rng, n), v = random_vec(rng, n);
      CHECK(g.bch(u, v) == ut_oracle_bch(size, u, v));
    }
  }

  for (int t = 0; t < 20; ++t) {  // exp/log are mutually inverse
    const Vec u = random_vec(rng, 10);
    const Matrix m = ut_matrix(5, u);
    CHECK(ut_log(ut_exp(m)) == m);
    CHECK(ut_exp(ut_log(Matrix::identity(5) + m)) == Matrix::identity(5) + m);
    CHECK((ut_exp(m) * ut_exp(m.scaled(Rational(-1)))) == Matrix::identity(5));
  }
  CHECK_THROWS_AS(ut_coords(3, Matrix::from_rows({v3(0, 1, 0), v3(1, 0, 0), v3(0, 0, 0)}, 3)),
                  std::invalid_argument);
}

TEST_CASE("the bracket of two hulls lies in the hull of the commutators") {
  // saturate the commutator set with words from the two generating sets until
  // its hull swallows the bracket span; the chain must stabilize well before
  // the dimension bound
  std::mt19937_64 rng(42);
  const std::vector<NilpotentLieAlgebra> algs = {heisenberg(), ut_algebra(4), ut_algebra(5)};
  for (const auto& g : algs) {
    const int n = g.dim();
    for (int trial = 0; trial < 12; ++trial) {
      const std::vector<Vec> xs = {random_vec(rng, n), random_vec(rng, n)};
      const std::vector<Vec> ys = {random_vec(rng, n), random_vec(rng, n)};
      const Subspace hx = g.subalgebra_closure(xs);
      const Subspace hy = g.subalgebra_closure(ys);
      const Subspace target = g.bracket_subspace(hx, hy);

      std::vector<Vec> commutators;
      for (const auto& a : xs)
        for (const auto& b : ys) commutators.push_back(g.group_commutator(a, b));
      Subspace hull = g.subalgebra_closure(commutators);
      std::uniform_int_distribution<int> pick(0, 1);
      int rounds = 0;
      while (!hull.contains(target)) {
        REQUIRE(++rounds <= 40);
        Vec a = xs[static_cast<size_t>(pick(rng))];
        Vec b = ys[static_cast<size_t>(pick(rng))];
        for (int d = 0; d < 2; ++d) {
          if (pick(rng)) a = g.bch(a, xs[static_cast<size_t>(pick(rng))]);
          if (pick(rng)) b = g.bch(b, ys[static_cast<size_t>(pick(rng))]);
        }
        commutators.push_back(g.group_commutator(a, b));
        hull = g.subalgebra_closure(commutators);
      }
      CHECK(hull.contains(target));
      // and the commutators were never outside the bracket-closed envelope
      const Subspace envelope = g.subalgebra_closure({xs[0], xs[1], ys[0], ys[1]});
      for (const auto& c : commutators) CHECK(envelope.contains(c));
    }
  }
}

TEST_CASE("hulls are equivariant under conjugation, so invariant sets give invariant hulls") {
  const auto u4 = ut_algebra(4);
  std::mt19937_64 rng(20260815);

  auto conjugated_span = [&](const Subspace& s, const Vec& k) {
    std::vector<Vec> gens;
    for (int i = 0; i < s.dim(); ++i) gens.push_back(u4.conjugate(s.basis_vector(i), k));
    return Subspace::span(s.ambient(), gens);
  };

  for (int t = 0; t < 25; ++t) {
    const std::vector<Vec> xs = {random_vec(rng, 6), random_vec(rng, 6)};
    const Vec k = random_vec(rng, 6);
    std::vector<Vec> conj;
    for (const auto& x : xs) conj.push_back(u4.conjugate(x, k));
    // hull(X^k) = hull(X)^k: conjugation is an automorphism
    CHECK(u4.subalgebra_closure(conj) == conjugated_span(u4.subalgebra_closure(xs), k));
  }

  // a set fixed by K pointwise: elements of the centralizer of k
  for (int t = 0; t < 10; ++t) {
    const Vec k = random_vec(rng, 6);
    const Subspace cent = Subspace::from_rows(u4.ad(k).kernel());
    REQUIRE(cent.dim() >= 1);  // the center is always there
    std::vector<Vec> xs;
    for (int i = 0; i < cent.dim(); ++i) xs.push_back(cent.basis_vector(i));
    for (const auto& x : xs) CHECK(u4.conjugate(x, k) == x);  // genuinely K-invariant
    const Subspace hull = u4.subalgebra_closure(xs);
    CHECK(conjugated_span(hull, k) == hull);
  }
}

TEST_CASE("every element has an exact n-th root") {
  std::mt19937_64 rng(7);
  for (const auto& g : {heisenberg(), ut_algebra(4)}) {
    const int dim = g.dim();
    for (int t = 0; t < 15; ++t) {
      const Vec target = g.bch(random_vec(rng, dim), random_vec(rng, dim));
      for (long n : {2L, 3L, 5L, 7L}) {
        const Vec root = vec_scale(Rational(1, n), target);
        Vec power = vec_zero(dim);
        for (long i = 0; i < n; ++i) power = g.bch(power, root);
        CHECK(power == target);
      }
    }
  }
}
