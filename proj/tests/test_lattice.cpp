#include <doctest.h>

#include <algorithm>
#include <set>

#include "oracles.hpp"
#include "svpqa/lattice.hpp"

using namespace svpqa;

namespace {

std::set<std::vector<int>> as_set(const SvpResult& r) {
  std::set<std::vector<int>> s;
  for (const CoeffVector& x : r.solutions) s.insert(std::vector<int>(x.data(), x.data() + x.size()));
  return s;
}

CoeffVector cv(std::initializer_list<int> v) {
  CoeffVector x(static_cast<Eigen::Index>(v.size()));
  int i = 0;
  for (int e : v) x[i++] = e;
  return x;
}

}  // namespace

TEST_CASE("gram_from_basis polar examples") {
  const MatrixXr orth = gram_from_basis(LatticeBasis::polar(1, 1, M_PI / 2)).matrix();
  CHECK(orth(0, 0) == 1.0);
  CHECK(orth(1, 1) == 1.0);
  CHECK(std::abs(orth(0, 1)) < 1e-16);

  const MatrixXr hex = gram_from_basis(LatticeBasis::polar(1, 1, M_PI / 3)).matrix();
  CHECK(hex(0, 1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(hex(1, 0) == hex(0, 1));

  const MatrixXr g = gram_from_basis(LatticeBasis::polar(1, 2, M_PI / 6)).matrix();
  CHECK(g(0, 0) == 1.0);
  CHECK(g(1, 1) == 4.0);
  CHECK(std::abs(g(0, 1) - std::sqrt(3.0)) < 1e-15);
}

TEST_CASE("gram_from_basis explicit columns agrees with polar form") {
  const Real theta = 0.7;
  MatrixXr b(3, 2);
  b << 1.5, 2.0 * std::cos(theta), 0.0, 2.0 * std::sin(theta), 0.0, 0.0;
  const MatrixXr explicit_g = gram_from_basis(LatticeBasis::from_columns(b)).matrix();
  const MatrixXr polar_g = gram_from_basis(LatticeBasis::polar(1.5, 2.0, theta)).matrix();
  CHECK(max_abs_diff(explicit_g, polar_g) < 1e-14);
  CHECK(explicit_g == explicit_g.transpose());
}

TEST_CASE("degenerate and invalid bases are rejected") {
  MatrixXr dependent(2, 2);
  dependent << 1, 2, 1, 2;
  CHECK_THROWS_AS(LatticeBasis::from_columns(dependent), Error);
  MatrixXr nearly(2, 2);
  nearly << 1, 1, 0, 1e-8;
  CHECK_THROWS_WITH_AS(LatticeBasis::from_columns(nearly), doctest::Contains("linearly dependent"), Error);
  CHECK_THROWS_AS(LatticeBasis::from_columns(MatrixXr::Ones(1, 2)), Error);
  CHECK_THROWS_AS(LatticeBasis::polar(0, 1, 1), Error);
  CHECK_THROWS_AS(LatticeBasis::polar(1, -1, 1), Error);
  CHECK_THROWS_AS(LatticeBasis::polar(1, 1, 0), Error);
  CHECK_THROWS_AS(LatticeBasis::polar(1, 1, M_PI), Error);

  MatrixXr asym(2, 2);
  asym << 1, 0.1, 0.2, 1;
  CHECK_THROWS_AS(GramMatrix{asym}, Error);
  MatrixXr indefinite(2, 2);
  indefinite << 1, 2, 2, 1;
  CHECK_THROWS_AS(GramMatrix{indefinite}, Error);
}

TEST_CASE("norm_sq examples") {
  CHECK(norm_sq(GramMatrix(MatrixXr::Identity(2, 2)), cv({1, 0})) == 1.0);
  MatrixXr d(2, 2);
  d << 1, 0, 0, 4;
  CHECK(norm_sq(GramMatrix(d), cv({0, 1})) == 4.0);
  const GramMatrix g = gram_from_basis(LatticeBasis::polar(1, 2, M_PI / 6));
  CHECK(norm_sq(g, cv({2, -1})) == doctest::Approx(8.0 - 4.0 * std::sqrt(3.0)).epsilon(1e-13));
  CHECK(norm_sq(g, cv({2, -1})) == doctest::Approx(1.0718).epsilon(1e-4));
  CHECK_THROWS_WITH_AS(norm_sq(g, cv({1, 2, 3})), doctest::Contains("dimension mismatch"), Error);
}

TEST_CASE("brute_force_svp examples") {
  const SvpResult unit = brute_force_svp(GramMatrix(MatrixXr::Identity(2, 2)), 2);
  CHECK(unit.min_norm_sq == 1.0);
  CHECK(unit.degeneracy() == 4);
  CHECK(as_set(unit) == std::set<std::vector<int>>{{1, 0}, {-1, 0}, {0, 1}, {0, -1}});

  const SvpResult hex = brute_force_svp(gram_from_basis(LatticeBasis::polar(1, 1, M_PI / 3)), 2);
  CHECK(hex.degeneracy() == 6);
  CHECK(as_set(hex) == std::set<std::vector<int>>{{1, 0}, {0, 1}, {1, -1}, {-1, 0}, {0, -1}, {-1, 1}});

  const SvpResult rect = brute_force_svp(gram_from_basis(LatticeBasis::polar(2, 1, M_PI / 2)), 2);
  CHECK(rect.min_norm_sq == doctest::Approx(1.0));
  CHECK(as_set(rect) == std::set<std::vector<int>>{{0, 1}, {0, -1}});

  CHECK_THROWS_AS(brute_force_svp(GramMatrix(MatrixXr::Identity(2, 2)), 0), Error);
}

TEST_CASE("brute_force_svp matches an independent enumeration on random lattices") {
  std::mt19937 rng(20261014);
  for (int trial = 0; trial < 200; ++trial) {
    const MatrixXr g = oracle::random_spd(rng);
    const int k = 1 + trial % 3;
    const SvpResult r = brute_force_svp(GramMatrix(g), k);
    CHECK(r.min_norm_sq == doctest::Approx(oracle::min_norm_2d(g, k)).epsilon(1e-12));
    REQUIRE(r.degeneracy() >= 2);
    const auto sols = as_set(r);
    for (const auto& x : sols) {
      CHECK(sols.count({-x[0], -x[1]}) == 1);  // closed under negation
      CHECK((x[0] != 0 || x[1] != 0));
      CHECK(std::abs(oracle::quadratic_form(g, x) - r.min_norm_sq) <= 1e-10 * r.min_norm_sq);
    }
  }
}

TEST_CASE("norm_sq is even and the solution set is scale invariant") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (int trial = 0; trial < 100; ++trial) {
    const MatrixXr g = oracle::random_spd(rng);
    const CoeffVector x = cv({coeff(rng), coeff(rng)});
    CHECK(norm_sq(GramMatrix(g), x) == norm_sq(GramMatrix(g), CoeffVector(-x)));
  }
  for (Real theta : {M_PI / 18, M_PI / 6, M_PI / 3, 2.0}) {
    const SvpResult base = brute_force_svp(gram_from_basis(LatticeBasis::polar(1.0, 1.3, theta)), 2);
    const SvpResult scaled = brute_force_svp(gram_from_basis(LatticeBasis::polar(2.5, 3.25, theta)), 2);
    CHECK(scaled.min_norm_sq == doctest::Approx(6.25 * base.min_norm_sq).epsilon(1e-12));
    CHECK(as_set(scaled) == as_set(base));
  }
}
