#include <array>
#include <cmath>

#include "doctest.h"
#include "oracle/oracle.hpp"
#include "rnet/error.hpp"
#include "rnet/forward.hpp"
#include "rnet/numerics.hpp"

using namespace rnet;

namespace {

const Network& lattice_1_12() {
  static const Network net = [] {
    std::array<double, 12> g{};
    for (int i = 0; i < 12; ++i) g[static_cast<std::size_t>(i)] = i + 1;
    return lattice_fixture(g);
  }();
  return net;
}

double det_interior(const Network& net) {
  const auto i = net.interior();
  return kirchhoff_subdet(kirchhoff(net), i, i);
}

Network path_network() {
  const std::vector<EdgeSpec> e{{1, 3, 1.0}, {3, 2, 1.0}};
  return Network(2, 1, e);
}

}  // namespace

TEST_SUITE_BEGIN("forward");

TEST_CASE("dtn small cases") {
  const std::vector<EdgeSpec> single{{1, 2, 5.0}};
  CHECK(dtn(Network(2, 0, single)).entries() == Matrix{{5, -5}, {-5, 5}});
  const Matrix series = dtn(path_network()).entries();
  CHECK(series(0, 0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(series(0, 1) == doctest::Approx(-0.5).epsilon(1e-15));
}

TEST_CASE("dtn invariants: lattice and random networks") {
  CHECK(dtn(lattice_1_12()).invariants().holds(1e-12));
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const Network net = oracle::random_network({.seed = seed});
    const auto inv = dtn(net).invariants();
    CHECK(inv.holds(1e-12));
  }
}

TEST_CASE("dtn is degree-1 homogeneous in the conductivities") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const Network net = oracle::random_network({.seed = seed});
    std::vector<double> g = net.gammas();
    for (double& v : g) v *= 2.5;
    const Matrix a = dtn(net.with_gammas(g)).entries();
    const Matrix b = 2.5 * dtn(net).entries();
    CHECK((a - b).max_abs() <= 1e-12 * b.max_abs());
  }
}

TEST_CASE("zero-interior network: DtN equals Kirchhoff") {
  const Network net = oracle::random_network({.min_interior = 0, .max_interior = 0, .seed = 4});
  CHECK(dtn(net).entries() == kirchhoff(net).entries());
}

TEST_CASE("harmonic_extension") {
  SUBCASE("constants are harmonic") {
    const std::vector<double> c(8, 2.5);
    for (double v : harmonic_extension(lattice_1_12(), c)) CHECK(v == doctest::Approx(2.5).epsilon(1e-14));
  }
  SUBCASE("midpoint of a two-edge path") {
    const auto u = harmonic_extension(path_network(), std::vector<double>{0.0, 1.0});
    CHECK(u[2] == doctest::Approx(0.5).epsilon(1e-15));
  }
  SUBCASE("boundary current reproduces Lambda columns") {
    const Network& net = lattice_1_12();
    const KirchhoffMatrix k = kirchhoff(net);
    const Matrix lam = dtn(net).entries();
    double max_gamma = 12.0;
    for (std::size_t col = 0; col < 8; ++col) {
      std::vector<double> e(8, 0.0);
      e[col] = 1.0;
      const auto u = harmonic_extension(net, e);
      const auto current = k.entries() * std::span<const double>(u);
      double unorm = 0.0;
      for (double v : u) unorm = std::max(unorm, std::abs(v));
      for (std::size_t i = 8; i < 12; ++i) CHECK(std::abs(current[i]) <= 1e-10 * unorm * max_gamma);
      for (std::size_t i = 0; i < 8; ++i)
        CHECK(std::abs(current[i] - lam(i, col)) <= 1e-10 * unorm * max_gamma);
    }
  }
  SUBCASE("all-ones boundary gives zero current") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const Network net = oracle::random_network({.seed = seed});
      const auto lam = dtn(net).entries();
      const auto current = lam * std::span<const double>(std::vector<double>(lam.rows(), 1.0));
      for (double c : current) CHECK(std::abs(c) <= 1e-12 * lam.max_abs());
    }
  }
  CHECK_THROWS_AS(harmonic_extension(path_network(), std::vector<double>{1.0}), InputError);
}

TEST_CASE("BoundaryPair validation") {
  CHECK_NOTHROW(BoundaryPair({1, 2}, {2, 3}, 3));
  CHECK_THROWS_AS(BoundaryPair({1}, {1, 2}, 3), InputError);
  CHECK_THROWS_AS(BoundaryPair({2, 1}, {1, 2}, 3), InputError);
  CHECK_THROWS_AS(BoundaryPair({1, 1}, {1, 2}, 3), InputError);
  CHECK_THROWS_AS(BoundaryPair({4}, {1}, 3), InputError);
}

TEST_CASE("dtn_subdet") {
  const Network& net = lattice_1_12();
  const DtNMap lam = dtn(net);
  const double det_c = det_interior(net);
  SUBCASE("1x1 is the entry") {
    for (Vertex i = 1; i <= 8; ++i)
      CHECK(dtn_subdet(lam, BoundaryPair({i}, {i}, 8)) == lam.entries()(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(i - 1)));
  }
  SUBCASE("det Lambda(1,2;5,6) * det K(I,I) = -g1 g2 g3 g4 g5 g6") {
    const double v = dtn_subdet(lam, BoundaryPair({1, 2}, {5, 6}, 8)) * det_c;
    CHECK(std::abs(v - (-720.0)) <= 1e-10 * 720.0);
  }
  SUBCASE("det Lambda(1,5;2,6) * det K(I,I) has magnitude |g1..g6 - g1 g8 g4 g3 g11 g6|") {
    // Ascending rows (1,5) and columns (2,6) give +5616 = -(720 - 6336);
    // both LU routes and the path expansion agree on the sign.
    const double v = dtn_subdet(lam, BoundaryPair({1, 5}, {2, 6}, 8)) * det_c;
    CHECK(std::abs(v - 5616.0) <= 1e-10 * 5616.0);
    const auto rows = with_interior(net, std::vector<Vertex>{1, 5});
    const auto cols = with_interior(net, std::vector<Vertex>{2, 6});
    const double via_k = oracle::perm_det(kirchhoff(net).entries().select(
        std::vector<std::size_t>{0, 4, 8, 9, 10, 11}, std::vector<std::size_t>{1, 5, 8, 9, 10, 11}));
    CHECK(std::abs(via_k - 5616.0) <= 1e-9 * 5616.0);
    CHECK(rows.size() == cols.size());
  }
}

TEST_CASE("kirchhoff_subdet") {
  const Network ones = lattice_fixture(std::array<double, 12>{1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1});
  CHECK(det_interior(ones) == doctest::Approx(192.0).epsilon(1e-14));
  const KirchhoffMatrix k = kirchhoff(lattice_1_12());
  const std::vector<Vertex> ten{10};
  CHECK(kirchhoff_subdet(k, ten, ten) == 8 + 4 + 9 + 5);
  CHECK(kirchhoff_subdet(k, std::vector<Vertex>{}, std::vector<Vertex>{}) == 1.0);
  // Unsorted input is sorted before selection.
  const std::vector<Vertex> a{12, 9}, b{9, 12};
  CHECK(kirchhoff_subdet(k, a, a) == kirchhoff_subdet(k, b, b));
}

TEST_CASE("schur identity") {
  CHECK(schur_identity_check(lattice_1_12(), BoundaryPair({1, 2}, {5, 6}, 8)) <= 1e-10);
  const std::vector<EdgeSpec> single{{1, 2, 4.0}};
  CHECK(schur_identity_check(Network(2, 0, single), BoundaryPair({1}, {2}, 2)) == 0.0);

  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const Network net = oracle::random_network({.max_boundary = 6, .max_interior = 4, .seed = seed});
    for (std::uint64_t t = 0; t < 5; ++t) {
      const BoundaryPair pair = oracle::random_pair(net, seed * 31 + t);
      const double d = schur_identity_check(net, pair);
      CHECK_MESSAGE(d <= 1e-9, "seed " << seed << " trial " << t);
    }
  }
}

TEST_CASE("relative_discrepancy conventions") {
  CHECK(relative_discrepancy(0.0, 0.0) == 0.0);
  CHECK(relative_discrepancy(1e-20, 0.0) == 1.0);
  CHECK(relative_discrepancy(1.5, 1.0) == 0.5);
}

TEST_SUITE_END();
