#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "rnet/rnet.h"

namespace {

const char* kSingleEdge = "boundary 2\ninterior 0\nedge 1 2 5\n";

// Lattice with gammas 1..12, written out in the text format.
const char* kLattice =
    "# four interior vertices, eight boundary\n"
    "boundary 8\n"
    "interior 4\n"
    "edge 1 9 1\nedge 9 12 2\nedge 6 12 3\nedge 2 10 4\nedge 10 11 5\nedge 5 11 6\n"
    "edge 8 9 7\nedge 9 10 8\nedge 3 10 9\nedge 7 12 10\nedge 11 12 11\nedge 4 11 12\n";

// Same vertex sets, edge 2 moved from {9,12} to {9,11}.
const char* kMoved =
    "boundary 8\ninterior 4\n"
    "edge 1 9 1\nedge 9 11 2\nedge 6 12 3\nedge 2 10 4\nedge 10 11 5\nedge 5 11 6\n"
    "edge 8 9 7\nedge 9 10 8\nedge 3 10 9\nedge 7 12 10\nedge 11 12 11\nedge 4 11 12\n";

rnet_network* parse(const char* text) {
  rnet_network* net = nullptr;
  REQUIRE(rnet_network_parse(text, &net) == RNET_OK);
  REQUIRE(net != nullptr);
  return net;
}

rnet_network* lattice_1_12() {
  std::vector<double> g;
  for (int i = 1; i <= 12; ++i) g.push_back(i);
  rnet_network* net = nullptr;
  REQUIRE(rnet_network_lattice(g.data(), &net) == RNET_OK);
  return net;
}

rnet_matrix* dtn_of(const rnet_network* net) {
  rnet_matrix* m = nullptr;
  REQUIRE(rnet_dtn(net, &m) == RNET_OK);
  return m;
}

std::string take(char* s) {
  std::string out(s);
  rnet_string_free(s);
  return out;
}

}  // namespace

TEST_SUITE("capi") {

TEST_CASE("network parse, serialize and counts") {
  rnet_network* net = parse(kLattice);
  CHECK(rnet_network_boundary_count(net) == 8);
  CHECK(rnet_network_interior_count(net) == 4);
  CHECK(rnet_network_edge_count(net) == 12);

  char* text = nullptr;
  REQUIRE(rnet_network_serialize(net, &text) == RNET_OK);
  rnet_network* again = parse(text);
  rnet_string_free(text);
  CHECK(rnet_network_edge_count(again) == 12);

  rnet_network* lat = lattice_1_12();
  char* a = nullptr;
  char* b = nullptr;
  REQUIRE(rnet_network_serialize(again, &a) == RNET_OK);
  REQUIRE(rnet_network_serialize(lat, &b) == RNET_OK);
  CHECK(take(a) == take(b));

  rnet_network_free(again);
  rnet_network_free(lat);
  rnet_network_free(net);
}

TEST_CASE("gammas round trip through with_gammas") {
  rnet_network* net = lattice_1_12();
  std::vector<double> g(12);
  REQUIRE(rnet_network_gammas(net, g.data(), g.size()) == RNET_OK);
  CHECK(g[6] == 7.0);
  CHECK(rnet_network_gammas(net, g.data(), 3) == RNET_ERR_INPUT);

  for (double& x : g) x *= 2;
  rnet_network* doubled = nullptr;
  REQUIRE(rnet_network_with_gammas(net, g.data(), g.size(), &doubled) == RNET_OK);
  std::vector<double> back(12);
  REQUIRE(rnet_network_gammas(doubled, back.data(), back.size()) == RNET_OK);
  CHECK(back == g);

  g[0] = -1;
  rnet_network* bad = nullptr;
  CHECK(rnet_network_with_gammas(net, g.data(), g.size(), &bad) == RNET_ERR_INPUT);
  CHECK(std::string(rnet_last_error()).size() > 0);

  rnet_network_free(doubled);
  rnet_network_free(net);
}

TEST_CASE("parse errors report status and message") {
  rnet_network* net = nullptr;
  CHECK(rnet_network_parse("boundary 2\ninterior 0\nedge 1 1 2\n", &net) == RNET_ERR_INPUT);
  CHECK(std::string(rnet_last_error()).find("self-loop") != std::string::npos);
  CHECK(rnet_network_parse(nullptr, &net) == RNET_ERR_INPUT);

  rnet_matrix* m = nullptr;
  CHECK(rnet_matrix_parse("2 2\n1 2\n3\n", &m) == RNET_ERR_INPUT);
  CHECK(rnet_matrix_parse("2 2\n1 2\n3 nan\n", &m) == RNET_ERR_INPUT);

  // A successful call clears the previous message.
  rnet_network* ok = parse(kSingleEdge);
  CHECK(std::string(rnet_last_error()).empty());
  rnet_network_free(ok);
}

TEST_CASE("single edge DtN formats exactly") {
  rnet_network* net = parse(kSingleEdge);
  rnet_matrix* lam = dtn_of(net);
  CHECK(rnet_matrix_rows(lam) == 2);
  CHECK(rnet_matrix_cols(lam) == 2);
  CHECK(rnet_matrix_get(lam, 0, 1) == -5.0);
  CHECK(rnet_matrix_get(lam, 9, 9) == 0.0);
  char* text = nullptr;
  REQUIRE(rnet_matrix_format(lam, &text) == RNET_OK);
  CHECK(take(text) == "2 2\n5 -5\n-5 5\n");
  rnet_matrix_free(lam);
  rnet_network_free(net);
}

TEST_CASE("matrix parse and format round trip") {
  rnet_matrix* m = nullptr;
  REQUIRE(rnet_matrix_parse("2 3\n0.1 -2 3e5\n\n4 5 6\n", &m) == RNET_OK);
  char* text = nullptr;
  REQUIRE(rnet_matrix_format(m, &text) == RNET_OK);
  rnet_matrix* again = nullptr;
  REQUIRE(rnet_matrix_parse(text, &again) == RNET_OK);
  rnet_string_free(text);
  for (size_t i = 0; i < 2; ++i)
    for (size_t j = 0; j < 3; ++j) CHECK(rnet_matrix_get(m, i, j) == rnet_matrix_get(again, i, j));
  rnet_matrix_free(again);
  rnet_matrix_free(m);
}

TEST_CASE("lattice minors") {
  rnet_network* net = lattice_1_12();
  rnet_matrix* lam = dtn_of(net);
  const double det_kii = 291356.0;

  const int p[] = {1, 2};
  const int q[] = {5, 6};
  double d = 0;
  REQUIRE(rnet_dtn_subdet(lam, p, q, 2, &d) == RNET_OK);
  CHECK(d * det_kii == doctest::Approx(-720.0).epsilon(1e-10));

  const int p1[] = {1};
  const int q1[] = {5};
  REQUIRE(rnet_dtn_subdet(lam, p1, q1, 1, &d) == RNET_OK);
  CHECK(d * det_kii == doctest::Approx(-9672.0).epsilon(1e-10));

  const int unsorted[] = {2, 1};
  CHECK(rnet_dtn_subdet(lam, unsorted, q, 2, &d) == RNET_ERR_INPUT);
  const int out_of_range[] = {1, 9};
  CHECK(rnet_dtn_subdet(lam, out_of_range, q, 2, &d) == RNET_ERR_INPUT);

  REQUIRE(rnet_dtn_subdet(lam, nullptr, nullptr, 0, &d) == RNET_OK);
  CHECK(d == 1.0);

  rnet_matrix_free(lam);
  rnet_network_free(net);
}

TEST_CASE("interior chains hanging off the boundary are grounded") {
  rnet_network* net = parse("boundary 1\ninterior 2\nedge 1 2 1\nedge 2 3 1\n");
  rnet_matrix* lam = nullptr;
  CHECK(rnet_dtn(net, &lam) == RNET_OK);
  rnet_matrix_free(lam);
  rnet_network_free(net);

  rnet_network* isolated = nullptr;
  CHECK(rnet_network_parse("boundary 1\ninterior 1\n", &isolated) == RNET_ERR_INPUT);
}

TEST_CASE("harmonic extension") {
  rnet_network* net = parse("boundary 2\ninterior 1\nedge 1 3 1\nedge 3 2 3\n");
  const double ub[] = {4.0, 0.0};
  std::vector<double> u(3);
  REQUIRE(rnet_harmonic_extension(net, ub, 2, u.data(), u.size()) == RNET_OK);
  CHECK(u[0] == 4.0);
  CHECK(u[1] == 0.0);
  CHECK(u[2] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rnet_harmonic_extension(net, ub, 2, u.data(), 2) == RNET_ERR_INPUT);
  CHECK(rnet_harmonic_extension(net, ub, 1, u.data(), 3) == RNET_ERR_INPUT);
  rnet_network_free(net);
}

TEST_CASE("path expansion accessors") {
  rnet_network* net = lattice_1_12();

  SUBCASE("single path system") {
    const int p[] = {1, 2};
    const int q[] = {5, 6};
    rnet_expansion* ex = nullptr;
    REQUIRE(rnet_expand(net, p, q, 2, &ex) == RNET_OK);
    REQUIRE(rnet_expansion_term_count(ex) == 1);
    CHECK(rnet_expansion_term_sign(ex, 0) == -1);
    CHECK(rnet_expansion_path_count(ex, 0) == 2);

    int buf[8] = {};
    CHECK(rnet_expansion_path(ex, 0, 0, buf, 8) == 4);
    CHECK(std::vector<int>(buf, buf + 4) == std::vector<int>{1, 9, 12, 6});
    CHECK(rnet_expansion_path(ex, 0, 1, buf, 8) == 4);
    CHECK(std::vector<int>(buf, buf + 4) == std::vector<int>{2, 10, 11, 5});

    // Short buffers still report the full length.
    int two[2] = {};
    CHECK(rnet_expansion_path(ex, 0, 0, two, 2) == 4);
    CHECK(two[1] == 9);
    CHECK(rnet_expansion_path(ex, 0, 0, nullptr, 0) == 4);

    std::vector<int> mono(12);
    const size_t n = rnet_expansion_monomial(ex, 0, mono.data(), mono.size());
    mono.resize(n);
    CHECK(mono == std::vector<int>{1, 2, 3, 4, 5, 6});

    CHECK(rnet_expansion_residual(ex, 0, nullptr, 0) == 0);
    CHECK(rnet_expansion_term_residual_det(ex, 0) == 1.0);
    CHECK(rnet_expansion_term_value(ex, 0) == -720.0);
    CHECK(rnet_expansion_total(ex) == -720.0);
    CHECK(rnet_expansion_reference(ex) == doctest::Approx(-720.0).epsilon(1e-12));
    CHECK(rnet_expansion_discrepancy(ex) <= 1e-9);

    // Out-of-range indices are inert.
    CHECK(rnet_expansion_term_sign(ex, 5) == 0);
    CHECK(rnet_expansion_path(ex, 0, 7, buf, 8) == 0);
    rnet_expansion_free(ex);
  }

  SUBCASE("two path systems") {
    const int p[] = {1};
    const int q[] = {5};
    rnet_expansion* ex = nullptr;
    REQUIRE(rnet_expand(net, p, q, 1, &ex) == RNET_OK);
    CHECK(rnet_expansion_term_count(ex) == 2);
    CHECK(rnet_expansion_total(ex) == doctest::Approx(-9672.0).epsilon(1e-10));
    double sum = 0;
    for (size_t t = 0; t < 2; ++t) {
      CHECK(rnet_expansion_path_count(ex, t) == 1);
      sum += rnet_expansion_term_value(ex, t);
    }
    CHECK(sum == rnet_expansion_total(ex));
    rnet_expansion_free(ex);
  }

  SUBCASE("invalid pair") {
    const int p[] = {1, 2};
    const int q[] = {5};
    rnet_expansion* ex = nullptr;
    CHECK(rnet_expand(net, p, q, 1, &ex) == RNET_OK);
    rnet_expansion_free(ex);
    const int bad[] = {2, 1};
    CHECK(rnet_expand(net, bad, bad, 2, &ex) == RNET_ERR_INPUT);
    CHECK(ex == nullptr);
  }

  rnet_network_free(net);
}

TEST_CASE("rank") {
  rnet_network* net = lattice_1_12();
  rnet_rank_info info{};
  REQUIRE(rnet_rank(net, -1, 1, &info) == RNET_OK);
  CHECK(info.rank == 13);
  CHECK(info.unknowns == 13);
  CHECK(info.rows == 110);
  REQUIRE(rnet_rank(net, -1, 0, &info) == RNET_OK);
  CHECK(info.rank == 13);
  CHECK(info.rows == 1288);
  rnet_network_free(net);

  rnet_network* edge = parse(kSingleEdge);
  REQUIRE(rnet_rank(edge, -1, 1, &info) == RNET_OK);
  CHECK(info.rank == 1);
  CHECK(info.unknowns == 1);
  rnet_network_free(edge);
}

TEST_CASE("recover") {
  rnet_network* net = lattice_1_12();
  rnet_matrix* lam = dtn_of(net);

  SUBCASE("ok") {
    rnet_report* rep = nullptr;
    REQUIRE(rnet_recover(net, lam, -1, 1, &rep) == RNET_OK);
    REQUIRE(rnet_report_gamma_count(rep) == 12);
    for (size_t k = 0; k < 12; ++k)
      CHECK(rnet_report_gamma(rep, k) == doctest::Approx(double(k + 1)).epsilon(1e-10));
    CHECK(rnet_report_logdet(rep) == doctest::Approx(std::log(291356.0)).epsilon(1e-12));
    CHECK(rnet_report_rank(rep) == 13);
    CHECK(rnet_report_unknowns(rep) == 13);
    CHECK(rnet_report_rows(rep) == 110);
    CHECK(rnet_report_residual(rep) < 1e-10);
    CHECK(rnet_report_roundtrip_error(rep) < 1e-8);
    CHECK(rnet_report_unresolved(rep, nullptr, 0) == 0);
    CHECK(rnet_report_warning_count(rep) == 0);
    CHECK(std::string(rnet_report_warning(rep, 0)).empty());
    rnet_report_free(rep);
  }

  SUBCASE("rank deficient topology") {
    rnet_network* split = parse("boundary 2\ninterior 2\nedge 1 3 1\nedge 2 4 1\n");
    rnet_matrix* lam2 = dtn_of(split);
    rnet_report* rep = nullptr;
    CHECK(rnet_recover(split, lam2, -1, 1, &rep) == RNET_ERR_RANK);
    REQUIRE(rep != nullptr);
    CHECK(rnet_report_rank(rep) == 0);
    CHECK(rnet_report_unknowns(rep) == 3);
    int buf[4] = {};
    CHECK(rnet_report_unresolved(rep, buf, 4) == 2);
    CHECK(buf[0] == 1);
    CHECK(buf[1] == 2);
    CHECK(std::string(rnet_last_error()).size() > 0);
    rnet_report_free(rep);
    rnet_matrix_free(lam2);
    rnet_network_free(split);
  }

  SUBCASE("data from another topology") {
    rnet_network* moved = parse(kMoved);
    rnet_matrix* other = dtn_of(moved);
    rnet_report* rep = nullptr;
    CHECK(rnet_recover(net, other, -1, 1, &rep) == RNET_ERR_ROUNDTRIP);
    REQUIRE(rep != nullptr);
    CHECK(rnet_report_gamma_count(rep) == 12);
    CHECK(rnet_report_roundtrip_error(rep) > 1e-6);
    rnet_report_free(rep);
    rnet_matrix_free(other);
    rnet_network_free(moved);
  }

  SUBCASE("dimension mismatch") {
    rnet_matrix* small = nullptr;
    REQUIRE(rnet_matrix_parse("2 2\n1 -1\n-1 1\n", &small) == RNET_OK);
    rnet_report* rep = nullptr;
    CHECK(rnet_recover(net, small, -1, 1, &rep) == RNET_ERR_INPUT);
    CHECK(rep == nullptr);
    rnet_matrix_free(small);
  }

  SUBCASE("null arguments") {
    rnet_report* rep = nullptr;
    CHECK(rnet_recover(nullptr, lam, -1, 1, &rep) == RNET_ERR_INPUT);
    CHECK(rnet_recover(net, lam, -1, 1, nullptr) == RNET_ERR_INPUT);
  }

  rnet_matrix_free(lam);
  rnet_network_free(net);
}

TEST_CASE("null handles are tolerated by accessors and free") {
  CHECK(rnet_network_edge_count(nullptr) == 0);
  CHECK(rnet_matrix_rows(nullptr) == 0);
  CHECK(rnet_expansion_term_count(nullptr) == 0);
  CHECK(rnet_report_rank(nullptr) == 0);
  rnet_network_free(nullptr);
  rnet_matrix_free(nullptr);
  rnet_expansion_free(nullptr);
  rnet_report_free(nullptr);
  rnet_string_free(nullptr);
}

}  // TEST_SUITE
