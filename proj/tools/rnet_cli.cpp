// Command-line front end over the C API: forward solve, path inspection,
// rank analysis, inversion and randomized round trips.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <limits>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rnet/rnet.h"

namespace {

constexpr double kRoundTripGammaTol = 1e-8;

struct NetworkDeleter {
  void operator()(rnet_network* p) const { rnet_network_free(p); }
};
struct MatrixDeleter {
  void operator()(rnet_matrix* p) const { rnet_matrix_free(p); }
};
struct ExpansionDeleter {
  void operator()(rnet_expansion* p) const { rnet_expansion_free(p); }
};
struct ReportDeleter {
  void operator()(rnet_report* p) const { rnet_report_free(p); }
};
using NetworkPtr = std::unique_ptr<rnet_network, NetworkDeleter>;
using MatrixPtr = std::unique_ptr<rnet_matrix, MatrixDeleter>;
using ExpansionPtr = std::unique_ptr<rnet_expansion, ExpansionDeleter>;
using ReportPtr = std::unique_ptr<rnet_report, ReportDeleter>;

// Thrown to leave a command with a given exit code after a diagnostic.
struct Exit {
  int code;
};

std::string real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

[[noreturn]] void die(int code, const std::string& msg) {
  std::cerr << "rnet: " << msg << "\n";
  throw Exit{code};
}

void check(rnet_status st, const std::string& context) {
  if (st != RNET_OK) die(st, context + ": " + rnet_last_error());
}

std::string read_text(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) die(RNET_ERR_INPUT, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

NetworkPtr load_network(const std::string& path) {
  rnet_network* net = nullptr;
  check(rnet_network_parse(read_text(path).c_str(), &net), path);
  return NetworkPtr(net);
}

MatrixPtr load_matrix(const std::string& path) {
  rnet_matrix* m = nullptr;
  check(rnet_matrix_parse(read_text(path).c_str(), &m), path);
  return MatrixPtr(m);
}

MatrixPtr forward(const rnet_network* net) {
  rnet_matrix* lam = nullptr;
  check(rnet_dtn(net, &lam), "forward map");
  return MatrixPtr(lam);
}

// Parses "1,2,5" into a sorted, duplicate-free label list.
std::vector<int> parse_labels(const std::string& csv, const char* flag) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      die(RNET_ERR_INPUT, std::string(flag) + ": bad vertex label '" + tok + "'");
    }
  }
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end())
    die(RNET_ERR_INPUT, std::string(flag) + ": repeated vertex label");
  return out;
}

std::string join(const std::vector<int>& v, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(v[i]);
  }
  return s;
}

template <typename Getter>
std::vector<int> fetch(Getter&& get) {
  std::vector<int> v(get(nullptr, 0));
  get(v.data(), v.size());
  return v;
}

int cmd_forward(const std::string& net_file) {
  auto net = load_network(net_file);
  auto lam = forward(net.get());
  char* text = nullptr;
  check(rnet_matrix_format(lam.get(), &text), "format");
  std::cout << text;
  rnet_string_free(text);
  return 0;
}

int cmd_paths(const std::string& net_file, const std::string& from, const std::string& to) {
  auto net = load_network(net_file);
  const auto p = parse_labels(from, "--from");
  const auto q = parse_labels(to, "--to");
  if (p.size() != q.size())
    die(RNET_ERR_INPUT, "--from has " + std::to_string(p.size()) + " labels, --to has " +
                            std::to_string(q.size()));
  rnet_expansion* raw = nullptr;
  const rnet_status st = rnet_expand(net.get(), p.data(), q.data(), p.size(), &raw);
  ExpansionPtr ex(raw);
  if (st != RNET_OK && st != RNET_ERR_EXPANSION) die(st, rnet_last_error());

  const auto* e = ex.get();
  for (std::size_t t = 0; t < rnet_expansion_term_count(e); ++t) {
    std::vector<std::string> paths;
    for (std::size_t k = 0; k < rnet_expansion_path_count(e, t); ++k) {
      paths.push_back(join(fetch([&](int* o, std::size_t c) { return rnet_expansion_path(e, t, k, o, c); }), "-"));
    }
    std::string line;
    for (std::size_t k = 0; k < paths.size(); ++k) line += (k ? " | " : "") + paths[k];
    if (paths.empty()) line = "(no paths)";
    const auto residual = fetch([&](int* o, std::size_t c) { return rnet_expansion_residual(e, t, o, c); });
    const auto mono = fetch([&](int* o, std::size_t c) { return rnet_expansion_monomial(e, t, o, c); });
    std::string mono_text;
    for (std::size_t k = 0; k < mono.size(); ++k) mono_text += (k ? "*g" : "g") + std::to_string(mono[k]);
    std::cout << line << "  residual: " << (residual.empty() ? "-" : join(residual, ","))
              << "  sign: " << rnet_expansion_term_sign(e, t)
              << "  monomial: " << (mono_text.empty() ? "1" : mono_text)
              << "  residual_det: " << real(rnet_expansion_term_residual_det(e, t)) << "\n";
  }
  std::cout << "systems " << rnet_expansion_term_count(e) << "\n"
            << "total " << real(rnet_expansion_total(e)) << "\n"
            << "reference " << real(rnet_expansion_reference(e)) << "\n"
            << "discrepancy " << real(rnet_expansion_discrepancy(e)) << "\n";
  if (st == RNET_ERR_EXPANSION) {
    std::cerr << "rnet: " << rnet_last_error() << "\n";
    return RNET_ERR_EXPANSION;
  }
  return 0;
}

int cmd_rank(const std::string& net_file, int max_pair_size, bool no_stop) {
  auto net = load_network(net_file);
  rnet_rank_info info{};
  check(rnet_rank(net.get(), max_pair_size, no_stop ? 0 : 1, &info), "rank");
  const bool full = info.rank == info.unknowns;
  std::cout << "rows=" << info.rows << " rank=" << info.rank << " unknowns=" << info.unknowns
            << " verdict=" << (full ? "full" : "deficient") << "\n";
  return full ? 0 : RNET_ERR_RANK;
}

void print_report(const rnet_report* r) {
  for (std::size_t e = 0; e < rnet_report_gamma_count(r); ++e)
    std::cout << "gamma " << e + 1 << " = " << real(rnet_report_gamma(r, e)) << "\n";
  std::cout << "rank " << rnet_report_rank(r) << "\n";
  const auto unresolved = fetch([&](int* o, std::size_t c) { return rnet_report_unresolved(r, o, c); });
  if (!unresolved.empty()) std::cout << "unresolved " << join(unresolved, ",") << "\n";
  if (rnet_report_gamma_count(r) > 0) {
    std::cout << "residual " << real(rnet_report_residual(r)) << "\n"
              << "roundtrip_error " << real(rnet_report_roundtrip_error(r)) << "\n";
  }
  for (std::size_t i = 0; i < rnet_report_warning_count(r); ++i)
    std::cerr << "rnet: warning: " << rnet_report_warning(r, i) << "\n";
}

int cmd_invert(const std::string& topology_file, const std::string& dtn_file, int max_pair_size,
               bool no_stop) {
  auto topo = load_network(topology_file);
  auto lam = load_matrix(dtn_file);
  rnet_report* raw = nullptr;
  const rnet_status st = rnet_recover(topo.get(), lam.get(), max_pair_size, no_stop ? 0 : 1, &raw);
  ReportPtr report(raw);
  if (report) print_report(report.get());
  if (st != RNET_OK) std::cerr << "rnet: " << rnet_last_error() << "\n";
  return st;
}

int cmd_roundtrip(const std::string& net_file, std::uint64_t seed, int trials) {
  auto topo = load_network(net_file);
  const std::size_t m = rnet_network_edge_count(topo.get());
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> log_gamma(std::log(0.1), std::log(10.0));
  bool all_ok = true;
  for (int t = 1; t <= trials; ++t) {
    std::vector<double> gammas(m);
    for (double& g : gammas) g = std::exp(log_gamma(rng));
    rnet_network* raw_net = nullptr;
    check(rnet_network_with_gammas(topo.get(), gammas.data(), m, &raw_net), "trial network");
    NetworkPtr net(raw_net);
    auto lam = forward(net.get());
    rnet_report* raw = nullptr;
    const rnet_status st = rnet_recover(topo.get(), lam.get(), -1, 1, &raw);
    ReportPtr report(raw);
    if (st == RNET_ERR_RANK) {
      std::cout << "trial " << t << " rank_deficient\n";
      std::cerr << "rnet: " << rnet_last_error() << "\n";
      return RNET_ERR_RANK;
    }
    double worst = std::numeric_limits<double>::infinity();
    if (report && rnet_report_gamma_count(report.get()) == m) {
      worst = 0.0;
      for (std::size_t e = 0; e < m; ++e)
        worst = std::max(worst, std::abs(rnet_report_gamma(report.get(), e) - gammas[e]) / gammas[e]);
    }
    const bool ok = st == RNET_OK && worst <= kRoundTripGammaTol;
    all_ok = all_ok && ok;
    std::cout << "trial " << t << " max_rel_error " << real(worst) << (ok ? " ok" : " FAIL") << "\n";
  }
  return all_ok ? 0 : RNET_ERR_ROUNDTRIP;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resistor-network Dirichlet-to-Neumann maps and conductivity recovery"};
  app.require_subcommand(1);

  std::string net_file, dtn_file, from, to;
  int max_pair_size = -1;
  bool no_stop = false;
  std::uint64_t seed = 1;
  int trials = 100;

  auto* fwd = app.add_subcommand("forward", "Print the DtN map of a network");
  fwd->add_option("network", net_file, "network file")->required();

  auto* paths = app.add_subcommand("paths", "List disjoint path systems and the determinant expansion");
  paths->add_option("network", net_file, "network file")->required();
  paths->add_option("--from", from, "row boundary labels, comma separated")->required();
  paths->add_option("--to", to, "column boundary labels, comma separated")->required();

  auto* rank = app.add_subcommand("rank", "Exact rank of the admissible log-linear system");
  rank->add_option("network", net_file, "network file")->required();
  rank->add_option("--max-pair-size", max_pair_size, "largest |P| to scan (default: all)");
  rank->add_flag("--no-stop", no_stop, "scan every pair instead of stopping at full rank");

  auto* inv = app.add_subcommand("invert", "Recover conductivities from a DtN map");
  inv->add_option("topology", net_file, "network file; conductivities are ignored")->required();
  inv->add_option("dtn", dtn_file, "DtN matrix file, '-' for stdin")->required();
  inv->add_option("--max-pair-size", max_pair_size, "largest |P| to scan (default: all)");
  inv->add_flag("--no-stop", no_stop, "use every admissible pair instead of stopping at full rank");

  auto* rt = app.add_subcommand("roundtrip", "Random conductivities through forward and inverse");
  rt->add_option("network", net_file, "network file used as topology")->required();
  rt->add_option("--seed", seed, "random seed");
  rt->add_option("--trials", trials, "number of trials")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return RNET_ERR_INPUT;
  }

  try {
    if (*fwd) return cmd_forward(net_file);
    if (*paths) return cmd_paths(net_file, from, to);
    if (*rank) return cmd_rank(net_file, max_pair_size, no_stop);
    if (*inv) return cmd_invert(net_file, dtn_file, max_pair_size, no_stop);
    if (*rt) return cmd_roundtrip(net_file, seed, trials);
  } catch (const Exit& e) {
    return e.code;
  }
  return RNET_ERR_INTERNAL;
}
