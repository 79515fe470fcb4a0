#include "rnet/rnet.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "rnet/error.hpp"
#include "rnet/forward.hpp"
#include "rnet/inverse.hpp"
#include "rnet/numerics.hpp"
#include "rnet/network.hpp"
#include "rnet/paths.hpp"

struct rnet_network {
  rnet::Network net;
};

struct rnet_matrix {
  rnet::Matrix m;
};

struct rnet_expansion {
  rnet::Expansion ex;
};

struct rnet_report {
  rnet::RecoveryReport report;
};

namespace {

thread_local std::string g_last_error;

rnet_status fail(rnet_status status, const char* what) {
  g_last_error = what;
  return status;
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
rnet_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const rnet::Error& e) {
    return fail(static_cast<rnet_status>(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(RNET_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(RNET_ERR_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename T>
size_t copy_out(const std::vector<T>& src, int* out, size_t cap) {
  if (out)
    for (size_t i = 0; i < src.size() && i < cap; ++i) out[i] = static_cast<int>(src[i]);
  return src.size();
}

rnet::BoundaryPair make_pair(const int* p, const int* q, size_t size, int n_boundary) {
  if (size > 0 && (!p || !q)) throw rnet::InputError("null index array");
  std::vector<rnet::Vertex> pv(p, p + size), qv(q, q + size);
  return rnet::BoundaryPair(std::move(pv), std::move(qv), n_boundary);
}

const rnet::PathTerm& term_at(const rnet_expansion* ex, size_t term) {
  return ex->ex.terms.at(term);
}

}  // namespace

extern "C" {

RNET_API const char* rnet_last_error(void) { return g_last_error.c_str(); }

RNET_API void rnet_string_free(char* s) { std::free(s); }

RNET_API rnet_status rnet_network_parse(const char* text, rnet_network** out) {
  if (!text || !out) return fail(RNET_ERR_INPUT, "null argument");
  return guarded([&] {
    *out = new rnet_network{rnet::parse_network(text)};
    return RNET_OK;
  });
}

RNET_API rnet_status rnet_network_lattice(const double* gammas12, rnet_network** out) {
  if (!gammas12 || !out) return fail(RNET_ERR_INPUT, "null argument");
  return guarded([&] {
    *out = new rnet_network{rnet::lattice_fixture(std::span<const double>(gammas12, 12))};
    return RNET_OK;
  });
}

RNET_API rnet_status rnet_network_serialize(const rnet_network* net, char** out) {
  if (!net || !out) return fail(RNET_ERR_INPUT, "null argument");
  return guarded([&] {
    *out = dup_string(rnet::serialize_network(net->net));
    return RNET_OK;
  });
}

RNET_API rnet_status rnet_network_with_gammas(const rnet_network* net, const double* gammas,
                                              size_t count, rnet_network** out) {
  if (!net || (!gammas && count) || !out) return fail(RNET_ERR_INPUT, "null argument");
  return guarded([&] {
    *out = new rnet_network{net->net.with_gammas(std::span<const double>(gammas, count))};
    return RNET_OK;
  });
}

RNET_API rnet_status rnet_network_gammas(const rnet_network* net, double* out, size_t count) {
  if (!net || (!out && count)) return fail(RNET_ERR_INPUT, "null argument");
  if (count != net->net.n_edges()) return fail(RNET_ERR_INPUT, "edge count mismatch");
  const auto g = net->net.gammas();
  std::copy(g.begin(), g.end(), out);
  return RNET_OK;
}

RNET_API int rnet_network_boundary_count(const rnet_network* net) {
  return net ? net->net.n_boundary() : 0;
}

RNET_API int rnet_network_interior_count(const rnet_network* net) {
  return net ? net->net.n_interior() : 0;
}

RNET_API size_t rnet_network_edge_count(const rnet_network* net) {
  return net ? net->net.n_edges() : 0;
}

RNET_API void rnet_network_free(rnet_network* net) { delete net; }

RNET_API rnet_status rnet_matrix_parse(const char* text, rnet_matrix** out) {
  if (!text || !out) return fail(RNET_ERR_INPUT, "null argument");
  return guarded([&] {
    *out = new rnet_matrix{rnet::parse_matrix(text)};
    return RNET_OK;
  });
}

RNET_API rnet_status rnet_matrix_format(const rnet_matrix* m, char** out) {
  if (!m || !out) return fail(RNET_ERR_INPUT, "null argument");
  return guarded([&] {
    *out = dup_string(rnet::format_matrix(m->m));
    return RNET_OK;
  });
}

RNET_API size_t rnet_matrix_rows(const rnet_matrix* m) { return m ? m->m.rows() : 0; }
RNET_API size_t rnet_matrix_cols(const rnet_matrix* m) { return m ? m->m.cols() : 0; }

RNET_API double rnet_matrix_get(const rnet_matrix* m, size_t i, size_t j) {
  if (!m || i >= m->m.rows() || j >= m->m.cols()) return 0.0;
  return m->m(i, j);
}

RNET_API void rnet_matrix_free(rnet_matrix* m) { delete m; }

RNET_API rnet_status rnet_dtn(const rnet_network* net, rnet_matrix** out) {
  if (!net || !out) return fail(RNET_ERR_INPUT, "null argument");
  return guarded([&] {
    *out = new rnet_matrix{rnet::dtn(net->net).entries()};
    return RNET_OK;
  });
}

RNET_API rnet_status rnet_dtn_subdet(const rnet_matrix* lam, const int* p, const int* q,
                                     size_t size, double* out) {
  if (!lam || !out) return fail(RNET_ERR_INPUT, "null argument");
  return guarded([&] {
    const rnet::DtNMap map(lam->m);
    *out = rnet::dtn_subdet(map, make_pair(p, q, size, map.n_boundary()));
    return RNET_OK;
  });
}

RNET_API rnet_status rnet_harmonic_extension(const rnet_network* net, const double* u_boundary,
                                             size_t n_boundary, double* u_out, size_t n_out) {
  if (!net || !u_boundary || !u_out) return fail(RNET_ERR_INPUT, "null argument");
  return guarded([&] {
    if (n_out != static_cast<size_t>(net->net.n_vertices()))
      throw rnet::InputError("output length must equal the vertex count");
    const auto u = rnet::harmonic_extension(net->net, std::span<const double>(u_boundary, n_boundary));
    std::copy(u.begin(), u.end(), u_out);
    return RNET_OK;
  });
}

RNET_API rnet_status rnet_expand(const rnet_network* net, const int* p, const int* q, size_t size,
                                 rnet_expansion** out) {
  if (!net || !out) return fail(RNET_ERR_INPUT, "null argument");
  *out = nullptr;
  return guarded([&] {
    const auto pair = make_pair(p, q, size, net->net.n_boundary());
    *out = new rnet_expansion{rnet::expand_terms(net->net, pair)};
    if (!((*out)->ex.discrepancy <= rnet::kExpansionTol)) {
      return fail(RNET_ERR_EXPANSION, ("path expansion disagrees with the LU determinant, relative " +
                                       rnet::format_real((*out)->ex.discrepancy))
                                          .c_str());
    }
    return RNET_OK;
  });
}

RNET_API size_t rnet_expansion_term_count(const rnet_expansion* ex) {
  return ex ? ex->ex.terms.size() : 0;
}

RNET_API int rnet_expansion_term_sign(const rnet_expansion* ex, size_t term) {
  return (ex && term < ex->ex.terms.size()) ? term_at(ex, term).sign : 0;
}

RNET_API double rnet_expansion_term_value(const rnet_expansion* ex, size_t term) {
  return (ex && term < ex->ex.terms.size()) ? term_at(ex, term).value() : 0.0;
}

RNET_API double rnet_expansion_term_residual_det(const rnet_expansion* ex, size_t term) {
  return (ex && term < ex->ex.terms.size()) ? term_at(ex, term).residual_det : 0.0;
}

RNET_API size_t rnet_expansion_path_count(const rnet_expansion* ex, size_t term) {
  return (ex && term < ex->ex.terms.size()) ? term_at(ex, term).system.paths.size() : 0;
}

RNET_API size_t rnet_expansion_path(const rnet_expansion* ex, size_t term, size_t path, int* out,
                                    size_t cap) {
  if (!ex || term >= ex->ex.terms.size()) return 0;
  const auto& paths = term_at(ex, term).system.paths;
  return path < paths.size() ? copy_out(paths[path], out, cap) : 0;
}

RNET_API size_t rnet_expansion_residual(const rnet_expansion* ex, size_t term, int* out,
                                        size_t cap) {
  if (!ex || term >= ex->ex.terms.size()) return 0;
  return copy_out(term_at(ex, term).system.residual, out, cap);
}

RNET_API size_t rnet_expansion_monomial(const rnet_expansion* ex, size_t term, int* out,
                                        size_t cap) {
  if (!ex || term >= ex->ex.terms.size()) return 0;
  return copy_out(term_at(ex, term).monomial, out, cap);
}

RNET_API double rnet_expansion_total(const rnet_expansion* ex) { return ex ? ex->ex.total : 0.0; }

RNET_API double rnet_expansion_reference(const rnet_expansion* ex) {
  return ex ? ex->ex.reference : 0.0;
}

RNET_API double rnet_expansion_discrepancy(const rnet_expansion* ex) {
  return ex ? ex->ex.discrepancy : 0.0;
}

RNET_API void rnet_expansion_free(rnet_expansion* ex) { delete ex; }

RNET_API rnet_status rnet_rank(const rnet_network* net, int max_pair_size, int stop_at_full_rank,
                               rnet_rank_info* out) {
  if (!net || !out) return fail(RNET_ERR_INPUT, "null argument");
  return guarded([&] {
    const int k = max_pair_size < 0 ? net->net.n_boundary() : max_pair_size;
    const auto rows = rnet::enumerate_admissible_pairs(net->net, k, stop_at_full_rank != 0);
    const auto coeffs = rnet::coefficient_matrix(net->net, rows);
    out->rows = rows.size();
    out->rank = rnet::integer_rank(coeffs);
    out->unknowns = coeffs.cols();
    return RNET_OK;
  });
}

RNET_API rnet_status rnet_recover(const rnet_network* topology, const rnet_matrix* lam,
                                  int max_pair_size, int stop_at_full_rank, rnet_report** out) {
  if (!topology || !lam || !out) return fail(RNET_ERR_INPUT, "null argument");
  *out = nullptr;
  const int k = max_pair_size < 0 ? topology->net.n_boundary() : max_pair_size;
  try {
    g_last_error.clear();
    const rnet::DtNMap map(lam->m);
    *out = new rnet_report{rnet::recover(topology->net, map, k, stop_at_full_rank != 0)};
    return RNET_OK;
  } catch (const rnet::RankDeficient& e) {
    rnet::RecoveryReport r;
    r.rank = e.rank();
    r.unknowns = topology->net.n_edges() + (topology->net.n_interior() > 0 ? 1 : 0);
    r.unresolved_edges.assign(e.unresolved().begin(), e.unresolved().end());
    *out = new rnet_report{std::move(r)};
    return fail(RNET_ERR_RANK, e.what());
  } catch (const rnet::RoundTripFailure& e) {
    *out = new rnet_report{e.report()};
    return fail(RNET_ERR_ROUNDTRIP, e.what());
  } catch (const rnet::Error& e) {
    return fail(static_cast<rnet_status>(e.kind()), e.what());
  } catch (const std::exception& e) {
    return fail(RNET_ERR_INTERNAL, e.what());
  }
}

RNET_API size_t rnet_report_gamma_count(const rnet_report* r) {
  return r ? r->report.recovered_gammas.size() : 0;
}

RNET_API double rnet_report_gamma(const rnet_report* r, size_t edge_index) {
  return (r && edge_index < r->report.recovered_gammas.size())
             ? r->report.recovered_gammas[edge_index]
             : 0.0;
}

RNET_API double rnet_report_logdet(const rnet_report* r) { return r ? r->report.logdet_kii : 0.0; }
RNET_API double rnet_report_residual(const rnet_report* r) {
  return r ? r->report.residual_norm : 0.0;
}
RNET_API double rnet_report_roundtrip_error(const rnet_report* r) {
  return r ? r->report.roundtrip_error : 0.0;
}
RNET_API size_t rnet_report_rank(const rnet_report* r) { return r ? r->report.rank : 0; }
RNET_API size_t rnet_report_unknowns(const rnet_report* r) { return r ? r->report.unknowns : 0; }
RNET_API size_t rnet_report_rows(const rnet_report* r) { return r ? r->report.rows : 0; }

RNET_API size_t rnet_report_unresolved(const rnet_report* r, int* out, size_t cap) {
  return r ? copy_out(r->report.unresolved_edges, out, cap) : 0;
}

RNET_API size_t rnet_report_warning_count(const rnet_report* r) {
  return r ? r->report.warnings.size() : 0;
}

RNET_API const char* rnet_report_warning(const rnet_report* r, size_t i) {
  return (r && i < r->report.warnings.size()) ? r->report.warnings[i].c_str() : "";
}

RNET_API void rnet_report_free(rnet_report* r) { delete r; }

}  // extern "C"
