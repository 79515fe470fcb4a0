/* C interface to the resistor-network library.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every fallible call returns an rnet_status;
 * on failure rnet_last_error() describes the problem for the calling
 * thread. Vertex labels are 1-based. Strings returned through char** are
 * released with rnet_string_free.
 */
#ifndef RNET_H
#define RNET_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(RNET_BUILDING_LIBRARY)
#define RNET_API __attribute__((visibility("default")))
#else
#define RNET_API
#endif

/* Values double as CLI exit codes. */
typedef enum rnet_status {
  RNET_OK = 0,
  RNET_ERR_INTERNAL = 1,
  RNET_ERR_INPUT = 2,
  RNET_ERR_MODEL = 3,
  RNET_ERR_EXPANSION = 4,
  RNET_ERR_RANK = 5,
  RNET_ERR_ROUNDTRIP = 6
} rnet_status;

typedef struct rnet_network rnet_network;
typedef struct rnet_matrix rnet_matrix;
typedef struct rnet_expansion rnet_expansion;
typedef struct rnet_report rnet_report;

typedef struct rnet_rank_info {
  size_t rows;     /* admissible rows collected */
  size_t rank;     /* exact rank of their coefficient matrix */
  size_t unknowns; /* edges, plus one when the network has interior vertices */
} rnet_rank_info;

RNET_API const char* rnet_last_error(void);
RNET_API void rnet_string_free(char* s);

/* Networks. */
RNET_API rnet_status rnet_network_parse(const char* text, rnet_network** out);
RNET_API rnet_status rnet_network_lattice(const double* gammas12, rnet_network** out);
RNET_API rnet_status rnet_network_serialize(const rnet_network* net, char** out);
RNET_API rnet_status rnet_network_with_gammas(const rnet_network* net, const double* gammas,
                                              size_t count, rnet_network** out);
RNET_API rnet_status rnet_network_gammas(const rnet_network* net, double* out, size_t count);
RNET_API int rnet_network_boundary_count(const rnet_network* net);
RNET_API int rnet_network_interior_count(const rnet_network* net);
RNET_API size_t rnet_network_edge_count(const rnet_network* net);
RNET_API void rnet_network_free(rnet_network* net);

/* Dense matrices in the "rows cols" text format. */
RNET_API rnet_status rnet_matrix_parse(const char* text, rnet_matrix** out);
RNET_API rnet_status rnet_matrix_format(const rnet_matrix* m, char** out);
RNET_API size_t rnet_matrix_rows(const rnet_matrix* m);
RNET_API size_t rnet_matrix_cols(const rnet_matrix* m);
RNET_API double rnet_matrix_get(const rnet_matrix* m, size_t i, size_t j);
RNET_API void rnet_matrix_free(rnet_matrix* m);

/* Forward problem. */
RNET_API rnet_status rnet_dtn(const rnet_network* net, rnet_matrix** out);
RNET_API rnet_status rnet_dtn_subdet(const rnet_matrix* lam, const int* p, const int* q,
                                     size_t size, double* out);
/* u_out receives all n_boundary + n_interior potentials. */
RNET_API rnet_status rnet_harmonic_extension(const rnet_network* net, const double* u_boundary,
                                             size_t n_boundary, double* u_out, size_t n_out);

/* Path expansion of det K(P u I, Q u I). p and q must be strictly
 * ascending. Returns RNET_ERR_EXPANSION when the expansion disagrees with
 * the LU determinant; *out is still set in that case. */
RNET_API rnet_status rnet_expand(const rnet_network* net, const int* p, const int* q,
                                 size_t size, rnet_expansion** out);
RNET_API size_t rnet_expansion_term_count(const rnet_expansion* ex);
RNET_API int rnet_expansion_term_sign(const rnet_expansion* ex, size_t term);
RNET_API double rnet_expansion_term_value(const rnet_expansion* ex, size_t term);
RNET_API double rnet_expansion_term_residual_det(const rnet_expansion* ex, size_t term);
RNET_API size_t rnet_expansion_path_count(const rnet_expansion* ex, size_t term);
/* Copy-out accessors: return the full length and write at most cap items. */
RNET_API size_t rnet_expansion_path(const rnet_expansion* ex, size_t term, size_t path, int* out,
                                    size_t cap);
RNET_API size_t rnet_expansion_residual(const rnet_expansion* ex, size_t term, int* out,
                                        size_t cap);
RNET_API size_t rnet_expansion_monomial(const rnet_expansion* ex, size_t term, int* out,
                                        size_t cap);
RNET_API double rnet_expansion_total(const rnet_expansion* ex);
RNET_API double rnet_expansion_reference(const rnet_expansion* ex);
RNET_API double rnet_expansion_discrepancy(const rnet_expansion* ex);
RNET_API void rnet_expansion_free(rnet_expansion* ex);

/* Inverse problem. max_pair_size < 0 selects n_boundary. */
RNET_API rnet_status rnet_rank(const rnet_network* net, int max_pair_size, int stop_at_full_rank,
                               rnet_rank_info* out);
/* *out is set on RNET_OK, RNET_ERR_RANK and RNET_ERR_ROUNDTRIP. */
RNET_API rnet_status rnet_recover(const rnet_network* topology, const rnet_matrix* lam,
                                  int max_pair_size, int stop_at_full_rank, rnet_report** out);
RNET_API size_t rnet_report_gamma_count(const rnet_report* r);
RNET_API double rnet_report_gamma(const rnet_report* r, size_t edge_index);
RNET_API double rnet_report_logdet(const rnet_report* r);
RNET_API double rnet_report_residual(const rnet_report* r);
RNET_API double rnet_report_roundtrip_error(const rnet_report* r);
RNET_API size_t rnet_report_rank(const rnet_report* r);
RNET_API size_t rnet_report_unknowns(const rnet_report* r);
RNET_API size_t rnet_report_rows(const rnet_report* r);
RNET_API size_t rnet_report_unresolved(const rnet_report* r, int* out, size_t cap);
RNET_API size_t rnet_report_warning_count(const rnet_report* r);
RNET_API const char* rnet_report_warning(const rnet_report* r, size_t i);
RNET_API void rnet_report_free(rnet_report* r);

#ifdef __cplusplus
}
#endif

#endif /* RNET_H */
