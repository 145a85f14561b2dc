/* C surface of the mapspace library.
 *
 * Handles are opaque; every entry point returns a status code and reports
 * details through msh_last_error().  Functions that produce output write a
 * malloc'd NUL-terminated buffer of line-delimited JSON records (schema tag
 * "msh/1") into *out; release it with msh_buf_free().
 */
#ifndef MAPSPACE_H
#define MAPSPACE_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
    MSH_OK = 0,
    MSH_EINVAL = 1,   /* invalid argument or window */
    MSH_EPARSE = 2,   /* malformed descriptor or file */
    MSH_EBUDGET = 3,  /* work budget exhausted */
    MSH_EWINDOW = 4,  /* truncation window violation */
    MSH_ECHECK = 5,   /* a verified identity failed */
    MSH_EINTERNAL = 6 /* unexpected failure */
};

typedef struct msh_space msh_space;

/* Library version string; static storage. */
const char *msh_version(void);

/* Message of the last failing call on this thread; static storage, valid
 * until the next failing call. */
const char *msh_last_error(void);

/* Releases a buffer returned through a char ** out-parameter. */
void msh_buf_free(char *buf);

/* Builds a pointed simplicial set from a descriptor:
 *   point          one-point space
 *   sphere:N       minimal N-sphere, 0 <= N <= 8
 *   delta:P        augmented P-simplex with a disjoint basepoint, P <= 8
 *   circle:K       cycle of K vertices, K >= 2 (use 3 for the two-vertex
 *                  round trip tests and beyond)
 *   nerve_z:M      nerve of the cyclic group Z/M, dimensions cut at 6
 *   nerve_z:M:CAP  ... cut at CAP instead (1 <= CAP <= 12)
 *   @PATH          space file written by msh_space_text
 */
int msh_space_parse(const char *desc, msh_space **out);
void msh_space_free(msh_space *sp);

/* Name of the space; owned by the handle. */
const char *msh_space_name(const msh_space *sp);

/* Serializes the space in the @PATH file format. */
int msh_space_text(const msh_space *sp, char **out);

/* Reduced homology ranks of the space over F_prime for degrees lo..hi.
 * Records: homology{space, prime, degree, rank}. */
int msh_homology(const msh_space *sp, uint32_t prime, int lo, int hi, char **jsonl);

/* Builds both chain models of the pointed mapping space target^source on the
 * truncation window p <= pmax, q <= qmax and reports:
 *   bidegree{model, p, q, rank}        block ranks of both bicomplexes
 *   diag{model, degree, rank}          homology of both diagonal totalizations
 *   mapspace{degree, rank}             direct enumeration (budget permitting)
 *   stabilization{model, ...}          degree-0 ranks on two growing windows
 * Partial results are still written when a component exceeds the budget; the
 * return code then reports the failure. */
int msh_models(const msh_space *source, const msh_space *target, uint32_t prime,
               int pmax, int qmax, uint64_t budget, char **jsonl);

/* Runs the identity suites on the pair (source, target) and reports one
 * suite{suite, pass, checks, detail} record per suite plus a final
 * verdict{pass, failed} record.  *all_pass is set to 1 iff every suite
 * passed; the return code is MSH_OK even when suites fail (use *all_pass). */
int msh_verify(const msh_space *source, const msh_space *target, uint32_t prime,
               int pmax, int qmax, int smax, uint64_t budget, char **jsonl,
               int *all_pass);

#ifdef __cplusplus
}
#endif

#endif /* MAPSPACE_H */
