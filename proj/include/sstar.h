#ifndef SSTAR_H
#define SSTAR_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SSTAR_API __declspec(dllexport)
#else
#define SSTAR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as CLI exit statuses. */
typedef enum sstar_status {
  SSTAR_OK = 0,
  SSTAR_E_USAGE = 1,
  SSTAR_E_PARSE = 2,
  SSTAR_E_PRECONDITION = 3,
  SSTAR_E_BUDGET = 4,
  SSTAR_E_ILLEGAL_MOVE = 5,
  SSTAR_E_NOT_FOUND = 6,
  SSTAR_E_IO = 7,
  SSTAR_E_INTERNAL = 8
} sstar_status;

typedef struct sstar_context sstar_context;
typedef struct sstar_solver sstar_solver;

SSTAR_API const char* sstar_version(void);
SSTAR_API const char* sstar_status_name(sstar_status status);

SSTAR_API sstar_context* sstar_context_new(void);
SSTAR_API void sstar_context_free(sstar_context* ctx);

/* Node budget for searches (default 10^7) and seed for randomized commands. */
SSTAR_API void sstar_context_set_budget(sstar_context* ctx, uint64_t budget);
SSTAR_API void sstar_context_set_seed(sstar_context* ctx, uint64_t seed);

/* Strings stay valid until the next call on the same context. */
SSTAR_API const char* sstar_last_error(const sstar_context* ctx);
SSTAR_API const char* sstar_output(const sstar_context* ctx);
/* Certificate document of the last reduce; empty when none. */
SSTAR_API const char* sstar_certificate(const sstar_context* ctx);

/*
 * kind: normalize-3sat | 3sat-to-epmx | epmx-to-stars | stars-to-comets |
 *       setcover-to-pure | pure-to-blackout
 */
SSTAR_API sstar_status sstar_reduce(sstar_context* ctx, const char* kind, const char* input);

/*
 * kind: stars | paintcan | epmx | blackout. first may be NULL: stars and
 * paintcan then print the outcome class, epmx and blackout use the side
 * recorded in the document.
 */
SSTAR_API sstar_status sstar_solve(sstar_context* ctx, const char* kind, const char* input,
                                   const char* first);

/* kind: sat | restricted | min-cover | cover | exact-cover */
SSTAR_API sstar_status sstar_oracle(sstar_context* ctx, const char* kind, const char* input);

/* kind: nimsum | gf2 | solver. size 0 picks the default workload. */
SSTAR_API sstar_status sstar_bench(sstar_context* ctx, const char* kind, uint64_t size);

/* Blocks serving HTTP. static_dir and persist_path may be NULL. */
SSTAR_API sstar_status sstar_serve(sstar_context* ctx, const char* host, int port,
                                   const char* static_dir, const char* persist_path);

/* A solver whose transposition table persists across queries. */
SSTAR_API sstar_solver* sstar_solver_new(uint64_t budget);
SSTAR_API void sstar_solver_free(sstar_solver* solver);
/* Writes 'N', 'P', 'L' or 'R' to *outcome. */
SSTAR_API sstar_status sstar_solver_outcome(sstar_solver* solver, const char* sum, char* outcome);
SSTAR_API size_t sstar_solver_memo_size(const sstar_solver* solver);
SSTAR_API const char* sstar_solver_last_error(const sstar_solver* solver);

#ifdef __cplusplus
}
#endif

#endif
