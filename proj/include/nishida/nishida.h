#ifndef NISHIDA_H
#define NISHIDA_H

/* C interface to the nishida core. Strings returned by a session stay valid
   until the next call on that session or nishida_session_free. */

#include <stddef.h>

#if defined(NISHIDA_BUILDING)
#define NISHIDA_API __attribute__((visibility("default")))
#else
#define NISHIDA_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct nishida_session nishida_session;

typedef enum {
    NISHIDA_OK = 0,
    NISHIDA_VERIFY_FAILED = 1,
    NISHIDA_USAGE = 2,
    NISHIDA_BUDGET = 3,
    NISHIDA_ALGEBRA = 4,
    NISHIDA_INTERNAL = 5
} nishida_status;

NISHIDA_API nishida_session* nishida_session_new(void);
NISHIDA_API void nishida_session_free(nishida_session* s);

/* Keys: cap, maxweight, fgl, quadratic, reading, output. */
NISHIDA_API nishida_status nishida_session_set(nishida_session* s, const char* key, const char* value);
NISHIDA_API const char* nishida_last_error(const nishida_session* s);
/* Output of the last successful command. */
NISHIDA_API const char* nishida_output(const nishida_session* s);

NISHIDA_API nishida_status nishida_coproduct(nishida_session* s, const char* algebra, int gen);
NISHIDA_API nishida_status nishida_antipode(nishida_session* s, const char* algebra, int gen);
NISHIDA_API nishida_status nishida_qstruct(nishida_session* s, const char* algebra, int gen);
NISHIDA_API nishida_status nishida_dstruct(nishida_session* s);
NISHIDA_API nishida_status nishida_coaction(nishida_session* s, const char* side, int maxdeg, int maxweight);
NISHIDA_API nishida_status nishida_check(nishida_session* s, const char* side, int maxdeg, int maxweight);
NISHIDA_API nishida_status nishida_fgl_dump(nishida_session* s);
NISHIDA_API nishida_status nishida_charnum_beta(nishida_session* s, const char* manifold, const char* variant);
NISHIDA_API nishida_status nishida_charnum_thm4(nishida_session* s);
NISHIDA_API nishida_status nishida_verify(nishida_session* s, const char* suite);

NISHIDA_API size_t nishida_suite_count(void);
NISHIDA_API const char* nishida_suite_name(size_t i);

NISHIDA_API const char* nishida_status_string(nishida_status st);

#ifdef __cplusplus
}
#endif

#endif
