#include <stdio.h>
#include <string.h>

#include "nishida/nishida.h"

static int failures = 0;

#define EXPECT(cond)                                                      \
    do {                                                                  \
        if (!(cond)) {                                                    \
            fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
            ++failures;                                                   \
        }                                                                 \
    } while (0)

int main(void)
{
    nishida_session* s = nishida_session_new();
    EXPECT(s != NULL);

    EXPECT(nishida_coproduct(s, "B", 1) == NISHIDA_OK);
    EXPECT(strcmp(nishida_output(s), "h0\xE2\x8A\x97h1 + h1\xE2\x8A\x97h0^2\n") == 0);

    EXPECT(nishida_session_set(s, "output", "json") == NISHIDA_OK);
    EXPECT(nishida_coproduct(s, "A", 0) == NISHIDA_OK);
    EXPECT(strstr(nishida_output(s), "\"schema\":1") != NULL);
    EXPECT(strstr(nishida_output(s), "\"generator\":0") != NULL);
    EXPECT(nishida_session_set(s, "output", "text") == NISHIDA_OK);

    /* failed settings leave the session unchanged */
    EXPECT(nishida_session_set(s, "colour", "red") == NISHIDA_USAGE);
    EXPECT(strlen(nishida_last_error(s)) > 0);
    EXPECT(nishida_session_set(s, "cap", "1") == NISHIDA_USAGE);
    EXPECT(nishida_session_set(s, "cap", "twelve") == NISHIDA_USAGE);
    EXPECT(nishida_session_set(s, "cap", "1000") == NISHIDA_BUDGET);
    EXPECT(nishida_session_set(s, "fgl", "multiplicative") == NISHIDA_USAGE);
    EXPECT(nishida_qstruct(s, "A", 0) == NISHIDA_OK);
    EXPECT(strstr(nishida_output(s), "O(t^9)") != NULL);

    EXPECT(nishida_session_set(s, "cap", "4") == NISHIDA_OK);
    EXPECT(strlen(nishida_last_error(s)) == 0);
    EXPECT(nishida_qstruct(s, "Z", 0) == NISHIDA_USAGE);
    EXPECT(nishida_qstruct(s, "A", -1) == NISHIDA_USAGE);
    EXPECT(nishida_coaction(s, "cohomology", 2, 2) == NISHIDA_USAGE);
    EXPECT(nishida_charnum_beta(s, "CP2", "tangential") == NISHIDA_USAGE);
    EXPECT(nishida_charnum_beta(s, "RP2", "sideways") == NISHIDA_USAGE);

    EXPECT(nishida_charnum_beta(s, "RP2", "tangential") == NISHIDA_OK);
    EXPECT(strcmp(nishida_output(s), "h0\xC2\xB7h2 + h1^2\n") == 0);
    EXPECT(nishida_charnum_beta(s, "RP3", "normal") == NISHIDA_OK);
    EXPECT(strcmp(nishida_output(s), "0\n") == 0);

    EXPECT(nishida_check(s, "homology", 2, 2) == NISHIDA_OK);
    EXPECT(strstr(nishida_output(s), "\"status\":\"fail\"") == NULL);
    EXPECT(nishida_verify(s, "hopf") == NISHIDA_OK);
    EXPECT(nishida_verify(s, "nope") == NISHIDA_USAGE);

    EXPECT(nishida_suite_count() > 0);
    EXPECT(strcmp(nishida_suite_name(0), "hopf") == 0);
    EXPECT(nishida_suite_name(nishida_suite_count()) == NULL);
    EXPECT(strcmp(nishida_status_string(NISHIDA_BUDGET), "budget exceeded") == 0);

    EXPECT(nishida_verify(NULL, "hopf") == NISHIDA_USAGE);
    nishida_session_free(s);
    nishida_session_free(NULL);

    if (failures)
        fprintf(stderr, "%d failure(s)\n", failures);
    return failures ? 1 : 0;
}
