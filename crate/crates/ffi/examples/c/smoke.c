#include <stdio.h>
#include <string.h>

#include "qminor.h"

int main(void) {
    QmRelation *rel = NULL;
    if (qm_commute(4, "[3 4|1 3]", "[1 2|2 4]", &rel) != QM_STATUS_OK) {
        fprintf(stderr, "commute: %s\n", qm_last_error_message());
        return 1;
    }
    char *text = NULL;
    qm_relation_to_string(rel, &text);
    printf("%s\nverified: %d\n", text, qm_relation_verified(rel));
    qm_string_free(text);
    qm_relation_free(rel);

    if (qm_commute(4, "[1 2", "[1|1]", &rel) != QM_STATUS_PARSE) {
        return 2;
    }
    if (strlen(qm_last_error_message()) == 0) {
        return 3;
    }
    return 0;
}
