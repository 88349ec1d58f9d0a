#include <stdio.h>
#include <string.h>

#include "li2poly.h"

int main(void) {
    Li2Polytope *p = NULL;
    if (li2_polytope_pstar(12, 6, &p) != LI2_STATUS_OK) {
        fprintf(stderr, "construct: %s\n", li2_last_error_message());
        return 1;
    }
    int64_t f[8];
    size_t len = 0;
    if (li2_polytope_f_vector(p, f, 8, &len) != LI2_STATUS_OK || len != 7) {
        fprintf(stderr, "f-vector: %s\n", li2_last_error_message());
        return 1;
    }
    for (size_t i = 0; i < len; i++) {
        printf("%s%lld", i ? " " : "", (long long)f[i]);
    }
    printf("\n");
    li2_polytope_free(p);

    if (li2_polytope_pstar(10, 6, &p) != LI2_STATUS_INVALID_ARGUMENT) {
        return 1;
    }
    return strstr(li2_last_error_message(), "divisor") ? 0 : 1;
}
