#include <stdio.h>
#include <string.h>
#include "hallsod.h"

int main(void) {
    HallsodQuiver *q = NULL;
    if (hallsod_quiver_load("tripled-jordan", &q) != HALLSOD_STATUS_OK) return 1;
    char *json = NULL;
    if (hallsod_r_invariant(q, "2", "5,-5", &json) != HALLSOD_STATUS_OK) return 2;
    printf("%s\n", json);
    hallsod_string_free(json);
    if (hallsod_r_invariant(q, "2", "5", &json) != HALLSOD_STATUS_INVALID_INPUT) return 3;
    printf("%s\n", hallsod_last_error());
    hallsod_quiver_free(q);

    HallsodElement *one = NULL, *prod = NULL;
    if (hallsod_element_parse("[1] 1", &one) != HALLSOD_STATUS_OK) return 4;
    if (hallsod_element_mul(one, one, HALLSOD_KERNEL_A2, &prod) != HALLSOD_STATUS_OK) return 5;
    char *value = NULL;
    if (hallsod_element_eval(prod, "2", "3", "5,1", &value) != HALLSOD_STATUS_OK) return 6;
    printf("%s\n", value);
    hallsod_string_free(value);
    hallsod_element_free(prod);
    hallsod_element_free(one);
    return 0;
}
