#include <stdio.h>
#include "tetra.h"

int main(void) {
    uint16_t r;
    if (tetra_mat3_parse("011/001/110", &r) != TETRA_STATUS_OK) return 1;
    uint8_t map[8];
    if (tetra_quantize(r, map) != TETRA_STATUS_OK) return 1;
    for (int i = 0; i < 8; i++) printf("%d%c", map[i], i == 7 ? '\n' : ',');
    bool g = false;
    tetra_is_genuinely_3d(r, &g);
    printf("genuinely 3d: %d\n", g);
    if (tetra_mat3_parse("bogus", &r) != TETRA_STATUS_OK) {
        char msg[128];
        tetra_last_error_message(msg, sizeof msg);
        printf("error: %s\n", msg);
    }
    return 0;
}
