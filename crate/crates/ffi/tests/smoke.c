#include <stdio.h>
#include "bcdkit.h"

int main(void) {
    BcdNetlist *nl = NULL;
    if (bcd_netlist_generate("ncla4", 1, &nl) != BCD_STATUS_OK) {
        fprintf(stderr, "%s\n", bcd_last_error());
        return 1;
    }
    uint8_t in[9] = {1, 0, 1, 0, 1, 1, 1, 0, 0};
    uint8_t out[5];
    uint32_t total = 0;
    bcd_netlist_evaluate(nl, in, 9, out, 5);
    bcd_netlist_transistor_cost(nl, &total);
    printf("S=%u%u%u%u C4=%u cost=%u\n", out[3], out[2], out[1], out[0], out[4], total);
    bcd_netlist_free(nl);
    return 0;
}
