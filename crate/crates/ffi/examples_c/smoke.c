#include <math.h>
#include <stdio.h>
#include "fbcs.h"

int main(void) {
    FbcsGrid *grid = NULL;
    if (fbcs_grid_new(8, 6.283185307179586, &grid) != FBCS_STATUS_OK) return 1;
    FbcsPhysParams p = {1.0, 1.0, 1.0, 2.0, 0.5, 0.75};
    double xi[3] = {0.7, -1.3, 2.1};
    double s[16];
    if (fbcs_semigroup_symbol(xi, 0.5, &p, FBCS_CONVENTION_CORRECTED, s) != FBCS_STATUS_OK) return 2;
    double l = 0.0;
    fbcs_coupling_bound(&p, &l);
    FbcsGrid *bad = NULL;
    if (fbcs_grid_new(0, 1.0, &bad) != FBCS_STATUS_INVALID_ARGUMENT) return 3;
    char msg[128];
    fbcs_last_error_message(msg, sizeof msg);
    printf("L = %g, last error: %s\n", l, msg);
    fbcs_grid_free(grid);
    return fabs(l - 4.0) < 1e-14 ? 0 : 4;
}
