#include <stdio.h>
#include <string.h>

#include "cyclic_blocks.h"

static const char *STAR =
    "{\"p\":3,\"n\":2,\"e\":2,\"W\":{\"indices\":[]},"
    "\"tree\":{\"vertices\":[{\"id\":\"chi_Lambda\",\"sign\":\"-\"},"
    "{\"id\":\"chi_1\",\"sign\":\"+\"},{\"id\":\"chi_2\",\"sign\":\"+\"}],"
    "\"edges\":[{\"id\":\"S_1\",\"ends\":[\"chi_Lambda\",\"chi_1\"]},"
    "{\"id\":\"S_2\",\"ends\":[\"chi_Lambda\",\"chi_2\"]}],"
    "\"cyclic_order\":{\"chi_Lambda\":[\"S_1\",\"S_2\"],\"chi_1\":[\"S_1\"],\"chi_2\":[\"S_2\"]},"
    "\"exceptional\":\"chi_Lambda\"}}";

int main(void) {
    uint64_t dim = 0;
    const uint32_t w[] = {1, 2};
    if (cb_cap_dim(3, 3, w, 2, 3, &dim) != CB_STATUS_OK || dim != 7) {
        fprintf(stderr, "cap_dim: %llu\n", (unsigned long long)dim);
        return 1;
    }

    cb_character_t *chi = NULL;
    if (cb_det1_character(3, 2, w, 1, &chi) != CB_STATUS_OK || cb_character_len(chi) != 9) {
        return 2;
    }
    const int64_t *mults = cb_character_data(chi);
    int64_t degree = 0;
    for (size_t k = 0; k < 9; k++) {
        degree += mults[k];
    }
    cb_character_free(chi);
    if (degree != 2) {
        return 3;
    }

    cb_block_t *block = NULL;
    if (cb_block_from_json(STAR, true, &block) != CB_STATUS_OK) {
        fprintf(stderr, "%s\n", cb_last_error_message());
        return 4;
    }
    char *table = NULL;
    cb_status status = cb_block_enumerate_json(block, 1, &table);
    int ok = status == CB_STATUS_OK && strstr(table, "\"trivial_source\"") != NULL;
    cb_string_free(table);
    cb_block_free(block);
    if (!ok) {
        return 5;
    }

    if (cb_block_from_json("{", false, &block) != CB_STATUS_PARSE_ERROR || cb_last_error_message() == NULL) {
        return 6;
    }
    puts("ok");
    return 0;
}
