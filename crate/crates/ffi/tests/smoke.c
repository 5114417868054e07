#include <stdio.h>
#include <string.h>

#include "bourbaki.h"

int main(void) {
    BkAssembly *a = NULL;
    if (bk_assembly_expand("(subset x y)", &a) != BK_STATUS_OK) return 1;
    BkClassification c;
    if (bk_assembly_classify(a, &c) != BK_STATUS_OK || c != BK_CLASSIFICATION_RELATION) return 2;
    bk_assembly_free(a);

    char *signs = NULL, *links = NULL;
    if (bk_count_numeral(1, &signs, &links) != BK_STATUS_OK) return 3;
    int ok = strcmp(signs, "513") == 0 && strcmp(links, "134") == 0;
    bk_string_free(signs);
    bk_string_free(links);
    if (!ok) return 4;

    if (bk_assembly_expand("(in x", &a) != BK_STATUS_PARSE || bk_last_error() == NULL) return 5;
    printf("ok\n");
    return 0;
}
