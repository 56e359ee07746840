/* Copyright 2026 The Weave Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ========================================================================= */

/* The public header must stay usable from plain C. */
#include <stdio.h>

#include "weave/weave.h"

int main(void) {
    const int gens[] = {1, 2};
    weave_braid *b = NULL;
    char *text = NULL;
    if (weave_braid_create(3, gens, 2, &b) != WEAVE_OK) return 1;
    if (!weave_braid_is_weave(b, 1)) return 1;
    if (weave_braid_format(b, 1, &text) != WEAVE_OK) return 1;
    fputs(text, stdout);
    weave_string_free(text);
    weave_braid_free(b);
    return 0;
}
