// Acceptance suite: one pass/fail line per criterion with timing.
// Returns the number of failed criteria. Used by the standalone acceptance
// binary and by `qmetro selftest`.

#pragma once

#include <cstdio>

int run_acceptance(std::FILE* out);
