// Standalone acceptance-suite runner.

#include <cstdio>

#include "acceptance.hpp"

int main() {
    int failed = run_acceptance(stdout);
    return failed == 0 ? 0 : 1;
}
