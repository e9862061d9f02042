// Dedicated acceptance runner: one pass/fail line per criterion, nonzero
// exit when anything fails.
#include <iostream>

#include "wickflow/acceptance.hpp"

int main() {
    int failures = 0;
    for (const auto& result : wickflow::acceptance::run("all")) {
        std::cout << (result.pass ? "[PASS] " : "[FAIL] ") << result.name << ": " << result.detail
                  << std::endl;
        if (!result.pass) ++failures;
    }
    if (failures) {
        std::cout << failures << " criterion(s) FAILED" << std::endl;
        return 1;
    }
    std::cout << "all acceptance criteria passed" << std::endl;
    return 0;
}
