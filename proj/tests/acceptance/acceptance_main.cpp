#include <cstdlib>
#include <iostream>
#include <string>

#include "confgauss/acceptance.hpp"

int main(int argc, char** argv) {
    confgauss::AcceptanceConfig cfg;
    if (argc > 1) cfg.n = std::atoi(argv[1]);
    int failed = 0;
    confgauss::run_acceptance(cfg, [&](const confgauss::CriterionResult& r) {
        std::cout << confgauss::format_line(r) << std::endl;
        if (!r.pass) ++failed;
    });
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
    return failed == 0 ? 0 : 1;
}
