// fdassoc: analytic evaluation, simulation, sweeps, validation and weight
// optimization for multi-tier full-duplex networks with decoupled association.

#include <iostream>

#include "fdassoc/cli/app.hpp"

int main(int argc, char** argv) {
    return fdassoc::cli::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
