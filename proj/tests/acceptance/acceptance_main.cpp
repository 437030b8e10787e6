#include <iostream>

#include "nilkit/acceptance.hpp"

int main(int argc, char** argv) {
    const std::string suite = argc > 1 ? argv[1] : "all";
    return nilkit::run_acceptance(suite, std::cout);
}
