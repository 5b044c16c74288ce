#include <iostream>

#include "qhcompat/commands.hpp"

int main(int argc, char** argv) {
    return qhcompat::cli::run(argc, argv, std::cout, std::cerr);
}
