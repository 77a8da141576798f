#include "siruv/cli.hpp"

int main(int argc, char** argv) { return siruv::cli::run(argc, argv); }
