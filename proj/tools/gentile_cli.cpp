#include "cli.hpp"

int main(int argc, char** argv) { return gentile::cli::run(argc, argv); }
