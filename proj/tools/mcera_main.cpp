#include "mcera/cli.hpp"

int main(int argc, char** argv) { return mcera::cli::run(argc, argv); }
