#include "elp/cli.hpp"

int main(int argc, char** argv) { return elp::cli::run(argc, argv); }
