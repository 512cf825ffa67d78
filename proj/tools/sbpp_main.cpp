#include "sbpp/cli.hpp"

int main(int argc, char** argv) { return sbpp::cli::main(argc, argv); }
