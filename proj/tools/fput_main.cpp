#include "fput/cli.hpp"

int main(int argc, char** argv) { return fput::cli::main(argc, argv); }
