#include "halfgap/cli.hpp"

int main(int argc, char** argv) { return halfgap::cli::run(argc, argv); }
