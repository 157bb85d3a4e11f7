#include "cli/commands.hpp"

int main(int argc, char** argv) { return curvelab::cli::run(argc, argv); }
