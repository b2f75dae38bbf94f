#include "commands.hpp"

int main(int argc, char** argv) { return polexp::cli::run_cli(argc, argv); }
