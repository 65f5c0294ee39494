#include "scenario.hpp"

int main(int argc, char** argv) { return lgt::cli::main_cli(argc, argv); }
