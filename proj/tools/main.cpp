#include "lexplan/cli.hpp"

int main(int argc, char** argv) { return lexplan::run_cli(argc, argv); }
