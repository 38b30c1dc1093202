// Command line front end; subcommands are wired up in cli.hpp.
#include "hirsch/cli.hpp"

int main(int argc, char** argv) { return hirsch::cli::run(argc, argv); }
