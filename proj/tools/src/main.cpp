#include "superatom_cli/commands.hpp"

int main(int argc, char** argv) { return superatom::cli::main_entry(argc, argv); }
