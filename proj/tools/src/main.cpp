#include "adm/cli/commands.hpp"

int main(int argc, char** argv) { return adm::cli::main_entry(argc, argv); }
