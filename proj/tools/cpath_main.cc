#include "cpath/cli/commands.h"

int main(int argc, char** argv) { return cpath::cli::Main(argc, argv); }
