#include "cli.hpp"

int main(int argc, char** argv) { return htwave::cli::parse_and_dispatch(argc, argv); }
