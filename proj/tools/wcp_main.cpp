#include "wcp/cli.hpp"

int main(int argc, char** argv) { return wcp::cli::run(argc, argv); }
