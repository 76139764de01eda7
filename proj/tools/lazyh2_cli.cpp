#include "lazyh2/cli.hpp"

int main(int argc, char** argv) { return lazyh2::cli::run(argc, argv); }
