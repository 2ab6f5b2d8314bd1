#include "framekit/cli.hpp"

int main(int argc, char** argv) { return framekit::cli::run(argc, argv); }
