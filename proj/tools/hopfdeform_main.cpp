#include "hopfdeform/cli.hpp"

int main(int argc, char** argv) { return hopfdeform::cli::run_main(argc, argv); }
