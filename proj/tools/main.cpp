#include "cli.hpp"

int main(int argc, char** argv) { return girthforge::cli::dispatch(argc, argv); }
