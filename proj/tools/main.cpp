#include "cli.hpp"

int main(int argc, char** argv) { return fink::cli::dispatch(argc, argv); }
