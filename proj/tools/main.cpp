#include "commands.hpp"

int main(int argc, char** argv) { return hsim::cli::run(argc, argv); }
