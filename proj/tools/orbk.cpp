#include <orbk/cli.hpp>

int main(int argc, char** argv) { return orbk::cli::run(argc, argv); }
