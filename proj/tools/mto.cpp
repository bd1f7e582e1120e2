#include "mto/cli.hpp"

int main(int argc, char** argv) { return mto::cli_main(argc, argv); }
