#include "imploder/cli.hpp"

int main(int argc, char** argv) { return imploder::run_cli(argc, argv); }
