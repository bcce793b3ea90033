#include "cli_app.hpp"

int main(int argc, char** argv) { return susyrpm::cli::run(argc, argv); }
