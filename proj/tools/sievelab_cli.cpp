#include "sievelab/cli_app.hpp"

int main(int argc, char** argv) { return sievelab::run(argc, argv); }
