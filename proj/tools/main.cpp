#include "gridnet/cli.hpp"

int main(int argc, char** argv) {
    return gridnet::cli::run(argc, argv);
}
