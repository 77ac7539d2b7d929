#include "omsq/cli.hpp"

int main(int argc, char** argv) {
    return omsq::cli_main(argc, argv);
}
