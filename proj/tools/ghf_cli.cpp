#include "ghf/harness.hpp"

int main(int argc, char** argv) {
    return ghf::run_cli(argc, argv);
}
