#include "rotalg/cli.hpp"

int main(int argc, char** argv) {
    return rotalg::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
