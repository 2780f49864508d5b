#include "nilric/cli.hpp"

int main(int argc, char** argv) {
    return nilric::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
