#include <string>
#include <vector>

#include "loghls/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return loghls::run_cli(args);
}
