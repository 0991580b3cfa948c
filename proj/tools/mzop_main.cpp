#include <string>
#include <vector>

#include "mzop/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return mzop::run_cli(args);
}
