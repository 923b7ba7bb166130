#include "cli.hpp"

#include <exception>
#include <iostream>
#include <string>
#include <vector>

namespace {

void print_usage(std::ostream& out) {
    out << "usage: stochlab <subcommand> <experiment> [--seed N] [--replicas N]\n"
           "                [--out json|csv] [--output PATH] [--plot PATH]\n"
           "                [--<param> VALUE ...]\n"
           "       stochlab list\n"
           "\n"
           "subcommands: sample exact limits macro mcmc sde graph list\n"
           "environment: STOCHLAB_SEED sets the default seed\n"
           "exit codes:  0 all checks pass, 1 a check failed, 2 usage error\n";
}

} // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        auto config = stochlab::cli::parse_args(args);
        return stochlab::cli::execute(config);
    } catch (const stochlab::cli::UsageError& e) {
        std::cerr << "error: " << e.message << "\n\n";
        print_usage(std::cerr);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
