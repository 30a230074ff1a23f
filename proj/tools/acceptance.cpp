// Runs the acceptance battery and prints one PASS/FAIL line per criterion.
// Usage: acceptance [criterion ...] [--inject-fault snf] [--seed N]

#include <cstdlib>
#include <iostream>
#include <string>

#include "obstrukt/testing/acceptance.hpp"

int main(int argc, char** argv)
{
    using namespace obstrukt;
    acceptance::Options opt;
    opt.seed = SeedRegistry::from_environment().base();
    try {
        for (int i = 1; i < argc; ++i) {
            const std::string a = argv[i];
            if (a == "--inject-fault" && i + 1 < argc)
                opt.fault = argv[++i];
            else if (a == "--seed" && i + 1 < argc)
                opt.seed = std::stoull(argv[++i]);
            else
                opt.only.insert(a);
        }
        int failed = 0;
        acceptance::run(opt, [&](const acceptance::Result& r) {
            std::cout << r.line() << std::endl;
            if (!r.pass) ++failed;
        });
        return failed == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
