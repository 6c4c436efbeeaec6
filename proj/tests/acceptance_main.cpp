#include <cstdio>
#include <string>

#include "levylab/verify.hpp"

int main(int argc, char** argv) {
    levylab::VerifyOptions opts;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--threads" && i + 1 < argc) {
            opts.threads = std::stoi(argv[++i]);
        }
    }

    const auto results = levylab::run_acceptance(opts);
    int failed = 0;
    for (const auto& r : results) {
        if (!r.pass) ++failed;
        std::printf("[%s] %02d %s (%.1fs): %s\n", r.pass ? "PASS" : "FAIL", r.index,
                    r.name.c_str(), r.seconds, r.detail.c_str());
    }
    std::printf("%zu criteria, %d failed\n", results.size(), failed);
    return failed == 0 ? 0 : 1;
}
