// Runs every acceptance criterion and prints one PASS/FAIL line each.
#include "kawahara/verify.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

int main(int argc, char** argv)
{
    kawahara::VerifyOptions opt;
    for (int i = 1; i < argc; ++i) opt.only.push_back(argv[i]);
    if (const char* s = std::getenv("KAWAHARA_SEED")) opt.seed = std::strtoull(s, nullptr, 10);
    auto rep = kawahara::run_verify(opt, [](const kawahara::CriterionResult& r) {
        std::printf("%s criterion %2d [%s] %s\n", r.pass ? "PASS" : "FAIL", r.id, r.group.c_str(), r.title.c_str());
        for (const auto& c : r.checks)
            std::printf("    %-28s %-12.4g %s %.4g\n", c.name.c_str(), c.value, c.at_least ? ">=" : "<=", c.limit);
        if (!r.error.empty()) std::printf("    error: %s\n", r.error.c_str());
        std::fflush(stdout);
    });
    return rep.pass() ? 0 : 1;
}
