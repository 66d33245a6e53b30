#include "octa/verify.hpp"

#include <cstdio>
#include <cstdlib>

// one line per criterion; nonzero exit when any fails
int main(int argc, char** argv) {
    octa::VerifyOptions opt;
    if (argc > 1) opt.seed = std::strtoull(argv[1], nullptr, 10);
    int failed = 0;
    for (int id = 1; id <= octa::kCriteria; ++id) {
        auto r = octa::verify_criterion(id, opt);
        std::printf("%s\n", octa::format_result(r).c_str());
        std::fflush(stdout);
        failed += !r.pass;
    }
    std::printf("%d/%d criteria passed\n", octa::kCriteria - failed, octa::kCriteria);
    return failed ? 1 : 0;
}
