// Acceptance runner: one line per criterion, nonzero exit on any failure.

#include <cstdio>

#include "steiner/verify.hpp"

using steiner::verify::CheckResult;
using steiner::verify::Options;

namespace {

struct Criterion {
    const char* number;
    const char* what;
    std::vector<CheckResult> parts;
};

void print(const Criterion& c, bool pass) {
    double secs = 0;
    std::string detail;
    for (const auto& p : c.parts) {
        secs += p.seconds;
        if (!detail.empty()) detail += " | ";
        detail += p.id + ": " + p.detail;
    }
    std::printf("[%s] %-4s %-34s %7.2fs  %s\n", pass ? "PASS" : "FAIL", c.number, c.what, secs,
                detail.c_str());
    std::fflush(stdout);
}

}  // namespace

int main() {
    Options opt;  // spec trial counts, fixed seed
    int failures = 0;

    auto gate = [&](const char* number, const char* what, std::vector<CheckResult> parts) {
        bool pass = true;
        for (const auto& p : parts) pass = pass && p.pass;
        print({number, what, parts}, pass);
        if (!pass) ++failures;
    };

    gate("1", "volume invariance", {steiner::verify::check_volume(opt)});
    gate("2", "monotone functional suite", {steiner::verify::check_rRsu(opt)});
    gate("3", "sum superadditivity + mixed area",
         {steiner::verify::check_steinsum(opt), steiner::verify::check_reduce(opt)});
    gate("4", "layering functional monotonicity", {steiner::verify::check_dend(opt)});
    gate("5", "finite-direction convergence", {steiner::verify::check_findir(opt)});
    gate("6", "schedule idempotence", {steiner::verify::check_idem(opt)});
    gate("7", "irrational pair rounds bodies", {steiner::verify::check_irrat(opt)});
    gate("8", "non-idempotence counterexample", {steiner::verify::check_counterexample(opt)});
    gate("9", "raster oracle agreement", {steiner::verify::check_oracle(opt)});
    gate("10", "discontinuity reproduction", {steiner::verify::check_discontinuity(opt)});
    gate("11", "trace determinism", {steiner::verify::check_determinism(opt)});

    if (failures == 0) std::printf("all acceptance criteria passed\n");
    else std::printf("%d criteria FAILED\n", failures);
    return failures;
}
