// One line per acceptance criterion. Every check is an exact integer or rational comparison, so the
// only tolerance anywhere is zero.

#include <chrono>
#include <cstdio>
#include <string>

#include "fqinc/experiments.hpp"

namespace ex = fqinc::experiments;

namespace {

constexpr std::uint64_t kSeed = 20240601;
constexpr const char* kTolerance = "tolerance 0 (exact)";

void print(const ex::Criterion& c, double seconds) {
    std::printf("[%s] %d %s: %s; %s; %.1fs\n", c.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), c.summary.c_str(),
                kTolerance, seconds);
}

}  // namespace

int main() {
    using clock = std::chrono::steady_clock;
    const fqinc::Guards guards;
    std::vector<ex::Criterion> cs;
    bool all = true;
    auto timed = [&](auto&& fn) {
        const auto t0 = clock::now();
        ex::Criterion c = fn();
        print(c, std::chrono::duration<double>(clock::now() - t0).count());
        all = all && c.pass;
        cs.push_back(std::move(c));
    };
    timed([&] { return ex::criterion_spectral_grid(guards); });
    timed([&] { return ex::criterion_characters(guards); });
    timed([&] { return ex::criterion_projection(kSeed, guards); });
    timed([&] { return ex::criterion_main_theorem(kSeed, guards); });
    timed([&] { return ex::criterion_flats(kSeed, guards); });
    timed([&] { return ex::criterion_pinned(kSeed); });
    timed([&] {
        const std::string first = ex::grid_report(kSeed, cs).dump();
        const std::string second = ex::run_grid(kSeed, guards).dump();
        ex::Criterion c{7, "determinism", first == second, "", {}};
        c.summary = "two grid runs with seed " + std::to_string(kSeed) + (c.pass ? " are" : " are not") +
                    " byte-identical (" + std::to_string(first.size()) + " bytes)";
        return c;
    });
    std::printf("%s\n", all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
    return all ? 0 : 1;
}
