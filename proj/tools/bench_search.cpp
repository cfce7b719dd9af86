// Times the serial reference search against the OpenMP path on catalog groups.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "twbd/catalog.hpp"
#include "twbd/km_search.hpp"

using namespace twbd;

namespace {

struct Run {
  double seconds;
  std::uint64_t solutions;
  std::uint64_t fingerprint;
};

Run time_search(const KmContext &ctx, SearchConfig config, bool parallel) {
  std::uint64_t fp = 1469598103934665603ull;
  auto start = std::chrono::steady_clock::now();
  auto s = (parallel ? search_designs_parallel : search_designs_serial)(ctx, config, [&](FoundDesign &&f) {
    for (Subset b : f.design.blocks()) fp = (fp ^ b.mask()) * 1099511628211ull;
    return true;
  });
  double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {t, s.solutions, fp};
}

}  // namespace

int main(int argc, char **argv) {
  unsigned jobs = argc > 1 ? static_cast<unsigned>(std::atoi(argv[1])) : std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::pair<std::string, bool>> cases = {{"D16_1", false}, {"D22_1", false}, {"D26_1", true}};
  for (int i = 2; i < argc; ++i) cases.emplace_back(argv[i], false);

  std::printf("%-8s %10s %10s %8s %10s  %s\n", "group", "serial", "parallel", "speedup", "solutions", "same output");
  for (const auto &[id, two_class] : cases) {
    const KmContext ctx(catalog_get(id).group());
    SearchConfig config;
    config.two_class_only = two_class;
    config.jobs = jobs;
    Run serial = time_search(ctx, config, false);
    Run par = time_search(ctx, config, true);
    std::printf("%-8s %9.2fs %9.2fs %7.2fx %10llu  %s\n", id.c_str(), serial.seconds, par.seconds,
                serial.seconds / par.seconds, static_cast<unsigned long long>(serial.solutions),
                serial.fingerprint == par.fingerprint && serial.solutions == par.solutions ? "yes" : "NO");
  }
  std::printf("jobs=%u\n", jobs);
}
