// Serial versus OpenMP Poisson bracket kernel on random dense elements.
// Prints one line per size with both timings and checks the results agree.

#include <omp.h>

#include <chrono>
#include <iomanip>
#include <iostream>
#include <vector>

#include "CLI11.hpp"
#include "courantlab/poisson.hpp"
#include "courantlab/sampling.hpp"

using namespace clab;

namespace {

template <typename F>
double seconds(F&& f, int repeats) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < repeats; ++r) f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / repeats;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benchmark of the serial and parallel Poisson bracket kernels", "bench_bracket"};
  std::uint64_t seed = 7;
  int repeats = 3;
  int odd = 8;
  int base = 2;
  std::vector<int> sizes{16, 64, 256, 1024};
  app.add_option("--seed", seed);
  app.add_option("--repeats", repeats)->check(CLI::PositiveNumber);
  app.add_option("--odd", odd, "Number of odd generators")->check(CLI::Range(1, kMaxOddGens));
  app.add_option("--base", base, "Number of (q, p) pairs")->check(CLI::Range(0, kMaxBaseDim));
  app.add_option("--terms", sizes, "Term budgets of the random operands");
  CLI11_PARSE(app, argc, argv);

  std::vector<OddGenerator> gens;
  for (int a = 0; a < odd; ++a) gens.push_back({"t" + std::to_string(a + 1), OddLabel::none});
  const auto sig = make_signature(base, gens, identity_matrix(static_cast<std::size_t>(odd)));

  std::cout << "threads " << omp_get_max_threads() << "\n";
  std::cout << std::left << std::setw(8) << "terms" << std::setw(10) << "|f|" << std::setw(10) << "|g|"
            << std::setw(14) << "serial_s" << std::setw(14) << "parallel_s" << std::setw(10) << "speedup"
            << "agree\n";
  bool all_agree = true;
  for (const int n : sizes) {
    Sampler s(seed + static_cast<std::uint64_t>(n));
    const auto f = s.homogeneous(sig, 3, n, 3) + s.homogeneous(sig, 4, n, 3);
    const auto g = s.homogeneous(sig, 3, n, 3) + s.homogeneous(sig, 2, n, 3);
    GradedPoly serial(sig), parallel(sig);
    const double ts = seconds([&] { serial = poisson_bracket_serial(f, g); }, repeats);
    const double tp = seconds([&] { parallel = poisson_bracket_parallel(f, g); }, repeats);
    const bool agree = serial == parallel;
    all_agree = all_agree && agree;
    std::cout << std::left << std::setw(8) << n << std::setw(10) << f.size() << std::setw(10) << g.size()
              << std::setw(14) << ts << std::setw(14) << tp << std::setw(10) << (tp > 0 ? ts / tp : 0.0)
              << (agree ? "yes" : "NO") << "\n";
  }
  return all_agree ? 0 : 1;
}
