// Wall-time comparison of the parallel batched kernels against the serial
// reference implementation. The two must produce identical results; the
// benchmark aborts if they ever disagree.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mcera/datagen.hpp"
#include "mcera/dataset.hpp"
#include "mcera/engine.hpp"
#include "mcera/rademacher.hpp"
#include "mcera/rng.hpp"

namespace {

using Clock = std::chrono::steady_clock;

struct Timing {
  std::uint64_t nodes = 0;
  double serial_s = 0.0;
  double parallel_s = 0.0;
};

Timing time_both(const mcera::SampleDataset& ds,
                 const mcera::RademacherMatrix& mat) {
  mcera::EngineConfig cfg;

  cfg.kernels = mcera::KernelMode::serial;
  auto t0 = Clock::now();
  const auto serial = mcera::get_n_mcera(ds, mat, cfg);
  const double serial_s =
      std::chrono::duration<double>(Clock::now() - t0).count();

  cfg.kernels = mcera::KernelMode::parallel;
  t0 = Clock::now();
  const auto parallel = mcera::get_n_mcera(ds, mat, cfg);
  const double parallel_s =
      std::chrono::duration<double>(Clock::now() - t0).count();

  if (serial.nu_raw != parallel.nu_raw ||
      serial.nodes_explored != parallel.nodes_explored ||
      serial.mcera != parallel.mcera ||
      serial.centralized_mcera != parallel.centralized_mcera) {
    std::cerr << "kernel implementations disagree -- aborting\n";
    std::exit(1);
  }
  return {serial.nodes_explored, serial_s, parallel_s};
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t sample_size = 4000;
  std::size_t n = 10;
  if (argc > 1) sample_size = std::strtoull(argv[1], nullptr, 10);
  if (argc > 2) n = std::strtoull(argv[2], nullptr, 10);

#ifdef _OPENMP
  std::cout << "openmp threads: " << omp_get_max_threads() << "\n";
#else
  std::cout << "openmp: disabled at build time\n";
#endif
  std::cout << "sample size " << sample_size << ", " << n
            << " sign rows per run\n\n";
  std::cout << "dataset     nodes        serial[s]  parallel[s]  speedup\n";

  const struct {
    const char* name;
    mcera::SampleDataset fixture;
  } fixtures[] = {
      {"mushroom", mcera::mushroom_fixture()},
      {"chess", mcera::chess_fixture()},
  };
  for (const auto& fx : fixtures) {
    const auto sample = mcera::sample_with_replacement(
        fx.fixture, sample_size, mcera::derive_seed(1, 1));
    const mcera::RademacherMatrix mat(sample.size(), n,
                                      mcera::derive_seed(1, 2));
    const Timing t = time_both(sample, mat);
    std::printf("%-10s  %-11llu  %-9.3f  %-11.3f  %.2fx\n", fx.name,
                static_cast<unsigned long long>(t.nodes), t.serial_s,
                t.parallel_s, t.serial_s / t.parallel_s);
  }
  std::cout << "\nresults verified identical across kernel modes\n";
  return 0;
}
