#include <omp.h>

#include <chrono>
#include <cstring>
#include <iostream>

#include "pexeq/fermat.hpp"
#include "pexeq/sieve.hpp"

// serial-vs-parallel comparison for the two hot kernels: the Wieferich
// valuation scan and the small-c sieve pipeline

namespace {

double seconds(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
  unsigned long zmax = quick ? 20000 : 200000;

  std::cout << "threads available: " << omp_get_max_threads() << "\n";

  for (long c : {17L, 257L, 65537L}) {
    auto t0 = std::chrono::steady_clock::now();
    int vs = pexeq::wieferich_max_serial(c, zmax);
    double ts = seconds(t0);
    t0 = std::chrono::steady_clock::now();
    int vp = pexeq::wieferich_max(c, zmax);
    double tp = seconds(t0);
    std::cout << "wieferich c=" << c << " zmax=" << zmax << ": serial " << ts << "s, parallel "
              << tp << "s, speedup " << ts / tp << "x" << (vs == vp ? "" : "  MISMATCH") << "\n";
    if (vs != vp) return 1;
  }

  {
    pexeq::SieveConfig cfg;
    cfg.branch = pexeq::Branch::BigX;
    cfg.variant = pexeq::Variant::SmallC;
    cfg.only_c = quick ? 3 : 5;
    auto t0 = std::chrono::steady_clock::now();
    cfg.workers = 1;
    auto r1 = pexeq::run_pipeline(cfg);
    double ts = seconds(t0);
    t0 = std::chrono::steady_clock::now();
    cfg.workers = omp_get_max_threads();
    auto rn = pexeq::run_pipeline(cfg);
    double tp = seconds(t0);
    bool same = r1.candidates == rn.candidates && r1.solutions == rn.solutions;
    std::cout << "sieve big-x small-c (c=" << *cfg.only_c << "): serial " << ts << "s, parallel "
              << tp << "s, speedup " << ts / tp << "x" << (same ? "" : "  MISMATCH") << "\n";
    if (!same) return 1;
  }
  return 0;
}
