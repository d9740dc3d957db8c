// Compares the OpenMP verification kernels against their serial references
// on verified families at the largest exhaustive-budget sizes.  Prints one
// CSV row per (case, implementation); exits nonzero if any verdict pair
// disagrees.  Timings are informational only.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "radiosync/oracle.hpp"
#include "radiosync/selective.hpp"
#include "radiosync/synchronizer.hpp"

using namespace radiosync;

namespace {

int threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

const char* status_name(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::verified_exhaustive: return "verified-exhaustive";
    case VerdictStatus::verified_sampled: return "verified-sampled";
    case VerdictStatus::falsified: return "falsified";
  }
  return "unknown";
}

struct Row {
  Verdict verdict;
  double millis = 0.0;
};

Row timed(const std::function<Verdict()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  Row row;
  row.verdict = fn();
  const auto t1 = std::chrono::steady_clock::now();
  row.millis = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return row;
}

bool emit_pair(const std::string& label, int par_threads, const Row& par,
               const Row& ser) {
  std::printf("%s,parallel,%d,%.3f,%s,%llu\n", label.c_str(), par_threads,
              par.millis, status_name(par.verdict.status),
              static_cast<unsigned long long>(par.verdict.cases_checked));
  std::printf("%s,serial,1,%.3f,%s,%llu\n", label.c_str(), ser.millis,
              status_name(ser.verdict.status),
              static_cast<unsigned long long>(ser.verdict.cases_checked));
  return par.verdict.status == ser.verdict.status;
}

}  // namespace

int main() {
  std::setvbuf(stdout, nullptr, _IOLBF, 0);
  std::printf("case,impl,threads,millis,status,cases\n");
  bool agree = true;

  struct SelCase {
    int n, k;
  };
  for (const SelCase sc : {SelCase{16, 4}, SelCase{20, 5}, SelCase{20, 8}}) {
    const SelectiveFamily family =
        generate_verified_selective(sc.n, sc.k, 3.0, 100, 42);
    const Row par = timed([&] { return verify_selective_family(family); });
    const Row ser = timed([&] { return verify_selective_family_serial(family); });
    agree &= emit_pair("selective_n" + std::to_string(sc.n) + "_k" +
                           std::to_string(sc.k),
                       threads(), par, ser);
  }

  {
    const SynchronizerFamily family = generate_verified_urs(6, 6.0, 100, 7);
    const Row par = timed([&] { return verify_urs(family); });
    std::printf("urs_n6,parallel,%d,%.3f,%s,%llu\n", threads(), par.millis,
                status_name(par.verdict.status),
                static_cast<unsigned long long>(par.verdict.cases_checked));
    // The naive reference enumerates the full (X, omega) odometer, which is
    // intractable on a verified family beyond n = 3 (every branch survives to
    // the end), so pair the kernels there and add one low-c candidate for the
    // falsification path.
    const SynchronizerFamily small = generate_verified_urs(3, 6.0, 100, 7);
    const Row par_small = timed([&] { return verify_urs(small); });
    const Row ser_small = timed([&] { return verify_urs_naive(small); });
    agree &= emit_pair("urs_n3", threads(), par_small, ser_small);

    const SynchronizerFamily cand = gen_urs_candidate(5, 2.0, 0);
    const Row fast = timed([&] { return verify_urs(cand); });
    const Row naive = timed([&] { return verify_urs_naive(cand); });
    agree &= emit_pair("urs_n5_falsified", threads(), fast, naive);
  }

  struct BlockCase {
    int n, ecc, delta;
  };
  for (const BlockCase bc :
       {BlockCase{8, 4, 4}, BlockCase{12, 3, 6}, BlockCase{12, 4, 8}}) {
    const SynchronizerFamily family =
        generate_verified_block(bc.n, bc.ecc, bc.delta, 2.0, 100, 3);
    const Row par =
        timed([&] { return verify_block_synchronizer(family, bc.delta); });
    const Row ser = timed(
        [&] { return verify_block_synchronizer_serial(family, bc.delta); });
    agree &= emit_pair("block_n" + std::to_string(bc.n) + "_D" +
                           std::to_string(bc.ecc) + "_delta" +
                           std::to_string(bc.delta),
                       threads(), par, ser);
  }

  if (!agree) {
    std::fprintf(stderr, "verdict disagreement between kernels\n");
    return 1;
  }
  return 0;
}
