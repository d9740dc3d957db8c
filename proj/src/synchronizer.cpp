#include "radiosync/synchronizer.hpp"

#include <cmath>
#include <stdexcept>

#include "radiosync/rng.hpp"

namespace radiosync {

namespace {

void require_block_regime(int n, int ecc, int delta) {
  if (n < 1 || ecc < 1 || delta < 1)
    throw std::domain_error("block synchronizer: n, ecc, delta must be positive");
  if (delta > n)
    throw std::domain_error("block synchronizer: need delta <= n");
  if (static_cast<long long>(ecc) * delta <= n)
    throw std::domain_error("block synchronizer: need n < ecc * delta");
}

double log_log_ratio(int n, int ecc, int delta) {
  // safe_log2(safe_log2(ecc*delta/n)); regime guarantees the argument > 1
  const double ratio = static_cast<double>(ecc) * static_cast<double>(delta) /
                       static_cast<double>(n);
  return safe_log2(safe_log2(ratio));
}

}  // namespace

double urs_bit_probability(int n, double c, std::uint64_t column) {
  if (n < 1 || c <= 0.0) throw std::domain_error("urs_bit_probability: bad parameters");
  const double cl = c * safe_log2(static_cast<double>(n));
  return cl / (6.0 * (static_cast<double>(column) + cl));
}

std::uint64_t phase_length(int n, int ecc, int delta) {
  require_block_regime(n, ecc, delta);
  return static_cast<std::uint64_t>(std::ceil(2.0 * log_log_ratio(n, ecc, delta)));
}

std::uint64_t upper_block_length(int n, int ecc, int delta, double c) {
  require_block_regime(n, ecc, delta);
  if (c <= 0.0) throw std::domain_error("upper_block_length: c must be positive");
  const double raw = c * (static_cast<double>(n) / static_cast<double>(ecc)) *
                     safe_log2(static_cast<double>(ecc)) * log_log_ratio(n, ecc, delta);
  const auto ceiled = static_cast<std::uint64_t>(std::ceil(raw));
  // Align B to the phase length: member offsets are whole blocks, and the
  // load accounting in check_load_bounds only matches the generated bit
  // probabilities if shifting by a block keeps every column's phase.
  return round_up_to_multiple(ceiled, phase_length(n, ecc, delta));
}

double upper_block_bit_probability(const SyncParams& params, std::uint64_t column) {
  const std::uint64_t L = phase_length(params.n, params.ecc, params.delta);
  const std::uint64_t phase = column % L;
  const double numer = params.c * safe_log2(static_cast<double>(params.ecc)) *
                       log_log_ratio(params.n, params.ecc, params.delta);
  const double denom = (static_cast<double>(params.block_len) + static_cast<double>(column)) *
                       std::pow(2.0, static_cast<double>(phase + 1));
  return std::min(1.0, numer / denom);
}

std::uint64_t block_increment(int n, int ecc) {
  if (n < 1 || ecc < 1) throw std::domain_error("block_increment: bad parameters");
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(n / ecc));
}

SynchronizerFamily gen_urs_candidate(int n, double c, std::uint64_t seed) {
  if (n < 1) throw std::domain_error("gen_urs_candidate: n must be positive");
  const std::uint64_t m = urs_delay(static_cast<std::uint64_t>(n),
                                    static_cast<std::uint64_t>(n), c);
  SeededRng rng(seed);
  SynchronizerFamily fam;
  fam.kind = SyncKind::urs;
  fam.params = SyncParams{.n = n, .c = c, .seed = seed};
  fam.schedules.reserve(static_cast<std::size_t>(n));
  for (NodeId v = 1; v <= n; ++v) {
    std::vector<std::uint8_t> bits(m);
    for (std::uint64_t j = 0; j < m; ++j)
      bits[j] = rng.bernoulli(urs_bit_probability(n, c, j)) ? 1 : 0;
    fam.schedules.emplace_back(v, std::move(bits));
  }
  return fam;
}

SynchronizerFamily gen_upper_block_candidate(int n, int ecc, int delta, double c,
                                             std::uint64_t seed) {
  const std::uint64_t B = upper_block_length(n, ecc, delta, c);
  SynchronizerFamily fam;
  fam.kind = SyncKind::upper_block;
  fam.params = SyncParams{.n = n,
                          .ecc = ecc,
                          .delta = delta,
                          .r = block_increment(n, ecc),
                          .block_len = B,
                          .c = c,
                          .seed = seed};
  fam.composite_block = B;
  const std::uint64_t m = static_cast<std::uint64_t>(ecc) * B;
  SeededRng rng(seed);
  fam.schedules.reserve(static_cast<std::size_t>(n));
  for (NodeId v = 1; v <= n; ++v) {
    std::vector<std::uint8_t> bits(m);
    for (std::uint64_t j = 0; j < m; ++j)
      bits[j] = rng.bernoulli(upper_block_bit_probability(fam.params, j)) ? 1 : 0;
    fam.schedules.emplace_back(v, std::move(bits));
  }
  return fam;
}

SynchronizerFamily compose_block_synchronizer(const SynchronizerFamily& upper,
                                              SelectiveFamily prefix) {
  if (upper.kind != SyncKind::upper_block)
    throw std::domain_error("compose_block_synchronizer: first argument must be upper_block");
  if (prefix.params.n != upper.params.n)
    throw std::domain_error("compose_block_synchronizer: universe size mismatch");
  const std::uint64_t rlen = prefix.length();
  const std::uint64_t B = upper.params.block_len;
  const std::uint64_t bb = rlen + B;
  const std::uint64_t total = static_cast<std::uint64_t>(upper.params.ecc) * bb;

  SynchronizerFamily fam;
  fam.kind = SyncKind::block;
  fam.params = upper.params;
  fam.composite_block = bb;
  fam.schedules.reserve(upper.schedules.size());
  for (NodeId v = 1; v <= upper.params.n; ++v) {
    const Schedule& up = upper.schedules[static_cast<std::size_t>(v - 1)];
    const Schedule& pre = prefix.schedules[static_cast<std::size_t>(v - 1)];
    std::vector<std::uint8_t> bits(total);
    for (std::uint64_t j = 0; j < total; ++j) {
      if (j % bb < rlen) {
        bits[j] = pre.bit(static_cast<std::int64_t>(j % bb)) ? 1 : 0;
      } else {
        const std::uint64_t blocks_started = (j + bb - 1) / bb;  // ceil(j / bb)
        bits[j] = up.bit(static_cast<std::int64_t>(j - blocks_started * rlen)) ? 1 : 0;
      }
    }
    fam.schedules.emplace_back(v, std::move(bits));
  }
  fam.prefix_family = std::move(prefix);
  return fam;
}

double column_load(const Core& core, const SyncParams& params, std::uint64_t column) {
  double load = 0.0;
  if (core.kind == CoreKind::wakeup) {
    for (const CoreMember& m : core.members)
      if (m.offset <= column)
        load += urs_bit_probability(params.n, params.c, column - m.offset);
  } else {
    const std::uint64_t B = params.block_len;
    for (const CoreMember& m : core.members)
      if (B * m.offset <= column)
        load += upper_block_bit_probability(params, column - B * m.offset);
  }
  return load;
}

LoadReport check_load_bounds(const Core& core, const SyncParams& params) {
  LoadReport report;
  if (core.members.empty()) return report;
  const std::uint64_t q = core.members.size();
  if (core.kind == CoreKind::wakeup) {
    const double lq = safe_log2(static_cast<double>(q));
    const double bound = safe_log2(lq) / (12.0 * lq);
    const std::uint64_t window =
        urs_delay(q, static_cast<std::uint64_t>(params.n), params.c);
    for (std::uint64_t j = 0; j < window; ++j) {
      ++report.columns_checked;
      const double f = column_load(core, params, j);
      if (!(f > bound)) report.violations.push_back({j, f, bound});
    }
  } else {
    const std::uint64_t B = params.block_len;
    const std::uint64_t L = phase_length(params.n, params.ecc, params.delta);
    // phase-0 columns with B/2 <= j < B*q/r
    for (std::uint64_t j = 0; params.r * j < B * q; j += L) {
      if (2 * j < B) continue;
      ++report.columns_checked;
      const double f = column_load(core, params, j);
      if (!(f > 1.0 / 6.0)) report.violations.push_back({j, f, 1.0 / 6.0});
    }
  }
  return report;
}

LoadProfile load_profile(const Core& core, const SyncParams& params,
                         std::uint64_t columns) {
  LoadProfile profile{core, {}};
  profile.loads.reserve(columns);
  for (std::uint64_t j = 0; j < columns; ++j)
    profile.loads.push_back(column_load(core, params, j));
  return profile;
}

}  // namespace radiosync
