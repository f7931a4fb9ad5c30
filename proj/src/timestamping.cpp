#include "rcis/timestamping.hpp"

#include <algorithm>
#include <cmath>

#include "rcis/errors.hpp"

namespace rcis {

TimestampSet::TimestampSet(std::vector<std::int64_t> ks, std::int64_t record_length)
    : stamps(std::move(ks)), horizon(record_length) {
  if (horizon < 0) throw InvalidParameters("horizon must be non-negative");
  for (std::size_t i = 0; i < stamps.size(); ++i) {
    if (stamps[i] < 0 || stamps[i] >= horizon) {
      throw InvalidParameters("timestamp outside [0, horizon)");
    }
    if (i > 0 && stamps[i] <= stamps[i - 1]) {
      throw InvalidParameters("timestamps must be strictly increasing");
    }
  }
}

bool TimestampSet::contains(std::int64_t k) const {
  return std::binary_search(stamps.begin(), stamps.end(), k);
}

std::vector<std::uint8_t> TimestampSet::mask() const {
  std::vector<std::uint8_t> out(static_cast<std::size_t>(horizon), 0);
  for (std::int64_t k : stamps) out[static_cast<std::size_t>(k)] = 1;
  return out;
}

TimestampGenerator TimestampGenerator::all() {
  TimestampGenerator g;
  g.kind = GeneratorKind::kAll;
  return g;
}

TimestampGenerator TimestampGenerator::none() {
  TimestampGenerator g;
  g.kind = GeneratorKind::kNone;
  return g;
}

TimestampGenerator TimestampGenerator::bernoulli(double p, std::uint64_t seed) {
  TimestampGenerator g;
  g.kind = GeneratorKind::kBernoulli;
  g.p = p;
  g.seed = seed;
  return g;
}

TimestampGenerator TimestampGenerator::periodic(std::int64_t m, std::int64_t offset) {
  TimestampGenerator g;
  g.kind = GeneratorKind::kPeriodic;
  g.m = m;
  g.offset = offset;
  return g;
}

TimestampGenerator TimestampGenerator::burst(std::int64_t loss_len, std::int64_t cycle_len,
                                             std::uint64_t seed) {
  TimestampGenerator g;
  g.kind = GeneratorKind::kBurst;
  g.loss_len = loss_len;
  g.cycle_len = cycle_len;
  g.seed = seed;
  return g;
}

TimestampGenerator TimestampGenerator::encoder(double line_spacing,
                                               std::vector<double> trajectory) {
  TimestampGenerator g;
  g.kind = GeneratorKind::kEncoder;
  g.line_spacing = line_spacing;
  g.position_trajectory = std::move(trajectory);
  return g;
}

std::uint64_t SplitMix64::next() {
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::next_double() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::uint64_t seed_mix(std::uint64_t generator_seed, std::uint64_t scenario_seed) {
  SplitMix64 rng(generator_seed ^ (0x9E3779B97F4A7C15ULL * (scenario_seed + 1)));
  return rng.next();
}

TimestampSet generate(const TimestampGenerator& gen, std::int64_t horizon,
                      std::uint64_t scenario_seed) {
  if (horizon < 1) throw InvalidParameters("horizon must be >= 1");
  std::vector<std::int64_t> stamps;
  switch (gen.kind) {
    case GeneratorKind::kAll:
      stamps.resize(static_cast<std::size_t>(horizon));
      for (std::int64_t k = 0; k < horizon; ++k) stamps[static_cast<std::size_t>(k)] = k;
      break;
    case GeneratorKind::kNone:
      break;
    case GeneratorKind::kBernoulli: {
      if (gen.p < 0.0 || gen.p > 1.0) throw InvalidParameters("bernoulli p must be in [0,1]");
      SplitMix64 rng(seed_mix(gen.seed, scenario_seed));
      for (std::int64_t k = 0; k < horizon; ++k) {
        if (rng.next_double() < gen.p) stamps.push_back(k);
      }
      break;
    }
    case GeneratorKind::kPeriodic: {
      if (gen.m < 1) throw InvalidParameters("periodic m must be >= 1");
      const std::int64_t offset = ((gen.offset % gen.m) + gen.m) % gen.m;
      for (std::int64_t k = offset; k < horizon; k += gen.m) stamps.push_back(k);
      break;
    }
    case GeneratorKind::kBurst: {
      if (gen.loss_len < 0 || gen.cycle_len < 1 || gen.loss_len >= gen.cycle_len) {
        throw InvalidParameters("burst requires 0 <= loss_len < cycle_len");
      }
      SplitMix64 rng(seed_mix(gen.seed, scenario_seed));
      for (std::int64_t start = 0; start < horizon; start += gen.cycle_len) {
        const std::int64_t span = gen.cycle_len - gen.loss_len;
        const std::int64_t burst_at =
            start + static_cast<std::int64_t>(rng.next_double() * static_cast<double>(span + 1));
        for (std::int64_t k = start; k < std::min(start + gen.cycle_len, horizon); ++k) {
          const bool lost = k >= burst_at && k < burst_at + gen.loss_len;
          if (!lost) stamps.push_back(k);
        }
      }
      break;
    }
    case GeneratorKind::kEncoder: {
      if (!(gen.line_spacing > 0.0)) throw InvalidParameters("line_spacing must be positive");
      const auto& x = gen.position_trajectory;
      if (static_cast<std::int64_t>(x.size()) < horizon) {
        throw InvalidParameters("position trajectory shorter than horizon");
      }
      for (std::int64_t k = 1; k < horizon; ++k) {
        const double prev = std::floor(x[static_cast<std::size_t>(k - 1)] / gen.line_spacing);
        const double cur = std::floor(x[static_cast<std::size_t>(k)] / gen.line_spacing);
        if (cur != prev) stamps.push_back(k);
      }
      break;
    }
  }
  return TimestampSet(std::move(stamps), horizon);
}

namespace {

void check_length(const std::vector<double>& e, const TimestampSet& psi) {
  if (static_cast<std::int64_t>(e.size()) != psi.horizon) {
    throw LengthMismatch("signal length does not match the timestamp horizon");
  }
}

}  // namespace

std::vector<double> apply_T(const std::vector<double>& e, const TimestampSet& psi) {
  check_length(e, psi);
  std::vector<double> out(e.size(), 0.0);
  for (std::int64_t k : psi.stamps) out[static_cast<std::size_t>(k)] = e[static_cast<std::size_t>(k)];
  return out;
}

std::vector<double> apply_T_complement(const std::vector<double>& e, const TimestampSet& psi) {
  check_length(e, psi);
  std::vector<double> out = e;
  for (std::int64_t k : psi.stamps) out[static_cast<std::size_t>(k)] = 0.0;
  return out;
}

bool sector_check(const std::vector<double>& e, const TimestampSet& psi) {
  const std::vector<double> etilde = apply_T_complement(e, psi);
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (etilde[k] * (etilde[k] - e[k]) > 0.0) return false;
    if (e[k] == 0.0 && etilde[k] != 0.0) return false;
  }
  return true;
}

std::string generator_kind_name(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::kAll: return "all";
    case GeneratorKind::kNone: return "none";
    case GeneratorKind::kBernoulli: return "bernoulli";
    case GeneratorKind::kPeriodic: return "periodic";
    case GeneratorKind::kBurst: return "burst";
    case GeneratorKind::kEncoder: return "encoder";
  }
  return "unknown";
}

}  // namespace rcis
