#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rcis {

// Strictly increasing integer timestamps over a finite record.
struct TimestampSet {
  std::vector<std::int64_t> stamps;
  std::int64_t horizon = 0;

  TimestampSet() = default;
  TimestampSet(std::vector<std::int64_t> ks, std::int64_t record_length);

  bool contains(std::int64_t k) const;

  // 0/1 membership mask of length horizon.
  std::vector<std::uint8_t> mask() const;
};

enum class GeneratorKind { kAll, kNone, kBernoulli, kPeriodic, kBurst, kEncoder };

// Generators never look at the signal being sampled; realizations are a
// deterministic function of (kind, parameters, seed).
struct TimestampGenerator {
  GeneratorKind kind = GeneratorKind::kAll;

  // bernoulli
  double p = 1.0;
  // periodic
  std::int64_t m = 1;
  std::int64_t offset = 0;
  // burst
  std::int64_t loss_len = 0;
  std::int64_t cycle_len = 1;
  // bernoulli/burst
  std::uint64_t seed = 0;
  // encoder
  double line_spacing = 1.0;
  std::vector<double> position_trajectory;

  static TimestampGenerator all();
  static TimestampGenerator none();
  static TimestampGenerator bernoulli(double p, std::uint64_t seed);
  static TimestampGenerator periodic(std::int64_t m, std::int64_t offset);
  static TimestampGenerator burst(std::int64_t loss_len, std::int64_t cycle_len,
                                  std::uint64_t seed);
  static TimestampGenerator encoder(double line_spacing, std::vector<double> trajectory);
};

// splitmix64 stream; the documented generator behind bernoulli/burst draws.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  double next_double();  // uniform in [0, 1)

 private:
  std::uint64_t state_;
};

std::uint64_t seed_mix(std::uint64_t generator_seed, std::uint64_t scenario_seed);

TimestampSet generate(const TimestampGenerator& gen, std::int64_t horizon,
                      std::uint64_t scenario_seed = 0);

// ebar(k) = e(k) for k in psi, 0 otherwise.
std::vector<double> apply_T(const std::vector<double>& e, const TimestampSet& psi);

// etilde(k) = 0 for k in psi, e(k) otherwise; apply_T + apply_T_complement
// reconstructs e exactly.
std::vector<double> apply_T_complement(const std::vector<double>& e, const TimestampSet& psi);

// Executable proof artifact: the complement lies in the [0, 1] sector,
// etilde*(etilde - e) <= 0 with etilde = 0 whenever e = 0.
bool sector_check(const std::vector<double>& e, const TimestampSet& psi);

std::string generator_kind_name(GeneratorKind kind);

}  // namespace rcis
