#include <doctest.h>

#include <vector>

#include "rcis/errors.hpp"
#include "rcis/timestamping.hpp"
#include "support/oracles.hpp"

using namespace rcis;

TEST_CASE("apply_T picks out the timestamps") {
  const std::vector<double> e{5.0, 7.0, 9.0, 11.0};
  const TimestampSet psi({1, 3}, 4);
  CHECK(apply_T(e, psi) == std::vector<double>{0.0, 7.0, 0.0, 11.0});
  CHECK(apply_T_complement(e, psi) == std::vector<double>{5.0, 0.0, 9.0, 0.0});
}

TEST_CASE("full and empty timestamp sets") {
  const std::vector<double> e{1.0, -2.0, 3.0};
  const TimestampSet all = generate(TimestampGenerator::all(), 3);
  const TimestampSet none = generate(TimestampGenerator::none(), 3);
  CHECK(apply_T(e, all) == e);
  CHECK(apply_T_complement(e, all) == std::vector<double>{0.0, 0.0, 0.0});
  CHECK(apply_T(e, none) == std::vector<double>{0.0, 0.0, 0.0});
  CHECK(apply_T_complement(e, none) == e);
}

TEST_CASE("length mismatch is rejected") {
  const TimestampSet psi({0}, 2);
  CHECK_THROWS_AS(apply_T({1.0}, psi), LengthMismatch);
  CHECK_THROWS_AS(apply_T_complement({1.0, 2.0, 3.0}, psi), LengthMismatch);
}

TEST_CASE("complement identity holds exactly for fuzzed inputs") {
  oracle::Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const std::int64_t horizon = rng.uniform_int(1, 128);
    std::vector<double> e(static_cast<std::size_t>(horizon));
    for (double& v : e) v = rng.uniform(-1e6, 1e6);
    const TimestampSet psi =
        generate(TimestampGenerator::bernoulli(rng.uniform(), rng.next()), horizon);
    const auto ebar = apply_T(e, psi);
    const auto etilde = apply_T_complement(e, psi);
    for (std::size_t k = 0; k < e.size(); ++k) {
      CHECK(ebar[k] + etilde[k] == e[k]);       // exact, not approximate
      CHECK(ebar[k] * etilde[k] == 0.0);        // disjoint supports
    }
    // Idempotence.
    CHECK(apply_T(ebar, psi) == ebar);
    CHECK(sector_check(e, psi));
  }
}

TEST_CASE("sector bound holds on the zero signal") {
  const std::vector<double> e(16, 0.0);
  const TimestampSet psi = generate(TimestampGenerator::periodic(3, 1), 16);
  CHECK(sector_check(e, psi));
}

TEST_CASE("periodic generator") {
  const TimestampSet psi = generate(TimestampGenerator::periodic(2, 0), 6);
  CHECK(psi.stamps == std::vector<std::int64_t>{0, 2, 4});
}

TEST_CASE("bernoulli edge probabilities") {
  const TimestampSet all = generate(TimestampGenerator::bernoulli(1.0, 5), 32);
  CHECK(all.stamps.size() == 32);
  const TimestampSet none = generate(TimestampGenerator::bernoulli(0.0, 5), 32);
  CHECK(none.stamps.empty());
}

TEST_CASE("generators are deterministic") {
  const auto a = generate(TimestampGenerator::bernoulli(0.5, 77), 512);
  const auto b = generate(TimestampGenerator::bernoulli(0.5, 77), 512);
  CHECK(a.stamps == b.stamps);
  const auto c = generate(TimestampGenerator::bernoulli(0.5, 78), 512);
  CHECK(a.stamps != c.stamps);
  // Scenario seed mixes into the stream.
  const auto d = generate(TimestampGenerator::bernoulli(0.5, 77), 512, 9);
  CHECK(a.stamps != d.stamps);

  const auto e = generate(TimestampGenerator::burst(3, 10, 4), 100);
  const auto f = generate(TimestampGenerator::burst(3, 10, 4), 100);
  CHECK(e.stamps == f.stamps);
}

TEST_CASE("burst generator removes a run per cycle") {
  const auto psi = generate(TimestampGenerator::burst(3, 10, 123), 100);
  const auto mask = psi.mask();
  for (int cycle = 0; cycle < 10; ++cycle) {
    int missing = 0;
    for (int k = 0; k < 10; ++k) missing += mask[static_cast<std::size_t>(cycle * 10 + k)] ? 0 : 1;
    CHECK(missing == 3);
  }
  CHECK_THROWS_AS(generate(TimestampGenerator::burst(10, 10, 1), 100), InvalidParameters);
}

TEST_CASE("encoder generator stamps line crossings") {
  const std::vector<double> trajectory{0.0, 0.4, 0.8, 1.2, 1.6, 2.1};
  const auto psi = generate(TimestampGenerator::encoder(1.0, trajectory), 6);
  CHECK(psi.stamps == std::vector<std::int64_t>{3, 5});
}

TEST_CASE("encoder generator matches the floor-scan oracle on random motion") {
  oracle::Rng rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<double> x(200);
    double pos = rng.uniform(-2.0, 2.0);
    for (double& v : x) {
      pos += rng.uniform(-0.3, 0.5);
      v = pos;
    }
    const double spacing = rng.uniform(0.2, 1.5);
    const auto psi = generate(TimestampGenerator::encoder(spacing, x),
                              static_cast<std::int64_t>(x.size()));
    CHECK(psi.stamps == oracle::encoder_scan(x, spacing));
  }
}

TEST_CASE("generator parameter validation") {
  CHECK_THROWS_AS(generate(TimestampGenerator::bernoulli(1.5, 0), 10), InvalidParameters);
  CHECK_THROWS_AS(generate(TimestampGenerator::periodic(0, 0), 10), InvalidParameters);
  CHECK_THROWS_AS(generate(TimestampGenerator::all(), 0), InvalidParameters);
  CHECK_THROWS_AS(generate(TimestampGenerator::encoder(0.0, {0.0, 1.0}), 2), InvalidParameters);
}
