#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "urnlift/rng.hpp"
#include "urnlift/stats.hpp"

using namespace urnlift;

TEST_CASE("stream reproduces the published Philox4x32-10 test vector") {
  // Counter and key all zero: output block 6627e8d5 e169c58d bc57ac4c
  // 9b00dbd8, so the first uniform is (6627e8d5e169c58d >> 11) * 2^-53.
  RandomnessStream stream(0, 0);
  CHECK(stream.next() == doctest::Approx(0.3990464708489645).epsilon(1e-15));
  CHECK(stream.next() == doctest::Approx(0.9722412015223156).epsilon(1e-15));
  stream.seek(0, 1);
  CHECK(stream.next() == doctest::Approx(0.2570504312603502).epsilon(1e-15));
}

TEST_CASE("stream values are pure functions of the address") {
  RandomnessStream a(42, 7);
  a.seek(13, 1);
  const double v1 = a.next();
  const double v2 = a.next();
  a.seek(99, 0);
  a.next();
  a.seek(13, 1);
  CHECK(a.next() == v1);
  CHECK(a.next() == v2);

  RandomnessStream b(42, 7);
  b.seek(13, 1);
  CHECK(b.next() == v1);
}

TEST_CASE("distinct keys and addresses give distinct streams") {
  RandomnessStream a(1, 0), b(2, 0), c(1, 1);
  const double va = a.next();
  CHECK(va != b.next());
  CHECK(va != c.next());

  RandomnessStream d(1, 0);
  d.seek(1, 0);
  CHECK(va != d.next());
  RandomnessStream e(1, 0);
  e.seek(0, 1);
  CHECK(va != e.next());
}

TEST_CASE("uniforms land in [0,1) and pass a uniformity chi-square") {
  RandomnessStream stream(2024, 0);
  const int bins = 20;
  const int n = 200000;
  std::vector<std::uint64_t> counts(bins, 0);
  for (int i = 0; i < n; ++i) {
    const double u = stream.next();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    counts[static_cast<std::size_t>(u * bins)]++;
  }
  const auto report = chi_square_gof(counts, std::vector<double>(bins, 1.0 / bins), 0.001);
  CHECK(report.pass);
}

TEST_CASE("channel and slot limits are enforced") {
  RandomnessStream stream(0, 0);
  CHECK_THROWS_AS(stream.seek(0, 256), UrnError);
  CHECK_THROWS_AS(stream.seek(std::uint64_t{1} << 32, 0), UrnError);
}

TEST_CASE("split_uniform with k=1 returns the input") {
  RandomnessStream stream(5, 0);
  for (int i = 0; i < 20; ++i) {
    const double u = stream.next();
    const auto parts = split_uniform(u, 1);
    REQUIRE(parts.size() == 1);
    CHECK(parts[0] == u);  // 53-bit values round-trip exactly
  }
}

TEST_CASE("split_uniform streams are individually uniform and uncorrelated") {
  RandomnessStream stream(77, 0);
  const int bins = 10;
  const int n = 100000;
  std::vector<std::vector<std::uint64_t>> counts(3, std::vector<std::uint64_t>(bins, 0));
  double mean_xy = 0.0, mean_x = 0.0, mean_y = 0.0, mean_x2 = 0.0, mean_y2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto parts = split_uniform(stream.next(), 3);
    for (int s = 0; s < 3; ++s)
      counts[s][static_cast<std::size_t>(std::min(parts[s] * bins, bins - 1.0))]++;
    mean_x += parts[0];
    mean_y += parts[1];
    mean_xy += parts[0] * parts[1];
    mean_x2 += parts[0] * parts[0];
    mean_y2 += parts[1] * parts[1];
  }
  for (int s = 0; s < 3; ++s) {
    const auto report =
        chi_square_gof(counts[s], std::vector<double>(bins, 1.0 / bins), 0.001);
    CHECK(report.pass);
  }
  mean_x /= n;
  mean_y /= n;
  mean_xy /= n;
  mean_x2 /= n;
  mean_y2 /= n;
  const double corr = (mean_xy - mean_x * mean_y) /
                      std::sqrt((mean_x2 - mean_x * mean_x) * (mean_y2 - mean_y * mean_y));
  CHECK(std::abs(corr) < 0.02);
}

TEST_CASE("split_uniform edge cases") {
  CHECK(split_uniform(0.0, 4) == std::vector<double>{0.0, 0.0, 0.0, 0.0});
  CHECK_THROWS_AS(split_uniform(0.5, 0), UrnError);
  CHECK_THROWS_AS(split_uniform(0.5, 9), UrnError);
  CHECK_THROWS_AS(split_uniform(1.0, 2), UrnError);
  CHECK(split_uniform(0.5, 8).size() == 8);
}

TEST_CASE("recording and replay sources") {
  RandomnessStream stream(3, 0);
  RecordingSource rec(stream);
  const double a = rec.next();
  const double b = rec.next();
  REQUIRE(rec.values() == std::vector<double>{a, b});

  ReplaySource replay(rec.values());
  CHECK(replay.next() == a);
  CHECK(replay.next() == b);
  CHECK(replay.consumed() == 2);
  CHECK_THROWS_AS(replay.next(), UrnError);
}
