#include "entim/correlator.hpp"
#include "entim/errors.hpp"
#include "entim/photon_statistics.hpp"
#include "entim/rng.hpp"
#include "entim/wigner_engine.hpp"

#include <doctest.h>

#include <cmath>

using namespace entim;

TEST_CASE("detect: vacuum calibrates to zero") {
  const GridPtr grid = make_grid(64, 4e-6, 16, 1e-13);
  Rng rng(51);
  double sum = 0.0, sum2 = 0.0;
  long n = 0;
  for (int s = 0; s < 200; ++s) {
    FieldPair pair = sample_vacuum(grid, rng);
    to_domain(pair.signal, SpaceDomain::position, TimeDomain::time);
    const auto i = detect(pair.signal, 16e-13, 0.5);
    for (double v : i) {
      sum += v;
      sum2 += v * v;
      ++n;
    }
  }
  const double mean = sum / n;
  const double se = std::sqrt((sum2 / n - mean * mean) / n);
  CHECK(std::abs(mean) < 5.0 * se);
}

TEST_CASE("detect: deterministic field gives |c|^2 minus the offset") {
  const GridPtr grid = make_grid(8, 4e-6, 4, 1e-13);
  Field f = make_field(grid);
  const std::complex<double> c{0.3, -1.2};
  for (auto& v : f.values) v = c;
  const auto i = detect(f, 4e-13, 0.5);
  for (double v : i) CHECK(v == doctest::Approx(std::norm(c) - 0.5).epsilon(1e-12));
}

TEST_CASE("detect: shorter windows keep the mean and raise the variance") {
  const GridPtr grid = make_grid(4, 4e-6, 64, 1e-13);
  Rng rng(52);
  std::vector<double> full, half;
  for (int s = 0; s < 4000; ++s) {
    FieldPair pair = sample_vacuum(grid, rng);
    to_domain(pair.signal, SpaceDomain::position, TimeDomain::time);
    full.push_back(detect(pair.signal, 64e-13, 0.5)[0]);
    half.push_back(detect(pair.signal, 32e-13, 0.5)[0]);
  }
  const SampleStats sf = summarize(full);
  const SampleStats sh = summarize(half);
  CHECK(std::abs(sf.mean - sh.mean) <
        5.0 * std::sqrt(sf.stderr_mean * sf.stderr_mean +
                        sh.stderr_mean * sh.stderr_mean));
  CHECK(sh.variance > 1.5 * sf.variance);
}

TEST_CASE("detect: window validation") {
  const GridPtr grid = make_grid(8, 4e-6, 4, 1e-13);
  const Field f = make_field(grid);
  CHECK_THROWS_AS(detect(f, 5e-13, 0.0), ConfigError); // exceeds 4e-13 window
  CHECK_THROWS_AS(detect(f, 0.0, 0.0), ConfigError);
  const Field spec = transform(f, Axis::space, Direction::forward);
  CHECK_THROWS_AS(detect(spec, 1e-13, 0.0), std::logic_error);
}

TEST_CASE("accumulator: merge equals sequential accumulation") {
  Rng rng(53);
  CorrAccumulator whole(16), part1(16), part2(16);
  for (int s = 0; s < 50; ++s) {
    std::vector<double> a(16);
    for (auto& v : a) v = rng.exponential(1.0);
    const double b = rng.exponential(2.0);
    whole.accumulate(a, b);
    (s < 23 ? part1 : part2).accumulate(a, b);
  }
  part1.merge(part2);
  const auto f1 = whole.finalize();
  const auto f2 = part1.finalize();
  for (int i = 0; i < 16; ++i) {
    CHECK(f2.g[i] == doctest::Approx(f1.g[i]).epsilon(1e-12));
    CHECK(f2.stderr_g[i] == doctest::Approx(f1.stderr_g[i]).epsilon(1e-12));
  }
}

TEST_CASE("accumulator: merge is associative to 1e-10") {
  Rng rng(54);
  std::vector<std::vector<double>> as;
  std::vector<double> bs;
  for (int s = 0; s < 90; ++s) {
    std::vector<double> a(8);
    for (auto& v : a) v = rng.exponential(1.0) * 1e3; // stress the tolerance
    as.push_back(a);
    bs.push_back(rng.exponential(2.0));
  }
  // ((A B) C) vs (A (B C)) with blocks of 30 pulses.
  CorrAccumulator blockA(8), blockB(8), blockC(8);
  for (int s = 0; s < 30; ++s) blockA.accumulate(as[s], bs[s]);
  for (int s = 30; s < 60; ++s) blockB.accumulate(as[s], bs[s]);
  for (int s = 60; s < 90; ++s) blockC.accumulate(as[s], bs[s]);

  CorrAccumulator left = blockA;
  left.merge(blockB);
  left.merge(blockC);
  CorrAccumulator right = blockB;
  right.merge(blockC);
  CorrAccumulator outer = blockA;
  outer.merge(right);

  const auto fl = left.finalize();
  const auto fr = outer.finalize();
  for (int i = 0; i < 8; ++i) {
    const double scale = std::abs(fl.g[i]) + 1e-30;
    CHECK(std::abs(fl.g[i] - fr.g[i]) / scale < 1e-10);
  }
}

TEST_CASE("accumulator: constant inputs give zero G") {
  CorrAccumulator acc(4);
  const std::vector<double> a(4, 2.5);
  for (int s = 0; s < 10; ++s) acc.accumulate(a, 1.5);
  const auto fin = acc.finalize();
  for (int i = 0; i < 4; ++i) {
    CHECK(fin.g[i] == doctest::Approx(0.0));
    CHECK(fin.background[i] == doctest::Approx(2.5 * 1.5));
  }
}

TEST_CASE("accumulator: identical thermal streams give G = Var") {
  Rng rng(55);
  const double mean = 1.0;
  CorrAccumulator acc(1);
  const long n = 40000;
  for (long s = 0; s < n; ++s) {
    const double draw =
        static_cast<double>(sample_pair_numbers(mean, rng).n_signal);
    acc.accumulate({draw}, draw);
  }
  const auto fin = acc.finalize();
  // Var of the thermal law = mean (mean + 1) = 2.
  CHECK(std::abs(fin.g[0] - 2.0) < 5.0 * fin.stderr_g[0]);
}

TEST_CASE("accumulator: independent streams give G compatible with zero") {
  Rng rng(56);
  CorrAccumulator acc(4);
  for (int s = 0; s < 30000; ++s) {
    std::vector<double> a(4);
    for (auto& v : a) v = rng.exponential(1.0);
    acc.accumulate(a, rng.exponential(1.0));
  }
  const auto fin = acc.finalize();
  for (int i = 0; i < 4; ++i) CHECK(std::abs(fin.g[i]) < 5.0 * fin.stderr_g[i]);
}

TEST_CASE("accumulator: jackknife matches the explicit delete-one loop") {
  Rng rng(57);
  const int n = 200;
  std::vector<double> a(n), b(n);
  for (int i = 0; i < n; ++i) {
    a[i] = rng.exponential(1.0);
    b[i] = 0.5 * a[i] + rng.exponential(0.7);
  }
  CorrAccumulator acc(1);
  for (int i = 0; i < n; ++i) acc.accumulate({a[i]}, b[i]);
  const auto fin = acc.finalize();

  // Explicit jackknife on the plug-in covariance.
  double A = 0.0, B = 0.0, C = 0.0;
  for (int i = 0; i < n; ++i) {
    A += a[i];
    B += b[i];
    C += a[i] * b[i];
  }
  std::vector<double> loo(n);
  for (int i = 0; i < n; ++i) {
    const double Ai = A - a[i], Bi = B - b[i], Ci = C - a[i] * b[i];
    loo[i] = Ci / (n - 1) - Ai * Bi / ((n - 1.0) * (n - 1.0));
  }
  double mean_loo = 0.0;
  for (double v : loo) mean_loo += v;
  mean_loo /= n;
  double var_jack = 0.0;
  for (double v : loo) var_jack += (v - mean_loo) * (v - mean_loo);
  var_jack *= (n - 1.0) / n;
  CHECK(fin.stderr_g[0] == doctest::Approx(std::sqrt(var_jack)).epsilon(1e-9));
}

TEST_CASE("accumulator: stderr shrinks like 1/sqrt(pulses)") {
  Rng rng(58);
  CorrAccumulator half(1), full(1);
  const long n = 20000;
  for (long s = 0; s < 2 * n; ++s) {
    const double x = static_cast<double>(sample_pair_numbers(1.0, rng).n_signal);
    const double y = x + 0.3 * rng.exponential(1.0);
    full.accumulate({y}, x);
    if (s < n) half.accumulate({y}, x);
  }
  const double ratio = full.finalize().stderr_g[0] / half.finalize().stderr_g[0];
  CHECK(ratio == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(0.1));
}

TEST_CASE("accumulator errors") {
  CorrAccumulator acc(4);
  CHECK_THROWS_AS(acc.accumulate(std::vector<double>(3, 1.0), 1.0), std::logic_error);
  acc.accumulate(std::vector<double>(4, 1.0), 1.0);
  CHECK_THROWS_AS(acc.finalize(), StatsError); // count < 2
  CorrAccumulator other(2);
  CHECK_THROWS_AS(acc.merge(other), std::logic_error);
}

TEST_CASE("visibility") {
  std::vector<double> fringe(100), flat(50, 3.0);
  for (int i = 0; i < 100; ++i) fringe[i] = 1.0 + std::cos(0.3 * i);
  CHECK(visibility(fringe) == doctest::Approx(1.0).epsilon(0.02));
  CHECK(visibility(flat) == doctest::Approx(0.0));
  CHECK_THROWS_AS(visibility(std::vector<double>(5, 0.0)), StatsError);
  CHECK_THROWS_AS(visibility(fringe, 10, 10), StatsError);
}
