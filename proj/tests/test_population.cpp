#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <map>

#include "moran/population.hpp"
#include "moran/rng.hpp"

using namespace moran;

namespace {

Population make(std::map<std::int64_t, std::int64_t> counts) {
  return Population::from_counts(std::move(counts));
}

Population shifted(const Population& p, std::int64_t j) {
  std::map<std::int64_t, std::int64_t> counts;
  for (const auto& [k, c] : p.counts) counts[k + j] = c;
  return Population::from_counts(std::move(counts));
}

Population random_population(RngEngine& rng, std::int64_t n) {
  std::map<std::int64_t, std::int64_t> counts;
  std::int64_t left = n;
  std::int64_t cls = static_cast<std::int64_t>(uniform_below(rng, 21)) - 10;
  while (left > 0) {
    const std::int64_t c =
        1 + static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(left)));
    counts[cls] += c;
    left -= c;
    cls += 1 + static_cast<std::int64_t>(uniform_below(rng, 3));
  }
  return Population::from_counts(std::move(counts));
}

}  // namespace

TEST_CASE("mean_fitness basics") {
  CHECK(mean_fitness(Population::point_mass(7, 5)) == doctest::Approx(5.0));
  CHECK(mean_fitness(make({{0, 1}, {1, 1}})) == doctest::Approx(0.5));
  CHECK(mean_fitness(make({{-2, 1}, {0, 2}, {2, 1}})) == doctest::Approx(0.0));
}

TEST_CASE("central moments") {
  CHECK(central_moment(Population::point_mass(5, 3), 2) == doctest::Approx(0.0));
  CHECK(central_moment(make({{0, 1}, {2, 1}}), 2) == doctest::Approx(1.0));
  // odd moment of a symmetric population
  CHECK(central_moment(make({{-3, 2}, {0, 5}, {3, 2}}), 3) ==
        doctest::Approx(0.0));
  CHECK_THROWS_AS(central_moment(Population::point_mass(5, 3), 1),
                  std::invalid_argument);
}

TEST_CASE("population_moments matches central_moment") {
  RngEngine rng = make_engine(11);
  for (int i = 0; i < 20; ++i) {
    const Population p = random_population(rng, 50);
    const auto mom = population_moments(p);
    CHECK(mom.mean == doctest::Approx(mean_fitness(p)));
    CHECK(mom.c2 == doctest::Approx(central_moment(p, 2)));
    CHECK(mom.c3 == doctest::Approx(central_moment(p, 3)));
    CHECK(mom.c4 == doctest::Approx(central_moment(p, 4)));
  }
}

TEST_CASE("front_kc examples") {
  // N=1000: (ln N)^2 ~ 47.7; 100 individuals at class 3 clear it, none above.
  CHECK(front_kc(make({{0, 900}, {3, 100}})) == 3);
  CHECK(front_kc(Population::point_mass(1000, 0)) == 0);
  // N=10: (ln N)^2 ~ 5.30; the 5 at class 1 miss it, all 10 at class 0 pass.
  CHECK(front_kc(make({{0, 5}, {1, 5}})) == 0);
}

TEST_CASE("front_kd examples") {
  // N=1000, beta=0.5: threshold e^sqrt(ln 1000) ~ 13.85
  CHECK(front_kd(make({{0, 980}, {2, 20}}), 0.5) == 2);
  CHECK(front_kd(Population::point_mass(1000, 0), 0.5) == 0);
  // N=2: threshold ~ 2.30 >= N, so no class qualifies.
  CHECK_FALSE(front_kd(Population::point_mass(2, 0), 0.5).has_value());
  CHECK_THROWS_AS(front_kd(Population::point_mass(10, 0), 1.5),
                  std::invalid_argument);
}

TEST_CASE("support width") {
  CHECK(support_width(Population::point_mass(9, -4)) == 0);
  CHECK(support_width(make({{-1, 1}, {4, 1}, {0, 8}})) == 5);
}

TEST_CASE("population validation") {
  CHECK_THROWS_AS(make({{0, 0}, {1, 2}}), std::invalid_argument);
  Population p;
  p.counts = {{0, 2}};
  p.total = 3;  // mismatch
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("translation covariance") {
  RngEngine rng = make_engine(22);
  for (int rep = 0; rep < 30; ++rep) {
    const Population p = random_population(rng, 200);
    const std::int64_t j =
        static_cast<std::int64_t>(uniform_below(rng, 41)) - 20;
    const Population ps = shifted(p, j);
    CHECK(mean_fitness(ps) ==
          doctest::Approx(mean_fitness(p) + static_cast<double>(j)));
    for (int n = 2; n <= 4; ++n)
      CHECK(central_moment(ps, n) == doctest::Approx(central_moment(p, n)));
    CHECK(*front_kc(ps) == *front_kc(p) + j);
    CHECK(*front_kd(ps, 0.4) == *front_kd(p, 0.4) + j);
    CHECK(ps.min_class() == p.min_class() + j);
    CHECK(ps.max_class() == p.max_class() + j);
    CHECK(support_width(ps) == support_width(p));
  }
}

TEST_CASE("threshold ordering k_d <= k_c when thresholds are ordered") {
  RngEngine rng = make_engine(33);
  const double beta = 0.5;
  for (int rep = 0; rep < 30; ++rep) {
    const Population p = random_population(rng, 2000);
    const double log_n = std::log(static_cast<double>(p.total));
    if (std::exp(std::pow(log_n, 1.0 - beta)) < log_n * log_n) continue;
    const auto kd = front_kd(p, beta);
    const auto kc = front_kc(p);
    REQUIRE(kd.has_value());
    REQUIRE(kc.has_value());
    CHECK(*kd <= *kc);
  }
}

TEST_CASE("two-point extreme configurations satisfy c2 >= (k_w/2)^2 / N") {
  RngEngine rng = make_engine(44);
  for (int rep = 0; rep < 50; ++rep) {
    const std::int64_t n =
        2 + static_cast<std::int64_t>(uniform_below(rng, 200));
    const std::int64_t na =
        1 + static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(n - 1)));
    const std::int64_t a = static_cast<std::int64_t>(uniform_below(rng, 11)) - 5;
    const std::int64_t b =
        a + 1 + static_cast<std::int64_t>(uniform_below(rng, 10));
    const Population p = make({{a, na}, {b, n - na}});
    const double kw = static_cast<double>(support_width(p));
    CHECK(central_moment(p, 2) >=
          (kw / 2.0) * (kw / 2.0) / static_cast<double>(n) - 1e-12);
  }
}
