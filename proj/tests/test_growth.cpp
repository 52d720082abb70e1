#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "quadword/error.hpp"
#include "quadword/growth.hpp"
#include "quadword/sturmian.hpp"

using namespace quadword;

namespace {
  FiniteWord W(std::string const& s) {
    return FiniteWord::from_string(s);
  }

  ForbiddenPresentation P(std::string const& alphabet, std::string const& csv) {
    return ForbiddenPresentation::parse(alphabet, csv);
  }

  std::vector<BigInt> as_big(std::vector<std::uint64_t> const& xs) {
    return {xs.begin(), xs.end()};
  }

  ComplexityProfile fibonacci_profile(std::size_t n_max) {
    return complexity_profile(
        build_trusted_index(fibonacci_stream()->prefix(20000)), n_max);
  }
}  // namespace

TEST_CASE("Sturmian growth is 1 + n(n+3)/2") {
  auto const prof = fibonacci_profile(1000);
  auto const dims = growth_series(prof, 1000);
  for (std::size_t n = 0; n <= 1000; ++n) {
    CHECK(dims[n] == 1 + n * (n + 3) / 2);
  }
  CHECK(growth_function(prof, 10) == 66);
  CHECK_THROWS_AS(growth_function(prof, 1001), HorizonError);
}

TEST_CASE("growth of a constant word is linear") {
  auto const prof = complexity_profile(build_index(power(W("a"), 100)), 50);
  auto const dims = growth_series(prof, 50);
  for (std::size_t n = 0; n <= 50; ++n) {
    CHECK(dims[n] == n + 1);
  }
}

TEST_CASE("growth beyond n_trust is refused") {
  auto w    = power(W("a"), 40) + W("b");
  auto prof = complexity_profile(build_trusted_index(w), 10);
  CHECK_THROWS_AS(growth_function(prof, 1), HorizonError);
  CHECK(growth_function(prof, 0) == 1);
}

TEST_CASE("GK and GC estimates for a Sturmian word") {
  auto const report = growth_report(fibonacci_profile(1000), 1000);
  CHECK(report.gk_estimate == doctest::Approx(2.0).epsilon(0.03));
  CHECK(report.gc_estimate > 0.5);
  CHECK(report.gc_estimate < 0.53);
  // Sturmian words meet the quadratic lower bound, so the PI-degree budget
  // floor(2 GC) is 1.
  CHECK(std::floor(2 * report.gc_estimate) == 1);
  CHECK(report.c_lower <= report.c_upper);
  CHECK(report.dims.size() == 1001);

  for (auto const& c : check_growth_sandwich(fibonacci_profile(500), 500)) {
    CHECK(c.pass);
  }
}

TEST_CASE("GK estimate on synthetic power laws") {
  for (double alpha : {1.0, 2.0, 3.0}) {
    std::vector<BigInt> dims;
    for (std::size_t n = 0; n <= 2000; ++n) {
      dims.emplace_back(static_cast<std::uint64_t>(
          std::llround(std::pow(static_cast<double>(n), alpha)) + 1));
    }
    CHECK(estimate_gk(dims, 100, 2000) == doctest::Approx(alpha).epsilon(0.01));
  }
  std::vector<BigInt> dims(20, 1);
  CHECK_THROWS_AS(estimate_gk(dims, 2, 8), HorizonError);
  CHECK_THROWS_AS(estimate_gk(dims, 4, 12), HorizonError);
  CHECK_THROWS_AS(estimate_gk(dims, 4, 40), HorizonError);
  CHECK_THROWS_AS(estimate_growth_constant(dims, 50), HorizonError);
}

TEST_CASE("binomial") {
  CHECK(binomial2(1) == 0);
  CHECK(binomial2(2) == 1);
  CHECK(binomial2(101) == 5050);
}

TEST_CASE("presentations are normalized") {
  auto const p = ForbiddenPresentation(Alphabet(), {W("aab"), W("ba"), W("aa"),
                                                    W("aa"), W("bab")});
  std::vector<FiniteWord> expected{W("aa"), W("ba")};
  CHECK(p.forbidden() == expected);
  CHECK(P("ab", "").forbidden().empty());
  CHECK_THROWS_AS(ForbiddenPresentation(Alphabet(), {FiniteWord()}),
                  InvalidArgument);
  CHECK_THROWS_AS(P("ab", "ac"), InvalidArgument);
  CHECK(P("abc", " ca , b ").forbidden() == std::vector<FiniteWord>{W("b"), W("ca")});
}

TEST_CASE("transfer counts on small presentations") {
  auto const aa = P("ab", "aa");
  CHECK(transfer_series(aa, 5) == as_big({1, 2, 3, 5, 8, 13}));
  CHECK(transfer_count(aa, 5) == 13);
  CHECK(transfer_count(P("abcd", ""), 2) == 16);
  CHECK(transfer_count(P("ab", "ab,ba"), 7) == 2);
  CHECK(transfer_count(P("ab", "a,b"), 1) == 0);
  CHECK(transfer_count(P("ab", "a,b"), 0) == 1);
  // Fibonacci numbers get large quickly; the count stays exact.
  CHECK(transfer_count(aa, 200)
        == BigInt("734544867157818093234908902110449296423351"));
}

TEST_CASE("transfer counts agree with brute force") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    std::uniform_int_distribution<std::size_t> k(2, 3), count(0, 4), len(1, 4);
    auto const                                  letters = k(rng);
    std::vector<std::string>                    forbidden;
    std::vector<FiniteWord>                     words;
    for (std::size_t i = 0, m = count(rng); i < m; ++i) {
      forbidden.push_back(oracle::random_word(rng, letters, len(rng)));
      words.push_back(W(forbidden.back()));
    }
    ForbiddenPresentation pres(Alphabet::first(letters), words);
    std::size_t const     n_max = letters == 2 ? 18 : 11;
    auto const expected = as_big(oracle::avoiding_counts(letters, forbidden, n_max));
    auto const series   = transfer_series(pres, n_max);
    CHECK(series == expected);
    for (std::size_t n : {std::size_t{0}, std::size_t{5}, n_max}) {
      CHECK(transfer_count(pres, n) == series[n]);
    }
  }
}

TEST_CASE("growth classification") {
  auto fib = classify_growth(P("ab", "aa"), 60);
  CHECK(fib.cls == GrowthClass::exponential);
  CHECK(fib.last_ratio == doctest::Approx((1 + std::sqrt(5.0)) / 2).epsilon(1e-6));
  CHECK(to_string(fib.cls) == "EXPONENTIAL");

  auto constant = classify_growth(P("ab", "ab,ba"), 60);
  CHECK(constant.cls == GrowthClass::polynomial);
  CHECK(constant.degree == 0u);

  auto linear = classify_growth(P("ab", "ba"), 60);
  CHECK(linear.cls == GrowthClass::polynomial);
  CHECK(linear.degree == 1u);
  CHECK(to_string(linear.cls) == "POLYNOMIAL");

  auto quadratic = classify_growth(P("abc", "ba,ca,cb"), 60);
  CHECK(quadratic.cls == GrowthClass::polynomial);
  CHECK(quadratic.degree == 2u);
  CHECK(quadratic.fitted_degree > 1.5);

  auto finite = classify_growth(P("ab", "aa,b"), 60);
  CHECK(finite.cls == GrowthClass::finite);
  CHECK(to_string(finite.cls) == "FINITE");

  auto free = classify_growth(P("abc", ""), 20);
  CHECK(free.cls == GrowthClass::exponential);
  CHECK(free.last_ratio == doctest::Approx(3.0));

  CHECK_THROWS_AS(classify_growth(P("ab", "aa"), 5), RangeError);
}
