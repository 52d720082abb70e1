#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "quadword/algebra.hpp"
#include "quadword/error.hpp"
#include "quadword/sturmian.hpp"

using namespace quadword;

namespace {
  FiniteWord W(std::string const& s) {
    return FiniteWord::from_string(s);
  }

  AlgebraElement E(std::string const& s, Rational c = 1) {
    return AlgebraElement::basis(W(s), c);
  }

  FactorIndex const& fibonacci_index() {
    static auto const index
        = build_trusted_index(fibonacci_stream()->prefix(100000));
    return index;
  }

  FactorIndex const& u_index() {
    static auto const index
        = build_trusted_index(u_stream(fibonacci_params(1))->prefix(200000));
    return index;
  }

  // Words that are not factors are zero in the algebra, so only factors
  // are drawn.
  AlgebraElement random_element(std::mt19937_64& rng, FactorIndex const& idx) {
    std::uniform_int_distribution<int>         terms(0, 3), coef(-3, 3);
    std::uniform_int_distribution<std::size_t> len(0, 4);
    AlgebraElement                             x;
    for (int t = terms(rng); t > 0;) {
      auto const w = W(oracle::random_word(rng, 2, len(rng)));
      if (idx.contains(w)) {
        x.add_term(w, coef(rng));
        --t;
      }
    }
    return x;
  }

  std::vector<std::string> canonical_words(std::vector<PrimeCandidate> const& cs) {
    std::vector<std::string> out;
    for (auto const& c : cs) {
      out.push_back(c.canonical_word.to_string());
    }
    return out;
  }
}  // namespace

TEST_CASE("element arithmetic") {
  auto x = E("ab") + E("aab", 2);
  CHECK(x.to_string() == "2*aab + ab");
  CHECK((x - E("ab")).to_string() == "2*aab");
  CHECK((x - x).is_zero());
  CHECK((x - x).to_string() == "0");
  CHECK((Rational(1, 3) * E("b")).to_string() == "1/3*b");
  CHECK((E("a") - E("", 2)).to_string() == "-2*1 + a");
  CHECK((Rational(0) * x).is_zero());
  CHECK(x.coefficient(W("aab")) == 2);
  CHECK(x.coefficient(W("b")) == 0);
}

TEST_CASE("multiplication keeps only factors") {
  auto const& idx = fibonacci_index();
  CHECK(multiply(E("a"), E("b"), idx) == E("ab"));
  CHECK(multiply(E("b"), E("b"), idx).is_zero());
  CHECK(multiply(E("a") + E("b"), E("a"), idx) == E("aa") + E("ba"));
  CHECK(multiply(E("aba"), E("aba"), idx) == E("abaaba"));
  CHECK(multiply(E("aa"), E("aa"), idx).is_zero());
  CHECK(multiply(E("a", 2), E("b", Rational(1, 2)), idx) == E("ab"));

  auto const tiny = build_index(W("ab"));
  CHECK_THROWS_AS(multiply(E("ab"), E("a"), tiny), HorizonError);
}

TEST_CASE("multiplication is associative and unital") {
  auto const&     idx = fibonacci_index();
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    auto const x = random_element(rng, idx);
    auto const y = random_element(rng, idx);
    auto const z = random_element(rng, idx);
    CHECK(multiply(multiply(x, y, idx), z, idx)
          == multiply(x, multiply(y, z, idx), idx));
    CHECK(multiply(AlgebraElement::one(), x, idx) == x);
    CHECK(multiply(x, AlgebraElement::one(), idx) == x);
    // Distributivity over addition.
    CHECK(multiply(x, y + z, idx) == multiply(x, y, idx) + multiply(x, z, idx));
  }
}

TEST_CASE("periodic quotients") {
  auto const q = build_periodic_quotient(W("aab"));
  CHECK(q.d == 3);
  CHECK(q.pi_degree == 6);
  CHECK(q.rotations == std::vector<FiniteWord>{W("aab"), W("aba"), W("baa")});

  auto const r = build_periodic_quotient(W("abab"));
  CHECK(r.period == W("ab"));
  CHECK(r.d == 2);
  CHECK(r.pi_degree == 4);

  auto const s = build_periodic_quotient(W("a"));
  CHECK(s.d == 1);
  CHECK(s.pi_degree == 2);
  CHECK_THROWS_AS(build_periodic_quotient(FiniteWord()), InvalidArgument);
}

TEST_CASE("quotient identities hold") {
  for (auto const* y : {"a", "ab", "aab", "aabab", "abaababaab"}) {
    auto const q      = build_periodic_quotient(W(y));
    auto const report = verify_quotient_identities(q, 4 * q.d + 6);
    CHECK(report.ok());
    CHECK(report.words_checked > 0);
  }
  auto const q = build_periodic_quotient(W("aab"));
  CHECK_THROWS_AS(verify_quotient_identities(q, 5), RangeError);
}

TEST_CASE("quotient identity checks catch broken inputs") {
  auto q = build_periodic_quotient(W("aab"));
  auto duplicated = q;
  duplicated.rotations.push_back(q.rotations[0]);
  auto const dup = verify_quotient_identities(duplicated, 20);
  CHECK_FALSE(dup.orthogonal);
  CHECK_FALSE(dup.ok());

  auto injected = q;
  injected.rotations.push_back(W("a"));
  auto const inj = verify_quotient_identities(injected, 20);
  CHECK_FALSE(inj.orthogonal);

  auto missing = q;
  missing.rotations.pop_back();
  auto const mis = verify_quotient_identities(missing, 20);
  CHECK_FALSE(mis.ok());
}

TEST_CASE("least rotation matches brute force") {
  for (std::size_t n = 1; n <= 12; ++n) {
    for (auto const& s : oracle::all_words(2, n)) {
      CHECK(least_rotation(W(s)).to_string() == oracle::least_rotation(s));
    }
  }
  for (std::size_t n = 1; n <= 6; ++n) {
    for (auto const& s : oracle::all_words(3, n)) {
      CHECK(least_rotation(W(s)).to_string() == oracle::least_rotation(s));
    }
  }
  // Rotations land in the same class.
  CHECK(least_rotation(W("baa")) == least_rotation(W("aba")));
  CHECK(least_rotation(W("bab")) != least_rotation(W("aab")));
}

TEST_CASE("co-GK-1 candidates") {
  CHECK(enumerate_cogk1_candidates(fibonacci_index(), 4, 12).empty());

  auto const u = enumerate_cogk1_candidates(u_index(), 4, 12);
  CHECK(canonical_words(u) == std::vector<std::string>{"a", "aab"});
  for (auto const& c : u) {
    CHECK(c.status == CandidateStatus::confirmed_at_k);
    CHECK(c.verified_power >= 4);
    CHECK(c.pi_degree == 2 * c.d);
  }

  auto const ab = enumerate_cogk1_candidates(
      build_trusted_index(periodic_stream(W("ab"))->prefix(400)), 10, 4);
  REQUIRE(ab.size() == 1);
  CHECK(ab[0].canonical_word == W("ab"));
  CHECK(ab[0].verified_power == 200);
  CHECK(to_string(ab[0].status) == "CONFIRMED_AT_K");

  auto const rejected = assess_candidate(fibonacci_index(), W("ab"), 4);
  CHECK(rejected.status == CandidateStatus::rejected);
  CHECK(to_string(rejected.status) == "REJECTED");
  CHECK_THROWS_AS(assess_candidate(fibonacci_index(), W("abab"), 4),
                  InvalidArgument);

  CHECK_THROWS_AS(enumerate_cogk1_candidates(fibonacci_index(), 1, 4),
                  InvalidArgument);
  CHECK_THROWS_AS(enumerate_cogk1_candidates(build_index(W("aabaab")), 4, 2),
                  HorizonError);
}

TEST_CASE("candidates match a brute-force scan") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    // Random words with planted powers.
    std::string text;
    while (text.size() < 150) {
      auto piece = oracle::random_word(rng, 2, 1 + rng() % 4);
      text += (rng() % 2) ? oracle::repeat(piece, 3 + rng() % 3) : piece;
    }
    auto const        index = build_index(W(text));
    std::set<std::string> expected;
    for (std::size_t d = 1; d <= 5; ++d) {
      for (auto const& v : oracle::all_words(2, d)) {
        if (oracle::is_primitive(v)
            && oracle::is_factor(text, oracle::repeat(v, 3))) {
          expected.insert(oracle::least_rotation(v));
        }
      }
    }
    auto const found = canonical_words(enumerate_cogk1_candidates(index, 3, 5));
    CHECK(std::set<std::string>(found.begin(), found.end()) == expected);
  }
}

TEST_CASE("matrix image degrees of the anchors") {
  auto const u       = u_stream(fibonacci_params(1));
  auto const trace   = u->trace(5);
  auto const degrees = matrix_image_degrees(trace, u_index(), 4);
  REQUIRE(degrees.size() == 5);
  CHECK(degrees[0].d == 1);
  CHECK(degrees[1].d == 3);
  CHECK(degrees[1].pi_degree == 6);
  CHECK(degrees[3].d == 14);
  for (std::size_t j = 0; j < degrees.size(); ++j) {
    auto const w = trace.anchor(j + 1).to_string();
    CHECK(degrees[j].d == oracle::minimal_period(oracle::repeat(w, 3)));
  }
  CHECK(envelope_increases(degrees) == 3);

  CHECK_THROWS_AS(matrix_image_degrees(trace, fibonacci_index(), 4),
                  HorizonError);
}
