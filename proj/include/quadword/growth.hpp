#ifndef QUADWORD_GROWTH_HPP_
#define QUADWORD_GROWTH_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "quadword/construction.hpp"
#include "quadword/factor_index.hpp"
#include "quadword/word.hpp"

namespace quadword {

  using BigInt = boost::multiprecision::cpp_int;

  ////////////////////////////////////////////////////////////////////////
  // Growth of A_W under the frame V = span(1, alphabet)
  ////////////////////////////////////////////////////////////////////////

  // dim(V^n) = 1 + p(1) + ... + p(n). Throws HorizonError if n is beyond
  // the profile's n_trust or n_max.
  BigInt growth_function(ComplexityProfile const& profile, std::size_t n);

  // dim(V^0..V^n_max) in one pass, same preconditions.
  std::vector<BigInt> growth_series(ComplexityProfile const& profile,
                                    std::size_t              n_max);

  // Least-squares slope of log dim(V^n) against log n over [n_lo, n_hi].
  // Requires n_hi >= 4 n_lo >= 16 and dims.size() > n_hi.
  double estimate_gk(std::vector<BigInt> const& dims,
                     std::size_t                n_lo,
                     std::size_t                n_hi);

  // max dim(V^n) / n^2 over n in [ceil(n_hi / 10), n_hi], a finite-horizon
  // stand-in for the limsup. Requires n_hi >= 100.
  double estimate_growth_constant(std::vector<BigInt> const& dims,
                                  std::size_t                n_hi);

  struct BoundCheck {
    std::size_t n;
    double      bound;
    BigInt      actual;
    bool        pass;
  };

  struct GrowthReport {
    std::vector<BigInt>     dims;  // dims[n], 0 <= n <= n_max
    std::size_t             n_lo        = 0;
    std::size_t             n_hi        = 0;
    double                  gk_estimate = 0;
    double                  gc_estimate = 0;
    // min and max of dim(V^n)/n^2 over [n_lo, n_hi]
    double                  c_lower = 0;
    double                  c_upper = 0;
    std::vector<BoundCheck> bound_checks;
  };

  // dims up to n_max plus GK / GC estimates over [max(4, n_max/10), n_max]
  // (GK window needs n_max >= 16, GC needs n_max >= 100; estimates are
  // left at zero otherwise).
  GrowthReport growth_report(ComplexityProfile const& profile,
                             std::size_t              n_max);

  // binom(n+1, 2) <= dim(V^n) <= 1 + f(1) + sum_{j=2..n} 100 (j+1)(log2 j)^2
  // for 2 <= n <= n_max; bound_checks records the upper side and the lower
  // side is folded into `pass`.
  std::vector<BoundCheck> check_growth_sandwich(ComplexityProfile const& profile,
                                                std::size_t n_max);

  struct UBoundEntry {
    std::size_t   n;
    std::uint64_t f;          // number of factors of length n
    double        bound;      // 100 (n+1) (log2 n)^2
    bool          pass;
    std::size_t   d;          // max{d : |W_d| <= n}
    std::size_t   d_bound;    // floor(log2 n) + 1
    bool          d_ok;
    // f(n) against the intermediate estimates 12 d^2 (n+1) and
    // 2(n+1) + 16 d^2 n; reported, not asserted.
    double        ratio_12;
    double        ratio_16;
  };

  struct UBoundReport {
    bool                     ok = true;
    std::size_t              n_checked = 0;
    std::vector<UBoundEntry> entries;
  };

  // f(n) <= 100 (n+1)(log2 n)^2 and d(n) <= floor(log2 n) + 1 for
  // 2 <= n <= min(n_max, n_trust). The trace must contain an anchor longer
  // than every checked n (RangeError otherwise).
  UBoundReport check_u_bounds(ComplexityProfile const& profile,
                              ConstructionTrace const& trace,
                              std::size_t              n_max);

  // binom(n+1, 2) as an exact integer.
  BigInt binomial2(std::size_t n_plus_one);

  ////////////////////////////////////////////////////////////////////////
  // Monomial presentations and transfer-matrix counting
  ////////////////////////////////////////////////////////////////////////

  //! A monomial algebra given by generators and forbidden words. The
  //! forbidden set is reduced at construction so that no member is a
  //! factor of another.
  class ForbiddenPresentation {
   public:
    ForbiddenPresentation(Alphabet alphabet, std::vector<FiniteWord> forbidden);

    // "ab" and "aa,bab"
    static ForbiddenPresentation parse(std::string const& alphabet,
                                       std::string const& forbidden_csv);

    Alphabet const& alphabet() const noexcept {
      return _alphabet;
    }
    std::vector<FiniteWord> const& forbidden() const noexcept {
      return _forbidden;
    }

   private:
    Alphabet                _alphabet;
    std::vector<FiniteWord> _forbidden;
  };

  //! Aho-Corasick automaton of the forbidden set with the matching states
  //! removed. Paths of length n from the root spell exactly the length-n
  //! words avoiding every forbidden factor.
  class TransferAutomaton {
   public:
    static constexpr std::uint32_t dead = static_cast<std::uint32_t>(-1);

    explicit TransferAutomaton(ForbiddenPresentation const& pres);

    std::size_t state_count() const noexcept {
      return _states;
    }
    std::size_t sigma() const noexcept {
      return _sigma;
    }
    // Successor of a live state, or `dead`.
    std::uint32_t next(std::uint32_t s, Letter x) const noexcept {
      return _next[s * _sigma + x];
    }

   private:
    std::size_t                _states = 0;
    std::size_t                _sigma  = 0;
    std::vector<std::uint32_t> _next;
  };

  // Number of length-n words avoiding the forbidden set, by integer
  // matrix powering.
  BigInt transfer_count(ForbiddenPresentation const& pres, std::uint64_t n);

  // Counts for n = 0..n_max by repeated vector-matrix products.
  std::vector<BigInt> transfer_series(ForbiddenPresentation const& pres,
                                      std::size_t                  n_max);

  enum class GrowthClass { finite, polynomial, exponential, inconclusive };

  std::string to_string(GrowthClass c);

  struct GrowthClassification {
    GrowthClass                cls = GrowthClass::inconclusive;
    // Exact polynomial degree from the cycle structure (polynomial only).
    std::optional<std::size_t> degree;
    // Least-squares slope of log count against log n over the upper half
    // of the horizon (polynomial only).
    double                     fitted_degree = 0;
    double                     last_ratio    = 0;
    bool                       ratios_stable = false;
    std::size_t                horizon       = 0;
  };

  // Exponential when the last 10 count ratios agree to 1e-6 and exceed
  // 1 + 1e-6; polynomial (with degree) when the automaton has no strongly
  // connected component with two distinct cycles; inconclusive when the
  // structure is exponential but the ratios have not settled. Requires
  // horizon >= 2 * state_count (RangeError).
  GrowthClassification classify_growth(ForbiddenPresentation const& pres,
                                       std::size_t                  horizon);

}  // namespace quadword

#endif  // QUADWORD_GROWTH_HPP_
