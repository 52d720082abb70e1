#ifndef QUADWORD_STURMIAN_HPP_
#define QUADWORD_STURMIAN_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "quadword/word.hpp"

namespace quadword {

  //! Continued-fraction prefix [0; a_1, ..., a_k] of an irrational slope
  //! in (0, 1).
  //!
  //! The true slope is unknown beyond depth k; all that is used is that its
  //! tail [a_{k+1}; ...] exceeds 1, which pins the slope strictly between
  //! the k-th convergent and its mediant with the (k-1)-th.
  class SlopeSpec {
   public:
    // Throws InvalidArgument if fewer than two quotients are given, any
    // quotient is zero, or a denominator outgrows 62 bits.
    explicit SlopeSpec(std::vector<std::uint64_t> partial_quotients);

    // Parse "a1,a2,...,ak".
    static SlopeSpec parse(std::string const& text);

    std::vector<std::uint64_t> const& partial_quotients() const noexcept {
      return _quotients;
    }
    std::size_t depth() const noexcept {
      return _quotients.size();
    }
    // The k-th convergent p/q.
    std::uint64_t numerator() const noexcept {
      return _p;
    }
    std::uint64_t denominator() const noexcept {
      return _q;
    }
    // Positions 0..horizon()-1 of the convergent's mechanical word are
    // guaranteed to agree with the irrational slope's.
    Position horizon() const noexcept {
      return _horizon;
    }

   private:
    std::vector<std::uint64_t> _quotients;
    std::uint64_t              _p       = 0;
    std::uint64_t              _q       = 1;
    Position                   _horizon = 0;
  };

  // Lower mechanical word of the slope with intercept 0: letter n is 'b'
  // when floor((n+1)p/q) - floor(np/q) = 1, else 'a'. Querying a position
  // at or beyond slope.horizon() throws HorizonError.
  StreamPtr mechanical_stream(SlopeSpec const& slope);

  // Fixed point of a -> ab, b -> a.
  StreamPtr fibonacci_stream();

  struct SturmianReport {
    bool                       ok = false;
    std::size_t                n_max   = 0;
    std::size_t                n_trust = 0;
    // First n with p(n) != n + 1, if any.
    std::optional<std::size_t> first_failure;
    std::uint64_t              p_at_failure = 0;
  };

  // Checks p(n) = n + 1 for 1 <= n <= n_max on a trusted index of
  // prefix(L). Requires L >= 3 n_max (HorizonError). Reports not-ok when
  // the certified horizon is below n_max.
  SturmianReport verify_sturmian(WordStream const& stream,
                                 Position          L,
                                 std::size_t       n_max);

}  // namespace quadword

#endif  // QUADWORD_STURMIAN_HPP_
