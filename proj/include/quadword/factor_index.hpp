#ifndef QUADWORD_FACTOR_INDEX_HPP_
#define QUADWORD_FACTOR_INDEX_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quadword/word.hpp"

namespace quadword {

  //! Suffix automaton over a finite word.
  //!
  //! Recognizes exactly the factors of the indexed word and answers factor
  //! counts p(n), membership and occurrence counts. The automaton is built
  //! online in linear time; endpos sizes and the whole complexity profile
  //! are aggregated once at construction, so every query afterwards is
  //! read-only and may run concurrently.
  //!
  //! n_trust is the largest factor length whose count is considered a
  //! faithful reading of the underlying infinite word. An index over a word
  //! taken on its own has n_trust = source_length(); build_trusted_index
  //! certifies a smaller horizon by comparing against the first half.
  class FactorIndex {
   public:
    using StateId                        = std::uint32_t;
    static constexpr StateId no_state    = static_cast<StateId>(-1);
    static constexpr StateId root        = 0;

    explicit FactorIndex(FiniteWord word);
    FactorIndex(FiniteWord word, std::size_t n_trust);

    FiniteWord const& source() const noexcept {
      return _source;
    }
    std::size_t source_length() const noexcept {
      return _source.length();
    }
    std::size_t n_trust() const noexcept {
      return _n_trust;
    }
    std::size_t state_count() const noexcept {
      return _len.size();
    }
    std::size_t sigma() const noexcept {
      return _sigma;
    }

    // Number of distinct factors of length n, 0 <= n <= source_length().
    std::uint64_t complexity(std::size_t n) const;
    // Number of distinct nonempty factors.
    std::uint64_t distinct_factors() const noexcept;

    bool          contains(FiniteWord const& w) const noexcept;
    // Overlapping occurrences of w; 0 when w is absent. The empty word
    // occurs source_length() + 1 times.
    std::uint64_t occurrences(FiniteWord const& w) const noexcept;

    // Low-level traversal used by enumerations.
    StateId next(StateId s, Letter x) const noexcept {
      return x < _sigma ? _next[static_cast<std::size_t>(s) * _sigma + x]
                        : no_state;
    }
    std::uint32_t max_length(StateId s) const noexcept {
      return _len[s];
    }
    StateId link(StateId s) const noexcept {
      return _link[s];
    }
    std::uint64_t endpos_size(StateId s) const noexcept {
      return _count[s];
    }
    // State reached by reading w from the root, or no_state.
    StateId walk(FiniteWord const& w, StateId from = root) const noexcept;

   private:
    void build();

    FiniteWord                 _source;
    std::size_t                _n_trust;
    std::size_t                _sigma;
    std::vector<StateId>       _next;
    std::vector<std::uint32_t> _len;
    std::vector<StateId>       _link;
    std::vector<std::uint64_t> _count;
    std::vector<std::uint64_t> _profile;  // p(0..L)
  };

  // Index over a word in its own right (n_trust = length).
  FactorIndex build_index(FiniteWord word);

  // Index over a prefix of an infinite word. n_trust is the largest n such
  // that the counts p(1..n) of the prefix agree with those of its first
  // ceil(L/2) letters.
  FactorIndex build_trusted_index(FiniteWord prefix);

  // Largest n with p_a(m) == p_b(m) for all 1 <= m <= n.
  std::size_t agreement_horizon(FactorIndex const& a, FactorIndex const& b);

  //! Subword complexity p(0..n_max) of some source.
  struct ComplexityProfile {
    std::vector<std::uint64_t> p;  // p[n] for 0 <= n <= n_max()
    std::size_t                n_trust = 0;
    std::string                source;

    std::size_t n_max() const noexcept {
      return p.empty() ? 0 : p.size() - 1;
    }
    bool trusted(std::size_t n) const noexcept {
      return n <= n_trust;
    }
    // p(n); throws RangeError beyond n_max().
    std::uint64_t at(std::size_t n) const;
  };

  // p(0..min(n_max, source_length)) of the index, carrying its n_trust.
  ComplexityProfile complexity_profile(FactorIndex const& index,
                                       std::size_t        n_max,
                                       std::string        source = "");

  // Border array: border[i] is the length of the longest proper border of
  // the first i letters (border[0] = 0 by convention).
  std::vector<std::size_t> border_array(FiniteWord const& w);

  // Smallest p >= 1 with w[i] == w[i + p] for all valid i. Requires a
  // nonempty word.
  std::size_t minimal_period(FiniteWord const& w);

  bool is_primitive(FiniteWord const& w);

  // The shortest u with w = u^k.
  FiniteWord primitive_root(FiniteWord const& w);

  struct RecurrenceReport {
    bool          ok = false;
    std::size_t   factor_length  = 0;
    std::uint64_t k_min          = 0;
    std::uint64_t factors_checked = 0;
    FiniteWord    worst_factor;
    std::uint64_t worst_count = 0;
  };

  // Every factor of length n that starts and ends inside the first half of
  // the indexed word occurs at least k_min times in the whole word.
  // Requires source_length >= 4n (HorizonError otherwise).
  RecurrenceReport recurrence_check(FactorIndex const& index,
                                    std::size_t        n,
                                    std::uint64_t      k_min);

  // Same check against prefix(L) of a stream.
  RecurrenceReport recurrence_check(WordStream const& stream,
                                    Position          L,
                                    std::size_t       n,
                                    std::uint64_t     k_min);

  enum class Periodicity { ultimately_periodic, aperiodic_at_horizon };

  struct GapClassification {
    Periodicity                kind = Periodicity::aperiodic_at_horizon;
    std::optional<std::size_t> witness;  // n0 with p(n0) <= n0
    std::size_t                horizon = 0;
  };

  // A right-infinite word with p(n0) <= n0 for some n0 is ultimately
  // periodic. Scans trusted lengths 1..min(n_trust, n_max).
  GapClassification bergman_gap_check(ComplexityProfile const& profile);

  std::string to_string(Periodicity kind);

}  // namespace quadword

#endif  // QUADWORD_FACTOR_INDEX_HPP_
