#ifndef QUADWORD_ALGEBRA_HPP_
#define QUADWORD_ALGEBRA_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "quadword/construction.hpp"
#include "quadword/factor_index.hpp"
#include "quadword/word.hpp"

namespace quadword {

  using Rational = boost::multiprecision::cpp_rational;

  //! A finite linear combination of words with exact rational
  //! coefficients. Zero coefficients are never stored; the empty word is
  //! the unit.
  class AlgebraElement {
   public:
    using Terms = std::map<FiniteWord, Rational>;

    AlgebraElement() = default;

    static AlgebraElement one();
    static AlgebraElement basis(FiniteWord w, Rational coefficient = 1);

    Terms const& terms() const noexcept {
      return _terms;
    }
    bool is_zero() const noexcept {
      return _terms.empty();
    }
    Rational coefficient(FiniteWord const& w) const;

    // Adds c * w, dropping the term if it cancels.
    void add_term(FiniteWord const& w, Rational const& c);

    AlgebraElement& operator+=(AlgebraElement const& other);
    AlgebraElement& operator-=(AlgebraElement const& other);
    AlgebraElement& operator*=(Rational const& scalar);

    friend AlgebraElement operator+(AlgebraElement x, AlgebraElement const& y) {
      return x += y;
    }
    friend AlgebraElement operator-(AlgebraElement x, AlgebraElement const& y) {
      return x -= y;
    }
    friend AlgebraElement operator*(Rational const& c, AlgebraElement x) {
      return x *= c;
    }
    bool operator==(AlgebraElement const&) const = default;

    // "aba + 2*aab - 1/3*1", or "0".
    std::string to_string() const;

   private:
    Terms _terms;
  };

  // Product in A_W, where W is the word indexed by `factors`: basis words
  // multiply by concatenation, and a concatenation that is not a factor is
  // zero. Throws HorizonError when a concatenation is longer than
  // factors.n_trust(), since absence beyond that length is not certified.
  AlgebraElement multiply(AlgebraElement const& x,
                          AlgebraElement const& y,
                          FactorIndex const&    factors);

  ////////////////////////////////////////////////////////////////////////
  // Periodic quotients
  ////////////////////////////////////////////////////////////////////////

  //! A_{Y^omega} for a primitive period Y of length d. The rotations Y_i
  //! are the d distinct length-d factors of Y^omega, and the algebra
  //! satisfies the standard identity of degree 2d.
  struct PeriodicQuotient {
    FiniteWord              period;
    std::size_t             d = 0;
    std::vector<FiniteWord> rotations;
    std::size_t             pi_degree = 0;
  };

  // Reduces Y to its primitive root first. Throws InvalidArgument on the
  // empty word.
  PeriodicQuotient build_periodic_quotient(FiniteWord const& y);

  // Index over the factors of period^omega of length <= max_length.
  FactorIndex periodic_factor_index(FiniteWord const& period,
                                    std::size_t       max_length);

  struct QuotientReport {
    std::size_t check_length  = 0;
    std::size_t words_checked = 0;
    bool        central       = true;  // Z w = w Z
    bool        orthogonal    = true;  // Y_i Y_j = 0 for i != j
    bool        idempotent    = true;  // Y_i^2 = Y_i Z = Z Y_i
    std::optional<FiniteWord>                        central_witness;
    std::optional<std::pair<std::size_t, std::size_t>> orthogonal_witness;
    std::optional<std::size_t>                       idempotent_witness;

    bool ok() const noexcept {
      return central && orthogonal && idempotent;
    }
  };

  // Checks the three identities in exact arithmetic over the factors of
  // q.period^omega up to length L, with Z the sum of q.rotations as given.
  // Requires L >= 2d (RangeError).
  QuotientReport verify_quotient_identities(PeriodicQuotient const& q,
                                            std::size_t             L);

  ////////////////////////////////////////////////////////////////////////
  // Rotations and co-GK-1 candidates
  ////////////////////////////////////////////////////////////////////////

  // Index of the lexicographically least rotation (Booth).
  std::size_t least_rotation_index(FiniteWord const& w);
  FiniteWord  least_rotation(FiniteWord const& w);

  enum class CandidateStatus { confirmed_at_k, rejected };

  std::string to_string(CandidateStatus s);

  struct PrimeCandidate {
    FiniteWord      canonical_word;
    std::size_t     d              = 0;
    std::size_t     pi_degree      = 0;
    // Largest k such that some rotation's k-th power is a factor.
    std::uint64_t   verified_power = 0;
    CandidateStatus status         = CandidateStatus::rejected;
  };

  // Whether some rotation of the primitive word v has its K-th power in
  // the indexed word.
  PrimeCandidate assess_candidate(FactorIndex const& index,
                                  FiniteWord const&  v,
                                  std::uint64_t      K);

  // Every primitive v with |v| <= d_max whose K-th power is a factor, one
  // per rotation class, ordered by length then canonical word. Requires
  // K >= 2 (InvalidArgument) and d_max * K <= n_trust (HorizonError).
  std::vector<PrimeCandidate>
  enumerate_cogk1_candidates(FactorIndex const& index,
                             std::uint64_t      K,
                             std::size_t        d_max);

  struct MatrixImageDegree {
    std::size_t j;
    std::size_t anchor_length;
    std::size_t d;          // minimal period of W_j^omega
    std::size_t pi_degree;  // 2 d
    std::size_t envelope;   // max_{i <= j} d_i
  };

  // For each anchor W_j: confirms W_j^K is a factor (HorizonError
  // otherwise) and reports the minimal period of W_j^omega, computed as
  // the minimal period of W_j W_j.
  std::vector<MatrixImageDegree>
  matrix_image_degrees(ConstructionTrace const& trace,
                       FactorIndex const&       u_index,
                       std::uint64_t            K);

  // Number of j with envelope_j > envelope_{j-1}.
  std::size_t envelope_increases(std::vector<MatrixImageDegree> const& degrees);

}  // namespace quadword

#endif  // QUADWORD_ALGEBRA_HPP_
