#ifndef QUADWORD_CONSTRUCTION_HPP_
#define QUADWORD_CONSTRUCTION_HPP_

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "quadword/word.hpp"

namespace quadword {

  // How W_n is picked among the prefixes that qualify. Only the shortest
  // qualifying prefix is implemented.
  enum class AnchorRule { shortest };

  AnchorRule  parse_anchor_rule(std::string const& name);
  std::string to_string(AnchorRule rule);

  struct ConstructionParams {
    StreamPtr     base;
    std::size_t   depth         = 1;
    std::uint64_t growth_factor = 2;
    AnchorRule    anchor_rule   = AnchorRule::shortest;

    // Anchor search scans at most scan_multiplier * growth_factor *
    // length(W_{n-1}) letters of the base.
    std::uint64_t scan_multiplier = 64;
    // Stages longer than this are not materialized; their letters are
    // resolved through the recursive stage structure instead.
    Position stage_cap = Position{1} << 26;

    // When nonzero, the base must pass verify_sturmian(base,
    // sturmian_check_length, sturmian_check_nmax) before anything is built.
    Position    sturmian_check_length = 30'000;
    std::size_t sturmian_check_nmax   = 100;

    // Throws InvalidArgument on depth 0, growth_factor < 2 or a null base.
    void validate() const;
  };

  // Fibonacci base with the default settings at the given depth.
  ConstructionParams fibonacci_params(std::size_t depth);

  //! Anchors W_n, exponents a_{i,j}, blocks V_n and stages U_n of the
  //! construction, indexed from 1 in the accessors.
  struct ConstructionTrace {
    std::vector<FiniteWord> anchors;  // W_1..W_d
    // exponents[i-1][j-1] = a_{i,j} for 1 <= j < i <= d
    std::vector<std::vector<std::uint64_t>> exponents;
    std::vector<FiniteWord>                 blocks;         // V_1..V_d
    std::vector<Position>                   stage_lengths;  // |U_1|..|U_d|
    // The longest materialized stage U_k (k = materialized_stage).
    FiniteWord  u_prefix;
    std::size_t materialized_stage = 0;

    std::size_t depth() const noexcept {
      return anchors.size();
    }
    FiniteWord const& anchor(std::size_t n) const;
    FiniteWord const& block(std::size_t n) const;
    Position          stage_length(std::size_t n) const;
    std::uint64_t     exponent(std::size_t i, std::size_t j) const;
  };

  // W_1 is the first letter of the base; W_n (n >= 2) is the shortest
  // prefix of length >= growth_factor * |W_{n-1}| that ends with W_{n-1}.
  // Throws SearchHorizonError when the scan limit is exhausted.
  std::vector<FiniteWord> select_anchors(WordStream const& base,
                                         std::size_t       depth,
                                         std::uint64_t     growth_factor,
                                         std::uint64_t     scan_multiplier
                                         = 64);

  // Appends W_{n+1} to anchors W_1..W_n (anchors must be nonempty).
  void extend_anchors(WordStream const&        base,
                      std::vector<FiniteWord>& anchors,
                      std::uint64_t            growth_factor,
                      std::uint64_t            scan_multiplier = 64);

  // a_{i,j} = ceil(|W_i| / |W_j|) for 1 <= j < i <= anchors.size().
  // Throws RangeError otherwise.
  std::uint64_t exponent(std::vector<FiniteWord> const& anchors,
                         std::size_t                    i,
                         std::size_t                    j);

  // V_1 = W_1; for n >= 2
  //   V_n = W_n W_{n-1}^{a_{n,n-1}} ... W_2^{a_{n,2}} W_1^{a_{n,1}}
  //         W_2^{a_{n,2}} ... W_{n-1}^{a_{n,n-1}} W_n.
  FiniteWord build_block(std::size_t n, std::vector<FiniteWord> const& anchors);

  // Length of V_n without materializing it.
  Position block_length(std::size_t n, std::vector<FiniteWord> const& anchors);

  // (previous block)^2, i.e. U_n from U_{n-1} and V_n.
  FiniteWord build_stage(FiniteWord const& previous, FiniteWord const& block);

  // U_n rebuilt from the trace's anchors and blocks; U_1 = W_1.
  FiniteWord build_stage(std::size_t n, ConstructionTrace const& trace);

  //! The limit word U = lim U_n as a stream.
  //!
  //! Stages are built on demand. Stages up to params.stage_cap letters are
  //! materialized; beyond that, letters are found by descending through
  //! U_n = U_{n-1} V_n U_{n-1} V_n. Queries are serialized by a mutex.
  class UStream final : public WordStream {
   public:
    explicit UStream(ConstructionParams params);

    Letter      letter_at(Position i) const override;
    FiniteWord  prefix(Position length) const override;
    std::string descriptor() const override;

    ConstructionParams const& params() const noexcept {
      return _params;
    }
    // Snapshot of every stage built so far (at least params().depth).
    ConstructionTrace trace() const;
    // Snapshot truncated to the first `depth` stages, building them if
    // necessary.
    ConstructionTrace trace(std::size_t depth) const;

   private:
    void ensure_length(Position length) const;
    void ensure_stages(std::size_t count) const;
    void add_stage() const;
    void emit(std::size_t n, Position from, Position count,
              std::vector<Letter>& out) const;

    ConstructionParams                _params;
    mutable std::mutex                _mutex;
    mutable ConstructionTrace         _trace;
    mutable std::vector<Letter>       _materialized;
  };

  std::shared_ptr<UStream const> u_stream(ConstructionParams params);

  // The first depth stages, anchors and blocks.
  ConstructionTrace build_trace(ConstructionParams const& params);

  struct StageBoundCheck {
    std::size_t d;
    Position    stage_length;
    Position    anchor_length;
    Position    bound;  // 4 d^2 |W_d|
    double      ratio;  // |U_d| / (d^2 |W_d|)
    bool        ok;
  };

  // |U_d| <= 4 d^2 |W_d| for every stage of the trace, in exact integers.
  std::vector<StageBoundCheck>
  verify_stage_length_bound(ConstructionTrace const& trace);

}  // namespace quadword

#endif  // QUADWORD_CONSTRUCTION_HPP_
