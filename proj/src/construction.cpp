#include "quadword/construction.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "quadword/error.hpp"
#include "quadword/sturmian.hpp"

namespace quadword {

  AnchorRule parse_anchor_rule(std::string const& name) {
    if (name == "shortest") {
      return AnchorRule::shortest;
    }
    throw InvalidArgument("unknown anchor rule '" + name + "'");
  }

  std::string to_string(AnchorRule) {
    return "shortest";
  }

  void ConstructionParams::validate() const {
    if (!base) {
      throw InvalidArgument("construction needs a base stream");
    }
    if (depth < 1) {
      throw InvalidArgument("construction depth must be at least 1");
    }
    if (growth_factor < 2) {
      throw InvalidArgument("growth factor must be at least 2");
    }
    if (scan_multiplier < 1 || stage_cap < 1) {
      throw InvalidArgument("scan multiplier and stage cap must be positive");
    }
  }

  ConstructionParams fibonacci_params(std::size_t depth) {
    ConstructionParams params;
    params.base  = fibonacci_stream();
    params.depth = depth;
    return params;
  }

  ////////////////////////////////////////////////////////////////////////
  // ConstructionTrace
  ////////////////////////////////////////////////////////////////////////

  namespace {
    void check_stage_index(std::size_t n, std::size_t depth) {
      if (n < 1 || n > depth) {
        throw RangeError("stage " + std::to_string(n)
                         + " outside 1.." + std::to_string(depth));
      }
    }
  }  // namespace

  FiniteWord const& ConstructionTrace::anchor(std::size_t n) const {
    check_stage_index(n, depth());
    return anchors[n - 1];
  }

  FiniteWord const& ConstructionTrace::block(std::size_t n) const {
    check_stage_index(n, blocks.size());
    return blocks[n - 1];
  }

  Position ConstructionTrace::stage_length(std::size_t n) const {
    check_stage_index(n, stage_lengths.size());
    return stage_lengths[n - 1];
  }

  std::uint64_t ConstructionTrace::exponent(std::size_t i,
                                            std::size_t j) const {
    if (j < 1 || j >= i || i > exponents.size()) {
      throw RangeError("exponent a_{" + std::to_string(i) + ","
                       + std::to_string(j) + "} is not defined");
    }
    return exponents[i - 1][j - 1];
  }

  ////////////////////////////////////////////////////////////////////////
  // Anchors, exponents, blocks, stages
  ////////////////////////////////////////////////////////////////////////

  void extend_anchors(WordStream const&        base,
                      std::vector<FiniteWord>& anchors,
                      std::uint64_t            growth_factor,
                      std::uint64_t            scan_multiplier) {
    if (anchors.empty()) {
      anchors.emplace_back(FiniteWord{base.letter_at(0)});
      return;
    }
    FiniteWord const& prev  = anchors.back();
    Position const    m     = prev.length();
    Position const    min_L = growth_factor * m;
    Position const    limit = scan_multiplier * growth_factor * m;
    Position          window = std::min(limit, 4 * min_L);

    while (true) {
      FiniteWord const text   = base.prefix(window);
      auto const       first  = text.begin()
                         + static_cast<std::ptrdiff_t>(min_L - m);
      auto const       found  = std::search(
          first, text.end(),
          std::boyer_moore_horspool_searcher(prev.begin(), prev.end()));
      if (found != text.end()) {
        auto end = static_cast<std::size_t>(found - text.begin()) + m;
        anchors.push_back(slice(text, 0, end));
        return;
      }
      if (window >= limit) {
        throw SearchHorizonError(
            "no prefix of length >= " + std::to_string(min_L)
            + " ending with W_" + std::to_string(anchors.size())
            + " within the first " + std::to_string(limit)
            + " letters of the base");
      }
      window = std::min(limit, 2 * window);
    }
  }

  std::vector<FiniteWord> select_anchors(WordStream const& base,
                                         std::size_t       depth,
                                         std::uint64_t     growth_factor,
                                         std::uint64_t     scan_multiplier) {
    if (depth < 1) {
      throw InvalidArgument("depth must be at least 1");
    }
    if (growth_factor < 2) {
      throw InvalidArgument("growth factor must be at least 2");
    }
    std::vector<FiniteWord> anchors;
    while (anchors.size() < depth) {
      extend_anchors(base, anchors, growth_factor, scan_multiplier);
    }
    return anchors;
  }

  std::uint64_t exponent(std::vector<FiniteWord> const& anchors,
                         std::size_t                    i,
                         std::size_t                    j) {
    if (j < 1 || j >= i || i > anchors.size()) {
      throw RangeError("exponent a_{" + std::to_string(i) + ","
                       + std::to_string(j) + "} needs 1 <= j < i <= "
                       + std::to_string(anchors.size()));
    }
    std::uint64_t num = anchors[i - 1].length();
    std::uint64_t den = anchors[j - 1].length();
    return (num + den - 1) / den;
  }

  Position block_length(std::size_t n, std::vector<FiniteWord> const& anchors) {
    if (n < 1 || n > anchors.size()) {
      throw RangeError("block V_" + std::to_string(n) + " needs anchor W_"
                       + std::to_string(n));
    }
    if (n == 1) {
      return anchors[0].length();
    }
    Position total = 2 * anchors[n - 1].length();
    total += exponent(anchors, n, 1) * anchors[0].length();
    for (std::size_t j = 2; j < n; ++j) {
      total += 2 * exponent(anchors, n, j) * anchors[j - 1].length();
    }
    return total;
  }

  FiniteWord build_block(std::size_t n, std::vector<FiniteWord> const& anchors) {
    Position const total = block_length(n, anchors);
    if (n == 1) {
      return anchors[0];
    }
    if (total > max_prefix_length()) {
      throw ResourceLimitError("block V_" + std::to_string(n)
                               + " exceeds the prefix cap");
    }
    FiniteWord block;
    block += anchors[n - 1];
    for (std::size_t j = n - 1; j >= 2; --j) {
      block += power(anchors[j - 1], exponent(anchors, n, j));
    }
    block += power(anchors[0], exponent(anchors, n, 1));
    for (std::size_t j = 2; j < n; ++j) {
      block += power(anchors[j - 1], exponent(anchors, n, j));
    }
    block += anchors[n - 1];
    return block;
  }

  FiniteWord build_stage(FiniteWord const& previous, FiniteWord const& block) {
    FiniteWord half = previous + block;
    return half + half;
  }

  FiniteWord build_stage(std::size_t n, ConstructionTrace const& trace) {
    check_stage_index(n, trace.blocks.size());
    FiniteWord stage = trace.anchors[0];
    for (std::size_t k = 2; k <= n; ++k) {
      stage = build_stage(stage, trace.blocks[k - 1]);
    }
    return stage;
  }

  ////////////////////////////////////////////////////////////////////////
  // UStream
  ////////////////////////////////////////////////////////////////////////

  UStream::UStream(ConstructionParams params)
      : WordStream(params.base ? params.base->alphabet() : Alphabet()),
        _params(std::move(params)) {
    _params.validate();
    if (_params.sturmian_check_length > 0) {
      auto report = verify_sturmian(*_params.base,
                                    _params.sturmian_check_length,
                                    _params.sturmian_check_nmax);
      if (!report.ok) {
        throw InvalidArgument("base " + _params.base->descriptor()
                              + " is not Sturmian at the checked horizon");
      }
    }
    std::lock_guard lock(_mutex);
    ensure_stages(_params.depth);
  }

  void UStream::add_stage() const {
    std::size_t const n = _trace.anchors.size() + 1;
    extend_anchors(*_params.base, _trace.anchors, _params.growth_factor,
                   _params.scan_multiplier);
    auto const& anchors = _trace.anchors;

    std::vector<std::uint64_t> row;
    for (std::size_t j = 1; j < n; ++j) {
      row.push_back(exponent(anchors, n, j));
    }
    Position const v_len = block_length(n, anchors);
    if (v_len > _params.stage_cap) {
      _trace.anchors.pop_back();
      throw ResourceLimitError("stage " + std::to_string(n)
                               + " needs a block of "
                               + std::to_string(v_len)
                               + " letters, above the stage cap");
    }
    FiniteWord block = build_block(n, anchors);
    Position   u_len = n == 1 ? anchors[0].length()
                              : 2 * (_trace.stage_lengths.back() + v_len);

    _trace.exponents.push_back(std::move(row));
    _trace.stage_lengths.push_back(u_len);
    if (n == 1) {
      _materialized.assign(block.begin(), block.end());
      _trace.materialized_stage = 1;
    } else if (u_len <= _params.stage_cap && _trace.materialized_stage == n - 1) {
      std::size_t const half = _materialized.size() + block.length();
      _materialized.reserve(u_len);
      _materialized.insert(_materialized.end(), block.begin(), block.end());
      _materialized.resize(u_len);
      std::copy_n(_materialized.begin(), half,
                  _materialized.begin() + static_cast<std::ptrdiff_t>(half));
      _trace.materialized_stage = n;
    }
    _trace.blocks.push_back(std::move(block));
  }

  void UStream::ensure_stages(std::size_t count) const {
    while (_trace.anchors.size() < count) {
      add_stage();
    }
  }

  void UStream::ensure_length(Position length) const {
    if (length > (Position{1} << 62)) {
      throw ResourceLimitError("position beyond 2^62");
    }
    while (_trace.stage_lengths.empty()
           || _trace.stage_lengths.back() < length) {
      add_stage();
    }
  }

  void UStream::emit(std::size_t n, Position from, Position count,
                     std::vector<Letter>& out) const {
    if (count == 0) {
      return;
    }
    if (n <= _trace.materialized_stage) {
      auto first = _materialized.begin() + static_cast<std::ptrdiff_t>(from);
      out.insert(out.end(), first, first + static_cast<std::ptrdiff_t>(count));
      return;
    }
    // U_n = P V P V with P = U_{n-1}, V = V_n.
    Position const p_len = _trace.stage_lengths[n - 2];
    auto const&    block = _trace.blocks[n - 1];
    Position const half  = p_len + block.length();
    for (Position piece = 0; piece < 4 && count > 0; ++piece) {
      Position const start = (piece / 2) * half + (piece % 2 ? p_len : 0);
      Position const len   = piece % 2 ? block.length() : p_len;
      if (from >= start + len) {
        continue;
      }
      Position const local = from - start;
      Position const take  = std::min(count, len - local);
      if (piece % 2) {
        auto first = block.begin() + static_cast<std::ptrdiff_t>(local);
        out.insert(out.end(), first, first + static_cast<std::ptrdiff_t>(take));
      } else {
        emit(n - 1, local, take, out);
      }
      from += take;
      count -= take;
    }
  }

  Letter UStream::letter_at(Position i) const {
    std::lock_guard lock(_mutex);
    if (i < _materialized.size()) {
      return _materialized[i];
    }
    ensure_length(i + 1);
    std::vector<Letter> out;
    emit(_trace.stage_lengths.size(), i, 1, out);
    return out.front();
  }

  FiniteWord UStream::prefix(Position length) const {
    check_prefix_length(length);
    std::lock_guard lock(_mutex);
    ensure_length(length);
    std::vector<Letter> out;
    out.reserve(length);
    emit(_trace.stage_lengths.size(), 0, length, out);
    return FiniteWord(std::move(out));
  }

  std::string UStream::descriptor() const {
    std::ostringstream out;
    out << "u:base=" << _params.base->descriptor()
        << ",depth=" << _params.depth
        << ",growth=" << _params.growth_factor
        << ",rule=" << to_string(_params.anchor_rule);
    return out.str();
  }

  ConstructionTrace UStream::trace() const {
    std::lock_guard   lock(_mutex);
    ConstructionTrace out = _trace;
    out.u_prefix          = FiniteWord(_materialized);
    return out;
  }

  ConstructionTrace UStream::trace(std::size_t depth) const {
    std::lock_guard lock(_mutex);
    ensure_stages(depth);
    ConstructionTrace out;
    out.anchors.assign(_trace.anchors.begin(),
                       _trace.anchors.begin()
                           + static_cast<std::ptrdiff_t>(depth));
    out.exponents.assign(_trace.exponents.begin(),
                         _trace.exponents.begin()
                             + static_cast<std::ptrdiff_t>(depth));
    out.blocks.assign(_trace.blocks.begin(),
                      _trace.blocks.begin()
                          + static_cast<std::ptrdiff_t>(depth));
    out.stage_lengths.assign(_trace.stage_lengths.begin(),
                             _trace.stage_lengths.begin()
                                 + static_cast<std::ptrdiff_t>(depth));
    out.materialized_stage = std::min(depth, _trace.materialized_stage);
    Position const len = out.stage_lengths[out.materialized_stage - 1];
    out.u_prefix = FiniteWord(std::vector<Letter>(
        _materialized.begin(),
        _materialized.begin() + static_cast<std::ptrdiff_t>(len)));
    return out;
  }

  std::shared_ptr<UStream const> u_stream(ConstructionParams params) {
    return std::make_shared<UStream const>(std::move(params));
  }

  ConstructionTrace build_trace(ConstructionParams const& params) {
    return UStream(params).trace(params.depth);
  }

  std::vector<StageBoundCheck>
  verify_stage_length_bound(ConstructionTrace const& trace) {
    std::vector<StageBoundCheck> out;
    for (std::size_t d = 1; d <= trace.stage_lengths.size(); ++d) {
      StageBoundCheck check;
      check.d             = d;
      check.stage_length  = trace.stage_lengths[d - 1];
      check.anchor_length = trace.anchors[d - 1].length();
      unsigned __int128 bound
          = static_cast<unsigned __int128>(4) * d * d * check.anchor_length;
      check.bound = bound > UINT64_MAX ? UINT64_MAX
                                       : static_cast<Position>(bound);
      check.ok    = static_cast<unsigned __int128>(check.stage_length) <= bound;
      check.ratio = static_cast<double>(check.stage_length)
                    / (static_cast<double>(d) * static_cast<double>(d)
                       * static_cast<double>(check.anchor_length));
      out.push_back(check);
    }
    return out;
  }

}  // namespace quadword
