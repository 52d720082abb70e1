#include "quadword/factor_index.hpp"

#include <algorithm>

#include "quadword/error.hpp"

namespace quadword {

  FactorIndex::FactorIndex(FiniteWord word)
      : FactorIndex(word, word.length()) {}

  FactorIndex::FactorIndex(FiniteWord word, std::size_t n_trust)
      : _source(std::move(word)),
        _n_trust(std::min(n_trust, _source.length())),
        _sigma(std::max<std::size_t>(2, _source.letter_bound())) {
    if (_source.empty()) {
      throw RangeError("cannot index the empty word");
    }
    if (_source.length() > max_prefix_length()
        || _source.length() >= (std::size_t{1} << 31)) {
      throw ResourceLimitError("word of length "
                               + std::to_string(_source.length())
                               + " exceeds the index cap");
    }
    build();
  }

  void FactorIndex::build() {
    std::size_t const L        = _source.length();
    std::size_t const capacity = 2 * L + 1;
    _next.reserve(capacity * _sigma);
    _len.reserve(capacity);
    _link.reserve(capacity);
    _count.reserve(capacity);

    auto new_state = [this](std::uint32_t len, StateId link, std::uint64_t c) {
      _next.insert(_next.end(), _sigma, no_state);
      _len.push_back(len);
      _link.push_back(link);
      _count.push_back(c);
      return static_cast<StateId>(_len.size() - 1);
    };
    auto edge = [this](StateId s, Letter x) -> StateId& {
      return _next[static_cast<std::size_t>(s) * _sigma + x];
    };

    new_state(0, no_state, 0);
    StateId last = root;
    for (Letter x : _source) {
      StateId cur = new_state(_len[last] + 1, no_state, 1);
      StateId p   = last;
      while (p != no_state && edge(p, x) == no_state) {
        edge(p, x) = cur;
        p          = _link[p];
      }
      if (p == no_state) {
        _link[cur] = root;
      } else {
        StateId q = edge(p, x);
        if (_len[p] + 1 == _len[q]) {
          _link[cur] = q;
        } else {
          StateId clone = new_state(_len[p] + 1, _link[q], 0);
          std::copy_n(_next.begin() + static_cast<std::ptrdiff_t>(q * _sigma),
                      _sigma,
                      _next.begin()
                          + static_cast<std::ptrdiff_t>(clone * _sigma));
          while (p != no_state && edge(p, x) == q) {
            edge(p, x) = clone;
            p          = _link[p];
          }
          _link[q]   = clone;
          _link[cur] = clone;
        }
      }
      last = cur;
    }

    // endpos sizes: push counts up the suffix-link tree, longest first.
    std::vector<std::uint32_t> bucket(L + 2, 0);
    for (auto len : _len) {
      ++bucket[len];
    }
    for (std::size_t i = 1; i < bucket.size(); ++i) {
      bucket[i] += bucket[i - 1];
    }
    std::vector<StateId> order(_len.size());
    for (StateId s = static_cast<StateId>(_len.size()); s-- > 0;) {
      order[--bucket[_len[s]]] = s;
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      if (*it != root) {
        _count[_link[*it]] += _count[*it];
      }
    }
    _count[root] = L + 1;

    // Each state contributes one factor of each length in
    // (len(link), len].
    std::vector<std::int64_t> diff(L + 2, 0);
    for (StateId s = 1; s < _len.size(); ++s) {
      ++diff[_len[_link[s]] + 1];
      --diff[_len[s] + 1];
    }
    _profile.assign(L + 1, 0);
    _profile[0]         = 1;
    std::int64_t running = 0;
    for (std::size_t n = 1; n <= L; ++n) {
      running += diff[n];
      _profile[n] = static_cast<std::uint64_t>(running);
    }
  }

  std::uint64_t FactorIndex::complexity(std::size_t n) const {
    if (n > source_length()) {
      throw RangeError("factor length " + std::to_string(n)
                       + " exceeds indexed length "
                       + std::to_string(source_length()));
    }
    return _profile[n];
  }

  std::uint64_t FactorIndex::distinct_factors() const noexcept {
    std::uint64_t total = 0;
    for (std::size_t n = 1; n < _profile.size(); ++n) {
      total += _profile[n];
    }
    return total;
  }

  FactorIndex::StateId FactorIndex::walk(FiniteWord const& w,
                                         StateId           from) const noexcept {
    StateId s = from;
    for (Letter x : w) {
      s = next(s, x);
      if (s == no_state) {
        return no_state;
      }
    }
    return s;
  }

  bool FactorIndex::contains(FiniteWord const& w) const noexcept {
    return walk(w) != no_state;
  }

  std::uint64_t FactorIndex::occurrences(FiniteWord const& w) const noexcept {
    StateId s = walk(w);
    return s == no_state ? 0 : _count[s];
  }

  FactorIndex build_index(FiniteWord word) {
    return FactorIndex(std::move(word));
  }

  std::size_t agreement_horizon(FactorIndex const& a, FactorIndex const& b) {
    std::size_t limit = std::min(a.source_length(), b.source_length());
    std::size_t n     = 0;
    while (n < limit && a.complexity(n + 1) == b.complexity(n + 1)) {
      ++n;
    }
    return n;
  }

  FactorIndex build_trusted_index(FiniteWord prefix) {
    std::size_t const L    = prefix.length();
    std::size_t const half = (L + 1) / 2;
    std::size_t       n_trust;
    {
      FactorIndex lower(slice(prefix, 0, half));
      FactorIndex upper(prefix);
      n_trust = agreement_horizon(upper, lower);
    }
    return FactorIndex(std::move(prefix), n_trust);
  }

  std::uint64_t ComplexityProfile::at(std::size_t n) const {
    if (n >= p.size()) {
      throw RangeError("profile has no entry for n = " + std::to_string(n));
    }
    return p[n];
  }

  ComplexityProfile complexity_profile(FactorIndex const& index,
                                       std::size_t        n_max,
                                       std::string        source) {
    ComplexityProfile out;
    n_max = std::min(n_max, index.source_length());
    out.p.reserve(n_max + 1);
    for (std::size_t n = 0; n <= n_max; ++n) {
      out.p.push_back(index.complexity(n));
    }
    out.n_trust = index.n_trust();
    out.source  = std::move(source);
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Periods
  ////////////////////////////////////////////////////////////////////////

  std::vector<std::size_t> border_array(FiniteWord const& w) {
    std::vector<std::size_t> border(w.length() + 1, 0);
    std::size_t              k = 0;
    for (std::size_t i = 1; i < w.length(); ++i) {
      while (k > 0 && w[i] != w[k]) {
        k = border[k];
      }
      if (w[i] == w[k]) {
        ++k;
      }
      border[i + 1] = k;
    }
    return border;
  }

  std::size_t minimal_period(FiniteWord const& w) {
    if (w.empty()) {
      throw RangeError("minimal period of the empty word");
    }
    return w.length() - border_array(w).back();
  }

  bool is_primitive(FiniteWord const& w) {
    if (w.empty()) {
      return false;
    }
    std::size_t p = minimal_period(w);
    return p == w.length() || w.length() % p != 0;
  }

  FiniteWord primitive_root(FiniteWord const& w) {
    if (w.empty()) {
      return w;
    }
    std::size_t p = minimal_period(w);
    return w.length() % p == 0 ? slice(w, 0, p) : w;
  }

  ////////////////////////////////////////////////////////////////////////
  // Recurrence
  ////////////////////////////////////////////////////////////////////////

  RecurrenceReport recurrence_check(FactorIndex const& index,
                                    std::size_t        n,
                                    std::uint64_t      k_min) {
    std::size_t const L = index.source_length();
    if (n == 0 || L < 4 * n) {
      throw HorizonError("recurrence check needs L >= 4n (L = "
                         + std::to_string(L) + ", n = " + std::to_string(n)
                         + ")");
    }
    RecurrenceReport report;
    report.factor_length = n;
    report.k_min         = k_min;
    report.worst_count   = UINT64_MAX;

    auto const&       text = index.source();
    std::size_t const half = L / 2;
    std::vector<bool> seen(index.state_count(), false);
    std::size_t       worst_end = 0;

    FactorIndex::StateId cur = FactorIndex::root;
    std::size_t          len = 0;
    for (std::size_t i = 0; i < half; ++i) {
      cur = index.next(cur, text[i]);
      ++len;
      if (len > n) {
        while (index.max_length(index.link(cur)) >= n) {
          cur = index.link(cur);
        }
        len = n;
      }
      if (len == n && !seen[cur]) {
        seen[cur] = true;
        ++report.factors_checked;
        if (index.endpos_size(cur) < report.worst_count) {
          report.worst_count = index.endpos_size(cur);
          worst_end          = i + 1;
        }
      }
    }
    report.worst_factor = slice(text, worst_end - n, n);
    report.ok           = report.worst_count >= k_min;
    return report;
  }

  RecurrenceReport recurrence_check(WordStream const& stream,
                                    Position          L,
                                    std::size_t       n,
                                    std::uint64_t     k_min) {
    if (n == 0 || L < 4 * static_cast<Position>(n)) {
      throw HorizonError("recurrence check needs L >= 4n");
    }
    return recurrence_check(build_index(stream.prefix(L)), n, k_min);
  }

  ////////////////////////////////////////////////////////////////////////
  // Bergman gap
  ////////////////////////////////////////////////////////////////////////

  GapClassification bergman_gap_check(ComplexityProfile const& profile) {
    GapClassification out;
    out.horizon = std::min(profile.n_trust, profile.n_max());
    for (std::size_t n = 1; n <= out.horizon; ++n) {
      if (profile.p[n] <= n) {
        out.kind    = Periodicity::ultimately_periodic;
        out.witness = n;
        return out;
      }
    }
    return out;
  }

  std::string to_string(Periodicity kind) {
    return kind == Periodicity::ultimately_periodic ? "ULTIMATELY_PERIODIC"
                                                    : "APERIODIC_AT_HORIZON";
  }

}  // namespace quadword
