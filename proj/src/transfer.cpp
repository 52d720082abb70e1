#include <algorithm>
#include <cctype>
#include <cmath>
#include <queue>
#include <sstream>

#include "quadword/error.hpp"
#include "quadword/growth.hpp"

namespace quadword {

  namespace {
    bool is_factor(FiniteWord const& needle, FiniteWord const& hay) {
      return std::search(hay.begin(), hay.end(), needle.begin(), needle.end())
             != hay.end();
    }

    using Matrix = std::vector<std::vector<BigInt>>;

    Matrix multiply(Matrix const& a, Matrix const& b) {
      std::size_t const s = a.size();
      Matrix            c(s, std::vector<BigInt>(s));
      for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t k = 0; k < s; ++k) {
          if (a[i][k] == 0) {
            continue;
          }
          for (std::size_t j = 0; j < s; ++j) {
            if (b[k][j] != 0) {
              c[i][j] += a[i][k] * b[k][j];
            }
          }
        }
      }
      return c;
    }
  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // ForbiddenPresentation
  ////////////////////////////////////////////////////////////////////////

  ForbiddenPresentation::ForbiddenPresentation(Alphabet                alphabet,
                                               std::vector<FiniteWord> forbidden)
      : _alphabet(std::move(alphabet)) {
    for (auto const& w : forbidden) {
      if (w.empty()) {
        throw InvalidArgument("the empty word cannot be forbidden");
      }
      if (w.letter_bound() > _alphabet.size()) {
        throw InvalidArgument("forbidden word uses letters outside the "
                              "alphabet");
      }
    }
    std::sort(forbidden.begin(), forbidden.end(),
              [](FiniteWord const& x, FiniteWord const& y) {
                return x.length() != y.length() ? x.length() < y.length()
                                                : x < y;
              });
    forbidden.erase(std::unique(forbidden.begin(), forbidden.end()),
                    forbidden.end());
    // Shorter words come first, so a word survives only if no kept word is
    // a factor of it.
    for (auto& w : forbidden) {
      bool redundant = std::any_of(
          _forbidden.begin(), _forbidden.end(),
          [&w](FiniteWord const& kept) { return is_factor(kept, w); });
      if (!redundant) {
        _forbidden.push_back(std::move(w));
      }
    }
  }

  ForbiddenPresentation ForbiddenPresentation::parse(
      std::string const& alphabet,
      std::string const& forbidden_csv) {
    Alphabet                sigma(alphabet);
    std::vector<FiniteWord> words;
    std::stringstream       in(forbidden_csv);
    std::string             item;
    while (std::getline(in, item, ',')) {
      std::vector<Letter> letters;
      for (char c : item) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
          letters.push_back(sigma.letter(c));
        }
      }
      if (letters.empty()) {
        continue;
      }
      words.emplace_back(std::move(letters));
    }
    return ForbiddenPresentation(std::move(sigma), std::move(words));
  }

  ////////////////////////////////////////////////////////////////////////
  // TransferAutomaton
  ////////////////////////////////////////////////////////////////////////

  TransferAutomaton::TransferAutomaton(ForbiddenPresentation const& pres)
      : _sigma(pres.alphabet().size()) {
    // Trie.
    std::vector<std::uint32_t> go(_sigma, dead);
    std::vector<bool>          terminal{false};
    for (auto const& w : pres.forbidden()) {
      std::uint32_t s = 0;
      for (Letter x : w) {
        if (go[s * _sigma + x] == dead) {
          go[s * _sigma + x] = static_cast<std::uint32_t>(terminal.size());
          terminal.push_back(false);
          go.insert(go.end(), _sigma, dead);
        }
        s = go[s * _sigma + x];
      }
      terminal[s] = true;
    }
    std::size_t const nodes = terminal.size();

    // Complete the goto function along failure links, breadth first.
    std::vector<std::uint32_t> fail(nodes, 0);
    std::queue<std::uint32_t>  queue;
    for (std::size_t x = 0; x < _sigma; ++x) {
      auto& t = go[x];
      if (t == dead) {
        t = 0;
      } else {
        fail[t] = 0;
        queue.push(t);
      }
    }
    while (!queue.empty()) {
      std::uint32_t s = queue.front();
      queue.pop();
      terminal[s] = terminal[s] || terminal[fail[s]];
      for (std::size_t x = 0; x < _sigma; ++x) {
        auto& t = go[s * _sigma + x];
        if (t == dead) {
          t = go[fail[s] * _sigma + x];
        } else {
          fail[t] = go[fail[s] * _sigma + x];
          queue.push(t);
        }
      }
    }

    // Keep the states that have not matched anything.
    std::vector<std::uint32_t> renumber(nodes, dead);
    for (std::size_t s = 0; s < nodes; ++s) {
      if (!terminal[s]) {
        renumber[s] = static_cast<std::uint32_t>(_states++);
      }
    }
    _next.assign(_states * _sigma, dead);
    for (std::size_t s = 0; s < nodes; ++s) {
      if (terminal[s]) {
        continue;
      }
      for (std::size_t x = 0; x < _sigma; ++x) {
        _next[renumber[s] * _sigma + x] = renumber[go[s * _sigma + x]];
      }
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // Counting
  ////////////////////////////////////////////////////////////////////////

  BigInt transfer_count(ForbiddenPresentation const& pres, std::uint64_t n) {
    TransferAutomaton const aut(pres);
    std::size_t const       s = aut.state_count();
    if (s == 0) {
      return 0;
    }
    Matrix step(s, std::vector<BigInt>(s));
    for (std::uint32_t i = 0; i < s; ++i) {
      for (std::size_t x = 0; x < aut.sigma(); ++x) {
        auto j = aut.next(i, static_cast<Letter>(x));
        if (j != TransferAutomaton::dead) {
          step[i][j] += 1;
        }
      }
    }
    Matrix result(s, std::vector<BigInt>(s));
    for (std::size_t i = 0; i < s; ++i) {
      result[i][i] = 1;
    }
    for (std::uint64_t e = n; e > 0; e >>= 1) {
      if (e & 1) {
        result = multiply(result, step);
      }
      if (e > 1) {
        step = multiply(step, step);
      }
    }
    BigInt total = 0;
    for (auto const& entry : result[0]) {
      total += entry;
    }
    return total;
  }

  std::vector<BigInt> transfer_series(ForbiddenPresentation const& pres,
                                      std::size_t                  n_max) {
    TransferAutomaton const aut(pres);
    std::size_t const       s = aut.state_count();
    std::vector<BigInt>     counts;
    counts.reserve(n_max + 1);
    if (s == 0) {
      counts.assign(n_max + 1, 0);
      return counts;
    }
    std::vector<BigInt> v(s), w(s);
    v[0] = 1;
    counts.push_back(1);
    for (std::size_t n = 1; n <= n_max; ++n) {
      std::fill(w.begin(), w.end(), 0);
      for (std::uint32_t i = 0; i < s; ++i) {
        if (v[i] == 0) {
          continue;
        }
        for (std::size_t x = 0; x < aut.sigma(); ++x) {
          auto j = aut.next(i, static_cast<Letter>(x));
          if (j != TransferAutomaton::dead) {
            w[j] += v[i];
          }
        }
      }
      v.swap(w);
      BigInt total = 0;
      for (auto const& c : v) {
        total += c;
      }
      counts.push_back(std::move(total));
    }
    return counts;
  }

  ////////////////////////////////////////////////////////////////////////
  // Classification
  ////////////////////////////////////////////////////////////////////////

  std::string to_string(GrowthClass c) {
    switch (c) {
      case GrowthClass::finite:
        return "FINITE";
      case GrowthClass::polynomial:
        return "POLYNOMIAL";
      case GrowthClass::exponential:
        return "EXPONENTIAL";
      case GrowthClass::inconclusive:
        return "INCONCLUSIVE";
    }
    return "INCONCLUSIVE";
  }

  namespace {
    struct CycleStructure {
      bool        exponential = false;
      // Largest number of cyclic components met along one path from the
      // root.
      std::size_t max_chain = 0;
    };

    // Kosaraju over the live states reachable from the root.
    CycleStructure cycle_structure(TransferAutomaton const& aut) {
      std::size_t const s     = aut.state_count();
      std::size_t const sigma = aut.sigma();
      auto const        dead  = TransferAutomaton::dead;

      std::vector<std::vector<std::uint32_t>> reverse(s);
      for (std::uint32_t i = 0; i < s; ++i) {
        for (std::size_t x = 0; x < sigma; ++x) {
          auto j = aut.next(i, static_cast<Letter>(x));
          if (j != dead) {
            reverse[j].push_back(i);
          }
        }
      }

      // First pass: finishing order.
      std::vector<std::uint32_t> order;
      std::vector<bool>          visited(s, false);
      for (std::uint32_t root = 0; root < s; ++root) {
        if (visited[root]) {
          continue;
        }
        std::vector<std::pair<std::uint32_t, std::size_t>> stack{{root, 0}};
        visited[root] = true;
        while (!stack.empty()) {
          auto& [v, x] = stack.back();
          if (x < sigma) {
            auto j = aut.next(v, static_cast<Letter>(x++));
            if (j != dead && !visited[j]) {
              visited[j] = true;
              stack.emplace_back(j, 0);
            }
          } else {
            order.push_back(v);
            stack.pop_back();
          }
        }
      }

      // Second pass on the reverse graph: components in topological order.
      std::vector<std::uint32_t> component(s, dead);
      std::size_t                comps = 0;
      for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (component[*it] != dead) {
          continue;
        }
        std::vector<std::uint32_t> stack{*it};
        component[*it] = static_cast<std::uint32_t>(comps);
        while (!stack.empty()) {
          auto v = stack.back();
          stack.pop_back();
          for (auto u : reverse[v]) {
            if (component[u] == dead) {
              component[u] = static_cast<std::uint32_t>(comps);
              stack.push_back(u);
            }
          }
        }
        ++comps;
      }

      std::vector<std::size_t> vertices(comps, 0), inner_edges(comps, 0);
      for (std::uint32_t i = 0; i < s; ++i) {
        ++vertices[component[i]];
        for (std::size_t x = 0; x < sigma; ++x) {
          auto j = aut.next(i, static_cast<Letter>(x));
          if (j != dead && component[j] == component[i]) {
            ++inner_edges[component[i]];
          }
        }
      }

      CycleStructure out;
      std::vector<bool> cyclic(comps, false);
      for (std::size_t c = 0; c < comps; ++c) {
        cyclic[c] = inner_edges[c] >= 1;
        if (inner_edges[c] > vertices[c]) {
          out.exponential = true;
        }
      }

      // Components are numbered in topological order of the condensation,
      // so a forward sweep computes the longest chain of cyclic
      // components reachable from the root's component.
      std::vector<std::ptrdiff_t> chain(comps, -1);
      chain[component[0]] = cyclic[component[0]] ? 1 : 0;
      std::vector<std::vector<std::uint32_t>> members(comps);
      for (std::uint32_t i = 0; i < s; ++i) {
        members[component[i]].push_back(i);
      }
      for (std::size_t c = 0; c < comps; ++c) {
        if (chain[c] < 0) {
          continue;
        }
        for (auto v : members[c]) {
          for (std::size_t x = 0; x < sigma; ++x) {
            auto j = aut.next(v, static_cast<Letter>(x));
            if (j == dead || component[j] == c) {
              continue;
            }
            auto const d = component[j];
            chain[d] = std::max(chain[d],
                                chain[c] + (cyclic[d] ? 1 : 0));
          }
        }
        out.max_chain = std::max(out.max_chain,
                                 static_cast<std::size_t>(chain[c]));
      }
      return out;
    }
  }  // namespace

  GrowthClassification classify_growth(ForbiddenPresentation const& pres,
                                       std::size_t                  horizon) {
    TransferAutomaton const aut(pres);
    if (horizon < 2 * aut.state_count() || horizon < 12) {
      throw RangeError("classification horizon must be at least "
                       + std::to_string(std::max<std::size_t>(
                           12, 2 * aut.state_count())));
    }
    GrowthClassification out;
    out.horizon       = horizon;
    auto const counts = transfer_series(pres, horizon);

    if (counts.back() == 0) {
      out.cls = GrowthClass::finite;
      return out;
    }

    std::vector<long double> ratios;
    for (std::size_t n = horizon - 10; n <= horizon; ++n) {
      ratios.push_back(counts[n].convert_to<long double>()
                       / counts[n - 1].convert_to<long double>());
    }
    auto [lo, hi]     = std::minmax_element(ratios.begin(), ratios.end());
    out.last_ratio    = static_cast<double>(ratios.back());
    out.ratios_stable = (*hi - *lo) <= 1e-6L;

    auto const structure = cycle_structure(aut);
    if (out.ratios_stable && ratios.back() > 1.0L + 1e-6L) {
      out.cls = GrowthClass::exponential;
      return out;
    }
    if (structure.exponential) {
      out.cls = GrowthClass::inconclusive;
      return out;
    }
    if (structure.max_chain == 0) {
      // Acyclic automaton: counts vanish before the horizon, handled above.
      out.cls = GrowthClass::finite;
      return out;
    }
    out.cls    = GrowthClass::polynomial;
    out.degree = structure.max_chain - 1;

    double      sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t k  = 0;
    for (std::size_t n = horizon / 2; n <= horizon; ++n) {
      double x = std::log(static_cast<double>(n));
      double y = std::log(counts[n].convert_to<double>());
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++k;
    }
    double const kk   = static_cast<double>(k);
    out.fitted_degree = (kk * sxy - sx * sy) / (kk * sxx - sx * sx);
    return out;
  }

}  // namespace quadword
