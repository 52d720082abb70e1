#include "quadword/algebra.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "quadword/error.hpp"

namespace quadword {

  ////////////////////////////////////////////////////////////////////////
  // AlgebraElement
  ////////////////////////////////////////////////////////////////////////

  AlgebraElement AlgebraElement::one() {
    return basis(FiniteWord());
  }

  AlgebraElement AlgebraElement::basis(FiniteWord w, Rational coefficient) {
    AlgebraElement x;
    x.add_term(w, coefficient);
    return x;
  }

  Rational AlgebraElement::coefficient(FiniteWord const& w) const {
    auto it = _terms.find(w);
    return it == _terms.end() ? Rational(0) : it->second;
  }

  void AlgebraElement::add_term(FiniteWord const& w, Rational const& c) {
    if (c == 0) {
      return;
    }
    auto [it, inserted] = _terms.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) {
        _terms.erase(it);
      }
    }
  }

  AlgebraElement& AlgebraElement::operator+=(AlgebraElement const& other) {
    for (auto const& [w, c] : other._terms) {
      add_term(w, c);
    }
    return *this;
  }

  AlgebraElement& AlgebraElement::operator-=(AlgebraElement const& other) {
    for (auto const& [w, c] : other._terms) {
      add_term(w, -c);
    }
    return *this;
  }

  AlgebraElement& AlgebraElement::operator*=(Rational const& scalar) {
    if (scalar == 0) {
      _terms.clear();
      return *this;
    }
    for (auto& [w, c] : _terms) {
      c *= scalar;
    }
    return *this;
  }

  std::string AlgebraElement::to_string() const {
    if (_terms.empty()) {
      return "0";
    }
    std::ostringstream out;
    bool               first = true;
    for (auto const& [w, c] : _terms) {
      Rational magnitude = c < 0 ? Rational(-c) : c;
      if (first) {
        out << (c < 0 ? "-" : "");
      } else {
        out << (c < 0 ? " - " : " + ");
      }
      first = false;
      if (magnitude != 1) {
        out << magnitude << "*";
      }
      out << (w.empty() ? std::string("1") : w.to_string());
    }
    return out.str();
  }

  AlgebraElement multiply(AlgebraElement const& x,
                          AlgebraElement const& y,
                          FactorIndex const&    factors) {
    AlgebraElement out;
    for (auto const& [u, a] : x.terms()) {
      for (auto const& [v, b] : y.terms()) {
        if (u.length() + v.length() > factors.n_trust()) {
          throw HorizonError("product of length "
                             + std::to_string(u.length() + v.length())
                             + " exceeds the certified horizon "
                             + std::to_string(factors.n_trust()));
        }
        FiniteWord uv = u + v;
        if (factors.contains(uv)) {
          out.add_term(uv, a * b);
        }
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Periodic quotients
  ////////////////////////////////////////////////////////////////////////

  PeriodicQuotient build_periodic_quotient(FiniteWord const& y) {
    if (y.empty()) {
      throw InvalidArgument("a periodic quotient needs a nonempty period");
    }
    PeriodicQuotient q;
    q.period = primitive_root(y);
    q.d      = q.period.length();
    for (std::size_t r = 0; r < q.d; ++r) {
      q.rotations.push_back(rotate(q.period, r));
    }
    q.pi_degree = 2 * q.d;
    return q;
  }

  FactorIndex periodic_factor_index(FiniteWord const& period,
                                    std::size_t       max_length) {
    // Every factor of length m of period^omega starts within the first
    // |period| positions.
    std::size_t const d   = period.length();
    std::size_t const len = std::max<std::size_t>(max_length + d - 1, 1);
    std::vector<Letter> text(len);
    for (std::size_t i = 0; i < len; ++i) {
      text[i] = period[i % d];
    }
    return FactorIndex(FiniteWord(std::move(text)), max_length);
  }

  QuotientReport verify_quotient_identities(PeriodicQuotient const& q,
                                            std::size_t             L) {
    if (q.d == 0 || L < 2 * q.d) {
      throw RangeError("identity check needs L >= 2d");
    }
    QuotientReport report;
    report.check_length = L;
    auto const index    = periodic_factor_index(q.period, L);

    AlgebraElement z;
    for (auto const& y : q.rotations) {
      z.add_term(y, 1);
    }

    // (a) Z is central: compare Z w and w Z for every factor w with
    // |w| <= L - d.
    std::set<FiniteWord> basis{FiniteWord()};
    for (std::size_t m = 1; m + q.d <= L; ++m) {
      for (std::size_t start = 0; start < q.d; ++start) {
        std::vector<Letter> w(m);
        for (std::size_t i = 0; i < m; ++i) {
          w[i] = q.period[(start + i) % q.d];
        }
        basis.emplace(std::move(w));
      }
    }
    for (auto const& w : basis) {
      auto const bw = AlgebraElement::basis(w);
      ++report.words_checked;
      if (multiply(z, bw, index) != multiply(bw, z, index)) {
        report.central         = false;
        report.central_witness = w;
        break;
      }
    }

    // (b) and (c).
    for (std::size_t i = 0; i < q.rotations.size(); ++i) {
      auto const yi = AlgebraElement::basis(q.rotations[i]);
      for (std::size_t j = 0; j < q.rotations.size() && report.orthogonal;
           ++j) {
        if (i == j) {
          continue;
        }
        auto const yj = AlgebraElement::basis(q.rotations[j]);
        if (!multiply(yi, yj, index).is_zero()) {
          report.orthogonal         = false;
          report.orthogonal_witness = std::make_pair(i + 1, j + 1);
        }
      }
      if (report.idempotent) {
        auto const square = multiply(yi, yi, index);
        if (square != multiply(yi, z, index)
            || square != multiply(z, yi, index)) {
          report.idempotent         = false;
          report.idempotent_witness = i + 1;
        }
      }
    }
    return report;
  }

  ////////////////////////////////////////////////////////////////////////
  // Rotations and candidates
  ////////////////////////////////////////////////////////////////////////

  std::size_t least_rotation_index(FiniteWord const& w) {
    std::size_t const n = w.length();
    if (n == 0) {
      return 0;
    }
    // Booth's algorithm over the doubled word.
    std::vector<std::ptrdiff_t> fail(2 * n, -1);
    std::size_t                 k = 0;
    for (std::size_t j = 1; j < 2 * n; ++j) {
      Letter const   c = w[j % n];
      std::ptrdiff_t i = fail[j - k - 1];
      while (i != -1 && c != w[(k + static_cast<std::size_t>(i) + 1) % n]) {
        if (c < w[(k + static_cast<std::size_t>(i) + 1) % n]) {
          k = j - static_cast<std::size_t>(i) - 1;
        }
        i = fail[static_cast<std::size_t>(i)];
      }
      if (c != w[(k + static_cast<std::size_t>(i) + 1) % n]) {
        // i == -1 here
        if (c < w[k % n]) {
          k = j;
        }
        fail[j - k] = -1;
      } else {
        fail[j - k] = i + 1;
      }
    }
    return k % n;
  }

  FiniteWord least_rotation(FiniteWord const& w) {
    return rotate(w, least_rotation_index(w));
  }

  std::string to_string(CandidateStatus s) {
    return s == CandidateStatus::confirmed_at_k ? "CONFIRMED_AT_K"
                                                : "REJECTED";
  }

  namespace {
    // Largest k <= cap with v^k a factor, walking the automaton along
    // successive copies of v.
    std::uint64_t max_power(FactorIndex const& index,
                            FiniteWord const&  v,
                            std::uint64_t      cap) {
      auto          state = FactorIndex::root;
      std::uint64_t k     = 0;
      while (k < cap) {
        state = index.walk(v, state);
        if (state == FactorIndex::no_state) {
          break;
        }
        ++k;
      }
      return k;
    }
  }  // namespace

  PrimeCandidate assess_candidate(FactorIndex const& index,
                                  FiniteWord const&  v,
                                  std::uint64_t      K) {
    if (!is_primitive(v)) {
      throw InvalidArgument("candidate " + v.to_string()
                            + " is not primitive");
    }
    PrimeCandidate c;
    c.canonical_word    = least_rotation(v);
    c.d                 = v.length();
    c.pi_degree         = 2 * c.d;
    std::uint64_t const cap = index.source_length() / v.length();
    for (std::size_t r = 0; r < v.length(); ++r) {
      c.verified_power
          = std::max(c.verified_power, max_power(index, rotate(v, r), cap));
    }
    c.status = c.verified_power >= K ? CandidateStatus::confirmed_at_k
                                     : CandidateStatus::rejected;
    return c;
  }

  std::vector<PrimeCandidate>
  enumerate_cogk1_candidates(FactorIndex const& index,
                             std::uint64_t      K,
                             std::size_t        d_max) {
    if (K < 2) {
      throw InvalidArgument("power threshold K must be at least 2");
    }
    if (d_max * K > index.n_trust()) {
      throw HorizonError("d_max * K = " + std::to_string(d_max * K)
                         + " exceeds n_trust = "
                         + std::to_string(index.n_trust()));
    }
    std::set<FiniteWord> classes;
    // Depth-first walk over the distinct factors of length <= d_max.
    std::vector<Letter> path;
    std::vector<std::pair<FactorIndex::StateId, std::size_t>> stack{
        {FactorIndex::root, 0}};
    while (!stack.empty()) {
      auto& [state, x] = stack.back();
      if (x == 0 && !path.empty()) {
        FiniteWord v(path);
        if (index.walk(power(v, K - 1), state) != FactorIndex::no_state
            && is_primitive(v)) {
          classes.insert(least_rotation(v));
        }
      }
      if (path.size() == d_max || x == index.sigma()) {
        stack.pop_back();
        if (!path.empty()) {
          path.pop_back();
        }
        continue;
      }
      auto const next = index.next(state, static_cast<Letter>(x++));
      if (next != FactorIndex::no_state) {
        path.push_back(static_cast<Letter>(x - 1));
        stack.emplace_back(next, 0);
      }
    }

    std::vector<PrimeCandidate> out;
    for (auto const& v : classes) {
      out.push_back(assess_candidate(index, v, K));
    }
    std::sort(out.begin(), out.end(),
              [](PrimeCandidate const& a, PrimeCandidate const& b) {
                return a.d != b.d ? a.d < b.d
                                  : a.canonical_word < b.canonical_word;
              });
    return out;
  }

  std::vector<MatrixImageDegree>
  matrix_image_degrees(ConstructionTrace const& trace,
                       FactorIndex const&       u_index,
                       std::uint64_t            K) {
    std::vector<MatrixImageDegree> out;
    std::size_t                    envelope = 0;
    for (std::size_t j = 1; j <= trace.depth(); ++j) {
      auto const& w = trace.anchor(j);
      if (!u_index.contains(power(w, K))) {
        throw HorizonError("W_" + std::to_string(j) + "^" + std::to_string(K)
                           + " is not a factor of the indexed prefix");
      }
      std::size_t const d = minimal_period(w + w);
      envelope            = std::max(envelope, d);
      out.push_back({j, w.length(), d, 2 * d, envelope});
    }
    return out;
  }

  std::size_t envelope_increases(std::vector<MatrixImageDegree> const& degrees) {
    std::size_t count = 0;
    for (std::size_t i = 1; i < degrees.size(); ++i) {
      if (degrees[i].envelope > degrees[i - 1].envelope) {
        ++count;
      }
    }
    return count;
  }

}  // namespace quadword
