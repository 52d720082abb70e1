#include "quadword/sturmian.hpp"

#include <array>
#include <sstream>

#include "quadword/error.hpp"
#include "quadword/factor_index.hpp"

namespace quadword {

  namespace {
    using u128 = unsigned __int128;

    constexpr std::uint64_t denominator_cap = std::uint64_t{1} << 62;

    class MechanicalStream final : public WordStream {
     public:
      explicit MechanicalStream(SlopeSpec slope) : _slope(std::move(slope)) {}

      Letter letter_at(Position n) const override {
        if (n >= _slope.horizon()) {
          throw HorizonError("position " + std::to_string(n)
                             + " is beyond the agreement horizon "
                             + std::to_string(_slope.horizon())
                             + " of the slope");
        }
        u128 const p = _slope.numerator();
        u128 const q = _slope.denominator();
        u128 const lo = (u128(n) * p) / q;
        u128 const hi = (u128(n + 1) * p) / q;
        return static_cast<Letter>(hi - lo);
      }

      FiniteWord prefix(Position length) const override {
        check_prefix_length(length);
        if (length > _slope.horizon()) {
          throw HorizonError("prefix of length " + std::to_string(length)
                             + " exceeds the agreement horizon "
                             + std::to_string(_slope.horizon()));
        }
        return WordStream::prefix(length);
      }

      std::string descriptor() const override {
        std::ostringstream out;
        out << "slope:";
        auto const& a = _slope.partial_quotients();
        for (std::size_t i = 0; i < a.size(); ++i) {
          out << (i ? "," : "") << a[i];
        }
        return out.str();
      }

     private:
      SlopeSpec _slope;
    };

    // Fibonacci numbers 1, 2, 3, 5, ... below 2^64.
    std::array<std::uint64_t, 92> const& fibonacci_numbers() {
      static auto const table = [] {
        std::array<std::uint64_t, 92> f{};
        f[0] = 1;
        f[1] = 2;
        for (std::size_t i = 2; i < f.size(); ++i) {
          f[i] = f[i - 1] + f[i - 2];
        }
        return f;
      }();
      return table;
    }

    class FibonacciStream final : public WordStream {
     public:
      // Letter n is 'b' exactly when the Zeckendorf representation of n
      // uses the summand 1.
      Letter letter_at(Position n) const override {
        auto const& f    = fibonacci_numbers();
        std::size_t i    = f.size();
        std::uint64_t rest = n;
        std::size_t last = f.size();
        while (rest > 0) {
          while (f[--i] > rest) {
          }
          rest -= f[i];
          last = i;
        }
        return last == 0 ? 1 : 0;
      }

      // Expands the substitution rather than decoding each position.
      FiniteWord prefix(Position length) const override {
        check_prefix_length(length);
        std::vector<Letter> word{0};
        std::vector<Letter> next;
        while (word.size() < length) {
          next.clear();
          next.reserve(word.size() * 2);
          for (Letter x : word) {
            next.push_back(0);
            if (x == 0) {
              next.push_back(1);
            }
          }
          word.swap(next);
        }
        word.resize(length);
        return FiniteWord(std::move(word));
      }

      std::string descriptor() const override {
        return "fibonacci";
      }
    };
  }  // namespace

  SlopeSpec::SlopeSpec(std::vector<std::uint64_t> partial_quotients)
      : _quotients(std::move(partial_quotients)) {
    if (_quotients.size() < 2) {
      throw InvalidArgument(
          "a slope needs at least two partial quotients; a single quotient "
          "denotes a rational slope");
    }
    // p_{-1}/q_{-1} = 1/0, p_0/q_0 = 0/1.
    std::uint64_t p_prev = 1, q_prev = 0, p = 0, q = 1;
    for (auto a : _quotients) {
      if (a == 0) {
        throw InvalidArgument("partial quotients must be positive");
      }
      u128 const p_next = u128(a) * p + p_prev;
      u128 const q_next = u128(a) * q + q_prev;
      if (q_next + q >= denominator_cap) {
        throw InvalidArgument("continued fraction too deep: denominator "
                              "exceeds 62 bits");
      }
      p_prev = p;
      q_prev = q;
      p      = static_cast<std::uint64_t>(p_next);
      q      = static_cast<std::uint64_t>(q_next);
    }
    _p = p;
    _q = q;
    // The slope lies strictly between p/q and (p + p_prev)/(q + q_prev);
    // p/q is the lower end at even depth. Floors of m times either end
    // first differ at m = denominator of the upper end.
    std::uint64_t upper_q = (_quotients.size() % 2 == 0) ? q + q_prev : q;
    _horizon              = upper_q - 1;
  }

  SlopeSpec SlopeSpec::parse(std::string const& text) {
    std::vector<std::uint64_t> quotients;
    std::stringstream          in(text);
    std::string                item;
    while (std::getline(in, item, ',')) {
      try {
        std::size_t used = 0;
        auto        v    = std::stoull(item, &used);
        if (used != item.size()) {
          throw std::invalid_argument(item);
        }
        quotients.push_back(v);
      } catch (std::logic_error const&) {
        throw InvalidArgument("bad partial quotient '" + item + "'");
      }
    }
    return SlopeSpec(std::move(quotients));
  }

  StreamPtr mechanical_stream(SlopeSpec const& slope) {
    return std::make_shared<MechanicalStream>(slope);
  }

  StreamPtr fibonacci_stream() {
    static auto const instance = std::make_shared<FibonacciStream>();
    return instance;
  }

  SturmianReport verify_sturmian(WordStream const& stream,
                                 Position          L,
                                 std::size_t       n_max) {
    if (n_max == 0 || L < 3 * static_cast<Position>(n_max)) {
      throw HorizonError("verify_sturmian needs L >= 3 n_max (L = "
                         + std::to_string(L)
                         + ", n_max = " + std::to_string(n_max) + ")");
    }
    auto index = build_trusted_index(stream.prefix(L));
    SturmianReport report;
    report.n_max   = n_max;
    report.n_trust = index.n_trust();
    for (std::size_t n = 1; n <= n_max; ++n) {
      auto p = index.complexity(n);
      if (p != n + 1) {
        report.first_failure = n;
        report.p_at_failure  = p;
        break;
      }
    }
    report.ok = !report.first_failure && report.n_trust >= n_max;
    return report;
  }

}  // namespace quadword
