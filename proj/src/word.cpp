#include "quadword/word.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <istream>
#include <ostream>

#include "quadword/error.hpp"

namespace quadword {

  namespace {
    std::atomic<Position> g_max_prefix{100'000'000};

    class UltimatelyPeriodicStream final : public WordStream {
     public:
      UltimatelyPeriodicStream(FiniteWord head,
                               FiniteWord period,
                               Alphabet   alphabet)
          : WordStream(std::move(alphabet)),
            _head(std::move(head)),
            _period(std::move(period)) {
        if (_period.empty()) {
          throw InvalidArgument("periodic stream needs a nonempty period");
        }
        auto bound = std::max(_head.letter_bound(), _period.letter_bound());
        if (bound > this->alphabet().size()) {
          throw InvalidArgument("stream letters exceed the alphabet");
        }
      }

      Letter letter_at(Position i) const override {
        if (i < _head.length()) {
          return _head[i];
        }
        return _period[(i - _head.length()) % _period.length()];
      }

      std::string descriptor() const override {
        if (_head.empty()) {
          return "periodic:" + _period.to_string(alphabet());
        }
        return "ultimately-periodic:" + _head.to_string(alphabet()) + "("
               + _period.to_string(alphabet()) + ")";
      }

     private:
      FiniteWord _head;
      FiniteWord _period;
    };
  }  // namespace

  Position max_prefix_length() noexcept {
    return g_max_prefix.load(std::memory_order_relaxed);
  }

  void set_max_prefix_length(Position limit) noexcept {
    g_max_prefix.store(limit, std::memory_order_relaxed);
  }

  ////////////////////////////////////////////////////////////////////////
  // Alphabet
  ////////////////////////////////////////////////////////////////////////

  Alphabet::Alphabet() : _symbols("ab") {}

  Alphabet::Alphabet(std::string_view symbols) : _symbols(symbols) {
    if (_symbols.size() < min_size || _symbols.size() > max_size) {
      throw InvalidArgument("alphabet must have between 2 and 26 symbols");
    }
    std::string sorted = _symbols;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InvalidArgument("alphabet has a repeated symbol: " + _symbols);
    }
  }

  Alphabet Alphabet::first(std::size_t k) {
    k = std::clamp(k, min_size, max_size);
    std::string s;
    for (std::size_t i = 0; i < k; ++i) {
      s.push_back(static_cast<char>('a' + i));
    }
    return Alphabet(s);
  }

  char Alphabet::symbol(Letter x) const {
    if (x >= _symbols.size()) {
      throw RangeError("letter index " + std::to_string(x)
                       + " outside alphabet " + _symbols);
    }
    return _symbols[x];
  }

  Letter Alphabet::letter(char c) const {
    auto pos = _symbols.find(c);
    if (pos == std::string::npos) {
      throw InvalidArgument(std::string("symbol '") + c
                            + "' not in alphabet " + _symbols);
    }
    return static_cast<Letter>(pos);
  }

  bool Alphabet::contains(char c) const noexcept {
    return _symbols.find(c) != std::string::npos;
  }

  ////////////////////////////////////////////////////////////////////////
  // FiniteWord
  ////////////////////////////////////////////////////////////////////////

  FiniteWord FiniteWord::from_string(std::string_view text) {
    std::vector<Letter> letters;
    letters.reserve(text.size());
    for (char c : text) {
      if (c < 'a' || c > 'z') {
        throw InvalidArgument(std::string("invalid symbol '") + c
                              + "' (expected a-z)");
      }
      letters.push_back(static_cast<Letter>(c - 'a'));
    }
    return FiniteWord(std::move(letters));
  }

  std::size_t FiniteWord::letter_bound() const noexcept {
    if (_letters.empty()) {
      return 0;
    }
    return static_cast<std::size_t>(
               *std::max_element(_letters.begin(), _letters.end()))
           + 1;
  }

  std::string FiniteWord::to_string() const {
    std::string s;
    s.reserve(_letters.size());
    for (Letter x : _letters) {
      s.push_back(static_cast<char>('a' + x));
    }
    return s;
  }

  std::string FiniteWord::to_string(Alphabet const& alphabet) const {
    std::string s;
    s.reserve(_letters.size());
    for (Letter x : _letters) {
      s.push_back(alphabet.symbol(x));
    }
    return s;
  }

  FiniteWord& FiniteWord::operator+=(FiniteWord const& other) {
    _letters.insert(_letters.end(), other._letters.begin(),
                    other._letters.end());
    return *this;
  }

  bool FiniteWord::is_prefix_of(FiniteWord const& other) const noexcept {
    return length() <= other.length()
           && std::equal(begin(), end(), other.begin());
  }

  bool FiniteWord::is_suffix_of(FiniteWord const& other) const noexcept {
    return length() <= other.length()
           && std::equal(begin(), end(), other.end() - length());
  }

  std::ostream& operator<<(std::ostream& os, FiniteWord const& w) {
    return os << w.to_string();
  }

  FiniteWord power(FiniteWord const& w, std::uint64_t k) {
    if (!w.empty() && k > max_prefix_length() / w.length()) {
      throw ResourceLimitError("power exceeds the prefix cap");
    }
    std::vector<Letter> out;
    out.reserve(w.length() * k);
    for (std::uint64_t i = 0; i < k; ++i) {
      out.insert(out.end(), w.begin(), w.end());
    }
    return FiniteWord(std::move(out));
  }

  FiniteWord subword(FiniteWord const& w, Position a, Position b) {
    if (a < 1 || a > b || b > w.length()) {
      throw RangeError("subword(" + std::to_string(a) + ", "
                       + std::to_string(b) + ") out of range for length "
                       + std::to_string(w.length()));
    }
    return slice(w, a - 1, b - a + 1);
  }

  FiniteWord slice(FiniteWord const& w, std::size_t start, std::size_t len) {
    if (start > w.length() || len > w.length() - start) {
      throw RangeError("slice out of range");
    }
    return FiniteWord(w.view().subspan(start, len));
  }

  FiniteWord rotate(FiniteWord const& w, std::size_t r) {
    if (w.empty()) {
      return w;
    }
    std::vector<Letter> out(w.begin(), w.end());
    std::rotate(out.begin(), out.begin() + (r % w.length()), out.end());
    return FiniteWord(std::move(out));
  }

  ////////////////////////////////////////////////////////////////////////
  // Streams
  ////////////////////////////////////////////////////////////////////////

  void WordStream::check_prefix_length(Position length) {
    if (length == 0) {
      throw RangeError("prefix length must be at least 1");
    }
    if (length > max_prefix_length()) {
      throw ResourceLimitError("prefix length " + std::to_string(length)
                               + " exceeds the cap of "
                               + std::to_string(max_prefix_length()));
    }
  }

  FiniteWord WordStream::prefix(Position length) const {
    check_prefix_length(length);
    std::vector<Letter> out(length);
    for (Position i = 0; i < length; ++i) {
      out[i] = letter_at(i);
    }
    return FiniteWord(std::move(out));
  }

  StreamPtr ultimately_periodic_stream(FiniteWord head,
                                       FiniteWord period,
                                       Alphabet   alphabet) {
    return std::make_shared<UltimatelyPeriodicStream>(
        std::move(head), std::move(period), std::move(alphabet));
  }

  StreamPtr periodic_stream(FiniteWord period, Alphabet alphabet) {
    return ultimately_periodic_stream(FiniteWord(), std::move(period),
                                      std::move(alphabet));
  }

  StreamPtr constant_stream(Letter x, Alphabet alphabet) {
    return periodic_stream(FiniteWord{x}, std::move(alphabet));
  }

  ////////////////////////////////////////////////////////////////////////
  // Text format
  ////////////////////////////////////////////////////////////////////////

  FiniteWord read_word(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
      throw InvalidArgument("expected a word on the first line");
    }
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    return FiniteWord::from_string(line);
  }

  FiniteWord read_word_file(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw Error("cannot open " + path);
    }
    return read_word(in);
  }

  void write_word(std::ostream& out, FiniteWord const& w) {
    out << w.to_string() << '\n';
  }

  void write_word_file(std::string const& path, FiniteWord const& w) {
    std::ofstream out(path);
    if (!out) {
      throw Error("cannot write " + path);
    }
    write_word(out, w);
  }

}  // namespace quadword
