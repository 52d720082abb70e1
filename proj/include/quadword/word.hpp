#ifndef QUADWORD_WORD_HPP_
#define QUADWORD_WORD_HPP_

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace quadword {

  using Letter   = std::uint8_t;
  using Position = std::uint64_t;

  // Upper bound on the length of any materialized prefix. Defaults to 1e8
  // letters; the CLI overrides it from QUADWORD_MAX_PREFIX.
  Position max_prefix_length() noexcept;
  void     set_max_prefix_length(Position limit) noexcept;

  //! An ordered set of between 2 and 26 distinct symbols. A letter is the
  //! index of its symbol in this list.
  class Alphabet {
   public:
    static constexpr std::size_t min_size = 2;
    static constexpr std::size_t max_size = 26;

    // The binary alphabet {a, b}.
    Alphabet();
    explicit Alphabet(std::string_view symbols);

    // The first k letters of 'a'..'z' (k is raised to 2 if smaller).
    static Alphabet first(std::size_t k);

    std::size_t size() const noexcept {
      return _symbols.size();
    }
    char symbol(Letter x) const;
    Letter letter(char symbol) const;
    bool contains(char symbol) const noexcept;
    std::string const& symbols() const noexcept {
      return _symbols;
    }

    bool operator==(Alphabet const&) const = default;

   private:
    std::string _symbols;
  };

  //! A finite sequence of letters. The empty word is allowed.
  class FiniteWord {
   public:
    using value_type     = Letter;
    using const_iterator = std::vector<Letter>::const_iterator;

    FiniteWord() = default;
    explicit FiniteWord(std::vector<Letter> letters)
        : _letters(std::move(letters)) {}
    FiniteWord(std::initializer_list<Letter> letters) : _letters(letters) {}
    FiniteWord(std::span<Letter const> letters)
        : _letters(letters.begin(), letters.end()) {}

    // Parse a word over 'a'..'z' (letter index = symbol - 'a').
    static FiniteWord from_string(std::string_view text);

    std::size_t length() const noexcept {
      return _letters.size();
    }
    bool empty() const noexcept {
      return _letters.empty();
    }
    Letter operator[](std::size_t i) const noexcept {
      return _letters[i];
    }
    const_iterator begin() const noexcept {
      return _letters.begin();
    }
    const_iterator end() const noexcept {
      return _letters.end();
    }
    std::span<Letter const> view() const noexcept {
      return _letters;
    }
    std::vector<Letter> const& letters() const noexcept {
      return _letters;
    }

    // Largest letter index plus one, or 0 for the empty word.
    std::size_t letter_bound() const noexcept;

    // Render over 'a'..'z'.
    std::string to_string() const;
    std::string to_string(Alphabet const& alphabet) const;

    FiniteWord& operator+=(FiniteWord const& other);
    friend FiniteWord operator+(FiniteWord lhs, FiniteWord const& rhs) {
      lhs += rhs;
      return lhs;
    }

    bool is_prefix_of(FiniteWord const& other) const noexcept;
    bool is_suffix_of(FiniteWord const& other) const noexcept;

    auto operator<=>(FiniteWord const&) const = default;
    bool operator==(FiniteWord const&) const  = default;

   private:
    std::vector<Letter> _letters;
  };

  std::ostream& operator<<(std::ostream& os, FiniteWord const& w);

  // w concatenated k times; power(w, 0) is the empty word.
  FiniteWord power(FiniteWord const& w, std::uint64_t k);

  // Letters a..b of w, 1-based and inclusive on both ends.
  // Throws RangeError unless 1 <= a <= b <= length(w).
  FiniteWord subword(FiniteWord const& w, Position a, Position b);

  // 0-based half-open slice [start, start + len).
  FiniteWord slice(FiniteWord const& w, std::size_t start, std::size_t len);

  // Cyclic shift by r positions to the left.
  FiniteWord rotate(FiniteWord const& w, std::size_t r);

  //! A deterministic right-infinite word with random access.
  //!
  //! Implementations are immutable from the outside and safe to query from
  //! several threads; any memoization is synchronized internally.
  class WordStream {
   public:
    virtual ~WordStream() = default;

    virtual Letter letter_at(Position i) const = 0;

    // Parameters sufficient to rebuild the stream, e.g. "fibonacci".
    virtual std::string descriptor() const = 0;

    virtual Alphabet const& alphabet() const noexcept {
      return _alphabet;
    }

    // The first `length` letters. Throws ResourceLimitError above
    // max_prefix_length() and RangeError for length 0.
    virtual FiniteWord prefix(Position length) const;

   protected:
    WordStream() = default;
    explicit WordStream(Alphabet alphabet) : _alphabet(std::move(alphabet)) {}

    static void check_prefix_length(Position length);

   private:
    Alphabet _alphabet;
  };

  using StreamPtr = std::shared_ptr<WordStream const>;

  // head followed by period repeated forever; period must be nonempty.
  StreamPtr ultimately_periodic_stream(FiniteWord head,
                                       FiniteWord period,
                                       Alphabet   alphabet = Alphabet());
  // period^omega
  StreamPtr periodic_stream(FiniteWord period, Alphabet alphabet = Alphabet());
  // x x x ...
  StreamPtr constant_stream(Letter x, Alphabet alphabet = Alphabet());

  // Word text format: one line of 'a'..'z', newline-terminated.
  FiniteWord read_word(std::istream& in);
  FiniteWord read_word_file(std::string const& path);
  void       write_word(std::ostream& out, FiniteWord const& w);
  void       write_word_file(std::string const& path, FiniteWord const& w);

}  // namespace quadword

#endif  // QUADWORD_WORD_HPP_
