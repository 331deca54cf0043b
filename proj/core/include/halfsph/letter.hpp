#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace halfsph {

/// Generator families. The enum order is the first key of the letter order.
enum class Family : std::uint8_t {
  C = 0,  ///< auxiliary circle generator of the free complexification
  Z = 1,  ///< sphere coordinate z_i
  U = 2,  ///< group coordinate u_ij
  X = 3,  ///< real-part symbol x_i
  Y = 4,  ///< imaginary-part symbol y_i
  P = 5,  ///< projective symbol p_ab (a, b are flat coordinate indices)
  Q = 6,  ///< projective symbol q_ab
};

char family_char(Family f);
Family family_from_char(char c);
/// Families whose letters carry two indices.
bool family_is_pair(Family f);

struct Letter {
  Family family = Family::Z;
  std::uint8_t i = 0;
  std::uint8_t j = 0;
  bool starred = false;

  static Letter z(int i, bool star = false);
  static Letter u(int i, int j, bool star = false);
  static Letter c(bool star = false);
  static Letter x(int i, bool star = false);
  static Letter y(int i, bool star = false);
  static Letter p(int a, int b, bool star = false);
  static Letter q(int a, int b, bool star = false);

  Letter star() const {
    Letter l = *this;
    l.starred = !l.starred;
    return l;
  }
  Letter plain() const {
    Letter l = *this;
    l.starred = false;
    return l;
  }

  std::uint32_t key() const {
    return (std::uint32_t(family) << 17) | (std::uint32_t(i) << 9) | (std::uint32_t(j) << 1) |
           std::uint32_t(starred);
  }

  friend bool operator==(const Letter& a, const Letter& b) { return a.key() == b.key(); }
  friend std::strong_ordering operator<=>(const Letter& a, const Letter& b) {
    return a.key() <=> b.key();
  }

  /// `z1`, `z1*`, `u1_2`, `c`, `p1_2*`.
  std::string str() const;
  /// Parses one letter; accepts `u12` as a shorthand when both indices are single digits.
  static Letter parse(const std::string& text);
};

using Word = std::vector<Letter>;

/// Graded lexicographic order: shorter words first, then letterwise.
struct GradedLex {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

Word star(const Word& w);
Word concat(const Word& a, const Word& b);
std::string word_str(const Word& w);
/// Whitespace-separated letters; the empty string (or `1`) is the empty word.
Word parse_word(const std::string& text);

/// Declared generator families with their index ranges.
/// For `u` the count is the matrix size N; for `p`/`q` it is the flat coordinate count.
class Alphabet {
 public:
  Alphabet() = default;
  Alphabet& declare(Family f, int count);
  bool declares(Family f) const { return counts_.count(f) != 0; }
  int count(Family f) const;
  bool contains(const Letter& l) const;
  /// Every unstarred letter, in letter order.
  std::vector<Letter> letters() const;
  const std::map<Family, int>& families() const { return counts_; }
  friend bool operator==(const Alphabet&, const Alphabet&) = default;
  std::string str() const;

 private:
  std::map<Family, int> counts_;
};

}  // namespace halfsph
