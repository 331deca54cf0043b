#include "halfsph/ncpoly.hpp"

#include <algorithm>
#include <cctype>

#include "halfsph/error.hpp"

namespace halfsph {

NCPolynomial::NCPolynomial(const Scalar& s) {
  if (!s.is_zero()) terms_.emplace(Word{}, s);
}

NCPolynomial::NCPolynomial(const Letter& l) { terms_.emplace(Word{l}, Scalar(1)); }

NCPolynomial::NCPolynomial(const Word& w, const Scalar& coeff) {
  if (!coeff.is_zero()) terms_.emplace(w, coeff);
}

std::size_t NCPolynomial::degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first.size(); }

Scalar NCPolynomial::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Scalar() : it->second;
}

const std::pair<const Word, Scalar>& NCPolynomial::leading() const {
  if (terms_.empty()) throw InvalidArgument("leading term of the zero polynomial");
  return *terms_.rbegin();
}

std::set<Letter> NCPolynomial::letters() const {
  std::set<Letter> out;
  for (const auto& [w, c] : terms_) out.insert(w.begin(), w.end());
  return out;
}

void NCPolynomial::add_term(const Word& w, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

NCPolynomial NCPolynomial::operator-() const {
  NCPolynomial out = *this;
  for (auto& [w, c] : out.terms_) c = -c;
  return out;
}

NCPolynomial& NCPolynomial::operator+=(const NCPolynomial& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

NCPolynomial& NCPolynomial::operator-=(const NCPolynomial& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

NCPolynomial& NCPolynomial::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, c] : terms_) c *= s;
  return *this;
}

NCPolynomial operator*(const NCPolynomial& a, const NCPolynomial& b) {
  NCPolynomial out;
  for (const auto& [wa, ca] : a.terms_) {
    for (const auto& [wb, cb] : b.terms_) out.add_term(concat(wa, wb), ca * cb);
  }
  return out;
}

NCPolynomial NCPolynomial::monic() const {
  if (is_zero()) return *this;
  Scalar lc = leading().second;
  if (lc.is_one()) return *this;
  NCPolynomial out = *this;
  Scalar inv = Scalar(1) / lc;
  for (auto& [w, c] : out.terms_) c *= inv;
  return out;
}

namespace {

// Coefficient prefix for one term; sign is handled by the caller.
std::string coeff_text(const Scalar& c, bool has_word) {
  if (c.is_one() && has_word) return "";
  std::string s = c.str();
  return has_word ? s + " " : s;
}

bool is_negative(const Scalar& c) {
  if (c.is_real()) return sgn(c.re()) < 0;
  if (sgn(c.re()) == 0) return sgn(c.im()) < 0;
  return false;  // mixed scalars are printed in parentheses with their own signs
}

}  // namespace

std::string NCPolynomial::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [w, c] = *it;
    bool neg = is_negative(c);
    Scalar mag = neg ? -c : c;
    std::string body = coeff_text(mag, !w.empty()) + (w.empty() ? "" : word_str(w));
    if (first) {
      out += (neg ? "-" : "") + body;
    } else {
      out += neg ? " - " : " + ";
      out += body;
    }
    first = false;
  }
  return out;
}

NCPolynomial multiply(const NCPolynomial& p, const NCPolynomial& q) { return p * q; }

NCPolynomial multiply(const NCPolynomial& p, const Alphabet& pa, const NCPolynomial& q, const Alphabet& qa) {
  if (!(pa == qa)) {
    throw InvalidArgument("multiply: mismatched generator declarations (" + pa.str() + " vs " + qa.str() + ")");
  }
  for (const auto* poly : {&p, &q}) {
    for (const auto& l : poly->letters()) {
      if (!pa.contains(l)) throw InvalidArgument("multiply: undeclared letter " + l.str());
    }
  }
  return p * q;
}

NCPolynomial star(const NCPolynomial& p) {
  NCPolynomial out;
  for (const auto& [w, c] : p.terms()) out.add_term(star(w), c.conj());
  return out;
}

NCPolynomial substitute(const NCPolynomial& p, const LetterMap& images) {
  std::map<Letter, NCPolynomial> cache;
  auto image = [&](const Letter& l) -> const NCPolynomial& {
    auto c = cache.find(l);
    if (c != cache.end()) return c->second;
    auto it = images.find(l);
    if (it != images.end()) return cache.emplace(l, it->second).first->second;
    auto base = images.find(l.star());
    if (base == images.end()) throw InvalidArgument("substitute: no image for letter " + l.str());
    return cache.emplace(l, star(base->second)).first->second;
  };
  NCPolynomial out;
  for (const auto& [w, c] : p.terms()) {
    NCPolynomial term(c);
    for (const auto& l : w) term = term * image(l);
    out += term;
  }
  return out;
}

namespace {

class PolyParser {
 public:
  PolyParser(const std::string& s, const Bindings& b) : s_(s), b_(b) {}

  NCPolynomial parse_sum(bool stop_at_eq) {
    NCPolynomial total;
    skip();
    bool first = true;
    while (pos_ < s_.size()) {
      if (stop_at_eq && s_[pos_] == '=') break;
      bool neg = false;
      if (s_[pos_] == '+' || s_[pos_] == '-') {
        neg = s_[pos_] == '-';
        ++pos_;
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      NCPolynomial t = parse_term();
      total += neg ? -t : t;
      first = false;
      skip();
    }
    if (first) fail("empty expression");
    return total;
  }

  std::size_t pos() const { return pos_; }
  void advance() { ++pos_; }
  bool at_end() { skip(); return pos_ >= s_.size(); }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw InvalidArgument("parse error at column " + std::to_string(pos_ + 1) + ": " + msg + " in '" + s_ + "'");
  }

  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  NCPolynomial parse_term() {
    Scalar coeff(1);
    Word w;
    bool any = false;
    while (true) {
      skip();
      if (pos_ >= s_.size()) break;
      char ch = s_[pos_];
      if (ch == '*' && any) {  // explicit product sign
        ++pos_;
        continue;
      }
      if (ch == '(') {
        auto close = s_.find(')', pos_);
        if (close == std::string::npos) fail("missing ')'");
        coeff *= Scalar::parse(s_.substr(pos_, close - pos_ + 1));
        pos_ = close + 1;
      } else if (std::isdigit(static_cast<unsigned char>(ch))) {
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/')) ++pos_;
        if (pos_ < s_.size() && s_[pos_] == 'i' && (pos_ + 1 >= s_.size() || !ident_char(s_[pos_ + 1]))) ++pos_;
        coeff *= Scalar::parse(s_.substr(start, pos_ - start));
      } else if (std::isalpha(static_cast<unsigned char>(ch))) {
        std::size_t start = pos_;
        while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
        std::string name = s_.substr(start, pos_ - start);
        bool starred = false;
        if (pos_ < s_.size() && s_[pos_] == '*') {
          // postfix star unless it is a product sign followed by another factor
          starred = true;
          ++pos_;
        }
        if (name == "i" && b_.count("i") == 0) {
          coeff *= starred ? -Scalar::i() : Scalar::i();
        } else if (auto it = b_.find(name); it != b_.end()) {
          w.push_back(starred ? it->second.star() : it->second);
        } else {
          try {
            Letter l = Letter::parse(name);
            w.push_back(starred ? l.star() : l);
          } catch (const InvalidArgument&) {
            pos_ = start;
            fail("unknown symbol '" + name + "'");
          }
        }
      } else {
        break;
      }
      any = true;
    }
    if (!any) fail("expected a term");
    return NCPolynomial(w, coeff);
  }

  const std::string& s_;
  const Bindings& b_;
  std::size_t pos_ = 0;
};

}  // namespace

NCPolynomial parse_polynomial(const std::string& text, const Bindings& bindings) {
  PolyParser p(text, bindings);
  NCPolynomial out = p.parse_sum(false);
  return out;
}

NCPolynomial parse_relation(const std::string& text, const Bindings& bindings) {
  auto eq = text.find('=');
  if (eq == std::string::npos) return parse_polynomial(text, bindings);
  if (text.find('=', eq + 1) != std::string::npos) throw InvalidArgument("relation with more than one '=': '" + text + "'");
  return parse_polynomial(text.substr(0, eq), bindings) - parse_polynomial(text.substr(eq + 1), bindings);
}

TensorPolynomial TensorPolynomial::tensor(const NCPolynomial& a, const NCPolynomial& x) {
  TensorPolynomial out;
  for (const auto& [wa, ca] : a.terms()) {
    for (const auto& [wx, cx] : x.terms()) out.add_term(wa, wx, ca * cx);
  }
  return out;
}

void TensorPolynomial::add_term(const Word& left, const Word& right, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(Key{left, right}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

TensorPolynomial& TensorPolynomial::operator+=(const TensorPolynomial& o) {
  for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
  return *this;
}

TensorPolynomial& TensorPolynomial::operator-=(const TensorPolynomial& o) {
  for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, -c);
  return *this;
}

TensorPolynomial operator*(const TensorPolynomial& a, const TensorPolynomial& b) {
  TensorPolynomial out;
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) {
      out.add_term(concat(ka.first, kb.first), concat(ka.second, kb.second), ca * cb);
    }
  }
  return out;
}

TensorPolynomial operator*(const Scalar& s, const TensorPolynomial& a) {
  TensorPolynomial out;
  for (const auto& [k, c] : a.terms_) out.add_term(k.first, k.second, s * c);
  return out;
}

std::map<Word, NCPolynomial, GradedLex> TensorPolynomial::by_right() const {
  std::map<Word, NCPolynomial, GradedLex> out;
  for (const auto& [k, c] : terms_) out[k.second].add_term(k.first, c);
  for (auto it = out.begin(); it != out.end();) {
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  }
  return out;
}

TensorPolynomial TensorPolynomial::map_right(const std::function<NCPolynomial(const Word&)>& f) const {
  TensorPolynomial out;
  std::map<Word, NCPolynomial, GradedLex> memo;
  for (const auto& [k, c] : terms_) {
    auto it = memo.find(k.second);
    if (it == memo.end()) it = memo.emplace(k.second, f(k.second)).first;
    for (const auto& [w, d] : it->second.terms()) out.add_term(k.first, w, c * d);
  }
  return out;
}

std::string TensorPolynomial::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [k, c] = *it;
    if (!first) out += " + ";
    out += (c.is_one() ? "" : c.str() + " ") + word_str(k.first) + " (x) " + word_str(k.second);
    first = false;
  }
  return out;
}

TensorPolynomial star(const TensorPolynomial& t) {
  TensorPolynomial out;
  for (const auto& [k, c] : t.terms()) out.add_term(star(k.first), star(k.second), c.conj());
  return out;
}

}  // namespace halfsph
