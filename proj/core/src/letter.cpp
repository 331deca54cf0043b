#include "halfsph/letter.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "halfsph/error.hpp"

namespace halfsph {

char family_char(Family f) {
  switch (f) {
    case Family::C: return 'c';
    case Family::Z: return 'z';
    case Family::U: return 'u';
    case Family::X: return 'x';
    case Family::Y: return 'y';
    case Family::P: return 'p';
    case Family::Q: return 'q';
  }
  return '?';
}

Family family_from_char(char c) {
  switch (c) {
    case 'c': return Family::C;
    case 'z': return Family::Z;
    case 'u': return Family::U;
    case 'x': return Family::X;
    case 'y': return Family::Y;
    case 'p': return Family::P;
    case 'q': return Family::Q;
    default: break;
  }
  throw InvalidArgument(std::string("unknown generator family '") + c + "'");
}

bool family_is_pair(Family f) { return f == Family::U || f == Family::P || f == Family::Q; }

namespace {

std::uint8_t checked_index(int v) {
  if (v < 1 || v > 255) throw InvalidArgument("generator index out of range: " + std::to_string(v));
  return static_cast<std::uint8_t>(v);
}

Letter make(Family f, int i, int j, bool star) {
  Letter l;
  l.family = f;
  l.i = checked_index(i);
  l.j = family_is_pair(f) ? checked_index(j) : 0;
  l.starred = star;
  return l;
}

}  // namespace

Letter Letter::z(int i, bool star) { return make(Family::Z, i, 0, star); }
Letter Letter::u(int i, int j, bool star) { return make(Family::U, i, j, star); }
Letter Letter::x(int i, bool star) { return make(Family::X, i, 0, star); }
Letter Letter::y(int i, bool star) { return make(Family::Y, i, 0, star); }
Letter Letter::p(int a, int b, bool star) { return make(Family::P, a, b, star); }
Letter Letter::q(int a, int b, bool star) { return make(Family::Q, a, b, star); }

Letter Letter::c(bool star) {
  Letter l;
  l.family = Family::C;
  l.starred = star;
  return l;
}

std::string Letter::str() const {
  std::string s(1, family_char(family));
  if (family != Family::C) s += std::to_string(i);
  if (family_is_pair(family)) s += "_" + std::to_string(j);
  if (starred) s += "*";
  return s;
}

Letter Letter::parse(const std::string& text) {
  std::string t = text;
  bool star = false;
  if (!t.empty() && t.back() == '*') {
    star = true;
    t.pop_back();
  }
  if (t.empty()) throw InvalidArgument("empty letter");
  Family f = family_from_char(t[0]);
  std::string rest = t.substr(1);
  if (f == Family::C) {
    if (!rest.empty()) throw InvalidArgument("circle generator takes no index: '" + text + "'");
    return Letter::c(star);
  }
  auto number = [&](const std::string& s) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
      throw InvalidArgument("malformed letter '" + text + "'");
    }
    return std::stoi(s);
  };
  if (family_is_pair(f)) {
    auto us = rest.find('_');
    if (us == std::string::npos) {
      if (rest.size() == 2) return make(f, number(rest.substr(0, 1)), number(rest.substr(1)), star);
      throw InvalidArgument("pair-indexed letter needs 'i_j': '" + text + "'");
    }
    return make(f, number(rest.substr(0, us)), number(rest.substr(us + 1)), star);
  }
  return make(f, number(rest), 0, star);
}

Word star(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->star());
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::string word_str(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) s += ' ';
    s += w[k].str();
  }
  return s;
}

Word parse_word(const std::string& text) {
  std::istringstream in(text);
  Word w;
  std::string tok;
  while (in >> tok) {
    if (tok == "1") continue;
    w.push_back(Letter::parse(tok));
  }
  return w;
}

Alphabet& Alphabet::declare(Family f, int count) {
  if (count < 1 && f != Family::C) throw InvalidArgument("family size must be positive");
  counts_[f] = f == Family::C ? 1 : count;
  return *this;
}

int Alphabet::count(Family f) const {
  auto it = counts_.find(f);
  return it == counts_.end() ? 0 : it->second;
}

bool Alphabet::contains(const Letter& l) const {
  auto it = counts_.find(l.family);
  if (it == counts_.end()) return false;
  if (l.family == Family::C) return true;
  if (l.i < 1 || l.i > it->second) return false;
  if (family_is_pair(l.family)) return l.j >= 1 && l.j <= it->second;
  return true;
}

std::vector<Letter> Alphabet::letters() const {
  std::vector<Letter> out;
  for (auto [f, n] : counts_) {
    if (f == Family::C) {
      out.push_back(Letter::c());
      continue;
    }
    for (int i = 1; i <= n; ++i) {
      if (family_is_pair(f)) {
        for (int j = 1; j <= n; ++j) out.push_back(make(f, i, j, false));
      } else {
        out.push_back(make(f, i, 0, false));
      }
    }
  }
  return out;
}

std::string Alphabet::str() const {
  std::string s;
  for (auto [f, n] : counts_) {
    if (!s.empty()) s += ", ";
    s += family_char(f);
    if (f != Family::C) s += " 1.." + std::to_string(n);
  }
  return s;
}

}  // namespace halfsph
