#include "hallforge/expr.hpp"

#include <cctype>

#include "hallforge/errors.hpp"

namespace hallforge {

namespace {

class Parser {
 public:
  Parser(const Backend& b, std::string_view text) : b_(b), s_(text) {}

  CFElement element() {
    CFElement out = term();
    while (true) {
      skip();
      if (eat('+'))
        out += term();
      else if (eat('-'))
        out += term() * Rational(-1);
      else
        break;
    }
    return out;
  }

  ConstructibleSet set() {
    skip();
    if (peek() == '(') {
      ++i_;
      std::vector<Stratum> strata{stratum()};
      while (eat('|')) strata.push_back(stratum());
      expect(')');
      return ConstructibleSet::normalize(std::move(strata));
    }
    std::vector<Stratum> strata{stratum()};
    // A bare union is accepted only where a whole operand is a set.
    while (allow_bare_union_ && eat('|')) strata.push_back(stratum());
    return ConstructibleSet::normalize(std::move(strata));
  }

  IndecFamily family() {
    skip();
    std::size_t at = i_;
    if (eat('{')) {
      std::vector<IndecLabel> labels;
      do labels.push_back(label_until(",}")); while (eat(','));
      expect('}');
      try {
        return IndecFamily::finite(labels);
      } catch (const Error& e) {
        throw ParseError(e.what(), at);
      }
    }
    if (peek() == 'T' && generic_ahead()) {
      ++i_;
      int d = integer();
      expect('@');
      expect('*');
      std::set<std::string> excluded;
      if (eat('\\')) {
        expect('{');
        do excluded.insert(identifier()); while (eat(','));
        expect('}');
      }
      if (b_.kind() != BackendKind::P1Torsion) throw ParseError("generic torsion family needs a p1-torsion backend", at);
      return IndecFamily::torsion(d, P1Set::cofinite(excluded));
    }
    std::string name = identifier();
    const FamilySpec* spec = b_.find_family(name);
    if (!spec) throw ParseError("unknown family '" + name + "'", at);
    return family_from_spec(b_, *spec);
  }

  void finish() {
    skip();
    if (i_ != s_.size()) throw ParseError("unexpected '" + std::string(1, s_[i_]) + "'", i_);
  }

  bool allow_bare_union_ = false;

 private:
  CFElement term() {
    skip();
    Rational c = 1;
    if (eat('-')) c = -1;
    skip();
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      std::size_t at = i_;
      while (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '/')) ++i_;
      c *= parse_rational_at(std::string(s_.substr(at, i_ - at)), at);
      expect('*');
    }
    return CFElement::indicator(set()) * c;
  }

  Stratum stratum() {
    skip();
    std::size_t at = i_;
    if (peek() == '[') {
      std::size_t close = s_.find(']', i_);
      if (close == std::string_view::npos) throw ParseError("unterminated iso class", at);
      i_ = close + 1;
      try {
        return Stratum::of_class(b_.parse_class(s_.substr(at, i_ - at)));
      } catch (const ParseError& e) {
        throw ParseError(e.what(), at);
      } catch (const Error& e) {
        throw ParseError(e.what(), at);
      }
    }
    if (eat('<')) {
      std::vector<std::pair<IndecFamily, int>> parts;
      do {
        skip();
        int n = 1;
        if (std::isdigit(static_cast<unsigned char>(peek()))) n = integer();
        parts.emplace_back(family(), n);
      } while (eat(','));
      expect('>');
      return Stratum(parts);
    }
    return Stratum({{family(), 1}});
  }

  // True when "T<digits>@" starts here, so names like "Tx" stay family names.
  bool generic_ahead() const {
    std::size_t j = i_ + 1;
    while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
    return j > i_ + 1 && j + 1 < s_.size() && s_[j] == '@' && s_[j + 1] == '*';
  }

  IndecLabel label_until(std::string_view stops) {
    skip();
    std::size_t at = i_;
    while (i_ < s_.size() && stops.find(s_[i_]) == std::string_view::npos) ++i_;
    std::string_view tok = s_.substr(at, i_ - at);
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.back()))) tok.remove_suffix(1);
    if (tok.empty()) throw ParseError("expected a label", at);
    try {
      IndecLabel l = b_.parse_label(tok);
      b_.validate(l);
      return l;
    } catch (const Error& e) {
      throw ParseError(e.what(), at);
    }
  }

  std::string identifier() {
    skip();
    std::size_t at = i_;
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_' || s_[i_] == '~')) ++i_;
    if (at == i_) {
      if (at == s_.size()) throw ParseError("unexpected end of input", at);
      throw ParseError("expected a name, found '" + std::string(1, s_[at]) + "'", at);
    }
    return std::string(s_.substr(at, i_ - at));
  }

  int integer() {
    skip();
    std::size_t at = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (at == i_ || i_ - at > 6) throw ParseError("expected a small integer", at);
    return std::stoi(std::string(s_.substr(at, i_ - at)));
  }

  static Rational parse_rational_at(const std::string& t, std::size_t at) {
    try {
      return parse_rational(t);
    } catch (const ParseError& e) {
      throw ParseError("invalid coefficient '" + t + "'", at + e.offset);
    }
  }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  char peek() const { return i_ < s_.size() ? s_[i_] : '\0'; }
  bool eat(char c) {
    skip();
    if (peek() != c) return false;
    ++i_;
    return true;
  }
  void expect(char c) {
    if (!eat(c))
      throw ParseError(std::string("expected '") + c + "'" +
                           (i_ < s_.size() ? ", found '" + std::string(1, s_[i_]) + "'" : " at end of input"),
                       i_);
  }

  const Backend& b_;
  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace

IndecFamily parse_family(const Backend& b, std::string_view text) {
  Parser p(b, text);
  IndecFamily f = p.family();
  p.finish();
  return f;
}

ConstructibleSet parse_set(const Backend& b, std::string_view text) {
  Parser p(b, text);
  p.allow_bare_union_ = true;
  ConstructibleSet s = p.set();
  p.finish();
  return s;
}

CFElement parse_element(const Backend& b, std::string_view text) {
  Parser p(b, text);
  CFElement e = p.element();
  p.finish();
  return e;
}

}  // namespace hallforge
