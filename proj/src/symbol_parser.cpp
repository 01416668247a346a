#include <cctype>
#include <charconv>
#include <string>

#include "chargedef/error.hpp"
#include "chargedef/symbols.hpp"

namespace chargedef::symbols {

namespace {

// Recursive-descent parser over the plain-text symbol format.
//
//   matrix  := '[' row (',' row)* ']'
//   row     := '[' expr (',' expr)* ']'
//   expr    := ['+'|'-'] term (('+'|'-') term)*
//   term    := factor ('*' factor)*
//   factor  := number ['i'] | 'i' | '(' expr ')' | 'z'k ['^'a] | 'zbar'k ['^'b]
//            | '|z|^-'k
class Parser {
 public:
  Parser(std::string_view text, int dim) : text_(text), dim_(dim) {}

  BoundarySymbol parse() {
    skip_ws();
    BoundarySymbol out;
    if (peek() == '[') {
      std::vector<std::vector<Polynomial>> rows;
      expect('[');
      do {
        expect('[');
        std::vector<Polynomial> row;
        do {
          row.push_back(expr());
        } while (accept(','));
        expect(']');
        rows.push_back(std::move(row));
      } while (accept(','));
      expect(']');
      const int n = static_cast<int>(rows.size());
      for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != n) error("symbol matrix is not square");
      }
      out = BoundarySymbol(dim_, n);
      for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) out.set_entry(p, q, rows[p][q]);
      }
    } else {
      out = BoundarySymbol::scalar(dim_, expr());
    }
    skip_ws();
    if (pos_ != text_.size()) error("unexpected trailing input");
    return out;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorKind::ParseError,
         what + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) error(std::string("expected '") + c + "'");
  }
  bool accept_word(std::string_view w) {
    skip_ws();
    if (text_.substr(pos_, w.size()) == w) {
      pos_ += w.size();
      return true;
    }
    return false;
  }

  int integer() {
    skip_ws();
    int v = 0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr == first) error("expected an integer");
    pos_ += static_cast<std::size_t>(ptr - first);
    return v;
  }

  Monomial unit_monomial() const { return {MultiIndex(dim_), MultiIndex(dim_)}; }

  Polynomial constant(cd c) const {
    Polynomial p;
    add_term(p, unit_monomial(), c);
    return p;
  }

  int coordinate() {
    const int k = integer();
    if (k < 1 || k > dim_) error("coordinate index outside [1, n]");
    return k;
  }

  int exponent() {
    if (!accept('^')) return 1;
    const int a = integer();
    if (a < 0) error("negative exponent");
    return a;
  }

  // A factor is a polynomial; `abs_power` receives the k of a |z|^-k factor.
  Polynomial factor(int& abs_power) {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      expect(')');
      return p;
    }
    if (c == '|') {
      if (!accept_word("|z|")) error("expected |z|");
      expect('^');
      expect('-');
      abs_power += integer();
      return constant(1.0);
    }
    if (accept_word("zbar")) {
      const int k = coordinate();
      Monomial m = unit_monomial();
      m.zbar_exp[k - 1] = exponent();
      Polynomial p;
      add_term(p, m, 1.0);
      return p;
    }
    if (c == 'z') {
      ++pos_;
      const int k = coordinate();
      Monomial m = unit_monomial();
      m.z_exp[k - 1] = exponent();
      Polynomial p;
      add_term(p, m, 1.0);
      return p;
    }
    if (c == 'i') {
      ++pos_;
      return constant(cd(0.0, 1.0));
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double v = 0.0;
      const char* first = text_.data() + pos_;
      const char* last = text_.data() + text_.size();
      auto [ptr, ec] = std::from_chars(first, last, v);
      if (ec != std::errc() || ptr == first) error("malformed number");
      pos_ += static_cast<std::size_t>(ptr - first);
      if (pos_ < text_.size() && text_[pos_] == 'i') {
        ++pos_;
        return constant(cd(0.0, v));
      }
      return constant(v);
    }
    if (c == '\0') error("unexpected end of input");
    error(std::string("unexpected character '") + c + "'");
  }

  Polynomial term() {
    double sign = 1.0;
    while (true) {
      if (accept('-')) {
        sign = -sign;
      } else if (!accept('+')) {
        break;
      }
    }
    int abs_power = 0;
    Polynomial p = factor(abs_power);
    while (accept('*')) {
      Polynomial f = factor(abs_power);
      p = multiply(p, f);
    }
    if (abs_power != 0) {
      for (const auto& [m, coeff] : p) {
        if (m.degree() != abs_power) error("|z| power does not match the monomial degree");
      }
    }
    if (sign < 0) {
      for (auto& [m, coeff] : p) coeff = -coeff;
    }
    return p;
  }

  Polynomial expr() {
    Polynomial out = term();
    while (true) {
      const char c = peek();
      if (c != '+' && c != '-') break;
      for (const auto& [m, coeff] : term()) add_term(out, m, coeff);
    }
    return out;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int dim_;
};

}  // namespace

BoundarySymbol parse_symbol(std::string_view text, int dim) {
  if (dim < 1 || dim > kMaxDimension) fail(ErrorKind::DimensionMismatch, "bad symbol dimension");
  return Parser(text, dim).parse();
}

}  // namespace chargedef::symbols
