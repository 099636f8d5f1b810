#ifndef FORMALFLOWS_PARSE_HPP
#define FORMALFLOWS_PARSE_HPP

#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "formalflows/map.hpp"

namespace formalflows {

/// A parsed map file: ring/dim/cap header plus one named map.
struct ParsedMapFile {
  Ring ring;
  int dim = 0;
  int cap = 0;
  std::string name;
  FormalMap map;
};

namespace detail {

/// Recursive-descent parser for polynomial bodies over x1..xd:
///   expr   := ['+'|'-'] term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := atom ('^' digits)?
///   atom   := literal | 'x' digits | '(' expr ')'
class PolyParser {
 public:
  PolyParser(std::string_view text, const Ring& ring, int dim, int cap,
             int line)
      : text_(text), ring_(ring), dim_(dim), cap_(cap), line_(line) {}

  Series parse() {
    Series r = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw parse_error(msg, line_, static_cast<int>(pos_) + 1);
  }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t'))
      ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  Series expr() {
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    Series acc = term();
    if (neg) acc = -acc;
    for (;;) {
      if (eat('+'))
        acc = acc + term();
      else if (eat('-'))
        acc = acc - term();
      else
        return acc;
    }
  }

  Series term() {
    Series acc = factor();
    while (eat('*')) acc = acc * factor();
    return acc;
  }

  Series factor() {
    Series base = atom();
    if (eat('^')) {
      int e = integer("exponent");
      if (e < 0) fail("negative exponent");
      Series r = Series::constant(ring_, dim_, cap_, Value::one(ring_));
      for (int i = 0; i < e; ++i) r = r * base;
      return r;
    }
    return base;
  }

  Series atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Series inner = expr();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    if (c == 'x') {
      ++pos_;
      int idx = integer("variable index");
      if (idx < 1 || idx > dim_)
        fail("variable x" + std::to_string(idx) + " out of range for dim " +
             std::to_string(dim_));
      return Series::variable(ring_, dim_, cap_, idx - 1);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+') {
      return Series::constant(ring_, dim_, cap_, literal());
    }
    fail("expected a literal, variable or '('");
  }

  int integer(const std::string& what) {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (pos_ == start) fail("expected " + what);
    return std::stoi(std::string(text_.substr(start, pos_ - start)));
  }

  Value literal() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+'))
      ++pos_;
    std::size_t digits = pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (pos_ == digits) fail("expected a ring literal");
    if (pos_ < text_.size() && text_[pos_] == '/' &&
        ring_.kind == RingKind::rationals) {
      ++pos_;
      std::size_t den = pos_;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
      if (pos_ == den) fail("expected denominator digits");
    }
    try {
      return Value::parse(ring_, text_.substr(start, pos_ - start));
    } catch (const error& e) {
      fail(e.what());
    }
  }

  std::string_view text_;
  Ring ring_;
  int dim_;
  int cap_;
  int line_;
  std::size_t pos_ = 0;
};

inline std::vector<std::string> split_tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

}  // namespace detail

/// Parses a polynomial body into a truncated series.
inline Series parse_polynomial(std::string_view text, const Ring& ring,
                               int dim, int cap, int line = 1) {
  return detail::PolyParser(text, ring, dim, cap, line).parse();
}

/// Parses the map file grammar:
///   ring Q | Z | Fp <prime>
///   dim <d>
///   cap <N>
///   map <name>
///     <i> = <polynomial>
/// Components default to 0 when absent; constant terms are rejected.
inline ParsedMapFile parse_map_file(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  std::optional<Ring> ring;
  std::optional<int> dim, cap;
  std::string name;
  std::vector<std::optional<Series>> comps;
  bool in_map = false;

  while (std::getline(in, line)) {
    ++lineno;
    auto toks = detail::split_tokens(line);
    if (toks.empty() || toks[0][0] == '#') continue;
    const std::string& key = toks[0];
    if (!in_map) {
      if (key == "ring") {
        if (toks.size() < 2) throw parse_error("ring kind missing", lineno, 1);
        try {
          if (toks[1] == "Z" && toks.size() == 2)
            ring = Ring::Z();
          else if (toks[1] == "Q" && toks.size() == 2)
            ring = Ring::Q();
          else if ((toks[1] == "Fp" || toks[1] == "F") && toks.size() == 3)
            ring = Ring::Fp(std::stoll(toks[2]));
          else
            throw parse_error("bad ring spec", lineno, 1);
        } catch (const ring_error& e) {
          throw parse_error(e.what(), lineno, 1);
        }
      } else if (key == "dim" && toks.size() == 2) {
        dim = std::stoi(toks[1]);
        if (*dim < 1) throw parse_error("dim must be >= 1", lineno, 1);
      } else if (key == "cap" && toks.size() == 2) {
        cap = std::stoi(toks[1]);
        if (*cap < 1) throw parse_error("cap must be >= 1", lineno, 1);
      } else if (key == "map" && toks.size() == 2) {
        if (!ring || !dim || !cap)
          throw parse_error("map before ring/dim/cap header", lineno, 1);
        name = toks[1];
        comps.assign(*dim, std::nullopt);
        in_map = true;
      } else {
        throw parse_error("unrecognized header line '" + key + "'", lineno, 1);
      }
    } else {
      // component line: <i> = <polynomial>
      std::size_t eq = line.find('=');
      if (eq == std::string::npos)
        throw parse_error("expected '<i> = <polynomial>'", lineno, 1);
      int idx;
      try {
        idx = std::stoi(toks[0]);
      } catch (const std::exception&) {
        throw parse_error("bad component index '" + toks[0] + "'", lineno, 1);
      }
      if (idx < 1 || idx > *dim)
        throw parse_error("component index out of range", lineno, 1);
      if (comps[idx - 1])
        throw parse_error("duplicate component " + std::to_string(idx), lineno,
                          1);
      Series s =
          parse_polynomial(line.substr(eq + 1), *ring, *dim, *cap, lineno);
      if (!s.constant_term().is_zero())
        throw parse_error("component has a constant term", lineno, 1);
      comps[idx - 1] = std::move(s);
    }
  }
  if (!in_map) throw parse_error("no map block found", lineno, 1);
  std::vector<Series> built;
  built.reserve(*dim);
  for (auto& c : comps)
    built.push_back(c ? std::move(*c) : Series::zero(*ring, *dim, *cap));
  return ParsedMapFile{*ring, *dim, *cap, name, FormalMap(std::move(built))};
}

/// Renders a map back into the file grammar; parse(render(m)) == m.
inline std::string render_map_file(const FormalMap& g,
                                   const std::string& name) {
  std::string out;
  out += "ring " + g.ring().name() + "\n";
  out += "dim " + std::to_string(g.dim()) + "\n";
  out += "cap " + std::to_string(g.cap()) + "\n";
  out += "map " + name + "\n";
  for (int i = 0; i < g.dim(); ++i) {
    const Series& s = g.component(i);
    if (s.is_zero()) continue;
    out += "  " + std::to_string(i + 1) + " = " + s.str() + "\n";
  }
  return out;
}

}  // namespace formalflows

#endif
