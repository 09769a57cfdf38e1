#include "grl/equations.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

#include "grl/error.hpp"

namespace grl {

namespace {

void require_all_variables_used(const IntMatrix& chars) {
  for (std::size_t j = 0; j < chars.cols(); ++j) {
    bool used = false;
    for (std::size_t i = 0; i < chars.rows() && !used; ++i) used = chars(i, j) != 0;
    if (!used) {
      throw InvalidParameter("variable x" + std::to_string(j + 1) + " appears in no equation");
    }
  }
}

void require_independent(const IntMatrix& chars) {
  if (auto dep = first_dependent_row(chars)) {
    throw IndependenceViolation("equation " + std::to_string(*dep + 1) +
                                    " is linearly dependent on the preceding equations",
                                *dep);
  }
}

}  // namespace

AbelianSystem make_abelian_system(std::vector<std::vector<int>> epsilon) {
  if (epsilon.empty()) throw InvalidParameter("a system needs at least one equation");
  const std::size_t m = epsilon.front().size();
  if (m < 2) throw InvalidParameter("a system needs at least two variables");
  for (const auto& row : epsilon) {
    if (row.size() != m) throw InvalidParameter("all equations must have the same length");
    for (int e : row) {
      if (e < -1 || e > 1) throw InvalidParameter("coefficients must lie in {-1, 0, 1}");
    }
  }
  AbelianSystem sys{epsilon.size(), m, std::move(epsilon)};
  const auto chars = IntMatrix::from_rows(sys.epsilon, m);
  require_all_variables_used(chars);
  require_independent(chars);
  return sys;
}

OrderedSystem make_ordered_system(std::size_t m, std::vector<std::vector<Term>> words) {
  if (words.empty()) throw InvalidParameter("a system needs at least one equation");
  if (m < 2) throw InvalidParameter("a system needs at least two variables");
  for (const auto& w : words) {
    std::vector<bool> seen(m, false);
    for (const auto& t : w) {
      if (t.var >= m) throw InvalidParameter("variable index out of range");
      if (t.exponent != 1 && t.exponent != -1) throw InvalidParameter("exponents must be +1 or -1");
      if (seen[t.var]) {
        throw InvalidParameter("variable x" + std::to_string(t.var + 1) +
                               " appears twice in an ordered word");
      }
      seen[t.var] = true;
    }
  }
  OrderedSystem sys{words.size(), m, std::move(words)};
  const auto chars = characteristic_vectors(sys);
  require_all_variables_used(chars);
  require_independent(chars);
  return sys;
}

SingleEquation make_single_equation(std::size_t m, Element rhs) {
  if (m < 2) throw InvalidParameter("a single equation needs at least two variables");
  return SingleEquation{m, rhs};
}

// --- parser ---------------------------------------------------------------

namespace {

enum class Tok { kVar, kPlus, kMinus, kCaret, kInt, kEquals, kSemi, kGroupElement, kEnd };

struct Token {
  Tok kind;
  std::size_t value = 0;  // variable number, integer, or element index
  std::size_t line = 1;
  std::size_t column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t{Tok::kEnd, 0, line_, column_};
      if (pos_ >= text_.size()) {
        out.push_back(t);
        return out;
      }
      const char c = text_[pos_];
      if (c == 'x' || c == 'g') {
        advance();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          throw ParseError(std::string("expected a number after '") + c + "'", t.line, t.column);
        }
        t.kind = c == 'x' ? Tok::kVar : Tok::kGroupElement;
        t.value = number();
        if (t.kind == Tok::kVar && t.value == 0) {
          throw ParseError("variables are numbered from x1", t.line, t.column);
        }
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        t.kind = Tok::kInt;
        t.value = number();
      } else {
        switch (c) {
          case '+': t.kind = Tok::kPlus; break;
          case '-': t.kind = Tok::kMinus; break;
          case '^': t.kind = Tok::kCaret; break;
          case '=': t.kind = Tok::kEquals; break;
          case ';': t.kind = Tok::kSemi; break;
          default:
            throw ParseError(std::string("unexpected character '") + c + "'", t.line, t.column);
        }
        advance();
      }
      out.push_back(t);
    }
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }

  std::size_t number() {
    std::size_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + static_cast<std::size_t>(text_[pos_] - '0');
      if (v > 1'000'000) throw ParseError("number too large", line_, column_);
      advance();
    }
    return v;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

// One left-hand-side factor as written, before the equation kind is known.
struct RawTerm {
  Token var;
  std::optional<Token> sign;      // '+' or '-' written before the variable
  std::optional<int> exponent;    // from '^1' / '^-1'
  Token exponent_at{Tok::kEnd};
};

struct RawEquation {
  std::vector<RawTerm> terms;
  Token rhs{Tok::kEnd};
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  std::vector<RawEquation> run() {
    std::vector<RawEquation> eqs;
    while (peek().kind != Tok::kEnd) {
      if (peek().kind == Tok::kSemi) {
        next();
        continue;
      }
      eqs.push_back(equation());
      if (peek().kind == Tok::kSemi) {
        next();
      } else if (peek().kind != Tok::kEnd) {
        fail("expected ';' between equations", peek());
      }
    }
    if (eqs.empty()) fail("no equations", peek());
    return eqs;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_++]; }
  [[noreturn]] static void fail(const std::string& msg, const Token& at) {
    throw ParseError(msg, at.line, at.column);
  }

  RawEquation equation() {
    RawEquation eq;
    while (peek().kind != Tok::kEquals) {
      RawTerm term;
      if (peek().kind == Tok::kPlus || peek().kind == Tok::kMinus) term.sign = next();
      if (peek().kind != Tok::kVar) fail("expected a variable such as x1", peek());
      term.var = next();
      if (peek().kind == Tok::kCaret) {
        term.exponent_at = next();
        int sign = 1;
        if (peek().kind == Tok::kMinus) {
          next();
          sign = -1;
        }
        if (peek().kind != Tok::kInt || peek().value != 1) {
          fail("exponent must be 1 or -1", peek());
        }
        next();
        term.exponent = sign;
      }
      eq.terms.push_back(term);
      if (peek().kind == Tok::kEnd || peek().kind == Tok::kSemi) fail("expected '='", peek());
    }
    if (eq.terms.empty()) fail("empty left-hand side", peek());
    next();  // '='
    if (peek().kind != Tok::kInt && peek().kind != Tok::kGroupElement) {
      fail("right-hand side must be 0, 1 or g<index>", peek());
    }
    eq.rhs = next();
    if (eq.rhs.kind == Tok::kInt && eq.rhs.value > 1) {
      fail("right-hand side must be 0, 1 or g<index>", eq.rhs);
    }
    return eq;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

enum class Kind { kAbelian, kOrdered, kSingle };

Kind kind_of(const RawEquation& eq) {
  if (eq.rhs.kind == Tok::kGroupElement) return Kind::kSingle;
  return eq.rhs.value == 0 ? Kind::kAbelian : Kind::kOrdered;
}

[[noreturn]] void fail_at(const std::string& msg, const Token& at) {
  throw ParseError(msg, at.line, at.column);
}

std::size_t max_variable(const std::vector<RawEquation>& eqs) {
  std::size_t m = 0;
  for (const auto& eq : eqs)
    for (const auto& t : eq.terms) m = std::max(m, t.var.value);
  return m;
}

AbelianSystem build_abelian(const std::vector<RawEquation>& eqs) {
  const std::size_t m = max_variable(eqs);
  std::vector<std::vector<int>> rows;
  for (const auto& eq : eqs) {
    std::vector<int> row(m, 0);
    for (std::size_t i = 0; i < eq.terms.size(); ++i) {
      const auto& t = eq.terms[i];
      if (t.exponent) fail_at("exponents are not allowed in additive equations", t.exponent_at);
      if (i > 0 && !t.sign) fail_at("expected '+' or '-' between terms", t.var);
      const int coeff = t.sign && t.sign->kind == Tok::kMinus ? -1 : 1;
      auto& slot = row[t.var.value - 1];
      if (slot != 0) fail_at("variable repeated within an equation", t.var);
      slot = coeff;
    }
    rows.push_back(std::move(row));
  }
  return make_abelian_system(std::move(rows));
}

OrderedSystem build_ordered(const std::vector<RawEquation>& eqs) {
  const std::size_t m = max_variable(eqs);
  std::vector<std::vector<Term>> words;
  for (const auto& eq : eqs) {
    std::vector<Term> word;
    std::vector<bool> seen(m, false);
    for (const auto& t : eq.terms) {
      if (t.sign) fail_at("'+' and '-' are not allowed in multiplicative words", *t.sign);
      const std::size_t var = t.var.value - 1;
      if (seen[var]) fail_at("duplicate variable within an ordered word", t.var);
      seen[var] = true;
      word.push_back(Term{var, t.exponent.value_or(1)});
    }
    words.push_back(std::move(word));
  }
  return make_ordered_system(m, std::move(words));
}

SingleEquation build_single(const std::vector<RawEquation>& eqs) {
  if (eqs.size() != 1) fail_at("a g<index> right-hand side allows only one equation", eqs[1].rhs);
  const auto& eq = eqs.front();
  for (std::size_t i = 0; i < eq.terms.size(); ++i) {
    const auto& t = eq.terms[i];
    if (t.sign) fail_at("'+' and '-' are not allowed in multiplicative words", *t.sign);
    if (t.exponent && *t.exponent != 1) {
      fail_at("single equations have all exponents +1", t.exponent_at);
    }
    if (t.var.value != i + 1) fail_at("single equations must read x1 x2 ... xm in order", t.var);
  }
  return make_single_equation(eq.terms.size(), static_cast<Element>(eq.rhs.value));
}

}  // namespace

EquationSystem parse_system(std::string_view text) {
  auto eqs = Parser(Lexer(text).run()).run();
  const Kind kind = kind_of(eqs.front());
  for (const auto& eq : eqs) {
    if (kind_of(eq) != kind) fail_at("all equations of a system must have the same form", eq.rhs);
  }
  switch (kind) {
    case Kind::kAbelian: return build_abelian(eqs);
    case Kind::kOrdered: return build_ordered(eqs);
    case Kind::kSingle: return build_single(eqs);
  }
  return build_single(eqs);
}

std::string to_string(const EquationSystem& sys) {
  std::ostringstream out;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, AbelianSystem>) {
          for (std::size_t i = 0; i < s.k; ++i) {
            if (i > 0) out << "; ";
            bool first = true;
            for (std::size_t j = 0; j < s.m; ++j) {
              const int e = s.epsilon[i][j];
              if (e == 0) continue;
              if (first) {
                out << (e < 0 ? "-" : "");
              } else {
                out << (e < 0 ? " - " : " + ");
              }
              out << 'x' << j + 1;
              first = false;
            }
            out << " = 0";
          }
        } else if constexpr (std::is_same_v<T, OrderedSystem>) {
          for (std::size_t i = 0; i < s.k; ++i) {
            if (i > 0) out << "; ";
            for (std::size_t j = 0; j < s.words[i].size(); ++j) {
              const auto& t = s.words[i][j];
              out << (j > 0 ? " " : "") << 'x' << t.var + 1 << (t.exponent < 0 ? "^-1" : "");
            }
            out << " = 1";
          }
        } else {
          for (std::size_t j = 0; j < s.m; ++j) out << (j > 0 ? " " : "") << 'x' << j + 1;
          out << " = g" << s.rhs;
        }
      },
      sys);
  return out.str();
}

IntMatrix characteristic_vectors(const EquationSystem& sys) {
  return std::visit(
      [](const auto& s) -> IntMatrix {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, AbelianSystem>) {
          return IntMatrix::from_rows(s.epsilon, s.m);
        } else if constexpr (std::is_same_v<T, OrderedSystem>) {
          IntMatrix out(s.k, s.m);
          for (std::size_t i = 0; i < s.k; ++i)
            for (const auto& t : s.words[i]) out(i, t.var) += t.exponent;
          return out;
        } else {
          IntMatrix out(1, s.m);
          for (std::size_t j = 0; j < s.m; ++j) out(0, j) = 1;
          return out;
        }
      },
      sys);
}

std::size_t variable_count(const EquationSystem& sys) {
  return std::visit([](const auto& s) { return s.m; }, sys);
}

std::size_t equation_count(const EquationSystem& sys) {
  return std::visit(
      [](const auto& s) -> std::size_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, SingleEquation>) {
          return 1;
        } else {
          return s.k;
        }
      },
      sys);
}

std::vector<WordEquation> as_words(const EquationSystem& sys, const GroupTable& group) {
  std::vector<WordEquation> out;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, AbelianSystem>) {
          if (!group.is_abelian()) {
            throw InvalidParameter("an additive system needs an abelian group");
          }
          for (const auto& row : s.epsilon) {
            WordEquation eq{{}, group.identity()};
            for (std::size_t j = 0; j < s.m; ++j)
              if (row[j] != 0) eq.word.push_back(Term{j, row[j]});
            out.push_back(std::move(eq));
          }
        } else if constexpr (std::is_same_v<T, OrderedSystem>) {
          for (const auto& w : s.words) out.push_back(WordEquation{w, group.identity()});
        } else {
          if (s.rhs >= group.order()) throw InvalidParameter("right-hand side outside the group");
          WordEquation eq{{}, s.rhs};
          for (std::size_t j = 0; j < s.m; ++j) eq.word.push_back(Term{j, 1});
          out.push_back(std::move(eq));
        }
      },
      sys);
  return out;
}

AbelianSystem abelian_shadow(const OrderedSystem& sys) {
  return make_abelian_system(characteristic_vectors(sys).to_rows());
}

OrderedSystem two_products_system() {
  return make_ordered_system(5, {{{0, 1}, {1, 1}, {3, -1}, {2, -1}}, {{0, 1}, {1, 1}, {4, -1}}});
}

namespace {

std::size_t parse_var_name(const nlohmann::json& v) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.size() >= 2 && s[0] == 'x' &&
        std::all_of(s.begin() + 1, s.end(), [](char c) { return std::isdigit(c) != 0; })) {
      const auto n = std::stoul(s.substr(1));
      if (n >= 1) return n - 1;
    }
  } else if (v.is_number_integer() && v.get<long long>() >= 1) {
    return v.get<std::size_t>() - 1;
  }
  throw InvalidParameter("variables are written \"x1\", \"x2\", ...");
}

}  // namespace

EquationSystem system_from_json(const nlohmann::json& j) {
  if (j.is_string()) return parse_system(j.get<std::string>());
  if (!j.is_object()) throw InvalidParameter("system must be a string or an object");
  if (j.contains("abelian")) {
    return make_abelian_system(j.at("abelian").get<std::vector<std::vector<int>>>());
  }
  if (j.contains("ordered")) {
    std::vector<std::vector<Term>> words;
    std::size_t m = 0;
    for (const auto& w : j.at("ordered")) {
      std::vector<Term> word;
      for (const auto& pair : w) {
        if (!pair.is_array() || pair.size() != 2 || !pair[1].is_number_integer()) {
          throw InvalidParameter("ordered terms are [\"x<i>\", exponent] pairs");
        }
        const auto var = parse_var_name(pair[0]);
        m = std::max(m, var + 1);
        word.push_back(Term{var, pair[1].get<int>()});
      }
      words.push_back(std::move(word));
    }
    return make_ordered_system(j.value("m", m), std::move(words));
  }
  if (j.contains("single")) {
    const auto& s = j.at("single");
    return make_single_equation(s.at("m").get<std::size_t>(), s.value("g", Element{0}));
  }
  throw InvalidParameter("system object needs 'abelian', 'ordered' or 'single'");
}

nlohmann::json to_json(const EquationSystem& sys) {
  return std::visit(
      [](const auto& s) -> nlohmann::json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, AbelianSystem>) {
          return {{"abelian", s.epsilon}};
        } else if constexpr (std::is_same_v<T, OrderedSystem>) {
          auto words = nlohmann::json::array();
          for (const auto& w : s.words) {
            auto word = nlohmann::json::array();
            for (const auto& t : w) word.push_back({"x" + std::to_string(t.var + 1), t.exponent});
            words.push_back(std::move(word));
          }
          return {{"ordered", std::move(words)}};
        } else {
          return {{"single", {{"m", s.m}, {"g", s.rhs}}}};
        }
      },
      sys);
}

}  // namespace grl
