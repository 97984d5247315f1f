#include "cpi/parser.hpp"

#include <cctype>
#include <map>
#include <vector>

#include "cpi/errors.hpp"
#include "cpi/subst.hpp"
#include "cpi/validate.hpp"

namespace cpi {

namespace {

enum class Tok {
  Ident, Zero, Bang, Query, Lt, Gt, LParen, RParen, LBracket, RBracket,
  Eq, Comma, Dot, Bar, New, In, End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t col;
};

class Lexer {
public:
  Lexer(std::string_view src, ParseOptions options) : src_(src), options_(options) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      const std::size_t line = line_, col = col_;
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", line, col});
        return out;
      }
      const char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '#') {
        if (c == '#' && !options_.allow_reserved) {
          throw SyntaxError(line, col, "identifier ('#' names are reserved)");
        }
        std::string id = ident();
        Tok kind = id == "new" ? Tok::New : id == "in" ? Tok::In : Tok::Ident;
        out.push_back({kind, std::move(id), line, col});
        continue;
      }
      Tok kind;
      switch (c) {
        case '0': kind = Tok::Zero; break;
        case '!': kind = Tok::Bang; break;
        case '?': kind = Tok::Query; break;
        case '<': kind = Tok::Lt; break;
        case '>': kind = Tok::Gt; break;
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        case '[': kind = Tok::LBracket; break;
        case ']': kind = Tok::RBracket; break;
        case '=': kind = Tok::Eq; break;
        case ',': kind = Tok::Comma; break;
        case '.': kind = Tok::Dot; break;
        case '|': kind = Tok::Bar; break;
        default: throw SyntaxError(line, col, "a process");
      }
      advance();
      out.push_back({kind, std::string(1, c), line, col});
    }
  }

private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '-') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else {
        return;
      }
    }
  }

  std::string ident() {
    const std::size_t start = pos_;
    advance();
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') break;
      advance();
    }
    return std::string(src_.substr(start, pos_ - start));
  }

  std::string_view src_;
  ParseOptions options_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Process run() {
    Process p = parse_par();
    expect(Tok::End, "end of input");
    return p;
  }

private:
  const Token& peek() const { return toks_[pos_]; }

  const Token& expect(Tok kind, const char* what) {
    const Token& t = peek();
    if (t.kind != kind) throw SyntaxError(t.line, t.col, what);
    ++pos_;
    return t;
  }

  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    ++pos_;
    return true;
  }

  Process parse_par() {
    Process left = parse_unary();
    while (accept(Tok::Bar)) left = par(left, parse_unary());
    return left;
  }

  Process parse_unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Zero:
        ++pos_;
        return nil();
      case Tok::Bang:
        ++pos_;
        return repl(parse_par());
      case Tok::LParen: {
        ++pos_;
        Process p = parse_par();
        expect(Tok::RParen, "')'");
        return p;
      }
      case Tok::New: {
        ++pos_;
        std::vector<Name> chans;
        do {
          chans.push_back(Name::channel(expect(Tok::Ident, "identifier").text));
        } while (accept(Tok::Comma));
        expect(Tok::In, "'in'");
        scopes_.emplace_back(chans);
        Process body = parse_par();
        scopes_.pop_back();
        return restrict(std::move(chans), std::move(body));
      }
      case Tok::Ident:
      case Tok::LBracket: {
        Prefix pi = parse_prefix();
        expect(Tok::Dot, "'.'");
        if (pi.is_receive()) scopes_.emplace_back(pi.names);
        Process cont = parse_unary();
        if (pi.is_receive()) scopes_.pop_back();
        return prefixed(std::move(pi), std::move(cont));
      }
      default:
        throw SyntaxError(t.line, t.col, "a process");
    }
  }

  Name resolve(const std::string& id) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      for (const auto& n : *it) {
        if (n.ident == id) return n;
      }
    }
    return Name::channel(id);
  }

  Prefix parse_prefix() {
    std::vector<Guard> guards;
    while (accept(Tok::LBracket)) {
      Name lhs = resolve(expect(Tok::Ident, "identifier").text);
      expect(Tok::Eq, "'='");
      Name rhs = resolve(expect(Tok::Ident, "identifier").text);
      expect(Tok::RBracket, "']'");
      guards.push_back({std::move(lhs), std::move(rhs)});
    }
    Name subject = resolve(expect(Tok::Ident, "identifier").text);
    const Token& op = peek();
    if (accept(Tok::Bang)) {
      expect(Tok::Lt, "'<'");
      std::vector<Name> objs;
      do {
        objs.push_back(resolve(expect(Tok::Ident, "identifier").text));
      } while (accept(Tok::Comma));
      expect(Tok::Gt, "'>'");
      Prefix pi = Prefix::send(std::move(subject), std::move(objs));
      pi.guards = std::move(guards);
      return pi;
    }
    if (accept(Tok::Query)) {
      expect(Tok::LParen, "'('");
      std::vector<Name> binders;
      do {
        const Token& b = expect(Tok::Ident, "identifier");
        for (const auto& prev : binders) {
          if (prev.ident == b.text) throw SyntaxError(b.line, b.col, "distinct binder names");
        }
        binders.push_back(Name::variable(b.text));
      } while (accept(Tok::Comma));
      expect(Tok::RParen, "')'");
      Prefix pi = Prefix::receive(std::move(subject), std::move(binders));
      pi.guards = std::move(guards);
      return pi;
    }
    throw SyntaxError(op.line, op.col, "'!' or '?'");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::vector<Name>> scopes_;
};

std::string join(const std::vector<Name>& names, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += sep;
    out += names[i].ident;
  }
  return out;
}

// Whether the rendering of p ends in a "!" or "new ... in" that would
// swallow a following "| Q".
bool opens_right(const Process& p) {
  if (p.is_repl() || p.is_restrict()) return true;
  if (p.is_prefixed()) {
    const Process& cont = p.as_prefixed().cont;
    return !cont.is_par() && opens_right(cont);
  }
  if (p.is_par()) return !p.as_par().right.is_par() && opens_right(p.as_par().right);
  return false;
}

void render_into(const Process& p, std::string& out);

void render_operand(const Process& p, bool parens, std::string& out) {
  if (parens) out += '(';
  render_into(p, out);
  if (parens) out += ')';
}

void render_into(const Process& p, std::string& out) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Nil>) {
          out += '0';
        } else if constexpr (std::is_same_v<T, Prefixed>) {
          out += render(x.prefix);
          out += '.';
          render_operand(x.cont, x.cont.is_par(), out);
        } else if constexpr (std::is_same_v<T, Par>) {
          render_operand(x.left, opens_right(x.left), out);
          out += " | ";
          render_operand(x.right, x.right.is_par(), out);
        } else if constexpr (std::is_same_v<T, Restrict>) {
          out += "new ";
          out += join(x.channels, ", ");
          out += " in ";
          render_into(x.body, out);
        } else {
          out += '!';
          render_into(x.body, out);
        }
      },
      p.node().v);
}

} // namespace

Process parse_raw(std::string_view text, ParseOptions options) {
  Lexer lexer(text, options);
  Parser parser(lexer.run());
  return parser.run();
}

Process parse(std::string_view text, ParseMode mode, ParseOptions options) {
  Process p = parse_raw(text, options);
  if (auto sorts = check_sorts(p); !sorts.empty()) throw SortError(sorts.front().message);
  if (mode == ParseMode::CpiStrict) {
    auto report = validate_cpi(p);
    if (!report.accepted()) {
      throw CpiViolation(report.violations.front().message + " at " +
                         report.violations.front().path);
    }
  }
  return canonicalize(p);
}

std::string render(const Prefix& prefix) {
  std::string out;
  for (const auto& g : prefix.guards) out += "[" + g.lhs.ident + "=" + g.rhs.ident + "]";
  out += prefix.subject.ident;
  if (prefix.is_send()) {
    out += "!<" + join(prefix.names, ", ") + ">";
  } else {
    out += "?(" + join(prefix.names, ", ") + ")";
  }
  return out;
}

std::string render(const Process& p) {
  std::string out;
  render_into(p, out);
  return out;
}

} // namespace cpi
