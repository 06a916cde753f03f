#include "cpwb/text.hpp"

#include <cctype>
#include <set>

namespace cpwb {

namespace {

struct Token {
  enum class Kind { Ident, Number, Punct, End } kind;
  std::string text;
  int line, col;
};

const std::set<std::string> kKeywords = {"new", "fwd", "weak", "ctr", "bot",
                                         "zero", "cut", "mix", "cweak", "ccon"};

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    unsigned char c = s[i];
    if (std::isspace(c)) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < s.size() && s[i] != '\n') advance(1);
      continue;
    }
    int l = line, cl = col;
    if (std::isalpha(c) || c == '_') {
      size_t j = i + 1;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '\''))
        ++j;
      out.push_back({Token::Kind::Ident, s.substr(i, j - i), l, cl});
      advance(j - i);
    } else if (std::isdigit(c)) {
      size_t j = i + 1;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Token::Kind::Number, s.substr(i, j - i), l, cl});
      advance(j - i);
    } else if (std::string("()[]{}<>.,:;|*%+&!?").find(static_cast<char>(c)) != std::string::npos) {
      out.push_back({Token::Kind::Punct, std::string(1, static_cast<char>(c)), l, cl});
      advance(1);
    } else {
      throw SyntaxError(l, cl, std::string("unexpected character '") + static_cast<char>(c) + "'");
    }
  }
  out.push_back({Token::Kind::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& s) : toks_(lex(s)) {}

  void finish() {
    if (peek().kind != Token::Kind::End) fail("unexpected '" + peek().text + "'");
  }

  Formula type() {
    const Token& t = peek();
    if (t.kind == Token::Kind::Number && t.text == "1") {
      ++pos_;
      return Formula::one();
    }
    if (is_ident("bot")) {
      ++pos_;
      return Formula::bot();
    }
    if (accept("!")) return Formula::of_course(type());
    if (accept("?")) return Formula::why_not(type());
    if (accept("(")) {
      Formula a = type();
      const Token& op = peek();
      if (op.kind != Token::Kind::Punct || std::string("*%+&").find(op.text) == std::string::npos)
        fail("expected one of * % + &");
      ++pos_;
      Formula b = type();
      expect(")");
      switch (op.text[0]) {
        case '*': return Formula::tensor(a, b);
        case '%': return Formula::par(a, b);
        case '+': return Formula::plus(a, b);
        default: return Formula::with(a, b);
      }
    }
    fail("expected a type");
  }

  Process process() {
    Process p = prefix();
    while (accept("|")) p = Process::par(p, prefix());
    return p;
  }

  Process prefix() {
    const Token& t = peek();
    if (t.kind == Token::Kind::Number) {
      if (t.text != "0") fail("expected a process");
      ++pos_;
      return Process::inact();
    }
    if (accept("(")) {
      Process p = process();
      expect(")");
      return p;
    }
    if (accept("!")) {
      Name x = name();
      expect("(");
      Name y = name();
      expect(")");
      expect(".");
      return Process::server(x, y, prefix());
    }
    if (accept("?")) {
      Name x = name();
      expect("[");
      Name y = name();
      expect("]");
      expect(".");
      return Process::client(x, y, prefix());
    }
    if (accept_ident("new")) {
      Name x = name();
      expect(":");
      Formula a = type();
      expect("(");
      Process p = prefix();
      expect("|");
      Process q = process();
      expect(")");
      return Process::cut(x, a, p, q);
    }
    if (accept_ident("fwd")) {
      Name x = name();
      Name y = name();
      return Process::fwd(x, y);
    }
    if (accept_ident("weak")) {
      Name x = name();
      expect(":");
      Formula a = type();
      expect(".");
      return Process::weak(x, a, prefix());
    }
    if (accept_ident("ctr")) {
      Name x = name();
      expect("<");
      Name x1 = name();
      expect(",");
      Name x2 = name();
      expect(">");
      expect(".");
      return Process::contract(x, x1, x2, prefix());
    }
    Name x = name();
    if (accept("[")) {
      if (accept("]")) return Process::empty_out(x);
      Name y = name();
      expect("]");
      expect("(");
      Process p = prefix();
      expect("|");
      Process q = process();
      expect(")");
      return Process::out(x, y, p, q);
    }
    if (accept("(")) {
      if (accept(")")) {
        expect(".");
        return Process::empty_in(x, prefix());
      }
      Name y = name();
      expect(")");
      expect(".");
      return Process::in(x, y, prefix());
    }
    if (accept("<")) {
      const Token& n = peek();
      if (n.kind != Token::Kind::Number || (n.text != "1" && n.text != "2")) fail("expected 1 or 2");
      int i = n.text == "1" ? 1 : 2;
      ++pos_;
      expect(".");
      return Process::select(x, i, prefix());
    }
    if (accept(">")) {
      expect("{");
      Process p = process();
      expect(";");
      Process q = process();
      expect("}");
      return Process::offer(x, p, q);
    }
    fail("expected an action on " + x);
  }

  std::vector<std::pair<Name, Formula>> context() {
    std::vector<std::pair<Name, Formula>> out;
    std::set<Name> seen;
    if (peek().kind == Token::Kind::End) return out;
    for (;;) {
      const Token& at = peek();
      Name x = name();
      if (!seen.insert(x).second) throw SyntaxError(at.line, at.col, "name " + x + " assigned twice");
      expect(":");
      out.emplace_back(x, type());
      if (!accept(",")) break;
    }
    return out;
  }

  Configuration config() {
    if (accept_ident("zero")) return Configuration::zero();
    if (accept("[")) {
      Process p = process();
      expect("]");
      return Configuration::proc(p);
    }
    if (accept_ident("cut")) {
      Name x = name();
      expect(":");
      Formula a = type();
      expect("(");
      Configuration c1 = config();
      expect(",");
      Configuration c2 = config();
      expect(")");
      return Configuration::cut(x, a, c1, c2);
    }
    if (accept_ident("mix")) {
      expect("(");
      Configuration c1 = config();
      expect(",");
      Configuration c2 = config();
      expect(")");
      return Configuration::par(c1, c2);
    }
    if (accept_ident("cweak")) {
      Name x = name();
      expect(":");
      Formula a = type();
      expect(".");
      return Configuration::weak(x, a, config());
    }
    if (accept_ident("ccon")) {
      Name x1 = name();
      expect(",");
      Name x2 = name();
      expect(".");
      return Configuration::con(x1, x2, config());
    }
    fail("expected a configuration");
  }

 private:
  const Token& peek() const { return toks_[pos_]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(peek().line, peek().col, msg);
  }

  bool is_ident(const std::string& s) const {
    return peek().kind == Token::Kind::Ident && peek().text == s;
  }

  bool accept(const std::string& p) {
    if (peek().kind == Token::Kind::Punct && peek().text == p) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool accept_ident(const std::string& s) {
    if (is_ident(s)) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(const std::string& p) {
    if (!accept(p)) fail("expected '" + p + "'" + (peek().kind == Token::Kind::End ? " at end of input" : ", found '" + peek().text + "'"));
  }

  Name name() {
    const Token& t = peek();
    if (t.kind != Token::Kind::Ident) fail("expected a name");
    if (kKeywords.count(t.text)) fail("'" + t.text + "' is a keyword");
    ++pos_;
    return t.text;
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
};

}  // namespace

Formula parse_type(const std::string& text) {
  Parser p(text);
  Formula f = p.type();
  p.finish();
  return f;
}

Process parse_process(const std::string& text) {
  Parser p(text);
  Process r = p.process();
  p.finish();
  return r;
}

std::vector<std::pair<Name, Formula>> parse_context_list(const std::string& text) {
  Parser p(text);
  auto r = p.context();
  p.finish();
  return r;
}

TypingContext parse_context(const std::string& text) {
  TypingContext out;
  for (auto& [n, a] : parse_context_list(text)) out.emplace(n, a);
  return out;
}

Configuration parse_config(const std::string& text) {
  Parser p(text);
  Configuration c = p.config();
  p.finish();
  return c;
}

}  // namespace cpwb
