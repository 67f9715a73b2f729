#include "coind/syntax.hpp"

#include <cctype>
#include <sstream>
#include <utility>

namespace coind {

namespace {

bool lower_ident(const std::string& s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s) {
    unsigned char u = static_cast<unsigned char>(c);
    if (!std::islower(u) && !std::isdigit(u) && c != '_') return false;
  }
  return true;
}

bool upper_ident(const std::string& s) {
  if (s.empty() || !std::isupper(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s) {
    unsigned char u = static_cast<unsigned char>(c);
    if (!std::isalnum(u) && c != '_') return false;
  }
  return true;
}

}  // namespace

Action::Action(std::string n) : name(std::move(n)) {
  if (!lower_ident(name) || name == "mu")
    throw std::invalid_argument("invalid action name: '" + name + "'");
}

VarName::VarName(std::string n) : name(std::move(n)) {
  if (!upper_ident(name))
    throw std::invalid_argument("invalid variable name: '" + name + "'");
}

ExprPtr ProcessExpr::sum(std::vector<Summand> summands) {
  auto e = std::shared_ptr<ProcessExpr>(new ProcessExpr());
  e->kind_ = Kind::Sum;
  e->summands_ = std::move(summands);
  return e;
}

ExprPtr ProcessExpr::mu(VarName binder, ExprPtr body) {
  if (!body || !body->is_sum())
    throw std::invalid_argument("unguarded mu body");
  auto e = std::shared_ptr<ProcessExpr>(new ProcessExpr());
  e->kind_ = Kind::Mu;
  e->name_ = std::move(binder);
  e->body_ = std::move(body);
  return e;
}

ExprPtr ProcessExpr::var(VarName name) {
  auto e = std::shared_ptr<ProcessExpr>(new ProcessExpr());
  e->kind_ = Kind::Var;
  e->name_ = std::move(name);
  return e;
}

const std::vector<Summand>& ProcessExpr::summands() const {
  if (kind_ != Kind::Sum) throw std::logic_error("summands() on non-sum");
  return summands_;
}

const VarName& ProcessExpr::binder() const {
  if (kind_ != Kind::Mu) throw std::logic_error("binder() on non-mu");
  return name_;
}

const ExprPtr& ProcessExpr::body() const {
  if (kind_ != Kind::Mu) throw std::logic_error("body() on non-mu");
  return body_;
}

const VarName& ProcessExpr::var_name() const {
  if (kind_ != Kind::Var) throw std::logic_error("var_name() on non-var");
  return name_;
}

bool struct_equal(const ProcessExpr& a, const ProcessExpr& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case ProcessExpr::Kind::Var:
      return a.var_name() == b.var_name();
    case ProcessExpr::Kind::Mu:
      return a.binder() == b.binder() && struct_equal(*a.body(), *b.body());
    case ProcessExpr::Kind::Sum: {
      const auto& xs = a.summands();
      const auto& ys = b.summands();
      if (xs.size() != ys.size()) return false;
      for (std::size_t i = 0; i < xs.size(); ++i)
        if (xs[i].act != ys[i].act || !struct_equal(*xs[i].cont, *ys[i].cont))
          return false;
      return true;
    }
  }
  return false;
}

bool struct_equal(const ExprPtr& a, const ExprPtr& b) {
  return a == b || struct_equal(*a, *b);
}

ParseError::ParseError(std::string msg, std::size_t at)
    : std::runtime_error(msg + " (at position " + std::to_string(at) + ")"),
      pos(at) {}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ExprPtr parse_toplevel() {
    ExprPtr e = parse_expression();
    skip_ws();
    if (pos_ != text_.size())
      throw ParseError("unexpected trailing input", pos_);
    return e;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  std::string peek_ident() {
    skip_ws();
    std::size_t i = pos_;
    while (i < text_.size()) {
      char c = text_[i];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_')
        ++i;
      else
        break;
    }
    return std::string(text_.substr(pos_, i - pos_));
  }

  std::string take_ident() {
    std::string id = peek_ident();
    if (id.empty()) throw ParseError("expected identifier", pos_);
    pos_ += id.size();
    return id;
  }

  void expect(char c) {
    if (peek() != c)
      throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  ExprPtr parse_expression() {
    std::string id = peek_ident();
    if (id == "mu") return parse_mu();
    if (!id.empty() && std::isupper(static_cast<unsigned char>(id[0]))) {
      pos_ += id.size();
      return ProcessExpr::var(VarName(id));
    }
    return parse_sum();
  }

  ExprPtr parse_mu() {
    std::size_t at = pos_;
    std::string kw = take_ident();
    if (kw != "mu") throw ParseError("expected 'mu'", at);
    std::string v = take_ident();
    if (!std::isupper(static_cast<unsigned char>(v[0])))
      throw ParseError("expected variable after 'mu'", pos_ - v.size());
    expect('.');
    std::size_t body_at = pos_;
    std::string next = peek_ident();
    if (next == "mu" ||
        (!next.empty() && std::isupper(static_cast<unsigned char>(next[0]))))
      throw ParseError("unguarded mu body", body_at);
    ExprPtr body = parse_sum();
    return ProcessExpr::mu(VarName(v), body);
  }

  ExprPtr parse_sum() {
    if (peek() == '0') {
      ++pos_;
      return ProcessExpr::sum({});
    }
    std::vector<Summand> summands;
    summands.push_back(parse_prefix());
    while (peek() == '+') {
      ++pos_;
      summands.push_back(parse_prefix());
    }
    return ProcessExpr::sum(std::move(summands));
  }

  Summand parse_prefix() {
    std::size_t at = pos_;
    skip_ws();
    at = pos_;
    std::string a = take_ident();
    if (a == "mu" || !std::islower(static_cast<unsigned char>(a[0])))
      throw ParseError("expected action", at);
    expect('.');
    return Summand{Action(a), parse_continuation()};
  }

  // atom | nested prefix chain
  ExprPtr parse_continuation() {
    char c = peek();
    if (c == '0') {
      ++pos_;
      return ProcessExpr::sum({});
    }
    if (c == '(') {
      ++pos_;
      ExprPtr e = parse_expression();
      expect(')');
      return e;
    }
    std::string id = peek_ident();
    if (id.empty()) throw ParseError("expected expression after '.'", pos_);
    if (id == "mu") return parse_mu();
    if (std::isupper(static_cast<unsigned char>(id[0]))) {
      pos_ += id.size();
      return ProcessExpr::var(VarName(id));
    }
    return ProcessExpr::sum({parse_prefix()});
  }
};

void render_to(const ProcessExpr& e, std::ostream& out);

void render_prefix(const Summand& s, std::ostream& out) {
  out << s.act.name << '.';
  const ProcessExpr& c = *s.cont;
  switch (c.kind()) {
    case ProcessExpr::Kind::Var:
      out << c.var_name().name;
      break;
    case ProcessExpr::Kind::Mu:
      out << '(';
      render_to(c, out);
      out << ')';
      break;
    case ProcessExpr::Kind::Sum:
      if (c.summands().empty()) {
        out << '0';
      } else if (c.summands().size() == 1) {
        render_prefix(c.summands()[0], out);
      } else {
        out << '(';
        render_to(c, out);
        out << ')';
      }
      break;
  }
}

void render_to(const ProcessExpr& e, std::ostream& out) {
  switch (e.kind()) {
    case ProcessExpr::Kind::Var:
      out << e.var_name().name;
      break;
    case ProcessExpr::Kind::Mu:
      out << "mu " << e.binder().name << ". ";
      render_to(*e.body(), out);
      break;
    case ProcessExpr::Kind::Sum: {
      const auto& ss = e.summands();
      if (ss.empty()) {
        out << '0';
        break;
      }
      for (std::size_t i = 0; i < ss.size(); ++i) {
        if (i > 0) out << " + ";
        render_prefix(ss[i], out);
      }
      break;
    }
  }
}

void collect_free(const ProcessExpr& e, std::set<VarName>& bound,
                  std::set<VarName>& out) {
  switch (e.kind()) {
    case ProcessExpr::Kind::Var:
      if (!bound.contains(e.var_name())) out.insert(e.var_name());
      break;
    case ProcessExpr::Kind::Mu: {
      bool fresh = bound.insert(e.binder()).second;
      collect_free(*e.body(), bound, out);
      if (fresh) bound.erase(e.binder());
      break;
    }
    case ProcessExpr::Kind::Sum:
      for (const auto& s : e.summands()) collect_free(*s.cont, bound, out);
      break;
  }
}

}  // namespace

ExprPtr parse_expr(std::string_view text) {
  return Parser(text).parse_toplevel();
}

std::string render(const ProcessExpr& e) {
  std::ostringstream out;
  render_to(e, out);
  return out.str();
}

std::string render(const ExprPtr& e) { return render(*e); }

std::set<VarName> free_vars(const ProcessExpr& e) {
  std::set<VarName> bound, out;
  collect_free(e, bound, out);
  return out;
}

bool is_process(const ProcessExpr& e) { return free_vars(e).empty(); }

ExprPtr substitute(const ExprPtr& e, const VarName& x, const ExprPtr& p) {
  if (!free_vars(*p).empty()) throw std::invalid_argument("open substituend");
  switch (e->kind()) {
    case ProcessExpr::Kind::Var:
      return e->var_name() == x ? p : e;
    case ProcessExpr::Kind::Mu:
      if (e->binder() == x) return e;  // shadowed
      {
        ExprPtr body = substitute(e->body(), x, p);
        return body == e->body() ? e : ProcessExpr::mu(e->binder(), body);
      }
    case ProcessExpr::Kind::Sum: {
      bool changed = false;
      std::vector<Summand> out;
      out.reserve(e->summands().size());
      for (const auto& s : e->summands()) {
        ExprPtr c = substitute(s.cont, x, p);
        changed = changed || c != s.cont;
        out.push_back(Summand{s.act, std::move(c)});
      }
      return changed ? ProcessExpr::sum(std::move(out)) : e;
    }
  }
  return e;
}

ExprPtr head_unfold(const ExprPtr& p) {
  if (!is_process(*p)) throw std::invalid_argument("not a process");
  if (p->is_mu()) return substitute(p->body(), p->binder(), p);
  return p;
}

}  // namespace coind
