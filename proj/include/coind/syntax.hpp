#ifndef COIND_SYNTAX_HPP
#define COIND_SYNTAX_HPP

#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace coind {

// Lowercase action label. "mu" is reserved by the concrete syntax.
struct Action {
  std::string name;

  explicit Action(std::string n);
  bool operator==(const Action&) const = default;
  auto operator<=>(const Action&) const = default;
};

// Uppercase-initial recursion variable.
struct VarName {
  std::string name;

  explicit VarName(std::string n);
  bool operator==(const VarName&) const = default;
  auto operator<=>(const VarName&) const = default;
};

class ProcessExpr;
using ExprPtr = std::shared_ptr<const ProcessExpr>;

struct Summand {
  Action act;
  ExprPtr cont;
};

// Immutable AST. Sums are positional families; a Mu body is always a Sum
// (guarded recursion), enforced at construction.
class ProcessExpr {
 public:
  enum class Kind { Sum, Mu, Var };

  static ExprPtr sum(std::vector<Summand> summands);
  static ExprPtr mu(VarName binder, ExprPtr body);
  static ExprPtr var(VarName name);

  Kind kind() const { return kind_; }
  bool is_sum() const { return kind_ == Kind::Sum; }
  bool is_mu() const { return kind_ == Kind::Mu; }
  bool is_var() const { return kind_ == Kind::Var; }

  const std::vector<Summand>& summands() const;  // Sum
  const VarName& binder() const;                 // Mu
  const ExprPtr& body() const;                   // Mu
  const VarName& var_name() const;               // Var

 private:
  ProcessExpr() = default;

  Kind kind_ = Kind::Sum;
  std::vector<Summand> summands_;
  VarName name_{"X"};  // binder (Mu) or variable name (Var)
  ExprPtr body_;
};

bool struct_equal(const ProcessExpr& a, const ProcessExpr& b);
bool struct_equal(const ExprPtr& a, const ExprPtr& b);

struct ParseError : std::runtime_error {
  std::size_t pos;
  ParseError(std::string msg, std::size_t at);
};

// Concrete syntax:
//   expr   := sum | mu | var
//   sum    := "0" | prefix ("+" prefix)*
//   prefix := action "." (atom | prefix)
//   atom   := "0" | var | "(" expr ")" | mu
//   mu     := "mu" VAR "." sum
ExprPtr parse_expr(std::string_view text);

// Canonical concrete syntax; parse_expr(render(e)) == e.
std::string render(const ProcessExpr& e);
std::string render(const ExprPtr& e);

std::set<VarName> free_vars(const ProcessExpr& e);
bool is_process(const ProcessExpr& e);
inline bool is_process(const ExprPtr& e) { return is_process(*e); }

// Replaces free occurrences of x by the closed expression p.
// Throws std::invalid_argument("open substituend") if p is not closed.
ExprPtr substitute(const ExprPtr& e, const VarName& x, const ExprPtr& p);

// Mu(X, S) -> S{X := Mu(X, S)}; sums are returned unchanged.
// Throws std::invalid_argument("not a process") on open input.
ExprPtr head_unfold(const ExprPtr& p);

}  // namespace coind

#endif
