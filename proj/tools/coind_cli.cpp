#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "coind/equiv.hpp"
#include "coind/lts.hpp"
#include "coind/proofcert.hpp"
#include "coind/ruleset.hpp"
#include "coind/syntax.hpp"

namespace {

constexpr int kOk = 0;        // valid / accepted / true
constexpr int kInvalid = 1;   // invalid / rejected / false
constexpr int kUsage = 2;     // usage or input error

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << text;
}

coind::MatchMode parse_mode(const std::string& mode) {
  if (mode == "literal") return coind::MatchMode::Literal;
  if (mode == "relaxed") return coind::MatchMode::Relaxed;
  throw CLI::ValidationError("--mode", "must be 'literal' or 'relaxed'");
}

void print_ast(const coind::ProcessExpr& e, std::ostream& out) {
  using Kind = coind::ProcessExpr::Kind;
  switch (e.kind()) {
    case Kind::Var:
      out << "Var(" << e.var_name().name << ")";
      break;
    case Kind::Mu:
      out << "Mu(" << e.binder().name << ", ";
      print_ast(*e.body(), out);
      out << ")";
      break;
    case Kind::Sum: {
      out << "Sum[";
      bool first = true;
      for (const auto& s : e.summands()) {
        if (!first) out << ", ";
        first = false;
        out << "(" << s.act.name << ", ";
        print_ast(*s.cont, out);
        out << ")";
      }
      out << "]";
      break;
    }
  }
}

int cmd_parse(const std::string& text) {
  coind::ExprPtr e = coind::parse_expr(text);
  std::cout << "expr: " << coind::render(e) << "\n";
  std::cout << "ast: ";
  print_ast(*e, std::cout);
  std::cout << "\n";
  std::cout << "free:";
  for (const auto& v : coind::free_vars(*e)) std::cout << " " << v.name;
  std::cout << "\n";
  std::cout << (coind::is_process(*e) ? "process: yes" : "process: no")
            << "\n";
  return kOk;
}

int cmd_prove(const std::string& left, const std::string& right,
              const std::string& mode_name, const std::string& emit,
              std::size_t max_pairs) {
  coind::ExprPtr p = coind::parse_expr(left);
  coind::ExprPtr q = coind::parse_expr(right);
  if (!coind::is_process(p) || !coind::is_process(q))
    throw std::runtime_error("both expressions must be closed processes");
  coind::MatchMode mode = parse_mode(mode_name);
  coind::SearchOptions opts;
  opts.max_pairs = max_pairs;
  auto cert = coind::prove_equiv(p, q, mode, opts);
  if (!cert) {
    std::cout << "not provable: " << coind::render(p)
              << " == " << coind::render(q) << " (mode " << mode_name << ")\n";
    return kInvalid;
  }
  std::cout << "proved: " << cert->judgement << " (mode " << mode_name
            << ")\n";
  std::cout << coind::render_cert(*cert);
  if (!emit.empty()) {
    write_file(emit, coind::serialize_cert(*cert));
    std::cout << "certificate written to " << emit << "\n";
  }
  return kOk;
}

int cmd_check_cert(const std::string& file, const std::string& hyp_file,
                   const std::string& rules_file, const std::string& mode_name,
                   bool wellfounded) {
  coind::CertNode cert = coind::parse_cert(read_file(file));
  coind::InstanceCheck check;
  coind::RuleSystem rs;
  if (!rules_file.empty()) {
    rs = coind::parse_rulesystem(read_file(rules_file));
    check = coind::table_instance_check(rs);
  } else {
    check = coind::schema_instance_check(parse_mode(mode_name));
  }

  coind::Verdict verdict;
  if (!hyp_file.empty()) {
    std::set<std::string> hyps;
    std::istringstream in(read_file(hyp_file));
    std::string line;
    while (std::getline(in, line)) {
      while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
        line.pop_back();
      if (!line.empty() && line[0] != '#') hyps.insert(line);
    }
    verdict = coind::check_fragment(cert, hyps, check);
  } else if (wellfounded) {
    verdict = coind::check_wellfounded(cert, check);
  } else {
    verdict = coind::check_circular(cert, check);
  }

  if (verdict.ok) {
    std::cout << "accepted\n";
    return kOk;
  }
  std::cout << "rejected: " << verdict.reason << "\n";
  return kInvalid;
}

int cmd_bisim(const std::string& left, const std::string& right,
              std::size_t max_states) {
  coind::ExprPtr p = coind::parse_expr(left);
  coind::ExprPtr q = coind::parse_expr(right);
  if (!coind::is_process(p) || !coind::is_process(q))
    throw std::runtime_error("both expressions must be closed processes");
  bool eq = coind::bisimilar(p, q, max_states);
  std::cout << (eq ? "bisimilar" : "not bisimilar") << "\n";
  return eq ? kOk : kInvalid;
}

int cmd_fixpoint(const std::string& file, const std::string& semantics,
                 const std::string& prove_id, const std::string& emit) {
  coind::RuleSystem rs = coind::parse_rulesystem(read_file(file));
  bool least;
  if (semantics == "lfp")
    least = true;
  else if (semantics == "gfp")
    least = false;
  else
    throw CLI::ValidationError("--semantics", "must be 'lfp' or 'gfp'");

  coind::JudgementSet v = least ? coind::lfp(rs) : coind::gfp(rs);
  std::cout << semantics << ":";
  for (const std::string& id : rs.universe)
    if (v.contains(id)) std::cout << " " << id;
  std::cout << "\n";

  if (prove_id.empty()) return kOk;
  auto cert = least ? coind::extract_wf_proof(rs, prove_id)
                    : coind::extract_circular_proof(rs, prove_id);
  if (!cert) {
    std::cout << "not " << (least ? "inductively" : "coinductively")
              << " valid: " << prove_id << "\n";
    return kInvalid;
  }
  std::cout << "proof of " << prove_id << ":\n"
            << coind::render_cert(*cert);
  if (!emit.empty()) {
    write_file(emit, coind::serialize_cert(*cert));
    std::cout << "certificate written to " << emit << "\n";
  }
  return kOk;
}

int cmd_render_cert(const std::string& file) {
  coind::CertNode cert = coind::parse_cert(read_file(file));
  std::cout << coind::render_cert(cert);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coinductive validity, circular proofs, and process equivalence"};
  app.require_subcommand(1);

  std::string expr, left, right, mode = "relaxed", emit, cert_file, hyp_file,
              rules_file, semantics, prove_id;
  std::size_t max_states = coind::kDefaultMaxStates;
  std::size_t max_pairs = coind::kDefaultMaxPairs;
  bool wellfounded = false;

  auto* parse_cmd = app.add_subcommand("parse", "parse an expression");
  parse_cmd->add_option("expr", expr, "process expression")->required();

  auto* prove_cmd =
      app.add_subcommand("prove", "prove two processes equivalent");
  prove_cmd->add_option("left", left, "left process")->required();
  prove_cmd->add_option("right", right, "right process")->required();
  prove_cmd->add_option("--mode", mode, "act matching: literal|relaxed");
  prove_cmd->add_option("--emit", emit, "write certificate to file");
  prove_cmd->add_option("--max-pairs", max_pairs, "search budget");

  auto* check_cmd = app.add_subcommand("check-cert", "check a certificate");
  check_cmd->add_option("file", cert_file, "certificate file")->required();
  check_cmd->add_option("--fragment", hyp_file,
                        "check as fragment against hypothesis file");
  check_cmd->add_option("--rules", rules_file,
                        "validate against a rule file instead of the "
                        "equivalence schemata");
  check_cmd->add_option("--mode", mode, "act matching: literal|relaxed");
  check_cmd->add_flag("--wellfounded", wellfounded,
                      "require a back-edge-free proof");

  auto* bisim_cmd =
      app.add_subcommand("bisim", "strong bisimilarity oracle");
  bisim_cmd->add_option("left", left, "left process")->required();
  bisim_cmd->add_option("right", right, "right process")->required();
  bisim_cmd->add_option("--max-states", max_states, "exploration budget");

  auto* fix_cmd =
      app.add_subcommand("fixpoint", "validity sets of a rule system");
  fix_cmd->add_option("file", cert_file, "rule file")->required();
  fix_cmd->add_option("--semantics", semantics, "lfp|gfp")->required();
  fix_cmd->add_option("--prove", prove_id, "extract a proof of this id");
  fix_cmd->add_option("--emit", emit, "write certificate to file");

  auto* render_cmd =
      app.add_subcommand("render-cert", "pretty-print a certificate");
  render_cmd->add_option("file", cert_file, "certificate file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (parse_cmd->parsed()) return cmd_parse(expr);
    if (prove_cmd->parsed())
      return cmd_prove(left, right, mode, emit, max_pairs);
    if (check_cmd->parsed())
      return cmd_check_cert(cert_file, hyp_file, rules_file, mode,
                            wellfounded);
    if (bisim_cmd->parsed()) return cmd_bisim(left, right, max_states);
    if (fix_cmd->parsed())
      return cmd_fixpoint(cert_file, semantics, prove_id, emit);
    if (render_cmd->parsed()) return cmd_render_cert(cert_file);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
