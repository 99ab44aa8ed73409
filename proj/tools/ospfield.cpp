// Command-line front end: claim-script verification, normal forms,
// bracket tables, degree-bounded centers, relation graphs and confluence
// checks over the builtin algebra catalog.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "ospfield/builtins.hpp"
#include "ospfield/centralizer.hpp"
#include "ospfield/claims.hpp"
#include "ospfield/expr.hpp"
#include "ospfield/reference.hpp"

using namespace ospfield;

namespace {

constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitEngine = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw EngineError(ErrorKind::InvalidParameters, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

/// Golden lookup for verify: file-relative first, embedded corpus second.
std::function<std::string(const std::string&)> golden_resolver(
    const std::string& script_path) {
  std::filesystem::path base =
      std::filesystem::path(script_path).parent_path();
  return [base](const std::string& name) -> std::string {
    for (auto cand : {base / name, base / "golden" / name}) {
      std::ifstream in(cand, std::ios::binary);
      if (in) {
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
      }
    }
    return corpus_golden(name);
  };
}

int cmd_verify(const std::vector<std::string>& files, bool json) {
  // Files verify concurrently; output is buffered and emitted in
  // argument order.
  std::vector<std::future<std::pair<bool, std::string>>> jobs;
  for (const auto& f : files) {
    jobs.push_back(std::async(std::launch::async, [f, json] {
      ClaimScript script =
          parse_claims(std::filesystem::path(f).stem().string(), read_file(f));
      ClaimReport rep = run_claims(script, golden_resolver(f));
      return std::make_pair(rep.passed(),
                            json ? rep.render_json() : rep.render_text());
    }));
  }
  bool all = true;
  for (auto& j : jobs) {
    auto [ok, text] = j.get();
    std::cout << text << "\n";
    all = all && ok;
  }
  return all ? 0 : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact PBW kernel and certificate verifier for enveloping "
               "algebras of Lie superalgebras"};
  app.require_subcommand(1);

  // verify
  auto* verify = app.add_subcommand("verify", "run claim scripts");
  std::vector<std::string> files;
  bool json = false;
  verify->add_option("files", files, "claim script files")->required();
  verify->add_flag("--json", json, "structured report output");

  // nf
  auto* nf = app.add_subcommand("nf", "normal form of an expression");
  std::string algebra, expr_text;
  nf->add_option("-a,--algebra", algebra, "builtin algebra")->required();
  nf->add_option("expr", expr_text, "expression")->required();

  // table
  auto* table = app.add_subcommand("table", "bracket table of an algebra");
  std::string table_alg;
  table->add_option("-a,--algebra", table_alg, "builtin algebra")->required();

  // center
  auto* center = app.add_subcommand("center", "degree-bounded center");
  std::string center_alg;
  int center_deg = 4;
  center->add_option("-a,--algebra", center_alg, "builtin algebra")->required();
  center->add_option("-d,--max-degree", center_deg, "degree bound");

  // graph
  auto* graph = app.add_subcommand("graph", "relation graph as DOT");
  std::string graph_alg, graph_out;
  graph->add_option("-a,--algebra", graph_alg, "builtin algebra")->required();
  graph->add_option("-o,--output", graph_out, "output file (default stdout)");

  // overlaps
  auto* overlaps = app.add_subcommand("overlaps", "confluence check");
  std::string ov_alg;
  int ov_deg = 3;
  overlaps->add_option("-a,--algebra", ov_alg, "builtin algebra")->required();
  overlaps->add_option("-d,--max-degree", ov_deg, "overlap word bound");

  // list
  app.add_subcommand("list", "enumerate builtin algebras");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (verify->parsed()) return cmd_verify(files, json);
    if (nf->parsed()) {
      BuiltinInstance inst = make_builtin_selector(algebra);
      const Presentation& p = inst.pres;
      ExprPtr ast = parse_expr(expr_text, [&](const std::string& n) {
        return p.position(n) >= 0;
      });
      // evaluate over the plain presentation (no localization context)
      std::function<Element(const ExprPtr&)> ev = [&](const ExprPtr& e) {
        Budget budget{p.budget_limit()};
        using K = ExprNode::Kind;
        switch (e->kind) {
          case K::Num: return p.constant(e->num);
          case K::Sym: return p.generator_element(p.require_position(e->name));
          case K::Neg: return ev(e->a) * Scalar(-1);
          case K::Add: return ev(e->a) + ev(e->b);
          case K::Sub: return ev(e->a) - ev(e->b);
          case K::Mul: return p.multiply(ev(e->a), ev(e->b));
          case K::Pow: return p.power(ev(e->a), e->exponent, budget);
          case K::Inv:
            return p.power(
                p.generator_element(p.require_position(e->name)), -1, budget);
          case K::Comm:
            return p.bracket(ev(e->a), ev(e->b), BracketKind::Comm);
          case K::Acomm:
            return p.bracket(ev(e->a), ev(e->b), BracketKind::Acomm);
        }
        throw EngineError(ErrorKind::SyntaxError, "bad node");
      };
      std::cout << p.render(ev(ast)) << "\n";
      return 0;
    }
    if (table->parsed()) {
      BuiltinInstance inst = make_builtin_selector(table_alg);
      if (inst.lie) {
        std::cout << inst.lie->render_table();
      } else {
        std::cout << inst.pres.render_rules();
      }
      return 0;
    }
    if (center->parsed()) {
      BuiltinInstance inst = make_builtin_selector(center_alg);
      std::cout << render_center_report(inst.pres, center_deg);
      return 0;
    }
    if (graph->parsed()) {
      BuiltinInstance inst = make_builtin_selector(graph_alg);
      RelationGraph g = relation_graph(inst.pres);
      std::string dot = g.to_dot(inst.pres.name());
      if (graph_out.empty()) {
        std::cout << dot;
      } else {
        std::ofstream out(graph_out, std::ios::binary);
        out << dot;
      }
      return 0;
    }
    if (overlaps->parsed()) {
      BuiltinInstance inst = make_builtin_selector(ov_alg);
      ConfluenceReport rep = inst.pres.check_confluence(ov_deg);
      std::cout << "checked " << rep.words_checked << " overlap words\n";
      for (const auto& m : rep.mismatches) {
        std::cout << "mismatch on word";
        for (const auto& l : m.word)
          std::cout << " " << inst.pres.gen(l.pos).name << "^" << l.exp;
        std::cout << "\n  left:  " << inst.pres.render(m.left)
                  << "\n  right: " << inst.pres.render(m.right) << "\n";
      }
      std::cout << (rep.passed() ? "confluent" : "NOT confluent") << "\n";
      return rep.passed() ? 0 : kExitVerifyFail;
    }
    // list
    for (const auto& [sel, desc] : builtin_catalog())
      std::cout << sel << "\t" << desc << "\n";
    return 0;
  } catch (const EngineError& e) {
    std::cerr << error_kind_name(e.kind()) << ": " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::SyntaxError:
      case ErrorKind::UnknownBuiltin:
      case ErrorKind::InvalidParameters:
      case ErrorKind::UnknownGenerator:
        return kExitUsage;
      default:
        return kExitEngine;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitEngine;
  }
}
