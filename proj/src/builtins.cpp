#include "ospfield/builtins.hpp"

#include <map>
#include <sstream>

#include "ospfield/claims.hpp"
#include "ospfield/reference.hpp"

namespace ospfield {

namespace {

std::vector<std::string> osp_reduced_order(int n) {
  if (n == 1) return {"b1p", "k1", "b1m"};  // the b+ < k < b- tower
  std::vector<std::string> order;
  for (int i = 1; i <= n; ++i) order.push_back("b" + std::to_string(i) + "p");
  for (int i = 1; i <= n; ++i) order.push_back("b" + std::to_string(i) + "m");
  for (int i = 1; i <= n; ++i) order.push_back("k" + std::to_string(i));
  if (n == 2) {
    order.insert(order.end(), {"ap", "am", "s", "t"});
  } else {
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        std::string ij = std::to_string(i) + std::to_string(j);
        order.push_back("a" + ij + "p");
        order.push_back("a" + ij + "m");
        order.push_back("s" + ij);
        order.push_back("t" + ij);
      }
  }
  return order;
}

std::map<std::string, std::string> osp_elim(int n) {
  std::map<std::string, std::string> elim;
  for (int i = 1; i <= n; ++i) {
    elim["c" + std::to_string(i) + "p"] = "b" + std::to_string(i) + "p^2";
    elim["c" + std::to_string(i) + "m"] = "b" + std::to_string(i) + "m^2";
  }
  return elim;
}

BuiltinInstance make_osp(int n) {
  LieSuperAlgebra L = build_osp(n);
  Presentation p = enveloping_reduced(
      L, "U(osp(1," + std::to_string(2 * n) + "))", osp_reduced_order(n),
      osp_elim(n));
  if (n == 1) {
    p.rename_generator("b1p", "b+");
    p.rename_generator("k1", "k");
    p.rename_generator("b1m", "b-");
    p.add_alias("bp", "b+");
    p.add_alias("bm", "b-");
  }
  return {std::move(p), std::move(L)};
}

BuiltinInstance make_osp12z() {
  // U(osp(1,2)) re-presented on b+ < k < z with z = 2b+b- - 2k + 1:
  // kb+ = b+(k+1), zb+ = -b+z, zk = kz.
  Presentation p("osp12z",
                 {{"b+", 1, false}, {"k", 0, false}, {"z", 0, false}});
  p.set_rule(1, 0, Scalar(1), p.generator_element(0));
  p.set_rule(2, 0, Scalar(-1), Element());
  p.set_rule(2, 1, Scalar(1), Element());
  p.add_alias("bp", "b+");
  p.set_validated(true);
  return {std::move(p), std::nullopt};
}

BuiltinInstance make_sub(const char* sub_name, const char* pres_name,
                         const std::vector<std::string>& basis_names,
                         const std::vector<std::string>& order,
                         const std::map<std::string, std::string>& elim) {
  LieSuperAlgebra osp4 = build_osp(2);
  LieSuperAlgebra sub = require_subalgebra(osp4, basis_names);
  (void)sub_name;
  Presentation p = enveloping_reduced(sub, pres_name, order, elim);
  return {std::move(p), std::move(sub)};
}

BuiltinInstance make_tensor_target(const std::string& which) {
  if (which == "A1xS4") {
    // A1 factor (x0,y0) tensor S4 factor (x1,y1,x2,y2).
    Presentation p("A1xS4", {{"x0", 0, false},
                             {"y0", 0, false},
                             {"x1", 0, false},
                             {"y1", 0, false},
                             {"x2", 0, false},
                             {"y2", 0, false}});
    p.set_rule(1, 0, Scalar(1), p.constant(Scalar(-1)));
    p.set_rule(3, 2, Scalar(1), p.constant(Scalar(-1)));
    p.set_rule(5, 4, Scalar(1), p.constant(Scalar(-1)));
    p.set_rule(4, 2, Scalar(-1), Element());  // x2 x1 = -x1 x2
    p.set_rule(4, 3, Scalar(-1), Element());  // x2 y1 = -y1 x2
    p.set_rule(5, 2, Scalar(-1), Element());  // y2 x1 = -x1 y2
    p.set_rule(5, 3, Scalar(-1), Element());  // y2 y1 = -y1 y2
    for (int hi = 2; hi < 6; ++hi)
      for (int lo = 0; lo < 2; ++lo) p.set_rule(hi, lo, Scalar(1), Element());
    p.set_validated(true);
    return {std::move(p), std::nullopt};
  }
  // A1 x A1 x S3: (x1,y1), (x2,y2), (x,y,z).
  Presentation p("A1xA1xS3", {{"x1", 0, false},
                              {"y1", 0, false},
                              {"x2", 0, false},
                              {"y2", 0, false},
                              {"x", 0, false},
                              {"y", 0, false},
                              {"z", 0, false}});
  p.set_rule(1, 0, Scalar(1), p.constant(Scalar(-1)));
  p.set_rule(3, 2, Scalar(1), p.constant(Scalar(-1)));
  p.set_rule(5, 4, Scalar(1), p.constant(Scalar(-1)));
  p.set_rule(6, 4, Scalar(-1), Element());
  p.set_rule(6, 5, Scalar(-1), Element());
  for (int hi = 1; hi < 7; ++hi)
    for (int lo = 0; lo < hi; ++lo)
      if (!p.has_rule(hi, lo)) p.set_rule(hi, lo, Scalar(1), Element());
  p.set_validated(true);
  return {std::move(p), std::nullopt};
}

BuiltinInstance make_fig(const std::string& which) {
  if (which == "figN+") {
    Presentation p("figN+", {{"tp", 0, false},
                             {"ap", 0, false},
                             {"y", 1, false},
                             {"b1p", 1, false}});
    p.set_rule(1, 0, Scalar(1), p.constant(Scalar(-1)));  // ap tp = tp ap - 1
    p.set_rule(3, 2, Scalar(-1), Element());              // b1p y = -y b1p
    for (int hi = 1; hi < 4; ++hi)
      for (int lo = 0; lo < hi; ++lo)
        if (!p.has_rule(hi, lo)) p.set_rule(hi, lo, Scalar(1), Element());
    p.set_validated(true);
    return {std::move(p), std::nullopt};
  }
  if (which == "figB+") {
    Presentation p("figB+", {{"k2p", 0, false},
                             {"ap", 0, false},
                             {"k1p", 0, false},
                             {"b1p", 0, false},
                             {"yp", 0, false},
                             {"tpp", 0, false}});
    p.set_rule(1, 0, Scalar(1), p.constant(Scalar(-1)));
    p.set_rule(3, 2, Scalar(1), p.constant(Scalar(-1)));
    p.set_rule(5, 4, Scalar(1), p.constant(Scalar(-1)));
    p.set_rule(4, 2, Scalar(-1), Element());
    p.set_rule(4, 3, Scalar(-1), Element());
    p.set_rule(5, 2, Scalar(-1), Element());
    p.set_rule(5, 3, Scalar(-1), Element());
    for (int hi = 1; hi < 6; ++hi)
      for (int lo = 0; lo < hi; ++lo)
        if (!p.has_rule(hi, lo)) p.set_rule(hi, lo, Scalar(1), Element());
    p.set_validated(true);
    return {std::move(p), std::nullopt};
  }
  Presentation p("figP+", {{"u1", 0, false},
                           {"v1", 0, false},
                           {"k1pp", 0, false},
                           {"w1", 0, false},
                           {"u2", 0, false},
                           {"v2", 0, false},
                           {"z2", 0, false}});
  p.set_rule(1, 0, Scalar(1), p.constant(Scalar(-1)));
  p.set_rule(3, 2, Scalar(1), p.constant(Scalar(-1)));
  p.set_rule(5, 4, Scalar(1), p.constant(Scalar(-1)));
  p.set_rule(6, 4, Scalar(-1), Element());
  p.set_rule(6, 5, Scalar(-1), Element());
  for (int hi = 1; hi < 7; ++hi)
    for (int lo = 0; lo < hi; ++lo)
      if (!p.has_rule(hi, lo)) p.set_rule(hi, lo, Scalar(1), Element());
  p.set_validated(true);
  return {std::move(p), std::nullopt};
}

BuiltinInstance make_L(const std::string& which) {
  std::string table = corpus_golden(which + "_table.txt");
  std::vector<std::pair<std::string, int>> basis = {
      {"e0", 0}, {"e1", 0}, {"e2", 0}, {"e3", 0}, {"x", 0}, {"y", 0}, {"h", 0}};
  LieSuperAlgebra L = lie_from_table(which, basis, table);
  Presentation p = enveloping(
      L, {"e0", "e1", "e2", "e3", "x", "y", "h"});
  return {std::move(p), std::move(L)};
}

const std::vector<std::string> kNplusBasis = {"c1p", "c2p", "ap",
                                              "t",   "b1p", "b2p"};
const std::vector<std::string> kBplusBasis = {"c1p", "c2p", "ap",  "t",
                                              "k1",  "k2",  "b1p", "b2p"};
const std::vector<std::string> kPplusBasis = {"c1p", "c2p", "ap",  "t",  "k1",
                                              "k2",  "c2m", "b1p", "b2p", "b2m"};
const std::vector<std::string> kQplusBasis = {"c1p", "c2p", "ap",  "t", "k1",
                                              "k2",  "s",   "b1p", "b2p"};

}  // namespace

BuiltinInstance make_builtin(const std::string& name,
                             const std::vector<int>& args) {
  auto need = [&](std::size_t n) {
    if (args.size() != n)
      throw EngineError(ErrorKind::InvalidParameters,
                        "builtin " + name + " takes " + std::to_string(n) +
                            " arguments");
  };
  if (name == "osp") {
    need(2);
    if (args[0] != 1 || args[1] < 2 || args[1] % 2 != 0)
      throw EngineError(ErrorKind::InvalidParameters,
                        "osp(1,2n) with n >= 1");
    return make_osp(args[1] / 2);
  }
  if (name == "ospfull") {
    // full-basis enveloping: odd squares rewrite to the c generators,
    // so the natural degree of the Casimir generators is 2
    need(2);
    if (args[0] != 1 || args[1] < 2 || args[1] % 2 != 0)
      throw EngineError(ErrorKind::InvalidParameters,
                        "ospfull(1,2n) with n >= 1");
    LieSuperAlgebra L = build_osp(args[1] / 2);
    std::vector<std::string> order;
    for (const auto& [nm, par] : L.basis()) order.push_back(nm);
    Presentation p = enveloping(L, order);
    return {std::move(p), std::move(L)};
  }
  if (name == "osp12z") {
    need(0);
    return make_osp12z();
  }
  if (name == "nplus") {
    need(0);
    return make_sub("n+", "U(n+)", kNplusBasis, {"b1p", "ap", "b2p", "t"},
                    {{"c1p", "b1p^2"}, {"c2p", "b2p^2"}});
  }
  if (name == "bplus") {
    need(0);
    return make_sub("b+", "U(b+)", kBplusBasis,
                    {"b1p", "ap", "b2p", "t", "k1", "k2"},
                    {{"c1p", "b1p^2"}, {"c2p", "b2p^2"}});
  }
  if (name == "pplus") {
    need(0);
    return make_sub("p+", "U(p+)", kPplusBasis,
                    {"b1p", "ap", "b2p", "t", "k1", "k2", "b2m"},
                    {{"c1p", "b1p^2"}, {"c2p", "b2p^2"}, {"c2m", "b2m^2"}});
  }
  if (name == "qplus") {
    need(0);
    return make_sub("q+", "U(q+)", kQplusBasis,
                    {"b1p", "ap", "b2p", "t", "k1", "k2", "s"},
                    {{"c1p", "b1p^2"}, {"c2p", "b2p^2"}});
  }
  if (name == "n0plus") {
    need(0);
    return make_sub("n0+", "U(n0+)", {"c1p", "c2p", "ap", "t"},
                    {"c1p", "ap", "c2p", "t"}, {});
  }
  if (name == "b0plus") {
    need(0);
    return make_sub("b0+", "U(b0+)", {"c1p", "c2p", "ap", "t", "k1", "k2"},
                    {"c1p", "ap", "c2p", "t", "k1", "k2"}, {});
  }
  if (name == "p0plus") {
    need(0);
    return make_sub("p0+", "U(p0+)",
                    {"c1p", "c2p", "ap", "t", "k1", "k2", "c2m"},
                    {"c1p", "ap", "c2p", "t", "k1", "k2", "c2m"}, {});
  }
  if (name == "q0plus") {
    need(0);
    return make_sub("q0+", "U(q0+)",
                    {"c1p", "c2p", "ap", "t", "k1", "k2", "s"},
                    {"c1p", "ap", "c2p", "t", "k1", "k2", "s"}, {});
  }
  if (name == "S3") {
    need(0);
    return {build_reference({Family::S3}), std::nullopt};
  }
  if (name == "S4") {
    need(0);
    return {build_reference({Family::S4}), std::nullopt};
  }
  if (name == "A1") {
    need(0);
    return {build_reference({Family::A1}), std::nullopt};
  }
  if (name == "Afermi") {
    need(0);
    return {build_reference({Family::Afermi}), std::nullopt};
  }
  if (name == "A") {
    need(3);
    return {build_reference({Family::A, args[0], args[1], args[2]}),
            std::nullopt};
  }
  if (name == "hatA") {
    need(3);
    return {build_reference({Family::HatA, args[0], args[1], args[2]}),
            std::nullopt};
  }
  if (name == "f") {
    need(0);
    Presentation p = build_reference({Family::F});
    // The nilpotent superalgebra behind it, for Jacobi checks.
    LieSuperAlgebra L("f", {{"z", 0}, {"t", 0}, {"u", 1}, {"w", 1}});
    LinComb zc, tc;
    zc.add(0, Scalar(1));
    tc.add(1, Scalar(1));
    L.set_bracket(2, 2, zc);
    L.set_bracket(3, 3, tc);
    return {std::move(p), std::move(L)};
  }
  if (name == "sl2") {
    need(0);
    return {build_reference({Family::Sl2}), std::nullopt};
  }
  if (name == "L79" || name == "L77") {
    need(0);
    return make_L(name);
  }
  if (name == "A1xS4" || name == "A1xA1xS3") {
    need(0);
    return make_tensor_target(name);
  }
  if (name == "figN+" || name == "figB+" || name == "figP+") {
    need(0);
    return make_fig(name);
  }
  throw EngineError(ErrorKind::UnknownBuiltin, "unknown builtin " + name);
}

bool is_builtin(const std::string& name) {
  static const std::vector<std::string> names = {
      "osp",    "ospfull", "osp12z", "nplus",  "bplus",  "pplus",    "qplus",
      "n0plus", "b0plus", "p0plus", "q0plus", "S3",       "S4",
      "A1",     "Afermi", "A",      "hatA",   "f",        "sl2",
      "L79",    "L77",    "A1xS4",  "A1xA1xS3", "figN+",  "figB+",
      "figP+"};
  for (const auto& n : names)
    if (n == name) return true;
  return false;
}

namespace {

// "osp12" -> (osp, {1,2}); "A(1,1,0)" -> (A, {1,1,0}); "U-n+" -> nplus.
std::pair<std::string, std::vector<int>> parse_selector(
    const std::string& sel) {
  static const std::map<std::string, std::pair<std::string, std::vector<int>>>
      fixed = {
          {"osp12", {"osp", {1, 2}}},   {"osp14", {"osp", {1, 4}}},
          {"osp16", {"osp", {1, 6}}},   {"osp(1,2)", {"osp", {1, 2}}},
          {"osp(1,4)", {"osp", {1, 4}}}, {"osp(1,6)", {"osp", {1, 6}}},
          {"U-n+", {"nplus", {}}},      {"n+", {"nplus", {}}},
          {"U-b+", {"bplus", {}}},      {"b+", {"bplus", {}}},
          {"U-p+", {"pplus", {}}},      {"p+", {"pplus", {}}},
          {"U-q+", {"qplus", {}}},      {"q+", {"qplus", {}}},
          {"U-n0+", {"n0plus", {}}},    {"n0+", {"n0plus", {}}},
          {"U-b0+", {"b0plus", {}}},    {"b0+", {"b0plus", {}}},
          {"U-p0+", {"p0plus", {}}},    {"p0+", {"p0plus", {}}},
          {"U-q0+", {"q0plus", {}}},    {"q0+", {"q0plus", {}}},
          {"osp12-full", {"ospfull", {1, 2}}},
          {"osp14-full", {"ospfull", {1, 4}}},
      };
  auto it = fixed.find(sel);
  if (it != fixed.end()) return it->second;
  auto lparen = sel.find('(');
  if (lparen != std::string::npos && sel.back() == ')') {
    std::string base = sel.substr(0, lparen);
    std::vector<int> args;
    std::string inner = sel.substr(lparen + 1, sel.size() - lparen - 2);
    std::istringstream is(inner);
    std::string tok;
    while (std::getline(is, tok, ',')) args.push_back(std::atoi(tok.c_str()));
    return {base, args};
  }
  return {sel, {}};
}

}  // namespace

BuiltinInstance make_builtin_selector(const std::string& selector) {
  auto [name, args] = parse_selector(selector);
  return make_builtin(name, args);
}

std::vector<std::string> builtin_symbols(const std::string& name,
                                         const std::vector<int>& args) {
  BuiltinInstance inst = make_builtin(name, args);
  std::vector<std::string> out = inst.pres.names();
  if (name == "osp" && args.size() == 2 && args[1] == 2) {
    out.push_back("bp");
    out.push_back("bm");
    out.push_back("b1p");
    out.push_back("b1m");
    out.push_back("k1");
  }
  if (name == "osp12z") out.push_back("bp");
  return out;
}

std::vector<std::pair<std::string, std::string>> builtin_catalog() {
  return {
      {"osp12", "U(osp(1,2)) on b+ < k < b-"},
      {"osp14", "U(osp(1,4)), reduced generators"},
      {"osp16", "U(osp(1,6)), reduced generators"},
      {"U-n+", "U(n+) nilpotent positive part of osp(1,4)"},
      {"U-b+", "U(b+) Borel subsuperalgebra of osp(1,4)"},
      {"U-p+", "U(p+) parabolic subsuperalgebra of osp(1,4)"},
      {"U-q+", "U(q+) second parabolic subsuperalgebra of osp(1,4)"},
      {"A1", "Weyl algebra xy - yx = 1"},
      {"Afermi", "fermionic Weyl algebra uv + vu = 1"},
      {"A(r,s,t)", "A_r^s tensor C[z_1..z_t]"},
      {"hatA(r,s,t)", "mixed presentation of Frac A_(r,t)^s"},
      {"S3", "braided algebra xy-yx=1, xz=-zx, yz=-zy"},
      {"S4", "two crossed copies of S3"},
      {"f", "nilpotent superalgebra {u,u}=z, {w,w}=t"},
      {"sl2", "U(sl2) on e, k, f"},
      {"L79", "7-dimensional Lie algebra L_{7,9}"},
      {"L77", "7-dimensional Lie algebra L_{7,7}"},
      {"osp12z", "U(osp(1,2)) re-presented on b+, k, z"},
      {"osp12-full", "U(osp(1,2)) on the full 5-element basis"},
      {"U-n0+", "even part of n+"},
      {"U-b0+", "even part of b+"},
      {"U-p0+", "even part of p+"},
      {"U-q0+", "even part of q+"},
      {"A1xS4", "A1 tensor S4 (certificate target)"},
      {"A1xA1xS3", "A1 tensor A1 tensor S3 (certificate target)"},
      {"figN+", "Frac U(n+) relation picture"},
      {"figB+", "Frac U(b+) relation picture"},
      {"figP+", "Frac U(p+) relation picture"},
  };
}

}  // namespace ospfield
