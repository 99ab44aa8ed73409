#include <doctest.h>

#include "ospfield/builtins.hpp"
#include "ospfield/localization.hpp"

using namespace ospfield;

namespace {

Element gen(const Presentation& p, const std::string& n, int e = 1) {
  return p.generator_element(p.require_position(n), e);
}

}  // namespace

TEST_CASE("sigma-normal witness for z over the b+,k,z presentation") {
  BuiltinInstance inst = make_builtin("osp12z", {});
  const Presentation& p = inst.pres;
  Budget bud{p.budget_limit()};
  SigmaWitness w;
  w.conj[0] = Scalar(-1) * gen(p, "b+");  // z b+ = -b+ z
  w.conj[1] = gen(p, "k");                // z k = k z
  w.conj[2] = gen(p, "z");
  w.conj_inv[0] = Scalar(-1) * gen(p, "b+");
  w.conj_inv[1] = gen(p, "k");
  w.conj_inv[2] = gen(p, "z");
  CHECK(verify_sigma_normal(p, gen(p, "z"), w, bud).passed());
}

TEST_CASE("b+ is sigma-normal over b+,k,z but not over b+,k,b-") {
  BuiltinInstance inst = make_builtin("osp12z", {});
  const Presentation& p = inst.pres;
  Budget bud{p.budget_limit()};
  SigmaWitness w;
  w.conj[0] = gen(p, "b+");
  w.conj[1] = gen(p, "k") - p.constant(Scalar(1));  // b+ k = (k-1) b+
  w.conj[2] = Scalar(-1) * gen(p, "z");
  CHECK(verify_sigma_normal(p, gen(p, "b+"), w, bud).passed());

  // against the polynomial generating set b+, k, b- no table works:
  // the 2k term of {b-,b+} survives in the residual
  BuiltinInstance full = make_builtin("osp", {1, 2});
  const Presentation& q = full.pres;
  Budget bud2{q.budget_limit()};
  SigmaWitness v;
  v.conj[2] = Scalar(-1) * gen(q, "b-");
  auto rep = verify_sigma_normal(q, gen(q, "b+"), v, bud2);
  REQUIRE_FALSE(rep.passed());
  bool has_k = false;
  for (const auto& issue : rep.issues)
    for (const auto& [m, c] : issue.residual.terms())
      has_k |= m.exp[q.require_position("k")] != 0;
  CHECK(has_k);
}

TEST_CASE("multiplicativity failures are caught") {
  BuiltinInstance inst = make_builtin("osp12z", {});
  const Presentation& p = inst.pres;
  Budget bud{p.budget_limit()};
  SigmaWitness w;
  w.conj[0] = gen(p, "b+");
  w.conj[1] = gen(p, "k") + p.constant(Scalar(1));  // wrong sign of the shift
  auto rep = verify_sigma_normal(p, gen(p, "b+"), w, bud);
  CHECK_FALSE(rep.passed());
}

TEST_CASE("inverse exponents: cancellation and the localized Weyl pair") {
  BuiltinInstance inst = make_builtin("osp12z", {});
  Presentation p = inst.pres;
  p.mark_invertible("b+");
  REQUIRE(p.check_confluence(3).passed());
  Budget bud{p.budget_limit()};
  Element e = p.multiply(gen(p, "b+", 1), gen(p, "b+", -1), bud);
  CHECK(e == p.constant(Scalar(1)));
  Element f = p.multiply(gen(p, "b+", -1), gen(p, "b+", 1), bud);
  CHECK(f == p.constant(Scalar(1)));

  Element y = p.multiply(gen(p, "b+", -1), gen(p, "k"), bud);
  Element comm = p.multiply(y, gen(p, "b+"), bud) -
                 p.multiply(gen(p, "b+"), y, bud);
  CHECK(comm == p.constant(Scalar(1)));
}

TEST_CASE("conjugation consistency: sigma multiplicative on words") {
  // e g h and conj(g) conj(h) e normalize identically for all pairs
  BuiltinInstance inst = make_builtin("osp12z", {});
  const Presentation& p = inst.pres;
  Budget bud{p.budget_limit()};
  Element z = gen(p, "z");
  std::vector<Element> conj = {Scalar(-1) * gen(p, "b+"), gen(p, "k"),
                               gen(p, "z")};
  for (std::size_t g = 0; g < 3; ++g)
    for (std::size_t h = 0; h < 3; ++h) {
      Element lhs = p.multiply(
          p.multiply(z, gen(p, p.gen(g).name), bud), gen(p, p.gen(h).name),
          bud);
      Element rhs =
          p.multiply(p.multiply(conj[g], conj[h], bud), z, bud);
      CHECK(lhs == rhs);
    }
}

TEST_CASE("chains: atoms clear through division") {
  BuiltinInstance inst = make_builtin("pplus", {});
  Presentation p = inst.pres;
  p.mark_invertible("b1p");
  LocContext ctx(&p);
  Budget bud{p.budget_limit() * 16};

  Element m2m = gen(p, "b2m") - p.multiply(gen(p, "t"), gen(p, "b1p", -1), bud);
  int atom = ctx.register_atom("m2m", m2m, std::nullopt);

  // inv(m2m) * m2m and m2m * inv(m2m) both collapse to 1
  LocExpr a = LocExpr::from_atom(atom).mul(LocExpr::from_element(m2m), ctx, bud);
  CHECK(a.is_polynomial());
  CHECK(a.poly() == p.constant(Scalar(1)));
  LocExpr b = LocExpr::from_element(m2m).mul(LocExpr::from_atom(atom), ctx, bud);
  CHECK(b.is_polynomial());
  CHECK(b.poly() == p.constant(Scalar(1)));
}

TEST_CASE("clear_and_verify is sound on failure") {
  BuiltinInstance inst = make_builtin("osp12z", {});
  Presentation p = inst.pres;
  LocContext ctx(&p);
  Budget bud{p.budget_limit() * 16};
  // z has no left factor b+, so inv(b+) z cannot clear without steps
  int atom = ctx.register_atom("bplus", gen(p, "b+"), std::nullopt);
  LocExpr bad = LocExpr::from_atom(atom).mul(
      LocExpr::from_element(gen(p, "z")), ctx, bud);
  LocExpr zero;
  auto out = clear_and_verify(ctx, bad, zero, {}, bud);
  CHECK_FALSE(out.zero);

  // while a true but nonzero identity reports its exact residual
  LocExpr one = LocExpr::from_element(p.constant(Scalar(1)));
  LocExpr two = LocExpr::from_element(p.constant(Scalar(3)));
  auto out2 = clear_and_verify(ctx, one, two, {}, bud);
  CHECK(out2.cleared);
  CHECK_FALSE(out2.zero);
  CHECK(out2.residual == p.constant(Scalar(-2)));
}

TEST_CASE("recipes: lmul clears a left inverse factor") {
  BuiltinInstance inst = make_builtin("osp12z", {});
  Presentation p = inst.pres;
  LocContext ctx(&p);
  Budget bud{p.budget_limit() * 16};
  int atom = ctx.register_atom("bplus", gen(p, "b+"), std::nullopt);
  // inv(b+) z b+  =  -z   (z anticommutes with b+)
  LocExpr lhs = LocExpr::from_atom(atom)
                    .mul(LocExpr::from_element(gen(p, "z")), ctx, bud)
                    .mul(LocExpr::from_element(gen(p, "b+")), ctx, bud);
  LocExpr rhs = LocExpr::from_element(Scalar(-1) * gen(p, "z"));
  std::vector<RecipeStepValue> steps(1);
  steps[0].kind = RecipeStepValue::Kind::LMul;
  steps[0].operand = LocExpr::from_element(gen(p, "b+"));
  auto out = clear_and_verify(ctx, lhs, rhs, steps, bud);
  CHECK(out.zero);
}
