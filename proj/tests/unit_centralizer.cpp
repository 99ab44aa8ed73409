#include <doctest.h>

#include "ospfield/builtins.hpp"
#include "ospfield/centralizer.hpp"

using namespace ospfield;

namespace {

std::vector<Element> all_gens(const Presentation& p) {
  std::vector<Element> out;
  for (std::size_t g = 0; g < p.ngens(); ++g)
    out.push_back(p.generator_element(static_cast<int>(g)));
  return out;
}

}  // namespace

TEST_CASE("monomial basis counts") {
  BuiltinInstance osp12 = make_builtin("osp", {1, 2});
  CHECK(monomial_basis(osp12.pres, 2).size() == 10);  // C(5,2)
  CHECK(monomial_basis(osp12.pres, 0).size() == 1);
  BuiltinInstance osp14 = make_builtin("osp", {1, 4});
  CHECK(monomial_basis(osp14.pres, 1).size() == 11);  // 10 generators + 1
  Presentation loc = osp12.pres;
  loc.mark_invertible("b+");
  CHECK_THROWS_AS(monomial_basis(loc, 2), EngineError);
}

TEST_CASE("degree-bounded center of the full U(osp(1,2))") {
  BuiltinInstance inst = make_builtin("ospfull", {1, 2});
  const Presentation& p = inst.pres;
  auto gens = all_gens(p);
  std::vector<std::size_t> dims;
  for (int d : {0, 2, 4})
    dims.push_back(
        centralizer_basis({&p, gens, d, CentralizerMode::Commute}).size());
  CHECK(dims == std::vector<std::size_t>{1, 2, 3});

  // every basis element individually passes is_central
  auto basis = centralizer_basis({&p, gens, 4, CentralizerMode::Commute});
  for (const auto& c : basis) CHECK(is_central(p, c).central);
}

TEST_CASE("monotonicity of the centralizer filtration") {
  BuiltinInstance inst = make_builtin("S3", {});
  const Presentation& p = inst.pres;
  auto gens = all_gens(p);
  std::size_t prev = 0;
  for (int d = 0; d <= 4; ++d) {
    auto basis = centralizer_basis({&p, gens, d, CentralizerMode::Commute});
    CHECK(basis.size() >= prev);
    prev = basis.size();
  }
}

TEST_CASE("centralizer of U(f) at degree 1 contains z and t") {
  BuiltinInstance inst = make_builtin("f", {});
  const Presentation& p = inst.pres;
  auto basis =
      centralizer_basis({&p, all_gens(p), 1, CentralizerMode::Commute});
  // {1, z, t}
  CHECK(basis.size() == 3);
  CHECK(is_central(p, p.generator_element(p.require_position("z"))).central);
  CHECK(is_central(p, p.generator_element(p.require_position("t"))).central);
}

TEST_CASE("Casimir elements are central, generators are not") {
  // omega in U(sl2)
  BuiltinInstance sl2 = make_builtin("sl2", {});
  const Presentation& p = sl2.pres;
  Budget bud{p.budget_limit()};
  Element e = p.generator_element(0), k = p.generator_element(1),
          f = p.generator_element(2);
  Element omega = Scalar(4) * p.multiply(e, f, bud) + p.multiply(k, k, bud) -
                  Scalar(2) * k;
  CHECK(is_central(p, omega).central);

  // b+ in U(osp(1,2)) fails with residual [k,b+] = b+
  BuiltinInstance osp = make_builtin("osp", {1, 2});
  auto rep = is_central(osp.pres, osp.pres.generator_element(0));
  REQUIRE_FALSE(rep.central);
  bool saw = false;
  for (const auto& [g, r] : rep.residuals)
    if (g == "k" && r == Scalar(-1) * osp.pres.generator_element(0)) saw = true;
  CHECK(saw);
}

TEST_CASE("supercommutant mode uses the super bracket") {
  BuiltinInstance osp = make_builtin("osp", {1, 2});
  const Presentation& p = osp.pres;
  std::vector<Element> s = {p.generator_element(0)};
  auto basis = centralizer_basis({&p, s, 3, CentralizerMode::Supercommute});
  Budget bud{p.budget_limit()};
  auto parities = p.parities();
  for (const auto& c : basis) {
    // split into parity parts; each part super-brackets to zero with b+
    Element even, odd;
    for (const auto& [m, coeff] : c.terms()) {
      Element mono = Element::monomial(m, coeff);
      if (*mono.parity(parities) == 0)
        even += mono;
      else
        odd += mono;
    }
    CHECK(p.bracket(even, s[0], BracketKind::Comm, bud).is_zero());
    CHECK(p.bracket(odd, s[0], BracketKind::Acomm, bud).is_zero());
  }
}
