#include "ospfield/reference.hpp"

#include <sstream>

namespace ospfield {

namespace {

void commute_rest(Presentation& p) {
  int n = static_cast<int>(p.ngens());
  for (int hi = 1; hi < n; ++hi)
    for (int lo = 0; lo < hi; ++lo)
      if (!p.has_rule(hi, lo)) p.set_rule(hi, lo, Scalar(1), Element());
}

}  // namespace

Presentation build_reference(const AlgebraDescriptor& d) {
  auto num = [](const std::string& base, int i) {
    return base + std::to_string(i + 1);
  };
  switch (d.family) {
    case Family::A1: {
      Presentation p("A1", {{"x", 0, false}, {"y", 0, false}});
      p.set_rule(1, 0, Scalar(1), p.constant(Scalar(-1)));  // yx = xy - 1
      p.set_validated(true);
      return p;
    }
    case Family::Afermi: {
      Presentation p("Afermi", {{"u", 1, false}, {"v", 1, false}});
      p.set_rule(1, 0, Scalar(-1), p.constant(Scalar(1)));  // vu = -uv + 1
      p.set_validated(true);
      return p;
    }
    case Family::S3: {
      Presentation p("S3", {{"x", 0, false}, {"y", 0, false}, {"z", 0, false}});
      p.set_rule(1, 0, Scalar(1), p.constant(Scalar(-1)));
      p.set_rule(2, 0, Scalar(-1), Element());
      p.set_rule(2, 1, Scalar(-1), Element());
      p.set_validated(true);
      return p;
    }
    case Family::S4: {
      Presentation p("S4", {{"x1", 0, false},
                            {"y1", 0, false},
                            {"x2", 0, false},
                            {"y2", 0, false}});
      p.set_rule(1, 0, Scalar(1), p.constant(Scalar(-1)));  // y1x1 = x1y1 - 1
      p.set_rule(2, 0, Scalar(-1), Element());              // x2x1 = -x1x2
      p.set_rule(2, 1, Scalar(-1), Element());              // x2y1 = -y1x2
      p.set_rule(3, 0, Scalar(-1), Element());              // y2x1 = -x1y2
      p.set_rule(3, 1, Scalar(-1), Element());              // y2y1 = -y1y2
      p.set_rule(3, 2, Scalar(1), p.constant(Scalar(-1)));  // y2x2 = x2y2 - 1
      p.set_validated(true);
      return p;
    }
    case Family::A: {
      if (d.r < 0 || d.s < 0 || d.t < 0)
        throw EngineError(ErrorKind::InvalidParameters, "A(r,s,t) needs r,s,t >= 0");
      std::vector<GeneratorInfo> gens;
      for (int i = 0; i < d.r; ++i) {
        gens.push_back({num("x", i), 0, false});
        gens.push_back({num("y", i), 0, false});
      }
      for (int j = 0; j < d.s; ++j) {
        gens.push_back({num("u", j), 1, false});
        gens.push_back({num("v", j), 1, false});
      }
      for (int k = 0; k < d.t; ++k) gens.push_back({num("z", k), 0, false});
      std::ostringstream nm;
      nm << "A(" << d.r << "," << d.s << "," << d.t << ")";
      Presentation p(nm.str(), std::move(gens));
      for (int i = 0; i < d.r; ++i)
        p.set_rule(2 * i + 1, 2 * i, Scalar(1), p.constant(Scalar(-1)));
      for (int j = 0; j < d.s; ++j) {
        int u = 2 * d.r + 2 * j;
        p.set_rule(u + 1, u, Scalar(-1), p.constant(Scalar(1)));
      }
      commute_rest(p);
      p.set_validated(true);
      return p;
    }
    case Family::HatA: {
      if (d.r < 0 || d.s < 0 || d.t < 0)
        throw EngineError(ErrorKind::InvalidParameters,
                          "hatA(r,s,t) needs r,s,t >= 0");
      std::vector<GeneratorInfo> gens;
      for (int i = 0; i < d.r; ++i) {
        gens.push_back({num("x", i), 0, false});
        gens.push_back({num("y", i), 0, false});
      }
      for (int j = 0; j < d.s; ++j) {
        gens.push_back({num("u", j), 1, false});
        gens.push_back({num("w", j), 1, false});
      }
      for (int k = 0; k < d.t; ++k) gens.push_back({num("z", k), 0, false});
      std::ostringstream nm;
      nm << "hatA(" << d.r << "," << d.s << "," << d.t << ")";
      Presentation p(nm.str(), std::move(gens));
      for (int i = 0; i < d.r; ++i)
        p.set_rule(2 * i + 1, 2 * i, Scalar(1), p.constant(Scalar(-1)));
      for (int j = 0; j < d.s; ++j) {
        int u = 2 * d.r + 2 * j;
        p.set_rule(u + 1, u, Scalar(-1), Element());  // w u = -u w
      }
      commute_rest(p);
      p.set_validated(true);
      return p;
    }
    case Family::F: {
      // Nilpotent superalgebra f: {u,u} = z, {w,w} = t, {u,w} = 0.
      Presentation p("f", {{"z", 0, false},
                           {"t", 0, false},
                           {"u", 1, false},
                           {"w", 1, false}});
      commute_rest(p);
      p.set_rule(3, 2, Scalar(-1), Element());
      p.set_self_rule(2, p.generator_element(0) * scalar(1, 2));
      p.set_self_rule(3, p.generator_element(1) * scalar(1, 2));
      p.set_validated(true);
      return p;
    }
    case Family::Sl2: {
      Presentation p("sl2", {{"e", 0, false}, {"k", 0, false}, {"f", 0, false}});
      p.set_rule(1, 0, Scalar(1), Scalar(2) * p.generator_element(0));
      p.set_rule(2, 0, Scalar(1), Scalar(-1) * p.generator_element(1));
      p.set_rule(2, 1, Scalar(1), Scalar(2) * p.generator_element(2));
      p.set_validated(true);
      return p;
    }
  }
  throw EngineError(ErrorKind::InvalidParameters, "unknown family");
}

RelationGraph relation_graph(const Presentation& p) {
  RelationGraph g;
  g.vertices = p.names();
  int n = static_cast<int>(p.ngens());
  for (int hi = 1; hi < n; ++hi)
    for (int lo = 0; lo < hi; ++lo) {
      const PairRule& r = p.rule(hi, lo);
      bool scalar_tail = r.tail.is_zero() || (r.tail.term_count() == 1 &&
                                              r.tail.terms().begin()->first
                                                  .is_unit());
      if (r.q == Scalar(1)) {
        if (r.tail.is_zero()) continue;  // commuting pair
        if (scalar_tail) {
          Scalar c = r.tail.terms().begin()->second;
          // hi*lo - lo*hi = c: c = -1 means lo*hi - hi*lo = 1.
          if (c == Scalar(-1))
            g.directed.push_back({lo, hi, ""});
          else if (c == Scalar(1))
            g.directed.push_back({hi, lo, ""});
          else
            g.directed.push_back({lo, hi, p.render(r.tail)});
        } else {
          g.directed.push_back({lo, hi, p.render(r.tail)});
        }
      } else if (r.q == Scalar(-1)) {
        if (r.tail.is_zero())
          g.dotted.push_back({lo, hi, ""});
        else
          g.dotted.push_back({lo, hi, p.render(r.tail)});
      } else {
        throw EngineError(ErrorKind::UnclassifiablePair,
                          "rule (" + p.gen(hi).name + "," + p.gen(lo).name +
                              ") has q outside {1,-1}");
      }
    }
  return g;
}

std::string RelationGraph::to_dot(const std::string& name) const {
  std::ostringstream os;
  os << "digraph \"" << name << "\" {\n";
  os << "  rankdir=LR;\n";
  for (const auto& v : vertices) os << "  \"" << v << "\";\n";
  for (const auto& e : directed) {
    os << "  \"" << vertices[e.a] << "\" -> \"" << vertices[e.b] << "\"";
    if (!e.label.empty()) os << " [label=\"" << e.label << "\"]";
    os << ";\n";
  }
  for (const auto& e : dotted) {
    os << "  \"" << vertices[e.a] << "\" -> \"" << vertices[e.b]
       << "\" [dir=none, style=dotted";
    if (!e.label.empty()) os << ", label=\"" << e.label << "\"";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace ospfield
