#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ospfield/presentation.hpp"

namespace ospfield {

enum class Family { A1, Afermi, A, HatA, S3, S4, F, Sl2 };

struct AlgebraDescriptor {
  Family family;
  int r = 0, s = 0, t = 0;
};

/// Builds the model presentation for a descriptor; confluence-checked.
Presentation build_reference(const AlgebraDescriptor& d);

struct GraphEdge {
  int a, b;           // generator positions, a < b
  std::string label;  // empty for the plain shapes
};

/// Directed edge a->b means ab - ba = 1; dotted means ab = -ba; absent
/// pairs commute. Rules outside those shapes carry their tail as a label.
struct RelationGraph {
  std::vector<std::string> vertices;
  std::vector<GraphEdge> directed;
  std::vector<GraphEdge> dotted;
  std::string to_dot(const std::string& name) const;
};

RelationGraph relation_graph(const Presentation& p);

}  // namespace ospfield
