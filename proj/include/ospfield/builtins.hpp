#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ospfield/liesuper.hpp"
#include "ospfield/presentation.hpp"

namespace ospfield {

/// An instantiated builtin algebra: the working presentation plus the
/// Lie-superalgebra table when one backs it.
struct BuiltinInstance {
  Presentation pres;
  std::optional<LieSuperAlgebra> lie;
};

bool is_builtin(const std::string& name);

/// Builtins with parameters: osp(1,2n) via osp(1,2)/osp(1,4)/osp(1,6)
/// selectors, A(r,s,t), hatA(r,s,t). Throws UnknownBuiltin / Invalid-
/// Parameters.
BuiltinInstance make_builtin(const std::string& name,
                             const std::vector<int>& args);

/// Resolves CLI selectors like "osp12", "U-n+", "A(1,1,0)".
BuiltinInstance make_builtin_selector(const std::string& selector);

/// Generator names (plus aliases) for the parser's symbol oracle.
std::vector<std::string> builtin_symbols(const std::string& name,
                                         const std::vector<int>& args);

/// Rows for the `list` command: selector, description.
std::vector<std::pair<std::string, std::string>> builtin_catalog();

}  // namespace ospfield
