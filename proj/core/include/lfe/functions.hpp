#pragma once

#include <string>
#include <vector>

#include "lfe/solvers.hpp"

namespace lfe {

/// Built-in test functions: sepexp(wx,wy), sinxy, u1, u2, f1, f2, f3, f4.
Oracle make_function(const std::string& spec);

std::vector<std::string> function_names();

}  // namespace lfe
