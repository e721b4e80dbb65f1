#pragma once

#include <stdexcept>
#include <string>

namespace metgraph {

/// Common exception type for all library failures (bad input, singular
/// matrices, parse errors). The message names the offending vertex, edge
/// or source line where applicable.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace metgraph
