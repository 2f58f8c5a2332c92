#include "xot/errors.hpp"

namespace xot {

ValidationError::ValidationError(std::size_t step, const std::string& what)
    : Error("step " + std::to_string(step) + ": " + what), step_(step) {}

ParseError::ParseError(std::size_t offset, const std::string& what)
    : Error("parse error at offset " + std::to_string(offset) + ": " + what),
      offset_(offset) {}

} // namespace xot
