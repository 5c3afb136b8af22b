#include "pirg/errors.hpp"

#include <utility>

namespace pirg {

ParseError::ParseError(std::string field, const std::string& message)
    : Error(field + ": " + message), field_(std::move(field)) {}

}  // namespace pirg
