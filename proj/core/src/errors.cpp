#include "dynoco/errors.hpp"

namespace dynoco::detail {

void throw_contract(const std::string& what) { throw ContractViolation(what); }
void throw_degenerate(const std::string& what) { throw DegenerateState(what); }
void throw_config(const std::string& what) { throw ConfigurationError(what); }

}  // namespace dynoco::detail
