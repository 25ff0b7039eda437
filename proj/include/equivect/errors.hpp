/// Engine-level error type.  Every domain failure carries one of the named
/// error identifiers documented in the README; the CLI maps them to exit
/// code 1 and a JSON error object.
#pragma once

#include <stdexcept>
#include <string>

namespace equivect {

struct EngineError : std::runtime_error {
    std::string name;
    EngineError(std::string errorName, const std::string& message)
        : std::runtime_error(message), name(std::move(errorName)) {}
};

[[noreturn]] inline void fail(const std::string& name, const std::string& message) {
    throw EngineError(name, message);
}

}  // namespace equivect
