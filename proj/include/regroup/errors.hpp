#pragma once

#include <stdexcept>
#include <string>

namespace regroup {

// Base class for all recoverable input/usage errors. The CLI maps these to
// exit code 2; anything else escaping to main() is an internal error (3).
struct Error : std::runtime_error {
    explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

// Parse failure in the structural-Verilog reader; carries a 1-based line.
struct ParseError : Error {
    ParseError(int line_no, const std::string &msg)
        : Error("line " + std::to_string(line_no) + ": " + msg), line(line_no)
    {
    }
    int line;
};

// Violation of the JSON interchange schema; carries a JSON pointer path.
struct SchemaError : Error {
    SchemaError(std::string ptr, const std::string &msg)
        : Error("at " + ptr + ": " + msg), pointer(std::move(ptr))
    {
    }
    std::string pointer;
};

} // namespace regroup
