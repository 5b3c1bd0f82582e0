#pragma once

#include <stdexcept>
#include <string>

namespace svcq {

// Raised for malformed user input (files, CLI values). The CLI maps this
// to exit code 2; everything else maps to exit code 1.
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace svcq
