#pragma once

#include <stdexcept>
#include <string>

namespace rclab {

/// Raised for precondition failures and malformed inputs across the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace rclab
