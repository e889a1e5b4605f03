#pragma once

#include <stdexcept>

namespace stpete {

// raised when a floating point evaluation cannot meet its accuracy contract
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace stpete
