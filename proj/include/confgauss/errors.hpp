#pragma once

#include <stdexcept>
#include <string>

namespace confgauss {

// Raised for every domain failure: degenerate inputs, umbilic grids, undefined duals.
class GeometryError : public std::runtime_error {
public:
    explicit GeometryError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace confgauss
