#pragma once

#include <string>

#include "json.hpp"

namespace confgauss {

using ojson = nlohmann::ordered_json;

// Insertion-ordered output; floats with 17 significant digits, non-finite as null.
std::string dump_json(const ojson& j, int indent = 2);

}  // namespace confgauss
