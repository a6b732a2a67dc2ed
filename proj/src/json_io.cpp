#include "confgauss/json_io.hpp"

#include <cmath>
#include <cstdio>

namespace confgauss {

namespace {

std::string format_number(double x) {
    if (!std::isfinite(x)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void emit(const ojson& j, std::string& out, int indent, int depth) {
    const bool pretty = indent > 0;
    const std::string pad(pretty ? static_cast<std::size_t>(indent * (depth + 1)) : 0, ' ');
    const std::string close(pretty ? static_cast<std::size_t>(indent * depth) : 0, ' ');
    if (j.is_object()) {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += pretty ? "{\n" : "{";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) out += pretty ? ",\n" : ",";
            first = false;
            out += pad + ojson(it.key()).dump() + (pretty ? ": " : ":");
            emit(it.value(), out, indent, depth + 1);
        }
        out += (pretty ? "\n" : "") + close + "}";
    } else if (j.is_array()) {
        out += "[";
        for (std::size_t k = 0; k < j.size(); ++k) {
            if (k) out += pretty ? ", " : ",";
            emit(j[k], out, indent, depth + 1);
        }
        out += "]";
    } else if (j.is_number_float()) {
        out += format_number(j.get<double>());
    } else {
        out += j.dump();
    }
}

}  // namespace

std::string dump_json(const ojson& j, int indent) {
    std::string out;
    emit(j, out, indent, 0);
    return out;
}

}  // namespace confgauss
