#include "bellpoly/polytope.hpp"

#include <stdexcept>

namespace bellpoly {

std::string_view to_string(PolytopeLabel label) {
    return label == PolytopeLabel::local ? "local" : "nosignaling";
}

PolytopeLabel parse_label(std::string_view text) {
    if (text == "local") return PolytopeLabel::local;
    if (text == "nosignaling") return PolytopeLabel::nosignaling;
    throw std::invalid_argument("unknown polytope label '" + std::string(text) + "' (expected local|nosignaling)");
}

void HPolytope::check_shape() const {
    for (std::size_t i = 0; i < inequalities.size(); ++i) {
        if (inequalities[i].normal.size() != dim) {
            throw std::invalid_argument("inequality " + std::to_string(i) + " has normal of length " +
                                        std::to_string(inequalities[i].normal.size()) + ", expected " +
                                        std::to_string(dim));
        }
    }
}

bool HPolytope::contains(const RVector& z) const {
    for (const auto& ineq : inequalities) {
        if (dot(ineq.normal, z) > ineq.offset) return false;
    }
    return true;
}

std::vector<std::size_t> HPolytope::tight_set(const RVector& z) const {
    std::vector<std::size_t> tight;
    for (std::size_t i = 0; i < inequalities.size(); ++i) {
        if (dot(inequalities[i].normal, z) == inequalities[i].offset) tight.push_back(i);
    }
    return tight;
}

}  // namespace bellpoly
