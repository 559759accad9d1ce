#include "bellpoly/localpoly.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace bellpoly {

ReducedPoint vertex_from_strategy(const Scenario& s, const TransferFunction& f) {
    if (f.fa.size() != static_cast<std::size_t>(s.nx) || f.fb.size() != static_cast<std::size_t>(s.ny)) {
        throw std::invalid_argument("strategy must assign an output to every input");
    }
    for (int v : f.fa)
        if (v < 0 || v >= s.na) throw std::invalid_argument("Alice output " + std::to_string(v) + " out of range");
    for (int v : f.fb)
        if (v < 0 || v >= s.nb) throw std::invalid_argument("Bob output " + std::to_string(v) + " out of range");

    ReducedPoint p(s);
    for (int x = 0; x < s.nx; ++x)
        if (f.fa[x] < s.na - 1) p.coords[s.alice_index(f.fa[x], x)] = 1;
    for (int y = 0; y < s.ny; ++y)
        if (f.fb[y] < s.nb - 1) p.coords[s.bob_index(f.fb[y], y)] = 1;
    for (int x = 0; x < s.nx; ++x) {
        if (f.fa[x] == s.na - 1) continue;
        for (int y = 0; y < s.ny; ++y) {
            if (f.fb[y] < s.nb - 1) p.coords[s.joint_index(f.fa[x], f.fb[y], x, y)] = 1;
        }
    }
    return p;
}

std::uint64_t local_vertex_count(const Scenario& s) {
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t count = 1;
    auto mul = [&](int base, int times) {
        for (int i = 0; i < times; ++i) {
            if (count > kMax / static_cast<std::uint64_t>(base)) {
                count = kMax;
                return;
            }
            count *= static_cast<std::uint64_t>(base);
        }
    };
    mul(s.na, s.nx);
    mul(s.nb, s.ny);
    return count;
}

VPolytope enumerate_local_vertices(const Scenario& s, std::uint64_t cap) {
    const std::uint64_t count = local_vertex_count(s);
    if (count > cap) {
        throw std::length_error("local polytope of scenario " + s.str() + " would have " + std::to_string(count) +
                                " vertices, above the enumeration cap of " + std::to_string(cap));
    }
    VPolytope poly{s, PolytopeLabel::local, {}};
    poly.vertices.reserve(count);
    TransferFunction f{std::vector<int>(s.nx, 0), std::vector<int>(s.ny, 0)};
    for (std::uint64_t k = 0; k < count; ++k) {
        poly.vertices.push_back(vertex_from_strategy(s, f).coords);
        // odometer increment, fb[ny-1] least significant
        int i = s.ny - 1;
        for (; i >= 0; --i) {
            if (++f.fb[i] < s.nb) break;
            f.fb[i] = 0;
        }
        if (i >= 0) continue;
        for (int j = s.nx - 1; j >= 0; --j) {
            if (++f.fa[j] < s.na) break;
            f.fa[j] = 0;
        }
    }
    return poly;
}

}  // namespace bellpoly
