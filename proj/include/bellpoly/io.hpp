// JSON encodings of points, polytopes and LP results, plus the on-disk vertex cache.

#ifndef BELLPOLY_IO_HPP
#define BELLPOLY_IO_HPP

#include "bellpoly/lpsolve.hpp"
#include "bellpoly/polytope.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

namespace bellpoly {

using Json = nlohmann::ordered_json;

/// Malformed or inconsistent JSON input.
class FormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

Json to_json(const Rational& q);
Json to_json(const RVector& v);
Json to_json(const Scenario& s);

/// Accepts "p/q" strings and plain integers.
Rational rational_from_json(const Json& j);
RVector rvector_from_json(const Json& j);
Scenario scenario_from_json(const Json& j);

/**
 * Point file: {"scenario":[nx,ny,na,nb], "basis":"reduced"|"full", "coords":[...]}.
 *
 * A "full" point lists P(ab|xy) in Scenario::cell_index order (x, y, a, b
 * from slowest to fastest) and is mapped through to_reduced.
 */
ReducedPoint point_from_json(const Json& j);
Json point_to_json(const ReducedPoint& p);

/// {"scenario":[...], "label":"local"|"nosignaling", "vertices":[[...], ...]}
VPolytope polytope_from_json(const Json& j);
Json polytope_to_json(const VPolytope& v);

/// {"status", "distance", "witness", "weights"}
Json distance_to_json(const DistanceResult& d);

/// Reads and parses a JSON file; FormatError names the file on failure.
Json read_json_file(const std::filesystem::path& path);

/// Writes through a temporary sibling and renames it into place. The directory must exist.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/**
 * Vertex lists on disk, one file per (scenario, label, H-rep version).
 *
 * The version is part of the file name, so changing the inequality system
 * orphans old entries instead of serving them.
 */
class PolytopeCache {
  public:
    explicit PolytopeCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    std::filesystem::path path_for(const Scenario& s, PolytopeLabel label) const;
    /// Missing file -> nullopt. Unreadable or mismatched contents -> FormatError.
    std::optional<VPolytope> load(const Scenario& s, PolytopeLabel label) const;
    void store(const VPolytope& v) const;
    const std::filesystem::path& dir() const { return dir_; }

  private:
    std::filesystem::path dir_;
};

/// NS vertices from the cache when present, otherwise computed and stored. nullptr disables caching.
VPolytope cached_ns_polytope(const Scenario& s, const PolytopeCache* cache);

}  // namespace bellpoly

#endif  // BELLPOLY_IO_HPP
