#include "cli.hpp"

#include "bellpoly/efficiency.hpp"
#include "bellpoly/io.hpp"
#include "bellpoly/localpoly.hpp"
#include "bellpoly/nosignal.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <sstream>

namespace bellpoly::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "1.0.0";

/// Bad arguments or unusable input files; maps to kExitUsage.
class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Options {
    Config config;
    std::string cache_dir;
    bool json = false;

    std::string scenario;
    std::string label = "local";
    std::string format = "json";
    std::string model = "merged";
    std::string path = "symmetric";
    std::string tol;
    bool table1 = false;
    std::vector<std::string> rows;
    std::string point_file;
    std::string vertices_file;
    std::string norm = "l1";
    std::size_t grid = 11;
    std::string out_path;
    std::optional<std::size_t> distance_vertex;
    std::string eta_range = "0,1";
};

Scenario parse_scenario(const std::string& text) {
    try {
        return Scenario::parse(text);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
}

std::unique_ptr<PolytopeCache> make_cache(const Config& c) {
    if (!c.use_cache) return nullptr;
    return std::make_unique<PolytopeCache>(c.cache_dir);
}

std::string decimal(const Rational& q) { return q.to_decimal(4); }

Json critical_json(const CriticalResult& r, const VPolytope& ns) {
    Json j;
    j["critical"] = decimal(r.critical_t);
    j["critical_t"] = to_json(r.critical_t);
    j["t_inside"] = to_json(r.t_inside);
    j["t_outside"] = to_json(r.t_outside);
    j["binding_vertex"] = r.binding_vertex;
    j["binding_coords"] = to_json(ns.vertices.at(r.binding_vertex));
    j["membership_tests"] = r.membership_tests;
    return j;
}

class Runner {
  public:
    Runner(Options& o, std::ostream& out) : o_(o), out_(out), start_(std::chrono::steady_clock::now()) {}

    Json record(const std::string& command) const {
        Json j;
        j["command"] = command;
        j["version"] = kVersion;
        return j;
    }

    void emit(Json record) const {
        if (o_.config.timing) {
            record["wall_time"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        }
        out_ << record.dump(2) << '\n';
    }

    void footer() const {
        if (!o_.config.timing) return;
        out_ << "time      " << std::fixed << std::setprecision(3)
             << std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count() << "s\n";
        out_.unsetf(std::ios::floatfield);
    }

    int vertices() {
        const Scenario s = parse_scenario(o_.scenario);
        PolytopeLabel label;
        try {
            label = parse_label(o_.label);
        } catch (const std::exception& e) {
            throw UsageError(e.what());
        }
        const auto cache = make_cache(o_.config);
        const VPolytope v = label == PolytopeLabel::local ? enumerate_local_vertices(s, o_.config.enumeration_cap)
                                                          : cached_ns_polytope(s, cache.get());
        if (o_.format == "count") {
            if (o_.json) {
                Json r = record("vertices");
                r["scenario"] = s.str();
                r["label"] = std::string(to_string(label));
                r["result"] = {{"count", v.vertices.size()}};
                emit(std::move(r));
            } else {
                out_ << v.vertices.size() << '\n';
            }
        } else {
            out_ << polytope_to_json(v).dump() << '\n';
        }
        return kExitOk;
    }

    CriticalOptions critical_options() const {
        CriticalOptions c;
        c.tolerance = o_.config.tolerance;
        c.jobs = o_.config.parallelism;
        return c;
    }

    int critical() {
        if (o_.table1) return table1();
        if (o_.scenario.empty()) throw UsageError("critical needs --scenario (or --table1)");
        const Scenario s = parse_scenario(o_.scenario);
        const ModelKind kind = parse_model_arg();
        const EfficiencyPath path = parse_path_arg();
        const auto cache = make_cache(o_.config);
        const CriticalSolver solver(EfficiencyModel::make(kind, s), cached_ns_polytope(s, cache.get()),
                                    critical_options());
        const CriticalResult r = solver.solve(path);
        if (o_.json) {
            Json rec = record("critical");
            rec["scenario"] = s.str();
            rec["model"] = std::string(to_string(kind));
            rec["path"] = path.str();
            rec["tolerance"] = to_json(o_.config.tolerance);
            rec["result"] = critical_json(r, solver.ns_vertices());
            emit(std::move(rec));
            return kExitOk;
        }
        out_ << "scenario  " << s.str() << '\n'
             << "model     " << to_string(kind) << '\n'
             << "path      " << path.str() << '\n'
             << "critical  " << decimal(r.critical_t) << '\n'
             << "bracket   [" << r.t_inside.str() << ", " << r.t_outside.str() << "]\n"
             << "vertex    " << r.binding_vertex << '\n'
             << "tests     " << r.membership_tests << '\n';
        footer();
        return kExitOk;
    }

    int table1() {
        std::vector<std::pair<int, int>> inputs;
        if (o_.rows.empty()) {
            inputs.assign(kTable1Inputs.begin(), kTable1Inputs.end());
        } else {
            for (const auto& text : o_.rows) {
                const Scenario s = parse_scenario(text + ",2,2");
                inputs.emplace_back(s.nx, s.ny);
            }
        }
        const auto cache = make_cache(o_.config);
        static const char* columns[] = {"sym/add", "sym/no-add", "one-sided/add", "one-sided/no-add"};
        std::vector<Table1Row> rows;
        std::vector<VPolytope> polys;
        for (const auto& [nx, ny] : inputs) {
            const Scenario s = Scenario::make(nx, ny, 2, 2);
            polys.push_back(cached_ns_polytope(s, cache.get()));
            rows.push_back(table1_row(polys.back(), critical_options()));
        }
        if (o_.json) {
            Json rec = record("table1");
            rec["tolerance"] = to_json(o_.config.tolerance);
            rec["columns"] = Json::array({columns[0], columns[1], columns[2], columns[3]});
            Json jrows = Json::array();
            for (std::size_t i = 0; i < rows.size(); ++i) {
                Json jr;
                jr["inputs"] = Json::array({rows[i].inputs.first, rows[i].inputs.second});
                jr["one_sided_path"] = rows[i].cells[2].path.str();
                Json cells = Json::array();
                for (const auto& c : rows[i].cells) {
                    Json jc = critical_json(c, polys[i]);
                    jc["model"] = std::string(to_string(c.model.kind));
                    jc["path"] = c.path.str();
                    cells.push_back(std::move(jc));
                }
                jr["cells"] = std::move(cells);
                jrows.push_back(std::move(jr));
            }
            rec["rows"] = std::move(jrows);
            emit(std::move(rec));
            return kExitOk;
        }
        out_ << std::left << std::setw(8) << "(A,B)";
        for (const char* c : columns) out_ << std::setw(18) << c;
        out_ << '\n';
        for (const auto& row : rows) {
            std::ostringstream label;
            label << '(' << row.inputs.first << ',' << row.inputs.second << ')';
            out_ << std::setw(8) << label.str();
            for (const auto& c : row.cells) out_ << std::setw(18) << decimal(c.critical_t);
            out_ << '\n';
        }
        out_ << std::right << "\nexact brackets [t_inside, t_outside], binding vertex:\n";
        for (const auto& row : rows) {
            for (std::size_t k = 0; k < row.cells.size(); ++k) {
                const auto& c = row.cells[k];
                out_ << "  (" << row.inputs.first << ',' << row.inputs.second << ") " << columns[k] << " ["
                     << c.path.str() << "]: [" << c.t_inside.str() << ", " << c.t_outside.str() << "] v"
                     << c.binding_vertex << '\n';
            }
        }
        footer();
        return kExitOk;
    }

    int distance() {
        ReducedPoint x = [&] {
            try {
                return point_from_json(read_json_file(o_.point_file));
            } catch (const FormatError& e) {
                throw UsageError(e.what());
            }
        }();
        if (!o_.scenario.empty()) {
            const Scenario s = parse_scenario(o_.scenario);
            if (!(s == x.scenario)) {
                throw UsageError("scenario mismatch: point file is " + x.scenario.str() + ", --scenario is " + s.str());
            }
        }
        VPolytope target;
        if (!o_.vertices_file.empty()) {
            try {
                target = polytope_from_json(read_json_file(o_.vertices_file));
            } catch (const FormatError& e) {
                throw UsageError(e.what());
            }
            if (!(target.scenario == x.scenario)) {
                throw UsageError("scenario mismatch: point is " + x.scenario.str() + ", vertex file is " +
                                 target.scenario.str());
            }
        } else {
            target = enumerate_local_vertices(x.scenario, o_.config.enumeration_cap);
        }
        if (o_.norm != "l1" && o_.norm != "linf") throw UsageError("--norm must be l1 or linf");
        const MembershipResult m = membership(target, x);
        const DistanceResult d = o_.norm == "l1" ? distance_l1(target, x) : distance_linf(target, x);
        if (o_.json) {
            Json rec = record("distance");
            rec["scenario"] = x.scenario.str();
            rec["polytope"] = std::string(to_string(target.label));
            rec["norm"] = o_.norm;
            Json res = distance_to_json(d);
            res["inside"] = m.inside;
            if (!m.inside) {
                res["separator"] = {{"normal", to_json(m.separator_normal)},
                                    {"offset", to_json(m.separator_offset)}};
            }
            rec["result"] = std::move(res);
            emit(std::move(rec));
            return kExitOk;
        }
        out_ << "scenario  " << x.scenario.str() << '\n'
             << "status    " << (m.inside ? "inside" : "outside") << '\n'
             << "distance  " << d.distance.str() << " (" << o_.norm << ", " << decimal(d.distance) << ")\n"
             << "witness   " << to_json(d.witness).dump() << '\n';
        if (!m.inside) {
            out_ << "separator " << to_json(m.separator_normal).dump() << " <= " << m.separator_offset.str() << '\n';
        }
        footer();
        return kExitOk;
    }

    int curve() {
        if (o_.grid < 2) throw UsageError("--grid must be at least 2");
        const Scenario s = parse_scenario(o_.scenario);
        const ModelKind kind = parse_model_arg();
        const auto cache = make_cache(o_.config);
        const CriticalSolver solver(EfficiencyModel::make(kind, s), cached_ns_polytope(s, cache.get()),
                                    critical_options());
        std::ostringstream csv;
        std::ostringstream summary;
        Json rec = record("curve");
        rec["scenario"] = s.str();
        rec["model"] = std::string(to_string(kind));
        rec["tolerance"] = to_json(o_.config.tolerance);
        rec["grid"] = o_.grid;

        if (o_.distance_vertex) {
            const auto comma = o_.eta_range.find(',');
            if (comma == std::string::npos) throw UsageError("--eta-range must be lo,hi");
            Rational lo, hi;
            try {
                lo = Rational::parse(o_.eta_range.substr(0, comma));
                hi = Rational::parse(o_.eta_range.substr(comma + 1));
            } catch (const std::exception& e) {
                throw UsageError(std::string("--eta-range: ") + e.what());
            }
            if (lo.sign() < 0 || hi > 1 || !(lo < hi)) throw UsageError("--eta-range needs 0 <= lo < hi <= 1");
            if (*o_.distance_vertex >= solver.ns_vertices().vertices.size()) {
                throw UsageError("--distance-vertex " + std::to_string(*o_.distance_vertex) + " out of range (" +
                                 std::to_string(solver.ns_vertices().vertices.size()) + " vertices)");
            }
            const auto samples = distance_vs_eta(solver, *o_.distance_vertex, uniform_grid(lo, hi, o_.grid));
            csv << "eta,l1,linf,l1_exact,linf_exact\n";
            Json pts = Json::array();
            for (const auto& p : samples) {
                csv << p.eta.to_decimal(6) << ',' << p.l1.to_decimal(6) << ',' << p.linf.to_decimal(6) << ','
                    << p.l1.str() << ',' << p.linf.str() << '\n';
                pts.push_back({{"eta", to_json(p.eta)}, {"l1", to_json(p.l1)}, {"linf", to_json(p.linf)}});
            }
            rec["path"] = "symmetric";
            rec["result"] = {{"vertex", *o_.distance_vertex}, {"samples", std::move(pts)}};
        } else {
            const EfficiencyCurve c = efficiency_curve(solver, o_.grid);
            csv << "eta1,eta2_critical,binding_vertex\n";
            Json pts = Json::array();
            for (const auto& p : c.points) {
                csv << decimal(p.eta1) << ',' << decimal(p.result.critical_t) << ',' << p.result.binding_vertex
                    << '\n';
                pts.push_back({{"eta1", to_json(p.eta1)},
                               {"t_inside", to_json(p.result.t_inside)},
                               {"t_outside", to_json(p.result.t_outside)},
                               {"exact_eta2", to_json(p.exact_eta2)},
                               {"binding_vertex", p.result.binding_vertex},
                               {"exit_face", {{"normal", to_json(p.exit_normal)}, {"offset", to_json(p.exit_offset)}}}});
            }
            Json cusps = Json::array();
            for (const auto i : c.cusp_cells) {
                const bool vertex_change = std::ranges::find(c.vertex_change_cells, i) != c.vertex_change_cells.end();
                cusps.push_back({{"eta1_lo", to_json(c.points[i].eta1)},
                                 {"eta1_hi", to_json(c.points[i + 1].eta1)},
                                 {"kind", vertex_change ? "vertex" : "face"}});
                summary << "cusp in eta1 [" << decimal(c.points[i].eta1) << ", " << decimal(c.points[i + 1].eta1)
                        << "] (" << (vertex_change ? "binding vertex" : "exit face") << " changes)\n";
            }
            rec["path"] = "eta1 sweep";
            rec["result"] = {{"eta1_min", to_json(c.eta1_min)}, {"points", std::move(pts)}, {"cusps", std::move(cusps)}};
        }

        if (o_.out_path.empty() || o_.out_path == "-") {
            if (o_.json) {
                emit(std::move(rec));
            } else {
                out_ << csv.str();
            }
            return kExitOk;
        }
        write_file_atomic(o_.out_path, csv.str());
        if (o_.json) {
            rec["out"] = o_.out_path;
            emit(std::move(rec));
        } else {
            out_ << "wrote " << o_.out_path << '\n' << summary.str();
            footer();
        }
        return kExitOk;
    }

  private:
    ModelKind parse_model_arg() const {
        try {
            return parse_model(o_.model);
        } catch (const std::exception& e) {
            throw UsageError(e.what());
        }
    }

    EfficiencyPath parse_path_arg() const {
        try {
            return EfficiencyPath::parse(o_.path);
        } catch (const std::exception& e) {
            throw UsageError(e.what());
        }
    }

    Options& o_;
    std::ostream& out_;
    std::chrono::steady_clock::time_point start_;
};

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--cache-dir", o.cache_dir, "Directory for cached vertex lists")->envname("BELLPOLY_CACHE_DIR");
    cmd->add_flag("--no-cache", "Always recompute, never read or write the cache")->envname("BELLPOLY_NO_CACHE");
    cmd->add_option("--jobs", o.config.parallelism, "Worker threads for membership tests")
        ->envname("BELLPOLY_JOBS")
        ->check(CLI::Range(1u, 1024u));
    cmd->add_option("--tol", o.tol, "Bisection tolerance as p/q (default 1/1048576)")->envname("BELLPOLY_TOL");
    cmd->add_flag("--json", o.json, "Print a JSON run record");
    cmd->add_flag("--timing", o.config.timing, "Report wall time");
}

}  // namespace

fs::path default_cache_dir() {
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return fs::path(xdg) / "bellpoly";
    if (const char* home = std::getenv("HOME"); home && *home) return fs::path(home) / ".cache" / "bellpoly";
    return ".bellpoly-cache";
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Bell and no-signaling polytopes, distances and critical detection efficiencies", "bellpoly"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    auto* vertices = app.add_subcommand("vertices", "Enumerate local or no-signaling vertices");
    vertices->add_option("scenario,--scenario", o.scenario, "nx,ny,na,nb")->envname("BELLPOLY_SCENARIO");
    vertices->add_option("label", o.label, "local|nosignaling")->check(CLI::IsMember({"local", "nosignaling"}));
    vertices->add_option("format", o.format, "json|count")->check(CLI::IsMember({"json", "count"}));
    vertices->add_option("--cap", o.config.enumeration_cap, "Local enumeration cap")->check(CLI::PositiveNumber);
    add_common(vertices, o);

    auto* critical = app.add_subcommand("critical", "Critical detection efficiency along a path");
    critical->add_option("--scenario", o.scenario, "nx,ny,na,nb")->envname("BELLPOLY_SCENARIO");
    critical->add_option("--model", o.model, "merged|extra")->envname("BELLPOLY_MODEL");
    critical->add_option("--path", o.path, "symmetric|asymmetric|bob-perfect|eta1=<p/q>")->envname("BELLPOLY_PATH");
    critical->add_flag("--table1", o.table1, "Run the full dichotomic table");
    critical->add_option("--rows", o.rows, "Table rows as nx,ny (default: all four)");
    add_common(critical, o);

    auto* distance = app.add_subcommand("distance", "Membership and distance of a point to the local polytope");
    distance->add_option("point_file", o.point_file, "JSON point file")->required();
    distance->add_option("--scenario", o.scenario, "Expected scenario nx,ny,na,nb")->envname("BELLPOLY_SCENARIO");
    distance->add_option("--norm", o.norm, "l1|linf")->check(CLI::IsMember({"l1", "linf"}));
    distance->add_option("--vertices", o.vertices_file, "Polytope JSON to measure against instead of L");
    add_common(distance, o);

    auto* curve = app.add_subcommand("curve", "Critical eta2 as a function of eta1, or distances along eta");
    curve->add_option("--scenario", o.scenario, "nx,ny,na,nb")->envname("BELLPOLY_SCENARIO")->required();
    curve->add_option("--model", o.model, "merged|extra")->envname("BELLPOLY_MODEL");
    curve->add_option("--grid", o.grid, "Number of grid points (>= 2)")->envname("BELLPOLY_GRID");
    curve->add_option("--out", o.out_path, "CSV output path (default stdout)")->envname("BELLPOLY_OUT");
    curve->add_option("--distance-vertex", o.distance_vertex, "Distance mode for this NS vertex index");
    curve->add_option("--eta-range", o.eta_range, "Distance mode eta range lo,hi (default 0,1)");
    add_common(curve, o);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    CLI::App* cmd = app.get_subcommands().front();
    o.config.use_cache = cmd->count("--no-cache") == 0;
    o.config.cache_dir = o.cache_dir.empty() ? default_cache_dir() : fs::path(o.cache_dir);
    Runner runner(o, out);
    try {
        if (!o.tol.empty()) {
            try {
                o.config.tolerance = Rational::parse(o.tol);
            } catch (const std::exception& e) {
                throw UsageError("--tol: " + std::string(e.what()));
            }
            if (o.config.tolerance.sign() <= 0) throw UsageError("--tol must be positive");
        }
        if (cmd == vertices) {
            if (o.scenario.empty()) throw UsageError("vertices needs a scenario");
            return runner.vertices();
        }
        if (cmd == critical) return runner.critical();
        if (cmd == distance) return runner.distance();
        return runner.curve();
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NoViolationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitComputation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitComputation;
    }
}

}  // namespace bellpoly::cli
