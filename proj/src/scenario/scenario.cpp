#include "bellpoly/scenario.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace bellpoly {

Scenario Scenario::make(int nx, int ny, int na, int nb) {
    if (nx < 1 || ny < 1) throw std::invalid_argument("scenario needs at least one input per party");
    if (na < 2 || nb < 2) throw std::invalid_argument("scenario needs at least two outputs per party");
    return Scenario{nx, ny, na, nb};
}

Scenario Scenario::parse(std::string_view text) {
    std::vector<int> fields;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto piece = text.substr(start, comma == std::string_view::npos ? text.size() - start : comma - start);
        int value = 0;
        const auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), value);
        if (piece.empty() || ec != std::errc() || ptr != piece.data() + piece.size()) {
            throw std::invalid_argument("malformed scenario '" + std::string(text) + "': expected nx,ny,na,nb");
        }
        fields.push_back(value);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (fields.size() != 4) {
        throw std::invalid_argument("malformed scenario '" + std::string(text) + "': expected 4 fields nx,ny,na,nb");
    }
    return make(fields[0], fields[1], fields[2], fields[3]);
}

std::size_t Scenario::dimension() const { return reduced_dimension(*this); }

std::string Scenario::str() const {
    std::ostringstream os;
    os << nx << ',' << ny << ',' << na << ',' << nb;
    return os.str();
}

std::size_t reduced_dimension(const Scenario& s) {
    return static_cast<std::size_t>(s.nx * (s.na - 1) + s.ny * (s.nb - 1) +
                                     s.nx * s.ny * (s.na - 1) * (s.nb - 1));
}

bool FullPoint::is_probability() const {
    for (int x = 0; x < scenario.nx; ++x) {
        for (int y = 0; y < scenario.ny; ++y) {
            Rational total;
            for (int a = 0; a < scenario.na; ++a) {
                for (int b = 0; b < scenario.nb; ++b) {
                    if (at(a, b, x, y).sign() < 0) return false;
                    total += at(a, b, x, y);
                }
            }
            if (total != 1) return false;
        }
    }
    return true;
}

ReducedPoint::ReducedPoint(const Scenario& s, RVector c) : scenario(s), coords(std::move(c)) {
    if (coords.size() != s.dimension()) {
        throw std::invalid_argument("reduced point for scenario " + s.str() + " needs " + std::to_string(s.dimension()) +
                                    " coordinates, got " + std::to_string(coords.size()));
    }
}

ReducedPoint to_reduced(const FullPoint& p) {
    const Scenario& s = p.scenario;
    for (int x = 0; x < s.nx; ++x) {
        for (int y = 0; y < s.ny; ++y) {
            Rational total;
            for (const auto& v : std::span(p.probs).subspan(s.cell_index(0, 0, x, y), static_cast<std::size_t>(s.na * s.nb))) total += v;
            if (total != 1) {
                throw std::invalid_argument("not normalized at input pair (x=" + std::to_string(x) + ", y=" +
                                            std::to_string(y) + "): sum is " + total.str());
            }
        }
    }
    auto alice_marginal = [&](int a, int x, int y) {
        Rational m;
        for (int b = 0; b < s.nb; ++b) m += p.at(a, b, x, y);
        return m;
    };
    auto bob_marginal = [&](int b, int x, int y) {
        Rational m;
        for (int a = 0; a < s.na; ++a) m += p.at(a, b, x, y);
        return m;
    };

    ReducedPoint r(s);
    for (int x = 0; x < s.nx; ++x) {
        for (int a = 0; a < s.na; ++a) {
            const Rational ref = alice_marginal(a, x, 0);
            for (int y = 1; y < s.ny; ++y) {
                if (alice_marginal(a, x, y) != ref) {
                    throw std::invalid_argument("no-signaling violated: P_A(a=" + std::to_string(a) + "|x=" +
                                                std::to_string(x) + ") differs between y=0 and y=" + std::to_string(y));
                }
            }
            if (a < s.na - 1) r.coords[s.alice_index(a, x)] = ref;
        }
    }
    for (int y = 0; y < s.ny; ++y) {
        for (int b = 0; b < s.nb; ++b) {
            const Rational ref = bob_marginal(b, 0, y);
            for (int x = 1; x < s.nx; ++x) {
                if (bob_marginal(b, x, y) != ref) {
                    throw std::invalid_argument("no-signaling violated: P_B(b=" + std::to_string(b) + "|y=" +
                                                std::to_string(y) + ") differs between x=0 and x=" + std::to_string(x));
                }
            }
            if (b < s.nb - 1) r.coords[s.bob_index(b, y)] = ref;
        }
    }
    for (int x = 0; x < s.nx; ++x)
        for (int y = 0; y < s.ny; ++y)
            for (int a = 0; a + 1 < s.na; ++a)
                for (int b = 0; b + 1 < s.nb; ++b) r.coords[s.joint_index(a, b, x, y)] = p.at(a, b, x, y);
    return r;
}

Reconstruction from_reduced(const ReducedPoint& r) {
    const Scenario& s = r.scenario;
    const auto& z = r.coords;
    const int la = s.na - 1;
    const int lb = s.nb - 1;
    FullPoint p(s);
    bool valid = true;
    for (int x = 0; x < s.nx; ++x) {
        for (int y = 0; y < s.ny; ++y) {
            Rational last = 1;
            for (int a = 0; a < la; ++a) last -= z[s.alice_index(a, x)];
            for (int b = 0; b < lb; ++b) last -= z[s.bob_index(b, y)];
            for (int a = 0; a < la; ++a) {
                Rational row_rest = z[s.alice_index(a, x)];
                for (int b = 0; b < lb; ++b) {
                    const Rational& j = z[s.joint_index(a, b, x, y)];
                    p.at(a, b, x, y) = j;
                    row_rest -= j;
                    last += j;
                }
                p.at(a, lb, x, y) = row_rest;
            }
            for (int b = 0; b < lb; ++b) {
                Rational col_rest = z[s.bob_index(b, y)];
                for (int a = 0; a < la; ++a) col_rest -= z[s.joint_index(a, b, x, y)];
                p.at(la, b, x, y) = col_rest;
            }
            p.at(la, lb, x, y) = last;
        }
    }
    for (const auto& v : p.probs) valid = valid && v.sign() >= 0;
    return {std::move(p), valid};
}

CellForm cell_form(const Scenario& s, int a, int b, int x, int y) {
    CellForm f{RVector(s.dimension()), Rational(0)};
    const int la = s.na - 1;
    const int lb = s.nb - 1;
    if (a < la && b < lb) {
        f.coeffs[s.joint_index(a, b, x, y)] = 1;
    } else if (a < la) {  // P_A(a|x) - sum_b P(ab|xy)
        f.coeffs[s.alice_index(a, x)] = 1;
        for (int bb = 0; bb < lb; ++bb) f.coeffs[s.joint_index(a, bb, x, y)] = -1;
    } else if (b < lb) {
        f.coeffs[s.bob_index(b, y)] = 1;
        for (int aa = 0; aa < la; ++aa) f.coeffs[s.joint_index(aa, b, x, y)] = -1;
    } else {
        f.constant = 1;
        for (int aa = 0; aa < la; ++aa) f.coeffs[s.alice_index(aa, x)] = -1;
        for (int bb = 0; bb < lb; ++bb) f.coeffs[s.bob_index(bb, y)] = -1;
        for (int aa = 0; aa < la; ++aa)
            for (int bb = 0; bb < lb; ++bb) f.coeffs[s.joint_index(aa, bb, x, y)] = 1;
    }
    return f;
}

}  // namespace bellpoly
