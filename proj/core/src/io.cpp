#include "pwlinf/io.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace pwlinf {
namespace {

using nlohmann::json;

double real_from_json(const json& value, const std::string& field) {
    if (value.is_number()) return value.get<double>();
    if (value.is_string()) return parse_real_token(value.get<std::string>());
    throw ParseError("field '" + field + "' must be a number or a \"p/q\" string");
}

double require_real(const json& obj, const std::string& field) {
    if (!obj.contains(field)) throw ParseError("missing field '" + field + "'");
    return real_from_json(obj.at(field), field);
}

json spec_to_json(const SystemSpec& s) {
    return json{{"form", "canonical"}, {"gamma_L", s.gamma_L}, {"gamma_R", s.gamma_R},
                {"alpha_L", s.alpha_L}, {"alpha_R", s.alpha_R}, {"b", s.b}};
}

json spec_to_json(const EquilibriumSpec& s) {
    return json{{"form", "equilibrium"}, {"gamma_L", s.gamma_L}, {"gamma_R", s.gamma_R},
                {"x_L", s.x_L}, {"x_R", s.x_R}, {"y_L", s.y_L}, {"y_R", s.y_R},
                {"b", s.b}};
}

json spec_to_json(const LienardSpec& s) {
    return json{{"form", "lienard"}, {"T_L", s.T_L}, {"T_R", s.T_R}, {"D_L", s.D_L},
                {"D_R", s.D_R}, {"a_L", s.a_L}, {"a_R", s.a_R}, {"b", s.b}};
}

json series_to_json(const TruncatedSeries& s) {
    json arr = json::array();
    for (int k = 1; k <= s.order; ++k) arr.push_back(s.coeff(k));
    return arr;
}

const char* stability_name(Stability s) {
    switch (s) {
        case Stability::Stable: return "stable";
        case Stability::Unstable: return "unstable";
        case Stability::NonIsolated: return "non_isolated";
    }
    return "unknown";
}

}  // namespace

double parse_real_token(const std::string& token) {
    std::string text = token;
    std::erase(text, ' ');
    if (text.empty()) throw ParseError("empty numeric token");

    const auto slash = text.find('/');
    const auto parse_part = [&](const std::string& part) {
        char* end = nullptr;
        // long double keeps 64-bit integer parts exact, so p/q rounds once.
        const long double v = std::strtold(part.c_str(), &end);
        if (end == part.c_str() || *end != '\0')
            throw ParseError("malformed numeric token '" + token + "'");
        return v;
    };

    if (slash == std::string::npos) return static_cast<double>(parse_part(text));
    const long double num = parse_part(text.substr(0, slash));
    const long double den = parse_part(text.substr(slash + 1));
    if (den == 0.0L) throw ParseError("zero denominator in '" + token + "'");
    return static_cast<double>(num / den);
}

std::string format_real(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return {buf, res.ptr};
}

SpecInput parse_spec_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("parameter document must be a JSON object");
    if (!doc.contains("form") || !doc.at("form").is_string())
        throw ParseError("missing string field 'form'");

    const std::string form = doc.at("form").get<std::string>();
    SpecInput input;
    input.source_echo = doc.dump();

    if (form == "canonical") {
        input.form = SpecForm::Canonical;
        input.canonical.gamma_L = require_real(doc, "gamma_L");
        input.canonical.gamma_R = require_real(doc, "gamma_R");
        input.canonical.alpha_L = require_real(doc, "alpha_L");
        input.canonical.alpha_R = require_real(doc, "alpha_R");
        input.canonical.b = require_real(doc, "b");
    } else if (form == "lienard") {
        input.form = SpecForm::Lienard;
        LienardSpec lienard;
        lienard.T_L = require_real(doc, "T_L");
        lienard.T_R = require_real(doc, "T_R");
        lienard.D_L = require_real(doc, "D_L");
        lienard.D_R = require_real(doc, "D_R");
        lienard.a_L = require_real(doc, "a_L");
        lienard.a_R = require_real(doc, "a_R");
        lienard.b = require_real(doc, "b");
        input.lienard = lienard;
        input.canonical = canonicalize(lienard);
    } else if (form == "equilibrium") {
        input.form = SpecForm::Equilibrium;
        EquilibriumSpec eq;
        eq.gamma_L = require_real(doc, "gamma_L");
        eq.gamma_R = require_real(doc, "gamma_R");
        eq.x_L = require_real(doc, "x_L");
        eq.x_R = require_real(doc, "x_R");
        eq.y_L = require_real(doc, "y_L");
        eq.y_R = require_real(doc, "y_R");
        if (doc.contains("b")) {
            eq.b = real_from_json(doc.at("b"), "b");
        } else {
            eq.b = 2.0 * eq.gamma_L * eq.x_L - eq.y_L;
        }
        const RecenteredSpec rc = from_equilibrium(eq);
        input.canonical = rc.spec;
        input.recenter_shift = rc.y_shift;
    } else {
        throw ParseError("unknown form '" + form +
                         "' (expected canonical, lienard, or equilibrium)");
    }

    input.equilibrium = to_equilibrium(input.canonical);
    return input;
}

SpecInput load_spec_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open parameter file '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_spec_json(buffer.str());
}

std::string spec_json(const SpecInput& input) {
    json doc{
        {"canonical", spec_to_json(input.canonical)},
        {"equilibrium", spec_to_json(input.equilibrium)},
        {"lienard", spec_to_json(lienard_representative(input.canonical))},
        {"recenter_shift", input.recenter_shift},
    };
    if (input.lienard) doc["lienard_input"] = spec_to_json(*input.lienard);
    return doc.dump();
}

std::string classification_json(const InfinityClass& verdict) {
    json doc;
    switch (verdict.kind) {
        case OrbitKind::Hyperbolic: doc["kind"] = "Hyperbolic"; break;
        case OrbitKind::WeakFocus: doc["kind"] = "WeakFocus"; break;
        case OrbitKind::Center: doc["kind"] = "Center"; break;
    }
    doc["stability"] = stability_name(verdict.stability);
    if (verdict.order) doc["order"] = *verdict.order;
    if (verdict.center_type) {
        switch (*verdict.center_type) {
            case CenterType::A: doc["center_type"] = "a"; break;
            case CenterType::B: doc["center_type"] = "b"; break;
            case CenterType::C: doc["center_type"] = "c"; break;
        }
    }
    const auto& w = verdict.witness;
    json witness{
        {"gamma_sum", w.gamma_sum}, {"y_diff", w.y_diff},   {"x_sq_diff", w.x_sq_diff},
        {"x_diff", w.x_diff},       {"x_sum", w.x_sum},     {"gamma_L", w.gamma_L},
        {"x_L", w.x_L},             {"b", w.b},             {"leading_deltas", w.leading_deltas},
    };
    if (w.equilibria_real) witness["equilibria_real"] = *w.equilibria_real;
    doc["witness"] = witness;
    return doc.dump();
}

std::string series_json(const HalfReturnSeries& left, const HalfReturnSeries& right,
                        const DisplacementSeries& deltas) {
    json doc{
        {"order", deltas.order},
        {"deltas", deltas.deltas},
        {"L", series_to_json(left.u_series)},
        {"R", series_to_json(right.u_series)},
        {"beta", series_to_json(left.time_series)},
    };
    return doc.dump();
}

std::string cycles_json(const CycleScan& scan) {
    json cycles = json::array();
    for (const LimitCycle& c : scan.cycles) {
        json entry{
            {"u0_root", c.u0_root},
            {"y_top", c.y_top},
            {"y_bottom", c.y_bottom},
            {"tau_L", c.tau_L},
            {"tau_R", c.tau_R},
            {"displacement_slope", c.displacement_slope},
            {"multiplier_proxy", c.multiplier_proxy},
            {"hyperbolic", c.hyperbolic},
        };
        if (c.stability) entry["stability"] = stability_name(*c.stability);
        cycles.push_back(entry);
    }
    json doc{
        {"count", scan.cycles.size()},
        {"period_annulus", scan.period_annulus},
        {"u0_min_effective", scan.u0_min_effective},
        {"u0_max_effective", scan.u0_max_effective},
        {"cycles", cycles},
    };
    return doc.dump();
}

std::string unfolding_json(const UnfoldingResult& result) {
    json doc{
        {"gamma_R", result.gamma_R},
        {"b", result.b},
        {"x_R", result.x_R},
        {"achieved", result.achieved},
        {"residual", result.residual},
        {"newton_iters", result.newton_iters},
    };
    return doc.dump();
}

void write_orbit_csv(std::ostream& out, const TracedOrbit& orbit) {
    out << "t,x,y,event\n";
    size_t next_crossing = 0;
    for (const auto& s : orbit.samples) {
        out << format_real(s.t) << ',' << format_real(s.x) << ',' << format_real(s.y);
        if (next_crossing < orbit.crossings.size() &&
            orbit.crossings[next_crossing].t == s.t) {
            out << ",crossing_" << zone_letter(orbit.crossings[next_crossing].from)
                << "_to_" << zone_letter(orbit.crossings[next_crossing].to);
            ++next_crossing;
        } else {
            out << ',';
        }
        out << '\n';
    }
    switch (orbit.stop) {
        case TracedOrbit::Stop::Completed: break;
        case TracedOrbit::Stop::SlidingContact: out << "# stopped: sliding_contact\n"; break;
        case TracedOrbit::Stop::NoReturn: out << "# stopped: no_return\n"; break;
    }
}

void write_region_csv(std::ostream& out, const RegionMap& map) {
    out << "kind,delta1,delta2,count\n";
    for (const auto& p : map.labels)
        out << "label," << format_real(p.d1) << ',' << format_real(p.d2) << ','
            << p.count << '\n';
    for (const auto& p : map.axis_curve)
        out << "axis," << format_real(p.d1) << ',' << format_real(p.d2) << ",\n";
    for (const auto& p : map.discriminant_curve)
        out << "discriminant," << format_real(p.d1) << ',' << format_real(p.d2) << ",\n";
    if (map.cusp_in_window)
        out << "cusp," << format_real(map.cusp_d1) << ',' << format_real(map.cusp_d2)
            << ",\n";
}

void write_cycles_csv(std::ostream& out, const CycleScan& scan) {
    out << "u0_root,y_top,y_bottom,tau_L,tau_R,displacement_slope,multiplier_proxy,"
           "hyperbolic,stability\n";
    for (const LimitCycle& c : scan.cycles) {
        out << format_real(c.u0_root) << ',' << format_real(c.y_top) << ','
            << format_real(c.y_bottom) << ',' << format_real(c.tau_L) << ','
            << format_real(c.tau_R) << ',' << format_real(c.displacement_slope) << ','
            << format_real(c.multiplier_proxy) << ',' << (c.hyperbolic ? 1 : 0) << ','
            << (c.stability ? stability_name(*c.stability) : "") << '\n';
    }
}

}  // namespace pwlinf
