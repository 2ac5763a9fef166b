#include "cesaro/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace cesaro::io {

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) throw SpecError(where + ": expected a JSON object");
    for (const auto& [key, value] : j.items())
        if (!allowed.count(key)) throw SpecError(where + ": unknown field '" + key + "'");
}

double get_number(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) throw SpecError(where + ": missing field '" + key + "'");
    const auto& v = j.at(key);
    if (!v.is_number()) throw SpecError(where + ": field '" + key + "' must be a number");
    return v.get<double>();
}

double get_number_or(const json& j, const char* key, double fallback, const std::string& where) {
    return j.contains(key) ? get_number(j, key, where) : fallback;
}

std::vector<double> get_array(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) throw SpecError(where + ": missing field '" + key + "'");
    const auto& v = j.at(key);
    if (!v.is_array()) throw SpecError(where + ": field '" + key + "' must be an array");
    std::vector<double> out;
    for (const auto& x : v) {
        if (!x.is_number()) throw SpecError(where + ": field '" + key + "' must hold numbers only");
        out.push_back(x.get<double>());
    }
    return out;
}

std::size_t get_degree(const json& j, std::size_t fallback, const std::string& where) {
    if (!j.contains("degree")) return fallback;
    const auto& v = j.at("degree");
    if (!v.is_number_integer() || v.get<long long>() < 0)
        throw SpecError(where + ": 'degree' must be a nonnegative integer");
    return static_cast<std::size_t>(v.get<long long>());
}

json array(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(number(x));
    return a;
}

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SpecError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content << std::flush;
        return;
    }
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw SpecError("cannot write '" + tmp + "'");
        out << content;
        out.flush();
        if (!out) throw SpecError("write failed for '" + tmp + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw SpecError("cannot move output into place at '" + path + "'");
    }
}

RadialMeasure measure_from_json(const json& j) {
    check_keys(j, {"components", "name", "description"}, "measure");
    if (!j.contains("components") || !j.at("components").is_array() || j.at("components").empty())
        throw SpecError("measure: 'components' must be a nonempty array");
    std::vector<MeasureComponent> comps;
    int idx = 0;
    for (const auto& c : j.at("components")) {
        const std::string where = "measure component " + std::to_string(idx++);
        if (!c.is_object() || !c.contains("kind") || !c.at("kind").is_string())
            throw SpecError(where + ": missing 'kind'");
        const std::string kind = c.at("kind").get<std::string>();
        if (kind == "power_log") {
            check_keys(c, {"kind", "c", "gamma", "beta"}, where);
            comps.emplace_back(PowerLogDensity{get_number(c, "c", where), get_number(c, "gamma", where),
                                               get_number_or(c, "beta", 0.0, where)});
        } else if (kind == "point") {
            check_keys(c, {"kind", "w", "t0"}, where);
            comps.emplace_back(PointMass{get_number(c, "w", where), get_number(c, "t0", where)});
        } else if (kind == "table") {
            check_keys(c, {"kind", "x", "v"}, where);
            comps.emplace_back(TabulatedDensity{get_array(c, "x", where), get_array(c, "v", where)});
        } else {
            throw SpecError(where + ": unknown kind '" + kind + "' (expected power_log, point or table)");
        }
    }
    try {
        return RadialMeasure(std::move(comps));
    } catch (const std::invalid_argument& e) {
        throw SpecError(e.what());
    }
}

json components_to_json(const std::vector<MeasureComponent>& components) {
    json arr = json::array();
    for (const auto& comp : components) {
        if (const auto* pl = std::get_if<PowerLogDensity>(&comp)) {
            arr.push_back({{"kind", "power_log"}, {"c", pl->c}, {"gamma", pl->gamma}, {"beta", pl->beta}});
        } else if (const auto* pm = std::get_if<PointMass>(&comp)) {
            arr.push_back({{"kind", "point"}, {"w", pm->w}, {"t0", pm->t0}});
        } else {
            const auto& tb = std::get<TabulatedDensity>(comp);
            arr.push_back({{"kind", "table"}, {"x", tb.x}, {"v", tb.v}});
        }
    }
    return arr;
}

json measure_to_json(const RadialMeasure& m) { return json{{"components", components_to_json(m.components())}}; }

RadialMeasure load_measure(const std::string& path) {
    try {
        return measure_from_json(json::parse(read_file(path)));
    } catch (const json::exception& e) {
        throw SpecError("'" + path + "': " + e.what());
    } catch (const SpecError& e) {
        throw SpecError("'" + path + "': " + e.what());
    }
}

PowerSeries function_from_json(const json& j, std::size_t default_degree) {
    if (!j.is_object()) throw SpecError("function: expected a JSON object");
    try {
        if (j.contains("builtin")) {
            if (!j.at("builtin").is_string()) throw SpecError("function: 'builtin' must be a string");
            const std::string name = j.at("builtin").get<std::string>();
            if (name == "log_one_over_one_minus_z") {
                check_keys(j, {"builtin", "degree", "name", "description"}, "function");
                return log_one_over_one_minus_z(get_degree(j, default_degree, "function"));
            }
            if (name == "test_function") {
                check_keys(j, {"builtin", "t", "p", "degree", "name", "description"}, "function");
                return test_function(get_number(j, "t", "function"), get_number(j, "p", "function"),
                                     get_degree(j, default_degree, "function"));
            }
            throw SpecError("function: unknown builtin '" + name +
                            "' (expected log_one_over_one_minus_z or test_function)");
        }
        check_keys(j, {"coeffs_re", "coeffs_im", "name", "description"}, "function");
        const auto re = get_array(j, "coeffs_re", "function");
        const auto im = j.contains("coeffs_im") ? get_array(j, "coeffs_im", "function") : std::vector<double>(re.size());
        if (re.empty()) throw SpecError("function: 'coeffs_re' must be nonempty");
        if (im.size() != re.size()) throw SpecError("function: 'coeffs_re' and 'coeffs_im' differ in length");
        std::vector<cplx> c(re.size());
        for (std::size_t k = 0; k < c.size(); ++k) c[k] = {re[k], im[k]};
        return PowerSeries(std::move(c));
    } catch (const std::invalid_argument& e) {
        throw SpecError(std::string("function: ") + e.what());
    } catch (const std::domain_error& e) {
        throw SpecError(std::string("function: ") + e.what());
    }
}

PowerSeries load_function(const std::string& path, std::size_t default_degree) {
    try {
        return function_from_json(json::parse(read_file(path)), default_degree);
    } catch (const json::exception& e) {
        throw SpecError("'" + path + "': " + e.what());
    } catch (const SpecError& e) {
        throw SpecError("'" + path + "': " + e.what());
    }
}

json number(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

json to_json(const TrendFit& f) {
    return json{{"label", to_string(f.label)},
                {"slope", number(f.slope)},
                {"residual", number(f.residual)},
                {"peak", number(f.peak)},
                {"terminal", number(f.terminal)},
                {"decreasing_tail", f.decreasing_tail}};
}

json to_json(const CriterionResult& r) {
    return json{{"name", r.name}, {"label", to_string(r.label)}, {"fit", to_json(r.fit)},
                {"ladder", array(r.ladder)}, {"values", array(r.values)}};
}

json to_json(const CarlesonVerdict& v) {
    json crit = json::object();
    for (const auto& [name, res] : v.per_criterion) crit[name] = to_json(res);
    json probes = json::array();
    for (const auto& [p, res] : v.probes) {
        json e = to_json(res);
        e["t_exp"] = p.t_exp;
        e["r_exp"] = p.r_exp;
        probes.push_back(std::move(e));
    }
    return json{{"params",
                 {{"s", v.params.s}, {"alpha", v.params.alpha}, {"t_exp", v.params.t_exp}, {"r_exp", v.params.r_exp}}},
                {"label", to_string(v.label)},
                {"agreement", v.agreement},
                {"sup_estimate", number(v.sup_estimate)},
                {"limit_estimate", number(v.limit_estimate)},
                {"fitted_exponent", number(v.fitted_exponent)},
                {"fitted_log_exponent", number(v.fitted_log_exponent)},
                {"per_criterion", std::move(crit)},
                {"probes", std::move(probes)}};
}

json to_json(const NormEstimate& e) {
    return json{{"value", number(e.value)},
                {"angular_points", e.angular_points},
                {"radii", array(e.radii)},
                {"history", array(e.history)}};
}

json to_json(const VerificationReport& r) {
    json ladder = json::array();
    for (const auto& e : r.ladder)
        ladder.push_back({{"t", e.t},
                          {"ratio", number(e.ratio)},
                          {"bloch_ratio", number(e.bloch_ratio)},
                          {"besov", number(e.besov)},
                          {"lipschitz", number(e.lipschitz)},
                          {"bloch", number(e.bloch)}});
    json lb = json::array();
    for (const auto& e : r.lower_bound) lb.push_back({{"N", e.n}, {"L_N", number(e.value)}});
    return json{{"theorem", r.theorem},
                {"measure", json{{"components", components_to_json(r.measure)}}},
                {"p", r.p},
                {"s", r.s},
                {"q", r.q},
                {"ladder", std::move(ladder)},
                {"lower_bound", std::move(lb)},
                {"fits",
                 {{"ratio", to_json(r.ratio_fit)},
                  {"bloch_ratio", to_json(r.bloch_ratio_fit)},
                  {"lower_bound", to_json(r.lower_bound_fit)}}},
                {"classifier", to_json(r.classifier)},
                {"verdict", r.verdict},
                {"consistent", r.consistent}};
}

json to_json(const AgreementMatrix& a) {
    json cells = json::array();
    for (const auto& c : a.cells)
        cells.push_back({{"measure", c.measure},
                         {"s", c.s},
                         {"alpha", c.alpha},
                         {"tail", to_string(c.tail)},
                         {"moments", to_string(c.moments)},
                         {"integral", to_string(c.integral)},
                         {"conclusive", c.conclusive},
                         {"agree", c.agree}});
    return json{{"cells", std::move(cells)},
                {"conclusive_cells", a.conclusive_cells},
                {"agreeing_cells", a.agreeing_cells},
                {"agreement_rate", a.agreement_rate}};
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string moments_csv(const MomentSequence& mu) {
    std::string out = "n,mu_n,tolerance\n";
    for (std::size_t n = 0; n < mu.values.size(); ++n) {
        const double tol = std::max(mu.errors.empty() ? 0.0 : mu.errors[n], mu.abs_tolerance);
        out += std::to_string(n) + "," + fmt(mu.values[n]) + "," + fmt(tol) + "\n";
    }
    return out;
}

std::string coefficients_csv(const PowerSeries& f) {
    std::string out = "n,re,im\n";
    for (std::size_t n = 0; n <= f.degree(); ++n)
        out += std::to_string(n) + "," + fmt(f[n].real()) + "," + fmt(f[n].imag()) + "\n";
    return out;
}

std::string ladder_csv(const CriterionResult& r) {
    std::string out = "j,point,value\n";
    for (std::size_t i = 0; i < r.values.size(); ++i)
        out += std::to_string(i) + "," + fmt(r.ladder[i]) + "," + fmt(r.values[i]) + "\n";
    return out;
}

std::string profile_csv(const std::vector<ProfilePoint>& profile) {
    std::string out = "r,value\n";
    for (const auto& p : profile) out += fmt(p.r) + "," + fmt(p.value) + "\n";
    return out;
}

std::string report_ladder_csv(const VerificationReport& r) {
    std::string out = "t,besov,lipschitz,bloch,ratio,bloch_ratio\n";
    for (const auto& e : r.ladder)
        out += fmt(e.t) + "," + fmt(e.besov) + "," + fmt(e.lipschitz) + "," + fmt(e.bloch) + "," + fmt(e.ratio) +
               "," + fmt(e.bloch_ratio) + "\n";
    return out;
}

}  // namespace cesaro::io
