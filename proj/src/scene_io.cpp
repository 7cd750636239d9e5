#include "iwpt/scene_io.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace iwpt {

namespace {

using nlohmann::json;

const json& require(const json& j, const std::string& key) {
    const auto it = j.find(key);
    if (it == j.end())
        throw std::runtime_error("scene config: missing key '" + key + "'");
    return *it;
}

double number(const json& j, const std::string& key) {
    const json& v = require(j, key);
    if (!v.is_number())
        throw std::runtime_error("scene config: key '" + key + "' must be a number");
    return v.get<double>();
}

int integer(const json& j, const std::string& key) {
    const json& v = require(j, key);
    if (!v.is_number_integer())
        throw std::runtime_error("scene config: key '" + key + "' must be an integer");
    return v.get<int>();
}

arma::vec3 point(const json& v, const std::string& key) {
    if (!v.is_array() || v.size() != 3 ||
        !(v[0].is_number() && v[1].is_number() && v[2].is_number()))
        throw std::runtime_error("scene config: key '" + key +
                                 "' must be an array of 3 numbers");
    return arma::vec3{v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

json to_json(const arma::vec3& p) { return json::array({p(0), p(1), p(2)}); }

}  // namespace

Scene load_scene(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("scene config: cannot open " + path);
    json j;
    try {
        f >> j;
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("scene config: parse error: ") + e.what());
    }

    Scene s;
    s.carrier_hz = number(j, "carrier_hz");
    if (s.carrier_hz <= 0.0)
        throw std::runtime_error("scene config: key 'carrier_hz' must be positive");
    if (j.contains("tx_power_w"))
        s.tx_power = number(j, "tx_power_w");
    else
        s.tx_power = dbm_to_watts(number(j, "tx_power_dbm"));

    if (j.contains("noise_power_w"))
        s.noise_power = number(j, "noise_power_w");
    else if (j.contains("noise_power_dbm"))
        s.noise_power = dbm_to_watts(number(j, "noise_power_dbm"));
    else
        s.noise_power = dbm_to_watts(number(j, "noise_density_dbm_per_hz") +
                                     10.0 * std::log10(number(j, "bandwidth_hz")));

    s.efficiency = number(j, "efficiency");
    s.pattern_exponent = j.contains("pattern_exponent")
                             ? number(j, "pattern_exponent")
                             : 1.0;

    const json& ja = require(j, "array");
    s.array.rows = integer(ja, "rows");
    s.array.cols = integer(ja, "cols");
    if (ja.contains("spacing_m"))
        s.array.spacing = number(ja, "spacing_m");
    else
        s.array.spacing = number(ja, "spacing_wavelengths") * s.wavelength();
    if (ja.contains("reference"))
        s.array.reference = point(require(ja, "reference"), "array.reference");
    if (ja.contains("normal"))
        s.array.normal = point(require(ja, "normal"), "array.normal");

    const json& jr = require(j, "roi");
    s.roi.rows = integer(jr, "rows");
    s.roi.cols = integer(jr, "cols");
    s.roi.cell_size = number(jr, "cell_size_m");
    s.roi.center = point(require(jr, "center"), "roi.center");
    if (jr.contains("normal")) s.roi.normal = point(require(jr, "normal"), "roi.normal");

    const json& jrx = require(j, "receivers");
    if (!jrx.is_array())
        throw std::runtime_error("scene config: key 'receivers' must be an array");
    for (const auto& v : jrx) s.receivers.positions.push_back(point(v, "receivers[i]"));

    return s;
}

void save_scene(const std::string& path, const Scene& s) {
    json j;
    j["carrier_hz"] = s.carrier_hz;
    j["tx_power_dbm"] = watts_to_dbm(s.tx_power);
    j["noise_power_dbm"] = watts_to_dbm(s.noise_power);
    j["efficiency"] = s.efficiency;
    j["pattern_exponent"] = s.pattern_exponent;
    j["array"] = {{"rows", s.array.rows},
                  {"cols", s.array.cols},
                  {"spacing_m", s.array.spacing},
                  {"reference", to_json(s.array.reference)},
                  {"normal", to_json(s.array.normal)}};
    j["roi"] = {{"rows", s.roi.rows},
                {"cols", s.roi.cols},
                {"cell_size_m", s.roi.cell_size},
                {"center", to_json(s.roi.center)},
                {"normal", to_json(s.roi.normal)}};
    json rx = json::array();
    for (const auto& p : s.receivers.positions) rx.push_back(to_json(p));
    j["receivers"] = rx;

    std::ofstream f(path);
    if (!f) throw std::runtime_error("scene config: cannot open for writing " + path);
    f << j.dump(2) << '\n';
}

}  // namespace iwpt
