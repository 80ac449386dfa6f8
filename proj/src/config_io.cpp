#include "ddest/config_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ddest {

using nlohmann::json;

namespace {

double snr_from_json(const json& v) {
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s == "inf" || s == "+inf" || s == "infinity")
            return std::numeric_limits<double>::infinity();
        throw std::invalid_argument("config: snr value '" + s + "' not understood");
    }
    return v.get<double>();
}

template <typename T>
void maybe(const json& j, const char* key, T& field) {
    if (j.contains(key)) field = j.at(key).get<T>();
}

}  // namespace

SweepConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config: JSON parse error: ") + e.what());
    }
    SweepConfig cfg;
    if (j.contains("system")) {
        const json& s = j["system"];
        maybe(s, "M", cfg.dims.M);
        maybe(s, "N", cfg.dims.N);
        maybe(s, "ell_max", cfg.dims.ell_max);
        maybe(s, "kappa_max", cfg.dims.kappa_max);
    }
    if (j.contains("pilot")) {
        const json& p = j["pilot"];
        maybe(p, "M_ZC", cfg.pilot.M_ZC);
        maybe(p, "M_CP", cfg.pilot.M_CP);
        maybe(p, "zc_root", cfg.pilot.zc_root);
        maybe(p, "Q", cfg.pilot.Q);
    }
    if (j.contains("wmusic")) {
        const json& w = j["wmusic"];
        maybe(w, "M_sub", cfg.wmusic.M_sub);
        maybe(w, "N_sub", cfg.wmusic.N_sub);
        maybe(w, "G", cfg.wmusic.G);
        maybe(w, "Q_sample", cfg.wmusic.Q_sample);
        maybe(w, "eps_rel", cfg.wmusic.eps_rel);
        maybe(w, "min_angle_sep", cfg.wmusic.min_angle_sep);
        maybe(w, "project_roots_to_circle", cfg.wmusic.project_roots_to_circle);
    }
    if (j.contains("mp")) {
        const json& m = j["mp"];
        maybe(m, "M_pencil", cfg.mp.M_pencil);
        maybe(m, "N_pencil", cfg.mp.N_pencil);
    }
    if (j.contains("sweep")) {
        const json& s = j["sweep"];
        if (s.contains("snr_points_db")) {
            cfg.snr_points_db.clear();
            for (const json& v : s["snr_points_db"]) cfg.snr_points_db.push_back(snr_from_json(v));
        }
        maybe(s, "trials", cfg.trials);
        maybe(s, "seed", cfg.seed);
        maybe(s, "min_doppler_sep", cfg.constraints.min_doppler_sep);
        maybe(s, "min_paths", cfg.constraints.min_paths);
        maybe(s, "max_paths", cfg.constraints.max_paths);
        if (s.contains("estimators")) {
            cfg.use_wmusic = false;
            cfg.use_mp = false;
            for (const json& v : s["estimators"]) {
                const std::string name = v.get<std::string>();
                if (name == "wmusic")
                    cfg.use_wmusic = true;
                else if (name == "mp")
                    cfg.use_mp = true;
                else
                    throw std::invalid_argument("config: unknown estimator '" + name + "'");
            }
        }
    }
    cfg.validate();
    return cfg;
}

SweepConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config file not readable: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string config_to_json(const SweepConfig& cfg) {
    json j;
    j["system"] = {{"M", cfg.dims.M},
                   {"N", cfg.dims.N},
                   {"ell_max", cfg.dims.ell_max},
                   {"kappa_max", cfg.dims.kappa_max}};
    j["pilot"] = {{"M_ZC", cfg.pilot.M_ZC},
                  {"M_CP", cfg.pilot.M_CP},
                  {"zc_root", cfg.pilot.zc_root},
                  {"Q", cfg.pilot.Q}};
    j["wmusic"] = {{"M_sub", cfg.wmusic.M_sub},   {"N_sub", cfg.wmusic.N_sub},
                   {"G", cfg.wmusic.G},           {"Q_sample", cfg.wmusic.Q_sample},
                   {"eps_rel", cfg.wmusic.eps_rel},
                   {"min_angle_sep", cfg.wmusic.min_angle_sep}};
    j["mp"] = {{"M_pencil", cfg.mp.M_pencil}, {"N_pencil", cfg.mp.N_pencil}};
    json snrs = json::array();
    for (double v : cfg.snr_points_db) {
        if (std::isinf(v))
            snrs.push_back("inf");
        else
            snrs.push_back(v);
    }
    std::vector<std::string> est;
    if (cfg.use_wmusic) est.push_back("wmusic");
    if (cfg.use_mp) est.push_back("mp");
    j["sweep"] = {{"snr_points_db", snrs},
                  {"trials", cfg.trials},
                  {"seed", cfg.seed},
                  {"min_doppler_sep", cfg.constraints.min_doppler_sep},
                  {"min_paths", cfg.constraints.min_paths},
                  {"max_paths", cfg.constraints.max_paths},
                  {"estimators", est}};
    return j.dump(2);
}

std::string scenario_to_json(const Scenario& s) {
    json j;
    j["M"] = s.dims.M;
    j["N"] = s.dims.N;
    j["ell_max"] = s.dims.ell_max;
    j["kappa_max"] = s.dims.kappa_max;
    j["Q"] = s.pilot.Q;
    j["M_ZC"] = s.pilot.M_ZC;
    j["M_CP"] = s.pilot.M_CP;
    j["zc_root"] = s.pilot.zc_root;
    j["seed"] = s.seed;
    json users = json::array();
    for (const auto& u : s.users) {
        json paths = json::array();
        for (const DDPath& p : u)
            paths.push_back({{"re", p.gain.real()},
                             {"im", p.gain.imag()},
                             {"delay", p.delay},
                             {"doppler", p.doppler}});
        users.push_back(paths);
    }
    j["users"] = users;
    return j.dump(2);
}

Scenario scenario_from_json(const std::string& json_text) {
    json j = json::parse(json_text);
    Scenario s;
    s.dims.M = j.at("M").get<int>();
    s.dims.N = j.at("N").get<int>();
    s.dims.ell_max = j.at("ell_max").get<double>();
    s.dims.kappa_max = j.at("kappa_max").get<double>();
    s.pilot.Q = j.at("Q").get<int>();
    s.pilot.M_ZC = j.at("M_ZC").get<int>();
    s.pilot.M_CP = j.at("M_CP").get<int>();
    s.pilot.zc_root = j.at("zc_root").get<int>();
    s.seed = j.at("seed").get<std::uint64_t>();
    for (const json& u : j.at("users")) {
        std::vector<DDPath> paths;
        for (const json& p : u)
            paths.push_back({cplx(p.at("re").get<double>(), p.at("im").get<double>()),
                             p.at("delay").get<double>(), p.at("doppler").get<double>()});
        s.users.push_back(std::move(paths));
    }
    s.validate();
    return s;
}

std::string trial_report_to_json(const TrialReport& report) {
    json j;
    j["snr_db"] = std::isinf(report.snr_db) ? json("inf") : json(report.snr_db);
    j["scenario"] = json::parse(scenario_to_json(report.scenario));
    json ests = json::array();
    for (const TrialEstimatorReport& er : report.estimators) {
        json e;
        e["estimator"] = er.estimator;
        e["failed"] = er.failed;
        if (er.failed) e["failure"] = er.failure;
        e["flags"] = er.flags.notes();
        json list = json::array();
        for (const PathEstimate& p : er.estimates)
            list.push_back({{"user", p.user},
                            {"delay", p.delay},
                            {"doppler", p.doppler},
                            {"re", p.gain.real()},
                            {"im", p.gain.imag()}});
        e["estimates"] = list;
        json pairs = json::array();
        for (const auto& pr : er.match.pairs)
            pairs.push_back({{"user", pr.truth_user},
                             {"truth_index", pr.truth_index},
                             {"estimate_index", pr.estimate_index},
                             {"cost", pr.cost}});
        e["matches"] = pairs;
        json misses = json::array();
        for (const auto& [uq, ti] : er.match.misses)
            misses.push_back({{"user", uq}, {"truth_index", ti}});
        e["misses"] = misses;
        e["false_alarms"] = er.match.false_alarms;
        e["rmse"] = {{"delay", er.errors.rmse_delay()},
                     {"doppler", er.errors.rmse_doppler()},
                     {"gain", er.errors.rmse_gain()},
                     {"channel", er.errors.rmse_channel()}};
        ests.push_back(e);
    }
    j["estimators"] = ests;
    return j.dump(2);
}

}  // namespace ddest
