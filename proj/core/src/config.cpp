#include "uavsim/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace uavsim {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

[[noreturn]] void fail(int line, const std::string& message) {
    throw std::runtime_error("config line " + std::to_string(line) + ": " + message);
}

double parse_double(const std::string& value, int line) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) fail(line, "trailing characters after number '" + value + "'");
        return v;
    } catch (const std::logic_error&) {
        fail(line, "expected a number, got '" + value + "'");
    }
}

long parse_int(const std::string& value, int line) {
    long v = 0;
    const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || end != value.data() + value.size()) {
        fail(line, "expected an integer, got '" + value + "'");
    }
    return v;
}

std::vector<double> parse_double_list(const std::string& value, int line) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) fail(line, "empty entry in list '" + value + "'");
        out.push_back(parse_double(item, line));
    }
    if (out.empty()) fail(line, "expected a comma-separated list");
    return out;
}

std::string format_number(double v) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

using Setter = std::function<void(RunConfig&, const std::string&, int)>;

const std::map<std::string, Setter>& env_setters() {
    static const std::map<std::string, Setter> setters = {
        {"uav_count", [](RunConfig& c, const std::string& v, int l) { c.env.uav_count = static_cast<int>(parse_int(v, l)); }},
        {"user_count", [](RunConfig& c, const std::string& v, int l) { c.env.user_count = static_cast<int>(parse_int(v, l)); }},
        {"x_min", [](RunConfig& c, const std::string& v, int l) { c.env.area.x_min = parse_double(v, l); }},
        {"x_max", [](RunConfig& c, const std::string& v, int l) { c.env.area.x_max = parse_double(v, l); }},
        {"y_min", [](RunConfig& c, const std::string& v, int l) { c.env.area.y_min = parse_double(v, l); }},
        {"y_max", [](RunConfig& c, const std::string& v, int l) { c.env.area.y_max = parse_double(v, l); }},
        {"h_min", [](RunConfig& c, const std::string& v, int l) { c.env.area.h_min = parse_double(v, l); }},
        {"h_max", [](RunConfig& c, const std::string& v, int l) { c.env.area.h_max = parse_double(v, l); }},
        {"dt", [](RunConfig& c, const std::string& v, int l) { c.env.dt = parse_double(v, l); }},
        {"slots", [](RunConfig& c, const std::string& v, int l) { c.env.slots = static_cast<int>(parse_int(v, l)); }},
        {"recluster_period", [](RunConfig& c, const std::string& v, int l) { c.env.recluster_period = static_cast<int>(parse_int(v, l)); }},
        {"uav_power_w", [](RunConfig& c, const std::string& v, int l) { c.env.uav_power_w = parse_double(v, l); }},
        {"bandwidth_hz", [](RunConfig& c, const std::string& v, int l) { c.env.bandwidth_hz = parse_double(v, l); }},
        {"carrier_ghz", [](RunConfig& c, const std::string& v, int l) { c.env.channel.fc_ghz = parse_double(v, l); }},
        {"noise_dbm", [](RunConfig& c, const std::string& v, int l) { c.env.channel.noise_dbm = parse_double(v, l); }},
        {"fading", [](RunConfig& c, const std::string& v, int l) {
             if (v == "rayleigh") c.env.channel.fading = FadingKind::Rayleigh;
             else if (v == "none") c.env.channel.fading = FadingKind::None;
             else fail(l, "fading must be 'rayleigh' or 'none'");
         }},
        {"r_qos_bps", [](RunConfig& c, const std::string& v, int l) { c.env.r_qos_bps = parse_double(v, l); }},
        {"uav_speed", [](RunConfig& c, const std::string& v, int l) { c.env.uav_speed = parse_double(v, l); }},
        {"user_vmax", [](RunConfig& c, const std::string& v, int l) { c.env.user_vmax = parse_double(v, l); }},
        {"mobility", [](RunConfig& c, const std::string& v, int l) {
             if (v == "roam") c.env.mobility = MobilityModel::RandomRoam;
             else if (v == "directional") c.env.mobility = MobilityModel::DirectionalWalk;
             else fail(l, "mobility must be 'roam' or 'directional'");
         }},
        {"gears", [](RunConfig& c, const std::string& v, int l) { c.env.gear_fractions = parse_double_list(v, l); }},
        {"cluster_cap", [](RunConfig& c, const std::string& v, int l) { c.env.cluster_cap = static_cast<int>(parse_int(v, l)); }},
        {"initial_height", [](RunConfig& c, const std::string& v, int l) { c.env.initial_height = parse_double(v, l); }},
        {"lambda_max", [](RunConfig& c, const std::string& v, int l) { c.env.lambda_max = static_cast<int>(parse_int(v, l)); }},
        {"qos_recovery_window", [](RunConfig& c, const std::string& v, int l) { c.env.qos_recovery_window = static_cast<int>(parse_int(v, l)); }},
        {"reward", [](RunConfig& c, const std::string& v, int l) {
             if (v == "own") c.env.reward_scope = RewardScope::OwnCluster;
             else if (v == "global") c.env.reward_scope = RewardScope::Global;
             else fail(l, "reward must be 'own' or 'global'");
         }},
    };
    return setters;
}

const std::map<std::string, Setter>& train_setters() {
    static const std::map<std::string, Setter> setters = {
        {"episodes", [](RunConfig& c, const std::string& v, int l) { c.train.episodes = static_cast<int>(parse_int(v, l)); }},
        {"learning_rate", [](RunConfig& c, const std::string& v, int l) { c.train.learning_rate = parse_double(v, l); }},
        {"discount", [](RunConfig& c, const std::string& v, int l) { c.train.discount = parse_double(v, l); }},
        {"batch", [](RunConfig& c, const std::string& v, int l) { c.train.batch = static_cast<int>(parse_int(v, l)); }},
        {"buffer_capacity", [](RunConfig& c, const std::string& v, int l) { c.train.buffer_capacity = parse_int(v, l); }},
        {"target_sync", [](RunConfig& c, const std::string& v, int l) { c.train.target_sync = static_cast<int>(parse_int(v, l)); }},
        {"eps_start", [](RunConfig& c, const std::string& v, int l) { c.train.eps_start = parse_double(v, l); }},
        {"eval_episodes", [](RunConfig& c, const std::string& v, int l) { c.train.eval_episodes = static_cast<int>(parse_int(v, l)); }},
    };
    return setters;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
    RunConfig config;
    std::istringstream stream(text);
    std::string raw;
    std::string section;
    int line_no = 0;
    while (std::getline(stream, raw)) {
        line_no++;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(line_no, "unterminated section header");
            section = line.substr(1, line.size() - 2);
            if (section != "env" && section != "train") {
                fail(line_no, "unknown section [" + section + "]");
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(line_no, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail(line_no, "missing key before '='");
        if (value.empty()) fail(line_no, "missing value for key '" + key + "'");
        if (section.empty()) fail(line_no, "key '" + key + "' appears before any section");

        const auto& setters = section == "env" ? env_setters() : train_setters();
        const auto it = setters.find(key);
        if (it == setters.end()) {
            fail(line_no, "unknown key '" + key + "' in section [" + section + "]");
        }
        it->second(config, value, line_no);
    }
    config.env.validate();
    config.train.validate();
    return config;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("config: cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::string dump_config(const RunConfig& c) {
    std::ostringstream out;
    out << "[env]\n";
    out << "uav_count = " << c.env.uav_count << '\n';
    out << "user_count = " << c.env.user_count << '\n';
    out << "x_min = " << format_number(c.env.area.x_min) << '\n';
    out << "x_max = " << format_number(c.env.area.x_max) << '\n';
    out << "y_min = " << format_number(c.env.area.y_min) << '\n';
    out << "y_max = " << format_number(c.env.area.y_max) << '\n';
    out << "h_min = " << format_number(c.env.area.h_min) << '\n';
    out << "h_max = " << format_number(c.env.area.h_max) << '\n';
    out << "dt = " << format_number(c.env.dt) << '\n';
    out << "slots = " << c.env.slots << '\n';
    out << "recluster_period = " << c.env.recluster_period << '\n';
    out << "uav_power_w = " << format_number(c.env.uav_power_w) << '\n';
    out << "bandwidth_hz = " << format_number(c.env.bandwidth_hz) << '\n';
    out << "carrier_ghz = " << format_number(c.env.channel.fc_ghz) << '\n';
    out << "noise_dbm = " << format_number(c.env.channel.noise_dbm) << '\n';
    out << "fading = " << (c.env.channel.fading == FadingKind::Rayleigh ? "rayleigh" : "none")
        << '\n';
    out << "r_qos_bps = " << format_number(c.env.r_qos_bps) << '\n';
    out << "uav_speed = " << format_number(c.env.uav_speed) << '\n';
    out << "user_vmax = " << format_number(c.env.user_vmax) << '\n';
    out << "mobility = "
        << (c.env.mobility == MobilityModel::RandomRoam ? "roam" : "directional") << '\n';
    out << "gears = ";
    for (std::size_t i = 0; i < c.env.gear_fractions.size(); ++i) {
        if (i) out << ',';
        out << format_number(c.env.gear_fractions[i]);
    }
    out << '\n';
    out << "cluster_cap = " << c.env.cluster_cap << '\n';
    out << "initial_height = " << format_number(c.env.initial_height) << '\n';
    out << "lambda_max = " << c.env.lambda_max << '\n';
    out << "qos_recovery_window = " << c.env.qos_recovery_window << '\n';
    out << "reward = " << (c.env.reward_scope == RewardScope::OwnCluster ? "own" : "global")
        << '\n';
    out << "\n[train]\n";
    out << "episodes = " << c.train.episodes << '\n';
    out << "learning_rate = " << format_number(c.train.learning_rate) << '\n';
    out << "discount = " << format_number(c.train.discount) << '\n';
    out << "batch = " << c.train.batch << '\n';
    out << "buffer_capacity = " << c.train.buffer_capacity << '\n';
    out << "target_sync = " << c.train.target_sync << '\n';
    out << "eps_start = " << format_number(c.train.eps_start) << '\n';
    out << "eval_episodes = " << c.train.eval_episodes << '\n';
    return out.str();
}

}  // namespace uavsim
