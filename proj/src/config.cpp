#include "hyplab/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace hyplab {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace((unsigned char)s[b])) ++b;
    while (e > b && std::isspace((unsigned char)s[e - 1])) --e;
    return s.substr(b, e - b);
}

bool valid_key(const std::string& k) {
    if (k.empty()) return false;
    if (!std::isalpha((unsigned char)k[0]) && k[0] != '_') return false;
    for (char c : k)
        if (!std::isalnum((unsigned char)c) && c != '_') return false;
    return true;
}

} // namespace

Config Config::parse(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + " has no '=': \"" + line +
                              "\"");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!valid_key(key))
            throw ConfigError("config line " + std::to_string(lineno) + " has a malformed key: \"" +
                              key + "\"");
        if (cfg.kv_.count(key)) throw ConfigError("duplicate config key: " + key);
        cfg.kv_[key] = value;
    }
    return cfg;
}

Config Config::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

std::string Config::serialize() const {
    std::string out;
    for (const auto& [k, v] : kv_) {
        out += k;
        out += '=';
        out += v;
        out += '\n';
    }
    return out;
}

bool Config::has(const std::string& key) const { return kv_.count(key) != 0; }

std::string Config::get_str(const std::string& key) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) throw ConfigError("missing config key: " + key);
    return it->second;
}

std::string Config::get_str(const std::string& key, const std::string& dflt) const {
    const auto it = kv_.find(key);
    return it == kv_.end() ? dflt : it->second;
}

double Config::get_num(const std::string& key) const {
    const std::string v = get_str(key);
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        throw ConfigError("config key '" + key + "' is not a number: \"" + v + "\"");
    return x;
}

double Config::get_num(const std::string& key, double dflt) const {
    return has(key) ? get_num(key) : dflt;
}

long long Config::get_int(const std::string& key) const {
    const std::string v = get_str(key);
    char* end = nullptr;
    const long long x = std::strtoll(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0')
        throw ConfigError("config key '" + key + "' is not an integer: \"" + v + "\"");
    return x;
}

long long Config::get_int(const std::string& key, long long dflt) const {
    return has(key) ? get_int(key) : dflt;
}

bool Config::get_flag(const std::string& key, bool dflt) const {
    if (!has(key)) return dflt;
    const std::string v = get_str(key);
    if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
    if (v == "0" || v == "false" || v == "no" || v == "off") return false;
    throw ConfigError("config key '" + key + "' is not a flag: \"" + v + "\"");
}

void Config::set(const std::string& key, const std::string& value) {
    if (!valid_key(key)) throw ConfigError("malformed config key: \"" + key + "\"");
    kv_[key] = value;
}

void Config::restrict_keys(const std::set<std::string>& allowed) const {
    for (const auto& [k, v] : kv_) {
        if (allowed.count(k)) continue;
        std::string msg = "unknown config key '" + k + "' (allowed:";
        for (const auto& a : allowed) msg += " " + a;
        msg += ")";
        throw ConfigError(msg);
    }
}

std::string normalize(const std::string& text) { return Config::parse(text).serialize(); }

std::vector<double> parse_num_list(const std::string& text, const std::string& key_for_errors) {
    std::vector<double> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty())
            throw ConfigError("config key '" + key_for_errors + "' has an empty list entry");
        char* end = nullptr;
        const double x = std::strtod(item.c_str(), &end);
        if (end == item.c_str() || *end != '\0')
            throw ConfigError("config key '" + key_for_errors + "' has a non-numeric entry: \"" +
                              item + "\"");
        out.push_back(x);
    }
    if (out.empty()) throw ConfigError("config key '" + key_for_errors + "' is an empty list");
    return out;
}

} // namespace hyplab
