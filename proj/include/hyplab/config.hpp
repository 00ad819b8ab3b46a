#pragma once
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "hyplab/errors.hpp"

namespace hyplab {

// Plain key=value run configuration: one pair per line, '#' starts a
// comment, blank lines ignored.  Serialization is canonical (sorted
// keys, one pair per line), so parse-then-serialize normalizes any
// equivalent text to the same bytes.
class Config {
  public:
    static Config parse(const std::string& text);
    static Config from_file(const std::string& path);

    std::string serialize() const;

    bool has(const std::string& key) const;
    std::string get_str(const std::string& key) const;
    std::string get_str(const std::string& key, const std::string& dflt) const;
    double get_num(const std::string& key) const;
    double get_num(const std::string& key, double dflt) const;
    long long get_int(const std::string& key) const;
    long long get_int(const std::string& key, long long dflt) const;
    bool get_flag(const std::string& key, bool dflt) const;

    void set(const std::string& key, const std::string& value);

    // Rejects any key outside the allowed set, naming the offender.
    void restrict_keys(const std::set<std::string>& allowed) const;

    const std::map<std::string, std::string>& items() const { return kv_; }

  private:
    std::map<std::string, std::string> kv_;
};

// parse + serialize: the canonical form of a config text.
std::string normalize(const std::string& text);

// "0.04,0.02,0.01" -> {0.04, 0.02, 0.01}; rejects empties/non-numbers.
std::vector<double> parse_num_list(const std::string& text, const std::string& key_for_errors);

} // namespace hyplab
