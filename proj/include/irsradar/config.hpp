#pragma once

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "irsradar/core.hpp"

namespace irsradar {

/**
 * @brief Minimal key/value config document.
 *
 * One `key = value` per line, `#` comments, dotted keys for grouping.
 * Values are booleans, numbers, bare strings, or bracketed numeric lists.
 * Every key must be consumed by the schema; leftovers are reported with
 * their line numbers.
 */
class ConfigDoc {
public:
    static ConfigDoc parse_file(const std::string& path) {
        std::ifstream is(path);
        if (!is) throw std::runtime_error("cannot open config file: " + path);
        std::stringstream ss;
        ss << is.rdbuf();
        return parse_string(ss.str(), path);
    }

    static ConfigDoc parse_string(const std::string& text, const std::string& name = "<config>") {
        ConfigDoc doc;
        doc.name_ = name;
        std::istringstream is(text);
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(is, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            const std::string trimmed = trim(line);
            if (trimmed.empty()) continue;
            const auto eq = trimmed.find('=');
            if (eq == std::string::npos) {
                throw std::runtime_error(doc.loc(lineno) + ": expected 'key = value'");
            }
            const std::string key = trim(trimmed.substr(0, eq));
            const std::string value = trim(trimmed.substr(eq + 1));
            if (key.empty()) throw std::runtime_error(doc.loc(lineno) + ": empty key");
            if (value.empty()) throw std::runtime_error(doc.loc(lineno) + ": empty value for '" + key + "'");
            if (doc.entries_.count(key)) {
                throw std::runtime_error(doc.loc(lineno) + ": duplicate key '" + key + "'");
            }
            doc.entries_[key] = Entry{value, lineno};
        }
        return doc;
    }

    bool has(const std::string& key) const { return entries_.count(key) > 0; }

    std::string get_string(const std::string& key, const std::string& fallback) {
        const Entry* e = lookup(key);
        return e ? e->raw : fallback;
    }

    bool get_bool(const std::string& key, bool fallback) {
        const Entry* e = lookup(key);
        if (!e) return fallback;
        if (e->raw == "true") return true;
        if (e->raw == "false") return false;
        throw std::runtime_error(loc(e->line) + ": '" + key + "' must be true or false");
    }

    double get_double(const std::string& key, double fallback) {
        const Entry* e = lookup(key);
        return e ? to_double(key, *e) : fallback;
    }

    long long get_int(const std::string& key, long long fallback) {
        const Entry* e = lookup(key);
        if (!e) return fallback;
        const double d = to_double(key, *e);
        const long long v = static_cast<long long>(d);
        if (static_cast<double>(v) != d) {
            throw std::runtime_error(loc(e->line) + ": '" + key + "' must be an integer");
        }
        return v;
    }

    std::vector<double> get_list(const std::string& key, const std::vector<double>& fallback) {
        const Entry* e = lookup(key);
        if (!e) return fallback;
        const std::string& raw = e->raw;
        if (raw.size() < 2 || raw.front() != '[' || raw.back() != ']') {
            throw std::runtime_error(loc(e->line) + ": '" + key + "' must be a bracketed list");
        }
        std::vector<double> out;
        std::string inner = raw.substr(1, raw.size() - 2);
        std::istringstream is(inner);
        std::string tok;
        while (std::getline(is, tok, ',')) {
            tok = trim(tok);
            if (tok.empty()) continue;
            out.push_back(parse_double(key, tok, e->line));
        }
        return out;
    }

    Vec2 get_vec2(const std::string& key, const Vec2& fallback) {
        if (!has(key)) return fallback;
        const std::size_t line = entries_.at(key).line;
        const auto v = get_list(key, {});
        if (v.size() != 2) throw std::runtime_error(loc(line) + ": '" + key + "' must have two entries");
        return {v[0], v[1]};
    }

    /// Error out if any key was never consumed by a getter.
    void finish() const {
        std::string msg;
        for (const auto& [key, entry] : entries_) {
            if (!consumed_.count(key)) {
                msg += (msg.empty() ? "" : "; ") + loc(entry.line) + ": unknown key '" + key + "'";
            }
        }
        if (!msg.empty()) throw std::runtime_error(msg);
    }

private:
    struct Entry {
        std::string raw;
        std::size_t line = 0;
    };

    const Entry* lookup(const std::string& key) {
        auto it = entries_.find(key);
        if (it == entries_.end()) return nullptr;
        consumed_.insert(key);
        return &it->second;
    }

    double to_double(const std::string& key, const Entry& e) const {
        return parse_double(key, e.raw, e.line);
    }

    double parse_double(const std::string& key, const std::string& tok, std::size_t line) const {
        try {
            std::size_t used = 0;
            const double d = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            return d;
        } catch (const std::exception&) {
            throw std::runtime_error(loc(line) + ": '" + key + "' has a non-numeric value '" + tok + "'");
        }
    }

    static std::string trim(const std::string& s) {
        std::size_t b = 0, e = s.size();
        while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
        while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
        return s.substr(b, e - b);
    }

    std::string loc(std::size_t line) const { return name_ + ":" + std::to_string(line); }

    std::string name_;
    std::map<std::string, Entry> entries_;
    std::set<std::string> consumed_;
};

} // namespace irsradar
