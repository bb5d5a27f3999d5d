/* Copyright 2026 The cudtaus Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cudtaus/tausworthe.hpp"

namespace cudtaus {

/// Generator parameters in their runtime-agnostic text form: coefficient
/// token rows (constant term first) plus the scalar fields. One block per
/// generator:
///
///   b 4
///   w 16
///   p a2 1 1
///   q a 1
///   sigma 8
///
/// Blocks are separated by blank lines; # starts a comment line.
struct ParamRecord {
    unsigned b = 0;
    unsigned w = 0;  // 0 = use the per-field default
    std::string p_tokens;
    std::string q_tokens;
    std::uint64_t sigma = 0;
};

inline std::string format_param_record(const ParamRecord& rec) {
    std::ostringstream out;
    out << "b " << rec.b << '\n';
    if (rec.w != 0) out << "w " << rec.w << '\n';
    out << "p " << rec.p_tokens << '\n';
    out << "q " << rec.q_tokens << '\n';
    out << "sigma " << rec.sigma << '\n';
    return out.str();
}

inline std::vector<ParamRecord> parse_param_records(std::istream& in) {
    std::vector<ParamRecord> records;
    ParamRecord cur;
    bool any = false;
    auto flush = [&] {
        if (!any) return;
        if (cur.b == 0) throw std::invalid_argument("parameter block is missing the field order b");
        if (cur.p_tokens.empty() || cur.q_tokens.empty())
            throw std::invalid_argument("parameter block is missing p or q coefficients");
        records.push_back(cur);
        cur = ParamRecord{};
        any = false;
    };
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) {
            flush();
            continue;
        }
        if (line[first] == '#') continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        std::string rest;
        std::getline(ls, rest);
        const auto start = rest.find_first_not_of(" \t");
        rest = start == std::string::npos ? std::string() : rest.substr(start);
        while (!rest.empty() && (rest.back() == '\r' || rest.back() == ' ')) rest.pop_back();
        any = true;
        if (key == "b") cur.b = static_cast<unsigned>(std::stoul(rest));
        else if (key == "w") cur.w = static_cast<unsigned>(std::stoul(rest));
        else if (key == "p") cur.p_tokens = rest;
        else if (key == "q") cur.q_tokens = rest;
        else if (key == "sigma") cur.sigma = std::stoull(rest);
        else throw std::invalid_argument("unknown parameter key '" + key + "'");
    }
    flush();
    return records;
}

inline std::vector<ParamRecord> load_param_records(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open parameter file " + path);
    return parse_param_records(in);
}

/// Materializes validated GeneratorParams<B> from a text record.
template <unsigned B>
GeneratorParams<B> params_from_record(const ParamRecord& rec) {
    if (rec.b != B) throw std::invalid_argument("parameter record is for a different field");
    const Poly<B> p = Poly<B>::parse(rec.p_tokens);
    const Poly<B> q = Poly<B>::parse(rec.q_tokens);
    const unsigned w = rec.w == 0 ? default_digit_count<B>() : rec.w;
    if (rec.sigma != 0) return GeneratorParams<B>::create(p, q, rec.sigma, w);
    return GeneratorParams<B>::from_pq(p, q, w);
}

template <unsigned B>
ParamRecord record_from_params(const GeneratorParams<B>& params) {
    ParamRecord rec;
    rec.b = B;
    rec.w = params.w;
    rec.p_tokens = params.p.to_token_string();
    rec.q_tokens = params.q.to_token_string();
    rec.sigma = params.sigma;
    return rec;
}

/// Decimal digit count for exact u-stream dumps: ceil(w log10 b) + 2.
inline int stream_decimal_digits(unsigned b, unsigned w) {
    return static_cast<int>(std::ceil(w * std::log10(static_cast<double>(b)))) + 2;
}

inline std::string format_stream_value(double u, unsigned b, unsigned w) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", stream_decimal_digits(b, w), u);
    return buf;
}

/// Flat key-value experiment configuration ("key value..." per line, #
/// comments). Repeated keys append rows (used for matrix input).
struct ExperimentConfig {
    std::map<std::string, std::vector<std::string>> entries;

    bool has(const std::string& key) const { return entries.count(key) > 0; }

    const std::string& get(const std::string& key) const {
        const auto it = entries.find(key);
        if (it == entries.end() || it->second.empty())
            throw std::invalid_argument("config is missing required key '" + key + "'");
        return it->second.front();
    }
    std::string get_or(const std::string& key, const std::string& fallback) const {
        const auto it = entries.find(key);
        return it == entries.end() ? fallback : it->second.front();
    }
    std::uint64_t get_u64(const std::string& key) const { return std::stoull(get(key)); }
    std::uint64_t get_u64_or(const std::string& key, std::uint64_t fallback) const {
        return has(key) ? get_u64(key) : fallback;
    }
    double get_double(const std::string& key) const { return std::stod(get(key)); }
    double get_double_or(const std::string& key, double fallback) const {
        return has(key) ? get_double(key) : fallback;
    }
    const std::vector<std::string>& get_all(const std::string& key) const {
        static const std::vector<std::string> empty;
        const auto it = entries.find(key);
        return it == entries.end() ? empty : it->second;
    }
};

inline ExperimentConfig parse_experiment_config(std::istream& in) {
    ExperimentConfig cfg;
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        std::string rest;
        std::getline(ls, rest);
        const auto start = rest.find_first_not_of(" \t");
        rest = start == std::string::npos ? std::string() : rest.substr(start);
        while (!rest.empty() && (rest.back() == '\r' || rest.back() == ' ')) rest.pop_back();
        cfg.entries[key].push_back(rest);
    }
    return cfg;
}

inline ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file " + path);
    return parse_experiment_config(in);
}

/// Design-matrix CSV: header row naming every column, one response column
/// selected by name; every other column becomes an explanatory variable. An
/// intercept column of ones is prepended.
struct RegressionData {
    std::vector<std::vector<double>> X;  // n rows, k+1 cols (leading intercept)
    std::vector<double> y;
    std::vector<std::string> names;  // explanatory column names
};

inline RegressionData load_regression_csv(std::istream& in, const std::string& response) {
    RegressionData data;
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty design-matrix CSV");
    std::vector<std::string> header;
    {
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
            header.push_back(cell);
        }
    }
    std::size_t resp_col = header.size();
    for (std::size_t j = 0; j < header.size(); ++j)
        if (header[j] == response) resp_col = j;
    if (resp_col == header.size())
        throw std::invalid_argument("response column '" + response + "' not found");
    for (std::size_t j = 0; j < header.size(); ++j)
        if (j != resp_col) data.names.push_back(header[j]);
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        std::string cell;
        std::vector<double> row = {1.0};  // intercept
        double yv = 0.0;
        std::size_t j = 0;
        while (std::getline(ls, cell, ',')) {
            const double v = std::stod(cell);
            if (j == resp_col) yv = v;
            else row.push_back(v);
            ++j;
        }
        if (j != header.size()) throw std::invalid_argument("ragged CSV row");
        data.X.push_back(std::move(row));
        data.y.push_back(yv);
    }
    return data;
}

inline RegressionData load_regression_csv_file(const std::string& path,
                                               const std::string& response) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open data file " + path);
    return load_regression_csv(in, response);
}

}  // namespace cudtaus
