// Copyright (C) 2026 The foon authors
// SPDX-License-Identifier: Apache-2.0
//

#include "foon/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace foon {

namespace {

std::string trim(std::string_view s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    size_t e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void bad(int line, const std::string& what) {
    throw std::invalid_argument("config line " + std::to_string(line) + ": " + what);
}

double parse_double(const std::string& v, int line) {
    double out;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size()) bad(line, "invalid number '" + v + "'");
    if (!std::isfinite(out)) bad(line, "value must be finite");
    return out;
}

int parse_int(const std::string& v, int line) {
    int out;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size()) bad(line, "invalid integer '" + v + "'");
    return out;
}

void check_unit(double v, const char* key) {
    if (v < 0 || v > 1)
        throw std::invalid_argument(std::string(key) + " must be in [0, 1]");
}

void check_nonneg(double v, const char* key) {
    if (v < 0) throw std::invalid_argument(std::string(key) + " must be non-negative");
}

}  // namespace

void validate_config(const PipelineConfig& cfg) {
    check_nonneg(cfg.alpha, "alpha");
    check_nonneg(cfg.beta, "beta");
    check_nonneg(cfg.gamma, "gamma");
    if (cfg.alpha + cfg.beta + cfg.gamma <= 0)
        throw std::invalid_argument("alpha + beta + gamma must be positive");
    if (cfg.sigma_dist_frac <= 0)
        throw std::invalid_argument("sigma_dist_frac must be positive");
    check_unit(cfg.freq_threshold, "freq_threshold");
    check_nonneg(cfg.kappa, "kappa");
    check_nonneg(cfg.lambda, "lambda");
    check_nonneg(cfg.eta, "eta");
    check_nonneg(cfg.alpha_fusion, "alpha_fusion");
    check_unit(cfg.probe_threshold, "probe_threshold");
    if (cfg.top_k < 1) throw std::invalid_argument("top_k must be at least 1");
    check_unit(cfg.accuracy_threshold, "accuracy_threshold");
    check_nonneg(cfg.w_fu, "w_fu");
    check_nonneg(cfg.w_obj, "w_obj");
    if (std::abs(cfg.w_fu + cfg.w_obj - 1.0) > 1e-9)
        throw std::invalid_argument("w_fu + w_obj must sum to 1");
}

PipelineConfig parse_config(const std::string& text) {
    PipelineConfig cfg;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        if (size_t h = line.find('#'); h != std::string::npos) line.resize(h);
        line = trim(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos) bad(line_no, "expected key = value");
        std::string key = trim(std::string_view(line).substr(0, eq));
        std::string value = trim(std::string_view(line).substr(eq + 1));
        if (key.empty()) bad(line_no, "empty key");
        if (value.empty()) bad(line_no, "empty value for '" + key + "'");

        if (key == "alpha") cfg.alpha = parse_double(value, line_no);
        else if (key == "beta") cfg.beta = parse_double(value, line_no);
        else if (key == "gamma") cfg.gamma = parse_double(value, line_no);
        else if (key == "sigma_dist_frac") cfg.sigma_dist_frac = parse_double(value, line_no);
        else if (key == "freq_threshold") cfg.freq_threshold = parse_double(value, line_no);
        else if (key == "kappa") cfg.kappa = parse_double(value, line_no);
        else if (key == "lambda") cfg.lambda = parse_double(value, line_no);
        else if (key == "eta") cfg.eta = parse_double(value, line_no);
        else if (key == "alpha_fusion") cfg.alpha_fusion = parse_double(value, line_no);
        else if (key == "probe_threshold") cfg.probe_threshold = parse_double(value, line_no);
        else if (key == "top_k") cfg.top_k = parse_int(value, line_no);
        else if (key == "accuracy_threshold") cfg.accuracy_threshold = parse_double(value, line_no);
        else if (key == "w_fu") cfg.w_fu = parse_double(value, line_no);
        else if (key == "w_obj") cfg.w_obj = parse_double(value, line_no);
        else bad(line_no, "unknown key '" + key + "'");
    }
    validate_config(cfg);
    return cfg;
}

PipelineConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_config(buf.str());
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(path.string() + ": " + e.what());
    }
}

}  // namespace foon
