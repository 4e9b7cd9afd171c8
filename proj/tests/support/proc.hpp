// Copyright (C) 2026 The foon authors
// SPDX-License-Identifier: Apache-2.0
//
// Minimal process spawning for tests that drive the command line binary.

#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace proc {

struct CmdResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

inline std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return std::move(ss).str();
}

/// Run a shell command, capturing stdout/stderr through files in scratch.
/// Paths in the command must not contain spaces.
inline CmdResult run(const std::string& command, const std::filesystem::path& scratch) {
    static int counter = 0;
    std::filesystem::path out_path = scratch / ("cmd_" + std::to_string(counter) + ".out");
    std::filesystem::path err_path = scratch / ("cmd_" + std::to_string(counter) + ".err");
    ++counter;
    std::string full = command + " > " + out_path.string() + " 2> " + err_path.string();
    int status = std::system(full.c_str());
    CmdResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = slurp(out_path);
    result.err = slurp(err_path);
    return result;
}

/// Empty per-test scratch directory under the system temp root.
inline std::filesystem::path fresh_dir(const std::string& tag) {
    std::filesystem::path dir = std::filesystem::temp_directory_path() / "foon_tests" / tag;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace proc
