// Copyright 2026 The pathforest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <json.hpp>

namespace opf {

enum class LogLevel { info, warn, error };

inline const char* log_level_name(LogLevel l) {
    switch (l) {
        case LogLevel::info: return "info";
        case LogLevel::warn: return "warn";
        case LogLevel::error: return "error";
    }
    return "?";
}

/// Timestamped run log for the command-line tools: records go to stderr and,
/// optionally, to a log file; --log-json switches to one JSON object per line.
/// quiet suppresses info records (warnings and errors always come through);
/// verbose additionally emits the detail records.
class RunLog {
public:
    RunLog(std::string stage, bool json = false, bool quiet = false, bool verbose = false,
           std::optional<std::filesystem::path> file = std::nullopt)
        : stage_(std::move(stage)), json_(json), quiet_(quiet), verbose_(verbose) {
        if (file) {
            file_.open(*file, std::ios::app);
            if (!file_) std::cerr << "warning: cannot open log file " << *file << "\n";
        }
    }

    void info(const std::string& message) { write(LogLevel::info, message); }
    void warn(const std::string& message) { write(LogLevel::warn, message); }
    void error(const std::string& message) { write(LogLevel::error, message); }

    /// Extra info-level records shown only under --verbose.
    void detail(const std::string& message) {
        if (verbose_) write(LogLevel::info, message);
    }

private:
    static std::string timestamp() {
        const auto now = std::chrono::system_clock::now();
        const std::time_t t = std::chrono::system_clock::to_time_t(now);
        std::tm tm{};
        gmtime_r(&t, &tm);
        char buf[32];
        std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
        return buf;
    }

    void write(LogLevel level, const std::string& message) {
        if (quiet_ && level == LogLevel::info) return;
        std::string line;
        if (json_) {
            nlohmann::json j;
            j["time"] = timestamp();
            j["level"] = log_level_name(level);
            j["stage"] = stage_;
            j["message"] = message;
            line = j.dump();
        } else {
            line = "[" + timestamp() + "] " + log_level_name(level) + " " + stage_ + ": " +
                   message;
        }
        std::cerr << line << "\n";
        if (file_.is_open()) file_ << line << "\n" << std::flush;
    }

    std::string stage_;
    bool json_;
    bool quiet_;
    bool verbose_;
    std::ofstream file_;
};

} // namespace opf
