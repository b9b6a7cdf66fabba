// Copyright 2026 The qtamper Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qtamper/qtamper.h"

namespace {

enum class Kind { Number, Text };

struct Flag {
    const char *name;
    Kind kind;
    const char *help;
};

struct Command {
    const char *name;
    const char *help;
    std::vector<Flag> flags;
};

const std::vector<Command> &commands() {
    static const std::vector<Command> table = {
        {"audit-family",
         "check a family against the size, rank and fidelity conditions",
         {{"family", Kind::Text, "family JSON file or builtin (identity, depolarizing, traceless-unitaries:N, ...)"},
          {"alpha", Kind::Number, "size exponent (default 0.2)"},
          {"delta", Kind::Number, "rank / fidelity exponent (default 0.6)"},
          {"d", Kind::Number, "dimension, needed by builtin families"},
          {"seed", Kind::Number, "master seed (default 0)"}}},
        {"moments",
         "Monte Carlo moments of X_st against closed forms and bounds",
         {{"channel", Kind::Text, "channel JSON file or builtin"},
          {"d", Kind::Number, "dimension"},
          {"k", Kind::Number, "message bits (default 1)"},
          {"order", Kind::Number, "moment order 1..4 (default 1)"},
          {"pair", Kind::Text, "off or diag (default off)"},
          {"trials", Kind::Number, "Haar samples (default 10000)"},
          {"constant", Kind::Number, "hidden constant of the higher-moment bound (default 4)"},
          {"seed", Kind::Number, "master seed (default 0)"}}},
        {"soundness",
         "exact non-bottom probabilities over Haar encoders",
         {{"family", Kind::Text, "family JSON file or builtin"},
          {"d", Kind::Number, "dimension"},
          {"k", Kind::Number, "message bits (default 1)"},
          {"samples", Kind::Number, "Haar encoder samples (default 20)"},
          {"mode", Kind::Text, "exact (default)"},
          {"seed", Kind::Number, "master seed (default 0)"}}},
        {"beta-check",
         "overlap of a Haar-rotated vector against Beta(1, d-1)",
         {{"d", Kind::Number, "dimension"},
          {"trials", Kind::Number, "samples (default 10000)"},
          {"thresholds", Kind::Text, "comma separated thresholds"},
          {"seed", Kind::Number, "master seed (default 0)"}}},
        {"combinatorics-selftest",
         "permutation identities and the generalized swap trick",
         {{"n-max", Kind::Number, "largest degree, at most 6 (default 6)"},
          {"swap-instances", Kind::Number, "random swap-trick instances (default 100)"},
          {"seed", Kind::Number, "master seed (default 0)"}}},
        {"break-classical",
         "constant-function attack on complete classical schemes",
         {{"scheme", Kind::Text, "classical_table JSON file; random tables when absent"},
          {"tables", Kind::Number, "random tables (default 50)"},
          {"n-max", Kind::Number, "largest codeword length (default 6)"},
          {"k-max", Kind::Number, "largest message length (default 3)"},
          {"seed", Kind::Number, "master seed (default 0)"}}},
        {"hadamard-demo",
         "decode distribution of the Hadamard scheme under constant tampering",
         {{"n", Kind::Number, "codeword bits (default 4)"},
          {"k", Kind::Number, "message bits (default 2)"},
          {"y", Kind::Number, "constant codeword; all when absent"},
          {"m", Kind::Number, "encoded message (default 0)"},
          {"seed", Kind::Number, "master seed (default 0)"}}},
        {"net",
         "greedy delta-net with empirical coverage",
         {{"dim", Kind::Number, "Hilbert space dimension K <= 8 (default 2)"},
          {"delta", Kind::Number, "radius in trace distance (default 0.5)"},
          {"streak", Kind::Number, "rejection streak that ends packing (default 2000)"},
          {"probes", Kind::Number, "verification probes (default 10000)"},
          {"emit-points", Kind::Number, "1 to include the net states"},
          {"seed", Kind::Number, "master seed (default 0)"}}},
        {"continuity-check",
         "Helstrom continuity of the acceptance probability",
         {{"d", Kind::Number, "dimension (default 16)"},
          {"k", Kind::Number, "message qubits (default 2)"},
          {"pairs", Kind::Number, "random instances (default 1000)"},
          {"channel", Kind::Text, "random:R (fresh per instance, default random:4), builtin or file"},
          {"seed", Kind::Number, "master seed (default 0)"}}},
        {"validate-channel",
         "CP / TP check, minimum Kraus rank and entanglement fidelity",
         {{"channel", Kind::Text, "channel JSON file or builtin"},
          {"d", Kind::Number, "dimension, needed by builtins"},
          {"seed", Kind::Number, "master seed (default 0)"}}},
    };
    return table;
}

nlohmann::ordered_json typed_value(const std::string &text, Kind kind) {
    if (kind == Kind::Number) {
        try {
            auto v = nlohmann::ordered_json::parse(text);
            if (v.is_number()) return v;
        } catch (const nlohmann::json::exception &) {
        }
    }
    return text;
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

bool write_file(const std::filesystem::path &path, const std::string &body) {
    std::ofstream out(path, std::ios::binary);
    out << body;
    return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"qtamper: tamper detection experiments with Haar random quantum encodings"};
    app.set_version_flag("--version", std::string(qt_version()));
    app.require_subcommand(1);

    std::string out_dir;
    std::string format = "json";
    app.add_option("--out", out_dir, "directory for report.json, report.csv and report.meta.json");
    app.add_option("--format", format, "stdout format")->check(CLI::IsMember({"json", "csv"}));

    std::map<std::string, std::map<std::string, std::string>> values;
    for (const auto &cmd : commands()) {
        CLI::App *sub = app.add_subcommand(cmd.name, cmd.help);
        sub->fallthrough();
        auto &slot = values[cmd.name];
        for (const auto &flag : cmd.flags) {
            sub->add_option(std::string("--") + flag.name, slot[flag.name], flag.help);
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const Command *chosen = nullptr;
    for (const auto &cmd : commands()) {
        if (app.got_subcommand(cmd.name)) chosen = &cmd;
    }
    CLI::App *sub = app.get_subcommand(chosen->name);

    nlohmann::ordered_json config = nlohmann::ordered_json::object();
    for (const auto &flag : chosen->flags) {
        if (sub->count(std::string("--") + flag.name) > 0) {
            config[flag.name] = typed_value(values[chosen->name][flag.name], flag.kind);
        }
    }

    char *report = nullptr;
    char *csv = nullptr;
    int pass = 0;
    const qt_status status = qt_run_command(chosen->name, config.dump().c_str(), &report, &csv, &pass);
    if (status != QT_OK) {
        const std::string field = qt_last_error_field();
        std::string message = qt_last_error();
        if (!field.empty() && message.rfind(field + ": ", 0) == 0) message.erase(0, field.size() + 2);
        std::cerr << "qtamper " << chosen->name << ": " << qt_status_name(status) << " error";
        if (!field.empty()) std::cerr << " in --" << field;
        std::cerr << ": " << message << "\n";
        // A net that fails its coverage check is a verdict, not bad input.
        return status == QT_ERR_NET_CONSTRUCTION ? 1 : 2;
    }
    const std::string report_body = report;
    const std::string csv_body = csv;
    qt_string_free(report);
    qt_string_free(csv);

    if (!out_dir.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(out_dir, ec);
        const std::filesystem::path dir(out_dir);
        nlohmann::ordered_json meta{{"command", chosen->name},
                                    {"library_version", qt_version()},
                                    {"created_utc", utc_timestamp()},
                                    {"config", config}};
        bool ok = !ec && write_file(dir / "report.json", report_body) &&
                  write_file(dir / "report.meta.json", meta.dump(2) + "\n");
        if (ok && !csv_body.empty()) ok = write_file(dir / "report.csv", csv_body);
        if (!ok) {
            std::cerr << "qtamper: cannot write reports to " << out_dir << "\n";
            return 2;
        }
    }

    if (format == "csv") {
        std::cout << csv_body;
    } else {
        std::cout << report_body;
    }
    return pass ? 0 : 1;
}
