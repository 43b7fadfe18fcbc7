// Copyright 2026 The macrocat Authors
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

// Command-line front end. Everything the `macrocat` binary does is reachable through run_cli so
// tests can drive it in-process.

#ifndef MACROCAT_CLI_H
#define MACROCAT_CLI_H

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "macrocat/macroscopicity.h"

namespace macrocat::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kDataError = 2, kGateFailure = 3 };

constexpr uint64_t kDefaultSeed = 0xC0FFEE;

/// Malformed CSV input; `line` is 1-based.
class CsvError : public std::runtime_error {
   public:
    CsvError(size_t line, const std::string &message);
    size_t line() const {
        return line_;
    }

   private:
    size_t line_;
};

struct CsvRecord {
    size_t line;
    std::vector<std::string> fields;
};

/// RFC 4180-style records: comma separated, `\n` terminated, fields optionally double-quoted with
/// "" as the escaped quote. Carriage returns outside quotes and invalid UTF-8 are rejected. Empty
/// lines are skipped.
std::vector<CsvRecord> parse_csv(std::string_view text);

/// Quotes a field when it contains a comma, quote, newline, carriage return, or leading/trailing
/// space.
std::string csv_escape(std::string_view field);

/// Shortest round-trip decimal form (std::to_chars); "inf", "-inf", "nan" for non-finite values.
std::string format_number(double value);

/// Input schema header.
inline constexpr std::string_view kIngestHeader = "label,year,v_minus,mean_photon_number,source_note";
/// Columns appended by `ingest`.
inline const std::vector<std::string> kDerivedColumns{
    "n_eff_as_printed", "n_eff_derivation_consistent", "cat_N_as_printed", "cat_N_derivation_consistent", "x_c"};

struct SkippedRow {
    size_t line;
    std::string reason;
};

struct IngestResult {
    std::vector<ExperimentRecord> records;
    std::vector<SkippedRow> skipped;
};

/// Parses experiment records. With `recompute` the derived columns of a previous ingest output
/// are accepted and ignored. Throws CsvError on malformed input.
IngestResult read_experiments(std::string_view text, bool recompute);

enum class Format { Table, Csv, Json };

using Cell = std::variant<std::monostate, std::string, double, int64_t>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// JSON value of a cell; non-finite numbers become their text form.
nlohmann::json cell_to_json(const Cell &cell);

/// table: space-aligned columns; csv: header plus rows; json: array of objects.
std::string render(const Table &table, Format format);

/// Runs the CLI with argv-style arguments (args[0] is the program name). Output goes to `out`
/// unless --output is given; diagnostics go to `err`. `env_seed` is the value of MACROCAT_SEED.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err,
            std::optional<std::string> env_seed = std::nullopt);

}  // namespace macrocat::cli

#endif
