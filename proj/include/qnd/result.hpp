#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace qnd {

// Column-oriented real table. When labels is nonempty it provides one string
// per row, emitted as the leading column.
struct Table {
    std::string name;
    std::vector<std::pair<std::string, std::string>> meta;
    std::string label_column;  // header for the label column, if any
    std::vector<std::string> labels;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct ResultBundle {
    std::string name;
    std::vector<std::pair<std::string, std::string>> metadata;  // includes the config echo
    std::vector<Table> tables;
};

enum class EmitFormat { csv, jsonl };

// Writes one file per table plus a config echo. Output is a pure function of
// the bundle: no timestamps, reals at 17 significant digits.
std::vector<std::filesystem::path> emit(const ResultBundle& bundle,
                                        const std::filesystem::path& out_dir, EmitFormat format);

}  // namespace qnd
