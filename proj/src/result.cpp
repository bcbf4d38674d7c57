#include "qnd/result.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "qnd/errors.hpp"

namespace qnd {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open output file", path.string());
    return out;
}

void write_csv(const Table& table, const ResultBundle& bundle,
               const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "# bundle = " << bundle.name << "\n";
    out << "# table = " << table.name << "\n";
    out << "# units: lengths nm, energies meV, angles rad, couplings dimensionless\n";
    for (const auto& [k, v] : table.meta) out << "# " << k << " = " << v << "\n";
    const bool labeled = !table.labels.empty();
    if (labeled) out << table.label_column << ",";
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        out << table.columns[c] << (c + 1 < table.columns.size() ? "," : "");
    out << "\n";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        if (labeled) out << table.labels[r] << ",";
        const auto& row = table.rows[r];
        for (std::size_t c = 0; c < row.size(); ++c)
            out << fmt_double(row[c]) << (c + 1 < row.size() ? "," : "");
        out << "\n";
    }
    if (!out) throw io_error("write failed", path.string());
}

void write_jsonl(const Table& table, const std::filesystem::path& path) {
    auto out = open_out(path);
    const bool labeled = !table.labels.empty();
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        nlohmann::ordered_json obj;
        obj["table"] = table.name;
        if (labeled) obj[table.label_column] = table.labels[r];
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            const double v = table.rows[r][c];
            if (std::isfinite(v))
                obj[table.columns[c]] = v;
            else
                obj[table.columns[c]] = nullptr;
        }
        out << obj.dump() << "\n";
    }
    if (!out) throw io_error("write failed", path.string());
}

}  // namespace

std::vector<std::filesystem::path> emit(const ResultBundle& bundle,
                                        const std::filesystem::path& out_dir, EmitFormat format) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw io_error("cannot create output directory", out_dir.string());

    std::vector<std::filesystem::path> written;
    for (const auto& [key, value] : bundle.metadata) {
        if (key != "config") continue;
        const auto path = out_dir / (bundle.name + "_config.ini");
        auto out = open_out(path);
        out << value;
        if (!out) throw io_error("write failed", path.string());
        written.push_back(path);
    }
    for (const auto& table : bundle.tables) {
        const char* ext = format == EmitFormat::csv ? ".csv" : ".jsonl";
        const auto path = out_dir / (bundle.name + "_" + table.name + ext);
        if (format == EmitFormat::csv)
            write_csv(table, bundle, path);
        else
            write_jsonl(table, path);
        written.push_back(path);
    }
    return written;
}

}  // namespace qnd
