#include "tfim/table_io.hpp"

#include "tfim/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <system_error>
#include <unistd.h>

namespace tfim {

namespace {

using nlohmann::json;

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += "\"\"";
        } else if (c == '\n' || c == '\r') {
            out += ' ';
        } else {
            out += c;
        }
    }
    return out + "\"";
}

// Splits one CSV record; understands double-quoted fields.
std::vector<std::string> split_record(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

std::string read_all(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// JSON has no literal for non-finite numbers; they travel as "nan", "inf", "-inf".
json json_number(double v) { return std::isfinite(v) ? json(v) : json(format_double(v)); }

double number_from(const json& j) {
    if (j.is_null()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return j.is_string() ? parse_double(j.get<std::string>()) : j.get<double>();
}

} // namespace

nlohmann::json RunManifest::to_json() const {
    return {{"command", command}, {"config", config},   {"seed", seed},
            {"tool_version", tool_version}, {"wall_time_s", wall_time_s}};
}

const std::vector<std::string>& table_columns() {
    static const std::vector<std::string> cols = {"ratio",  "gd",         "gd_converged", "d_gd",   "mean_E",
                                                  "var_E",  "nn_discord", "nn_mid",       "nn_amid", "status"};
    return cols;
}

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
    if (text == "nan") {
        return std::numeric_limits<double>::quiet_NaN();
    }
    if (text == "inf") {
        return std::numeric_limits<double>::infinity();
    }
    if (text == "-inf") {
        return -std::numeric_limits<double>::infinity();
    }
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw DomainError("malformed number '" + text + "'");
    }
    return v;
}

std::string to_csv(const SweepTable& table) {
    std::ostringstream out;
    out << "# n_sites: " << table.meta.n_sites << '\n';
    out << "# grid: " << table.meta.grid << '\n';
    out << "# seed: " << table.meta.seed << '\n';
    out << "# measures: " << table.meta.measures << '\n';
    const auto& cols = table_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) {
        out << (i ? "," : "") << cols[i];
    }
    out << '\n';
    for (const auto& r : table.rows) {
        out << format_double(r.ratio) << ',' << format_double(r.gd) << ',' << (r.gd_converged ? 1 : 0) << ','
            << format_double(r.d_gd) << ',' << format_double(r.mean_e) << ',' << format_double(r.var_e) << ','
            << format_double(r.nn_discord) << ',' << format_double(r.nn_mid) << ',' << format_double(r.nn_amid)
            << ',' << quote(r.status) << '\n';
    }
    return out.str();
}

SweepTable from_csv(const std::string& text) {
    SweepTable table;
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        if (line.rfind("# ", 0) == 0) {
            const auto colon = line.find(':');
            if (colon == std::string::npos) {
                continue;
            }
            const std::string key = line.substr(2, colon - 2);
            const std::string value = colon + 2 <= line.size() ? line.substr(colon + 2) : "";
            if (key == "n_sites") {
                table.meta.n_sites = std::stoi(value);
            } else if (key == "grid") {
                table.meta.grid = value;
            } else if (key == "seed") {
                table.meta.seed = std::stoull(value);
            } else if (key == "measures") {
                table.meta.measures = static_cast<unsigned>(std::stoul(value));
            }
            continue;
        }
        const auto fields = split_record(line);
        if (!header_seen) {
            if (fields != table_columns()) {
                throw DomainError("unexpected CSV header: " + line);
            }
            header_seen = true;
            continue;
        }
        if (fields.size() != table_columns().size()) {
            throw DomainError("CSV row has " + std::to_string(fields.size()) + " fields: " + line);
        }
        SweepRow r;
        r.ratio = parse_double(fields[0]);
        r.gd = parse_double(fields[1]);
        r.gd_converged = fields[2] == "1";
        r.d_gd = parse_double(fields[3]);
        r.mean_e = parse_double(fields[4]);
        r.var_e = parse_double(fields[5]);
        r.nn_discord = parse_double(fields[6]);
        r.nn_mid = parse_double(fields[7]);
        r.nn_amid = parse_double(fields[8]);
        r.status = fields[9];
        table.rows.push_back(std::move(r));
    }
    if (!header_seen) {
        throw DomainError("CSV has no header row");
    }
    return table;
}

nlohmann::json to_json(const SweepTable& table) {
    json rows = json::array();
    for (const auto& r : table.rows) {
        rows.push_back({{"ratio", json_number(r.ratio)},
                        {"gd", json_number(r.gd)},
                        {"gd_converged", r.gd_converged},
                        {"d_gd", json_number(r.d_gd)},
                        {"mean_E", json_number(r.mean_e)},
                        {"var_E", json_number(r.var_e)},
                        {"nn_discord", json_number(r.nn_discord)},
                        {"nn_mid", json_number(r.nn_mid)},
                        {"nn_amid", json_number(r.nn_amid)},
                        {"status", r.status}});
    }
    return {{"metadata",
             {{"n_sites", table.meta.n_sites},
              {"grid", table.meta.grid},
              {"seed", table.meta.seed},
              {"measures", table.meta.measures}}},
            {"columns", table_columns()},
            {"rows", rows}};
}

SweepTable from_json(const nlohmann::json& doc) {
    SweepTable table;
    const auto& meta = doc.at("metadata");
    table.meta.n_sites = meta.at("n_sites").get<int>();
    table.meta.grid = meta.at("grid").get<std::string>();
    table.meta.seed = meta.at("seed").get<std::uint64_t>();
    table.meta.measures = meta.at("measures").get<unsigned>();
    for (const auto& j : doc.at("rows")) {
        SweepRow r;
        r.ratio = number_from(j.at("ratio"));
        r.gd = number_from(j.at("gd"));
        r.gd_converged = j.at("gd_converged").get<bool>();
        r.d_gd = number_from(j.at("d_gd"));
        r.mean_e = number_from(j.at("mean_E"));
        r.var_e = number_from(j.at("var_E"));
        r.nn_discord = number_from(j.at("nn_discord"));
        r.nn_mid = number_from(j.at("nn_mid"));
        r.nn_amid = number_from(j.at("nn_amid"));
        r.status = j.at("status").get<std::string>();
        table.rows.push_back(std::move(r));
    }
    return table;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot write " + tmp.string());
        }
        out << content;
        out.flush();
        if (!out) {
            throw std::runtime_error("write failed for " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

void write_csv(const SweepTable& table, const std::filesystem::path& path, const RunManifest& manifest) {
    write_file_atomic(path, to_csv(table));
    std::filesystem::path side = path;
    side += ".manifest.json";
    write_file_atomic(side, manifest.to_json().dump(2) + "\n");
}

void write_json(const SweepTable& table, const std::filesystem::path& path, const RunManifest& manifest) {
    json doc = to_json(table);
    doc["manifest"] = manifest.to_json();
    write_file_atomic(path, doc.dump(2) + "\n");
}

SweepTable read_csv(const std::filesystem::path& path) { return from_csv(read_all(path)); }

SweepTable read_json(const std::filesystem::path& path) { return from_json(json::parse(read_all(path))); }

} // namespace tfim
