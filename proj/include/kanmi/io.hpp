#pragma once

// CSV ingestion, label files and JSON/text reports.

#include <charconv>
#include <cstddef>
#include <fstream>
#include <iomanip>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "kanmi/core.hpp"
#include "kanmi/experiments.hpp"
#include "kanmi/information.hpp"
#include "kanmi/kanmi.hpp"

namespace kanmi::io {

/// Input or format problem; the message names the file and row where known.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CsvOptions {
    char delimiter = ',';
    bool header = true;
    /// Column holding the class; an index ("0") or a header name. Empty: none.
    std::string class_column;
    /// Empty fields are replaced by this token.
    std::string missing_token = "?";
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

inline std::vector<std::string> split_line(std::string_view line, char delimiter) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(delimiter, start);
        std::string_view field = line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start);
        while (!field.empty() && (field.front() == ' ' || field.front() == '\t') && delimiter != '\t' && delimiter != ' ')
            field.remove_prefix(1);
        while (!field.empty() && (field.back() == ' ' || field.back() == '\t') && delimiter != '\t' && delimiter != ' ')
            field.remove_suffix(1);
        if (field.size() >= 2 && field.front() == '"' && field.back() == '"') field = field.substr(1, field.size() - 2);
        out.emplace_back(field);
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

/// Reads a delimited table. Every data row must have as many fields as the
/// first row; blank lines are skipped.
inline CsvTable read_table(std::istream& in, const CsvOptions& opt, std::string_view source = "input") {
    CsvTable t;
    std::string line;
    std::size_t line_no = 0;
    std::size_t width = 0;
    bool have_width = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        auto fields = split_line(line, opt.delimiter);
        if (!have_width) {
            width = fields.size();
            have_width = true;
            if (opt.header) {
                t.header = std::move(fields);
                continue;
            }
        } else if (fields.size() != width) {
            throw ParseError(std::string(source) + ": row " + std::to_string(line_no) + " has " +
                             std::to_string(fields.size()) + " fields, expected " + std::to_string(width));
        }
        for (auto& f : fields)
            if (f.empty()) f = opt.missing_token;
        t.rows.push_back(std::move(fields));
    }
    if (!opt.header && !t.rows.empty()) {
        for (std::size_t c = 0; c < width; ++c) t.header.push_back("a" + std::to_string(c + 1));
    }
    return t;
}

inline std::optional<std::size_t> resolve_column(const CsvTable& t, const std::string& spec) {
    if (spec.empty()) return std::nullopt;
    for (std::size_t c = 0; c < t.header.size(); ++c)
        if (t.header[c] == spec) return c;
    std::size_t idx = 0;
    const auto [ptr, ec] = std::from_chars(spec.data(), spec.data() + spec.size(), idx);
    if (ec == std::errc() && ptr == spec.data() + spec.size()) {
        if (idx >= t.header.size())
            throw ParseError("class column " + spec + " out of range (" + std::to_string(t.header.size()) +
                             " columns)");
        return idx;
    }
    throw ParseError("class column '" + spec + "' not found in header");
}

/// Converts a table to a Dataset; the class column, if any, becomes ground
/// truth and is excluded from the clustering attributes.
inline Dataset to_dataset(const CsvTable& t, const CsvOptions& opt) {
    if (t.rows.empty()) throw ParseError("input has no data rows");
    const auto class_col = resolve_column(t, opt.class_column);
    std::vector<std::vector<std::string>> attrs;
    attrs.reserve(t.rows.size());
    std::vector<std::string> classes;
    for (const auto& row : t.rows) {
        std::vector<std::string> a;
        a.reserve(row.size());
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (class_col && c == *class_col)
                classes.push_back(row[c]);
            else
                a.push_back(row[c]);
        }
        attrs.push_back(std::move(a));
    }
    std::vector<std::string> names;
    for (std::size_t c = 0; c < t.header.size(); ++c)
        if (!class_col || c != *class_col) names.push_back(t.header[c]);
    if (names.empty()) throw ParseError("input has no attribute columns besides the class column");
    Dataset ds = Dataset::from_tokens(attrs, names);
    if (class_col) {
        Labeling truth = Labeling::from_raw(classes);
        std::vector<std::string> class_names(truth.num_labels());
        for (std::size_t j = 0; j < classes.size(); ++j) class_names[truth[j]] = classes[j];
        ds.set_ground_truth(std::move(truth), std::move(class_names));
    }
    return ds;
}

inline Dataset read_dataset(std::istream& in, const CsvOptions& opt, std::string_view source = "input") {
    return to_dataset(read_table(in, opt, source), opt);
}

inline Dataset load_dataset(const std::string& path, const CsvOptions& opt) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return read_dataset(in, opt, path);
}

/// One label per line, in record order.
inline void write_labels(std::ostream& out, const Labeling& labels) {
    for (LabelId l : labels.labels()) out << l << '\n';
}

/// Reads one token per line (blank lines skipped) as a labeling.
inline Labeling read_label_tokens(std::istream& in, std::vector<std::string>* names = nullptr) {
    std::vector<std::string> tokens;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto b = line.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t");
        tokens.push_back(line.substr(b, e - b + 1));
    }
    Labeling l = Labeling::from_raw(tokens);
    if (names) {
        names->assign(l.num_labels(), {});
        for (std::size_t j = 0; j < tokens.size(); ++j) (*names)[l[j]] = tokens[j];
    }
    return l;
}

inline Labeling load_label_tokens(const std::string& path, std::vector<std::string>* names = nullptr) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return read_label_tokens(in, names);
}

/// Summary of one clustering run, as written by `kanmi cluster`.
struct ClusterReport {
    std::string algorithm;
    std::string input;
    std::size_t n = 0;
    std::size_t r = 0;
    std::size_t k = 0;         // requested
    std::size_t clusters = 0;  // obtained
    double final_anmi = 0.0;
    std::size_t sweeps = 0;
    std::vector<double> anmi_history;
    std::vector<std::size_t> moves_per_sweep;
    double threshold = 0.0;
    double seconds = 0.0;
    std::optional<experiments::EvaluationReport> evaluation;
    std::vector<std::string> class_names;

    friend bool operator==(const ClusterReport&, const ClusterReport&) = default;
};

}  // namespace kanmi::io

namespace kanmi::information {

inline void to_json(nlohmann::json& j, const ContingencyTable& t) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t h = 0; h < t.rows; ++h) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t g = 0; g < t.cols; ++g) row.push_back(t.at(h, g));
        rows.push_back(std::move(row));
    }
    j = {{"rows", t.rows},         {"cols", t.cols},         {"counts", rows},
         {"row_sums", t.row_sums}, {"col_sums", t.col_sums}, {"total", t.total}};
}

inline void from_json(const nlohmann::json& j, ContingencyTable& t) {
    j.at("rows").get_to(t.rows);
    j.at("cols").get_to(t.cols);
    t.counts.clear();
    for (const auto& row : j.at("counts"))
        for (const auto& c : row) t.counts.push_back(c.get<std::size_t>());
    if (t.counts.size() != t.rows * t.cols) throw std::invalid_argument("confusion table shape mismatch");
    j.at("row_sums").get_to(t.row_sums);
    j.at("col_sums").get_to(t.col_sums);
    j.at("total").get_to(t.total);
}

}  // namespace kanmi::information

namespace kanmi::experiments {

inline void to_json(nlohmann::json& j, const EvaluationReport& r) {
    nlohmann::json dom = nlohmann::json::array();
    for (std::size_t h = 0; h < r.per_cluster_dominant.size(); ++h)
        dom.push_back({{"cluster", h},
                       {"class", r.per_cluster_dominant[h].class_id},
                       {"count", r.per_cluster_dominant[h].count}});
    j = {{"k", r.k},         {"n", r.n},
         {"accuracy", r.accuracy}, {"error", r.error},
         {"per_cluster_dominant", dom}, {"confusion", r.confusion}};
}

inline void from_json(const nlohmann::json& j, EvaluationReport& r) {
    j.at("k").get_to(r.k);
    j.at("n").get_to(r.n);
    j.at("accuracy").get_to(r.accuracy);
    j.at("error").get_to(r.error);
    r.per_cluster_dominant.clear();
    for (const auto& d : j.at("per_cluster_dominant"))
        r.per_cluster_dominant.push_back({d.at("class").get<LabelId>(), d.at("count").get<std::size_t>()});
    j.at("confusion").get_to(r.confusion);
}

}  // namespace kanmi::experiments

namespace kanmi::io {

inline void to_json(nlohmann::json& j, const ClusterReport& r) {
    j = {{"algorithm", r.algorithm},
         {"input", r.input},
         {"n", r.n},
         {"r", r.r},
         {"k", r.k},
         {"clusters", r.clusters},
         {"final_anmi", r.final_anmi},
         {"sweeps", r.sweeps},
         {"anmi_history", r.anmi_history},
         {"moves_per_sweep", r.moves_per_sweep},
         {"threshold", r.threshold},
         {"seconds", r.seconds},
         {"class_names", r.class_names}};
    if (r.evaluation) j["evaluation"] = *r.evaluation;
}

inline void from_json(const nlohmann::json& j, ClusterReport& r) {
    j.at("algorithm").get_to(r.algorithm);
    j.at("input").get_to(r.input);
    j.at("n").get_to(r.n);
    j.at("r").get_to(r.r);
    j.at("k").get_to(r.k);
    j.at("clusters").get_to(r.clusters);
    j.at("final_anmi").get_to(r.final_anmi);
    j.at("sweeps").get_to(r.sweeps);
    j.at("anmi_history").get_to(r.anmi_history);
    j.at("moves_per_sweep").get_to(r.moves_per_sweep);
    j.at("threshold").get_to(r.threshold);
    j.at("seconds").get_to(r.seconds);
    j.at("class_names").get_to(r.class_names);
    if (j.contains("evaluation"))
        r.evaluation = j.at("evaluation").get<experiments::EvaluationReport>();
    else
        r.evaluation.reset();
}

inline nlohmann::json to_json(const experiments::BenchmarkTable& t, std::string_view dataset = {}) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : t.rows)
        rows.push_back({{"k", r.k},
                        {"clusters", r.clusters},
                        {"error", r.error},
                        {"seconds", r.seconds},
                        {"anmi", r.anmi},
                        {"sweeps", r.sweeps},
                        {"threshold", r.threshold}});
    nlohmann::json j = {{"algorithm", std::string(experiments::algorithm_name(t.algorithm))},
                        {"rows", rows},
                        {"average_error", t.average_error}};
    if (!dataset.empty()) {
        j["dataset"] = std::string(dataset);
        if (const auto* ref = experiments::find_reference(dataset))
            j["published_average_error"] = {{"Squeezer", ref->squeezer},
                                            {"GAClust", ref->gaclust},
                                            {"ccdByEnsemble", ref->ccd_by_ensemble},
                                            {"k-ANMI", ref->kanmi}};
    }
    return j;
}

/// Aligned plain-text rendering of an evaluation.
inline std::string render_text(const experiments::EvaluationReport& r,
                               const std::vector<std::string>& class_names = {}) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(4);
    os << "records   " << r.n << "\nclusters  " << r.k << "\naccuracy  " << r.accuracy << "\nerror     "
       << r.error << "\n\n";
    auto class_label = [&](std::size_t g) {
        return g < class_names.size() ? class_names[g] : std::to_string(g);
    };
    os << std::left << std::setw(9) << "cluster" << std::right << std::setw(8) << "size";
    for (std::size_t g = 0; g < r.confusion.cols; ++g) os << std::setw(12) << class_label(g);
    os << "  dominant\n";
    for (std::size_t h = 0; h < r.confusion.rows; ++h) {
        os << std::left << std::setw(9) << h << std::right << std::setw(8) << r.confusion.row_sums[h];
        for (std::size_t g = 0; g < r.confusion.cols; ++g) os << std::setw(12) << r.confusion.at(h, g);
        os << "  " << class_label(r.per_cluster_dominant[h].class_id) << '\n';
    }
    return os.str();
}

inline std::string render_text(const experiments::BenchmarkTable& t, std::string_view dataset = {}) {
    std::ostringstream os;
    os << std::fixed;
    os << std::left << std::setw(5) << "k" << std::right << std::setw(10) << "clusters" << std::setw(10) << "error"
       << std::setw(12) << "seconds" << std::setw(10) << "anmi" << std::setw(8) << "sweeps" << '\n';
    for (const auto& r : t.rows) {
        os << std::left << std::setw(5) << r.k << std::right << std::setw(10) << r.clusters << std::setprecision(4)
           << std::setw(10) << r.error << std::setprecision(3) << std::setw(12) << r.seconds << std::setprecision(4)
           << std::setw(10) << r.anmi << std::setw(8) << r.sweeps << '\n';
    }
    os << std::setprecision(4) << "average error (" << experiments::algorithm_name(t.algorithm)
       << "): " << t.average_error << '\n';
    if (const auto* ref = experiments::find_reference(dataset)) {
        os << "published averages (" << dataset << "): Squeezer " << ref->squeezer << ", GAClust " << ref->gaclust
           << ", ccdByEnsemble " << ref->ccd_by_ensemble << ", k-ANMI " << ref->kanmi << '\n';
    }
    return os.str();
}

}  // namespace kanmi::io
