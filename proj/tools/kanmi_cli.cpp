// kanmi: cluster categorical CSV data, evaluate labelings, generate
// synthetic data and run benchmarks.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "kanmi/core.hpp"
#include "kanmi/experiments.hpp"
#include "kanmi/io.hpp"
#include "kanmi/kanmi.hpp"

namespace {

using kanmi::Dataset;
using kanmi::Labeling;
using nlohmann::json;
namespace ex = kanmi::experiments;
namespace io = kanmi::io;

struct InputFlags {
    std::string path;
    std::string delimiter = ",";
    bool no_header = false;
    std::string class_column;
    std::string missing = "?";

    io::CsvOptions options() const {
        if (delimiter.size() != 1 && delimiter != "\\t" && delimiter != "tab")
            throw std::invalid_argument("delimiter must be a single character");
        io::CsvOptions o;
        o.delimiter = (delimiter == "\\t" || delimiter == "tab") ? '\t' : delimiter[0];
        o.header = !no_header;
        o.class_column = class_column;
        o.missing_token = missing;
        return o;
    }
};

void add_input_flags(CLI::App* cmd, InputFlags& f, bool required = true) {
    auto* opt = cmd->add_option("-i,--input", f.path, "Input CSV file");
    if (required) opt->required();
    cmd->add_option("-d,--delimiter", f.delimiter, "Field delimiter (',' by default; 'tab' for tabs)");
    cmd->add_flag("--no-header", f.no_header, "Input has no header row");
    cmd->add_option("-c,--class-column", f.class_column,
                    "Class column (header name or 0-based index); excluded from clustering");
    cmd->add_option("--missing", f.missing, "Token substituted for empty fields");
}

void write_file(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

std::vector<std::size_t> parse_list(const std::string& spec, const char* what) {
    // "2..9" or "2,3,5" or "12500,25000"
    std::vector<std::size_t> out;
    const auto dots = spec.find("..");
    if (dots != std::string::npos) {
        const std::size_t lo = std::stoul(spec.substr(0, dots));
        const std::size_t hi = std::stoul(spec.substr(dots + 2));
        if (lo > hi) throw std::invalid_argument(std::string("empty ") + what + " range " + spec);
        for (std::size_t v = lo; v <= hi; ++v) out.push_back(v);
    } else {
        std::stringstream ss(spec);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) out.push_back(std::stoul(item));
    }
    if (out.empty()) throw std::invalid_argument(std::string("empty ") + what + " list");
    return out;
}

// --- cluster ---------------------------------------------------------------

struct ClusterFlags {
    InputFlags input;
    std::string algorithm = "kanmi";
    std::size_t k = 2;
    double threshold = -1.0;
    std::size_t max_sweeps = 100;
    double epsilon = 1e-12;
    std::string labels_path;
    std::string report_path;
};

int cmd_cluster(const ClusterFlags& f) {
    const auto opt = f.input.options();
    const Dataset ds = io::load_dataset(f.input.path, opt);
    const auto algorithm = ex::parse_algorithm(f.algorithm);

    io::ClusterReport rep;
    rep.algorithm = std::string(ex::algorithm_name(algorithm));
    rep.input = f.input.path;
    rep.n = ds.num_records();
    rep.r = ds.num_attributes();
    rep.k = f.k;

    const auto start = std::chrono::steady_clock::now();
    Labeling labels;
    if (algorithm == ex::Algorithm::kanmi) {
        kanmi::KanmiConfig cfg;
        cfg.k = f.k;
        cfg.max_sweeps = f.max_sweeps;
        cfg.improvement_epsilon = f.epsilon;
        auto res = kanmi::run(ds, cfg);
        rep.final_anmi = res.final_anmi;
        rep.sweeps = res.sweeps_run;
        rep.anmi_history = res.anmi_history;
        rep.moves_per_sweep = res.moves_per_sweep;
        labels = std::move(res.labels);
    } else {
        if (f.threshold >= 0.0) {
            labels = ex::squeezer(ds, f.threshold);
            rep.threshold = f.threshold;
        } else {
            auto fit = ex::squeezer_for_k(ds, f.k);
            labels = std::move(fit.labels);
            rep.threshold = fit.threshold;
        }
        if (labels.num_labels() > 0) {
            auto attrs = kanmi::attribute_labelings(ds);
            rep.final_anmi = kanmi::information::anmi(attrs, labels);
        }
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rep.clusters = labels.num_labels();
    if (ds.ground_truth()) {
        rep.evaluation = ex::accuracy(labels, *ds.ground_truth());
        rep.class_names = ds.class_names();
    }

    if (!f.labels_path.empty()) {
        std::ostringstream os;
        io::write_labels(os, labels);
        write_file(f.labels_path, os.str());
    }
    if (!f.report_path.empty()) write_file(f.report_path, json(rep).dump(2) + "\n");

    if (f.report_path != "-" && f.labels_path != "-") {
        std::cout << std::fixed << std::setprecision(6);
        std::cout << rep.algorithm << " on " << rep.input << ": n = " << rep.n << ", r = " << rep.r
                  << ", clusters = " << rep.clusters << "\n";
        std::cout << "ANMI " << rep.final_anmi;
        if (algorithm == ex::Algorithm::kanmi) std::cout << " after " << rep.sweeps << " sweeps";
        std::cout << std::setprecision(3) << " (" << rep.seconds << " s)\n";
        if (rep.evaluation) std::cout << "\n" << io::render_text(*rep.evaluation, rep.class_names);
    }
    return 0;
}

// --- eval ------------------------------------------------------------------

struct EvalFlags {
    std::string labels_path;
    std::string classes_path;
    InputFlags classes_csv;  // used when --class-column is given
    std::string report_path;
};

int cmd_eval(const EvalFlags& f) {
    const Labeling labels = io::load_label_tokens(f.labels_path);
    Labeling classes;
    std::vector<std::string> class_names;
    if (!f.classes_csv.class_column.empty()) {
        const Dataset ds = io::load_dataset(f.classes_path, f.classes_csv.options());
        classes = *ds.ground_truth();
        class_names = ds.class_names();
    } else {
        classes = io::load_label_tokens(f.classes_path, &class_names);
    }
    if (labels.size() != classes.size())
        throw std::invalid_argument("row-count mismatch: " + std::to_string(labels.size()) + " labels vs " +
                                    std::to_string(classes.size()) + " classes");
    const auto rep = ex::accuracy(labels, classes);
    json j = rep;
    j["class_names"] = class_names;
    if (f.report_path.empty() || f.report_path == "-") {
        std::cout << j.dump(2) << "\n";
    } else {
        write_file(f.report_path, j.dump(2) + "\n");
        std::cout << io::render_text(rep, class_names);
    }
    return 0;
}

// --- gen -------------------------------------------------------------------

int cmd_gen(const ex::GeneratorSpec& spec, const std::string& output) {
    const auto rows = ex::generate_rows(spec);
    std::ostringstream os;
    for (std::size_t i = 0; i < spec.attributes; ++i) os << 'a' << (i + 1) << ',';
    os << "class\n";
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << row[c];
        os << '\n';
    }
    write_file(output, os.str());
    return 0;
}

// --- bench -----------------------------------------------------------------

struct BenchFlags {
    InputFlags input;
    std::string mode = "errors";
    std::string algorithm = "kanmi";
    std::string ks = "2..9";
    std::string rows;
    std::string dataset_name;
    std::string csv_path;
    std::string json_path;
    bool generate = false;
    ex::GeneratorSpec spec;
};

int cmd_bench(BenchFlags f) {
    Dataset ds;
    if (f.generate) {
        ds = ex::generate(f.spec);
    } else {
        if (f.input.path.empty()) throw std::invalid_argument("bench needs --input or --generate");
        ds = io::load_dataset(f.input.path, f.input.options());
    }
    const auto algorithm = ex::parse_algorithm(f.algorithm);
    std::ostringstream csv;
    json j;

    if (f.mode == "errors") {
        const auto table = ex::benchmark(ds, algorithm, parse_list(f.ks, "k"));
        csv << "k,clusters,error,seconds,anmi,sweeps,threshold\n";
        for (const auto& r : table.rows)
            csv << r.k << ',' << r.clusters << ',' << r.error << ',' << r.seconds << ',' << r.anmi << ','
                << r.sweeps << ',' << r.threshold << '\n';
        csv << "average,," << table.average_error << ",,,,\n";
        j = io::to_json(table, f.dataset_name);
        std::cout << io::render_text(table, f.dataset_name);
    } else if (f.mode == "rows" || f.mode == "clusters") {
        std::vector<std::size_t> row_counts;
        std::vector<std::size_t> ks;
        if (f.mode == "rows") {
            if (f.rows.empty()) throw std::invalid_argument("rows mode needs --rows");
            row_counts = parse_list(f.rows, "row count");
            const auto k_list = parse_list(f.ks == "2..9" ? "2" : f.ks, "k");
            ks.assign(row_counts.size(), k_list.front());
        } else {
            ks = parse_list(f.ks, "k");
            row_counts.assign(ks.size(), ds.num_records());
        }
        csv << "rows,k,seconds,sweeps,anmi\n";
        json cells = json::array();
        std::cout << std::left << std::setw(10) << "rows" << std::setw(5) << "k" << std::right << std::setw(12)
                  << "seconds" << std::setw(8) << "sweeps" << std::setw(10) << "anmi\n";
        for (std::size_t c = 0; c < ks.size(); ++c) {
            if (row_counts[c] < 1 || row_counts[c] > ds.num_records())
                throw std::invalid_argument("row count " + std::to_string(row_counts[c]) + " out of range 1.." +
                                            std::to_string(ds.num_records()));
            const Dataset part = row_counts[c] == ds.num_records() ? ds : ds.prefix(row_counts[c]);
            kanmi::KanmiConfig cfg;
            cfg.k = ks[c];
            const auto start = std::chrono::steady_clock::now();
            const auto res = kanmi::run(part, cfg);
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            csv << row_counts[c] << ',' << ks[c] << ',' << secs << ',' << res.sweeps_run << ',' << res.final_anmi
                << '\n';
            cells.push_back({{"rows", row_counts[c]},
                             {"k", ks[c]},
                             {"seconds", secs},
                             {"sweeps", res.sweeps_run},
                             {"anmi", res.final_anmi}});
            std::cout << std::left << std::setw(10) << row_counts[c] << std::setw(5) << ks[c] << std::right
                      << std::fixed << std::setprecision(3) << std::setw(12) << secs << std::setw(8)
                      << res.sweeps_run << std::setprecision(4) << std::setw(10) << res.final_anmi << '\n';
        }
        j = {{"mode", f.mode}, {"cells", cells}};
    } else {
        throw std::invalid_argument("unknown bench mode '" + f.mode + "' (errors, rows or clusters)");
    }
    if (!f.csv_path.empty()) write_file(f.csv_path, csv.str());
    if (!f.json_path.empty()) write_file(f.json_path, j.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"k-ANMI clustering for categorical data"};
    app.require_subcommand(1);

    ClusterFlags cluster;
    auto* c = app.add_subcommand("cluster", "Cluster a CSV file and write labels and a metrics report");
    add_input_flags(c, cluster.input);
    c->add_option("-a,--algorithm", cluster.algorithm, "kanmi or squeezer");
    c->add_option("-k,--k", cluster.k, "Number of clusters");
    c->add_option("--threshold", cluster.threshold, "Squeezer similarity threshold (default: searched to reach k)");
    c->add_option("--max-sweeps", cluster.max_sweeps, "Upper bound on k-ANMI sweeps");
    c->add_option("--epsilon", cluster.epsilon, "Minimal ANMI gain for a move");
    c->add_option("-l,--labels", cluster.labels_path, "Label output file ('-' for stdout)");
    c->add_option("-r,--report", cluster.report_path, "JSON report output file ('-' for stdout)");

    EvalFlags eval;
    auto* e = app.add_subcommand("eval", "Score a label file against classes");
    e->add_option("-l,--labels", eval.labels_path, "Label file, one label per line")->required();
    e->add_option("--classes", eval.classes_path, "Class file: one class per line, or a CSV with --class-column")
        ->required();
    e->add_option("-c,--class-column", eval.classes_csv.class_column, "Class column when --classes is a CSV");
    e->add_option("-d,--delimiter", eval.classes_csv.delimiter, "CSV delimiter");
    e->add_flag("--no-header", eval.classes_csv.no_header, "CSV has no header row");
    e->add_option("-r,--report", eval.report_path, "JSON report output file (stdout when omitted)");

    ex::GeneratorSpec gen_spec;
    std::string gen_output = "-";
    auto* g = app.add_subcommand("gen", "Generate a synthetic categorical dataset with a class column");
    g->add_option("--rows", gen_spec.rows, "Number of records")->required();
    g->add_option("--attrs", gen_spec.attributes, "Number of attributes");
    g->add_option("--classes", gen_spec.classes, "Number of classes");
    g->add_option("--values", gen_spec.values_per_attribute, "Distinct values per attribute");
    g->add_option("--skew", gen_spec.skew, "Probability of a class's preferred value, in (0, 1]");
    g->add_option("--seed", gen_spec.seed, "Random seed");
    g->add_option("-o,--output", gen_output, "Output CSV ('-' for stdout)");

    BenchFlags bench;
    auto* b = app.add_subcommand("bench", "Per-k error table or scalability timings");
    add_input_flags(b, bench.input, false);
    b->add_option("-m,--mode", bench.mode, "errors (per-k error), rows (fixed k, row prefixes), clusters (fixed rows)");
    b->add_option("-a,--algorithm", bench.algorithm, "kanmi or squeezer (errors mode)");
    b->add_option("-k,--k", bench.ks, "k list: '2..9' or '2,4,8'");
    b->add_option("--rows", bench.rows, "Row-count list for rows mode, e.g. 25000,50000,100000");
    b->add_option("--name", bench.dataset_name, "Dataset name for published comparisons (votes, mushroom, cancer)");
    b->add_option("--csv", bench.csv_path, "CSV output file");
    b->add_option("--json", bench.json_path, "JSON output file");
    b->add_flag("--generate", bench.generate, "Use a generated dataset instead of --input");
    b->add_option("--gen-rows", bench.spec.rows, "Generated rows");
    b->add_option("--gen-attrs", bench.spec.attributes, "Generated attributes");
    b->add_option("--gen-classes", bench.spec.classes, "Generated classes");
    b->add_option("--gen-values", bench.spec.values_per_attribute, "Generated values per attribute");
    b->add_option("--gen-skew", bench.spec.skew, "Generated skew");
    b->add_option("--gen-seed", bench.spec.seed, "Generated seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c->parsed()) return cmd_cluster(cluster);
        if (e->parsed()) return cmd_eval(eval);
        if (g->parsed()) return cmd_gen(gen_spec, gen_output);
        if (b->parsed()) return cmd_bench(bench);
    } catch (const std::exception& ex) {
        std::cerr << "kanmi: error: " << ex.what() << "\n";
        return 1;
    }
    return 1;
}
