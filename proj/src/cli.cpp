#include "mpfa/cli.hpp"

#include "mpfa/analysis.hpp"
#include "mpfa/complexity.hpp"
#include "mpfa/dft.hpp"
#include "mpfa/errors.hpp"
#include "mpfa/kernels.hpp"
#include "mpfa/pfa.hpp"
#include "mpfa/signal_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

namespace mpfa {

namespace {

struct Table {
    std::vector<std::string> headers;
    std::vector<std::vector<std::string>> rows;

    std::string render(ReportFormat fmt) const {
        std::ostringstream os;
        if (fmt == ReportFormat::Csv) {
            for (std::size_t i = 0; i < headers.size(); ++i)
                os << (i ? "," : "") << headers[i];
            os << '\n';
            for (const auto& r : rows) {
                for (std::size_t i = 0; i < r.size(); ++i)
                    os << (i ? "," : "") << r[i];
                os << '\n';
            }
        } else if (fmt == ReportFormat::Json) {
            nlohmann::json j = nlohmann::json::array();
            for (const auto& r : rows) {
                nlohmann::json o;
                for (std::size_t i = 0; i < r.size(); ++i)
                    o[headers[i]] = r[i];
                j.push_back(o);
            }
            os << j.dump(2) << '\n';
        } else {
            std::vector<std::size_t> w(headers.size());
            for (std::size_t i = 0; i < headers.size(); ++i)
                w[i] = headers[i].size();
            for (const auto& r : rows)
                for (std::size_t i = 0; i < r.size(); ++i)
                    w[i] = std::max(w[i], r[i].size());
            auto line = [&](const std::vector<std::string>& cells) {
                for (std::size_t i = 0; i < cells.size(); ++i)
                    os << (i ? "  " : "") << std::setw(static_cast<int>(w[i])) << cells[i];
                os << '\n';
            };
            line(headers);
            for (const auto& r : rows)
                line(r);
        }
        return os.str();
    }
};

std::string fixed(double v, int prec) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(prec) << v;
    return os.str();
}

Table ground_errors() {
    Table t{{"transform", "epsilon", "mape", "phi_x1e3"}, {}};
    for (std::size_t n : {3u, 11u, 31u})
        for (ScaleMode m : {ScaleMode::Exact, ScaleMode::Csd}) {
            const auto approx = apply_rows(kernel_scale(n, m), kernel(n).to_complex());
            const ErrorReport r = evaluate(approx, dft_matrix(n));
            const std::string name = (m == ScaleMode::Exact ? "F^*_" : "F'_") + std::to_string(n);
            t.rows.push_back({name, fixed(r.epsilon, 4), fixed(r.mape_percent, 4), fixed(r.phi * 1e3, 3)});
        }
    return t;
}

Table errors_1023() {
    Table t{{"transform", "epsilon_x1e-4", "mape_x1e3", "phi_x1e3"}, {}};
    std::vector<std::string> labels = {"scaled", "csd"};
    const auto h = hybrid_labels();
    labels.insert(labels.end(), h.begin(), h.end());
    for (const auto& v : labels) {
        const ErrorReport r = evaluate_plan(plan(1023, v));
        t.rows.push_back({display_name(v), fixed(r.epsilon * 1e-4, 3), fixed(r.mape_percent * 1e3, 3),
                          fixed(r.phi * 1e3, 3)});
    }
    return t;
}

Table row_errors(std::size_t n, const std::string& variant, std::optional<std::size_t> worst) {
    const ExecutionPlan p = plan(n, variant);
    const ComplexMatrix approx = assemble_matrix(p);
    auto table = row_error_table(approx, dft_matrix(n));
    double total = 0.0, coeff = 0.0;
    for (const auto& e : table) {
        total += e.energy;
        coeff += e.coefficient_energy;
    }
    const double mean = total / static_cast<double>(table.size());
    if (worst)
        table = worst_rows(std::move(table), *worst);
    Table t{{"row", "energy", "coefficient_energy"}, {}};
    for (const auto& e : table)
        t.rows.push_back({std::to_string(e.row), fixed(e.energy, 4), fixed(e.coefficient_energy, 4)});
    t.rows.push_back({"total", fixed(total, 4), fixed(coeff, 4)});
    t.rows.push_back({"mean", fixed(mean, 4), fixed(coeff / static_cast<double>(n), 4)});
    return t;
}

Table sweep_table(std::size_t n, double step) {
    const auto cands = sweep_alpha(n, step);
    const auto front = select_optimal(cands);
    Table t{{"alpha_low", "alpha_high", "epsilon", "mape", "phi_x1e3", "pareto"}, {}};
    for (const auto& c : cands) {
        bool opt = false;
        for (const auto& f : front)
            opt = opt || f.alpha.low == c.alpha.low;
        t.rows.push_back({fixed(c.alpha.low, 5), fixed(c.alpha.high, 5), fixed(c.metrics.epsilon, 4),
                          fixed(c.metrics.mape_percent, 4), fixed(c.metrics.phi * 1e3, 3), opt ? "yes" : "no"});
    }
    return t;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot write " + path);
    f << text;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const std::vector<std::string> kFormats = {"csv", "text", "json"};

} // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multiplierless approximate DFTs by prime-factor composition"};
    app.name("mpfa");
    app.require_subcommand(1);

    std::size_t n = 0;
    std::string variant = "csd";
    std::string format = "text";
    std::string output;

    auto* transform = app.add_subcommand("transform", "Apply a transform variant to a signal file");
    std::string input, output_format, plan_file;
    transform->add_option("--n", n, "Transform length (defaults to the input length)");
    transform->add_option("--variant", variant, "Variant label")->check(CLI::IsMember(variant_labels()));
    transform->add_option("--plan", plan_file, "Plan JSON file overriding --n/--variant");
    transform->add_option("--input", input, "Input signal (.json or .csv)")->required();
    transform->add_option("--output", output, "Output file (stdout when omitted)");
    transform->add_option("--output-format", output_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    bool show_plan = false;
    transform->add_flag("--show-plan", show_plan, "Print the plan JSON to stderr");

    auto* sweep = app.add_subcommand("sweep", "Expansion-factor sweep and Pareto selection");
    double step = 1e-5;
    sweep->add_option("--n", n, "Kernel length")->required();
    sweep->add_option("--step", step, "Alpha step")->check(CLI::PositiveNumber);
    sweep->add_option("--format", format)->check(CLI::IsMember(kFormats));
    sweep->add_option("--output", output);

    auto* complexity = app.add_subcommand("complexity", "Operation counts of kernels and 1023-point variants");
    complexity->add_option("--format", format)->check(CLI::IsMember(kFormats));
    complexity->add_option("--output", output);

    auto* errors = app.add_subcommand("errors", "Error measurements");
    std::string which = "ground";
    std::optional<std::size_t> worst;
    errors->add_option("--which", which, "ground, 1023 or rows")->check(CLI::IsMember({"ground", "1023", "rows"}));
    errors->add_option("--n", n, "Length for --which rows");
    errors->add_option("--variant", variant, "Variant for --which rows")->check(CLI::IsMember(variant_labels()));
    errors->add_option("--worst", worst, "Only the k rows with the largest energy");
    errors->add_option("--format", format)->check(CLI::IsMember(kFormats));
    errors->add_option("--output", output);

    auto* freqresp = app.add_subcommand("freqresp", "Filter-bank responses and response errors as CSV");
    std::optional<std::size_t> row;
    std::size_t grid_points = 0;
    freqresp->add_option("--n", n, "Transform length")->required();
    freqresp->add_option("--variant", variant)->check(CLI::IsMember(variant_labels()));
    freqresp->add_option("--row", row, "Row to export; when omitted, the per-row maximum error is listed");
    freqresp->add_option("--grid", grid_points, "Grid points over [-pi, pi)");
    freqresp->add_option("--output", output);

    auto* probe = app.add_subcommand("probe-cosine", "Spectrum of a pure cosine");
    std::size_t bin = 100;
    bool spectrum = false;
    probe->add_option("--n", n, "Transform length")->required();
    probe->add_option("--variant", variant)->check(CLI::IsMember(variant_labels()));
    probe->add_option("--bin", bin, "Cosine frequency bin");
    probe->add_flag("--spectrum", spectrum, "Print the full magnitude spectrum as CSV");
    probe->add_option("--output", output);

    auto* kernel_cmd = app.add_subcommand("kernel", "Export a ground kernel as JSON");
    kernel_cmd->add_option("--n", n, "3, 11 or 31")->required();
    kernel_cmd->add_option("--output", output);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, err, err);
        return 2;
    }

    try {
        if (transform->parsed()) {
            const std::vector<cplx> x = read_signal(input);
            std::optional<ExecutionPlan> p;
            if (!plan_file.empty())
                p.emplace(plan_from_json(read_file(plan_file)));
            else
                p.emplace(plan(n == 0 ? x.size() : n, variant));
            if (x.size() != p->n())
                throw DomainError("input has " + std::to_string(x.size()) + " samples, plan expects " +
                                  std::to_string(p->n()));
            if (show_plan)
                err << plan_to_json(*p) << '\n';
            const auto y = execute(*p, x);
            const SignalFormat fmt = !output_format.empty() ? signal_format_from_string(output_format)
                                                            : signal_format_from_path(input);
            emit(format_signal(y, fmt), output, out);
        } else if (sweep->parsed()) {
            emit(sweep_table(n, step).render(report_format_from_string(format)), output, out);
        } else if (complexity->parsed()) {
            emit(render(complexity_report(), report_format_from_string(format)), output, out);
        } else if (errors->parsed()) {
            const ReportFormat fmt = report_format_from_string(format);
            if (which == "ground")
                emit(ground_errors().render(fmt), output, out);
            else if (which == "1023")
                emit(errors_1023().render(fmt), output, out);
            else {
                if (n == 0)
                    n = 11;
                if (!worst && n > 64)
                    worst = 3;
                emit(row_errors(n, variant, worst).render(fmt), output, out);
            }
        } else if (freqresp->parsed()) {
            const ExecutionPlan p = plan(n, variant);
            const ComplexMatrix approx = assemble_matrix(p);
            const ComplexMatrix exact = dft_matrix(n);
            if (grid_points == 0)
                grid_points = n > 64 ? 8192 : 4096;
            std::ostringstream os;
            os << std::setprecision(10);
            if (row) {
                if (*row >= n)
                    throw DomainError("row out of range");
                const auto h = filter_response(exact.row(*row), grid_points, *row);
                const auto ha = filter_response(approx.row(*row), grid_points, *row);
                const auto e = response_error_curve(approx.row(*row), exact.row(*row), grid_points, *row);
                os << "omega,exact_db,approx_db,error_db\n";
                for (std::size_t k = 0; k < grid_points; ++k)
                    os << h.omega[k] << ',' << h.magnitude_db[k] << ',' << ha.magnitude_db[k] << ','
                       << e.magnitude_db[k] << '\n';
            } else {
                os << "row,max_error_db\n";
                for (std::size_t r = 0; r < n; ++r)
                    os << r << ',' << max_db(response_error_curve(approx.row(r), exact.row(r), grid_points, r))
                       << '\n';
            }
            emit(os.str(), output, out);
        } else if (probe->parsed()) {
            const CosineProbe pr = cosine_probe(plan(n, variant), bin);
            std::ostringstream os;
            os << std::setprecision(10);
            if (spectrum) {
                os << "bin,magnitude\n";
                for (std::size_t k = 0; k < pr.magnitude.size(); ++k)
                    os << k << ',' << pr.magnitude[k] << '\n';
            } else {
                os << "dominant bins: " << pr.dominant_bins[0] << ", " << pr.dominant_bins[1] << '\n'
                   << "dominant heights: " << pr.dominant_heights[0] << ", " << pr.dominant_heights[1] << '\n'
                   << "exact height: " << static_cast<double>(n) / 2.0 << '\n'
                   << "max non-dominant: " << pr.max_other << '\n'
                   << "leakage ratio: " << pr.leakage_ratio << '\n';
            }
            emit(os.str(), output, out);
        } else if (kernel_cmd->parsed()) {
            emit(kernel_to_json(n) + "\n", output, out);
        }
    } catch (const std::exception& e) {
        err << "mpfa: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

} // namespace mpfa
