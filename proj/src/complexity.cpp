#include "mpfa/complexity.hpp"

#include "mpfa/dft.hpp"
#include "mpfa/errors.hpp"
#include "mpfa/kernels.hpp"

#include <json.hpp>

#include <iomanip>
#include <random>
#include <sstream>

namespace mpfa {

namespace {

const Schedule& kernel_schedule(std::size_t n, KernelKind kind) {
    switch (kind) {
    case KernelKind::Approx:
        return factorization(n).schedule;
    case KernelKind::FastExact:
        return fast_exact_schedule(n);
    case KernelKind::Definition:
        return direct_schedule(n);
    }
    throw DomainError("unknown kernel kind");
}

std::vector<Cx<Counted>> random_counted(std::size_t n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> d;
    std::vector<Cx<Counted>> x(n);
    for (auto& v : x)
        v = {{d(rng)}, {d(rng)}};
    return x;
}

OpCount node_count(const FactorNode& nd) {
    if (nd.is_leaf())
        return nd.schedule->cost();
    return nd.map->n1 * node_count(*nd.second) + nd.map->n2 * node_count(*nd.first);
}

void node_calls(const FactorNode& nd, std::size_t mult, std::map<std::size_t, std::size_t>& out) {
    if (nd.is_leaf()) {
        out[nd.n] += mult;
        return;
    }
    node_calls(*nd.second, mult * nd.map->n1, out);
    node_calls(*nd.first, mult * nd.map->n2, out);
}

} // namespace

OpCount count_kernel(std::size_t n, KernelKind kind, ScaleMode mode) {
    OpCount c = kernel_schedule(n, kind).cost();
    if (kind == KernelKind::Approx && mode != ScaleMode::None)
        c += kernel_scale(n, mode).cost();
    return c;
}

OpCount instrumented_kernel_count(std::size_t n, KernelKind kind, ScaleMode mode, unsigned seed) {
    const Schedule& s = kernel_schedule(n, kind);
    const auto x = random_counted(n, seed);
    std::vector<Cx<Counted>> y(n), z(n);
    CountingScope scope;
    s.run<Counted>(x, y);
    if (kind == KernelKind::Approx && mode != ScaleMode::None) {
        const auto coefs = kernel_scale(n, mode).coefs();
        Schedule({diagonal_stage(coefs)}).run<Counted>(y, z);
    }
    return scope.count();
}

std::map<std::size_t, std::size_t> leaf_calls(const ExecutionPlan& p) {
    std::map<std::size_t, std::size_t> out;
    node_calls(p.root(), 1, out);
    return out;
}

OpCount count_plan(const ExecutionPlan& p) {
    OpCount c = node_count(p.root());
    if (p.scale_mode() != ScaleMode::None)
        c += p.scale_schedule().cost();
    return c;
}

OpCount instrumented_count(const ExecutionPlan& p, unsigned seed) {
    const auto x = random_counted(p.n(), seed);
    std::vector<Cx<Counted>> y(p.n());
    CountingScope scope;
    execute_into<Counted>(p, x, y, true);
    return scope.count();
}

std::vector<ComplexityRow> complexity_report() {
    std::vector<ComplexityRow> rows;
    for (std::size_t n : {3u, 11u, 31u}) {
        const std::string s = std::to_string(n);
        rows.push_back({"ground", "T^*_" + s, count_kernel(n, KernelKind::Approx)});
        rows.push_back({"ground", "F^*_" + s, count_kernel(n, KernelKind::Approx, ScaleMode::Exact)});
        rows.push_back({"ground", "F'_" + s, count_kernel(n, KernelKind::Approx, ScaleMode::Csd)});
        rows.push_back({"ground", "F_" + s + " (fast)", count_kernel(n, KernelKind::FastExact)});
        rows.push_back({"ground", "F_" + s + " (by definition)", count_kernel(n, KernelKind::Definition)});
    }
    for (const std::string v : {"direct", "exact", "unscaled", "scaled", "csd"}) {
        const std::string name = display_name(v);
        rows.push_back({"1023", name.substr(0, name.find(' ')) + "_1023" +
                                    (name.find(' ') == std::string::npos ? "" : name.substr(name.find(' '))),
                        count_plan(plan(1023, v))});
    }
    for (const std::string& v : hybrid_labels())
        rows.push_back({"1023", display_name(v) + " (1023)", count_plan(plan(1023, v))});

    rows.push_back({"reference", "F_32 (Cooley-Tukey)", {88, 408, 0}, true});
    rows.push_back({"reference", "approx F_32 (prior work)", {0, 348, 0}, true});
    rows.push_back({"reference", "F_1024 (by definition)", {3084288, 5159936, 0}, true});
    rows.push_back({"reference", "F_1024 (Cooley-Tukey)", {10248, 30728, 0}, true});
    rows.push_back({"reference", "approx F_1024 I (prior work)", {2883, 25155, 0}, true});
    rows.push_back({"reference", "approx F_1024 II (prior work)", {5699, 27075, 0}, true});
    rows.push_back({"reference", "approx F_1024 III (prior work)", {5699, 27075, 0}, true});
    return rows;
}

ReportFormat report_format_from_string(const std::string& s) {
    if (s == "csv")
        return ReportFormat::Csv;
    if (s == "text")
        return ReportFormat::Text;
    if (s == "json")
        return ReportFormat::Json;
    throw DomainError("unknown format: " + s);
}

std::string render(const std::vector<ComplexityRow>& rows, ReportFormat fmt) {
    std::ostringstream os;
    switch (fmt) {
    case ReportFormat::Csv:
        os << "group,transform,mults,adds,shifts,external\n";
        for (const auto& r : rows)
            os << r.group << ',' << r.name << ',' << r.count.mults << ',' << r.count.adds << ','
               << r.count.shifts << ',' << (r.external ? 1 : 0) << '\n';
        break;
    case ReportFormat::Text:
        os << std::left << std::setw(10) << "group" << std::setw(34) << "transform" << std::right
           << std::setw(10) << "mults" << std::setw(10) << "adds" << std::setw(10) << "shifts" << '\n';
        for (const auto& r : rows)
            os << std::left << std::setw(10) << r.group << std::setw(34) << (r.name + (r.external ? " [ref]" : ""))
               << std::right << std::setw(10) << r.count.mults << std::setw(10) << r.count.adds
               << std::setw(10) << r.count.shifts << '\n';
        os << "[ref] rows are quoted constants for comparison; they are not computed.\n";
        break;
    case ReportFormat::Json: {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& r : rows)
            j.push_back({{"group", r.group},
                         {"transform", r.name},
                         {"mults", r.count.mults},
                         {"adds", r.count.adds},
                         {"shifts", r.count.shifts},
                         {"external", r.external}});
        os << j.dump(2) << '\n';
        break;
    }
    }
    return os.str();
}

} // namespace mpfa
