#include "mpfa/pfa.hpp"

#include "mpfa/dft.hpp"
#include "mpfa/errors.hpp"
#include "mpfa/kernels.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace mpfa {

namespace {

// Inverse of a modulo m via extended Euclid; 0 when m == 1.
std::size_t mod_inverse(std::size_t a, std::size_t m) {
    if (m == 1)
        return 0;
    long long old_r = static_cast<long long>(a % m), r = static_cast<long long>(m);
    long long old_s = 1, s = 0;
    while (r != 0) {
        const long long q = old_r / r;
        old_r = std::exchange(r, old_r - q * r);
        old_s = std::exchange(s, old_s - q * s);
    }
    if (old_r != 1)
        throw DomainError("crt_coefficients: factors are not coprime");
    const long long mm = static_cast<long long>(m);
    return static_cast<std::size_t>(((old_s % mm) + mm) % mm);
}

} // namespace

std::pair<std::size_t, std::size_t> crt_coefficients(std::size_t n1, std::size_t n2) {
    if (n1 == 0 || n2 == 0 || std::gcd(n1, n2) != 1)
        throw DomainError("crt_coefficients: factors must be positive and coprime");
    const std::size_t c1 = mod_inverse(n1, n2);
    const std::size_t c2 = mod_inverse(n2, n1);
    const std::size_t n = n1 * n2;
    if ((c1 * n1 + c2 * n2) % n != 1 % n)
        throw InternalError("crt_coefficients: congruence check failed");
    return {c1, c2};
}

bool is_permutation(std::span<const std::size_t> p) {
    std::vector<bool> seen(p.size(), false);
    for (std::size_t v : p) {
        if (v >= p.size() || seen[v])
            return false;
        seen[v] = true;
    }
    return true;
}

IndexMap build_index_maps(std::size_t n1, std::size_t n2) {
    const auto [c1, c2] = crt_coefficients(n1, n2);
    IndexMap m;
    m.n1 = n1;
    m.n2 = n2;
    m.n = n1 * n2;
    m.r = n1 * c1;
    m.s = n2 * c2;
    m.forward.resize(m.n);
    m.inverse.resize(m.n);
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t k = 0; k < n2; ++k) {
            m.forward[i * n2 + k] = (i * m.s + k * m.r) % m.n;
            m.inverse[i * n2 + k] = (i * n2 + k * n1) % m.n;
        }
    if (!is_permutation(m.forward) || !is_permutation(m.inverse))
        throw InternalError("build_index_maps: map is not bijective");
    return m;
}

const char* to_string(KernelChoice k) {
    switch (k) {
    case KernelChoice::Exact:
        return "exact";
    case KernelChoice::Approx:
        return "approx";
    case KernelChoice::Direct:
        return "direct";
    }
    return "?";
}

KernelChoice kernel_choice_from_string(const std::string& s) {
    if (s == "exact")
        return KernelChoice::Exact;
    if (s == "approx")
        return KernelChoice::Approx;
    if (s == "direct")
        return KernelChoice::Direct;
    throw DomainError("unknown kernel choice: " + s);
}

std::size_t TreeSpec::length() const {
    if (children.empty())
        return leaf;
    return children.at(0).length() * children.at(1).length();
}

std::string TreeSpec::str() const {
    if (children.empty())
        return std::to_string(leaf);
    return "(" + children[0].str() + ", " + children[1].str() + ")";
}

TreeSpec default_tree(std::size_t n) {
    if (n == 0)
        throw DomainError("default_tree: n must be positive");
    std::vector<std::size_t> factors;
    std::size_t rest = n;
    for (std::size_t p = 2; p * p <= rest; ++p) {
        if (rest % p)
            continue;
        std::size_t q = 1;
        while (rest % p == 0) {
            rest /= p;
            q *= p;
        }
        factors.push_back(q);
    }
    if (rest > 1 || factors.empty())
        factors.push_back(rest);
    std::sort(factors.rbegin(), factors.rend());
    TreeSpec t = TreeSpec::make_leaf(factors.back());
    for (std::size_t i = factors.size() - 1; i-- > 0;)
        t = TreeSpec::node(TreeSpec::make_leaf(factors[i]), std::move(t));
    return t;
}

namespace {

const Schedule* leaf_schedule(std::size_t n, KernelChoice choice) {
    switch (choice) {
    case KernelChoice::Approx:
        if (!is_ground_length(n))
            throw UnsupportedLengthError("no approximate kernel of length " + std::to_string(n));
        return &factorization(n).schedule;
    case KernelChoice::Exact:
        return has_fast_exact(n) ? &fast_exact_schedule(n) : &direct_schedule(n);
    case KernelChoice::Direct:
        return &direct_schedule(n);
    }
    return nullptr;
}

std::shared_ptr<const FactorNode> build_node(const TreeSpec& t, const KernelChoices& kernels) {
    auto node = std::make_shared<FactorNode>();
    if (t.children.empty()) {
        if (t.leaf == 0)
            throw DomainError("plan: zero-length leaf");
        node->n = t.leaf;
        const auto it = kernels.find(t.leaf);
        node->choice = it == kernels.end() ? KernelChoice::Exact : it->second;
        node->schedule = leaf_schedule(t.leaf, node->choice);
        return node;
    }
    if (t.children.size() != 2)
        throw DomainError("plan: tree nodes need exactly two children");
    node->first = build_node(t.children[0], kernels);
    node->second = build_node(t.children[1], kernels);
    node->map = build_index_maps(node->first->n, node->second->n);
    node->n = node->map->n;
    return node;
}

std::vector<Rational> node_radicands(const FactorNode& nd) {
    if (nd.is_leaf()) {
        if (nd.choice == KernelChoice::Approx)
            return kernel_scale(nd.n, ScaleMode::Exact).radicands;
        return std::vector<Rational>(nd.n, Rational(1));
    }
    const auto r1 = node_radicands(*nd.first);
    const auto r2 = node_radicands(*nd.second);
    const IndexMap& m = *nd.map;
    std::vector<Rational> out(m.n);
    for (std::size_t i = 0; i < m.n1; ++i)
        for (std::size_t k = 0; k < m.n2; ++k)
            out[m.inverse[i * m.n2 + k]] = r1[i] * r2[k];
    return out;
}

void collect_leaves(const TreeSpec& t, std::vector<std::size_t>& out) {
    if (t.children.empty())
        out.push_back(t.leaf);
    else
        for (const auto& c : t.children)
            collect_leaves(c, out);
}

} // namespace

ExecutionPlan::ExecutionPlan(TreeSpec tree, KernelChoices kernels, ScaleMode mode, std::string label)
    : tree_(std::move(tree)), kernels_(std::move(kernels)), mode_(mode), label_(std::move(label)) {
    root_ = build_node(tree_, kernels_);
    scale_.radicands = node_radicands(*root_);
    scale_.mode = mode_;
    const auto coefs = scale_.coefs();
    scale_schedule_ = Schedule({diagonal_stage(coefs)});
}

ScaleVector assemble_scale(const ExecutionPlan& p) {
    ScaleVector s;
    s.radicands = node_radicands(p.root());
    s.mode = p.scale_mode() == ScaleMode::None ? ScaleMode::Exact : p.scale_mode();
    return s;
}

namespace {

struct VariantShape {
    std::set<std::size_t> approx;
    bool all_approx = false;
    bool direct = false;
    ScaleMode mode = ScaleMode::None;
    bool hybrid = false;
};

const std::vector<std::pair<std::string, std::set<std::size_t>>>& hybrid_table() {
    static const std::vector<std::pair<std::string, std::set<std::size_t>>> t = {
        {"I", {3}}, {"II", {11}}, {"III", {3, 11}}, {"IV", {31}}, {"V", {3, 31}}, {"VI", {11, 31}},
    };
    return t;
}

VariantShape parse_variant(const std::string& v) {
    VariantShape s;
    if (v == "exact")
        return s;
    if (v == "direct") {
        s.direct = true;
        return s;
    }
    if (v == "unscaled" || v == "scaled" || v == "csd") {
        s.all_approx = true;
        s.mode = v == "unscaled" ? ScaleMode::None : v == "scaled" ? ScaleMode::Exact : ScaleMode::Csd;
        return s;
    }
    const std::string prefix = "hybrid-";
    if (v.rfind(prefix, 0) == 0) {
        std::string roman = v.substr(prefix.size());
        s.mode = ScaleMode::Exact;
        if (roman.size() > 4 && roman.substr(roman.size() - 4) == "-csd") {
            roman.resize(roman.size() - 4);
            s.mode = ScaleMode::Csd;
        }
        for (const auto& [name, set] : hybrid_table())
            if (name == roman) {
                s.approx = set;
                s.hybrid = true;
                return s;
            }
    }
    throw DomainError("unknown variant: " + v);
}

} // namespace

std::vector<std::string> hybrid_labels() {
    std::vector<std::string> out;
    for (const auto& [name, set] : hybrid_table()) {
        out.push_back("hybrid-" + name);
        out.push_back("hybrid-" + name + "-csd");
    }
    return out;
}

std::vector<std::string> variant_labels() {
    std::vector<std::string> out = {"exact", "direct", "unscaled", "scaled", "csd"};
    const auto h = hybrid_labels();
    out.insert(out.end(), h.begin(), h.end());
    return out;
}

std::string display_name(const std::string& variant) {
    if (variant == "exact")
        return "F (fast kernels)";
    if (variant == "direct")
        return "F (by definition)";
    if (variant == "unscaled")
        return "T^*";
    if (variant == "scaled")
        return "F^*";
    if (variant == "csd")
        return "F'";
    const VariantShape s = parse_variant(variant);
    std::string roman = variant.substr(7);
    if (s.mode == ScaleMode::Csd)
        roman.resize(roman.size() - 4);
    return (s.mode == ScaleMode::Csd ? "F'_" : "F^*_") + roman;
}

ExecutionPlan plan(std::size_t n, const std::string& variant) {
    const VariantShape shape = parse_variant(variant);
    TreeSpec tree = default_tree(n);
    std::vector<std::size_t> leaves;
    collect_leaves(tree, leaves);

    if (shape.hybrid && n != 1023)
        throw UnsupportedLengthError("hybrid variants are defined for n = 1023 only");

    KernelChoices kernels;
    for (std::size_t leaf : leaves) {
        KernelChoice c = KernelChoice::Exact;
        if (shape.direct)
            c = KernelChoice::Direct;
        else if (shape.all_approx || shape.approx.count(leaf))
            c = KernelChoice::Approx;
        if (c == KernelChoice::Approx && !is_ground_length(leaf))
            throw UnsupportedLengthError("length " + std::to_string(n) +
                                         " does not factor into 3-, 11- and 31-point kernels");
        kernels[leaf] = c;
    }
    return ExecutionPlan(std::move(tree), std::move(kernels), shape.mode, variant);
}

namespace {

template <class R>
void run_node(const FactorNode& nd, std::span<const Cx<R>> in, std::span<Cx<R>> out) {
    if (nd.is_leaf()) {
        nd.schedule->run<R>(in, out);
        return;
    }
    const IndexMap& m = *nd.map;
    const std::size_t w = std::max(m.n1, m.n2);
    std::vector<Cx<R>> grid(m.n), a(w), b(w);
    for (std::size_t i = 0; i < m.n1; ++i) {
        for (std::size_t k = 0; k < m.n2; ++k)
            a[k] = in[m.forward[i * m.n2 + k]];
        run_node<R>(*nd.second, std::span<const Cx<R>>(a.data(), m.n2), std::span<Cx<R>>(b.data(), m.n2));
        std::copy_n(b.begin(), m.n2, grid.begin() + static_cast<std::ptrdiff_t>(i * m.n2));
    }
    for (std::size_t k = 0; k < m.n2; ++k) {
        for (std::size_t i = 0; i < m.n1; ++i)
            a[i] = grid[i * m.n2 + k];
        run_node<R>(*nd.first, std::span<const Cx<R>>(a.data(), m.n1), std::span<Cx<R>>(b.data(), m.n1));
        for (std::size_t i = 0; i < m.n1; ++i)
            out[m.inverse[i * m.n2 + k]] = b[i];
    }
}

} // namespace

template <class R>
void execute_into(const ExecutionPlan& p, std::span<const Cx<R>> in, std::span<Cx<R>> out, bool apply_scale) {
    if (in.size() != p.n() || out.size() != p.n())
        throw DomainError("execute: length mismatch");
    if (!apply_scale || p.scale_mode() == ScaleMode::None) {
        run_node<R>(p.root(), in, out);
        return;
    }
    std::vector<Cx<R>> tmp(p.n());
    run_node<R>(p.root(), in, tmp);
    p.scale_schedule().run<R>(tmp, out);
}

template void execute_into<double>(const ExecutionPlan&, std::span<const Cx<double>>, std::span<Cx<double>>,
                                   bool);
template void execute_into<Counted>(const ExecutionPlan&, std::span<const Cx<Counted>>,
                                    std::span<Cx<Counted>>, bool);

namespace {

std::vector<cplx> run_plain(const ExecutionPlan& p, std::span<const cplx> x, bool scaled) {
    if (x.size() != p.n())
        throw DomainError("execute: length mismatch");
    std::vector<Cx<double>> in(x.size()), out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (std::isnan(x[i].real()) || std::isnan(x[i].imag()))
            throw DomainError("execute: NaN input");
        in[i] = lift(x[i], 0.0);
    }
    execute_into<double>(p, in, out, scaled);
    std::vector<cplx> y(out.size());
    for (std::size_t i = 0; i < y.size(); ++i)
        y[i] = lower(out[i]);
    return y;
}

} // namespace

std::vector<cplx> execute(const ExecutionPlan& p, std::span<const cplx> x) { return run_plain(p, x, true); }

std::vector<cplx> unscaled(const ExecutionPlan& p, std::span<const cplx> x) { return run_plain(p, x, false); }

ComplexMatrix assemble_matrix(const ExecutionPlan& p) {
    const std::size_t n = p.n();
    ComplexMatrix m(n, n);
    std::vector<Cx<double>> e(n), col(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::fill(e.begin(), e.end(), Cx<double>{});
        e[c] = {1.0, 0.0};
        execute_into<double>(p, e, col, true);
        for (std::size_t r = 0; r < n; ++r)
            m(r, c) = lower(col[r]);
    }
    return m;
}

namespace {

nlohmann::json tree_json(const TreeSpec& t) {
    if (t.children.empty())
        return t.leaf;
    return nlohmann::json::array({tree_json(t.children[0]), tree_json(t.children[1])});
}

TreeSpec tree_from(const nlohmann::json& j) {
    if (j.is_number_unsigned() || j.is_number_integer()) {
        const auto v = j.get<long long>();
        if (v <= 0)
            throw DomainError("plan json: leaf lengths must be positive");
        return TreeSpec::make_leaf(static_cast<std::size_t>(v));
    }
    if (j.is_array() && j.size() == 2)
        return TreeSpec::node(tree_from(j[0]), tree_from(j[1]));
    throw DomainError("plan json: tree must be a length or a pair");
}

} // namespace

std::string plan_to_json(const ExecutionPlan& p) {
    nlohmann::json kernels = nlohmann::json::object();
    for (const auto& [len, choice] : p.kernels())
        kernels[std::to_string(len)] = to_string(choice);
    nlohmann::json j{{"n", p.n()},
                     {"tree", tree_json(p.tree())},
                     {"kernels", kernels},
                     {"scale", to_string(p.scale_mode())},
                     {"variant", p.label()}};
    return j.dump();
}

ExecutionPlan plan_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("plan json: ") + e.what());
    }
    TreeSpec tree = j.contains("tree") ? tree_from(j.at("tree")) : default_tree(j.at("n").get<std::size_t>());
    if (j.contains("n") && j.at("n").get<std::size_t>() != tree.length())
        throw DomainError("plan json: n does not match the tree");
    KernelChoices kernels;
    if (j.contains("kernels"))
        for (const auto& [key, val] : j.at("kernels").items())
            kernels[std::stoul(key)] = kernel_choice_from_string(val.get<std::string>());
    const ScaleMode mode = scale_mode_from_string(j.value("scale", std::string("none")));
    return ExecutionPlan(std::move(tree), std::move(kernels), mode, j.value("variant", std::string("custom")));
}

} // namespace mpfa
