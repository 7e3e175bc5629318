#pragma once

#include "mpfa/approx_design.hpp"
#include "mpfa/counting.hpp"
#include "mpfa/matrix.hpp"
#include "mpfa/schedule.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace mpfa {

// c1 = n1^-1 mod n2, c2 = n2^-1 mod n1, so that (c1*n1 + c2*n2) mod n1*n2 == 1.
std::pair<std::size_t, std::size_t> crt_coefficients(std::size_t n1, std::size_t n2);

// n1 x n2 grid, row-major. forward[i*n2+k] = (i*s + k*r) mod n is the input index for cell (i,k);
// inverse[i*n2+k] = (i*n2 + k*n1) mod n is the output index.
struct IndexMap {
    std::size_t n1 = 0;
    std::size_t n2 = 0;
    std::size_t n = 0;
    std::size_t r = 0;
    std::size_t s = 0;
    std::vector<std::size_t> forward;
    std::vector<std::size_t> inverse;
};

IndexMap build_index_maps(std::size_t n1, std::size_t n2);

bool is_permutation(std::span<const std::size_t> p);

enum class KernelChoice { Exact, Approx, Direct };

const char* to_string(KernelChoice k);
KernelChoice kernel_choice_from_string(const std::string& s);

// Shape of a factor tree: either a leaf length or exactly two children.
struct TreeSpec {
    std::size_t leaf = 0;
    std::vector<TreeSpec> children;

    static TreeSpec make_leaf(std::size_t n) { return {n, {}}; }
    static TreeSpec node(TreeSpec a, TreeSpec b) { return {0, {std::move(a), std::move(b)}}; }
    std::size_t length() const;
    std::string str() const;
};

// Prime-power factors in descending order, nested to the right: 1023 -> (31, (11, 3)).
TreeSpec default_tree(std::size_t n);

struct FactorNode {
    std::size_t n = 0;
    KernelChoice choice = KernelChoice::Exact;   // leaves only
    const Schedule* schedule = nullptr;          // leaves only
    std::shared_ptr<const FactorNode> first;     // N1-point transform
    std::shared_ptr<const FactorNode> second;    // N2-point transform
    std::optional<IndexMap> map;

    bool is_leaf() const { return !map.has_value(); }
};

using KernelChoices = std::map<std::size_t, KernelChoice>;

class ExecutionPlan {
public:
    ExecutionPlan(TreeSpec tree, KernelChoices kernels, ScaleMode mode, std::string label);

    std::size_t n() const { return root_->n; }
    const FactorNode& root() const { return *root_; }
    const TreeSpec& tree() const { return tree_; }
    const KernelChoices& kernels() const { return kernels_; }
    ScaleMode scale_mode() const { return mode_; }
    const std::string& label() const { return label_; }

    // Radicands composed through the output maps, in the plan's scale mode.
    const ScaleVector& scale() const { return scale_; }
    const Schedule& scale_schedule() const { return scale_schedule_; }

private:
    TreeSpec tree_;
    KernelChoices kernels_;
    ScaleMode mode_;
    std::string label_;
    std::shared_ptr<const FactorNode> root_;
    ScaleVector scale_;
    Schedule scale_schedule_;
};

// Variant labels: exact, direct, unscaled, scaled, csd, hybrid-I .. hybrid-VI, hybrid-I-csd .. hybrid-VI-csd.
ExecutionPlan plan(std::size_t n, const std::string& variant);
std::vector<std::string> variant_labels();
std::vector<std::string> hybrid_labels();
std::string display_name(const std::string& variant);

ScaleVector assemble_scale(const ExecutionPlan& p);

std::vector<cplx> execute(const ExecutionPlan& p, std::span<const cplx> x);
std::vector<cplx> unscaled(const ExecutionPlan& p, std::span<const cplx> x);

template <class R>
void execute_into(const ExecutionPlan& p, std::span<const Cx<R>> in, std::span<Cx<R>> out, bool apply_scale);

extern template void execute_into<double>(const ExecutionPlan&, std::span<const Cx<double>>,
                                          std::span<Cx<double>>, bool);
extern template void execute_into<Counted>(const ExecutionPlan&, std::span<const Cx<Counted>>,
                                           std::span<Cx<Counted>>, bool);

// Column c is the plan applied to the c-th unit impulse.
ComplexMatrix assemble_matrix(const ExecutionPlan& p);

std::string plan_to_json(const ExecutionPlan& p);
ExecutionPlan plan_from_json(const std::string& text);

} // namespace mpfa
